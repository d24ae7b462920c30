use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Two-variable Laurent polynomial in `u, v` with integer coefficients,
/// keyed by `(deg_u, deg_v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EPoly {
    coeffs: BTreeMap<(i64, i64), BigInt>,
}

impl EPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial<T: Into<BigInt>>(c: T, i: i64, j: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c.into());
        out
    }

    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), T)>,
        T: Into<BigInt>,
    {
        let mut out = Self::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, c.into());
        }
        out
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Value at `u = v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<'a> Add<&'a EPoly> for &'a EPoly {
    type Output = EPoly;
    fn add(self, rhs: &EPoly) -> EPoly {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.coeffs {
            out.add_term(*i, *j, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a EPoly> for &'a EPoly {
    type Output = EPoly;
    fn sub(self, rhs: &EPoly) -> EPoly {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.coeffs {
            out.add_term(*i, *j, -c);
        }
        out
    }
}

impl<'a> Mul<&'a EPoly> for &'a EPoly {
    type Output = EPoly;
    fn mul(self, rhs: &EPoly) -> EPoly {
        let mut out = EPoly::zero();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &rhs.coeffs {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

fn fmt_var(f: &mut fmt::Formatter<'_>, name: &str, deg: i64) -> fmt::Result {
    match deg {
        0 => Ok(()),
        1 => write!(f, "{name}"),
        d => write!(f, "{name}^{d}"),
    }
}

/// Renders highest total degree first, e.g. `uv - 5`.
impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.coeffs[&(i, j)];
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            if (i, j) == (0, 0) || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            fmt_var(f, "u", i)?;
            fmt_var(f, "v", j)?;
        }
        Ok(())
    }
}
