//! Laurent polynomials in the Lefschetz class `L` with arbitrary-precision
//! integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Finitely supported map `exponent of L -> integer`. Zero coefficients are
/// never stored, so structural equality is equality of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentInt {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * L^exp`.
    pub fn monomial<T: Into<BigInt>>(c: T, exp: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, c.into());
        out
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    /// `L - 1`, the class of the torus with trivial action.
    pub fn torus() -> Self {
        Self::monomial(1, 1) - Self::one()
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest-exponent coefficient, if nonzero.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Value at `L = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl<'a> Add<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(mut self, rhs: LaurentInt) -> LaurentInt {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentInt> for LaurentInt {
    fn sub_assign(&mut self, rhs: &LaurentInt) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Sub<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(mut self, rhs: LaurentInt) -> LaurentInt {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        Self {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        -(self.clone())
    }
}

impl<'a> Mul<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = LaurentInt::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, abs: &BigInt, exp: i64) -> fmt::Result {
    match (abs.is_one(), exp) {
        (_, 0) => write!(f, "{abs}"),
        (true, 1) => write!(f, "L"),
        (true, e) => write!(f, "L^{e}"),
        (false, 1) => write!(f, "{abs}*L"),
        (false, e) => write!(f, "{abs}*L^{e}"),
    }
}

/// Renders in decreasing exponent order, e.g. `L^2 - 3*L + 1`.
impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            fmt_monomial(f, &abs, *e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_plus_one_is_lefschetz() {
        assert_eq!(LaurentInt::torus() + LaurentInt::one(), LaurentInt::lefschetz());
    }

    #[test]
    fn inverse_cancels() {
        let x = LaurentInt::one() + (-LaurentInt::one());
        assert!(x.is_zero());
        let inv = LaurentInt::monomial(1, -1);
        assert!((&inv * &LaurentInt::lefschetz()).is_one());
    }

    #[test]
    fn one_minus_l_squared() {
        let p = (LaurentInt::one() - LaurentInt::lefschetz()).pow(2);
        assert_eq!(p, LaurentInt::from_terms([(0, 1), (1, -2), (2, 1)]));
        assert_eq!(p.eval_at_one(), BigInt::zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(LaurentInt::torus().to_string(), "L - 1");
        assert_eq!(LaurentInt::from_terms([(2, 1), (1, 1), (0, 1)]).to_string(), "L^2 + L + 1");
        assert_eq!(LaurentInt::monomial(-3, -2).to_string(), "-3*L^-2");
        assert_eq!(LaurentInt::zero().to_string(), "0");
    }

    #[test]
    fn big_coefficients_stay_exact() {
        let big = LaurentInt::constant(BigInt::from(u64::MAX));
        let sq = &big * &big;
        assert_eq!(sq.coeff(0), BigInt::from(u64::MAX) * BigInt::from(u64::MAX));
    }
}
