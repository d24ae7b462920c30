//! Classes over the affine line supported at finitely many rational points,
//! with the convolution `⋆` and the pushforward to the point.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::class::MuClass;
use crate::convolution::star;
use crate::error::{Error, Result};
use crate::laurent::LaurentInt;

/// An exact rational point of the affine line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasePoint(pub BigRational);

impl BasePoint {
    pub fn integer<T: Into<BigInt>>(v: T) -> Self {
        BasePoint(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }
}

impl Add for &BasePoint {
    type Output = BasePoint;
    fn add(self, rhs: &BasePoint) -> BasePoint {
        BasePoint(&self.0 + &rhs.0)
    }
}

impl FromStr for BasePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed = match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim());
                let q = BigInt::from_str(q.trim());
                match (p, q) {
                    (Ok(p), Ok(q)) if q != BigInt::from(0) => Some(BigRational::new(p, q)),
                    _ => None,
                }
            }
            None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        };
        parsed
            .map(BasePoint)
            .ok_or_else(|| Error::Parse(format!("'{s}' is not an exact rational point")))
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `sum_a i_{a!}(c_a)`: a class `c_a` at each of finitely many points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct A1Class {
    support: BTreeMap<BasePoint, MuClass>,
}

impl A1Class {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn at(point: BasePoint, class: MuClass) -> Self {
        let mut out = Self::zero();
        out.add_at(point, &class);
        out
    }

    /// Unit of `⋆`: the point class sitting at the origin.
    pub fn unit() -> Self {
        Self::at(BasePoint::zero(), MuClass::one())
    }

    /// `L` placed at the origin, the localizing element over the line.
    pub fn lefschetz_at_zero() -> Self {
        Self::at(BasePoint::zero(), MuClass::lefschetz())
    }

    pub fn add_at(&mut self, point: BasePoint, class: &MuClass) {
        if class.is_zero() {
            return;
        }
        let slot = self.support.entry(point.clone()).or_default();
        *slot = &*slot + class;
        if slot.is_zero() {
            self.support.remove(&point);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn get(&self, point: &BasePoint) -> MuClass {
        self.support.get(point).cloned().unwrap_or_default()
    }

    pub fn points(&self) -> impl Iterator<Item = (&BasePoint, &MuClass)> {
        self.support.iter()
    }

    pub fn scale(&self, p: &LaurentInt) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.support {
            out.add_at(a.clone(), &c.scale(p));
        }
        out
    }

    /// `(f ⋆ g)(c) = sum_{a + b = c} f(a) * g(b)`.
    pub fn star(&self, other: &A1Class) -> A1Class {
        let mut out = Self::zero();
        for (a, f) in &self.support {
            for (b, g) in &other.support {
                out.add_at(a + b, &star(f, g));
            }
        }
        out
    }

    /// Pushforward to the point: the sum of all fibers.
    pub fn epsilon_push(&self) -> MuClass {
        self.support.values().fold(MuClass::zero(), |acc, c| &acc + c)
    }
}

pub fn a1_unit() -> A1Class {
    A1Class::unit()
}

pub fn a1_star(f: &A1Class, g: &A1Class) -> A1Class {
    f.star(g)
}

pub fn epsilon_push(f: &A1Class) -> MuClass {
    f.epsilon_push()
}

impl<'a> Add<&'a A1Class> for &'a A1Class {
    type Output = A1Class;
    fn add(self, rhs: &A1Class) -> A1Class {
        let mut out = self.clone();
        for (a, c) in &rhs.support {
            out.add_at(a.clone(), c);
        }
        out
    }
}

impl Neg for &A1Class {
    type Output = A1Class;
    fn neg(self) -> A1Class {
        A1Class {
            support: self.support.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a A1Class> for &'a A1Class {
    type Output = A1Class;
    fn sub(self, rhs: &A1Class) -> A1Class {
        self + &(-rhs)
    }
}

impl fmt::Display for A1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, c)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a} -> {c}")?;
        }
        write!(f, "}}")
    }
}
