//! Equivariant classes in normal form.
//!
//! A [`MuClass`] is a finite sum `sum_i p_i(L) * A_i` with Laurent coefficients
//! `p_i` and canonical atoms `A_i`. The engine works in a free model mapping
//! onto the subring generated by the atoms: two classes with the same normal
//! form are equal, while different normal forms only mean that equality does
//! not follow from the rewrite rules.
//!
//! Rewrite rules applied by [`normalize`]:
//!
//! * N1 `ORB(1) -> 1`
//! * N2 `ORB(d) * ORB(e) -> gcd(d, e) * ORB(lcm(d, e))`
//! * N3 torus with a multiplication action `-> (L - 1)`
//! * N4 `FER(2, r) -> (L - 1) * fer(2, r - 1) - ORB(2)^{*r}`, which for `r = 2`
//!   reads `FER(2, 2) -> (L - 1) - 2 * ORB(2)`
//! * N5 `fer(n, 1) -> n` and `FER(n, 1) -> ORB(n)`

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::epoly::EPoly;
use crate::error::{Error, Result};
use crate::laurent::LaurentInt;

/// A class known only through its realization data.
///
/// `equivariant` marks classes that may carry a nontrivial action, such as
/// the fallback value of an uncomputed convolution; those are never treated
/// as trivial-action factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Opaque {
    pub tag: String,
    pub chi: BigInt,
    pub epoly: Option<EPoly>,
    pub equivariant: bool,
}

impl Opaque {
    pub fn new(tag: impl Into<String>, chi: impl Into<BigInt>) -> Self {
        Self {
            tag: tag.into(),
            chi: chi.into(),
            epoly: None,
            equivariant: false,
        }
    }

    pub fn with_epoly(mut self, e: EPoly) -> Self {
        self.epoly = Some(e);
        self
    }

    fn validate(&self) -> Result<()> {
        if let Some(e) = &self.epoly {
            let at_one = e.eval_at_one();
            if at_one != self.chi {
                return Err(Error::Validation(format!(
                    "opaque class '{}': E(1,1) = {} differs from chi = {}",
                    self.tag, at_one, self.chi
                )));
            }
        }
        Ok(())
    }
}

/// One factor of a normalized atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomFactor {
    /// Free transitive set of size `d >= 2`, action through `mu_d`.
    Orb(u64),
    /// `{x_1^n + ... + x_r^n = 1}` in the `r`-torus with diagonal `mu_n` action.
    Fermat { n: u64, r: u64 },
    /// The same hypersurface with trivial action.
    FermatTrivial { n: u64, r: u64 },
    Opaque(Opaque),
}

impl AtomFactor {
    pub fn is_trivial_action(&self) -> bool {
        match self {
            AtomFactor::Orb(_) | AtomFactor::Fermat { .. } => false,
            AtomFactor::FermatTrivial { .. } => true,
            AtomFactor::Opaque(o) => !o.equivariant,
        }
    }
}

impl fmt::Display for AtomFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomFactor::Orb(d) => write!(f, "[mu_{d}]"),
            AtomFactor::Fermat { n, r } => write!(f, "[FER({n},{r})]"),
            AtomFactor::FermatTrivial { n, r } => write!(f, "[fer({n},{r})]"),
            AtomFactor::Opaque(o) => write!(f, "[opq:{}]", o.tag),
        }
    }
}

/// Canonically sorted product of factors; the empty product is the point.
///
/// Invariants: factors sorted, at most one `Orb` factor, no factor that a
/// rewrite rule would remove.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    factors: Vec<AtomFactor>,
}

impl Atom {
    pub fn point() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[AtomFactor] {
        &self.factors
    }

    pub fn is_point(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.factors.iter().all(AtomFactor::is_trivial_action)
    }

    pub fn has_opaque(&self) -> bool {
        self.factors.iter().any(|f| matches!(f, AtomFactor::Opaque(_)))
    }

    /// Splits into `(trivial-action part, equivariant part)`.
    pub fn split_action(&self) -> (Atom, Atom) {
        let (triv, eq): (Vec<_>, Vec<_>) =
            self.factors.iter().cloned().partition(AtomFactor::is_trivial_action);
        (Atom { factors: triv }, Atom { factors: eq })
    }

    /// Product of two normalized atoms, fusing orbit factors.
    pub fn product(&self, other: &Atom) -> (BigInt, Atom) {
        let mut mult = BigInt::one();
        let mut orbit: Option<u64> = None;
        let mut rest = Vec::with_capacity(self.factors.len() + other.factors.len());
        for f in self.factors.iter().chain(&other.factors) {
            match f {
                AtomFactor::Orb(d) => {
                    orbit = Some(match orbit {
                        None => *d,
                        Some(e) => {
                            mult *= d.gcd(&e);
                            d.lcm(&e)
                        }
                    })
                }
                other => rest.push(other.clone()),
            }
        }
        if let Some(d) = orbit {
            rest.push(AtomFactor::Orb(d));
        }
        rest.sort();
        (mult, Atom { factors: rest })
    }

    fn single(f: AtomFactor) -> Self {
        Atom { factors: vec![f] }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A normalized equivariant class.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MuClass {
    terms: BTreeMap<Atom, LaurentInt>,
}

impl MuClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_laurent(LaurentInt::constant(c))
    }

    pub fn lefschetz() -> Self {
        Self::from_laurent(LaurentInt::lefschetz())
    }

    /// `L - 1`.
    pub fn torus() -> Self {
        Self::from_laurent(LaurentInt::torus())
    }

    pub fn from_laurent(p: LaurentInt) -> Self {
        Self::term(p, Atom::point())
    }

    fn term(p: LaurentInt, atom: Atom) -> Self {
        let mut out = Self::zero();
        out.add_term(atom, &p);
        out
    }

    /// `ORB(d)`; `d = 1` gives the point.
    pub fn orbit(d: u64) -> Result<Self> {
        match d {
            0 => Err(Error::Validation("orbit size must be at least 1".into())),
            1 => Ok(Self::one()),
            d => Ok(Self::term(LaurentInt::one(), Atom::single(AtomFactor::Orb(d)))),
        }
    }

    /// Fermat locus `FER(n, r)` with its free diagonal action.
    pub fn fermat(n: u64, r: u64) -> Result<Self> {
        check_fermat(n, r)?;
        Ok(match (n, r) {
            (n, 1) => Self::orbit(n)?,
            (2, r) => fermat_two(r),
            (n, r) => Self::term(LaurentInt::one(), Atom::single(AtomFactor::Fermat { n, r })),
        })
    }

    /// Fermat locus `fer(n, r)` with trivial action.
    pub fn fermat_trivial(n: u64, r: u64) -> Result<Self> {
        check_fermat(n, r)?;
        Ok(match r {
            1 => Self::constant(n),
            r => Self::term(LaurentInt::one(), Atom::single(AtomFactor::FermatTrivial { n, r })),
        })
    }

    pub fn opaque(o: Opaque) -> Result<Self> {
        o.validate()?;
        Ok(Self::term(LaurentInt::one(), Atom::single(AtomFactor::Opaque(o))))
    }

    pub(crate) fn from_atom_factor(f: AtomFactor) -> Self {
        Self::from_atom(Atom::single(f))
    }

    pub(crate) fn from_atom(atom: Atom) -> Self {
        Self::term(LaurentInt::one(), atom)
    }

    fn add_term(&mut self, atom: Atom, p: &LaurentInt) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(atom.clone()).or_default();
        *slot += p;
        if slot.is_zero() {
            self.terms.remove(&atom);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &LaurentInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, atom: &Atom) -> LaurentInt {
        self.terms.get(atom).cloned().unwrap_or_default()
    }

    /// True when no term carries an orbit, Fermat or equivariant opaque factor.
    pub fn is_trivial_action(&self) -> bool {
        self.terms.keys().all(Atom::is_trivial_action)
    }

    pub fn contains_opaque(&self) -> bool {
        self.terms.keys().any(Atom::has_opaque)
    }

    pub fn scale(&self, p: &LaurentInt) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &(c * p));
        }
        out
    }

    /// Replaces orbits by their cardinality and Fermat loci by their
    /// trivial-action versions.
    pub fn forget_action(&self) -> Self {
        let mut out = Self::zero();
        for (atom, c) in &self.terms {
            let mut value = Self::from_laurent(c.clone());
            for f in atom.factors() {
                let forgotten = match f {
                    AtomFactor::Orb(d) => Self::constant(*d),
                    AtomFactor::Fermat { n, r } => Self::from_atom(Atom::single(
                        AtomFactor::FermatTrivial { n: *n, r: *r },
                    )),
                    AtomFactor::FermatTrivial { .. } => Self::from_atom(Atom::single(f.clone())),
                    AtomFactor::Opaque(o) if o.equivariant => {
                        Self::from_atom(Atom::single(AtomFactor::Opaque(Opaque {
                            tag: format!("forget({})", o.tag),
                            chi: o.chi.clone(),
                            epoly: None,
                            equivariant: false,
                        })))
                    }
                    AtomFactor::Opaque(_) => Self::from_atom(Atom::single(f.clone())),
                };
                value = &value * &forgotten;
            }
            out = &out + &value;
        }
        out
    }

    /// Inverse of [`normalize`] on normal forms.
    pub fn to_raw(&self) -> RawClass {
        RawClass {
            terms: self
                .terms
                .iter()
                .map(|(atom, c)| RawTerm {
                    coeff: c.clone(),
                    factors: atom.factors().iter().map(RawFactor::from).collect(),
                })
                .collect(),
        }
    }
}

fn check_fermat(n: u64, r: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Validation(format!("Fermat degree must be at least 2, got {n}")));
    }
    if r < 1 {
        return Err(Error::Validation(format!("Fermat variable count must be at least 1, got {r}")));
    }
    Ok(())
}

/// `ORB(2)^{*r}` as `x + y * ORB(2)`, from the step
/// `(x + y ORB(2)) * ORB(2) = y (L - 1) + (x + 2y) ORB(2)`.
pub(crate) fn orbit_two_power(r: u64) -> (LaurentInt, LaurentInt) {
    let two = BigInt::from(2);
    let mut x = LaurentInt::zero();
    let mut y = LaurentInt::one();
    for _ in 1..r {
        let next_x = &LaurentInt::torus() * &y;
        let next_y = &x + &y.scale(&two);
        x = next_x;
        y = next_y;
    }
    (x, y)
}

/// N4: `FER(2, r) = (L - 1) fer(2, r - 1) - ORB(2)^{*r}`, for `r >= 2`.
fn fermat_two(r: u64) -> MuClass {
    let (x, y) = orbit_two_power(r);
    let fer = MuClass::fermat_trivial(2, r - 1).expect("valid Fermat descriptor");
    let orb2 = MuClass::from_atom(Atom::single(AtomFactor::Orb(2)));
    let power = &MuClass::from_laurent(x) + &orb2.scale(&y);
    &fer.scale(&LaurentInt::torus()) - &power
}

impl<'a> Add<&'a MuClass> for &'a MuClass {
    type Output = MuClass;
    fn add(self, rhs: &MuClass) -> MuClass {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c);
        }
        out
    }
}

impl Add for MuClass {
    type Output = MuClass;
    fn add(self, rhs: MuClass) -> MuClass {
        &self + &rhs
    }
}

impl<'a> Sub<&'a MuClass> for &'a MuClass {
    type Output = MuClass;
    fn sub(self, rhs: &MuClass) -> MuClass {
        self + &(-rhs)
    }
}

impl Sub for MuClass {
    type Output = MuClass;
    fn sub(self, rhs: MuClass) -> MuClass {
        &self - &rhs
    }
}

impl Neg for &MuClass {
    type Output = MuClass;
    fn neg(self) -> MuClass {
        MuClass {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

impl Neg for MuClass {
    type Output = MuClass;
    fn neg(self) -> MuClass {
        -&self
    }
}

impl<'a> Mul<&'a MuClass> for &'a MuClass {
    type Output = MuClass;
    fn mul(self, rhs: &MuClass) -> MuClass {
        let mut out = MuClass::zero();
        for (a1, c1) in &self.terms {
            for (a2, c2) in &rhs.terms {
                let (mult, atom) = a1.product(a2);
                out.add_term(atom, &(c1 * c2).scale(&mult));
            }
        }
        out
    }
}

impl Mul for MuClass {
    type Output = MuClass;
    fn mul(self, rhs: MuClass) -> MuClass {
        &self * &rhs
    }
}

impl fmt::Display for MuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let several = self.terms.len() > 1;
        for (i, (atom, c)) in self.terms.iter().enumerate() {
            let negative = c.leading_coeff().is_some_and(|l| l.is_negative());
            let mag = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let compound = mag.num_terms() > 1;
            if atom.is_point() {
                if compound && several {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else if mag.is_one() {
                write!(f, "{atom}")?;
            } else if compound {
                write!(f, "({mag})*{atom}")?;
            } else {
                write!(f, "{mag}*{atom}")?;
            }
        }
        Ok(())
    }
}

/// Unnormalized factor as it may appear in input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawFactor {
    Orb(i64),
    /// Torus with the multiplication action of `mu_d`.
    Torus(i64),
    Fermat { n: i64, r: i64 },
    FermatTrivial { n: i64, r: i64 },
    Opaque(Opaque),
}

impl From<&AtomFactor> for RawFactor {
    fn from(f: &AtomFactor) -> Self {
        match f {
            AtomFactor::Orb(d) => RawFactor::Orb(*d as i64),
            AtomFactor::Fermat { n, r } => RawFactor::Fermat { n: *n as i64, r: *r as i64 },
            AtomFactor::FermatTrivial { n, r } => {
                RawFactor::FermatTrivial { n: *n as i64, r: *r as i64 }
            }
            AtomFactor::Opaque(o) => RawFactor::Opaque(o.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub coeff: LaurentInt,
    pub factors: Vec<RawFactor>,
}

/// A formal combination of factor products, before rewriting.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawClass {
    pub terms: Vec<RawTerm>,
}

fn positive(v: i64, what: &str, min: i64) -> Result<u64> {
    if v < min {
        return Err(Error::Validation(format!("{what} must be at least {min}, got {v}")));
    }
    Ok(v as u64)
}

fn factor_value(f: &RawFactor) -> Result<MuClass> {
    match f {
        RawFactor::Orb(d) => MuClass::orbit(positive(*d, "orbit size", 1)?),
        RawFactor::Torus(d) => {
            positive(*d, "torus action level", 1)?;
            Ok(MuClass::torus())
        }
        RawFactor::Fermat { n, r } => MuClass::fermat(
            positive(*n, "Fermat degree", 2)?,
            positive(*r, "Fermat variable count", 1)?,
        ),
        RawFactor::FermatTrivial { n, r } => MuClass::fermat_trivial(
            positive(*n, "Fermat degree", 2)?,
            positive(*r, "Fermat variable count", 1)?,
        ),
        RawFactor::Opaque(o) => MuClass::opaque(o.clone()),
    }
}

/// Rewrites a raw class into its unique normal form.
pub fn normalize(raw: &RawClass) -> Result<MuClass> {
    let mut out = MuClass::zero();
    for term in &raw.terms {
        let mut value = MuClass::from_laurent(term.coeff.clone());
        for f in &term.factors {
            value = &value * &factor_value(f)?;
        }
        out = &out + &value;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orb(d: u64) -> MuClass {
        MuClass::orbit(d).unwrap()
    }

    fn raw(factors: Vec<RawFactor>) -> RawClass {
        RawClass {
            terms: vec![RawTerm { coeff: LaurentInt::one(), factors }],
        }
    }

    /// Orbit count of the diagonal action of `Z/lcm` on `Z/d x Z/e`.
    fn brute_orbits(d: u64, e: u64) -> (u64, u64) {
        let l = d.lcm(&e);
        let mut seen = vec![false; (d * e) as usize];
        let mut count = 0;
        let mut size = 0;
        for start in 0..d * e {
            if seen[start as usize] {
                continue;
            }
            count += 1;
            let (a, b) = (start / e, start % e);
            let mut orbit = 0;
            for g in 0..l {
                let idx = ((a + g) % d) * e + (b + g) % e;
                if !seen[idx as usize] {
                    seen[idx as usize] = true;
                    orbit += 1;
                }
            }
            size = orbit;
        }
        (count, size)
    }

    #[test]
    fn torus_with_action_trivializes() {
        let c = normalize(&raw(vec![RawFactor::Torus(2)])).unwrap();
        assert_eq!(c, MuClass::torus());
    }

    #[test]
    fn orbit_fusion_matches_brute_force() {
        for (d, e) in [(2, 2), (2, 3), (3, 3), (4, 6)] {
            let (count, size) = brute_orbits(d, e);
            let expected = orb(size).scale(&LaurentInt::constant(count));
            assert_eq!(&orb(d) * &orb(e), expected, "ORB({d})*ORB({e})");
        }
        assert_eq!(&orb(2) * &orb(2), orb(2).scale(&LaurentInt::constant(2)));
        assert_eq!(&orb(2) * &orb(3), orb(6));
    }

    #[test]
    fn fermat_two_two_rewrites() {
        let c = MuClass::fermat(2, 2).unwrap();
        let expected = &MuClass::torus() - &orb(2).scale(&LaurentInt::constant(2));
        assert_eq!(c, expected);
    }

    #[test]
    fn degenerate_factors_vanish() {
        assert_eq!(orb(1), MuClass::one());
        assert_eq!(MuClass::fermat_trivial(5, 1).unwrap(), MuClass::constant(5));
        assert_eq!(MuClass::fermat(3, 1).unwrap(), orb(3));
    }

    #[test]
    fn malformed_descriptors_rejected() {
        for f in [
            RawFactor::Orb(0),
            RawFactor::Orb(-3),
            RawFactor::Torus(0),
            RawFactor::Fermat { n: 1, r: 2 },
            RawFactor::FermatTrivial { n: 3, r: 0 },
        ] {
            let err = normalize(&raw(vec![f.clone()])).unwrap_err();
            assert_eq!(err.kind(), "validation", "{f:?}");
        }
    }

    #[test]
    fn opaque_epoly_must_match_chi() {
        let bad = Opaque::new("x", 3).with_epoly(EPoly::monomial(1, 1, 1));
        assert!(MuClass::opaque(bad).is_err());
        let good = Opaque::new("x", 1).with_epoly(EPoly::monomial(1, 1, 1));
        assert!(MuClass::opaque(good).is_ok());
    }

    #[test]
    fn addition_examples() {
        assert!((&MuClass::one() + &(-MuClass::one())).is_zero());
        assert_eq!(&orb(2) + &orb(2), orb(2).scale(&LaurentInt::constant(2)));
        assert_eq!(&MuClass::torus() + &MuClass::one(), MuClass::lefschetz());
    }

    #[test]
    fn irreducible_product_is_retained() {
        let fer = MuClass::fermat_trivial(3, 2).unwrap();
        let prod = &MuClass::lefschetz() * &fer;
        assert_eq!(prod.num_terms(), 1);
        let (atom, c) = prod.terms().next().unwrap();
        assert_eq!(atom.factors(), &[AtomFactor::FermatTrivial { n: 3, r: 2 }]);
        assert_eq!(c, &LaurentInt::lefschetz());
    }

    #[test]
    fn forget_examples() {
        assert_eq!(orb(2).forget_action(), MuClass::constant(2));
        let c = &MuClass::torus() + &orb(2).scale(&LaurentInt::constant(2));
        assert_eq!(c.forget_action(), &MuClass::torus() + &MuClass::constant(4));
        assert_eq!(
            MuClass::fermat(3, 2).unwrap().forget_action(),
            MuClass::fermat_trivial(3, 2).unwrap()
        );
        assert!(c.forget_action().is_trivial_action());
    }

    #[test]
    fn pretty_forms() {
        let c = &MuClass::torus() + &orb(2).scale(&LaurentInt::constant(2));
        assert_eq!(c.to_string(), "(L - 1) + 2*[mu_2]");
        assert_eq!((&MuClass::one() - &orb(4)).to_string(), "1 - [mu_4]");
        assert_eq!(MuClass::torus().to_string(), "L - 1");
        let neg = orb(3).scale(&(LaurentInt::one() - LaurentInt::lefschetz()));
        assert_eq!(neg.to_string(), "-(L - 1)*[mu_3]");
    }

    #[test]
    fn orbit_two_powers() {
        // ORB(2)^{*3} = 2(L-1) + (L+3) ORB(2)
        let (x, y) = orbit_two_power(3);
        assert_eq!(x, LaurentInt::torus().scale(&BigInt::from(2)));
        assert_eq!(y, LaurentInt::lefschetz() + LaurentInt::constant(3));
    }
}
