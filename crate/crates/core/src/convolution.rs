//! The convolution product `*` on equivariant classes over a point.
//!
//! `psi_pair` evaluates the convolution of an exterior product `A (x) B` by
//! bilinear extension of these rules:
//!
//! * P1 Laurent coefficients pull out.
//! * P2 if one side has trivial action, the result is the ordinary product.
//! * P3 trivial-action factors split off multiplicatively.
//! * P4 `ORB(n) (x) ORB(n) -> n (L - 1) - FER(n, 2)`
//! * P5 `FER(n, r) (x) ORB(n) -> (L - 1) fer(n, r-1) ORB(n) + FER(n, r+1) - (L - 1) fer(n, r)`
//! * P6 anything else becomes one equivariant opaque atom whose Euler
//!   characteristic is the product of the two sides.

use std::collections::BTreeMap;

use crate::class::{Atom, AtomFactor, MuClass, Opaque};
use crate::error::{Error, Result};
use crate::laurent::LaurentInt;
use crate::realize::{chi_atom, chi_c};

/// Exterior products `A (x) B` of atoms with Laurent coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiClass {
    terms: BTreeMap<(Atom, Atom), LaurentInt>,
}

impl BiClass {
    pub fn exterior(a: &MuClass, b: &MuClass) -> Self {
        let mut out = Self::default();
        for (x, p) in a.terms() {
            for (y, q) in b.terms() {
                out.add_term(x.clone(), y.clone(), &(p * q));
            }
        }
        out
    }

    pub fn add_term(&mut self, a: Atom, b: Atom, p: &LaurentInt) {
        let key = (a, b);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += p;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Atom, Atom), &LaurentInt)> {
        self.terms.iter()
    }
}

fn single_factor(a: &Atom) -> Option<&AtomFactor> {
    match a.factors() {
        [f] => Some(f),
        _ => None,
    }
}

fn fer(n: u64, r: u64) -> MuClass {
    MuClass::fermat_trivial(n, r).expect("valid Fermat descriptor")
}

fn fermat(n: u64, r: u64) -> MuClass {
    MuClass::fermat(n, r).expect("valid Fermat descriptor")
}

fn orbit(n: u64) -> MuClass {
    MuClass::orbit(n).expect("valid orbit size")
}

/// P5 for `FER(n, r) (x) ORB(n)`.
fn fermat_times_orbit(n: u64, r: u64) -> MuClass {
    let torus = LaurentInt::torus();
    let first = (&fer(n, r - 1) * &orbit(n)).scale(&torus);
    let last = fer(n, r).scale(&torus);
    &(&first + &fermat(n, r + 1)) - &last
}

/// Convolution of two purely equivariant atoms.
fn psi_equivariant(a: &Atom, b: &Atom) -> MuClass {
    match (single_factor(a), single_factor(b)) {
        (Some(AtomFactor::Orb(n)), Some(AtomFactor::Orb(m))) if n == m => {
            &MuClass::torus().scale(&LaurentInt::constant(*n)) - &fermat(*n, 2)
        }
        (Some(AtomFactor::Fermat { n, r }), Some(AtomFactor::Orb(m)))
        | (Some(AtomFactor::Orb(m)), Some(AtomFactor::Fermat { n, r }))
            if n == m =>
        {
            fermat_times_orbit(*n, *r)
        }
        _ => {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let chi = chi_atom(lo) * chi_atom(hi);
            MuClass::from_atom_factor(AtomFactor::Opaque(Opaque {
                tag: format!("psi({lo},{hi})"),
                chi,
                epoly: None,
                equivariant: true,
            }))
        }
    }
}

fn psi_atoms(a: &Atom, b: &Atom) -> MuClass {
    let (a_triv, a_eq) = a.split_action();
    let (b_triv, b_eq) = b.split_action();
    if a_eq.is_point() || b_eq.is_point() {
        return &MuClass::from_atom(a.clone()) * &MuClass::from_atom(b.clone());
    }
    let trivial = &MuClass::from_atom(a_triv) * &MuClass::from_atom(b_triv);
    &trivial * &psi_equivariant(&a_eq, &b_eq)
}

pub fn psi_pair(p: &BiClass) -> MuClass {
    let mut out = MuClass::zero();
    for ((a, b), c) in p.terms() {
        out = &out + &psi_atoms(a, b).scale(c);
    }
    out
}

/// The convolution product `a * b`.
pub fn star(a: &MuClass, b: &MuClass) -> MuClass {
    psi_pair(&BiClass::exterior(a, b))
}

/// Closed form of the `r`-fold convolution power of `ORB(n)`.
pub fn star_power(n: u64, r: u64) -> Result<MuClass> {
    if n < 2 || r < 1 {
        return Err(Error::Validation(format!(
            "star_power needs n >= 2 and r >= 1, got n = {n}, r = {r}"
        )));
    }
    if r == 1 {
        return Ok(orbit(n));
    }
    Ok(&fer(n, r - 1).scale(&LaurentInt::torus()) - &fermat(n, r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicVerdict {
    Equal,
    NotEqual,
    /// The folds differ but involve opaque atoms, so nothing can be concluded.
    SkippedOpaque,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocReport {
    pub left: MuClass,
    pub right: MuClass,
    pub symbolic: SymbolicVerdict,
    pub chi_consistent: bool,
}

/// Compares `(a * b) * c` with `a * (b * c)`.
pub fn assoc_check(a: &MuClass, b: &MuClass, c: &MuClass) -> AssocReport {
    let left = star(&star(a, b), c);
    let right = star(a, &star(b, c));
    let symbolic = if left == right {
        SymbolicVerdict::Equal
    } else if left.contains_opaque() || right.contains_opaque() {
        SymbolicVerdict::SkippedOpaque
    } else {
        SymbolicVerdict::NotEqual
    };
    let expected = chi_c(a) * chi_c(b) * chi_c(c);
    let chi_consistent = chi_c(&left) == expected && chi_c(&right) == expected;
    AssocReport { left, right, symbolic, chi_consistent }
}
