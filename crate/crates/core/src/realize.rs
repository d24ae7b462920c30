//! Realizations: compactly supported Euler characteristic, Hodge–Deligne
//! E-polynomial, and a brute-force point count over finite fields.

use num_bigint::BigInt;
use num_traits::One;

use crate::a1::A1Class;
use crate::class::{Atom, AtomFactor, MuClass};
use crate::epoly::EPoly;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::laurent::LaurentInt;

/// Default cap on the number of tuples the point-count oracle enumerates.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

pub fn chi_factor(f: &AtomFactor) -> BigInt {
    match f {
        AtomFactor::Orb(d) => BigInt::from(*d),
        AtomFactor::Fermat { n, r } | AtomFactor::FermatTrivial { n, r } => {
            -BigInt::from(*n).pow(*r as u32)
        }
        AtomFactor::Opaque(o) => o.chi.clone(),
    }
}

pub fn chi_atom(a: &Atom) -> BigInt {
    a.factors().iter().map(chi_factor).product()
}

/// Compactly supported Euler characteristic. `L` realizes to 1.
pub fn chi_c(c: &MuClass) -> BigInt {
    c.terms().map(|(a, p)| p.eval_at_one() * chi_atom(a)).sum()
}

/// `chi_c` of the pushforward of an `A^1`-class to the point.
pub fn chi_of_a1(f: &A1Class) -> BigInt {
    chi_c(&f.epsilon_push())
}

fn genus_of_fermat_curve(n: u64) -> BigInt {
    BigInt::from((n - 1) * (n - 2) / 2)
}

fn e_factor(f: &AtomFactor) -> Result<EPoly> {
    match f {
        AtomFactor::FermatTrivial { n, r: 2 } => {
            // projective Fermat curve of genus g, minus n points at infinity
            // and 2n points on the coordinate axes
            let g = genus_of_fermat_curve(*n);
            let mut e = EPoly::zero();
            e.add_term(1, 1, BigInt::one());
            e.add_term(1, 0, -g.clone());
            e.add_term(0, 1, -g);
            e.add_term(0, 0, BigInt::from(1 - 3 * *n as i64));
            Ok(e)
        }
        AtomFactor::Opaque(o) => o.epoly.clone().ok_or_else(|| {
            Error::Realization(format!("opaque class [opq:{}] carries no E-polynomial", o.tag))
        }),
        other => Err(Error::Realization(format!("no E-polynomial formula for {other}"))),
    }
}

fn e_laurent(p: &LaurentInt) -> EPoly {
    EPoly::from_terms(p.terms().map(|(e, c)| ((e, e), c.clone())))
}

/// Hodge–Deligne polynomial of the class with its action forgotten.
pub fn e_polynomial(c: &MuClass) -> Result<EPoly> {
    let forgotten = c.forget_action();
    let mut out = EPoly::zero();
    for (atom, p) in forgotten.terms() {
        let mut term = e_laurent(p);
        for f in atom.factors() {
            term = &term * &e_factor(f)?;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Counts `x_1^n + ... + x_r^n = 1` with every `x_i != 0` over `F_q` by
/// enumerating all `(q - 1)^r` tuples.
pub fn point_count_oracle(factor: &AtomFactor, q: u64, budget: u64) -> Result<u64> {
    let (n, r) = match factor {
        AtomFactor::FermatTrivial { n, r } | AtomFactor::Fermat { n, r } => (*n, *r),
        other => {
            return Err(Error::Oracle(format!("point counts only for Fermat loci, got {other}")))
        }
    };
    let field = FiniteField::new(q)?;
    if num_integer::gcd(field.characteristic(), n) != 1 {
        return Err(Error::Oracle(format!("q = {q} is not coprime to n = {n}")));
    }
    let tuples = u32::try_from(r)
        .ok()
        .and_then(|r| (q - 1).checked_pow(r))
        .filter(|&t| t <= budget)
        .ok_or_else(|| {
            Error::Oracle(format!("({})^{r} tuples exceed the budget of {budget}", q - 1))
        })?;
    let powers: Vec<u64> = (1..q).map(|x| field.pow(x, n)).collect();
    let r = r as usize;
    let mut idx = vec![0usize; r];
    let mut count = 0;
    for _ in 0..tuples {
        let sum = idx.iter().fold(0, |acc, &i| field.add(acc, powers[i]));
        if sum == 1 {
            count += 1;
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < powers.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(count)
}
