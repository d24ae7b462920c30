//! Standard resolution data and generators used by tests, the acceptance
//! suite and the shipped example files.

use std::collections::BTreeSet;

use crate::a1::BasePoint;
use crate::class::MuClass;
use crate::laurent::LaurentInt;
use crate::vanishing::{Component, Generator, Locus, Presentation, SncDatum, Stratum};

fn index_set(ids: &[&str]) -> BTreeSet<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

/// `x^n` on the affine line at 0: one component `E1 = n * (0)` whose
/// Galois cover is a free orbit of size `n`. For `n = 1` the fiber is
/// smooth and the point sits on the regular locus.
pub fn power_datum(n: u64) -> SncDatum {
    let (locus, fiber_regular, fiber_singular) = if n == 1 {
        (Locus::Regular, MuClass::one(), MuClass::zero())
    } else {
        (Locus::Singular, MuClass::zero(), MuClass::one())
    };
    SncDatum {
        components: vec![Component { id: "E1".into(), multiplicity: n }],
        strata: vec![Stratum {
            index_set: index_set(&["E1"]),
            base: MuClass::one(),
            cover: MuClass::orbit(n).expect("n >= 1"),
            locus,
        }],
        fiber_regular,
        fiber_singular,
    }
}

/// `xy` on the plane at 0: the coordinate cross, both components reduced.
pub fn cross_datum() -> SncDatum {
    let torus = MuClass::torus();
    let line = |id: &str| Stratum {
        index_set: index_set(&[id]),
        base: torus.clone(),
        cover: torus.clone(),
        locus: Locus::Regular,
    };
    SncDatum {
        components: vec![
            Component { id: "E1".into(), multiplicity: 1 },
            Component { id: "E2".into(), multiplicity: 1 },
        ],
        strata: vec![
            line("E1"),
            line("E2"),
            Stratum {
                index_set: index_set(&["E1", "E2"]),
                base: MuClass::one(),
                cover: MuClass::one(),
                locus: Locus::Singular,
            },
        ],
        fiber_regular: torus.scale(&LaurentInt::constant(2)),
        fiber_singular: MuClass::one(),
    }
}

/// A smooth reduced fiber of class `c`.
pub fn smooth_datum(c: MuClass) -> SncDatum {
    SncDatum {
        components: vec![Component { id: "E1".into(), multiplicity: 1 }],
        strata: vec![Stratum {
            index_set: index_set(&["E1"]),
            base: c.clone(),
            cover: c.clone(),
            locus: Locus::Regular,
        }],
        fiber_regular: c,
        fiber_singular: MuClass::zero(),
    }
}

pub fn power_generator(n: u64) -> Generator {
    Generator::Resolved { criticals: vec![(BasePoint::zero(), power_datum(n))] }
}

pub fn cross_generator() -> Generator {
    Generator::Resolved { criticals: vec![(BasePoint::zero(), cross_datum())] }
}

/// `L^2 + L + 1`.
pub fn projective_plane_class() -> MuClass {
    MuClass::from_laurent(LaurentInt::from_terms([(2, 1), (1, 1), (0, 1)]))
}

/// `L` over the line, written as `[A^1 x P^1 -> A^1] - [A^1 -> A^1]`;
/// both generators are smooth and proper over the line.
pub fn lefschetz_over_line() -> Presentation {
    Presentation {
        terms: vec![(1, Generator::SmoothProper), (-1, Generator::SmoothProper)],
    }
}

/// The unit class over the line: a point over the origin.
pub fn unit_presentation() -> Presentation {
    Presentation::single(Generator::Constant { value: BasePoint::zero(), fiber_class: MuClass::one() })
}
