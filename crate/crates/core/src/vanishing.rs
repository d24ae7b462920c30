//! Motivic nearby fiber and vanishing cycles from embedded-resolution data,
//! and the vanishing cycles measure on generator presentations.
//!
//! Sign convention: `phi = [|X_a|] - psi`, with no dimension-dependent sign.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::a1::{A1Class, BasePoint};
use crate::class::MuClass;
use crate::error::{Error, Result};
use crate::laurent::LaurentInt;
use crate::realize::chi_c;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Locus {
    Regular,
    Singular,
}

impl Locus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Locus::Regular => "regular",
            Locus::Singular => "singular",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub multiplicity: u64,
}

/// An open stratum `E°_I` of the exceptional divisor together with its
/// unramified Galois cover of degree `m_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub index_set: BTreeSet<String>,
    pub base: MuClass,
    pub cover: MuClass,
    pub locus: Locus,
}

/// Resolution data at one critical value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncDatum {
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
    pub fiber_regular: MuClass,
    pub fiber_singular: MuClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateComponent(String),
    ZeroMultiplicity(String),
    EmptyIndexSet,
    UnknownComponent(String),
    DuplicateStratum(Vec<String>),
    CrossingNotSingular(Vec<String>),
    NontrivialAction(String),
    CoverEulerMismatch { stratum: Vec<String>, expected: String, found: String },
    UnramifiedCoverDiffers(Vec<String>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateComponent(id) => write!(f, "component '{id}' declared twice"),
            Violation::ZeroMultiplicity(id) => write!(f, "component '{id}' has multiplicity 0"),
            Violation::EmptyIndexSet => write!(f, "stratum with empty index set"),
            Violation::UnknownComponent(id) => write!(f, "stratum refers to unknown component '{id}'"),
            Violation::DuplicateStratum(i) => write!(f, "stratum {i:?} listed twice"),
            Violation::CrossingNotSingular(i) => {
                write!(f, "stratum {i:?} meets several components but is not singular")
            }
            Violation::NontrivialAction(what) => write!(f, "{what} must have trivial action"),
            Violation::CoverEulerMismatch { stratum, expected, found } => write!(
                f,
                "stratum {stratum:?}: chi_c(cover) = {found}, expected m_I * chi_c(base) = {expected}"
            ),
            Violation::UnramifiedCoverDiffers(i) => {
                write!(f, "stratum {i:?} has m_I = 1 but cover differs from base")
            }
        }
    }
}

impl SncDatum {
    fn multiplicity(&self, id: &str) -> Option<u64> {
        self.components.iter().find(|c| c.id == id).map(|c| c.multiplicity)
    }

    /// `m_I`, the gcd of the multiplicities of the components in `I`.
    pub fn stratum_multiplicity(&self, s: &Stratum) -> u64 {
        s.index_set
            .iter()
            .filter_map(|id| self.multiplicity(id))
            .fold(0, |acc, m| acc.gcd(&m))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id.as_str()) {
                out.push(Violation::DuplicateComponent(c.id.clone()));
            }
            if c.multiplicity == 0 {
                out.push(Violation::ZeroMultiplicity(c.id.clone()));
            }
        }
        for (what, class) in [("fiber_regular", &self.fiber_regular), ("fiber_singular", &self.fiber_singular)] {
            if !class.is_trivial_action() {
                out.push(Violation::NontrivialAction(what.into()));
            }
        }
        let mut seen = BTreeSet::new();
        for s in &self.strata {
            let label: Vec<String> = s.index_set.iter().cloned().collect();
            if s.index_set.is_empty() {
                out.push(Violation::EmptyIndexSet);
                continue;
            }
            for id in &s.index_set {
                if !ids.contains(id.as_str()) {
                    out.push(Violation::UnknownComponent(id.clone()));
                }
            }
            if !seen.insert(s.index_set.clone()) {
                out.push(Violation::DuplicateStratum(label.clone()));
            }
            if s.index_set.len() >= 2 && s.locus != Locus::Singular {
                out.push(Violation::CrossingNotSingular(label.clone()));
            }
            if !s.base.is_trivial_action() {
                out.push(Violation::NontrivialAction(format!("base class of stratum {label:?}")));
            }
            let m = self.stratum_multiplicity(s);
            if m == 0 {
                continue;
            }
            let expected = chi_c(&s.base) * m;
            let found = chi_c(&s.cover);
            if expected != found {
                out.push(Violation::CoverEulerMismatch {
                    stratum: label.clone(),
                    expected: expected.to_string(),
                    found: found.to_string(),
                });
            }
            if m == 1 && s.cover != s.base {
                out.push(Violation::UnramifiedCoverDiffers(label));
            }
        }
        out
    }

    fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            return Ok(());
        }
        let detail: Vec<String> = violations.iter().map(ToString::to_string).collect();
        Err(Error::Validation(detail.join("; ")))
    }

    /// `(1 - L)^{|I| - 1} [cover]` summed over strata on the given locus.
    fn weighted_covers(&self, locus: Option<Locus>) -> MuClass {
        let one_minus_l = LaurentInt::one() - LaurentInt::lefschetz();
        self.strata
            .iter()
            .filter(|s| locus.is_none_or(|l| s.locus == l))
            .fold(MuClass::zero(), |acc, s| {
                let weight = one_minus_l.pow(s.index_set.len() as u32 - 1);
                &acc + &s.cover.scale(&weight)
            })
    }
}

/// Lists violated invariants; empty iff the datum is valid.
pub fn validate_datum(d: &SncDatum) -> Vec<Violation> {
    d.validate()
}

/// `psi = sum_I (1 - L)^{|I| - 1} [cover_I]`.
pub fn nearby_fiber(d: &SncDatum) -> Result<MuClass> {
    d.ensure_valid()?;
    Ok(d.weighted_covers(None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingCycles {
    pub phi: MuClass,
    /// Contribution of the regular locus; zero for data from genuine resolutions.
    pub phi_regular: MuClass,
}

pub fn vanishing_cycles(d: &SncDatum) -> Result<VanishingCycles> {
    d.ensure_valid()?;
    Ok(VanishingCycles {
        phi: &d.fiber_singular - &d.weighted_covers(Some(Locus::Singular)),
        phi_regular: &d.fiber_regular - &d.weighted_covers(Some(Locus::Regular)),
    })
}

/// Generators of classes over the affine line on which the measure is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// A family given by resolution data at each of its critical values.
    Resolved { criticals: Vec<(BasePoint, SncDatum)> },
    /// A constant family with every fiber over `value`.
    Constant { value: BasePoint, fiber_class: MuClass },
    /// A fiberwise smooth proper family.
    SmoothProper,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub terms: Vec<(i64, Generator)>,
}

impl Presentation {
    pub fn single(g: Generator) -> Self {
        Self { terms: vec![(1, g)] }
    }

    /// Formal sum, concatenating terms.
    pub fn concat(&self, other: &Presentation) -> Presentation {
        Presentation {
            terms: self.terms.iter().chain(&other.terms).cloned().collect(),
        }
    }
}

pub fn phi_generator(g: &Generator) -> Result<A1Class> {
    match g {
        Generator::Resolved { criticals } => {
            let points: BTreeSet<_> = criticals.iter().map(|(a, _)| a).collect();
            if points.len() != criticals.len() {
                return Err(Error::Validation("critical values must be pairwise distinct".into()));
            }
            let mut out = A1Class::zero();
            for (a, d) in criticals {
                out.add_at(a.clone(), &vanishing_cycles(d)?.phi);
            }
            Ok(out)
        }
        Generator::Constant { value, fiber_class } => {
            if !fiber_class.is_trivial_action() {
                return Err(Error::Validation("constant fiber class must have trivial action".into()));
            }
            Ok(A1Class::at(value.clone(), fiber_class.clone()))
        }
        Generator::SmoothProper => Ok(A1Class::zero()),
    }
}

/// The vanishing cycles measure, extended linearly over a presentation.
pub fn phi_measure(p: &Presentation) -> Result<A1Class> {
    let mut out = A1Class::zero();
    for (coeff, g) in &p.terms {
        out = &out + &phi_generator(g)?.scale(&LaurentInt::constant(*coeff));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointComparison {
    pub point: BasePoint,
    pub lhs: MuClass,
    pub rhs: MuClass,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsReport {
    /// `Phi(V) ⋆ Phi(W)`.
    pub lhs: A1Class,
    /// `Phi` of the direct sum.
    pub rhs: A1Class,
    pub points: Vec<PointComparison>,
    pub equal: bool,
}

/// Compares `Phi(V) ⋆ Phi(W)` with `Phi` of the generator for `V (+) W`.
pub fn ts_check(v: &Generator, w: &Generator, direct: &Generator) -> Result<TsReport> {
    let lhs = phi_generator(v)?.star(&phi_generator(w)?);
    let rhs = phi_generator(direct)?;
    let support: BTreeSet<BasePoint> =
        lhs.points().chain(rhs.points()).map(|(a, _)| a.clone()).collect();
    let points: Vec<PointComparison> = support
        .into_iter()
        .map(|a| {
            let (l, r) = (lhs.get(&a), rhs.get(&a));
            PointComparison { equal: l == r, point: a, lhs: l, rhs: r }
        })
        .collect();
    let equal = points.iter().all(|p| p.equal);
    Ok(TsReport { lhs, rhs, points, equal })
}
