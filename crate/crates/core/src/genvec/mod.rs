//! Generating vectors `(a1, b1, ..., ag, bg, c1, ..., cn)` with
//! `prod [ai,bi] * prod cj = Id`, their validation, explicit witnesses for
//! every classified case, and an exhaustive oracle.

mod engine;
mod recipes;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cayley::{el, perm, tables};
use crate::classify::classify;
use crate::grp::{Subgroup, TransitiveClass};
use crate::perm5::{CycleType, Perm5};
use crate::ram::RamData;

pub use engine::{Choice, Engine, Level, Problem};

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenvecError {
    #[error("vector has genus {found_g} and {found_n} branch entries, data needs {g} and {n}")]
    LengthMismatch {
        g: u32,
        n: usize,
        found_g: u32,
        found_n: usize,
    },
    #[error("{group} is not a monodromy group for {data}")]
    NotRealizable { data: String, group: TransitiveClass },
    #[error("search space of {size} transitions exceeds the budget")]
    BudgetExceeded { size: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratingVector {
    pub g: u32,
    pub ab: Vec<Perm5>,
    pub cs: Vec<Perm5>,
}

impl GeneratingVector {
    pub fn new(g: u32, ab: Vec<Perm5>, cs: Vec<Perm5>) -> GeneratingVector {
        assert_eq!(ab.len(), 2 * g as usize, "ab must hold 2g entries");
        GeneratingVector { g, ab, cs }
    }

    pub fn commutator_product(&self) -> Perm5 {
        self.ab
            .chunks(2)
            .map(|p| Perm5::commutator(&p[0], &p[1]))
            .fold(Perm5::identity(), |acc, c| acc * c)
    }

    pub fn product(&self) -> Perm5 {
        self.commutator_product() * Perm5::product(&self.cs)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Perm5> {
        self.ab.iter().chain(self.cs.iter())
    }

    pub fn generated(&self) -> Subgroup {
        let gens: Vec<Perm5> = self.entries().copied().collect();
        Subgroup::closure(&gens)
    }

    /// Labelled entries `a1=(..)`, `b1=(..)`, `c1=(..)`.
    pub fn labelled(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, p) in self.ab.chunks(2).enumerate() {
            out.push(format!("a{}={}", i + 1, p[0]));
            out.push(format!("b{}={}", i + 1, p[1]));
        }
        for (i, c) in self.cs.iter().enumerate() {
            out.push(format!("c{}={}", i + 1, c));
        }
        out
    }
}

impl fmt::Display for GeneratingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labelled().join(" "))
    }
}

impl Serialize for GeneratingVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labelled().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub product_ok: bool,
    pub types_ok: bool,
    pub transitive: bool,
    pub group: Option<TransitiveClass>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.product_ok && self.types_ok && self.transitive
    }
}

pub fn validate(v: &GeneratingVector, d: &RamData) -> Result<ValidationReport, GenvecError> {
    if v.g != d.base_genus || v.cs.len() != d.n() || v.ab.len() != 2 * v.g as usize {
        return Err(GenvecError::LengthMismatch {
            g: d.base_genus,
            n: d.n(),
            found_g: v.g,
            found_n: v.cs.len(),
        });
    }
    let product_ok = v.product().is_identity();
    let types_ok = v.cs.iter().zip(&d.types).all(|(c, t)| c.cycle_type() == *t);
    let h = v.generated();
    let transitive = h.is_transitive();
    let group = (product_ok && types_ok && transitive)
        .then(|| h.identify_transitive().ok())
        .flatten();
    Ok(ValidationReport {
        product_ok,
        types_ok,
        transitive,
        group,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reading {
    LeftToRight,
    RightToLeft,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WitnessSource {
    Recipe {
        rule: &'static str,
        plan: &'static str,
        reading: Reading,
    },
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vector: GeneratingVector,
    pub group: TransitiveClass,
    pub source: WitnessSource,
}

/// A generating vector for `d` whose group is exactly the canonical copy of
/// `target`, following the explicit constructions when they apply and a
/// lexicographically first search otherwise.
pub fn construct_witness(d: &RamData, target: TransitiveClass) -> Result<Witness, GenvecError> {
    let r = classify(d);
    if !r.allows(target) {
        return Err(GenvecError::NotRealizable {
            data: d.to_string(),
            group: target,
        });
    }
    let goal = target.group();
    if d.n() > 6 {
        if let Some(w) = reduced_witness(d, target) {
            return Ok(w);
        }
    }
    for plan in recipes::plans(d, target, r.rule_fired) {
        for reading in [Reading::LeftToRight, Reading::RightToLeft] {
            if !plan.reads(reading) {
                continue;
            }
            let Some((ab, cs)) = plan.realize(d, target, reading) else {
                continue;
            };
            let v = GeneratingVector::new(d.base_genus, pad(ab, d.base_genus), braid_to(&cs, &d.types));
            let v = conjugate_onto(v, goal);
            if validate(&v, d).is_ok_and(|rep| rep.is_valid()) && v.generated() == *goal {
                return Ok(Witness {
                    vector: v,
                    group: target,
                    source: WitnessSource::Recipe {
                        rule: r.rule_fired,
                        plan: plan.name,
                        reading,
                    },
                });
            }
        }
    }
    let v = search(d, goal).expect("classifier and search disagree");
    Ok(Witness {
        vector: v,
        group: target,
        source: WitnessSource::Search,
    })
}

/// Drops a pair of equal types that the classification does not need,
/// solves the smaller data and appends `c, c^-1` for the dropped pair.
fn reduced_witness(d: &RamData, target: TransitiveClass) -> Option<Witness> {
    let counts = d.counts();
    let goal = target.group();
    for ty in counts.types() {
        if counts.of(ty) < 2 {
            continue;
        }
        let mut rest = d.types.clone();
        for _ in 0..2 {
            let i = rest.iter().position(|t| *t == ty)?;
            rest.remove(i);
        }
        let core = RamData::new(d.base_genus, rest);
        if !classify(&core).allows(target) {
            continue;
        }
        let w = construct_witness(&core, target).ok()?;
        let c = *goal.elements_of_type(ty).first()?;
        let mut cs = w.vector.cs.clone();
        cs.extend([c, c.inverse()]);
        let v = GeneratingVector::new(d.base_genus, w.vector.ab.clone(), braid_to(&cs, &d.types));
        if validate(&v, d).is_ok_and(|rep| rep.is_valid()) && v.generated() == *goal {
            return Some(Witness { vector: v, ..w });
        }
    }
    None
}

/// Conjugates `v` so that it generates `goal`, when its group is conjugate
/// to `goal`.
fn conjugate_onto(v: GeneratingVector, goal: &Subgroup) -> GeneratingVector {
    let h = v.generated();
    if h == *goal || h.order() != goal.order() {
        return v;
    }
    match Perm5::all().find(|s| h.conjugate(s) == *goal) {
        Some(s) => GeneratingVector {
            g: v.g,
            ab: v.ab.iter().map(|x| x.conjugate(&s)).collect(),
            cs: v.cs.iter().map(|x| x.conjugate(&s)).collect(),
        },
        None => v,
    }
}

fn pad(mut ab: Vec<Perm5>, g: u32) -> Vec<Perm5> {
    ab.resize(2 * g as usize, Perm5::identity());
    ab
}

/// Lexicographically first generating vector of `d` generating exactly `h`.
pub fn search(d: &RamData, h: &Subgroup) -> Option<GeneratingVector> {
    let p = oracle_problem(d, h);
    let sol = Engine::new(&p).first()?;
    let mut ab = Vec::new();
    let mut cs = Vec::new();
    for c in sol {
        match c {
            Choice::Pair(a, b) => {
                ab.push(perm(a));
                ab.push(perm(b));
            }
            Choice::Elem(e) => cs.push(perm(e)),
        }
    }
    Some(GeneratingVector::new(d.base_genus, ab, cs))
}

fn oracle_problem(d: &RamData, h: &Subgroup) -> Problem {
    let t = tables();
    let mut levels = vec![Level::Pair; d.base_genus as usize];
    levels.extend(d.types.iter().map(|ty| Level::Elem(*ty)));
    Problem {
        pool: h.mask(),
        levels,
        start: (el(&Perm5::identity()), t.trivial()),
        target: el(&Perm5::identity()),
        need: Some(t.id_of(h)),
    }
}

/// Whether some generating vector of `d` generates exactly `h`.
pub fn realized_by(d: &RamData, h: &Subgroup, budget: u128) -> Result<bool, GenvecError> {
    if d.types.iter().any(|ty| h.elements_of_type(*ty).is_empty()) {
        return Ok(false);
    }
    let p = oracle_problem(d, h);
    let e = Engine::new(&p);
    let size = e.cost_bound();
    if size > budget {
        return Err(GenvecError::BudgetExceeded { size });
    }
    Ok(!e.solution_groups().is_empty())
}

/// Exhaustive oracle: the transitive classes realized by some generating
/// vector for `d`. Independent of the classifier.
pub fn enumerate_monodromy(
    d: &RamData,
    budget: u128,
) -> Result<BTreeSet<TransitiveClass>, GenvecError> {
    let mut size = 0u128;
    let mut problems = Vec::new();
    for cls in TransitiveClass::ALL {
        if d.types.iter().all(|ty| cls.admits(*ty)) {
            let p = oracle_problem(d, cls.group());
            size += Engine::new(&p).cost_bound();
            problems.push((cls, p));
        }
    }
    if size > budget {
        return Err(GenvecError::BudgetExceeded { size });
    }
    Ok(problems
        .iter()
        .filter(|(_, p)| !Engine::new(p).solution_groups().is_empty())
        .map(|(cls, _)| *cls)
        .collect())
}

/// Reorders `cs` by Hurwitz moves so that the types follow `order`. The
/// product and the generated group are unchanged.
pub fn braid_to(cs: &[Perm5], order: &[CycleType]) -> Vec<Perm5> {
    let mut v = cs.to_vec();
    for (i, want) in order.iter().enumerate() {
        let Some(j) = (i..v.len()).find(|&j| v[j].cycle_type() == *want) else {
            return v;
        };
        for k in (i..j).rev() {
            let (x, y) = (v[k], v[k + 1]);
            v[k] = y.conjugate(&x.inverse());
            v[k + 1] = x;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::TransitiveClass::*;
    use crate::perm5::p;

    fn d(s: &str) -> RamData {
        s.parse().unwrap()
    }

    #[test]
    fn validation_examples() {
        let v = GeneratingVector::new(1, vec![p("(1 2 3 4 5)"), Perm5::identity()], vec![]);
        let r = validate(&v, &d("g=1;")).unwrap();
        assert!(r.is_valid());
        assert_eq!(r.group, Some(C5));
        let v = GeneratingVector::new(0, vec![], vec![p("(1 2)"), p("(1 2)")]);
        let r = validate(&v, &d("g=0; 2,1,1,1:2,1,1,1")).unwrap();
        assert!(r.product_ok && r.types_ok && !r.transitive && !r.is_valid());
        assert!(matches!(
            validate(&v, &d("g=0; 2,1,1,1")),
            Err(GenvecError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn hurwitz_moves_keep_product() {
        let cs = vec![p("(1 2 3 4 5)"), p("(1 2)(3 4)"), p("(1 3 5)")];
        let want = [CycleType::ThreeOneOne, CycleType::Five, CycleType::TwoTwoOne];
        let out = braid_to(&cs, &want);
        assert_eq!(Perm5::product(&out), Perm5::product(&cs));
        let ty: Vec<CycleType> = out.iter().map(|c| c.cycle_type()).collect();
        assert_eq!(ty, want);
        assert_eq!(Subgroup::closure(&out), Subgroup::closure(&cs));
    }

    #[test]
    fn oracle_examples() {
        let set = |xs: &[TransitiveClass]| xs.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(enumerate_monodromy(&d("g=0; 5:5"), DEFAULT_BUDGET).unwrap(), set(&[C5]));
        assert_eq!(enumerate_monodromy(&d("g=1;"), DEFAULT_BUDGET).unwrap(), set(&[C5]));
        assert_eq!(
            enumerate_monodromy(&d("g=0; 3,2:3,2:2,2,1"), DEFAULT_BUDGET).unwrap(),
            set(&[S5])
        );
        assert!(matches!(
            enumerate_monodromy(&d("g=0; 5:5:5"), 10),
            Err(GenvecError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn no_a5_vector_for_one_involution_over_a_torus() {
        assert!(!realized_by(&d("g=1; 2,2,1"), A5.group(), DEFAULT_BUDGET).unwrap());
        assert!(realized_by(&d("g=1; 2,2,1"), S5.group(), DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn witness_examples() {
        let w = construct_witness(&d("g=0; 5:5:5"), A5).unwrap();
        assert_eq!(w.vector.cs[0], p("(1 3 2 5 4)"));
        assert_eq!(w.vector.cs[1], p("(1 3 5 4 2)"));
        let c = w.vector.cs.clone();
        assert_eq!(c[1].pow(2) * c[0].pow(2), p("(2 5 4)"));
        let w = construct_witness(&d("g=2;"), D5).unwrap();
        assert_eq!(w.vector.ab[0], p("(1 3 5 2 4)"));
        assert_eq!(w.vector.ab[1], p("(1 2)(3 5)"));
        let dd = d("g=0; 4,1:4,1:2,2,1");
        let w = construct_witness(&dd, AffF5).unwrap();
        assert_eq!(validate(&w.vector, &dd).unwrap().group, Some(AffF5));
        assert!(matches!(
            construct_witness(&d("g=0; 4,1:4,1:2,2,1"), S5),
            Err(GenvecError::NotRealizable { .. })
        ));
    }

    #[test]
    fn witnesses_over_small_grid() {
        for g in 0..=2u32 {
            for c in crate::ram::multisets(3, 12) {
                let dd = RamData::new(g, c.types());
                for cls in classify(&dd).possible {
                    let w = construct_witness(&dd, cls).unwrap();
                    let r = validate(&w.vector, &dd).unwrap();
                    assert!(r.is_valid(), "{dd} {cls} {}", w.vector);
                    assert_eq!(w.vector.generated(), *cls.group(), "{dd} {cls}");
                }
            }
        }
    }
}
