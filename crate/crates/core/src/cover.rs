//! The Galois closure of a covering and its intermediate quotients `X^/H`.
//! Ramification of `X^/H -> Y` over a branch value is read off the orbits of
//! the local monodromy `<c>` acting on the right cosets `H\G`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::affine::{form, AffineForm, Q};
use crate::cayley::{el, tables, El};
use crate::genvec::{validate, GeneratingVector};
use crate::grp::{GroupError, Subgroup, TransitiveClass};
use crate::perm5::{CycleType, Perm5};
use crate::ram::{RamData, Signature, TypeCounts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("signature gives closure genus {0}, which is impossible")]
    InconsistentSignature(Q),
    #[error("subgroup of order {sub} is not contained in the group of order {group}")]
    NotASubgroup { sub: usize, group: usize },
    #[error("monodromy {0} lies outside the group")]
    OutsideGroup(Perm5),
    #[error("generating vector does not fit {0}")]
    InvalidVector(String),
    #[error("{group} has no elements of type [{ty}]")]
    TypeNotInGroup { group: TransitiveClass, ty: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchEntry {
    pub order: u32,
    pub monodromy: Perm5,
}

/// Base genus and the local monodromy at each branch value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricSignature {
    pub base_genus: u32,
    pub entries: Vec<BranchEntry>,
}

impl GeometricSignature {
    pub fn new(base_genus: u32, monodromy: &[Perm5]) -> GeometricSignature {
        GeometricSignature {
            base_genus,
            entries: monodromy
                .iter()
                .map(|c| BranchEntry {
                    order: c.order(),
                    monodromy: *c,
                })
                .collect(),
        }
    }

    pub fn periods(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.order).collect()
    }

    /// The signature with periods sorted.
    pub fn signature(&self) -> Signature {
        let mut periods = self.periods();
        periods.sort_unstable();
        Signature {
            genus: self.base_genus,
            periods,
        }
    }
}

impl fmt::Display for GeometricSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.periods().iter().map(|m| m.to_string()).collect();
        write!(f, "({};{})", self.base_genus, ps.join(","))
    }
}

pub fn geometric_signature(
    v: &GeneratingVector,
    d: &RamData,
) -> Result<GeometricSignature, CoverError> {
    match validate(v, d) {
        Ok(r) if r.is_valid() => Ok(GeometricSignature::new(d.base_genus, &v.cs)),
        Ok(_) => Err(CoverError::InvalidVector(d.to_string())),
        Err(e) => Err(CoverError::InvalidVector(e.to_string())),
    }
}

/// `2 g^ - 2 = |G| (2g - 2) + sum |G| (1 - 1/m)`.
pub fn closure_genus(sig: &GeometricSignature, group_order: usize) -> Result<u32, CoverError> {
    closure_genus_of(sig.base_genus, &sig.periods(), group_order)
}

pub fn closure_genus_of(
    base_genus: u32,
    periods: &[u32],
    group_order: usize,
) -> Result<u32, CoverError> {
    let n = group_order as i64;
    let mut twice = Q::from_integer(n * (2 * base_genus as i64 - 2));
    for &m in periods {
        twice += Q::new(n * (m as i64 - 1), m as i64);
    }
    let genus = (twice + 2) / 2;
    if genus.is_integer() && genus >= Q::zero() {
        Ok(genus.to_integer() as u32)
    } else {
        Err(CoverError::InconsistentSignature(genus))
    }
}

/// Degree of the ramification divisor of `X^ -> Y`.
pub fn closure_ramification(sig: &GeometricSignature, group_order: usize) -> u32 {
    sig.entries
        .iter()
        .map(|e| group_order as u32 / e.order * (e.order - 1))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntermediateCovering {
    pub node: Option<&'static str>,
    /// `[G:H]`, the degree of `X^/H -> Y`.
    pub degree_over_base: u32,
    pub genus: u32,
    /// Degree of the ramification divisor of `X^/H -> Y`.
    pub deg_ram_to_base: u32,
    /// Degree of the ramification divisor of `X^ -> X^/H`.
    pub deg_ram_from_closure: u32,
    /// Orbit lengths over each branch value, descending.
    pub ram_profile_per_branch: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Branch {
    profile: Vec<u32>,
    to_base: u32,
    from_closure: u32,
}

/// Right cosets of `h` in `g`: the coset index of every element of `g`.
fn cosets(g: u128, h: u128) -> HashMap<El, usize> {
    let t = tables();
    let hs: Vec<El> = (0..120u8).filter(|e| h >> e & 1 == 1).collect();
    let mut of = HashMap::new();
    let mut next = 0;
    for x in (0..120u8).filter(|e| g >> e & 1 == 1) {
        if of.contains_key(&x) {
            continue;
        }
        for &y in &hs {
            of.insert(t.mul(y, x), next);
        }
        next += 1;
    }
    of
}

fn branch(g: u128, h: u128, c: El) -> Branch {
    static CACHE: OnceLock<Mutex<HashMap<(u128, u128, El), Branch>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(g, h, c)) {
        return b.clone();
    }
    let t = tables();
    let of = cosets(g, h);
    let index = of.values().max().map_or(0, |m| m + 1);
    let mut reps = vec![None; index];
    for (&x, &i) in &of {
        reps[i].get_or_insert(x);
    }
    let mut seen = vec![false; index];
    let mut profile = Vec::new();
    for start in 0..index {
        if seen[start] {
            continue;
        }
        let mut x = reps[start].unwrap();
        let mut len = 0;
        while !seen[of[&x]] {
            seen[of[&x]] = true;
            x = t.mul(x, c);
            len += 1;
        }
        profile.push(len);
    }
    profile.sort_unstable_by(|a, b| b.cmp(a));
    let to_base = (index - profile.len()) as u32;

    let mut cyc = vec![c];
    while cyc.last() != Some(&el(&Perm5::identity())) {
        cyc.push(t.mul(*cyc.last().unwrap(), c));
    }
    let m = cyc.len() as u32;
    let mut total = 0u32;
    for x in (0..120u8).filter(|e| g >> e & 1 == 1) {
        let xi = t.inv(x);
        let meet = cyc
            .iter()
            .filter(|&&y| h >> t.mul(t.mul(xi, y), x) & 1 == 1)
            .count() as u32;
        total += meet - 1;
    }
    let b = Branch {
        profile,
        to_base,
        from_closure: total / m,
    };
    cache.lock().unwrap().insert((g, h, c), b.clone());
    b
}

fn check_inclusion(h: &Subgroup, g: &Subgroup) -> Result<(), CoverError> {
    if h.is_subgroup_of(g) {
        Ok(())
    } else {
        Err(CoverError::NotASubgroup {
            sub: h.order(),
            group: g.order(),
        })
    }
}

/// The covering `X^/H -> Y` together with `X^ -> X^/H`.
pub fn intermediate(
    sig: &GeometricSignature,
    g: &Subgroup,
    h: &Subgroup,
) -> Result<IntermediateCovering, CoverError> {
    check_inclusion(h, g)?;
    if let Some(e) = sig.entries.iter().find(|e| !g.contains(&e.monodromy)) {
        return Err(CoverError::OutsideGroup(e.monodromy));
    }
    let index = (g.order() / h.order()) as u32;
    let mut out = IntermediateCovering {
        node: None,
        degree_over_base: index,
        genus: 0,
        deg_ram_to_base: 0,
        deg_ram_from_closure: 0,
        ram_profile_per_branch: Vec::new(),
    };
    for e in &sig.entries {
        let b = branch(g.mask(), h.mask(), el(&e.monodromy));
        out.deg_ram_to_base += b.to_base;
        out.deg_ram_from_closure += b.from_closure;
        out.ram_profile_per_branch.push(b.profile);
    }
    let twice = index as i64 * (2 * sig.base_genus as i64 - 2) + out.deg_ram_to_base as i64 + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(CoverError::InconsistentSignature(Q::new(twice, 2)));
    }
    out.genus = (twice / 2) as u32;
    debug_assert_eq!(
        closure_ramification(sig, g.order()),
        out.deg_ram_from_closure + h.order() as u32 * out.deg_ram_to_base
    );
    Ok(out)
}

/// The covering `X^/H -> X^/N` for `H <= N <= G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntermediateMap {
    pub degree: u32,
    pub deg_ram: u32,
    pub genus_source: u32,
    pub genus_target: u32,
}

pub fn intermediate_between(
    sig: &GeometricSignature,
    g: &Subgroup,
    h: &Subgroup,
    n: &Subgroup,
) -> Result<IntermediateMap, CoverError> {
    check_inclusion(h, n)?;
    check_inclusion(n, g)?;
    let top = intermediate(sig, g, h)?;
    let bottom = intermediate(sig, g, n)?;
    let t = tables();
    let hc = cosets(g.mask(), h.mask());
    let nc = cosets(g.mask(), n.mask());
    let mut deg_ram = 0;
    for e in &sig.entries {
        let c = el(&e.monodromy);
        let orbit_len = |of: &HashMap<El, usize>, x: El| {
            let start = of[&x];
            let mut y = t.mul(x, c);
            let mut len = 1;
            while of[&y] != start {
                y = t.mul(y, c);
                len += 1;
            }
            len
        };
        let mut done = vec![false; top.degree_over_base as usize];
        let mut xs: Vec<(&El, &usize)> = hc.iter().collect();
        xs.sort_unstable();
        for (&x, &i) in xs {
            if done[i] {
                continue;
            }
            let mut y = x;
            loop {
                done[hc[&y]] = true;
                y = t.mul(y, c);
                if hc[&y] == i {
                    break;
                }
            }
            deg_ram += orbit_len(&hc, x) / orbit_len(&nc, x) - 1;
        }
    }
    let degree = (n.order() / h.order()) as u32;
    debug_assert_eq!(top.deg_ram_to_base, deg_ram + degree * bottom.deg_ram_to_base);
    Ok(IntermediateMap {
        degree,
        deg_ram,
        genus_source: top.genus,
        genus_target: bottom.genus,
    })
}

/// Every lattice node of `cls`, in table order.
pub fn cover_table(
    sig: &GeometricSignature,
    cls: TransitiveClass,
) -> Result<Vec<IntermediateCovering>, CoverError> {
    let g = cls.group();
    cls.lattice()
        .nodes
        .iter()
        .map(|n| {
            let mut c = intermediate(sig, g, &n.subgroup)?;
            c.node = Some(n.label);
            Ok(c)
        })
        .collect()
}

/// Closed forms for one lattice node, affine in `g` and the type counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringForms {
    pub genus: AffineForm,
    pub deg_from_closure: AffineForm,
    pub deg_to_base: AffineForm,
}

impl CoveringForms {
    pub fn eval(&self, g: u32, n: &TypeCounts) -> Option<(i64, i64, i64)> {
        Some((
            self.genus.eval_int(g, n)?,
            self.deg_from_closure.eval_int(g, n)?,
            self.deg_to_base.eval_int(g, n)?,
        ))
    }
}

/// Rejects counts of branch types that do not occur in `cls`.
pub fn check_counts(cls: TransitiveClass, n: &TypeCounts) -> Result<(), CoverError> {
    match n.types().into_iter().find(|t| !cls.admits(*t)) {
        Some(t) => Err(CoverError::TypeNotInGroup {
            group: cls,
            ty: t.spelled(),
        }),
        None => Ok(()),
    }
}

fn branch_types(cls: TransitiveClass) -> Vec<(usize, El)> {
    CycleType::BRANCH
        .iter()
        .filter(|t| cls.admits(**t))
        .map(|t| {
            let c = cls.group().elements_of_type(*t)[0];
            (t.count_index().unwrap() + 1, el(&c))
        })
        .collect()
}

/// Forms computed from one representative monodromy per branch type. All
/// elements of a given type generate `G`-conjugate cyclic subgroups in each
/// of the five groups, so the contribution of a branch value depends only on
/// its type.
pub fn derived_forms(cls: TransitiveClass, label: &str) -> Result<CoveringForms, CoverError> {
    let g = cls.group();
    let h = &cls.lattice().node(label)?.subgroup;
    let index = (g.order() / h.order()) as i64;
    let mut to_base = AffineForm::zero();
    let mut from_closure = AffineForm::zero();
    for (i, c) in branch_types(cls) {
        let b = branch(g.mask(), h.mask(), c);
        to_base = to_base + AffineForm::count(i) * b.to_base as i64;
        from_closure = from_closure + AffineForm::count(i) * b.from_closure as i64;
    }
    let genus = AffineForm::new(1 - index, index, [0; 6]) + to_base.scale(Q::new(1, 2));
    Ok(CoveringForms {
        genus,
        deg_from_closure: from_closure,
        deg_to_base: to_base,
    })
}

/// Degree of the ramification divisor of `X^/H -> X^/N`, per type.
pub fn derived_between_form(
    cls: TransitiveClass,
    lower: &str,
    upper: &str,
) -> Result<AffineForm, CoverError> {
    let top = derived_forms(cls, lower)?;
    let bottom = derived_forms(cls, upper)?;
    let lat = cls.lattice();
    let (h, n) = (&lat.node(lower)?.subgroup, &lat.node(upper)?.subgroup);
    check_inclusion(h, n)?;
    let degree = (n.order() / h.order()) as i64;
    Ok(top.deg_to_base - bottom.deg_to_base * degree)
}

/// (node, genus, deg R from the closure, deg R to the base).
type Row = (&'static str, &'static str, &'static str, &'static str);

const C5_TABLE: &[Row] = &[
    ("Id", "5g + 2n1 - 4", "0", "4n1"),
    ("C5", "g", "4n1", "0"),
];

const D5_TABLE: &[Row] = &[
    ("Id", "10g + 4n1 + 5n2/2 - 9", "0", "8n1 + 5n2"),
    ("C2", "5g + 2n1 + n2 - 4", "n2", "4n1 + 2n2"),
    ("C5", "2g + n2/2 - 1", "8n1", "n2"),
    ("D5", "g", "8n1 + 5n2", "0"),
];

const AFF_TABLE: &[Row] = &[
    ("Id", "20g + 8n1 + 5n2 + 15n3/2 - 19", "0", "16n1 + 10n2 + 15n3"),
    ("C4", "5g + 2n1 + n2 + 3n3/2 - 4", "2n2 + 3n3", "4n1 + 2n2 + 3n3"),
    ("C5", "4g + n2 + 3n3/2 - 3", "16n1", "2n2 + 3n3"),
    ("D5", "2g + n3/2 - 1", "16n1 + 10n2 + 5n3", "n3"),
    ("AffF5", "g", "16n1 + 10n2 + 15n3", "0"),
];

const A5_TABLE: &[Row] = &[
    ("Id", "60g + 24n1 + 15n2 + 20n4 - 59", "0", "48n1 + 30n2 + 40n4"),
    ("C5", "12g + 4n1 + 3n2 + 4n4 - 11", "8n1", "8n1 + 6n2 + 8n4"),
    ("D5", "6g + 2n1 + n2 + 2n4 - 5", "8n1 + 10n2", "4n1 + 2n2 + 4n4"),
    ("A4", "5g + 2n1 + n2 + n4 - 4", "6n2 + 16n4", "4n1 + 2n2 + 2n4"),
    ("A5", "g", "48n1 + 30n2 + 40n4", "0"),
];

const S5_TABLE: &[Row] = &[
    (
        "Id",
        "120g + 48n1 + 30n2 + 45n3 + 40n4 + 50n5 + 30n6 - 119",
        "0",
        "96n1 + 60n2 + 90n3 + 80n4 + 100n5 + 60n6",
    ),
    (
        "S3",
        "20g + 8n1 + 5n2 + 15n3/2 + 6n4 + 15n5/2 + 7n6/2 - 19",
        "8n4 + 10n5 + 18n6",
        "16n1 + 10n2 + 15n3 + 12n4 + 15n5 + 7n6",
    ),
    (
        "D5",
        "12g + 4n1 + 2n2 + 4n3 + 4n4 + 5n5 + 3n6 - 11",
        "16n1 + 20n2 + 10n3",
        "8n1 + 4n2 + 8n3 + 8n4 + 10n5 + 6n6",
    ),
    (
        "A4",
        "10g + 4n1 + 2n2 + 7n3/2 + 2n4 + 7n5/2 + 5n6/2 - 9",
        "12n2 + 6n3 + 32n4 + 16n5",
        "8n1 + 4n2 + 7n3 + 4n4 + 7n5 + 5n6",
    ),
    (
        "D6",
        "10g + 4n1 + 2n2 + 7n3/2 + 3n4 + 7n5/2 + 3n6/2 - 9",
        "12n2 + 6n3 + 8n4 + 16n5 + 24n6",
        "8n1 + 4n2 + 7n3 + 6n4 + 7n5 + 3n6",
    ),
    (
        "AffF5",
        "6g + 2n1 + n2 + 3n3/2 + 2n4 + 5n5/2 + 3n6/2 - 5",
        "16n1 + 20n2 + 30n3",
        "4n1 + 2n2 + 3n3 + 4n4 + 5n5 + 3n6",
    ),
    (
        "S4",
        "5g + 2n1 + n2 + 3n3/2 + n4 + 3n5/2 + n6/2 - 4",
        "12n2 + 18n3 + 32n4 + 28n5 + 36n6",
        "4n1 + 2n2 + 3n3 + 2n4 + 3n5 + n6",
    ),
    (
        "A5",
        "2g + n3/2 + n5/2 + n6/2 - 1",
        "96n1 + 60n2 + 30n3 + 80n4 + 40n5",
        "n3 + n5 + n6",
    ),
    ("S5", "g", "96n1 + 60n2 + 90n3 + 80n4 + 100n5 + 60n6", "0"),
];

fn table(cls: TransitiveClass) -> &'static [Row] {
    match cls {
        TransitiveClass::C5 => C5_TABLE,
        TransitiveClass::D5 => D5_TABLE,
        TransitiveClass::AffF5 => AFF_TABLE,
        TransitiveClass::A5 => A5_TABLE,
        TransitiveClass::S5 => S5_TABLE,
    }
}

/// The published closed forms for the node `label` of `cls`.
pub fn table_form(cls: TransitiveClass, label: &str) -> Result<CoveringForms, CoverError> {
    let row = table(cls)
        .iter()
        .find(|r| r.0 == label)
        .ok_or_else(|| GroupError::UnknownSubgroup {
            group: cls,
            label: label.to_string(),
        })?;
    Ok(CoveringForms {
        genus: form(row.1),
        deg_from_closure: form(row.2),
        deg_to_base: form(row.3),
    })
}

/// Published ramification degrees of maps between intermediate quotients:
/// (group, lower node, upper node, form).
pub const BETWEEN_TABLE: &[(TransitiveClass, &str, &str, &str)] = &[
    (TransitiveClass::AffF5, "C5", "D5", "2n2 + n3"),
    (TransitiveClass::A5, "C5", "D5", "2n2"),
    (TransitiveClass::S5, "S3", "D6", "2n2 + n3 + n5 + n6"),
    (TransitiveClass::S5, "A4", "S4", "n3 + n5 + 3n6"),
    (TransitiveClass::S5, "D5", "A5", "8n1 + 4n2 + 2n3 + 8n4 + 4n5"),
];

pub fn between_table_form(cls: TransitiveClass, lower: &str, upper: &str) -> Option<AffineForm> {
    BETWEEN_TABLE
        .iter()
        .find(|r| r.0 == cls && r.1 == lower && r.2 == upper)
        .map(|r| form(r.3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genvec::construct_witness;
    use crate::grp::TransitiveClass::*;
    use crate::perm5::p;

    fn witness_sig(data: &str, cls: TransitiveClass) -> GeometricSignature {
        let d: RamData = data.parse().unwrap();
        let w = construct_witness(&d, cls).unwrap();
        geometric_signature(&w.vector, &d).unwrap()
    }

    #[test]
    fn signatures_and_closure_genus() {
        let sig = witness_sig("g=0; 4,1:4,1:2,2,1", AffF5);
        assert_eq!(sig.to_string(), "(0;4,4,2)");
        assert_eq!(closure_genus(&sig, 20), Ok(1));
        let sig = witness_sig("g=2;", C5);
        assert_eq!(sig.to_string(), "(2;)");
        assert_eq!(closure_genus(&sig, 5), Ok(6));
        assert_eq!(closure_genus_of(1, &[2], 60), Ok(16));
        assert_eq!(
            closure_genus_of(0, &[2, 2, 5], 60),
            Err(CoverError::InconsistentSignature(Q::from_integer(-5)))
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        let sig = GeometricSignature::new(0, &[p("(1 2)")]);
        assert!(matches!(
            intermediate(&sig, A5.group(), A5.group()),
            Err(CoverError::OutsideGroup(_))
        ));
        assert!(matches!(
            intermediate(&sig, D5.group(), S5.group()),
            Err(CoverError::NotASubgroup { .. })
        ));
        assert!(check_counts(A5, &TypeCounts([0, 0, 1, 0, 0, 0])).is_err());
        assert!(check_counts(A5, &TypeCounts([1, 1, 0, 1, 0, 0])).is_ok());
    }

    #[test]
    fn d5_quotients() {
        let sig = witness_sig("g=1; 2,2,1:2,2,1", D5);
        let rows = cover_table(&sig, D5).unwrap();
        let c5 = &rows[2];
        assert_eq!(c5.node, Some("C5"));
        assert_eq!((c5.genus, c5.deg_ram_from_closure, c5.deg_ram_to_base), (2, 0, 2));
        assert_eq!(c5.ram_profile_per_branch, vec![vec![2], vec![2]]);
        let top = rows.last().unwrap();
        assert_eq!((top.genus, top.deg_ram_to_base), (1, 0));
    }

    #[test]
    fn point_stabilizer_recovers_the_covering() {
        for (data, cls) in [
            ("g=0; 4,1:4,1:2,2,1", AffF5),
            ("g=1; 3,1,1", A5),
            ("g=0; 3,2:2,1,1,1:5", S5),
        ] {
            let d: RamData = data.parse().unwrap();
            let sig = witness_sig(data, cls);
            let c = intermediate(&sig, cls.group(), &cls.point_stabilizer().subgroup).unwrap();
            let want: Vec<Vec<u32>> = d
                .types
                .iter()
                .map(|t| t.parts().iter().map(|&x| x as u32).collect())
                .collect();
            assert_eq!(c.ram_profile_per_branch, want);
            assert_eq!(Some(c.genus), d.cover_genus());
        }
    }

    #[test]
    fn between_maps() {
        let sig = witness_sig("g=0; 4,1:4,1:2,2,1", AffF5);
        let lat = AffF5.lattice();
        let m = intermediate_between(
            &sig,
            AffF5.group(),
            &lat.node("C5").unwrap().subgroup,
            &lat.node("D5").unwrap().subgroup,
        )
        .unwrap();
        assert_eq!((m.degree, m.deg_ram), (2, 2 + 2));
        let g = AffF5.group();
        let same = intermediate_between(&sig, g, g, g).unwrap();
        assert_eq!((same.degree, same.deg_ram), (1, 0));
    }

    #[test]
    fn derived_forms_match_tables() {
        for cls in TransitiveClass::ALL {
            for node in &cls.lattice().nodes {
                assert_eq!(
                    derived_forms(cls, node.label).unwrap(),
                    table_form(cls, node.label).unwrap(),
                    "{cls} {}",
                    node.label
                );
            }
        }
        for &(cls, lo, hi, f) in BETWEEN_TABLE {
            assert_eq!(derived_between_form(cls, lo, hi).unwrap(), form(f), "{cls} {lo} {hi}");
        }
    }
}
