//! Group algebra decomposition of the Jacobian of the Galois closure:
//! which Prym variety carries each rational irreducible, its dimension as
//! an affine form, and its polarization type where one is known.

use std::fmt;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::affine::{form, AffineForm};
use crate::chars::{self, CharError, Decomposition};
use crate::classify::classify;
use crate::cover::{self, CoverError};
use crate::grp::{Subgroup, TransitiveClass};
use crate::ram::{RamData, TypeCounts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("{group} is not a monodromy group for {data}")]
    GroupNotPossible { data: String, group: TransitiveClass },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Chars(#[from] CharError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    BaseJacobian,
    /// `Prym(X^/H -> X^/N)`.
    PrymOfIntermediate { sub: &'static str, over: &'static str },
    /// `Prym(X^/M -> X^/N1, X^/M -> X^/N2)` with `M = N1 ∩ N2`.
    PrymOfPair {
        meet: &'static str,
        first: &'static str,
        second: &'static str,
    },
    PrymNotIdentified,
}

impl FactorKind {
    pub fn name(&self) -> &'static str {
        match self {
            FactorKind::BaseJacobian => "BaseJacobian",
            FactorKind::PrymOfIntermediate { .. } => "PrymOfIntermediate",
            FactorKind::PrymOfPair { .. } => "PrymOfPair",
            FactorKind::PrymNotIdentified => "PrymNotIdentified",
        }
    }

    pub fn subgroups(&self) -> Vec<&'static str> {
        match self {
            FactorKind::PrymOfIntermediate { sub, over } => vec![sub, over],
            FactorKind::PrymOfPair {
                meet,
                first,
                second,
            } => vec![meet, first, second],
            _ => vec![],
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::BaseJacobian => f.write_str("J(Y)"),
            FactorKind::PrymOfIntermediate { sub, over } => write!(f, "Prym(X^/{sub} -> X^/{over})"),
            FactorKind::PrymOfPair {
                meet,
                first,
                second,
            } => write!(f, "Prym(X^/{meet} -> X^/{first}, X^/{meet} -> X^/{second})"),
            FactorKind::PrymNotIdentified => f.write_str("unidentified"),
        }
    }
}

impl Serialize for FactorKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// An affine form and, when the genus is known, its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormValue {
    pub form: AffineForm,
    pub value: Option<i64>,
}

impl FormValue {
    fn new(form: AffineForm, g: Option<u32>, n: &TypeCounts) -> FormValue {
        FormValue {
            form,
            value: g.and_then(|g| form.eval_int(g, n)),
        }
    }
}

impl fmt::Display for FormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v} [{}]", self.form),
            None => write!(f, "{}", self.form),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarizationEntry {
    pub divisor: u32,
    pub count_form: AffineForm,
    pub count_value: Option<i64>,
}

/// Elementary divisors with multiplicities, divisors ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarizationType {
    Type(Vec<PolarizationEntry>),
    NotDetermined,
}

impl PolarizationType {
    /// Total multiplicity, the dimension the type describes.
    pub fn length(&self) -> Option<AffineForm> {
        match self {
            PolarizationType::Type(es) => Some(es.iter().map(|e| e.count_form).sum()),
            PolarizationType::NotDetermined => None,
        }
    }
}

impl Serialize for PolarizationType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PolarizationType::NotDetermined => s.serialize_str("not_determined"),
            PolarizationType::Type(es) => {
                let mut seq = s.serialize_seq(Some(es.len()))?;
                for e in es {
                    seq.serialize_element(e)?;
                }
                seq.end()
            }
        }
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolarizationType::NotDetermined => f.write_str("not determined"),
            PolarizationType::Type(es) => {
                let parts: Vec<String> = es
                    .iter()
                    .map(|e| match e.count_value {
                        Some(v) => format!("{}x{v}", e.divisor),
                        None => format!("{}x({})", e.divisor, e.count_form),
                    })
                    .collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionFactor {
    pub irrep: &'static str,
    pub multiplicity: u32,
    pub kind: FactorKind,
    pub subgroups: Vec<&'static str>,
    pub dimension: FormValue,
    pub polarization: PolarizationType,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub group: TransitiveClass,
    pub signature: String,
    pub closure_genus: FormValue,
    pub factors: Vec<DecompositionFactor>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub base_genus: Option<u32>,
    #[serde(skip)]
    pub counts: TypeCounts,
}

impl DecompositionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn factor(&self, irrep: &str) -> Option<&DecompositionFactor> {
        self.factors.iter().find(|f| f.irrep == irrep)
    }
}

/// Which of the published case distinctions applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum When {
    Always,
    /// Every listed count `n_i` is zero.
    AllZero(&'static [usize]),
}

impl When {
    pub fn holds(&self, n: &TypeCounts) -> bool {
        match self {
            When::Always => true,
            When::AllZero(is) => is.iter().all(|i| n.n(*i) == 0),
        }
    }
}

type Entries = &'static [(u32, &'static str)];

/// One factor as stated for a given group.
#[derive(Debug, Clone, Copy)]
pub struct StatedFactor {
    pub irrep: &'static str,
    pub dimension: &'static str,
    /// `(condition, type)` pairs tried in order; the last one is the fallback.
    pub polarization: &'static [(When, Entries)],
    /// Order of the kernel of the pullback when the condition holds, 1 otherwise.
    pub kernel: Option<(u32, When)>,
    pub note: Option<&'static str>,
}

const BASE: StatedFactor = StatedFactor {
    irrep: "U",
    dimension: "g",
    polarization: &[],
    kernel: None,
    note: None,
};

const fn stated(irrep: &'static str, dimension: &'static str) -> StatedFactor {
    StatedFactor {
        irrep,
        dimension,
        polarization: &[],
        kernel: None,
        note: None,
    }
}

const ETALE_1: When = When::AllZero(&[1]);
const ETALE_2: When = When::AllZero(&[2]);
const ETALE_3: When = When::AllZero(&[3]);
const ETALE_23: When = When::AllZero(&[2, 3]);
const ETALE_356: When = When::AllZero(&[3, 5, 6]);

const C5_FACTORS: &[StatedFactor] = &[
    StatedFactor {
        polarization: &[(When::Always, &[(5, "g")])],
        note: Some("J(Y) part of the combined type of J(Y) x Prym(f)"),
        ..BASE
    },
    StatedFactor {
        polarization: &[
            (ETALE_1, &[(1, "3g - 3"), (5, "g - 1")]),
            (When::Always, &[(1, "3g - 4 + 2n1"), (5, "g")]),
        ],
        kernel: Some((5, ETALE_1)),
        ..stated("V", "4g - 4 + 2n1")
    },
];

const D5_FACTORS: &[StatedFactor] = &[
    BASE,
    StatedFactor {
        polarization: &[
            (ETALE_2, &[(2, "g - 1")]),
            (When::Always, &[(1, "n2/2 - 1"), (2, "g")]),
        ],
        kernel: Some((2, ETALE_2)),
        ..stated("W", "g + n2/2 - 1")
    },
    StatedFactor {
        polarization: &[(When::Always, &[(1, "3g + 2n1 + n2 - 4"), (5, "g")])],
        ..stated("V", "4g + 2n1 + n2 - 4")
    },
];

const AFF_FACTORS: &[StatedFactor] = &[
    BASE,
    StatedFactor {
        polarization: &[
            (ETALE_3, &[(2, "g - 1")]),
            (When::Always, &[(1, "n3/2 - 1"), (2, "g")]),
        ],
        kernel: Some((2, ETALE_3)),
        ..stated("U~", "g + n3/2 - 1")
    },
    StatedFactor {
        polarization: &[
            (ETALE_23, &[(2, "2g - 2")]),
            (When::Always, &[(1, "n2 + n3/2 - 1"), (2, "2g + n3/2 - 1")]),
        ],
        kernel: Some((2, ETALE_23)),
        note: Some("repaired: multiplicity of 2 read as 2g + n3/2 - 1"),
        ..stated("W+W*", "2g + n2 + n3 - 2")
    },
    StatedFactor {
        polarization: &[(When::Always, &[(1, "3g + 2n1 + n2 + 3n3/2 - 4"), (5, "g")])],
        ..stated("V", "4g + 2n1 + n2 + 3n3/2 - 4")
    },
];

const A5_FACTORS: &[StatedFactor] = &[
    BASE,
    StatedFactor {
        polarization: &[(When::Always, &[(1, "3g + 2n1 + n2 + n4 - 4"), (5, "g")])],
        ..stated("V", "4g + 2n1 + n2 + n4 - 4")
    },
    StatedFactor {
        polarization: &[(When::Always, &[(1, "4g + 2n1 + n2 + 2n4 - 5"), (6, "g")])],
        ..stated("W", "5g + 2n1 + n2 + 2n4 - 5")
    },
    StatedFactor {
        polarization: &[
            (ETALE_2, &[(2, "6g + 2n1 + 2n4 - 6")]),
            (When::Always, &[(1, "n2 - 1"), (2, "6g + 2n1 + n2 + 2n4 - 5")]),
        ],
        kernel: Some((2, ETALE_2)),
        note: Some("repaired: unramified case read as n2 = 0"),
        ..stated("Alt2V", "6g + 2n1 + 2n2 + 2n4 - 6")
    },
];

const S5_FACTORS: &[StatedFactor] = &[
    BASE,
    StatedFactor {
        polarization: &[
            (ETALE_356, &[(2, "g - 1")]),
            (When::Always, &[(1, "n3/2 + n5/2 + n6/2 - 1"), (2, "g")]),
        ],
        kernel: Some((2, ETALE_356)),
        ..stated("U~", "g + n3/2 + n5/2 + n6/2 - 1")
    },
    StatedFactor {
        polarization: &[(
            When::Always,
            &[(1, "3g + 2n1 + n2 + 3n3/2 + n4 + 3n5/2 + n6/2 - 4"), (5, "g")],
        )],
        ..stated("V", "4g + 2n1 + n2 + 3n3/2 + n4 + 3n5/2 + n6/2 - 4")
    },
    stated("V~", "4g + 2n1 + n2 + 3n3/2 + n4 + 3n5/2 + 3n6/2 - 4"),
    StatedFactor {
        note: Some("repaired: n4 coefficient read as 2"),
        ..stated("Alt2V", "6g + 2n1 + 2n2 + 5n3/2 + 2n4 + 5n5/2 + 3n6/2 - 6")
    },
    stated("W", "5g + 2n1 + n2 + 2n3 + 2n4 + 2n5 + n6 - 5"),
    StatedFactor {
        polarization: &[(
            When::Always,
            &[(1, "4g + 2n1 + n2 + 3n3/2 + 2n4 + 5n5/2 + 3n6/2 - 5"), (6, "g")],
        )],
        note: Some("repaired: 5/2 coefficient read on n5"),
        ..stated("W~", "5g + 2n1 + n2 + 3n3/2 + 2n4 + 5n5/2 + 3n6/2 - 5")
    },
];

/// The factors, dimensions and polarization types stated for `cls`.
pub fn stated_factors(cls: TransitiveClass) -> &'static [StatedFactor] {
    match cls {
        TransitiveClass::C5 => C5_FACTORS,
        TransitiveClass::D5 => D5_FACTORS,
        TransitiveClass::AffF5 => AFF_FACTORS,
        TransitiveClass::A5 => A5_FACTORS,
        TransitiveClass::S5 => S5_FACTORS,
    }
}

fn stated_factor(cls: TransitiveClass, irrep: &str) -> Option<&'static StatedFactor> {
    stated_factors(cls).iter().find(|f| f.irrep == irrep)
}

fn node(cls: TransitiveClass, label: &str) -> &'static Subgroup {
    &cls.lattice().node(label).expect("lattice label").subgroup
}

fn genus_form(cls: TransitiveClass, label: &str) -> Result<AffineForm, DecompError> {
    Ok(cover::derived_forms(cls, label)?.genus)
}

/// The Prym variety carrying the rational irreducible `irrep`: an
/// intermediate map `H < N` with `rho_H = irrep + rho_N`, else a pair
/// `N1, N2` whose character combination is exactly `irrep`.
pub fn identify(cls: TransitiveClass, irrep: &str) -> Result<FactorKind, DecompError> {
    let t = chars::table(cls);
    let i = t.index_of(irrep)?;
    if i == 0 {
        return Ok(FactorKind::BaseJacobian);
    }
    let single = |d: &Decomposition| {
        d.coefficients
            .iter()
            .enumerate()
            .all(|(j, c)| *c == (j == i) as i64)
    };
    let mut nodes: Vec<_> = cls.lattice().nodes.iter().collect();
    nodes.sort_by_key(|n| std::cmp::Reverse(n.subgroup.order()));
    for n in &nodes {
        for h in &nodes {
            if h.subgroup == n.subgroup || !h.subgroup.is_subgroup_of(&n.subgroup) {
                continue;
            }
            let diff = chars::rho(cls, h.label)?.minus(&chars::rho(cls, n.label)?);
            if single(&diff) {
                return Ok(FactorKind::PrymOfIntermediate {
                    sub: h.label,
                    over: n.label,
                });
            }
        }
    }
    let lat = cls.lattice();
    for (a, n1) in lat.nodes.iter().enumerate() {
        for n2 in &lat.nodes[a + 1..] {
            let m = n1.subgroup.intersection(&n2.subgroup);
            let (Some(meet), Some(_)) = (lat.find(&m), lat.find(&n1.subgroup.join(&n2.subgroup)))
            else {
                continue;
            };
            if meet.label == n1.label || meet.label == n2.label {
                continue;
            }
            match chars::pair_prym_coefficients(cls, n1.label, n2.label) {
                Ok(d) if single(&d) => {
                    return Ok(FactorKind::PrymOfPair {
                        meet: meet.label,
                        first: n1.label,
                        second: n2.label,
                    })
                }
                _ => {}
            }
        }
    }
    Ok(FactorKind::PrymNotIdentified)
}

/// Dimension from genera of quotients: `g(H) - g(N)` for an intermediate
/// map, `g(M) - g(N1) - g(N2) + g(<N1,N2>)` for a pair.
pub fn dimension_form(cls: TransitiveClass, kind: &FactorKind) -> Result<AffineForm, DecompError> {
    Ok(match kind {
        FactorKind::BaseJacobian => AffineForm::genus(),
        FactorKind::PrymOfIntermediate { sub, over } => {
            genus_form(cls, sub)? - genus_form(cls, over)?
        }
        FactorKind::PrymOfPair {
            meet,
            first,
            second,
        } => {
            let top = node(cls, first).join(node(cls, second));
            let top = cls.lattice().find(&top).expect("join in lattice").label;
            genus_form(cls, meet)? - genus_form(cls, first)? - genus_form(cls, second)?
                + genus_form(cls, top)?
        }
        FactorKind::PrymNotIdentified => AffineForm::zero(),
    })
}

fn index(cls: TransitiveClass, sub: &str, over: &str) -> i64 {
    (node(cls, over).order() / node(cls, sub).order()) as i64
}

fn ram_form(cls: TransitiveClass, sub: &str, over: &str) -> Result<AffineForm, DecompError> {
    Ok(cover::derived_between_form(cls, sub, over)?)
}

/// The dimension formula for the Prym variety of a pair `(f1, f2)` with
/// `f_i : X^/M -> X^/N_i` and `g_i : X^/N_i -> X^/N`, applied literally:
/// `(d1-1)(d2-1)(g_N - 1) + (deg R_f1 + (d1-1) deg R_g1 - deg R_g2) / 2`.
pub fn pair_formula(
    cls: TransitiveClass,
    meet: &str,
    first: &str,
    second: &str,
) -> Result<AffineForm, DecompError> {
    let top = node(cls, first).join(node(cls, second));
    let top = cls.lattice().find(&top).expect("join in lattice").label;
    let d1 = index(cls, meet, first);
    let d2 = index(cls, meet, second);
    let base = genus_form(cls, top)? - AffineForm::constant(1);
    let ram = ram_form(cls, meet, first)? + ram_form(cls, first, top)? * (d1 - 1)
        - ram_form(cls, second, top)?;
    Ok(base * ((d1 - 1) * (d2 - 1)) + ram.scale(crate::affine::Q::new(1, 2)))
}

/// Whether `X^/M` is the fiber product of `X^/N1` and `X^/N2` over
/// `X^/<N1,N2>` by degrees, the setting of [`pair_formula`].
pub fn is_fiber_product(cls: TransitiveClass, meet: &str, first: &str, second: &str) -> bool {
    let top = node(cls, first).join(node(cls, second));
    let top = cls.lattice().find(&top).expect("join in lattice").label;
    index(cls, meet, first) == index(cls, second, top)
        && index(cls, meet, second) == index(cls, first, top)
}

fn is_cyclic_quotient(n: &Subgroup, k: &Subgroup) -> bool {
    let idx = n.order() / k.order();
    n.elements().iter().any(|x| {
        let mut y = *x;
        let mut i = 1;
        while !k.contains(&y) {
            y = y * *x;
            i += 1;
        }
        i == idx
    })
}

/// Order of the kernel of the pullback `J(X^/N) -> J(X^/H)`: the largest
/// degree of a cyclic unramified Galois map `X^/K -> X^/N` with
/// `H <= K < N` through which the map factors.
pub fn kernel_order(
    cls: TransitiveClass,
    sub: &str,
    over: &str,
    g: u32,
    n: &TypeCounts,
) -> Result<u32, DecompError> {
    let (h, top) = (node(cls, sub), node(cls, over));
    let mut best = 1;
    for k in &cls.lattice().nodes {
        let ks = &k.subgroup;
        if !h.is_subgroup_of(ks) || !ks.is_subgroup_of(top) || ks == top {
            continue;
        }
        if !ks.is_normal_in(top) || !is_cyclic_quotient(top, ks) {
            continue;
        }
        let unramified = ram_form(cls, k.label, over)?.eval_int(g, n) == Some(0);
        if unramified {
            best = best.max((top.order() / ks.order()) as u32);
        }
    }
    Ok(best)
}

fn polarization(
    stated: Option<&StatedFactor>,
    g: Option<u32>,
    n: &TypeCounts,
) -> PolarizationType {
    let Some(s) = stated else {
        return PolarizationType::NotDetermined;
    };
    let Some((_, entries)) = s.polarization.iter().find(|(w, _)| w.holds(n)) else {
        return PolarizationType::NotDetermined;
    };
    PolarizationType::Type(
        entries
            .iter()
            .map(|(d, f)| {
                let count_form = form(f);
                PolarizationEntry {
                    divisor: *d,
                    count_value: g.and_then(|g| count_form.eval_int(g, n)),
                    count_form,
                }
            })
            .collect(),
    )
}

/// The stated polarization type of the factor for `irrep`, with the case
/// selected by the counts.
pub fn polarization_of(
    cls: TransitiveClass,
    irrep: &str,
    g: Option<u32>,
    n: &TypeCounts,
) -> PolarizationType {
    polarization(stated_factor(cls, irrep), g, n)
}

fn signature_text(cls: TransitiveClass, g: Option<u32>, n: &TypeCounts) -> String {
    match g {
        Some(g) => {
            let d = RamData::new(g, n.types());
            d.closure_signature(cls).to_string()
        }
        None => {
            let mut by_period: Vec<(u32, Vec<String>)> = Vec::new();
            for (i, t) in crate::perm5::CycleType::BRANCH.iter().enumerate() {
                if !cls.admits(*t) {
                    continue;
                }
                let m = t.order();
                let name = format!("n{}", i + 1);
                match by_period.iter_mut().find(|(p, _)| *p == m) {
                    Some((_, v)) => v.push(name),
                    None => by_period.push((m, vec![name])),
                }
            }
            by_period.sort();
            let parts: Vec<String> = by_period
                .into_iter()
                .map(|(m, v)| {
                    if v.len() == 1 {
                        format!("{m}x{}", v[0])
                    } else {
                        format!("{m}x({})", v.join("+"))
                    }
                })
                .collect();
            format!("(g; {})", parts.join(", "))
        }
    }
}

/// Builds the report for `cls` at the counts `n`; `g = None` keeps the base
/// genus symbolic.
pub fn report(
    cls: TransitiveClass,
    g: Option<u32>,
    n: &TypeCounts,
) -> Result<DecompositionReport, DecompError> {
    cover::check_counts(cls, n)?;
    let t = chars::table(cls);
    let closure = genus_form(cls, "Id")?;
    let mut factors = Vec::new();
    let mut checks = Vec::new();
    for row in &t.rows {
        let kind = identify(cls, row.label)?;
        let dim = dimension_form(cls, &kind)?;
        let stated = stated_factor(cls, row.label);
        let pol = polarization(stated, g, n);
        if let Some(s) = stated {
            checks.push(Check {
                name: format!("{}: dimension equals stated form", row.label),
                pass: form(s.dimension) == dim,
            });
        }
        if let Some(len) = pol.length() {
            let pass = match g {
                Some(g) => len.eval(g, n) == dim.eval(g, n),
                None => len.at_counts(n) == dim.at_counts(n),
            };
            checks.push(Check {
                name: format!("{}: polarization length equals dimension", row.label),
                pass,
            });
        }
        if let (FactorKind::PrymOfIntermediate { sub, over }, Some(g)) = (&kind, g) {
            let stated_kernel = stated
                .and_then(|s| s.kernel)
                .map_or(1, |(k, w)| if w.holds(n) { k } else { 1 });
            checks.push(Check {
                name: format!("{}: kernel order of the pullback", row.label),
                pass: kernel_order(cls, sub, over, g, n)? == stated_kernel,
            });
        }
        if let FactorKind::PrymOfPair {
            meet,
            first,
            second,
        } = &kind
        {
            if is_fiber_product(cls, meet, first, second) {
                checks.push(Check {
                    name: format!("{}: pair dimension formula", row.label),
                    pass: pair_formula(cls, meet, first, second)? == dim,
                });
            }
        }
        factors.push(DecompositionFactor {
            irrep: row.label,
            multiplicity: row.l(),
            subgroups: kind.subgroups(),
            kind,
            dimension: FormValue::new(dim, g, n),
            polarization: pol,
            note: stated.and_then(|s| s.note),
        });
    }
    let total: AffineForm = factors
        .iter()
        .map(|f| f.dimension.form * f.multiplicity as i64)
        .sum();
    checks.push(Check {
        name: "genus checksum".into(),
        pass: total == closure,
    });
    if let Some(g) = g {
        let d = RamData::new(g, n.types());
        let sig = d.closure_signature(cls);
        let direct = cover::closure_genus_of(sig.genus, &sig.periods, cls.order()).ok();
        checks.push(Check {
            name: "closure genus by Riemann-Hurwitz".into(),
            pass: direct.map(|x| x as i64) == closure.eval_int(g, n),
        });
        checks.push(Check {
            name: "dimensions are non-negative integers".into(),
            pass: factors
                .iter()
                .all(|f| f.dimension.value.is_some_and(|v| v >= 0)),
        });
    }
    Ok(DecompositionReport {
        group: cls,
        signature: signature_text(cls, g, n),
        closure_genus: FormValue::new(closure, g, n),
        factors,
        checks,
        base_genus: g,
        counts: *n,
    })
}

/// The decomposition for ramification data `d` with monodromy group `cls`.
pub fn decompose_jacobian(
    d: &RamData,
    cls: TransitiveClass,
) -> Result<DecompositionReport, DecompError> {
    if !classify(d).allows(cls) {
        return Err(DecompError::GroupNotPossible {
            data: d.to_string(),
            group: cls,
        });
    }
    report(cls, Some(d.base_genus), &d.counts())
}

pub fn consistency_check(r: &DecompositionReport) -> &[Check] {
    &r.checks
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.group)?;
        writeln!(f, "signature: {}", self.signature)?;
        writeln!(f, "closure genus: {}", self.closure_genus)?;
        writeln!(f, "factors:")?;
        for x in &self.factors {
            write!(
                f,
                "  {:<6} l={}  {}  dim {}  polarization {}",
                x.irrep, x.multiplicity, x.kind, x.dimension, x.polarization
            )?;
            if let Some(n) = x.note {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "checks:")?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.name)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::TransitiveClass::*;

    fn d(s: &str) -> RamData {
        s.parse().unwrap()
    }

    #[test]
    fn cyclic_genus_two() {
        let r = decompose_jacobian(&d("g=2;"), C5).unwrap();
        let dims: Vec<i64> = r.factors.iter().map(|f| f.dimension.value.unwrap()).collect();
        assert_eq!(dims, vec![2, 4]);
        assert_eq!(r.factors[1].polarization.to_string(), "(1x3, 5x1)");
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn dihedral_rational_closure() {
        let r = decompose_jacobian(&d("g=0; 2,2,1:2,2,1:2,2,1:2,2,1"), D5).unwrap();
        let dims: Vec<i64> = r.factors.iter().map(|f| f.dimension.value.unwrap()).collect();
        assert_eq!(dims, vec![0, 1, 0]);
        assert_eq!(r.closure_genus.value, Some(1));
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn kinds_are_derived() {
        let k = |c, i| identify(c, i).unwrap().to_string();
        assert_eq!(k(D5, "W"), "Prym(X^/C5 -> X^/D5)");
        assert_eq!(k(D5, "V"), "Prym(X^/C2 -> X^/D5)");
        assert_eq!(k(AffF5, "W+W*"), "Prym(X^/C5 -> X^/D5)");
        assert_eq!(k(A5, "Alt2V"), "Prym(X^/C5 -> X^/D5)");
        assert_eq!(k(S5, "W~"), "Prym(X^/AffF5 -> X^/S5)");
        assert_eq!(k(S5, "V~"), "Prym(X^/A4 -> X^/S4, X^/A4 -> X^/A5)");
        assert_eq!(k(S5, "Alt2V"), "Prym(X^/S3 -> X^/D6, X^/S3 -> X^/S4)");
        assert_eq!(k(S5, "W"), "Prym(X^/D5 -> X^/AffF5, X^/D5 -> X^/A5)");
    }

    #[test]
    fn a5_all_factors_vanish() {
        let r = decompose_jacobian(&d("g=0; 5:2,2,1:3,1,1"), A5).unwrap();
        assert_eq!(r.closure_genus.value, Some(0));
        assert!(r.factors.iter().all(|f| f.dimension.value == Some(0)));
    }

    #[test]
    fn rejects_impossible_group() {
        assert!(matches!(
            decompose_jacobian(&d("g=0; 4,1:4,1:2,2,1"), S5),
            Err(DecompError::GroupNotPossible { .. })
        ));
    }

    #[test]
    fn symbolic_report() {
        let r = report(S5, None, &TypeCounts([0, 0, 2, 0, 0, 0])).unwrap();
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.closure_genus.value, None);
        assert_eq!(
            r.factor("U~").unwrap().dimension.form,
            form("g + n3/2 + n5/2 + n6/2 - 1")
        );
    }
}
