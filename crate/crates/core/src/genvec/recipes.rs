//! Explicit constructions of generating vectors, one list of candidate plans
//! per classification clause and group. Published data mixes composition
//! conventions, so fixed entries are tried as printed and in the mirrored
//! reading; every result is validated by the caller.

use crate::cayley::{el, tables};
use crate::grp::{Subgroup, TransitiveClass};
use crate::perm5::{p, CycleType, Perm5};
use crate::ram::RamData;

use super::engine::{Choice, Engine, Level, Problem};
use super::Reading;

use CycleType::*;
use TransitiveClass::*;

pub(super) struct Plan {
    pub name: &'static str,
    kind: Kind,
}

enum Kind {
    /// Fixed handle pairs and fixed branch entries; the remaining branch
    /// entries are found inside `pool`.
    Fill {
        ab: Vec<Perm5>,
        fixed: Vec<Perm5>,
        pool: &'static Subgroup,
    },
    /// Two [4,1] entries realized by affine maps of F5 against the least
    /// elements of the other types.
    Affine,
    /// Genus 0: two sub-tuples with products (1 2 3 4 5) and (1 5 4 3 2).
    Split,
}

fn fill(name: &'static str, ab: &[&str], fixed: &[&str], pool: &'static Subgroup) -> Plan {
    Plan {
        name,
        kind: Kind::Fill {
            ab: ab.iter().map(|s| p(s)).collect(),
            fixed: fixed.iter().map(|s| p(s)).collect(),
            pool,
        },
    }
}

const HANDLE_ROWS: [(&str, &str); 3] = [
    ("(1 3)(2 5 4)", "(1 3 5 2)"),
    ("(1 3)(2 4 5)", "(1 2 4 5)"),
    ("(1 5 2)(3 4)", "(1 3 5 4)"),
];

/// Handle pair with commutator of type [5] generating the group.
fn five_commutator_pair(cls: TransitiveClass) -> Option<[&'static str; 2]> {
    match cls {
        A5 => Some(["(1 2 5 3 4)", "(1 5 3 2 4)"]),
        AffF5 => Some(["(1 3 2 5)", "(3 2 4 5)"]),
        D5 => Some(["(1 3 5 2 4)", "(1 2)(3 5)"]),
        _ => None,
    }
}

fn generating_pair(cls: TransitiveClass) -> [&'static str; 2] {
    five_commutator_pair(cls).unwrap_or([HANDLE_ROWS[0].0, HANDLE_ROWS[0].1])
}

fn sub(cls: TransitiveClass) -> &'static Subgroup {
    cls.group()
}

fn cyclic() -> &'static Subgroup {
    &C5.lattice().node("C5").unwrap().subgroup
}

fn dihedral() -> &'static Subgroup {
    D5.group()
}

pub(super) fn plans(d: &RamData, target: TransitiveClass, rule: &'static str) -> Vec<Plan> {
    let g = d.base_genus;
    let n = d.n();
    let mut out = Vec::new();
    if g >= 1 {
        if target == S5 && n > 0 {
            for (a, b) in HANDLE_ROWS {
                out.push(fill("handle-table", &[a, b], &[], sub(S5)));
            }
        }
        match (rule, target) {
            ("GP.N0", C5) => out.push(fill("cyclic-handle", &["(1 2 3 4 5)", "Id"], &[], sub(C5))),
            ("GP.N0", _) => {
                let [a, b] = generating_pair(target);
                out.push(fill("cancelling-handles", &[a, b, b, a], &[], sub(target)));
            }
            ("GP.S5orGA", AffF5) => {
                out.push(Plan {
                    name: "affine-maps",
                    kind: Kind::Affine,
                });
                out.push(fill("affine-fill", &["(1 2 3 4 5)", "Id"], &[], sub(AffF5)));
            }
            ("GP.S5orA5", A5) => {
                out.push(fill("a5-three-cycle-handle", &["(1 5 2 3 4)", "(1 3 4 2 5)"], &[], sub(A5)))
            }
            ("GP.221b", A5) => {
                if g >= 2 && n == 1 {
                    out.push(fill(
                        "a5-two-handles",
                        &["(1 3 4 2 5)", "(1 5 2 3 4)", "(1 3 2 4 5)", "(1 5 4 3 2)"],
                        &["(1 2)(3 4)"],
                        sub(A5),
                    ));
                }
                out.push(fill("a5-handle", &["(1 4 3 2 5)", "(1 5 2 4 3)"], &[], sub(A5)));
            }
            ("GP.221c", D5 | AffF5 | A5) => {
                let [a, b] = five_commutator_pair(target).unwrap();
                out.push(fill("five-commutator", &[a, b], &[], dihedral()));
            }
            ("GP.only5a" | "GP.only5b", D5 | AffF5 | A5) => {
                let [a, b] = five_commutator_pair(target).unwrap();
                out.push(fill("five-commutator", &[a, b], &[], cyclic()));
            }
            ("GP.only5b", C5) => out.push(fill("cyclic-fill", &[], &["(1 5 4 3 2)"], cyclic())),
            _ => {}
        }
        return out;
    }
    match (rule, target) {
        ("G0.S5orGA.a" | "G0.S5orGA.b", AffF5) => {
            out.push(fill("affine-pair-involution", &[], &["(1 3 2 5)", "(1 4 5 2)"], sub(AffF5)));
            out.push(fill("affine-pair-five", &[], &["(2 4 5 3)", "(1 3 2 5)"], sub(AffF5)));
        }
        ("G0.S5orGA.b", S5) => {
            out.push(fill("symmetric-pair", &[], &["(1 2 5 4)", "(2 5 3 4)"], sub(S5)))
        }
        ("G0.221c", A5) => {
            if d.has(Five) {
                out.push(fill(
                    "a5-five-two-two",
                    &[],
                    &["(1 4 5 3 2)", "(1 2)(3 5)", "(1 5)(2 3)"],
                    sub(A5),
                ));
            } else {
                out.push(fill(
                    "a5-four-involutions",
                    &[],
                    &["(1 5)(2 3)", "(1 4)(2 5)", "(1 2)(3 5)", "(1 5)(2 3)"],
                    sub(A5),
                ));
            }
        }
        ("G0.221a" | "G0.221c", D5) => {
            out.push(fill("dihedral-pair", &[], &["(1 3)(4 5)", "(1 2)(3 5)"], dihedral()))
        }
        ("G0.only5", C5) => out.push(fill("cyclic-fill", &[], &["(1 2 3 4 5)"], cyclic())),
        ("G0.only5", A5) => {
            out.push(fill("a5-five-pair", &[], &["(1 3 2 5 4)", "(1 3 5 4 2)"], sub(A5)))
        }
        _ => {}
    }
    if matches!(
        rule,
        "G0.32or2111" | "G0.311and41" | "G0.S5orGA.a" | "G0.A5" | "G0.221a" | "G0.221b"
    ) {
        out.push(Plan {
            name: "split-five-cycles",
            kind: Kind::Split,
        });
        if let Some(plan) = degree_332(d) {
            out.push(plan);
        }
    }
    out
}

/// Three branch values of degrees 3, 3 and 2.
fn degree_332(d: &RamData) -> Option<Plan> {
    let mut degs: Vec<u32> = d.types.iter().map(|t| t.degree()).collect();
    degs.sort_unstable();
    if degs != [2, 3, 3] {
        return None;
    }
    let odd: Vec<CycleType> = d.types.iter().copied().filter(|t| t.degree() == 3).collect();
    let t3 = *d.types.iter().find(|t| t.degree() == 2)?;
    let (t1, t2) = if odd[1] == ThreeTwo { (odd[1], odd[0]) } else { (odd[0], odd[1]) };
    let c1 = if t1 == ThreeTwo { "(1 2 3)(4 5)" } else { "(1 2 3 4)" };
    let c2 = match (t3, c1, t2) {
        (TwoTwoOne, "(1 2 3)(4 5)", ThreeTwo) => "(1 4 2)(3 5)",
        (TwoTwoOne, "(1 2 3)(4 5)", FourOne) => "(2 3 4 5)",
        (TwoTwoOne, "(1 2 3 4)", FourOne) => "(2 4 5 3)",
        (ThreeOneOne, "(1 2 3)(4 5)", ThreeTwo) => "(1 4 5)(2 3)",
        (ThreeOneOne, "(1 2 3)(4 5)", FourOne) => "(2 5 4 3)",
        (ThreeOneOne, "(1 2 3 4)", FourOne) => "(2 5 4 3)",
        _ => return None,
    };
    Some(fill("degree-332", &[], &[c1, c2], sub(S5)))
}

impl Plan {
    pub fn reads(&self, r: Reading) -> bool {
        matches!(self.kind, Kind::Fill { .. }) || r == Reading::LeftToRight
    }

    pub fn realize(
        &self,
        d: &RamData,
        target: TransitiveClass,
        reading: Reading,
    ) -> Option<(Vec<Perm5>, Vec<Perm5>)> {
        match &self.kind {
            Kind::Fill { ab, fixed, pool } => realize_fill(d, target, reading, ab, fixed, pool),
            Kind::Affine => realize_affine(d),
            Kind::Split => realize_split(d),
        }
    }
}

fn comm_product(ab: &[Perm5]) -> Perm5 {
    ab.chunks(2)
        .map(|q| Perm5::commutator(&q[0], &q[1]))
        .fold(Perm5::identity(), |acc, c| acc * c)
}

/// Branch entries of the given types in `pool` whose product is `target`,
/// starting from the subgroup `start` and ending with `need` if given.
fn fill_product(
    types: &[CycleType],
    pool: &Subgroup,
    start: &[Perm5],
    target: Perm5,
    need: Option<&Subgroup>,
) -> Option<Vec<Perm5>> {
    let t = tables();
    let sub0 = start.iter().fold(t.trivial(), |s, x| t.join_el(s, el(x)));
    let problem = Problem {
        pool: pool.mask(),
        levels: types.iter().map(|ty| Level::Elem(*ty)).collect(),
        start: (el(&Perm5::identity()), sub0),
        target: el(&target),
        need: need.map(|h| t.id_of(h)),
    };
    let sol = Engine::new(&problem).first()?;
    Some(
        sol.into_iter()
            .map(|c| match c {
                Choice::Elem(e) => crate::cayley::perm(e),
                Choice::Pair(..) => unreachable!(),
            })
            .collect(),
    )
}

fn realize_fill(
    d: &RamData,
    target: TransitiveClass,
    reading: Reading,
    ab: &[Perm5],
    fixed: &[Perm5],
    pool: &Subgroup,
) -> Option<(Vec<Perm5>, Vec<Perm5>)> {
    if ab.len() > 2 * d.base_genus as usize {
        return None;
    }
    let mut used = vec![false; d.n()];
    for c in fixed {
        let i = (0..d.n()).find(|&i| !used[i] && d.types[i] == c.cycle_type())?;
        used[i] = true;
    }
    let free: Vec<CycleType> = (0..d.n()).filter(|&i| !used[i]).map(|i| d.types[i]).collect();
    let (ab, before, after): (Vec<Perm5>, Vec<Perm5>, Vec<Perm5>) = match reading {
        Reading::LeftToRight => (ab.to_vec(), fixed.to_vec(), vec![]),
        Reading::RightToLeft => {
            let mirrored = ab
                .chunks(2)
                .rev()
                .flat_map(|q| [q[1].inverse(), q[0].inverse()])
                .collect();
            (mirrored, vec![], fixed.iter().rev().copied().collect())
        }
    };
    let prefix = comm_product(&ab) * Perm5::product(&before);
    let want = prefix.inverse() * Perm5::product(&after).inverse();
    let start: Vec<Perm5> = ab.iter().chain(fixed).copied().collect();
    let mid = fill_product(&free, pool, &start, want, Some(target.group()))?;
    let cs = before.into_iter().chain(mid).chain(after).collect();
    Some((ab, cs))
}

/// Permutation of {1..5} induced by `x -> a x + b` on F5, point `k` standing
/// for `k - 1`.
fn affine(a: u8, b: u8) -> Perm5 {
    let mut images = [0u8; 5];
    for (k, slot) in images.iter_mut().enumerate() {
        *slot = ((a as usize * k + b as usize) % 5) as u8 + 1;
    }
    Perm5::from_images(images).expect("affine maps are bijective")
}

fn realize_affine(d: &RamData) -> Option<(Vec<Perm5>, Vec<Perm5>)> {
    if d.base_genus == 0 {
        return None;
    }
    let aff = AffF5.group();
    let quads: Vec<usize> = (0..d.n()).filter(|&i| d.types[i] == FourOne).take(2).collect();
    if quads.len() < 2 {
        return None;
    }
    let rest: Vec<Perm5> = (0..d.n())
        .filter(|i| !quads.contains(i))
        .map(|i| aff.elements_of_type(d.types[i]).first().copied())
        .collect::<Option<_>>()?;
    let need = Perm5::product(&rest).inverse();
    let (c1, c2) = match need.cycle_type() {
        Identity => (affine(2, 0), affine(3, 0)),
        TwoTwoOne => (affine(2, 0), affine(2, 0)),
        Five => (affine(2, 1), affine(3, 0)),
        _ => return None,
    };
    let sigma = aff
        .elements()
        .iter()
        .find(|s| (c1 * c2).conjugate(s) == need)?;
    let mut cs = vec![c1.conjugate(sigma), c2.conjugate(sigma)];
    cs.extend(rest);
    Some((vec![p("(1 2 3 4 5)"), Perm5::identity()], cs))
}

fn realize_split(d: &RamData) -> Option<(Vec<Perm5>, Vec<Perm5>)> {
    let n = d.n();
    let s5 = S5.group();
    let part = |mask: u32, inside: bool| -> Vec<CycleType> {
        (0..n)
            .filter(|i| (mask >> i & 1 == 1) == inside)
            .map(|i| d.types[i])
            .collect()
    };
    let even = |ts: &[CycleType]| ts.iter().filter(|t| t.is_odd()).count() % 2 == 0;
    let deg = |ts: &[CycleType]| ts.iter().map(|t| t.degree()).sum::<u32>();
    let mut masks: Vec<u32> = (1..(1u32 << n) - 1).collect();
    masks.sort_by_key(|m| (deg(&part(*m, true)) != 4, m.count_ones(), *m));
    for m in masks {
        let (a, b) = (part(m, true), part(m, false));
        if !(even(&a) && even(&b) && deg(&a) >= 4 && deg(&b) >= 4) {
            continue;
        }
        let Some(x) = fill_product(&a, s5, &[], p("(1 2 3 4 5)"), None) else {
            continue;
        };
        let Some(y) = fill_product(&b, s5, &[], p("(1 5 4 3 2)"), None) else {
            continue;
        };
        return Some((vec![], x.into_iter().chain(y).collect()));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_maps() {
        assert_eq!(affine(1, 1), p("(1 2 3 4 5)"));
        assert_eq!(affine(2, 0), p("(2 3 5 4)"));
        assert_eq!(affine(2, 0) * affine(3, 0), Perm5::identity());
        assert_eq!(affine(2, 0) * affine(2, 0), affine(4, 0));
        assert_eq!(affine(2, 1) * affine(3, 0), affine(1, 3));
        for a in 1..5 {
            for b in 0..5 {
                assert!(AffF5.group().contains(&affine(a, b)));
            }
        }
    }

    #[test]
    fn handle_rows_have_printed_commutators() {
        let want = ["(1 5 4 3 2)", "(1 2)(3 4)", "(1 3 2)"];
        for ((a, b), c) in HANDLE_ROWS.iter().zip(want) {
            assert_eq!(Perm5::commutator(&p(a), &p(b)), p(c));
        }
    }

    #[test]
    fn five_commutator_pairs_generate() {
        for cls in [D5, AffF5, A5] {
            let [a, b] = five_commutator_pair(cls).unwrap();
            assert_eq!(Subgroup::closure(&[p(a), p(b)]), *cls.group(), "{cls}");
        }
    }
}
