//! Subgroups of S5 as explicit element sets, the five transitive classes and
//! the fixed subgroup lattices used by the covering and decomposition code.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::perm5::{p, CycleType, Perm5};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("subgroup of order {0} is not transitive")]
    NotTransitive(usize),
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
    #[error("no subgroup labelled {label} in the lattice of {group}")]
    UnknownSubgroup { group: TransitiveClass, label: String },
}

/// A subgroup of S5; `mask` has bit `i` set when `Perm5::from_index(i)` belongs to it.
#[derive(Clone)]
pub struct Subgroup {
    mask: u128,
    elements: Vec<Perm5>,
    generators: Vec<Perm5>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask
    }
}
impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mask.hash(state)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> of order {}", self.order())
    }
}

fn bit(x: &Perm5) -> u128 {
    1u128 << x.index()
}

fn mask_closure(mut mask: u128, gens: &[Perm5]) -> u128 {
    mask |= bit(&Perm5::identity());
    let mut frontier: Vec<Perm5> = elements_of(mask);
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x * *g;
            if mask & bit(&y) == 0 {
                mask |= bit(&y);
                frontier.push(y);
            }
        }
    }
    mask
}

fn elements_of(mask: u128) -> Vec<Perm5> {
    (0..120)
        .filter(|i| mask >> i & 1 == 1)
        .map(Perm5::from_index)
        .collect()
}

impl Subgroup {
    /// Smallest subgroup containing `gens`; an empty list gives the trivial group.
    pub fn closure(gens: &[Perm5]) -> Subgroup {
        let mask = mask_closure(0, gens);
        Subgroup {
            mask,
            elements: elements_of(mask),
            generators: gens.to_vec(),
        }
    }

    fn from_mask(mask: u128) -> Subgroup {
        let elements = elements_of(mask);
        let generators = minimal_generators(&elements);
        Subgroup {
            mask,
            elements,
            generators,
        }
    }

    pub fn trivial() -> Subgroup {
        Subgroup::closure(&[])
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[Perm5] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm5] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &Perm5) -> bool {
        self.mask & bit(x) != 0
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.mask & other.mask)
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Subgroup::from_mask(mask_closure(self.mask | other.mask, &gens))
    }

    /// `x⁻¹ H x` for every element, compared as sets.
    pub fn is_normal_in(&self, g: &Subgroup) -> bool {
        g.elements
            .iter()
            .all(|x| self.elements.iter().all(|h| self.contains(&h.conjugate(x))))
    }

    pub fn conjugate(&self, by: &Perm5) -> Subgroup {
        let gens: Vec<Perm5> = self.generators.iter().map(|h| h.conjugate(by)).collect();
        Subgroup::closure(&gens)
    }

    pub fn is_transitive(&self) -> bool {
        let mut orbit = vec![1u8];
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.generators {
                let y = g.apply(orbit[i]);
                if !orbit.contains(&y) {
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.len() == 5
    }

    pub fn identify_transitive(&self) -> Result<TransitiveClass, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive(self.order()));
        }
        TransitiveClass::ALL
            .into_iter()
            .find(|c| c.order() == self.order())
            .ok_or(GroupError::NotTransitive(self.order()))
    }

    /// Cycle types of the non-identity elements.
    pub fn element_types(&self) -> Vec<CycleType> {
        let mut v: Vec<CycleType> = self
            .elements
            .iter()
            .map(|x| x.cycle_type())
            .filter(|t| *t != CycleType::Identity)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Elements of the given cycle type, in lexicographic order.
    pub fn elements_of_type(&self, t: CycleType) -> Vec<Perm5> {
        self.elements
            .iter()
            .copied()
            .filter(|x| x.cycle_type() == t)
            .collect()
    }
}

fn minimal_generators(elements: &[Perm5]) -> Vec<Perm5> {
    let target: u128 = elements.iter().map(bit).fold(0, |a, b| a | b);
    let mut gens = Vec::new();
    let mut mask = bit(&Perm5::identity());
    // Greedy, highest order first.
    let mut sorted = elements.to_vec();
    sorted.sort_by_key(|x| (std::cmp::Reverse(x.order()), *x));
    for x in sorted {
        if mask == target {
            break;
        }
        if mask & bit(&x) == 0 {
            gens.push(x);
            mask = mask_closure(mask, &gens);
        }
    }
    gens
}

/// All subgroups of S5, ordered by order and then by mask.
pub fn all_subgroups() -> &'static [Subgroup] {
    static ALL: OnceLock<Vec<Subgroup>> = OnceLock::new();
    ALL.get_or_init(|| {
        let all: Vec<Perm5> = Perm5::all().collect();
        let mut seen: HashSet<u128> = HashSet::new();
        let mut queue = vec![mask_closure(0, &[])];
        seen.insert(queue[0]);
        while let Some(m) = queue.pop() {
            for x in &all {
                if m & bit(x) != 0 {
                    continue;
                }
                let mut gens = elements_of(m);
                gens.push(*x);
                let n = mask_closure(m | bit(x), &gens);
                if seen.insert(n) {
                    queue.push(n);
                }
            }
        }
        let mut v: Vec<Subgroup> = seen.into_iter().map(Subgroup::from_mask).collect();
        v.sort_by_key(|h| (h.order(), h.mask));
        v
    })
}

/// The five conjugacy classes of transitive subgroups of S5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitiveClass {
    C5,
    D5,
    AffF5,
    A5,
    S5,
}

impl TransitiveClass {
    pub const ALL: [TransitiveClass; 5] = [
        TransitiveClass::C5,
        TransitiveClass::D5,
        TransitiveClass::AffF5,
        TransitiveClass::A5,
        TransitiveClass::S5,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TransitiveClass::C5 => "C5",
            TransitiveClass::D5 => "D5",
            TransitiveClass::AffF5 => "AffF5",
            TransitiveClass::A5 => "A5",
            TransitiveClass::S5 => "S5",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            TransitiveClass::C5 => 5,
            TransitiveClass::D5 => 10,
            TransitiveClass::AffF5 => 20,
            TransitiveClass::A5 => 60,
            TransitiveClass::S5 => 120,
        }
    }

    pub fn canonical_generators(&self) -> Vec<Perm5> {
        let cyc = p("(1 2 3 4 5)");
        match self {
            TransitiveClass::C5 => vec![cyc],
            TransitiveClass::D5 => vec![cyc, p("(2 5)(3 4)")],
            TransitiveClass::AffF5 => vec![cyc, p("(2 3 5 4)")],
            TransitiveClass::A5 => vec![cyc, p("(1 3 4 5 2)")],
            TransitiveClass::S5 => vec![cyc, p("(1 2)")],
        }
    }

    /// The canonical representative subgroup.
    pub fn group(&self) -> &'static Subgroup {
        static GROUPS: OnceLock<Vec<Subgroup>> = OnceLock::new();
        let groups = GROUPS.get_or_init(|| {
            TransitiveClass::ALL
                .iter()
                .map(|c| Subgroup::closure(&c.canonical_generators()))
                .collect()
        });
        &groups[*self as usize]
    }

    pub fn element_types(&self) -> Vec<CycleType> {
        self.group().element_types()
    }

    pub fn admits(&self, t: CycleType) -> bool {
        t == CycleType::Identity || self.element_types().contains(&t)
    }

    pub fn lattice(&self) -> &'static Lattice {
        lattice(*self)
    }

    pub fn point_stabilizer(&self) -> &'static LatticeNode {
        point_stabilizer(*self)
    }
}

impl fmt::Display for TransitiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TransitiveClass {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        match s.trim() {
            "C5" => Ok(TransitiveClass::C5),
            "D5" => Ok(TransitiveClass::D5),
            "AffF5" | "Aff" | "GA" | "F20" => Ok(TransitiveClass::AffF5),
            "A5" => Ok(TransitiveClass::A5),
            "S5" => Ok(TransitiveClass::S5),
            other => Err(GroupError::UnknownGroup(other.to_string())),
        }
    }
}

impl Serialize for TransitiveClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone)]
pub struct LatticeNode {
    pub label: &'static str,
    pub subgroup: Subgroup,
    /// Labels of the immediate overgroups within the lattice.
    pub covers: Vec<&'static str>,
    pub normal: bool,
}

#[derive(Debug, Clone)]
pub struct Lattice {
    pub group: TransitiveClass,
    /// Nodes in table order, the trivial group first and the whole group last.
    pub nodes: Vec<LatticeNode>,
}

impl Lattice {
    pub fn node(&self, label: &str) -> Result<&LatticeNode, GroupError> {
        self.nodes
            .iter()
            .find(|n| n.label == label)
            .ok_or_else(|| GroupError::UnknownSubgroup {
                group: self.group,
                label: label.to_string(),
            })
    }

    pub fn top(&self) -> &LatticeNode {
        self.nodes.last().unwrap()
    }

    /// The node whose subgroup equals `h`, if any.
    pub fn find(&self, h: &Subgroup) -> Option<&LatticeNode> {
        self.nodes.iter().find(|n| n.subgroup == *h)
    }

    /// Nodes strictly between `lower` and `upper`.
    pub fn strictly_between(&self, lower: &Subgroup, upper: &Subgroup) -> Vec<&LatticeNode> {
        self.nodes
            .iter()
            .filter(|n| {
                lower.is_subgroup_of(&n.subgroup)
                    && n.subgroup.is_subgroup_of(upper)
                    && n.subgroup != *lower
                    && n.subgroup != *upper
            })
            .collect()
    }
}

type NodeSpec = (&'static str, &'static [&'static str], &'static [&'static str]);

fn lattice_spec(cls: TransitiveClass) -> Vec<NodeSpec> {
    match cls {
        TransitiveClass::C5 => vec![("Id", &[], &["C5"]), ("C5", &["(1 2 3 4 5)"], &[])],
        TransitiveClass::D5 => vec![
            ("Id", &[], &["C2", "C5"]),
            ("C2", &["(2 5)(3 4)"], &["D5"]),
            ("C5", &["(1 2 3 4 5)"], &["D5"]),
            ("D5", &["(1 2 3 4 5)", "(2 5)(3 4)"], &[]),
        ],
        TransitiveClass::AffF5 => vec![
            ("Id", &[], &["C4", "C5"]),
            ("C4", &["(2 3 5 4)"], &["AffF5"]),
            ("C5", &["(1 2 3 4 5)"], &["D5"]),
            ("D5", &["(1 2 3 4 5)", "(2 5)(3 4)"], &["AffF5"]),
            ("AffF5", &["(1 2 3 4 5)", "(2 3 5 4)"], &[]),
        ],
        TransitiveClass::A5 => vec![
            ("Id", &[], &["C5", "A4"]),
            ("C5", &["(1 2 3 4 5)"], &["D5"]),
            ("D5", &["(1 2 3 4 5)", "(2 5)(3 4)"], &["A5"]),
            ("A4", &["(2 3 4)", "(3 4 5)"], &["A5"]),
            ("A5", &["(1 2 3 4 5)", "(1 3 4 5 2)"], &[]),
        ],
        TransitiveClass::S5 => vec![
            ("Id", &[], &["S3", "A4", "D5"]),
            ("S3", &["(3 4 5)", "(3 4)"], &["D6", "S4"]),
            ("D5", &["(1 2 3 4 5)", "(2 5)(3 4)"], &["A5", "AffF5"]),
            ("A4", &["(2 3 4)", "(3 4 5)"], &["S4", "A5"]),
            ("D6", &["(1 2)", "(3 4)", "(3 4 5)"], &["S5"]),
            ("AffF5", &["(1 2 3 4 5)", "(1 2 4 3)"], &["S5"]),
            ("S4", &["(2 3 4 5)", "(2 3)"], &["S5"]),
            ("A5", &["(1 2 3 4 5)", "(1 2 3)"], &["S5"]),
            ("S5", &["(1 2 3 4 5)", "(1 2)"], &[]),
        ],
    }
}

fn build_lattice(cls: TransitiveClass) -> Lattice {
    let g = cls.group();
    let nodes: Vec<LatticeNode> = lattice_spec(cls)
        .into_iter()
        .map(|(label, gens, covers)| {
            let gens: Vec<Perm5> = gens.iter().map(|s| p(s)).collect();
            let subgroup = Subgroup::closure(&gens);
            assert!(subgroup.is_subgroup_of(g), "{label} not inside {cls}");
            LatticeNode {
                label,
                normal: subgroup.is_normal_in(g),
                subgroup,
                covers: covers.to_vec(),
            }
        })
        .collect();
    assert_eq!(nodes.last().unwrap().subgroup, *g);
    let by_label: HashMap<&str, &Subgroup> =
        nodes.iter().map(|n| (n.label, &n.subgroup)).collect();
    for n in &nodes {
        for c in &n.covers {
            let over = by_label[c];
            assert!(
                n.subgroup.is_subgroup_of(over) && over.order() > n.subgroup.order(),
                "{} < {} fails in {cls}",
                n.label,
                c
            );
        }
    }
    Lattice { group: cls, nodes }
}

pub fn lattice(cls: TransitiveClass) -> &'static Lattice {
    static LATTICES: OnceLock<Vec<Lattice>> = OnceLock::new();
    &LATTICES.get_or_init(|| TransitiveClass::ALL.iter().map(|c| build_lattice(*c)).collect())
        [cls as usize]
}

/// The node fixing point 1; its quotient is the original covering.
pub fn point_stabilizer(cls: TransitiveClass) -> &'static LatticeNode {
    let lat = lattice(cls);
    let stab: Vec<Perm5> = cls
        .group()
        .elements()
        .iter()
        .copied()
        .filter(|x| x.apply(1) == 1)
        .collect();
    lat.nodes
        .iter()
        .find(|n| n.subgroup.elements() == stab.as_slice())
        .expect("every lattice contains the stabilizer of 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures() {
        assert_eq!(Subgroup::closure(&[p("(1 2 3 4 5)")]).order(), 5);
        assert_eq!(
            Subgroup::closure(&[p("(1 2 3 4 5)"), p("(2 3 5 4)")]).order(),
            20
        );
        assert_eq!(
            Subgroup::closure(&[p("(1 5 2 3 4)"), p("(1 3 4 2 5)")]).order(),
            60
        );
        assert_eq!(Subgroup::trivial().order(), 1);
    }

    #[test]
    fn lagrange_on_all_pairs() {
        let all: Vec<Perm5> = Perm5::all().collect();
        for a in all.iter().step_by(7) {
            for b in &all {
                assert_eq!(120 % Subgroup::closure(&[*a, *b]).order(), 0);
            }
        }
    }

    #[test]
    fn transitivity() {
        assert!(TransitiveClass::S5.group().is_transitive());
        assert!(!Subgroup::closure(&[p("(1 2)")]).is_transitive());
        for c in TransitiveClass::ALL {
            assert!(c.group().is_transitive());
            assert_eq!(c.group().order(), c.order());
            assert_eq!(c.group().identify_transitive().unwrap(), c);
        }
        assert_eq!(
            Subgroup::closure(&[p("(1 3 5 2 4)")]).identify_transitive(),
            Ok(TransitiveClass::C5)
        );
        assert_eq!(
            Subgroup::closure(&[p("(1 2 3 4 5)"), p("(1 2)")]).identify_transitive(),
            Ok(TransitiveClass::S5)
        );
        assert!(Subgroup::closure(&[p("(1 2)")])
            .identify_transitive()
            .is_err());
    }

    #[test]
    fn subgroup_census() {
        let subs = all_subgroups();
        assert_eq!(subs.len(), 156);
        let transitive: Vec<&Subgroup> = subs.iter().filter(|h| h.is_transitive()).collect();
        let mut orders: Vec<usize> = transitive.iter().map(|h| h.order()).collect();
        orders.dedup();
        assert_eq!(orders, vec![5, 10, 20, 60, 120]);
        // each order is one conjugacy class
        for h in &transitive {
            let cls = h.identify_transitive().unwrap();
            let canon = cls.group();
            assert!(Perm5::all().any(|x| canon.conjugate(&x) == **h));
        }
    }

    #[test]
    fn element_types_table() {
        use CycleType::*;
        assert_eq!(TransitiveClass::C5.element_types(), vec![Five]);
        assert_eq!(TransitiveClass::D5.element_types(), vec![Five, TwoTwoOne]);
        assert_eq!(
            TransitiveClass::AffF5.element_types(),
            vec![Five, TwoTwoOne, FourOne]
        );
        assert_eq!(
            TransitiveClass::A5.element_types(),
            vec![Five, TwoTwoOne, ThreeOneOne]
        );
        assert_eq!(TransitiveClass::S5.element_types().len(), 6);
    }

    #[test]
    fn lattices() {
        let d5 = lattice(TransitiveClass::D5);
        assert_eq!(d5.nodes.len(), 4);
        assert_eq!(d5.node("C2").unwrap().covers, vec!["D5"]);
        assert_eq!(d5.node("C5").unwrap().covers, vec!["D5"]);
        let a5 = lattice(TransitiveClass::A5);
        assert_eq!(a5.nodes.len(), 5);
        assert!(a5.node("C5").unwrap().subgroup.is_subgroup_of(&a5.node("D5").unwrap().subgroup));
        let s5 = lattice(TransitiveClass::S5);
        assert_eq!(s5.nodes.len(), 9);
        assert_eq!(s5.node("S3").unwrap().covers, vec!["D6", "S4"]);
        let orders: Vec<usize> = s5.nodes.iter().map(|n| n.subgroup.order()).collect();
        assert_eq!(orders, vec![1, 6, 10, 12, 12, 20, 24, 60, 120]);
        assert_eq!(lattice(TransitiveClass::C5).nodes.len(), 2);
    }

    #[test]
    fn normality_flags() {
        for c in TransitiveClass::ALL {
            let g = c.group();
            for n in &c.lattice().nodes {
                let conj_ok = g
                    .elements()
                    .iter()
                    .all(|x| n.subgroup.conjugate(x) == n.subgroup);
                assert_eq!(n.normal, conj_ok, "{c} {}", n.label);
            }
        }
        let s5 = lattice(TransitiveClass::S5);
        let normal: Vec<&str> = s5.nodes.iter().filter(|n| n.normal).map(|n| n.label).collect();
        assert_eq!(normal, vec!["Id", "A5", "S5"]);
    }

    #[test]
    fn stabilizers() {
        assert_eq!(point_stabilizer(TransitiveClass::D5).label, "C2");
        assert_eq!(point_stabilizer(TransitiveClass::AffF5).label, "C4");
        assert_eq!(point_stabilizer(TransitiveClass::A5).label, "A4");
        assert_eq!(point_stabilizer(TransitiveClass::S5).label, "S4");
        assert_eq!(point_stabilizer(TransitiveClass::C5).label, "Id");
    }

    #[test]
    fn between() {
        let s5 = lattice(TransitiveClass::S5);
        let id = &s5.node("Id").unwrap().subgroup;
        let a5 = &s5.node("A5").unwrap().subgroup;
        let labels: Vec<&str> = s5.strictly_between(id, a5).iter().map(|n| n.label).collect();
        assert_eq!(labels, vec!["D5", "A4"]);
        let s4 = &s5.node("S4").unwrap().subgroup;
        assert!(s5.strictly_between(s4, &s5.top().subgroup).is_empty());
    }
}
