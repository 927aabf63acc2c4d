//! Decision procedure: ramification data to the set of transitive groups that
//! occur as monodromy groups.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::grp::TransitiveClass::{self, *};
use crate::perm5::CycleType::{self, *};
use crate::ram::RamData;

/// Facts about group actions on low genus surfaces that the decision tree
/// takes as given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExceptionalFact {
    /// There is no action of A5 with signature (1;2); such an action would
    /// live on a surface of genus 16.
    NoA5SignatureOneTwo,
    /// Automorphism groups of genus-1 surfaces fixing the analytic structure
    /// are solvable, isomorphic to Z^2 x| C_k.
    GenusOneSolvable,
}

impl ExceptionalFact {
    pub fn citation(&self) -> &'static str {
        match self {
            ExceptionalFact::NoA5SignatureOneTwo => {
                "(i) there is no action of A5 with signature (1;2), which would give a Galois closure of genus 16"
            }
            ExceptionalFact::GenusOneSolvable => {
                "(ii) the automorphism group of a genus-1 surface is isomorphic to Z^2 x| C_k, which is a solvable group"
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub ramification: RamData,
    pub possible: BTreeSet<TransitiveClass>,
    pub rule_fired: &'static str,
    pub exceptional_facts_used: Vec<ExceptionalFact>,
}

impl ClassificationResult {
    pub fn allows(&self, cls: TransitiveClass) -> bool {
        self.possible.contains(&cls)
    }
}

pub fn classify(d: &RamData) -> ClassificationResult {
    let (possible, rule, facts): (&[TransitiveClass], &'static str, Vec<ExceptionalFact>) =
        decide(d);
    ClassificationResult {
        ramification: d.clone(),
        possible: possible.iter().copied().collect(),
        rule_fired: rule,
        exceptional_facts_used: facts,
    }
}

const ALL_FIVE: &[TransitiveClass] = &[C5, D5, AffF5, A5, S5];
const NOT_C5: &[TransitiveClass] = &[D5, AffF5, A5, S5];

fn decide(d: &RamData) -> (&'static [TransitiveClass], &'static str, Vec<ExceptionalFact>) {
    let c = d.counts();
    let has = |t: CycleType| c.of(t) > 0;
    let n = d.n();
    if !d.is_realizable() {
        return (&[], "unrealizable", vec![]);
    }
    if d.base_genus >= 1 {
        let g = d.base_genus;
        if n == 0 {
            return (if g == 1 { &[C5] } else { ALL_FIVE }, "GP.N0", vec![]);
        }
        if has(ThreeTwo) || has(TwoOneOneOne) {
            return (&[S5], "GP.32or2111", vec![]);
        }
        if has(ThreeOneOne) && has(FourOne) {
            return (&[S5], "GP.311and41", vec![]);
        }
        if has(FourOne) {
            return (&[AffF5, S5], "GP.S5orGA", vec![]);
        }
        if has(ThreeOneOne) {
            return (&[A5, S5], "GP.S5orA5", vec![]);
        }
        if has(TwoTwoOne) {
            if n == 1 && g == 1 {
                return (&[S5], "GP.221a", vec![ExceptionalFact::NoA5SignatureOneTwo]);
            }
            if c.of(TwoTwoOne) % 2 == 1 {
                return (&[A5, S5], "GP.221b", vec![]);
            }
            return (NOT_C5, "GP.221c", vec![]);
        }
        if n == 1 {
            return (NOT_C5, "GP.only5a", vec![]);
        }
        return (ALL_FIVE, "GP.only5b", vec![]);
    }
    let deg = d.total_degree();
    if has(ThreeTwo) || has(TwoOneOneOne) {
        return (&[S5], "G0.32or2111", vec![]);
    }
    if has(ThreeOneOne) && has(FourOne) {
        return (&[S5], "G0.311and41", vec![]);
    }
    if has(FourOne) {
        if deg == 8 {
            return (&[AffF5], "G0.S5orGA.a", vec![ExceptionalFact::GenusOneSolvable]);
        }
        return (&[AffF5, S5], "G0.S5orGA.b", vec![]);
    }
    if has(ThreeOneOne) {
        return (&[A5], "G0.A5", vec![]);
    }
    if has(TwoTwoOne) {
        if deg == 8 {
            return (&[D5], "G0.221a", vec![]);
        }
        if c.of(TwoTwoOne) % 2 == 1 {
            return (&[A5], "G0.221b", vec![]);
        }
        return (&[D5, A5], "G0.221c", vec![]);
    }
    if n == 2 {
        return (&[C5], "G0.only5", vec![]);
    }
    (&[C5, A5], "G0.only5", vec![])
}

fn clause_text(rule: &str) -> &'static str {
    match rule {
        "unrealizable" => "the tuple has an odd number of odd permutations, or the base has genus 0 and the ramification degree is below 8",
        "GP.N0" => "unramified: over a torus only the cyclic group occurs, over higher genus every transitive group occurs",
        "GP.32or2111" => "a type [3,2] or [2,1,1,1] forces the symmetric group",
        "GP.311and41" => "types [3,1,1] and [4,1] together force the symmetric group",
        "GP.S5orGA" => "a [4,1] without [3,2], [3,1,1] or [2,1,1,1] allows the affine group or the symmetric group",
        "GP.S5orA5" => "only even types with a [3,1,1] allow the alternating or the symmetric group",
        "GP.221a" => "a single [2,2,1] over a torus forces the symmetric group",
        "GP.221b" => "an odd number of [2,2,1] and no [3,1,1] allows the alternating or the symmetric group",
        "GP.221c" => "an even, positive number of [2,2,1] allows every group except the cyclic one",
        "GP.only5a" => "a single [5] allows every group except the cyclic one",
        "GP.only5b" => "two or more [5] and nothing else allow every group",
        "G0.32or2111" => "a type [3,2] or [2,1,1,1] forces the symmetric group",
        "G0.311and41" => "types [3,1,1] and [4,1] together force the symmetric group",
        "G0.S5orGA.a" => "[4,1] types with ramification degree 8 force the affine group",
        "G0.S5orGA.b" => "[4,1] types with ramification degree above 8 allow the affine or the symmetric group",
        "G0.A5" => "only even types with a [3,1,1] force the alternating group",
        "G0.221a" => "[2,2,1] and [5] types with ramification degree 8 force the dihedral group",
        "G0.221b" => "an odd number of [2,2,1] forces the alternating group",
        "G0.221c" => "an even number of [2,2,1] with ramification degree above 8 allows the dihedral or the alternating group",
        "G0.only5" => "only [5] types: two of them force the cyclic group, more allow the cyclic or the alternating group",
        _ => "unknown clause",
    }
}

pub fn explain(r: &ClassificationResult) -> String {
    let mut out = format!(
        "{}: clause {}: {}.\n",
        r.ramification,
        r.rule_fired,
        clause_text(r.rule_fired)
    );
    if r.possible.is_empty() {
        out.push_str("No monodromy group is possible.\n");
    } else {
        let names: Vec<&str> = r.possible.iter().map(|c| c.label()).collect();
        out.push_str(&format!("Possible monodromy groups: {}.\n", names.join(", ")));
    }
    for f in &r.exceptional_facts_used {
        out.push_str(&format!("Uses fact {}.\n", f.citation()));
    }
    out
}

impl fmt::Display for ClassificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&explain(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(s: &str) -> ClassificationResult {
        classify(&s.parse().unwrap())
    }

    fn set(xs: &[TransitiveClass]) -> BTreeSet<TransitiveClass> {
        xs.iter().copied().collect()
    }

    #[test]
    fn sample_clauses() {
        let r = cl("g=0; 4,1:4,1:2,2,1");
        assert_eq!(r.possible, set(&[AffF5]));
        assert_eq!(r.rule_fired, "G0.S5orGA.a");
        assert_eq!(cl("g=1; 2,2,1").possible, set(&[S5]));
        assert_eq!(cl("g=0; 5:5:5").possible, set(&[C5, A5]));
        assert_eq!(cl("g=0; 5:5").possible, set(&[C5]));
        assert_eq!(cl("g=1;").possible, set(&[C5]));
        assert_eq!(cl("g=2;").possible, set(ALL_FIVE));
        assert_eq!(cl("g=0; 3,2:3,2:2,2,1").possible, set(&[S5]));
        let u = cl("g=0; 2,1,1,1:2,1,1,1");
        assert!(u.possible.is_empty());
        assert_eq!(u.rule_fired, "unrealizable");
        assert_eq!(cl("g=2; 2,2,1").rule_fired, "GP.221b");
        assert_eq!(cl("g=1; 2,2,1:2,2,1").possible, set(NOT_C5));
    }

    #[test]
    fn explanations_cite_facts() {
        assert!(explain(&cl("g=1; 2,2,1")).contains("(1;2)"));
        assert!(explain(&cl("g=0; 4,1:4,1:2,2,1")).contains("solvable"));
        assert!(explain(&cl("g=2;")).contains("GP.N0"));
        assert!(cl("g=0; 5:5:5").exceptional_facts_used.is_empty());
    }

    #[test]
    fn possible_groups_contain_the_types() {
        for g in 0..3 {
            for c in crate::ram::multisets(4, 14) {
                let d = RamData::new(g, c.types());
                let r = classify(&d);
                assert_eq!(r.possible.is_empty(), !d.is_realizable());
                for cls in &r.possible {
                    assert!(d.types.iter().all(|t| cls.admits(*t)), "{d} {cls}");
                }
            }
        }
    }

    #[test]
    fn order_does_not_matter() {
        let a = cl("g=0; 2,2,1:5:2,2,1:5");
        let b = cl("g=0; 5:5:2,2,1:2,2,1");
        assert_eq!(a.possible, b.possible);
        assert_eq!(a.rule_fired, b.rule_fired);
    }
}
