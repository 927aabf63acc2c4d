//! Layered search over partial products. A state is the running product
//! together with the subgroup generated so far; each level multiplies in one
//! commutator `[a,b]` or one element of a prescribed cycle type. When the last
//! level is an element it is eliminated: it must equal `prod^-1 * target`.

use std::collections::{HashMap, HashSet};

use crate::cayley::{tables, El, SubId, Tables};
use crate::perm5::CycleType;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Pair,
    Elem(CycleType),
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub pool: u128,
    pub levels: Vec<Level>,
    pub start: (El, SubId),
    pub target: El,
    pub need: Option<SubId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Choice {
    Pair(El, El),
    Elem(El),
}

type State = u32;

fn pack(prod: El, sub: SubId) -> State {
    prod as u32 | (sub as u32) << 8
}

fn unpack(s: State) -> (El, SubId) {
    ((s & 0xff) as El, (s >> 8) as SubId)
}

pub struct Engine<'a> {
    t: &'a Tables,
    p: &'a Problem,
    pairs: Vec<(El, SubId)>,
    by_type: HashMap<CycleType, Vec<El>>,
    eliminated: bool,
}

impl<'a> Engine<'a> {
    pub fn new(p: &'a Problem) -> Engine<'a> {
        let t = tables();
        let pool: Vec<El> = (0..120u8).filter(|e| p.pool >> e & 1 == 1).collect();
        let mut pairs: HashSet<(El, SubId)> = HashSet::new();
        if p.levels.contains(&Level::Pair) {
            let triv = t.trivial();
            for &a in &pool {
                let sa = t.join_el(triv, a);
                for &b in &pool {
                    pairs.insert((t.comm(a, b), t.join_el(sa, b)));
                }
            }
        }
        let mut pairs: Vec<(El, SubId)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let mut by_type: HashMap<CycleType, Vec<El>> = HashMap::new();
        for &e in &pool {
            by_type.entry(t.cycle_type(e)).or_default().push(e);
        }
        let eliminated = matches!(p.levels.last(), Some(Level::Elem(_)));
        Engine {
            t,
            p,
            pairs,
            by_type,
            eliminated,
        }
    }

    fn elems(&self, ty: CycleType) -> &[El] {
        self.by_type.get(&ty).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn walked(&self) -> usize {
        self.p.levels.len() - self.eliminated as usize
    }

    /// Branching factor of level `l` in the deduplicated forward pass.
    pub fn branching(&self, l: usize) -> usize {
        match self.p.levels[l] {
            Level::Pair => self.pairs.len(),
            Level::Elem(ty) => self.elems(ty).len(),
        }
    }

    /// Upper bound on the transitions the forward pass performs: at each level
    /// the state count is capped by `|pool| * #subgroups(pool)`.
    pub fn cost_bound(&self) -> u128 {
        let cap = self.p.pool.count_ones() as u128 * subgroups_within(self.t, self.p.pool) as u128;
        let mut states: u128 = 1;
        let mut total: u128 = 0;
        for l in 0..self.walked() {
            let b = self.branching(l) as u128;
            total += states * b;
            states = (states * b).min(cap);
        }
        total + states
    }

    fn step(&self, s: State, l: usize, out: &mut HashSet<State>) {
        let (prod, sub) = unpack(s);
        match self.p.levels[l] {
            Level::Pair => {
                for &(c, h) in &self.pairs {
                    out.insert(pack(self.t.mul(prod, c), self.t.join(sub, h)));
                }
            }
            Level::Elem(ty) => {
                for &e in self.elems(ty) {
                    out.insert(pack(self.t.mul(prod, e), self.t.join_el(sub, e)));
                }
            }
        }
    }

    /// Generated subgroup of the completed tuple ending at `s`, if the tuple
    /// closes up.
    fn finish(&self, s: State) -> Option<SubId> {
        let (prod, sub) = unpack(s);
        match (self.eliminated, self.p.levels.last()) {
            (true, Some(Level::Elem(ty))) => {
                let c = self.t.mul(self.t.inv(prod), self.p.target);
                (self.p.pool >> c & 1 == 1 && self.t.cycle_type(c) == *ty)
                    .then(|| self.t.join_el(sub, c))
            }
            _ => (prod == self.p.target).then_some(sub),
        }
    }

    fn accepts(&self, s: State) -> bool {
        self.finish(s)
            .is_some_and(|h| self.p.need.map_or(true, |n| n == h))
    }

    fn forward(&self) -> Vec<HashSet<State>> {
        let mut reach = vec![HashSet::from([pack(self.p.start.0, self.p.start.1)])];
        for l in 0..self.walked() {
            let mut next = HashSet::new();
            for &s in &reach[l] {
                self.step(s, l, &mut next);
            }
            reach.push(next);
        }
        reach
    }

    /// Every subgroup reachable as the generated group of a solution.
    pub fn solution_groups(&self) -> HashSet<SubId> {
        let reach = self.forward();
        reach
            .last()
            .unwrap()
            .iter()
            .filter_map(|s| self.finish(*s))
            .filter(|h| self.p.need.map_or(true, |n| n == *h))
            .collect()
    }

    /// Lexicographically first solution: pairs ordered by `(a, b)`, elements
    /// by their index, earlier levels most significant.
    pub fn first(&self) -> Option<Vec<Choice>> {
        let reach = self.forward();
        let w = self.walked();
        let mut good: Vec<HashSet<State>> = vec![HashSet::new(); w + 1];
        good[w] = reach[w].iter().copied().filter(|s| self.accepts(*s)).collect();
        for l in (0..w).rev() {
            let mut g = HashSet::new();
            for &s in &reach[l] {
                let mut next = HashSet::new();
                self.step(s, l, &mut next);
                if next.iter().any(|x| good[l + 1].contains(x)) {
                    g.insert(s);
                }
            }
            good[l] = g;
        }
        let mut s = pack(self.p.start.0, self.p.start.1);
        if !good[0].contains(&s) {
            return None;
        }
        let pool: Vec<El> = (0..120u8).filter(|e| self.p.pool >> e & 1 == 1).collect();
        let mut out = Vec::new();
        for l in 0..w {
            let (prod, sub) = unpack(s);
            let pick = match self.p.levels[l] {
                Level::Pair => pool.iter().find_map(|&a| {
                    let sa = self.t.join_el(sub, a);
                    pool.iter().find_map(|&b| {
                        let n = pack(self.t.mul(prod, self.t.comm(a, b)), self.t.join_el(sa, b));
                        good[l + 1].contains(&n).then_some((Choice::Pair(a, b), n))
                    })
                }),
                Level::Elem(ty) => self.elems(ty).iter().find_map(|&e| {
                    let n = pack(self.t.mul(prod, e), self.t.join_el(sub, e));
                    good[l + 1].contains(&n).then_some((Choice::Elem(e), n))
                }),
            };
            let (c, n) = pick.expect("backward pass guarantees a continuation");
            out.push(c);
            s = n;
        }
        if self.eliminated {
            let (prod, _) = unpack(s);
            out.push(Choice::Elem(self.t.mul(self.t.inv(prod), self.p.target)));
        }
        Some(out)
    }
}

fn subgroups_within(t: &Tables, mask: u128) -> usize {
    (0..t.subgroup_count())
        .filter(|&i| t.mask(i as SubId) & !mask == 0)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{el, perm};
    use crate::grp::TransitiveClass;
    use crate::perm5::{CycleType::*, Perm5};

    fn problem(cls: TransitiveClass, levels: Vec<Level>) -> Problem {
        let t = tables();
        let g = cls.group();
        Problem {
            pool: g.mask(),
            levels,
            start: (el(&Perm5::identity()), t.trivial()),
            target: el(&Perm5::identity()),
            need: Some(t.id_of(g)),
        }
    }

    #[test]
    fn cyclic_torus() {
        let pr = problem(TransitiveClass::C5, vec![Level::Pair]);
        let e = Engine::new(&pr);
        let sol = e.first().unwrap();
        let Choice::Pair(a, b) = sol[0] else { panic!() };
        assert_eq!(Perm5::commutator(&perm(a), &perm(b)), Perm5::identity());
        assert_eq!(e.solution_groups().len(), 1);
    }

    #[test]
    fn three_five_cycles_in_a5() {
        let pr = problem(TransitiveClass::A5, vec![Level::Elem(Five); 3]);
        let sol = Engine::new(&pr).first().unwrap();
        let cs: Vec<Perm5> = sol
            .iter()
            .map(|c| match c {
                Choice::Elem(e) => perm(*e),
                _ => panic!(),
            })
            .collect();
        assert_eq!(Perm5::product(&cs), Perm5::identity());
        let h = crate::grp::Subgroup::closure(&cs);
        assert_eq!(h.order(), 60);
        let pr = problem(TransitiveClass::A5, vec![Level::Elem(Five); 2]);
        assert!(Engine::new(&pr).first().is_none());
    }

    #[test]
    fn cost_bound_is_finite() {
        let pr = problem(TransitiveClass::S5, vec![Level::Pair, Level::Elem(TwoTwoOne)]);
        let e = Engine::new(&pr);
        assert!(e.cost_bound() > 0);
        assert!(e.cost_bound() < 1_000_000_000);
        assert!(!e.solution_groups().is_empty());
    }
}
