//! Index-based multiplication tables for S5 and its subgroup lattice, used by
//! the tuple searches. Elements are `Perm5::index()` values, subgroups are
//! positions in [`crate::grp::all_subgroups`].

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::grp::{all_subgroups, Subgroup};
use crate::perm5::{CycleType, Perm5};

pub type El = u8;
pub type SubId = u16;

pub struct Tables {
    mul: Vec<[El; 120]>,
    inv: [El; 120],
    ty: [CycleType; 120],
    masks: Vec<u128>,
    ids: HashMap<u128, SubId>,
    gens: Vec<Vec<El>>,
    join_el: Vec<[SubId; 120]>,
}

pub fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(Tables::build)
}

impl Tables {
    fn build() -> Tables {
        let all: Vec<Perm5> = Perm5::all().collect();
        let mut mul = vec![[0u8; 120]; 120];
        let mut inv = [0u8; 120];
        let mut ty = [CycleType::Identity; 120];
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                mul[i][j] = (*a * *b).index() as El;
            }
            inv[i] = a.inverse().index() as El;
            ty[i] = a.cycle_type();
        }
        let subs = all_subgroups();
        let masks: Vec<u128> = subs.iter().map(|h| h.mask()).collect();
        let ids: HashMap<u128, SubId> = masks
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as SubId))
            .collect();
        let gens: Vec<Vec<El>> = subs
            .iter()
            .map(|h| h.generators().iter().map(|g| g.index() as El).collect())
            .collect();
        let mut t = Tables {
            mul,
            inv,
            ty,
            masks,
            ids,
            gens,
            join_el: Vec::new(),
        };
        let mut join_el = vec![[0 as SubId; 120]; t.masks.len()];
        for s in 0..t.masks.len() {
            for e in 0..120u8 {
                join_el[s][e as usize] = if t.masks[s] >> e & 1 == 1 {
                    s as SubId
                } else {
                    let mut gens = t.gens[s].clone();
                    gens.push(e);
                    t.ids[&t.closure(t.masks[s] | 1u128 << e, &gens)]
                };
            }
        }
        t.join_el = join_el;
        t
    }

    fn closure(&self, mut mask: u128, gens: &[El]) -> u128 {
        mask |= 1;
        let mut stack: Vec<El> = (0..120u8).filter(|i| mask >> i & 1 == 1).collect();
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul[x as usize][g as usize];
                if mask >> y & 1 == 0 {
                    mask |= 1u128 << y;
                    stack.push(y);
                }
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, a: El, b: El) -> El {
        self.mul[a as usize][b as usize]
    }

    #[inline]
    pub fn inv(&self, a: El) -> El {
        self.inv[a as usize]
    }

    #[inline]
    pub fn cycle_type(&self, a: El) -> CycleType {
        self.ty[a as usize]
    }

    #[inline]
    pub fn comm(&self, a: El, b: El) -> El {
        let x = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(x, a), b)
    }

    #[inline]
    pub fn join_el(&self, s: SubId, e: El) -> SubId {
        self.join_el[s as usize][e as usize]
    }

    pub fn join(&self, a: SubId, b: SubId) -> SubId {
        self.gens[b as usize]
            .iter()
            .fold(a, |acc, &g| self.join_el(acc, g))
    }

    pub fn mask(&self, s: SubId) -> u128 {
        self.masks[s as usize]
    }

    pub fn id_of(&self, h: &Subgroup) -> SubId {
        self.ids[&h.mask()]
    }

    pub fn trivial(&self) -> SubId {
        self.ids[&1u128]
    }

    pub fn subgroup_count(&self) -> usize {
        self.masks.len()
    }

    /// Number of subgroups of S5 contained in `s`.
    pub fn subgroups_below(&self, s: SubId) -> usize {
        let m = self.mask(s);
        self.masks.iter().filter(|x| **x & !m == 0).count()
    }
}

pub fn el(p: &Perm5) -> El {
    p.index() as El
}

pub fn perm(e: El) -> Perm5 {
    Perm5::from_index(e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm5::p;

    #[test]
    fn tables_agree_with_perm5() {
        let t = tables();
        let a = p("(1 2 3)");
        let b = p("(3 4 5)");
        assert_eq!(perm(t.mul(el(&a), el(&b))), a * b);
        assert_eq!(perm(t.comm(el(&a), el(&b))), Perm5::commutator(&a, &b));
        assert_eq!(t.subgroup_count(), 156);
        assert_eq!(t.mask(t.trivial()), 1);
        let c5 = Subgroup::closure(&[p("(1 2 3 4 5)")]);
        let d5 = Subgroup::closure(&[p("(1 2 3 4 5)"), p("(2 5)(3 4)")]);
        let j = t.join_el(t.id_of(&c5), el(&p("(2 5)(3 4)")));
        assert_eq!(j, t.id_of(&d5));
        let s5 = t.join(t.id_of(&d5), t.id_of(&Subgroup::closure(&[p("(1 2)")])));
        assert_eq!(t.mask(s5).count_ones(), 120);
        assert_eq!(t.subgroups_below(s5), 156);
    }
}
