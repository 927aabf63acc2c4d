//! Ramification data `(g; t1, ..., tn)` of a degree-5 covering and the
//! realizability criteria.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::grp::TransitiveClass;
use crate::perm5::CycleType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamParseError {
    #[error("expected \"g=<genus>;\" prefix")]
    MissingGenus,
    #[error("bad genus {0:?}")]
    BadGenus(String),
    #[error("bad type {0:?}: {1}")]
    BadType(String, String),
    #[error("the identity [1,1,1,1,1] is not a branch type")]
    TrivialType,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RamData {
    pub base_genus: u32,
    pub types: Vec<CycleType>,
}

/// Per-type counts `n1..n6` for `[5], [2,2,1], [4,1], [3,1,1], [3,2], [2,1,1,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TypeCounts(pub [u32; 6]);

impl TypeCounts {
    pub fn n(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn of(&self, t: CycleType) -> u32 {
        t.count_index().map_or(0, |i| self.0[i])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The multiset back as a tuple, grouped in count order.
    pub fn types(&self) -> Vec<CycleType> {
        CycleType::BRANCH
            .iter()
            .zip(self.0)
            .flat_map(|(t, k)| std::iter::repeat(*t).take(k as usize))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        CycleType::BRANCH
            .iter()
            .zip(self.0)
            .map(|(t, k)| t.degree() * k)
            .sum()
    }
}

impl fmt::Display for TypeCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (1..=6).map(|i| format!("n{i}={}", self.n(i))).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for TypeCounts {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl FromStr for TypeCounts {
    type Err = String;

    /// `n1=2,n3=1`; unspecified counts are zero.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut c = TypeCounts::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("expected nK=V, got {item:?}"))?;
            let idx: usize = k
                .trim()
                .strip_prefix('n')
                .and_then(|d| d.parse().ok())
                .filter(|d| (1..=6).contains(d))
                .ok_or_else(|| format!("unknown count {k:?}"))?;
            c.0[idx - 1] = v
                .trim()
                .parse()
                .map_err(|_| format!("bad value in {item:?}"))?;
        }
        Ok(c)
    }
}

/// Closure signature `(g; m1, ..., mn)` with periods sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub genus: u32,
    pub periods: Vec<u32>,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.periods.iter().map(|m| m.to_string()).collect();
        write!(f, "({};{})", self.genus, ps.join(","))
    }
}

pub fn type_degree(t: CycleType) -> u32 {
    t.degree()
}

impl RamData {
    pub fn new(base_genus: u32, types: Vec<CycleType>) -> RamData {
        assert!(
            !types.contains(&CycleType::Identity),
            "identity is not a branch type"
        );
        RamData { base_genus, types }
    }

    pub fn n(&self) -> usize {
        self.types.len()
    }

    /// Degree of the ramification divisor of the covering.
    pub fn total_degree(&self) -> u32 {
        self.types.iter().map(|t| t.degree()).sum()
    }

    pub fn odd_count(&self) -> usize {
        self.types.iter().filter(|t| t.is_odd()).count()
    }

    pub fn is_even_tuple(&self) -> bool {
        self.odd_count() % 2 == 0
    }

    pub fn is_realizable(&self) -> bool {
        self.is_even_tuple() && (self.base_genus >= 1 || self.total_degree() >= 8)
    }

    pub fn counts(&self) -> TypeCounts {
        let mut c = TypeCounts::default();
        for t in &self.types {
            c.0[t.count_index().unwrap()] += 1;
        }
        c
    }

    pub fn has(&self, t: CycleType) -> bool {
        self.types.contains(&t)
    }

    /// Genus of the covering surface, `2 g_X - 2 = 5 (2g - 2) + deg R_f`.
    pub fn cover_genus(&self) -> Option<u32> {
        let twice = 10 * self.base_genus as i64 - 8 + self.total_degree() as i64;
        (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
    }

    /// The same data with types in count order; the classification key.
    pub fn sorted(&self) -> RamData {
        RamData::new(self.base_genus, self.counts().types())
    }

    pub fn closure_signature(&self, _cls: TransitiveClass) -> Signature {
        let mut periods: Vec<u32> = self
            .types
            .iter()
            .map(|t| t.parts().iter().fold(1u32, |a, &b| a.lcm(&(b as u32))))
            .collect();
        periods.sort_unstable();
        Signature {
            genus: self.base_genus,
            periods,
        }
    }
}

impl fmt::Display for RamData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={};", self.base_genus)?;
        let ts: Vec<String> = self.types.iter().map(|t| t.spelled()).collect();
        if !ts.is_empty() {
            write!(f, " {}", ts.join(":"))?;
        }
        Ok(())
    }
}

impl Serialize for RamData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for RamData {
    type Err = RamParseError;

    fn from_str(s: &str) -> Result<RamData, RamParseError> {
        let s = s.trim();
        let rest = s.strip_prefix("g=").ok_or(RamParseError::MissingGenus)?;
        let (g, list) = match rest.split_once(';') {
            Some((g, list)) => (g, list),
            None => (rest, ""),
        };
        let base_genus: u32 = g
            .trim()
            .parse()
            .map_err(|_| RamParseError::BadGenus(g.trim().to_string()))?;
        let mut types = Vec::new();
        let list = list.trim();
        if !list.is_empty() {
            for item in list.split(':') {
                let parts: Result<Vec<u8>, _> =
                    item.split(',').map(|x| x.trim().parse::<u8>()).collect();
                let parts =
                    parts.map_err(|e| RamParseError::BadType(item.into(), e.to_string()))?;
                let sum: u32 = parts.iter().map(|&x| x as u32).sum();
                if sum != 5 {
                    return Err(RamParseError::BadType(
                        item.into(),
                        format!("parts sum to {sum}, not 5"),
                    ));
                }
                let t = CycleType::from_parts(&parts)
                    .map_err(|e| RamParseError::BadType(item.into(), e.to_string()))?;
                if t == CycleType::Identity {
                    return Err(RamParseError::TrivialType);
                }
                types.push(t);
            }
        }
        Ok(RamData { base_genus, types })
    }
}

/// Every type multiset with at most `nmax` entries and total degree at most
/// `degmax`, in a fixed order.
pub fn multisets(nmax: usize, degmax: u32) -> Vec<TypeCounts> {
    fn rec(i: usize, left: usize, deg: u32, degmax: u32, cur: &mut [u32; 6], out: &mut Vec<TypeCounts>) {
        if i == 6 {
            out.push(TypeCounts(*cur));
            return;
        }
        let d = CycleType::BRANCH[i].degree();
        let mut k = 0;
        while k as usize <= left && deg + k * d <= degmax {
            cur[i] = k;
            rec(i + 1, left - k as usize, deg + k * d, degmax, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, nmax, 0, degmax, &mut [0; 6], &mut out);
    out.sort_by_key(|c| (c.total(), c.degree(), std::cmp::Reverse(c.0)));
    out
}
