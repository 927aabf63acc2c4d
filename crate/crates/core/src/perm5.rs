//! Permutations of the five points `1..=5`.
//!
//! Products are read left to right: `p * q` applies `p` first, then `q`.
//! With this convention `(1 2) * (2 3) = (1 3 2)`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermParseError {
    #[error("empty permutation text")]
    Empty,
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("point {0} is outside 1..5")]
    PointOutOfRange(u32),
    #[error("point {0} appears more than once")]
    Repeated(u8),
    #[error("unterminated cycle")]
    Unterminated,
    #[error("images {0:?} do not form a bijection of 1..5")]
    NotBijective([u8; 5]),
}

/// A permutation stored by its images: `images[i]` is the image of point `i + 1`.
///
/// The derived ordering compares image arrays lexicographically; this is the
/// order used whenever a "least" element is picked.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm5 {
    images: [u8; 5],
}

pub const ID: Perm5 = Perm5 {
    images: [1, 2, 3, 4, 5],
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Perm5 {
    pub const fn identity() -> Perm5 {
        ID
    }

    pub fn from_images(images: [u8; 5]) -> Result<Perm5, PermParseError> {
        let mut seen = [false; 5];
        for &x in &images {
            if !(1..=5).contains(&x) || seen[(x - 1) as usize] {
                return Err(PermParseError::NotBijective(images));
            }
            seen[(x - 1) as usize] = true;
        }
        Ok(Perm5 { images })
    }

    /// Build from disjoint cycles given as slices of points.
    pub fn from_cycles(cycles: &[&[u8]]) -> Result<Perm5, PermParseError> {
        let mut images = [1, 2, 3, 4, 5];
        let mut used = [false; 5];
        for cycle in cycles {
            for &p in cycle.iter() {
                if !(1..=5).contains(&p) {
                    return Err(PermParseError::PointOutOfRange(p as u32));
                }
                if used[(p - 1) as usize] {
                    return Err(PermParseError::Repeated(p));
                }
                used[(p - 1) as usize] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[(p - 1) as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm5 { images })
    }

    pub fn images(&self) -> [u8; 5] {
        self.images
    }

    /// Image of `point` (1-based).
    pub fn apply(&self, point: u8) -> u8 {
        self.images[(point - 1) as usize]
    }

    pub fn is_identity(&self) -> bool {
        *self == ID
    }

    /// Apply `self`, then `other`.
    pub fn compose(&self, other: &Perm5) -> Perm5 {
        let mut images = [0u8; 5];
        for (i, img) in images.iter_mut().enumerate() {
            *img = other.apply(self.images[i]);
        }
        Perm5 { images }
    }

    pub fn inverse(&self) -> Perm5 {
        let mut images = [0u8; 5];
        for (i, &x) in self.images.iter().enumerate() {
            images[(x - 1) as usize] = i as u8 + 1;
        }
        Perm5 { images }
    }

    /// `by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &Perm5) -> Perm5 {
        by.inverse().compose(self).compose(by)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Perm5, b: &Perm5) -> Perm5 {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    pub fn pow(&self, k: u32) -> Perm5 {
        (0..k).fold(ID, |acc, _| acc.compose(self))
    }

    /// Left-to-right product of a sequence.
    pub fn product<'a, I: IntoIterator<Item = &'a Perm5>>(items: I) -> Perm5 {
        items.into_iter().fold(ID, |acc, p| acc.compose(p))
    }

    /// Non-trivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = [false; 5];
        let mut out = Vec::new();
        for start in 1..=5u8 {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut cycle = vec![start];
            seen[(start - 1) as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[(x - 1) as usize] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<u8> = self.cycles().iter().map(|c| c.len() as u8).collect();
        let moved: u8 = parts.iter().sum();
        parts.extend(std::iter::repeat(1).take((5 - moved) as usize));
        CycleType::from_parts(&parts).expect("cycle lengths always form a partition of 5")
    }

    pub fn parity(&self) -> Parity {
        if self.cycle_type().is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn order(&self) -> u32 {
        self.cycle_type().order()
    }

    /// Rank in the lexicographic order of image arrays, in `0..120`.
    pub fn index(&self) -> usize {
        let mut rank = 0usize;
        let mut avail: Vec<u8> = (1..=5).collect();
        for (i, &x) in self.images.iter().enumerate() {
            let pos = avail.iter().position(|&y| y == x).unwrap();
            rank += pos * FACT[4 - i];
            avail.remove(pos);
        }
        rank
    }

    pub fn from_index(mut rank: usize) -> Perm5 {
        assert!(rank < 120, "permutation index out of range");
        let mut avail: Vec<u8> = (1..=5).collect();
        let mut images = [0u8; 5];
        for (i, img) in images.iter_mut().enumerate() {
            let f = FACT[4 - i];
            *img = avail.remove(rank / f);
            rank %= f;
        }
        Perm5 { images }
    }

    /// All 120 permutations in lexicographic order.
    pub fn all() -> impl Iterator<Item = Perm5> {
        (0..120).map(Perm5::from_index)
    }
}

const FACT: [usize; 5] = [1, 1, 2, 6, 24];

impl Default for Perm5 {
    fn default() -> Self {
        ID
    }
}

impl Mul for Perm5 {
    type Output = Perm5;
    fn mul(self, rhs: Perm5) -> Perm5 {
        self.compose(&rhs)
    }
}

impl fmt::Display for Perm5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "Id");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Perm5 {
    type Err = PermParseError;

    fn from_str(s: &str) -> Result<Perm5, PermParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermParseError::Empty);
        }
        if s == "Id" || s == "id" || s == "()" {
            return Ok(ID);
        }
        let mut cycles: Vec<Vec<u8>> = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                ' ' | '\t' => continue,
                '(' => {
                    let mut cycle = Vec::new();
                    let mut num = String::new();
                    let mut closed = false;
                    for c in chars.by_ref() {
                        match c {
                            '0'..='9' => num.push(c),
                            ' ' | ',' | ')' => {
                                if !num.is_empty() {
                                    let v: u32 = num.parse().unwrap_or(u32::MAX);
                                    if !(1..=5).contains(&v) {
                                        return Err(PermParseError::PointOutOfRange(v));
                                    }
                                    cycle.push(v as u8);
                                    num.clear();
                                }
                                if c == ')' {
                                    closed = true;
                                    break;
                                }
                            }
                            other => return Err(PermParseError::Unexpected(other)),
                        }
                    }
                    if !closed {
                        return Err(PermParseError::Unterminated);
                    }
                    cycles.push(cycle);
                }
                other => return Err(PermParseError::Unexpected(other)),
            }
        }
        let refs: Vec<&[u8]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm5::from_cycles(&refs)
    }
}

impl Serialize for Perm5 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Perm5 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Perm5, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for literals known to be valid, e.g. `p("(1 2 3 4 5)")`.
pub fn p(text: &str) -> Perm5 {
    text.parse()
        .unwrap_or_else(|e| panic!("bad permutation literal {text:?}: {e}"))
}

/// Cycle structure of an element of S5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleType {
    Identity,
    Five,
    TwoTwoOne,
    FourOne,
    ThreeOneOne,
    ThreeTwo,
    TwoOneOneOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleTypeError {
    #[error("parts {0:?} do not sum to 5")]
    BadSum(Vec<u8>),
    #[error("parts must be positive")]
    ZeroPart,
}

impl CycleType {
    /// The six non-trivial types in count order: `n1 = [5]`, `n2 = [2,2,1]`,
    /// `n3 = [4,1]`, `n4 = [3,1,1]`, `n5 = [3,2]`, `n6 = [2,1,1,1]`.
    pub const BRANCH: [CycleType; 6] = [
        CycleType::Five,
        CycleType::TwoTwoOne,
        CycleType::FourOne,
        CycleType::ThreeOneOne,
        CycleType::ThreeTwo,
        CycleType::TwoOneOneOne,
    ];

    pub fn parts(&self) -> &'static [u8] {
        match self {
            CycleType::Identity => &[1, 1, 1, 1, 1],
            CycleType::Five => &[5],
            CycleType::TwoTwoOne => &[2, 2, 1],
            CycleType::FourOne => &[4, 1],
            CycleType::ThreeOneOne => &[3, 1, 1],
            CycleType::ThreeTwo => &[3, 2],
            CycleType::TwoOneOneOne => &[2, 1, 1, 1],
        }
    }

    /// Parts may be given in any order; missing fixed points are padded.
    pub fn from_parts(parts: &[u8]) -> Result<CycleType, CycleTypeError> {
        if parts.contains(&0) {
            return Err(CycleTypeError::ZeroPart);
        }
        let sum: u32 = parts.iter().map(|&x| x as u32).sum();
        if sum > 5 || parts.is_empty() {
            return Err(CycleTypeError::BadSum(parts.to_vec()));
        }
        let mut sorted: Vec<u8> = parts.iter().copied().filter(|&x| x > 1).collect();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Ok(match sorted.as_slice() {
            [] => CycleType::Identity,
            [5] => CycleType::Five,
            [4] => CycleType::FourOne,
            [3, 2] => CycleType::ThreeTwo,
            [3] => CycleType::ThreeOneOne,
            [2, 2] => CycleType::TwoTwoOne,
            [2] => CycleType::TwoOneOneOne,
            _ => return Err(CycleTypeError::BadSum(parts.to_vec())),
        })
    }

    /// Contribution to the ramification divisor: sum of `part - 1`.
    pub fn degree(&self) -> u32 {
        self.parts().iter().map(|&x| x as u32 - 1).sum()
    }

    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }

    /// Element order, the lcm of the parts.
    pub fn order(&self) -> u32 {
        match self {
            CycleType::Identity => 1,
            CycleType::Five => 5,
            CycleType::TwoTwoOne | CycleType::TwoOneOneOne => 2,
            CycleType::FourOne => 4,
            CycleType::ThreeOneOne => 3,
            CycleType::ThreeTwo => 6,
        }
    }

    /// Position in [`CycleType::BRANCH`], `None` for the identity.
    pub fn count_index(&self) -> Option<usize> {
        CycleType::BRANCH.iter().position(|t| t == self)
    }

    /// Number of elements of this type in S5.
    pub fn class_size(&self) -> usize {
        match self {
            CycleType::Identity => 1,
            CycleType::TwoOneOneOne => 10,
            CycleType::ThreeOneOne => 20,
            CycleType::FourOne => 30,
            CycleType::Five => 24,
            CycleType::TwoTwoOne => 15,
            CycleType::ThreeTwo => 20,
        }
    }

    /// Least permutation of this type in lexicographic image order.
    pub fn least_element(&self) -> Perm5 {
        Perm5::all().find(|x| x.cycle_type() == *self).unwrap()
    }

    /// Comma-separated parts, the ramification-data spelling (`2,2,1`).
    pub fn spelled(&self) -> String {
        let v: Vec<String> = self.parts().iter().map(|x| x.to_string()).collect();
        v.join(",")
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.spelled())
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
