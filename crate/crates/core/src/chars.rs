//! Rational character tables of the five transitive groups, permutation
//! characters on cosets and their decomposition into rational irreducibles.
//!
//! In each of the five groups two elements are rationally conjugate exactly
//! when they have the same cycle type, so columns are indexed by cycle type.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::grp::{GroupError, Subgroup, TransitiveClass};
use crate::perm5::{p, CycleType, Perm5};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("character {values:?} of {group} is not a combination of rational irreducibles")]
    NotDecomposable { group: TransitiveClass, values: Vec<i64> },
    #[error("{group} has no irreducible labelled {label}")]
    UnknownIrrep { group: TransitiveClass, label: String },
    #[error("pair character has a negative coefficient on {0}")]
    NegativeCoefficient(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalClass {
    pub representative: Perm5,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalIrrep {
    pub label: &'static str,
    pub values: Vec<i64>,
    /// `<chi, chi>`: Schur index squared times the number of Galois conjugates.
    pub norm: i64,
    pub schur_index: u32,
    /// Degree of one complex constituent.
    pub constituent_degree: u32,
}

impl RationalIrrep {
    pub fn degree(&self) -> i64 {
        self.values[0]
    }

    /// `l = dim V / m` for a complex constituent `V`.
    pub fn l(&self) -> u32 {
        self.constituent_degree / self.schur_index
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalCharacterTable {
    pub group: TransitiveClass,
    pub classes: Vec<RationalClass>,
    pub rows: Vec<RationalIrrep>,
}

/// Values of a class function on the rational classes of a group, in
/// table column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterVector {
    pub group: TransitiveClass,
    pub values: Vec<i64>,
}

type RowSpec = (&'static str, &'static [i64], u32);

fn spec(cls: TransitiveClass) -> (&'static [&'static str], Vec<RowSpec>) {
    match cls {
        TransitiveClass::C5 => (&["()", "(1 2 3 4 5)"], vec![("U", &[1, 1], 1), ("V", &[4, -1], 1)]),
        TransitiveClass::D5 => (
            &["()", "(1 2 3 4 5)", "(2 5)(3 4)"],
            vec![("U", &[1, 1, 1], 1), ("W", &[1, 1, -1], 1), ("V", &[4, -1, 0], 2)],
        ),
        TransitiveClass::AffF5 => (
            &["()", "(1 2 3 4 5)", "(2 3 5 4)", "(1 4)(2 3)"],
            vec![
                ("U", &[1, 1, 1, 1], 1),
                ("U~", &[1, 1, -1, 1], 1),
                ("W+W*", &[2, 2, 0, -2], 1),
                ("V", &[4, -1, 0, 0], 4),
            ],
        ),
        TransitiveClass::A5 => (
            &["()", "(1 2 3)", "(1 2)(3 4)", "(1 2 3 4 5)"],
            vec![
                ("U", &[1, 1, 1, 1], 1),
                ("V", &[4, 1, 0, -1], 4),
                ("W", &[5, -1, 1, 0], 5),
                ("Alt2V", &[6, 0, -2, 1], 3),
            ],
        ),
        TransitiveClass::S5 => (
            &[
                "()",
                "(1 2)",
                "(1 2 3)",
                "(1 2 3 4)",
                "(1 2 3 4 5)",
                "(1 2)(3 4)",
                "(1 2)(3 4 5)",
            ],
            vec![
                ("U", &[1, 1, 1, 1, 1, 1, 1], 1),
                ("U~", &[1, -1, 1, -1, 1, 1, -1], 1),
                ("V", &[4, 2, 1, 0, -1, 0, -1], 4),
                ("V~", &[4, -2, 1, 0, -1, 0, 1], 4),
                ("Alt2V", &[6, 0, 0, 0, 1, -2, 0], 6),
                ("W", &[5, 1, -1, -1, 0, 1, 1], 5),
                ("W~", &[5, -1, -1, 1, 0, 1, -1], 5),
            ],
        ),
    }
}

fn build(cls: TransitiveClass) -> RationalCharacterTable {
    let g = cls.group();
    let (reps, rows) = spec(cls);
    let classes: Vec<RationalClass> = reps
        .iter()
        .map(|r| {
            let representative = p(r);
            assert!(g.contains(&representative), "{r} not in {cls}");
            RationalClass {
                representative,
                size: g.elements_of_type(representative.cycle_type()).len(),
            }
        })
        .collect();
    let rows = rows
        .into_iter()
        .map(|(label, values, constituent_degree)| RationalIrrep {
            label,
            values: values.to_vec(),
            norm: values[0] / constituent_degree as i64,
            schur_index: 1,
            constituent_degree,
        })
        .collect();
    let t = RationalCharacterTable {
        group: cls,
        classes,
        rows,
    };
    t.verify();
    t
}

impl RationalCharacterTable {
    pub fn order(&self) -> i64 {
        self.group.order() as i64
    }

    /// `sum |K| a(K) b(K)`, i.e. `|G| <a, b>`.
    fn weighted(&self, a: &[i64], b: &[i64]) -> i64 {
        self.classes
            .iter()
            .zip(a.iter().zip(b))
            .map(|(k, (x, y))| k.size as i64 * x * y)
            .sum()
    }

    /// Class equation, row orthogonality with the stored norms and column
    /// orthogonality `sum_i chi_i(x) chi_i(y) / norm_i = delta |G| / |K_x|`.
    pub fn verify(&self) {
        let n = self.order();
        assert_eq!(self.classes.iter().map(|k| k.size as i64).sum::<i64>(), n);
        assert_eq!(self.classes.len(), self.rows.len());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let want = if i == j { a.norm * n } else { 0 };
                assert_eq!(self.weighted(&a.values, &b.values), want, "{} {}", a.label, b.label);
            }
        }
        for (x, kx) in self.classes.iter().enumerate() {
            for y in 0..self.classes.len() {
                let sum: num_rational::Ratio<i64> = self
                    .rows
                    .iter()
                    .map(|r| num_rational::Ratio::new(r.values[x] * r.values[y], r.norm))
                    .sum();
                let want = if x == y {
                    num_rational::Ratio::new(n, kx.size as i64)
                } else {
                    0.into()
                };
                assert_eq!(sum, want, "columns {x} {y} of {}", self.group);
            }
        }
    }

    /// Column of the rational class containing `x`.
    pub fn class_of(&self, x: &Perm5) -> Option<usize> {
        let t = x.cycle_type();
        self.classes
            .iter()
            .position(|k| k.representative.cycle_type() == t)
    }

    pub fn row(&self, label: &str) -> Result<&RationalIrrep, CharError> {
        self.rows
            .iter()
            .find(|r| r.label == label)
            .ok_or_else(|| CharError::UnknownIrrep {
                group: self.group,
                label: label.to_string(),
            })
    }

    pub fn index_of(&self, label: &str) -> Result<usize, CharError> {
        let r = self.row(label)?;
        Ok(self.rows.iter().position(|x| x.label == r.label).unwrap())
    }
}

/// The verified rational character table of `cls`.
pub fn table(cls: TransitiveClass) -> &'static RationalCharacterTable {
    static TABLES: OnceLock<Vec<RationalCharacterTable>> = OnceLock::new();
    &TABLES.get_or_init(|| TransitiveClass::ALL.iter().map(|c| build(*c)).collect())[cls as usize]
}

/// Permutation character of `G` on the right cosets of `h`: the number of
/// cosets fixed by each class representative.
pub fn induced_from(cls: TransitiveClass, h: &Subgroup) -> Result<CharacterVector, CharError> {
    let g = cls.group();
    if !h.is_subgroup_of(g) {
        return Err(GroupError::UnknownSubgroup {
            group: cls,
            label: format!("{h:?}"),
        }
        .into());
    }
    let t = table(cls);
    let values = t
        .classes
        .iter()
        .map(|k| {
            let x = k.representative;
            let fixing = g
                .elements()
                .iter()
                .filter(|y| h.contains(&x.conjugate(&y.inverse())))
                .count();
            (fixing / h.order()) as i64
        })
        .collect();
    Ok(CharacterVector { group: cls, values })
}

/// `rho_H`, the permutation character on `H\G` for the lattice node `label`.
pub fn induced_trivial(cls: TransitiveClass, label: &str) -> Result<CharacterVector, CharError> {
    induced_from(cls, &cls.lattice().node(label)?.subgroup)
}

/// Coefficients of a class function in the rational irreducible basis, in
/// table row order. Coefficients may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub group: TransitiveClass,
    pub coefficients: Vec<i64>,
}

impl Decomposition {
    pub fn of(&self, label: &str) -> i64 {
        let t = table(self.group);
        t.index_of(label).map_or(0, |i| self.coefficients[i])
    }

    /// `(label, coefficient)` for every nonzero coefficient.
    pub fn terms(&self) -> Vec<(&'static str, i64)> {
        table(self.group)
            .rows
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| **c != 0)
            .map(|(r, c)| (r.label, *c))
            .collect()
    }

    pub fn degree(&self) -> i64 {
        table(self.group)
            .rows
            .iter()
            .zip(&self.coefficients)
            .map(|(r, c)| r.degree() * c)
            .sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|c| *c >= 0)
    }

    pub fn minus(&self, other: &Decomposition) -> Decomposition {
        Decomposition {
            group: self.group,
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Parses `"U + 2V + Alt2V"`; terms are separated by `" + "` since
    /// `W+W*` is a single label.
    pub fn parse(group: TransitiveClass, text: &str) -> Result<Decomposition, CharError> {
        let t = table(group);
        let mut coefficients = vec![0; t.rows.len()];
        for term in text.split(" + ").map(str::trim).filter(|s| !s.is_empty()) {
            let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let k = if split == 0 { 1 } else { term[..split].parse().unwrap() };
            coefficients[t.index_of(&term[split..])?] += k;
        }
        Ok(Decomposition {
            group,
            coefficients,
        })
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(l, c)| if c == 1 { l.to_string() } else { format!("{c}{l}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Frobenius decomposition: `<chi, chi_i> / norm_i` for every row, checked
/// by reconstruction.
pub fn decompose(chi: &CharacterVector) -> Result<Decomposition, CharError> {
    let t = table(chi.group);
    let fail = || CharError::NotDecomposable {
        group: chi.group,
        values: chi.values.clone(),
    };
    if chi.values.len() != t.classes.len() {
        return Err(fail());
    }
    let mut coefficients = Vec::new();
    for r in &t.rows {
        let w = t.weighted(&chi.values, &r.values);
        let den = t.order() * r.norm;
        if w % den != 0 {
            return Err(fail());
        }
        coefficients.push(w / den);
    }
    let rebuilt: Vec<i64> = (0..t.classes.len())
        .map(|k| t.rows.iter().zip(&coefficients).map(|(r, c)| r.values[k] * c).sum())
        .collect();
    if rebuilt != chi.values {
        return Err(fail());
    }
    Ok(Decomposition {
        group: chi.group,
        coefficients,
    })
}

/// `rho_H` decomposed.
pub fn rho(cls: TransitiveClass, label: &str) -> Result<Decomposition, CharError> {
    decompose(&induced_trivial(cls, label)?)
}

pub fn multiplicity_l(cls: TransitiveClass, label: &str) -> Result<u32, CharError> {
    Ok(table(cls).row(label)?.l())
}

/// Coefficients of `chi_M + chi_N - chi_N1 - chi_N2` with `M = N1 ∩ N2` and
/// `N = <N1, N2>`.
pub fn pair_prym_coefficients(
    cls: TransitiveClass,
    n1: &str,
    n2: &str,
) -> Result<Decomposition, CharError> {
    let lat = cls.lattice();
    let (a, b) = (&lat.node(n1)?.subgroup, &lat.node(n2)?.subgroup);
    let m = a.intersection(b);
    let n = a.join(b);
    let d = |h: &Subgroup| induced_from(cls, h).and_then(|c| decompose(&c));
    let (dm, dn, da, db) = (d(&m)?, d(&n)?, d(a)?, d(b)?);
    let out = Decomposition {
        group: cls,
        coefficients: (0..dm.coefficients.len())
            .map(|i| dm.coefficients[i] + dn.coefficients[i] - da.coefficients[i] - db.coefficients[i])
            .collect(),
    };
    if let Some((l, _)) = out.terms().into_iter().find(|(_, c)| *c < 0) {
        return Err(CharError::NegativeCoefficient(l));
    }
    Ok(out)
}

/// `<Ind_H^G 1, chi>_G` and `<1, Res_H chi>_H` for every rational irreducible
/// `chi`, as `|G|`- and `|H|`-scaled integers divided out.
pub fn frobenius_pairs(cls: TransitiveClass, h: &Subgroup) -> Result<Vec<(i64, i64)>, CharError> {
    let t = table(cls);
    let ind = induced_from(cls, h)?;
    Ok(t.rows
        .iter()
        .map(|r| {
            let lhs = t.weighted(&ind.values, &r.values) / t.order();
            let res: i64 = h
                .elements()
                .iter()
                .map(|x| r.values[t.class_of(x).unwrap()])
                .sum();
            (lhs, res / h.order() as i64)
        })
        .collect())
}

/// The cycle type of each column.
pub fn column_types(cls: TransitiveClass) -> Vec<CycleType> {
    table(cls)
        .classes
        .iter()
        .map(|k| k.representative.cycle_type())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::TransitiveClass::*;

    #[test]
    fn tables_verify() {
        for cls in TransitiveClass::ALL {
            let t = table(cls);
            assert_eq!(t.rows[0].values.iter().all(|v| *v == 1), true);
        }
        assert_eq!(table(A5).row("Alt2V").unwrap().norm, 2);
        assert_eq!(table(C5).row("V").unwrap().norm, 4);
    }

    #[test]
    fn permutation_characters() {
        assert_eq!(induced_trivial(D5, "C5").unwrap().values, vec![2, 2, 0]);
        assert_eq!(induced_trivial(D5, "D5").unwrap().values, vec![1, 1, 1]);
        let s4 = induced_trivial(S5, "S4").unwrap();
        assert_eq!((s4.values[0], s4.values[1]), (5, 3));
    }

    #[test]
    fn l_values() {
        let got: Vec<Vec<u32>> = TransitiveClass::ALL
            .iter()
            .map(|c| table(*c).rows.iter().map(|r| r.l()).collect())
            .collect();
        assert_eq!(
            got,
            vec![
                vec![1, 1],
                vec![1, 1, 2],
                vec![1, 1, 1, 4],
                vec![1, 4, 5, 3],
                vec![1, 1, 4, 4, 6, 5, 5]
            ]
        );
    }

    #[test]
    fn decomposition_rejects_non_characters() {
        let bad = CharacterVector {
            group: D5,
            values: vec![1, 0, 0],
        };
        assert!(matches!(decompose(&bad), Err(CharError::NotDecomposable { .. })));
    }

    #[test]
    fn pair_coefficients() {
        let s = |a, b| pair_prym_coefficients(S5, a, b).unwrap().to_string();
        assert_eq!(s("S4", "A5"), "V~");
        assert_eq!(s("D6", "S4"), "Alt2V");
        assert_eq!(s("A5", "AffF5"), "W");
        assert_eq!(s("S4", "S4"), "0");
    }

    #[test]
    fn display_and_parse() {
        let d = rho(S5, "S3").unwrap();
        assert_eq!(d.to_string(), "U + 2V + Alt2V + W");
        assert_eq!(Decomposition::parse(S5, "U + 2V + Alt2V + W").unwrap(), d);
        let aff = rho(AffF5, "C5").unwrap();
        assert_eq!(Decomposition::parse(AffF5, &aff.to_string()).unwrap(), aff);
        assert_eq!(d.degree(), 20);
    }
}
