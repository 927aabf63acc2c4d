//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;

use galois5::affine::{form, AffineForm};
use galois5::chars::{self, Decomposition};
use galois5::classify::classify;
use galois5::cover;
use galois5::decomp::{self, FactorKind, PolarizationType};
use galois5::genvec::{construct_witness, enumerate_monodromy, validate, DEFAULT_BUDGET};
use galois5::grp::TransitiveClass::{self, *};
use galois5::perm5::CycleType;
use galois5::ram::{multisets, RamData, TypeCounts};

type Outcome = Result<String, String>;

fn classification_grid() -> Vec<RamData> {
    let mut grid = Vec::new();
    for c in multisets(4, 12) {
        grid.push(RamData::new(0, c.types()));
        grid.push(RamData::new(1, c.types()));
    }
    for c in multisets(5, 14) {
        if c.total() == 5 || c.degree() > 12 {
            grid.push(RamData::new(0, c.types()));
        }
    }
    grid
}

/// Counts `n_i <= nmax` over the types the group contains, paired with each
/// `g <= gmax` for which the group is a monodromy group.
fn admissible(cls: TransitiveClass, nmax: u32, gmax: u32) -> Vec<(u32, TypeCounts)> {
    let allowed: Vec<usize> = (0..6)
        .filter(|i| cls.admits(CycleType::BRANCH[*i]))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0u32; allowed.len()];
    loop {
        let mut n = [0u32; 6];
        for (k, i) in allowed.iter().enumerate() {
            n[*i] = idx[k];
        }
        let n = TypeCounts(n);
        for g in 0..=gmax {
            if classify(&RamData::new(g, n.types())).allows(cls) {
                out.push((g, n));
            }
        }
        let mut k = 0;
        while k < idx.len() && idx[k] == nmax {
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return out;
        }
        idx[k] += 1;
    }
}

fn criterion_1() -> Outcome {
    let grid = classification_grid();
    let mut bad = Vec::new();
    for d in &grid {
        let found = enumerate_monodromy(d, DEFAULT_BUDGET).map_err(|e| format!("{d}: {e}"))?;
        if found != classify(d).possible {
            bad.push(d.to_string());
        }
    }
    if bad.is_empty() {
        Ok(format!("{} ramification data, classifier equals exhaustive search", grid.len()))
    } else {
        Err(format!("{} disagreements, first {}", bad.len(), bad[0]))
    }
}

fn criterion_2() -> Outcome {
    let a5 = cover::closure_genus_of(1, &[2], 60);
    let aff = cover::closure_genus_of(0, &[4, 4, 2], 20);
    let rejected = cover::closure_genus_of(0, &[2, 2, 5], 60);
    let raw = (60 * (2 * 0 - 2) + 30 + 30 + 48 + 2) / 2;
    if a5 == Ok(16) && aff == Ok(1) && rejected.is_err() {
        Ok(format!("A5 (1;2) -> 16, AffF5 (0;4,4,2) -> 1, A5 (0;2,2,5) rejected (formal value {raw})"))
    } else {
        Err(format!("got {a5:?}, {aff:?}, {rejected:?}"))
    }
}

fn criterion_3() -> Outcome {
    let mut equalities = 0usize;
    for cls in TransitiveClass::ALL {
        let g = cls.group();
        for (bg, n) in admissible(cls, 3, 3) {
            let d = RamData::new(bg, n.types());
            let w = construct_witness(&d, cls).map_err(|e| e.to_string())?;
            let sig = cover::geometric_signature(&w.vector, &d).map_err(|e| e.to_string())?;
            for node in &cls.lattice().nodes {
                let ic = cover::intermediate(&sig, g, &node.subgroup).map_err(|e| e.to_string())?;
                let got = (ic.genus as i64, ic.deg_ram_from_closure as i64, ic.deg_ram_to_base as i64);
                let expected = cover::table_form(cls, node.label)
                    .map_err(|e| e.to_string())?
                    .eval(bg, &n);
                if expected != Some(got) {
                    return Err(format!("{d} {cls} {}: engine {got:?}, table {expected:?}", node.label));
                }
                equalities += 3;
            }
            for (c, lower, upper, f) in cover::BETWEEN_TABLE {
                if *c != cls {
                    continue;
                }
                let lat = cls.lattice();
                let (h, top) = (&lat.node(lower).unwrap().subgroup, &lat.node(upper).unwrap().subgroup);
                let m = cover::intermediate_between(&sig, g, h, top).map_err(|e| e.to_string())?;
                if form(f).eval_int(bg, &n) != Some(m.deg_ram as i64) {
                    return Err(format!("{d} {cls} {lower}->{upper}: engine {}, equation {f}", m.deg_ram));
                }
                equalities += 1;
            }
        }
    }
    Ok(format!("{equalities} table entries reproduced"))
}

const QUOTED_RHO: &[(TransitiveClass, &str, &str)] = &[
    (C5, "Id", "U + V"),
    (C5, "C5", "U"),
    (D5, "C5", "U + W"),
    (D5, "C2", "U + V"),
    (D5, "D5", "U"),
    (AffF5, "D5", "U + U~"),
    (AffF5, "C5", "U + U~ + W+W*"),
    (AffF5, "C4", "U + V"),
    (A5, "A4", "U + V"),
    (A5, "D5", "U + W"),
    (A5, "C5", "U + W + Alt2V"),
    (S5, "AffF5", "U + W~"),
    (S5, "A5", "U + U~"),
    (S5, "S4", "U + V"),
    (S5, "D6", "U + V + W"),
    (S5, "D5", "U + U~ + W + W~"),
    (S5, "A4", "U + U~ + V + V~"),
    (S5, "S3", "U + 2V + Alt2V + W"),
];

fn criterion_4() -> Outcome {
    for (cls, h, text) in QUOTED_RHO {
        let got = chars::rho(*cls, h).map_err(|e| e.to_string())?;
        let want = Decomposition::parse(*cls, text).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("{cls} rho_{h} = {got}, quoted {want}"));
        }
    }
    let mut pairs = 0;
    for cls in TransitiveClass::ALL {
        chars::table(cls).verify();
        for node in &cls.lattice().nodes {
            for (lhs, rhs) in chars::frobenius_pairs(cls, &node.subgroup).map_err(|e| e.to_string())? {
                if lhs != rhs {
                    return Err(format!("Frobenius reciprocity fails for {cls} {}", node.label));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{} quoted decompositions, {pairs} reciprocity equalities, orthogonality verified",
        QUOTED_RHO.len()
    ))
}

fn criterion_5() -> Outcome {
    let expected_l: [(TransitiveClass, &[u32]); 5] = [
        (C5, &[1, 1]),
        (D5, &[1, 1, 2]),
        (AffF5, &[1, 1, 1, 4]),
        (A5, &[1, 4, 5, 3]),
        (S5, &[1, 1, 4, 4, 6, 5, 5]),
    ];
    for (cls, ls) in expected_l {
        let r = decomp::report(cls, None, &TypeCounts::default()).map_err(|e| e.to_string())?;
        let got: Vec<u32> = r.factors.iter().map(|f| f.multiplicity).collect();
        if got != ls {
            return Err(format!("{cls} multiplicities {got:?}"));
        }
        let total: AffineForm = r
            .factors
            .iter()
            .map(|f| f.dimension.form * f.multiplicity as i64)
            .sum();
        if total != r.closure_genus.form {
            return Err(format!("{cls}: sum {total} but closure genus {}", r.closure_genus.form));
        }
    }
    let d5 = form("g") + form("g + n2/2 - 1") + 2 * form("4g + 2n1 + n2 - 4");
    if d5 != cover::derived_forms(D5, "Id").unwrap().genus || d5 != form("10g + 4n1 + 5n2/2 - 9") {
        return Err("D5 closed form".into());
    }
    Ok("genus identity holds symbolically for all five groups".into())
}

/// The map whose ramification decides the stated case split.
fn split_map(cls: TransitiveClass, irrep: &str) -> Option<(&'static str, &'static str)> {
    match decomp::identify(cls, irrep).ok()? {
        FactorKind::PrymOfIntermediate { sub, over } => Some((sub, over)),
        _ => None,
    }
}

fn criterion_6() -> Outcome {
    let mut cases = 0;
    for cls in TransitiveClass::ALL {
        for (g, n) in admissible(cls, 3, 3) {
            for s in decomp::stated_factors(cls) {
                if s.polarization.is_empty() {
                    continue;
                }
                let pol = decomp::polarization_of(cls, s.irrep, Some(g), &n);
                let PolarizationType::Type(es) = &pol else {
                    return Err(format!("{cls} {}: no type", s.irrep));
                };
                let len: i64 = es.iter().map(|e| e.count_value.unwrap_or(-1)).sum();
                let dim = form(s.dimension).eval_int(g, &n);
                if es.iter().any(|e| e.count_value.is_none_or(|c| c < 0)) || Some(len) != dim {
                    return Err(format!("{cls} {} at g={g} {n}: {pol} vs dim {dim:?}", s.irrep));
                }
                if let (Some((k, when)), Some((sub, over))) = (s.kernel, split_map(cls, s.irrep)) {
                    let ram = cover::derived_between_form(cls, sub, over).unwrap();
                    let etale = ram.eval_int(g, &n) == Some(0);
                    if etale != when.holds(&n) {
                        return Err(format!("{cls} {}: case split disagrees with ramification at g={g} {n}", s.irrep));
                    }
                    let kernel = decomp::kernel_order(cls, sub, over, g, &n).unwrap();
                    if kernel != if etale { k } else { 1 } {
                        return Err(format!("{cls} {}: kernel order {kernel} at g={g} {n}", s.irrep));
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} stated types have length equal to the dimension"))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for d in classification_grid() {
        for cls in classify(&d).possible {
            let w = construct_witness(&d, cls).map_err(|e| format!("{d} {cls}: {e}"))?;
            let ok = validate(&w.vector, &d).is_ok_and(|r| r.is_valid())
                && w.vector.generated() == *cls.group();
            if !ok {
                return Err(format!("invalid witness for {d} {cls}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} witnesses validate"))
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for irrep in ["V~", "Alt2V", "W"] {
        let kind = decomp::identify(S5, irrep).unwrap();
        let FactorKind::PrymOfPair { meet, first, second } = kind else {
            return Err(format!("{irrep} is not a pair factor"));
        };
        let dim = decomp::dimension_form(S5, &kind).unwrap();
        let formula = decomp::pair_formula(S5, meet, first, second).unwrap();
        let mut bad = 0;
        for (g, n) in admissible(S5, 2, 3) {
            checked += 1;
            if dim.eval(g, &n) != formula.eval(g, &n) {
                bad += 1;
            }
        }
        if bad > 0 {
            failures.push(format!(
                "{irrep} ({meet}; {first}, {second}): {bad} cases differ, formula minus dimension = {}",
                formula - dim
            ));
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} evaluations agree"))
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("classification equals exhaustive search", criterion_1),
        ("closure genus point values", criterion_2),
        ("intermediate covering tables", criterion_3),
        ("character identities", criterion_4),
        ("symbolic genus identity", criterion_5),
        ("polarization bookkeeping", criterion_6),
        ("witness soundness", criterion_7),
        ("pair dimension formula", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} ({:.1?})", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
