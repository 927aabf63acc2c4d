use galois5::classify::classify;
use galois5::cover;
use galois5::decomp::decompose_jacobian;
use galois5::genvec::construct_witness;
use galois5::grp::TransitiveClass;
use galois5::ram::{RamData, TypeCounts};
use proptest::prelude::*;

fn data(s: &str) -> RamData {
    s.parse().unwrap()
}

#[test]
fn witness_to_cover_to_decomposition() {
    let d = data("g=1; 3,1,1:2,2,1");
    let r = classify(&d);
    for cls in &r.possible {
        let w = construct_witness(&d, *cls).unwrap();
        let sig = cover::geometric_signature(&w.vector, &d).unwrap();
        let rows = cover::cover_table(&sig, *cls).unwrap();
        let closure = rows.iter().find(|x| x.node == Some("Id")).unwrap();
        let rep = decompose_jacobian(&d, *cls).unwrap();
        assert_eq!(rep.closure_genus.value, Some(closure.genus as i64));
        let stab = cls.point_stabilizer().label;
        let x = rows.iter().find(|x| x.node == Some(stab)).unwrap();
        assert_eq!(Some(x.genus), d.cover_genus());
        assert!(rep.all_pass(), "{rep}");
    }
}

#[test]
fn report_json_shape() {
    let rep = decompose_jacobian(&data("g=0; 4,1:4,1:2,2,1"), TransitiveClass::AffF5).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["group"], "AffF5");
    assert_eq!(v["signature"], "(0;2,4,4)");
    assert_eq!(v["closure_genus"]["value"], 1);
    let f = &v["factors"][2];
    assert_eq!(f["irrep"], "W+W*");
    assert_eq!(f["kind"], "PrymOfIntermediate");
    assert_eq!(f["subgroups"], serde_json::json!(["C5", "D5"]));
    assert_eq!(v["factors"][0]["polarization"], "not_determined");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reports_are_consistent(g in 0u32..4, n in prop::array::uniform6(0u32..3)) {
        let d = RamData::new(g, TypeCounts(n).types());
        for cls in classify(&d).possible {
            let rep = decompose_jacobian(&d, cls).unwrap();
            prop_assert!(rep.all_pass(), "{}", rep);
            let dims: i64 = rep
                .factors
                .iter()
                .map(|f| f.multiplicity as i64 * f.dimension.value.unwrap())
                .sum();
            prop_assert_eq!(Some(dims), rep.closure_genus.value);
        }
    }
}
