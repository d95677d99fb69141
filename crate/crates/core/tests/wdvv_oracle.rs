use gerbegw::base::table::{parse_table, TableFile};
use gerbegw::base::{builtin_theory, CurveClass};
use gerbegw::frobenius::{base_deformed_product, check_wdvv, Deformation};
use gerbegw::Limits;

fn point_direction() -> Deformation {
    Deformation {
        directions: vec![2],
        order: 14,
    }
}

#[test]
fn big_p2_product_is_associative() {
    let p2 = builtin_theory("P2").unwrap();
    let qp = base_deformed_product(
        &p2,
        &CurveClass::degree(4),
        &point_direction(),
        &Limits::default(),
    )
    .unwrap();
    assert!(qp.is_commutative());
    assert!(qp.is_unital());
    assert!(check_wdvv(&qp));
}

#[test]
fn wrong_cubic_count_is_caught() {
    let p2 = builtin_theory("P2").unwrap();
    let mut file = TableFile::export(&p2, &CurveClass::degree(4), 17, 0).unwrap();
    let mut touched = 0;
    for entry in file.invariants.iter_mut().filter(|e| e.beta == [3]) {
        // scale every degree-3 invariant as if N_3 were 13
        let value: i64 = entry.value.parse().unwrap();
        entry.value = (value / 12 * 13).to_string();
        touched += 1;
    }
    assert!(touched > 0);
    let corrupted = parse_table(&serde_json::to_string(&file).unwrap()).unwrap();
    let qp = base_deformed_product(
        &corrupted,
        &CurveClass::degree(4),
        &point_direction(),
        &Limits::default(),
    )
    .unwrap();
    assert!(!check_wdvv(&qp));

    let honest = parse_table(
        &serde_json::to_string(&TableFile::export(&p2, &CurveClass::degree(4), 17, 0).unwrap())
            .unwrap(),
    )
    .unwrap();
    let qp = base_deformed_product(
        &honest,
        &CurveClass::degree(4),
        &point_direction(),
        &Limits::default(),
    )
    .unwrap();
    assert!(check_wdvv(&qp));
}
