//! Replays the checked-in fuzz seeds through the same checks as the fuzz
//! targets.

use std::fs;
use std::path::PathBuf;

use rmtest::algebra::{
    parse_eval_table_with_cap, parse_polynomial_with_cap, parse_u32_list, Field,
};
use rmtest::genbasis::FieldOrdering;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<Vec<u8>> = fs::read_dir(dir)
        .unwrap()
        .map(|e| fs::read(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn polynomial_seeds_round_trip() {
    for data in seeds("parse_polynomial") {
        let p = parse_polynomial_with_cap(std::str::from_utf8(&data).unwrap(), 1 << 12).unwrap();
        assert_eq!(
            parse_polynomial_with_cap(&p.to_string(), 1 << 12).unwrap(),
            p
        );
    }
}

#[test]
fn eval_table_seeds_round_trip() {
    for data in seeds("parse_eval_table") {
        let t = parse_eval_table_with_cap(std::str::from_utf8(&data).unwrap(), 1 << 12).unwrap();
        assert_eq!(
            parse_eval_table_with_cap(&t.to_string(), 1 << 12).unwrap(),
            t
        );
        assert_eq!(t.interpolate().evaluate_all(), t);
    }
}

#[test]
fn ordering_seeds_are_permutations() {
    for data in seeds("parse_ordering") {
        let q = [2u64, 3, 5, 7][usize::from(data[0]) % 4];
        let xi = parse_u32_list(std::str::from_utf8(&data[1..]).unwrap()).unwrap();
        let ord = FieldOrdering::new(Field::new(q).unwrap(), xi).unwrap();
        assert_eq!(ord.reversed().reversed(), ord);
    }
}
