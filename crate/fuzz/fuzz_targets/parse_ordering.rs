#![no_main]

use libfuzzer_sys::fuzz_target;
use rmtest::algebra::{parse_u32_list, Field};
use rmtest::genbasis::FieldOrdering;

// First byte picks the field, the rest is a comma-separated ordering.
fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else {
        return;
    };
    let q = [2u64, 3, 5, 7][usize::from(pick) % 4];
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let Ok(xi) = parse_u32_list(text) else { return };
    if let Ok(ord) = FieldOrdering::new(Field::new(q).unwrap(), xi.clone()) {
        let mut sorted = xi;
        sorted.sort_unstable();
        assert_eq!(sorted, (0..q as u32).collect::<Vec<_>>());
        assert_eq!(ord.reversed().reversed(), ord);
    }
});
