#![no_main]

use libfuzzer_sys::fuzz_target;
use rmtest::algebra::parse_eval_table_with_cap;

// A parsed table survives printing and interpolation.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = parse_eval_table_with_cap(text, 1 << 12) {
        let again =
            parse_eval_table_with_cap(&t.to_string(), 1 << 12).expect("printed form parses");
        assert_eq!(t, again);
        assert_eq!(t.interpolate().evaluate_all(), t);
    }
});
