#![no_main]

use libfuzzer_sys::fuzz_target;
use rmtest::algebra::parse_polynomial_with_cap;

// Anything that parses must print and parse back to the same polynomial.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_polynomial_with_cap(text, 1 << 12) {
        let again =
            parse_polynomial_with_cap(&p.to_string(), 1 << 12).expect("printed form parses");
        assert_eq!(p, again);
    }
});
