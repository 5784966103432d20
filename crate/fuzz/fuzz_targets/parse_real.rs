#![no_main]

use angmom_cli::parse_real;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_real(s) {
        assert!(x.is_finite());
        let again = parse_real(&format!("{x:e}")).expect("formatted value must parse");
        assert_eq!(again.to_bits(), x.to_bits());
    }
});
