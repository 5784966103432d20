#![no_main]

use angmom_cli::{parse_real_list, MAX_LIST_LEN};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(xs) = parse_real_list(s) {
        assert!(xs.len() <= MAX_LIST_LEN);
        assert!(xs.iter().all(|x| x.is_finite()));
    }
});
