#![no_main]

use angmom_cli::{parse_k_list, MAX_LIST_LEN};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(ks) = parse_k_list(s) {
        assert!(ks.len() <= MAX_LIST_LEN);
        assert!(ks.iter().all(|&k| k > 0));
        let joined = ks.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_k_list(&joined).expect("canonical list must parse"), ks);
    }
});
