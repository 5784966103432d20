#![no_main]

use angmom_cli::Cli;
use clap::Parser;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let argv = std::iter::once("angmom").chain(s.split('\0'));
    let _ = Cli::try_parse_from(argv);
});
