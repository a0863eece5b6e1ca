#![no_main]

use libfuzzer_sys::fuzz_target;
use uniplan::planfile::PlanFile;

fuzz_target!(|text: &str| {
    if let Ok(mut pf) = PlanFile::parse(text) {
        let zeros = vec![0; pf.vars.len()];
        _ = pf.query(&zeros);
    }
});
