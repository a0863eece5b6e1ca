#![no_main]

use libfuzzer_sys::fuzz_target;
use uniplan::domains::ROBOT_BABY;
use uniplan::nadl;
use uniplan::state::{format_state, parse_state};

fuzz_target!(|text: &str| {
    let vars = nadl::parse(ROBOT_BABY).unwrap().vars;
    if let Ok(values) = parse_state(text, &vars) {
        assert_eq!(parse_state(&format_state(&values, &vars), &vars), Ok(values));
    }
});
