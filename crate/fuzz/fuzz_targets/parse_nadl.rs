#![no_main]

use libfuzzer_sys::fuzz_target;
use uniplan::nadl;

fuzz_target!(|text: &str| {
    if let Ok(d) = nadl::parse(text) {
        _ = nadl::validate(&d);
        let printed = nadl::print_domain(&d);
        let again = nadl::parse(&printed).expect("printed domains parse");
        assert_eq!(again.without_positions(), d.without_positions());
    }
});
