#![no_main]

use libfuzzer_sys::fuzz_target;
use uniplan::bdd::BddManager;

fuzz_target!(|text: &str| {
    let mut mgr = BddManager::new(16);
    if let Ok(f) = mgr.load(text) {
        mgr.audit(f).expect("loaded diagrams are reduced and ordered");
        let dumped = mgr.dump(f).unwrap();
        assert_eq!(mgr.load(&dumped).unwrap(), f);
    }
});
