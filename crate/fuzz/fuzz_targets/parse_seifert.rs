#![no_main]

use libfuzzer_sys::fuzz_target;
use seifert_core::{parse_seifert, print_seifert};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_seifert(text) {
        Ok(m) => {
            let printed = print_seifert(&m);
            let reparsed = parse_seifert(&printed).expect("printed form parses");
            assert_eq!(reparsed, m);
            assert_eq!(m.normalize().euler_number(), m.euler_number());
        }
        Err(e) => assert!(e.position <= text.len()),
    }
});
