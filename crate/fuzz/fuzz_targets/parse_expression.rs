#![no_main]

use deforma_core::expr::parse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(tree) = parse(text) else { return };
    // Accepted input must render to text that parses again, and evaluation
    // must stay panic-free (IEEE inf/NaN are fine).
    let rendered = tree.to_string();
    let again = parse(&rendered).expect("rendered tree failed to re-parse");
    for x in [-2.0, 0.0, 0.5, 3.0] {
        let a = tree.eval(x);
        let b = again.eval(x);
        assert!(
            a == b || (a.is_nan() && b.is_nan()),
            "re-parsed tree changed value at {x}: {a} vs {b}"
        );
    }
});
