//! Scalars that the statements leave unpinned (the class of lambda, the
//! orientation sign e) as realized by this implementation at seed 1. They
//! guard against silent drift; a change here is not by itself an error in
//! the mathematics. Set UPDATE_GOLDEN=1 to rewrite the file.

use std::path::Path;

use hodgeform::verify::{check_fixture_formulas, check_middledegree, fixture};
use hodgeform::Field;

const HEADER: &str = "# implementation-realized, unpinned\n";

fn realized() -> String {
    let mut out = String::from(HEADER);
    for name in ["sigma:2", "simplex_boundary:4", "cycle:4", "pentagon", "stacked:4:1"] {
        let o = check_middledegree(&fixture(name).unwrap(), Field::Rational, 1).unwrap();
        assert!(o.is_verified(), "{name}: {o:?}");
        out.push_str(&format!("lambda {name} {}\n", o.evidence["lambda"]));
    }
    for (name, key) in [("simplex_boundary:2", "epsilon"), ("simplex_boundary:3", "epsilon"), ("sigma:2", "signs"), ("sigma:3", "signs")] {
        let o = check_fixture_formulas(name, Field::Rational, 1).unwrap();
        assert!(o.is_verified(), "{name}: {o:?}");
        out.push_str(&format!("epsilon {name} {}\n", o.evidence[key]));
    }
    out
}

#[test]
fn realized_scalars_match_golden_file() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/realized.txt");
    let now = realized();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &now).unwrap();
    }
    let stored = std::fs::read_to_string(&path).expect("golden file present");
    assert_eq!(now, stored);
}
