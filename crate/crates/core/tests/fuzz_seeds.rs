//! The checked-in fuzz seed corpora must parse and round-trip, so the fuzzers
//! start from inputs that reach past the parsers.

use std::fs;
use std::path::PathBuf;

use treealpha::io::{self, GraphFile};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (
                path.display().to_string(),
                fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

macro_rules! json_round_trip {
    ($name:ident, $parser:ident) => {
        #[test]
        fn $name() {
            for (path, text) in seeds(stringify!($parser)) {
                let value = io::$parser(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
                let again = io::to_json(&value).unwrap();
                assert_eq!(io::$parser(&again).unwrap(), value, "{path}");
            }
        }
    };
}

json_round_trip!(instance_seeds, parse_instance);
json_round_trip!(family_seeds, parse_family);
json_round_trip!(td_seeds, parse_td);
json_round_trip!(layering_seeds, parse_layering);
json_round_trip!(cover_seeds, parse_cover);
json_round_trip!(solution_seeds, parse_solution);
json_round_trip!(report_seeds, parse_report);
json_round_trip!(decomposition_seeds, parse_decomposition);

#[test]
fn graph_seeds() {
    for (path, text) in seeds("parse_graph") {
        let g = io::parse_graph(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
        assert_eq!(
            io::parse_graph(&io::to_json(&GraphFile::from(&g)).unwrap()).unwrap(),
            g,
            "{path}"
        );
    }
}

#[test]
fn dimacs_seeds() {
    for (path, text) in seeds("parse_dimacs") {
        let g = io::parse_dimacs(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
        assert_eq!(
            io::parse_dimacs(&io::write_dimacs(&g)).unwrap(),
            g,
            "{path}"
        );
    }
}
