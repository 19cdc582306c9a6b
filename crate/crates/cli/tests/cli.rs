use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_treealpha"));
    c.env_remove("TREEALPHA_MAX_STATES");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }
}

fn ok(args: &[&str]) -> Output {
    let o = run(args);
    assert_eq!(
        code(&o),
        0,
        "{args:?}\nstdout: {}\nstderr: {}",
        stdout(&o),
        stderr(&o)
    );
    o
}

fn generate(dir: &Dir, name: &str, extra: &[&str]) -> String {
    let out = dir.s(name);
    let mut args = vec!["generate", "-o", &out];
    args.extend_from_slice(extra);
    ok(&args);
    out
}

fn read_json(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn generation_is_reproducible() {
    let dir = Dir::new();
    let a = generate(
        &dir,
        "a.json",
        &["--kind", "unit-disks", "--n", "50", "--seed", "1"],
    );
    let b = generate(
        &dir,
        "b.json",
        &["--kind", "unit-disks", "--n", "50", "--seed", "1"],
    );
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = read_json(Path::new(&a));
    assert_eq!(v["objects"].as_array().unwrap().len(), 50);
}

#[test]
fn grid_paths_respect_ell() {
    let dir = Dir::new();
    let p = generate(
        &dir,
        "p.json",
        &[
            "--kind",
            "grid-paths-e",
            "--l",
            "2",
            "--bends",
            "1",
            "--n",
            "40",
            "--seed",
            "5",
        ],
    );
    let c = treealpha::io::parse_instance(&std::fs::read_to_string(p).unwrap()).unwrap();
    for o in &c.objects {
        let (a, b) = o.horizontal_part();
        assert!(b - a <= 2.0);
    }
}

#[test]
fn decompositions_verify_within_their_bounds() {
    let dir = Dir::new();
    for (kind, bound) in [("unit-disks", 3), ("unit-rects", 1)] {
        let inst = generate(
            &dir,
            &format!("{kind}.json"),
            &["--kind", kind, "--n", "40", "--seed", "2"],
        );
        let dec = dir.s(&format!("{kind}.dec.json"));
        ok(&["decompose", "--instance", &inst, "-o", &dec]);
        let v = read_json(Path::new(&dec));
        assert_eq!(v["declared_bound"], bound);
        assert!(v["verified_alpha"].as_u64().unwrap() <= bound);
        ok(&["verify", "--instance", &inst, "--decomposition", &dec]);
    }
}

#[test]
fn tampered_decomposition_reports_t2() {
    let dir = Dir::new();
    let inst = generate(
        &dir,
        "i.json",
        &["--kind", "unit-disks", "--n", "20", "--seed", "1"],
    );
    let dec = dir.s("d.json");
    ok(&["decompose", "--instance", &inst, "-o", &dec]);
    let v = read_json(Path::new(&dec));
    let mut td = v["td"].clone();
    let c = treealpha::io::parse_instance(&std::fs::read_to_string(&inst).unwrap()).unwrap();
    let g = treealpha::graph::intersection_graph(&c).unwrap();
    let (u, w) = g.edges().next().expect("instance has an edge");
    for node in td["nodes"].as_array_mut().unwrap() {
        let bag = node["bag"].as_array_mut().unwrap();
        if bag.contains(&u.into()) && bag.contains(&w.into()) {
            bag.retain(|x| x != &serde_json::Value::from(w));
        }
    }
    let bad = dir.s("bad.json");
    std::fs::write(&bad, serde_json::to_string(&td).unwrap()).unwrap();
    let o = run(&["verify", "--instance", &inst, "--td", &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("(T2)"), "{}", stderr(&o));
}

#[test]
fn ptas_output_verifies() {
    let dir = Dir::new();
    let inst = generate(
        &dir,
        "d.json",
        &["--kind", "disks", "--n", "14", "--seed", "3", "--weighted"],
    );
    let sol = dir.s("sol.json");
    let rep = dir.s("rep.json");
    ok(&[
        "ptas",
        "--instance",
        &inst,
        "--method",
        "fat-cover",
        "--r",
        "3",
        "-o",
        &sol,
        "--report",
        &rep,
        "--exact",
    ]);
    let o = ok(&["verify", "--instance", &inst, "--solution", &sol]);
    assert!(stdout(&o).contains("certified"));
    ok(&["verify", "--instance", &inst, "--report", &rep]);
}

#[test]
fn every_artifact_reverifies() {
    let dir = Dir::new();
    let inst = generate(
        &dir,
        "u.json",
        &[
            "--kind",
            "unit-disks",
            "--n",
            "16",
            "--seed",
            "4",
            "--weighted",
        ],
    );
    let cov = dir.s("cov.json");
    ok(&[
        "cover",
        "--instance",
        &inst,
        "--method",
        "layering",
        "--r",
        "3",
        "-o",
        &cov,
    ]);
    ok(&["verify", "--instance", &inst, "--cover", &cov]);
    let fat = dir.s("fat.json");
    ok(&[
        "cover",
        "--instance",
        &inst,
        "--method",
        "fat",
        "--r",
        "2",
        "-o",
        &fat,
    ]);
    ok(&["verify", "--instance", &inst, "--cover", &fat]);
    for (name, extra) in [
        ("mwis.json", vec![]),
        ("dist.json", vec!["--problem", "distance", "--d", "4"]),
        ("diss.json", vec!["--problem", "dissociation"]),
    ] {
        let sol = dir.s(name);
        let mut args = vec!["solve", "--instance", inst.as_str(), "-o", sol.as_str()];
        args.extend(extra.iter().copied());
        ok(&args);
        let mut check = vec![
            "verify",
            "--instance",
            inst.as_str(),
            "--solution",
            sol.as_str(),
        ];
        if name == "diss.json" {
            check.extend(["--problem", "dissociation"]);
        }
        ok(&check);
    }
    for eps in ["1/2", "0.34"] {
        let sol = dir.s("shift.json");
        ok(&[
            "ptas",
            "--instance",
            &inst,
            "--method",
            "shifting",
            "--eps",
            eps,
            "--exact",
            "-o",
            &sol,
        ]);
        ok(&["verify", "--instance", &inst, "--solution", &sol]);
    }
}

#[test]
fn exact_methods_agree() {
    let dir = Dir::new();
    let inst = generate(
        &dir,
        "u.json",
        &[
            "--kind",
            "unit-disks",
            "--n",
            "18",
            "--seed",
            "9",
            "--weighted",
        ],
    );
    let value = |method: &str| {
        let sol = dir.s(&format!("{method}.json"));
        ok(&["solve", "--instance", &inst, "--method", method, "-o", &sol]);
        read_json(Path::new(&sol))["value"].clone()
    };
    let dp = value("dp");
    assert_eq!(dp, value("brute"));
    assert_eq!(dp, value("subexp"));
}

#[test]
fn ratio_bench_meets_every_guarantee() {
    let dir = Dir::new();
    let csv = dir.s("bench.csv");
    ok(&[
        "bench", "--suite", "ratio", "--max-n", "18", "--seeds", "2", "-o", &csv,
    ]);
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let ok_col = header.iter().position(|&h| h == "ok").unwrap();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 14 * 2);
    assert!(rows
        .iter()
        .all(|r| r.split(',').nth(ok_col) == Some("true")));
}

#[test]
fn exit_codes() {
    let dir = Dir::new();
    let inst = generate(
        &dir,
        "u.json",
        &["--kind", "unit-disks", "--n", "16", "--seed", "1"],
    );
    assert_eq!(
        code(&run(&["solve", "--instance", &inst, "--max-n", "3"])),
        3
    );
    assert_eq!(
        code(&run(&["solve", "--instance", &inst, "--max-states", "1"])),
        3
    );
    let o = bin()
        .args(["solve", "--instance", &inst])
        .env("TREEALPHA_MAX_STATES", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(
        code(&run(&["solve", "--instance", &dir.s("missing.json")])),
        4
    );
    assert_eq!(code(&run(&["frobnicate"])), 4);
    assert_eq!(
        code(&run(&[
            "decompose",
            "--instance",
            &inst,
            "--method",
            "unit-rects"
        ])),
        4
    );
    let o = run(&[
        "ptas",
        "--instance",
        &inst,
        "--method",
        "distance",
        "--problem",
        "distance",
        "--d",
        "3",
    ]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("odd"));
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn wrong_value_fails_verification() {
    let dir = Dir::new();
    let inst = generate(
        &dir,
        "u.json",
        &["--kind", "unit-disks", "--n", "12", "--seed", "2"],
    );
    let sol = dir.s("s.json");
    ok(&["solve", "--instance", &inst, "-o", &sol]);
    let mut v = read_json(Path::new(&sol));
    v["value"] = serde_json::json!(1000);
    std::fs::write(&sol, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(
        code(&run(&["verify", "--instance", &inst, "--solution", &sol])),
        2
    );
}

#[test]
fn properties_suite_writes_junit() {
    let dir = Dir::new();
    let xml = dir.s("props.xml");
    ok(&[
        "bench",
        "--suite",
        "properties",
        "--filter",
        "layered",
        "-o",
        &xml,
    ]);
    assert!(std::fs::read_to_string(xml).unwrap().contains("<testsuite"));
}
