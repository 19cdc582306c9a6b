use treealpha::suite::{all_cases, run_suite};

#[test]
fn every_property_holds() {
    let report = run_suite("");
    for c in &report.cases {
        match &c.failure {
            None => println!("ok   {:<28} {} runs  {:.0} ms", c.id, c.runs, c.time_ms),
            Some(f) => println!(
                "FAIL {:<28} seed {}: {} ({} objects)",
                c.id,
                f.seed,
                f.message,
                f.instance.len()
            ),
        }
    }
    assert_eq!(report.cases.len(), all_cases().len());
    assert!(report.passed(), "{}", report.failures_json());
}

#[test]
fn junit_report_is_complete() {
    let report = run_suite("geometry");
    let xml = report.to_junit_xml();
    assert_eq!(xml.matches("<testcase").count(), report.cases.len());
    assert!(report
        .cases
        .iter()
        .all(|c| c.module == "geometry" || c.id.contains("geometry")));
}

mod mutation {
    use treealpha::decomposition::validate_td;
    use treealpha::geometry::{generate_instance, GeneratorKind, GeneratorSpec, ObjectCollection};
    use treealpha::graph::intersection_graph;
    use treealpha::layered::layered_td_unit_disks;
    use treealpha::suite::shrink;

    /// Compression that forgets to put the deleted layer class back into
    /// every bag.
    fn broken_compress(c: &ObjectCollection, _: u64) -> Result<(), String> {
        if c.is_empty() {
            return Ok(());
        }
        let g = intersection_graph(c).map_err(|e| e.to_string())?;
        let ld = layered_td_unit_disks(c).map_err(|e| e.to_string())?;
        let layer_of = ld.layering.layer_of(g.n()).map_err(|e| e.to_string())?;
        let td = ld
            .td
            .map_vertices(|v| (v < g.n() && layer_of[v] % 2 != 0).then_some(v));
        validate_td(&g, &td).map_err(|e| e.to_string())
    }

    #[test]
    fn dropped_repair_is_caught_with_a_small_witness() {
        let c = generate_instance(&GeneratorSpec::new(GeneratorKind::UnitDisks, 30, 4)).unwrap();
        assert!(broken_compress(&c, 0).is_err());
        let (witness, message) = shrink(&c, 0, broken_compress);
        assert!(!message.is_empty());
        assert!(witness.len() < c.len());
        assert!(broken_compress(&witness, 0).is_err());
        for i in 0..witness.len() {
            let keep: Vec<usize> = (0..witness.len()).filter(|&j| j != i).collect();
            assert!(
                broken_compress(&witness.subset(&keep), 0).is_ok(),
                "witness is not minimal"
            );
        }
    }
}
