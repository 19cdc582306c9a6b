//! Seeded ratio sweeps against exact optima.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use treealpha::decomposition::cover_from_layering;
use treealpha::geometry::{
    generate_instance, GeneratorKind, GeneratorSpec, InstanceKind, ObjectCollection,
};
use treealpha::graph::families::induced_matching_family;
use treealpha::graph::oracle::{bruteforce_mwis, MWIS_GUARD};
use treealpha::graph::{
    conflict_graph, graph_power, intersection_graph, SubgraphFamily, WeightedGraph,
};
use treealpha::layered::layered_td_for_kind;
use treealpha::packing::SolverOptions;
use treealpha::ptas::{
    ptas_distance_d, ptas_mwis_fat, ptas_mwis_shifting_geom, ptas_mwis_shifting_paths,
    ptas_packing_from_cover, PtasOutcome,
};
use treealpha::rng::{self, streams};
use treealpha::suite::run_suite;
use treealpha::weight::{self, Weight};

use crate::commands::{exact_optimum, options, write_out, CmdResult};
use crate::{BenchArgs, Failure, Guards, Suite};

pub fn random_weights(n: usize, seed: u64) -> Vec<Weight> {
    let mut r = rng::stream(seed, streams::WEIGHTS);
    (0..n).map(|_| weight::int(r.gen_range(1..=9))).collect()
}

#[derive(Clone, Copy, Debug)]
enum Driver {
    Fat(u32),
    CoverPacking { h: usize, r: u64 },
    Distance { d: usize, r: u64 },
    Shifting(GeneratorKind, (i64, i64)),
}

impl Driver {
    fn method(self) -> &'static str {
        match self {
            Driver::Fat(_) => "fat-cover",
            Driver::CoverPacking { .. } => "cover-packing",
            Driver::Distance { .. } => "distance",
            Driver::Shifting(..) => "shifting",
        }
    }

    fn param(self) -> String {
        match self {
            Driver::Fat(r) => format!("r={r}"),
            Driver::CoverPacking { h, r } => format!("h={h};r={r}"),
            Driver::Distance { d, r } => format!("d={d};r={r}"),
            Driver::Shifting(_, (p, q)) => format!("eps={p}/{q}"),
        }
    }

    fn instance(self, max_n: usize, seed: u64) -> treealpha::Result<ObjectCollection> {
        let (kind, cap) = match self {
            Driver::Fat(_) => (GeneratorKind::Disks, 14),
            Driver::CoverPacking { h: 1, .. } | Driver::Distance { .. } => {
                (GeneratorKind::UnitDisks, 18)
            }
            Driver::CoverPacking { .. } => (GeneratorKind::GridPathsV, 12),
            Driver::Shifting(kind, _) => (kind, 18),
        };
        let mut spec = GeneratorSpec::new(kind, max_n.min(cap).max(1), seed);
        if kind == GeneratorKind::GridPathsV {
            spec = spec.ell(1);
        }
        let mut c = generate_instance(&spec)?;
        c.weights = Some(random_weights(c.len(), seed));
        Ok(c)
    }
}

fn drivers() -> Vec<Driver> {
    let mut v = vec![Driver::Fat(2), Driver::Fat(3), Driver::Fat(4)];
    for h in [1, 2] {
        for r in [3, 5] {
            v.push(Driver::CoverPacking { h, r });
        }
    }
    v.push(Driver::Distance { d: 4, r: 5 });
    for kind in [
        GeneratorKind::UnitDisks,
        GeneratorKind::UnitWidthRects,
        GeneratorKind::GridPathsV,
    ] {
        for eps in [(1, 2), (17, 50)] {
            v.push(Driver::Shifting(kind, eps));
        }
    }
    v
}

/// One benchmark measurement.
pub struct Row {
    pub method: &'static str,
    pub kind: &'static str,
    pub n: usize,
    pub seed: u64,
    pub param: String,
    pub guaranteed: Weight,
    pub achieved: Weight,
    pub optimum: Weight,
    pub oracle: &'static str,
    pub time_ms: f64,
}

impl Row {
    pub fn ok(&self) -> bool {
        self.achieved >= &self.guaranteed * &self.optimum
    }

    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.3}\n",
            self.method,
            self.kind,
            self.n,
            self.seed,
            self.param,
            weight::format_rational(&self.guaranteed),
            weight::format_rational(&self.achieved),
            weight::format_rational(&self.optimum),
            self.oracle,
            self.ok(),
            self.time_ms
        )
    }
}

const HEADER: &str = "method,kind,n,seed,param,guaranteed,achieved,optimum,oracle,ok,time_ms\n";

fn measure(
    driver: Driver,
    max_n: usize,
    seed: u64,
    opts: &SolverOptions,
) -> treealpha::Result<Row> {
    let c = driver.instance(max_n, seed)?;
    let g = intersection_graph(&c)?;
    let w = c.weights_or_unit();
    let start = Instant::now();
    let (out, fam, d): (PtasOutcome, SubgraphFamily, usize) = match driver {
        Driver::Fat(r) => (
            ptas_mwis_fat(&c, 16, &w, r, opts)?,
            SubgraphFamily::singletons(&w),
            2,
        ),
        Driver::CoverPacking { h, r } => {
            let fam = if h == 1 {
                SubgraphFamily::singletons(&w)
            } else {
                induced_matching_family(&g)
            };
            let ld = layered_td_for_kind(&c)?;
            let cover = cover_from_layering(&g, &ld.td, &ld.layering, r as usize, ld.bound)?;
            (ptas_packing_from_cover(&g, &cover, &fam, r, opts)?, fam, 2)
        }
        Driver::Distance { d, r } => {
            let fam = SubgraphFamily::singletons(&w);
            let ld = layered_td_for_kind(&c)?;
            (
                ptas_distance_d(&g, &ld.td, &ld.layering, ld.bound, &fam, d, r, opts)?,
                fam,
                d,
            )
        }
        Driver::Shifting(_, (p, q)) => {
            let eps = weight::ratio(p, q);
            let out = match c.kind {
                InstanceKind::GridPathsV | InstanceKind::GridPathsE => ptas_mwis_shifting_paths(
                    &c,
                    c.path_mode(),
                    c.params.ell.unwrap_or(1),
                    &eps,
                    &w,
                    opts,
                )?,
                _ => ptas_mwis_shifting_geom(&c, &eps, &w, opts)?,
            };
            (out, SubgraphFamily::singletons(&w), 2)
        }
    };
    let time_ms = start.elapsed().as_secs_f64() * 1e3;
    // Packings at distance d are independent sets of the conflict graph of
    // G^{d−1}, so brute force applies whenever the family is small.
    let host = if d == 2 {
        g.clone()
    } else {
        graph_power(&g, d - 1)?
    };
    let (optimum, oracle) = if fam.len() <= MWIS_GUARD {
        let conflict = conflict_graph(&host, &fam)?;
        (
            bruteforce_mwis(&WeightedGraph::new(conflict, fam.weights.clone())?)?.1,
            "brute",
        )
    } else {
        let opt = exact_optimum(&c, &g, &fam, d, opts)
            .map_err(|f| treealpha::Error::InvalidInput(f.message))?;
        (opt.1, "dp")
    };
    Ok(Row {
        method: driver.method(),
        kind: c.kind.name(),
        n: c.len(),
        seed,
        param: driver.param(),
        guaranteed: out.report.guaranteed_ratio,
        achieved: out.weight,
        optimum,
        oracle,
        time_ms,
    })
}

/// Every (driver, seed) cell, in deterministic order.
pub fn ratio_rows(max_n: usize, seeds: u64, opts: &SolverOptions) -> treealpha::Result<Vec<Row>> {
    let cells: Vec<(Driver, u64)> = drivers()
        .into_iter()
        .flat_map(|d| (0..seeds).map(move |s| (d, s)))
        .collect();
    cells
        .par_iter()
        .map(|&(d, s)| measure(d, max_n, s, opts))
        .collect()
}

pub fn run(a: &BenchArgs, guards: &Guards) -> CmdResult {
    match a.suite {
        Suite::Ratio => {
            let rows = ratio_rows(guards.max_n, a.seeds, &options(guards))?;
            let mut csv = HEADER.to_string();
            for r in &rows {
                csv.push_str(&r.csv());
            }
            write_out(a.output.as_ref(), &csv)?;
            let bad = rows.iter().filter(|r| !r.ok()).count();
            eprintln!("{} rows, {bad} below the guarantee", rows.len());
            if bad > 0 {
                return Err(Failure::verification(format!(
                    "{bad} rows fall below the guaranteed ratio"
                )));
            }
            Ok(())
        }
        Suite::Properties => {
            let report = run_suite(&a.filter);
            write_out(a.output.as_ref(), &report.to_junit_xml())?;
            let failed = report.failures().len();
            eprintln!("{} properties, {failed} failed", report.cases.len());
            if failed > 0 {
                eprint!("{}", report.failures_json());
                return Err(Failure::verification(format!("{failed} properties failed")));
            }
            Ok(())
        }
    }
}
