use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use treealpha::decomposition::{
    cover_from_layering, layered_independence_witness, lift_td_to_power, td_independence_number,
    td_independence_witness, validate_td, validate_td_on, AlphaWitness, GeneralCover,
    TreeDecomposition,
};
use treealpha::fat_cover::general_cover_fat;
use treealpha::geometry::{
    generate_instance, scale_collection, GeneratorKind, GeneratorSpec, InstanceKind,
    ObjectCollection,
};
use treealpha::graph::families::{dissociation_family, f_copies, induced_matching_family};
use treealpha::graph::oracle::{bruteforce_mwis, bruteforce_packing};
use treealpha::graph::{intersection_graph, Graph, SubgraphFamily, WeightedGraph};
use treealpha::io::{self, Certificate, DecompositionFile, SolutionFile, SolutionStats};
use treealpha::layered::{
    layered_td_fat_similar, layered_td_for_kind, layered_td_grid_paths, layered_td_unit_disks,
    layered_td_unit_rects, LayeredDecomposition,
};
use treealpha::packing::{
    distance_d_packing_exact_with, is_distance_packing, max_weight_independent_packing_with,
    mwis_on_td_with, SolverOptions,
};
use treealpha::ptas::{
    ptas_distance_d, ptas_mwis_fat, ptas_mwis_shifting_geom, ptas_mwis_shifting_paths,
    ptas_packing_from_cover, subexp_exact, PtasOutcome, PtasReport,
};
use treealpha::weight::{self, Weight};

use crate::{
    bench, Cli, Command, CoverArgs, CoverMethod, DecomposeArgs, DecomposeMethod, Failure, Format,
    GenerateArgs, Guards, Problem, ProblemArgs, PtasArgs, PtasMethod, SolveArgs, SolveMethod,
    VerifyArgs,
};

pub type CmdResult<T = ()> = Result<T, Failure>;

pub fn run(cli: Cli) -> CmdResult {
    let guards = cli.guards;
    match cli.command {
        Command::Generate(a) => generate(&a),
        Command::Decompose(a) => decompose(&a, &guards),
        Command::Cover(a) => cover(&a, &guards),
        Command::Solve(a) => solve(&a, &guards),
        Command::Ptas(a) => ptas(&a, &guards),
        Command::Verify(a) => verify(&a, &guards),
        Command::Bench(a) => bench::run(&a, &guards),
    }
}

pub fn read(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

pub fn write_out(path: Option<&PathBuf>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn options(guards: &Guards) -> SolverOptions {
    let mut opts = SolverOptions::from_env();
    if let Some(m) = guards.max_states {
        opts.max_states = m;
    }
    opts
}

fn load_instance(path: &Path, guards: &Guards) -> CmdResult<(ObjectCollection, Graph)> {
    let c = io::parse_instance(&read(path)?)?;
    if c.len() > guards.max_n {
        return Err(Failure::guard(format!(
            "instance has {} objects, more than --max-n {}",
            c.len(),
            guards.max_n
        )));
    }
    let g = intersection_graph(&c)?;
    Ok((c, g))
}

fn generate(a: &GenerateArgs) -> CmdResult {
    let mut spec = GeneratorSpec::new(GeneratorKind::parse(&a.kind)?, a.n, a.seed);
    if let Some(l) = a.ell {
        spec = spec.ell(l);
    }
    if let Some(b) = a.bends {
        spec = spec.bends(b);
    }
    if let Some(k) = a.ratio {
        spec = spec.ratio(k);
    }
    if let Some(r) = a.radius {
        spec = spec.radius(r);
    }
    if let Some(w) = a.width {
        spec.width = w;
    }
    if let Some(w) = a.window {
        spec = spec.window(w);
    }
    let mut c = generate_instance(&spec)?;
    if a.weighted {
        c.weights = Some(bench::random_weights(c.len(), a.seed));
    }
    write_out(a.output.as_ref(), &io::to_json(&c)?)?;
    let summary = format!(
        "generated {} objects, kind {}, params {}",
        c.len(),
        c.kind.name(),
        serde_json::to_string(&c.params).unwrap_or_default()
    );
    if a.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn describe(w: &AlphaWitness) -> String {
    match w.layer {
        Some(l) => format!(
            "bag {} layer {} independent set {:?}",
            w.node,
            l + 1,
            w.independent_set
        ),
        None => format!("bag {} independent set {:?}", w.node, w.independent_set),
    }
}

fn layered_by_method(c: &ObjectCollection, a: &DecomposeArgs) -> CmdResult<LayeredDecomposition> {
    Ok(match a.method {
        DecomposeMethod::Auto => layered_td_for_kind(c)?,
        DecomposeMethod::UnitDisks => layered_td_unit_disks(c)?,
        DecomposeMethod::UnitRects => layered_td_unit_rects(c)?,
        DecomposeMethod::GridPaths => {
            if !matches!(c.kind, InstanceKind::GridPathsV | InstanceKind::GridPathsE) {
                return Err(Failure::input(format!(
                    "grid-paths needs a grid-path instance, found {}",
                    c.kind.name()
                )));
            }
            layered_td_grid_paths(c, c.path_mode(), c.params.ell.unwrap_or(1))?
        }
        DecomposeMethod::FatSimilar => layered_td_fat_similar(
            c,
            a.k.or(c.params.ratio).unwrap_or(1.0),
            a.cfat.or(c.params.fatness).unwrap_or(16),
        )?,
    })
}

fn decompose(a: &DecomposeArgs, guards: &Guards) -> CmdResult {
    let (c, g) = load_instance(&a.instance, guards)?;
    let ld = layered_by_method(&c, a)?;
    validate_td(&g, &ld.td).map_err(|v| Failure::verification(v.to_string()))?;
    ld.layering
        .check(&g)
        .map_err(|v| Failure::verification(v.to_string()))?;
    let w = layered_independence_witness(&g, &ld.td, &ld.layering)?;
    if w.value > ld.bound {
        return Err(Failure::verification(format!(
            "layered independence {} exceeds declared {}: {}",
            w.value,
            ld.bound,
            describe(&w)
        )));
    }
    let file = DecompositionFile {
        construction: ld.construction,
        declared_bound: ld.bound,
        verified_alpha: Some(w.value),
        td: ld.td,
        layering: ld.layering,
    };
    write_out(a.output.as_ref(), &io::to_json(&file)?)?;
    eprintln!(
        "{}: {} nodes, {} layers, layered α = {} ≤ {}",
        ld.construction.name(),
        file.td.len(),
        file.layering.len(),
        w.value,
        ld.bound
    );
    Ok(())
}

fn cover(a: &CoverArgs, guards: &Guards) -> CmdResult {
    let (c, g) = load_instance(&a.instance, guards)?;
    let cover = match a.method {
        CoverMethod::Fat => {
            let (scaled, _) = scale_collection(&c)?;
            general_cover_fat(&scaled, a.cfat.or(c.params.fatness).unwrap_or(16), a.r)?
        }
        CoverMethod::Layering => {
            let ld = layered_td_for_kind(&c)?;
            cover_from_layering(&g, &ld.td, &ld.layering, a.r as usize, ld.bound)?
        }
    };
    write_out(a.output.as_ref(), &io::to_json(&cover)?)?;
    eprintln!(
        "cover with {} elements, β = {}",
        cover.len(),
        weight::format_rational(&cover.beta)
    );
    Ok(())
}

/// Family, packing distance and certificate for a problem selection.
pub fn build_family(
    c: &ObjectCollection,
    g: &Graph,
    p: &ProblemArgs,
) -> CmdResult<(SubgraphFamily, usize, Certificate)> {
    let d = p.d;
    if d < 2 {
        return Err(Failure::input("packing distance must be at least 2"));
    }
    if let Some(path) = &p.family {
        let fam = io::parse_family(&read(path)?)?;
        fam.validate(g)?;
        return Ok((fam, d, Certificate::Packing));
    }
    Ok(match p.problem {
        Problem::Mwis if d == 2 => (
            SubgraphFamily::singletons(&c.weights_or_unit()),
            2,
            Certificate::Independent,
        ),
        Problem::InducedMatching => (induced_matching_family(g), d, Certificate::Packing),
        Problem::Dissociation => (dissociation_family(g), d, Certificate::Packing),
        Problem::FPacking => {
            let path = p
                .pattern
                .as_ref()
                .ok_or_else(|| Failure::input("f-packing needs --pattern"))?;
            (
                f_copies(g, &io::parse_graph(&read(path)?)?)?,
                d,
                Certificate::Packing,
            )
        }
        Problem::Mwis | Problem::Distance => (
            SubgraphFamily::singletons(&c.weights_or_unit()),
            d,
            Certificate::Packing,
        ),
    })
}

fn solution_file(
    selection: Vec<usize>,
    value: Weight,
    cert: Certificate,
    d: usize,
    states: usize,
    time: f64,
) -> SolutionFile {
    let (vertices, members, distance) = match cert {
        Certificate::Independent => (Some(selection), None, None),
        Certificate::Packing => (None, Some(selection), Some(d)),
    };
    SolutionFile {
        value,
        vertices,
        members,
        certificate: cert,
        distance,
        stats: SolutionStats { states, time },
    }
}

/// Decomposition of `G^{d−1}` from the instance's layered construction.
fn power_td(g: &Graph, ld: &LayeredDecomposition, d: usize) -> CmdResult<TreeDecomposition> {
    if d % 2 != 0 {
        return Err(Failure::input(format!(
            "distance d = {d} is odd; exact and approximate distance packing here need even d (odd d is an open case)"
        )));
    }
    Ok(lift_td_to_power(g, &ld.td, &ld.layering, d / 2 - 1)?.0)
}

/// Exact optimum by the decomposition DP.
pub fn exact_optimum(
    c: &ObjectCollection,
    g: &Graph,
    fam: &SubgraphFamily,
    d: usize,
    opts: &SolverOptions,
) -> CmdResult<(Vec<usize>, Weight, usize)> {
    let ld = layered_td_for_kind(c)?;
    let sol = if d == 2 {
        max_weight_independent_packing_with(g, fam, &ld.td, opts)?
    } else {
        distance_d_packing_exact_with(g, fam, &power_td(g, &ld, d)?, d, opts)?
    };
    Ok((sol.set, sol.weight, sol.stats.total_states))
}

fn solve(a: &SolveArgs, guards: &Guards) -> CmdResult {
    let start = Instant::now();
    let (c, g) = load_instance(&a.instance, guards)?;
    let (fam, d, cert) = build_family(&c, &g, &a.problem)?;
    let opts = options(guards);
    let (set, value, states) = match a.method {
        SolveMethod::Dp => {
            if cert == Certificate::Independent {
                let ld = layered_td_for_kind(&c)?;
                let sol = mwis_on_td_with(
                    &WeightedGraph::new(g.clone(), fam.weights.clone())?,
                    &ld.td,
                    &opts,
                )?;
                (sol.set, sol.weight, sol.stats.total_states)
            } else {
                exact_optimum(&c, &g, &fam, d, &opts)?
            }
        }
        SolveMethod::Brute => {
            if cert == Certificate::Independent {
                let (set, w) =
                    bruteforce_mwis(&WeightedGraph::new(g.clone(), fam.weights.clone())?)?;
                (set, w, 0)
            } else {
                let (set, w) = bruteforce_packing(&g, &fam, d)?;
                (set, w, 0)
            }
        }
        SolveMethod::Subexp => {
            let ld = layered_td_for_kind(&c)?;
            let out = subexp_exact(&g, &ld.td, &ld.layering, ld.bound, &fam, d, &opts)?;
            eprintln!(
                "compressed α(T) = {} with ℓ′ = {}",
                out.compressed_alpha, out.ell
            );
            (out.selection, out.weight, 0)
        }
    };
    let file = solution_file(
        set,
        value,
        cert,
        d,
        states,
        start.elapsed().as_secs_f64() * 1e3,
    );
    write_out(a.output.as_ref(), &io::to_json(&file)?)?;
    eprintln!(
        "optimum {} with {} chosen",
        weight::format_rational(&file.value),
        file.selection().len()
    );
    Ok(())
}

pub fn report_csv_header() -> &'static str {
    "instance,method,r,epsilon,guaranteed,achieved,optimum,achieved_ratio,chosen,elements,wall_time_ms\n"
}

pub fn report_csv_row(r: &PtasReport) -> String {
    let opt = |w: &Option<Weight>| w.as_ref().map(weight::format_rational).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{:.3}\n",
        r.instance,
        r.method,
        r.r.map(|x| x.to_string()).unwrap_or_default(),
        opt(&r.epsilon),
        weight::format_rational(&r.guaranteed_ratio),
        weight::format_rational(&r.achieved),
        opt(&r.optimum),
        opt(&r.achieved_ratio),
        r.chosen,
        r.elements.len(),
        r.wall_time_ms
    )
}

fn report_text(r: &PtasReport) -> String {
    let mut s = format!("method      {}\n", r.method);
    if let Some(x) = r.r {
        s.push_str(&format!("r           {x}\n"));
    }
    if let Some(e) = &r.epsilon {
        s.push_str(&format!("epsilon     {}\n", weight::format_rational(e)));
    }
    s.push_str(&format!(
        "guaranteed  {}\n",
        weight::format_rational(&r.guaranteed_ratio)
    ));
    s.push_str(&format!(
        "achieved    {}\n",
        weight::format_rational(&r.achieved)
    ));
    if let (Some(o), Some(q)) = (&r.optimum, &r.achieved_ratio) {
        s.push_str(&format!(
            "optimum     {}\nratio       {}\n",
            weight::format_rational(o),
            weight::format_rational(q)
        ));
    }
    s.push_str(&format!(
        "element     {} of {}\ntime        {:.1} ms\n",
        r.chosen,
        r.elements.len(),
        r.wall_time_ms
    ));
    s
}

fn ptas(a: &PtasArgs, guards: &Guards) -> CmdResult {
    let (c, g) = load_instance(&a.instance, guards)?;
    let opts = options(guards);
    let (fam, d, cert) = build_family(&c, &g, &a.problem)?;
    let need_mwis = |what: &str| {
        if cert == Certificate::Independent {
            Ok(())
        } else {
            Err(Failure::input(format!(
                "{what} solves weighted independent set only (--problem mwis)"
            )))
        }
    };
    let mut out: PtasOutcome = match a.method {
        PtasMethod::FatCover => {
            need_mwis("fat-cover")?;
            let r = a.r.unwrap_or(3);
            ptas_mwis_fat(
                &c,
                a.cfat.or(c.params.fatness).unwrap_or(16),
                &fam.weights,
                r,
                &opts,
            )?
        }
        PtasMethod::CoverPacking => {
            if d != 2 {
                return Err(Failure::input(
                    "cover-packing uses distance 2; use --method distance",
                ));
            }
            let r = a.r.unwrap_or(3);
            let ld = layered_td_for_kind(&c)?;
            let cover = cover_from_layering(&g, &ld.td, &ld.layering, r as usize, ld.bound)?;
            ptas_packing_from_cover(&g, &cover, &fam, r as u64, &opts)?
        }
        PtasMethod::Distance => {
            let ld = layered_td_for_kind(&c)?;
            ptas_distance_d(
                &g,
                &ld.td,
                &ld.layering,
                ld.bound,
                &fam,
                d,
                a.r.unwrap_or(5) as u64,
                &opts,
            )?
        }
        PtasMethod::Shifting => {
            need_mwis("shifting")?;
            let eps = weight::parse_rational(a.eps.as_deref().unwrap_or("1/2"))?;
            match c.kind {
                InstanceKind::GridPathsV | InstanceKind::GridPathsE => ptas_mwis_shifting_paths(
                    &c,
                    c.path_mode(),
                    c.params.ell.unwrap_or(1),
                    &eps,
                    &fam.weights,
                    &opts,
                )?,
                _ => ptas_mwis_shifting_geom(&c, &eps, &fam.weights, &opts)?,
            }
        }
    };
    out.report.instance = a
        .instance
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    if a.exact {
        let opt =
            if cert == Certificate::Independent && g.n() <= treealpha::graph::oracle::MWIS_GUARD {
                bruteforce_mwis(&WeightedGraph::new(g.clone(), fam.weights.clone())?)?.1
            } else {
                exact_optimum(&c, &g, &fam, d, &opts)?.1
            };
        out.report.set_optimum(opt);
    }
    let total = out.report.elements.iter().map(|e| e.states).sum();
    let file = solution_file(
        out.selection.clone(),
        out.weight.clone(),
        cert,
        d,
        total,
        out.report.wall_time_ms,
    );
    if let Some(p) = &a.output {
        write_out(Some(p), &io::to_json(&file)?)?;
    }
    if let Some(p) = &a.report {
        write_out(Some(p), &io::to_json(&out.report)?)?;
    }
    let shown = match a.format {
        Format::Json => io::to_json(&out.report)?,
        Format::Csv => format!("{}{}", report_csv_header(), report_csv_row(&out.report)),
        Format::Text => report_text(&out.report),
    };
    print!("{shown}");
    if out.report.meets_guarantee() == Some(false) {
        return Err(Failure::verification(
            "achieved weight is below the guaranteed ratio of the optimum",
        ));
    }
    Ok(())
}

fn verify(a: &VerifyArgs, guards: &Guards) -> CmdResult {
    let given = [
        a.solution.is_some(),
        a.decomposition.is_some(),
        a.cover.is_some(),
        a.td.is_some(),
        a.report.is_some(),
    ];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Failure::input(
            "verify takes exactly one of --solution, --decomposition, --cover, --td, --report",
        ));
    }
    let (c, g) = load_instance(&a.instance, guards)?;
    if let Some(p) = &a.solution {
        verify_solution(&c, &g, &io::parse_solution(&read(p)?)?, &a.problem)
    } else if let Some(p) = &a.decomposition {
        verify_decomposition(&g, &io::parse_decomposition(&read(p)?)?)
    } else if let Some(p) = &a.cover {
        verify_cover(&g, &io::parse_cover(&read(p)?)?)
    } else if let Some(p) = &a.td {
        let td = io::parse_td(&read(p)?)?;
        validate_td(&g, &td).map_err(|v| Failure::verification(v.to_string()))?;
        match &a.layering {
            Some(lp) => {
                let lay = io::parse_layering(&read(lp)?)?;
                lay.check(&g)
                    .map_err(|v| Failure::verification(v.to_string()))?;
                let w = layered_independence_witness(&g, &td, &lay)?;
                println!(
                    "valid decomposition with layering; layered α = {} ({})",
                    w.value,
                    describe(&w)
                );
            }
            None => {
                let w = td_independence_witness(&g, &td)?;
                println!("valid decomposition; α(T) = {} ({})", w.value, describe(&w));
            }
        }
        Ok(())
    } else if let Some(p) = &a.report {
        verify_report(&io::parse_report(&read(p)?)?)
    } else {
        unreachable!("exactly one artifact was given")
    }
}

fn verify_solution(
    c: &ObjectCollection,
    g: &Graph,
    s: &SolutionFile,
    p: &ProblemArgs,
) -> CmdResult {
    let sel = s.selection();
    if sel.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::verification(
            "selection is not sorted and duplicate-free",
        ));
    }
    match s.certificate {
        Certificate::Independent => {
            if let Some(&v) = sel.iter().find(|&&v| v >= g.n()) {
                return Err(Failure::verification(format!(
                    "vertex {v} is not in the instance"
                )));
            }
            if let Some((u, v)) = sel.iter().enumerate().find_map(|(i, &u)| {
                sel[i + 1..]
                    .iter()
                    .find(|&&v| g.has_edge(u, v))
                    .map(|&v| (u, v))
            }) {
                return Err(Failure::verification(format!(
                    "vertices {u} and {v} are adjacent"
                )));
            }
            let w = weight::sum(
                &sel.iter()
                    .map(|&v| c.weights_or_unit()[v].clone())
                    .collect::<Vec<_>>(),
            );
            check_value(&w, &s.value)?;
            println!(
                "independent set of {} vertices certified, weight {}",
                sel.len(),
                weight::format_rational(&w)
            );
        }
        Certificate::Packing => {
            let mut p = p.clone();
            let d = s.distance.unwrap_or(2);
            if p.family.is_none() && p.problem == Problem::Mwis && d == 2 {
                return Err(Failure::input(
                    "packing solutions need --problem or --family",
                ));
            }
            p.d = d;
            let (fam, _, _) = build_family(c, g, &p)?;
            if let Some(&j) = sel.iter().find(|&&j| j >= fam.len()) {
                return Err(Failure::verification(format!(
                    "member {j} is not in the family"
                )));
            }
            if !is_distance_packing(g, &fam, sel, d) {
                return Err(Failure::verification(format!(
                    "chosen members are not pairwise at distance ≥ {d}"
                )));
            }
            let w = fam.weight_of(sel);
            check_value(&w, &s.value)?;
            println!(
                "distance-{d} packing of {} members certified, weight {}",
                sel.len(),
                weight::format_rational(&w)
            );
        }
    }
    Ok(())
}

fn check_value(actual: &Weight, claimed: &Weight) -> CmdResult {
    if actual != claimed {
        return Err(Failure::verification(format!(
            "claimed value {} but the selection weighs {}",
            weight::format_rational(claimed),
            weight::format_rational(actual)
        )));
    }
    Ok(())
}

fn verify_decomposition(g: &Graph, f: &DecompositionFile) -> CmdResult {
    validate_td(g, &f.td).map_err(|v| Failure::verification(v.to_string()))?;
    f.layering
        .check(g)
        .map_err(|v| Failure::verification(v.to_string()))?;
    let w = layered_independence_witness(g, &f.td, &f.layering)?;
    if w.value > f.declared_bound {
        return Err(Failure::verification(format!(
            "layered independence {} exceeds declared {}: {}",
            w.value,
            f.declared_bound,
            describe(&w)
        )));
    }
    if let Some(v) = f.verified_alpha {
        if v != w.value {
            return Err(Failure::verification(format!(
                "recorded layered independence {v} differs from {}",
                w.value
            )));
        }
    }
    println!(
        "{} decomposition certified: layered α = {} ≤ {}",
        f.construction.name(),
        w.value,
        f.declared_bound
    );
    Ok(())
}

fn local_td(g: &Graph, vertices: &[usize], td: &TreeDecomposition) -> TreeDecomposition {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    td.map_vertices(|v| (v < g.n() && local[v] != usize::MAX).then(|| local[v]))
}

fn verify_cover(g: &Graph, cover: &GeneralCover) -> CmdResult {
    cover
        .validate(g)
        .map_err(|e| Failure::verification(e.to_string()))?;
    let mut worst = 0;
    for (i, e) in cover.elements.iter().enumerate() {
        validate_td_on(g, &e.vertices, &e.td)
            .map_err(|v| Failure::verification(format!("element {i}: {v}")))?;
        let (h, _) = g.induced(&e.vertices);
        let a = td_independence_number(&h, &local_td(g, &e.vertices, &e.td))?;
        worst = worst.max(a);
        if let Some(bound) = cover.declared_alpha {
            if a as u64 > bound {
                return Err(Failure::verification(format!(
                    "element {i} has α(T) = {a} above the declared {bound}"
                )));
            }
        }
    }
    println!(
        "cover of {} elements certified: coverage {} ≥ β = {}, largest α(T) = {worst}",
        cover.len(),
        weight::format_rational(&cover.min_coverage(g.n())),
        weight::format_rational(&cover.beta)
    );
    Ok(())
}

fn verify_report(r: &PtasReport) -> CmdResult {
    if !r.elements.is_empty() && r.chosen >= r.elements.len() {
        return Err(Failure::verification("chosen element is out of range"));
    }
    match r.meets_guarantee() {
        Some(false) => Err(Failure::verification(
            "achieved weight is below the guaranteed ratio of the optimum",
        )),
        Some(true) => {
            println!("report certified against the recorded optimum");
            Ok(())
        }
        None => {
            println!("report is well formed; no optimum recorded");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_row_has_header_arity() {
        let r = PtasReport {
            instance: "x.json".into(),
            method: "shifting".into(),
            r: None,
            epsilon: Some(weight::ratio(1, 2)),
            achieved: weight::int(3),
            optimum: None,
            guaranteed_ratio: weight::ratio(1, 2),
            achieved_ratio: None,
            declared_alpha: None,
            chosen: 0,
            elements: Vec::new(),
            wall_time_ms: 1.0,
        };
        assert_eq!(
            report_csv_row(&r).split(',').count(),
            report_csv_header().split(',').count()
        );
    }

    #[test]
    fn odd_distance_is_rejected() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let c = generate_instance(&GeneratorSpec::new(GeneratorKind::UnitDisks, 2, 0)).unwrap();
        let ld = layered_td_for_kind(&c).unwrap();
        let err = power_td(&g, &ld, 3).unwrap_err();
        assert_eq!(err.code, Failure::INPUT);
    }
}
