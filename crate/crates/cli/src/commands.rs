use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wronski::homotopy::{solve_with, Execution};
use wronski::io::{
    svg_implicit_curves, svg_triangulation, to_string, CurveStyle, Facets, PlotWindow,
    TriangulationStyle,
};
use wronski::{
    as_simplicial_complex, check_s_interval, facet_bipartition, kushnirenko_bound,
    mixed_volume as mv, newton_polytope, real_solutions, regular_subdivision, signature,
    vertex_coloring, wronski_center_ideal, CoefficientChoice, FacetBipartition, Lifting,
    PointConfiguration, PolynomialSystem, SimplicialComplex, SolveResult, TrackerSettings,
    VertexColoring,
};

use crate::input::{self, CliError};
use crate::{Global, LiftedArgs, PointsArgs, SystemArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    /// One polynomial per line.
    Text,
}

fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn render_system(system: &PolynomialSystem, format: Format) -> String {
    match format {
        Format::Json => to_string(system) + "\n",
        Format::Text => system.polys().iter().map(|p| format!("{p}\n")).collect(),
    }
}

fn execution(g: &Global) -> Execution {
    if g.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// Triangulation, bipartition and coloring; foldability is required.
struct Folded {
    config: PointConfiguration,
    lifting: Lifting,
    complex: SimplicialComplex,
    bipartition: FacetBipartition,
    coloring: VertexColoring,
}

fn triangulate(
    config: &PointConfiguration,
    lifting: &Lifting,
) -> Result<SimplicialComplex, CliError> {
    let sub = regular_subdivision(config, lifting)?;
    Ok(as_simplicial_complex(&sub)?)
}

fn fold(args: &LiftedArgs) -> Result<Folded, CliError> {
    let (config, lifting) = input::lifted(args)?;
    let complex = triangulate(&config, &lifting)?;
    let bipartition = facet_bipartition(&complex).map_err(wronski::Error::from)?;
    let coloring = vertex_coloring(&complex)?;
    Ok(Folded {
        config,
        lifting,
        complex,
        bipartition,
        coloring,
    })
}

pub fn latpoints(args: &PointsArgs) -> Result<String, CliError> {
    Ok(to_string(&input::points(args)?) + "\n")
}

pub fn subdivide(args: &LiftedArgs) -> Result<String, CliError> {
    let (config, lifting) = input::lifted(args)?;
    let sub = regular_subdivision(&config, &lifting)?;
    if !sub.is_simplicial() {
        eprintln!("warning: the lifting is not generic; some cells are not simplices");
    }
    Ok(to_string(&Facets(sub.cell_indices())) + "\n")
}

pub fn analyze(args: &LiftedArgs, require_foldable: bool) -> Result<String, CliError> {
    let (config, lifting) = input::lifted(args)?;
    let complex = triangulate(&config, &lifting)?;
    let volumes: Vec<Value> = complex.normalized_volumes().iter().map(big).collect();
    let mut report = json!({
        "facets": complex.facets(),
        "normalized_volumes": volumes,
        "kushnirenko_bound": big(&kushnirenko_bound(&config)?),
    });
    match facet_bipartition(&complex) {
        Ok(bip) => {
            let coloring = vertex_coloring(&complex)?;
            report["foldable"] = json!(true);
            report["signature"] = json!(signature(&complex, &bip));
            report["black"] = json!(bip.black);
            report["white"] = json!(bip.white);
            report["color_classes"] = json!(coloring.partition());
        }
        Err(cycle) => {
            if require_foldable {
                return Err(CliError::Domain(cycle.into()));
            }
            report["foldable"] = json!(false);
            report["odd_cycle"] = json!(cycle.facets);
        }
    }
    Ok(pretty(&report))
}

pub fn center_ideal(args: &LiftedArgs, format: Format) -> Result<String, CliError> {
    let f = fold(args)?;
    let ideal = wronski_center_ideal(&f.config, &f.lifting, &f.coloring)?;
    Ok(render_system(&ideal, format))
}

fn build_wronski_system(f: &Folded, args: &SystemArgs) -> Result<PolynomialSystem, CliError> {
    let c = CoefficientChoice::new(input::coefficient_rows(&args.c)?);
    let s = input::parse_rational(&args.s)?;
    Ok(wronski::wronski_system(
        &f.config,
        &f.lifting,
        &f.coloring,
        &c,
        &s,
    )?)
}

pub fn wronski_system(args: &SystemArgs, format: Format) -> Result<String, CliError> {
    let f = fold(&args.lifted)?;
    Ok(render_system(&build_wronski_system(&f, args)?, format))
}

fn run_solver(
    g: &Global,
    system: &PolynomialSystem,
    settings: &TrackerSettings,
) -> Result<SolveResult, CliError> {
    Ok(solve_with(system, settings, execution(g))?)
}

pub fn solve(g: &Global, path: &Path, only_torus: bool) -> Result<String, CliError> {
    let system: PolynomialSystem = input::read_json(path)?;
    let settings = input::settings(g)?.only_torus(only_torus);
    let result = run_solver(g, &system, &settings)?;
    Ok(to_string(&result) + "\n")
}

pub fn check_interval(path: &Path, s_index: Option<usize>) -> Result<String, CliError> {
    let result: SolveResult = input::read_json(path)?;
    let nvars = result.solutions.first().map_or(0, |s| s.coords.len());
    let s_index = match s_index {
        Some(k) => k,
        None => nvars.saturating_sub(1),
    };
    if nvars > 0 && s_index >= nvars {
        return Err(CliError::Usage(format!(
            "--s-index {s_index} but solutions have {nvars} coordinates"
        )));
    }
    let check = check_s_interval(&result, s_index);
    Ok(pretty(
        &json!({ "holds": check.holds, "s_values": check.s_values }),
    ))
}

fn newton_polytopes(system: &PolynomialSystem) -> Result<Vec<PointConfiguration>, CliError> {
    Ok(system
        .polys()
        .iter()
        .map(newton_polytope)
        .collect::<wronski::Result<Vec<_>>>()?)
}

pub fn mixed_volume(path: &Path) -> Result<String, CliError> {
    let system: PolynomialSystem = input::read_json(path)?;
    let supports = newton_polytopes(&system)?;
    let bezout: u64 = system
        .polys()
        .iter()
        .map(|p| u64::from(p.total_degree().unwrap_or(0)))
        .product();
    Ok(pretty(&json!({
        "mixed_volume": big(&mv(&supports)?),
        "bezout_number": bezout,
    })))
}

fn triangulation_style(g: &Global) -> TriangulationStyle {
    TriangulationStyle {
        width: g.width,
        height: g.height,
        ..TriangulationStyle::default()
    }
}

fn curve_style(g: &Global) -> CurveStyle {
    CurveStyle {
        width: g.width,
        height: g.height,
        grid: (g.grid[0], g.grid[1]),
        ..CurveStyle::default()
    }
}

pub fn plot_triangulation(g: &Global, args: &LiftedArgs) -> Result<String, CliError> {
    let f = fold(args)?;
    Ok(svg_triangulation(
        &f.complex,
        &f.bipartition,
        &f.coloring,
        &triangulation_style(g),
    )?)
}

fn plane_points(result: &SolveResult) -> Vec<[f64; 2]> {
    real_solutions(result)
        .into_iter()
        .filter(|p| p.len() == 2)
        .map(|p| [p[0], p[1]])
        .collect()
}

pub fn plot_curves(
    g: &Global,
    system: &Path,
    solutions: Option<&Path>,
    window: Option<&[f64]>,
) -> Result<String, CliError> {
    let system: PolynomialSystem = input::read_json(system)?;
    let points = match solutions {
        Some(path) => plane_points(&input::read_json(path)?),
        None => Vec::new(),
    };
    let window = window.map(|w| PlotWindow {
        x_min: w[0],
        x_max: w[1],
        y_min: w[2],
        y_max: w[3],
    });
    Ok(svg_implicit_curves(
        &system,
        &points,
        window,
        &curve_style(g),
    )?)
}

fn coords(result: &SolveResult) -> Value {
    json!(real_solutions(result))
}

pub fn pipeline(
    g: &Global,
    args: &SystemArgs,
    artifacts: Option<&Path>,
) -> Result<String, CliError> {
    let f = fold(&args.lifted)?;
    let settings = input::settings(g)?;

    let ideal = wronski_center_ideal(&f.config, &f.lifting, &f.coloring)?;
    let ideal_result = run_solver(g, &ideal, &settings.clone().only_torus(true))?;
    let s_index = f.config.dim();
    let check = check_s_interval(&ideal_result, s_index);
    let ideal_mv = if ideal.len() <= 3 {
        big(&mv(&newton_polytopes(&ideal)?)?)
    } else {
        Value::Null
    };

    let system = build_wronski_system(&f, args)?;
    let system_result = run_solver(g, &system, &settings)?;
    let sigma = signature(&f.complex, &f.bipartition);
    let real = system_result.nonsingular().filter(|s| s.real).count();

    let report = json!({
        "points": f.config.points(),
        "lifting": f.lifting.values,
        "facets": f.complex.facets(),
        "normalized_volumes": f.complex.normalized_volumes().iter().map(big).collect::<Vec<_>>(),
        "foldable": true,
        "signature": sigma,
        "color_classes": f.coloring.partition(),
        "kushnirenko_bound": big(&kushnirenko_bound(&f.config)?),
        "center_ideal": {
            "generators": ideal.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "mixed_volume": ideal_mv,
            "paths_tracked": ideal_result.paths_tracked,
            "nonsingular": ideal_result.nonsingular().count(),
            "real": ideal_result.nonsingular().filter(|s| s.real).count(),
            "singular": ideal_result.singular_count(),
            "real_solutions": coords(&ideal_result),
            "s_interval_holds": check.holds,
        },
        "wronski_system": {
            "polynomials": system.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "paths_tracked": system_result.paths_tracked,
            "nonsingular": system_result.nonsingular().count(),
            "real": real,
            "singular": system_result.singular_count(),
            "real_solutions": coords(&system_result),
            "lower_bound_met": real >= sigma,
        },
        "seed": settings.seed,
    });

    if let Some(dir) = artifacts {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
        input::write_file(&dir.join("points.json"), &to_string(&f.config))?;
        input::write_file(&dir.join("lifting.json"), &to_string(&f.lifting))?;
        input::write_file(
            &dir.join("complex.json"),
            &to_string(&Facets::from(&f.complex)),
        )?;
        input::write_file(&dir.join("center_ideal.json"), &to_string(&ideal))?;
        input::write_file(
            &dir.join("center_ideal_solutions.json"),
            &to_string(&ideal_result),
        )?;
        input::write_file(&dir.join("wronski_system.json"), &to_string(&system))?;
        input::write_file(
            &dir.join("wronski_solutions.json"),
            &to_string(&system_result),
        )?;
        if f.config.dim() == 2 {
            let tri = svg_triangulation(
                &f.complex,
                &f.bipartition,
                &f.coloring,
                &triangulation_style(g),
            )?;
            input::write_file(&dir.join("triangulation.svg"), &tri)?;
            let curves = svg_implicit_curves(
                &system,
                &plane_points(&system_result),
                None,
                &curve_style(g),
            )?;
            input::write_file(&dir.join("wronski_curves.svg"), &curves)?;
        }
    }
    Ok(pretty(&report))
}
