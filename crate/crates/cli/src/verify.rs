//! Invariant suites. Each prints one PASS/FAIL line; any failure makes the
//! command exit with status 1.
//!
//! The `kirchhoff` suite only runs when named: the published upper bound is
//! known to fail for `H(2,2)` and `H(3,3)`.

use std::time::Instant;

use clap::{Args, ValueEnum};
use metrized_tau::analytic::{
    csc_cot_identities, hex_eigenvalues, hex_trace_pinv, kirchhoff_hex_bounds, pair_sum_residual, tau_hex_bounds,
    tau_hex_closed, trig_sum, trig_sum_bounds,
};
use metrized_tau::families::{complete, hexagonal_torus, mm_graph, random_bridgeless, tt_graph};
use metrized_tau::tau::{genus_identity_residual, tau_bounds_check, ResistanceModel};
use metrized_tau::{DiscreteLaplacian, MetrizedGraph};

use crate::error::CliError;

const GENUS_ABS: f64 = 1e-9;
const AGREEMENT_REL: f64 = 1e-9;
const SUBDIVISION_ABS: f64 = 1e-10;
const SPECTRUM_ABS: f64 = 1e-8;
const PAIR_SUM_ABS: f64 = 1e-10;
const RATIONAL_ABS: f64 = 1e-9;
const IDENTITY_REL: f64 = 1e-12;
const SPECTRUM_MAX_VERTICES: usize = 400;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every suite except kirchhoff.
    All,
    Genus,
    Agreement,
    Subdivision,
    Spectrum,
    Trig,
    Bounds,
    Kirchhoff,
}

#[derive(Args, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub suite: Vec<Suite>,
    /// Largest n for the hexagonal and trigonometric suites.
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    /// Random bridgeless graphs per suite.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

type Outcome = Result<String, Vec<String>>;

fn sample(args: &VerifyArgs) -> Vec<(String, MetrizedGraph)> {
    let mut out = Vec::new();
    for k in 0..args.count {
        let seed = args.seed.wrapping_add(k as u64);
        let v = 3 + (k % 10);
        let chords = 1 + (k % 5);
        out.push((format!("random(v={v},chords={chords},seed={seed})"), random_bridgeless(v, chords, seed)));
    }
    out.push(("K5".into(), complete(5)));
    out.push(("H(2,2)".into(), hexagonal_torus(2, 2).expect("valid torus")));
    out.push(("MM(3,3)".into(), mm_graph(3, 3).expect("valid parameters")));
    out.push(("TT(3,3,2)".into(), tt_graph(3, 3, 2).expect("valid parameters")));
    out
}

fn collect(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures)
    }
}

fn genus(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let graphs = sample(args);
    for (name, g) in &graphs {
        let model = ResistanceModel::new(g)?;
        let residual = genus_identity_residual(model.graph(), &model.edge_data()?);
        worst = worst.max(residual);
        if residual > GENUS_ABS {
            failures.push(format!("{name}: residual {residual:.3e}"));
        }
    }
    Ok(collect(failures, format!("{} graphs, max residual {worst:.2e}", graphs.len())))
}

fn agreement(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut special = 0;
    let graphs = sample(args);
    for (name, g) in &graphs {
        let model = ResistanceModel::new(&g.normalize()?)?;
        let t = model.tau_trace()?.tau;
        for p in 0..g.vertex_count() {
            let f = model.tau_fixed_point(p)?.tau;
            let rel = (f - t).abs() / t;
            worst = worst.max(rel);
            if rel > AGREEMENT_REL {
                failures.push(format!("{name}: base {p} gives {f} vs trace {t}"));
            }
        }
        if let Ok(s) = model.tau_special() {
            special += 1;
            let rel = (s.tau - t).abs() / t;
            worst = worst.max(rel);
            if rel > AGREEMENT_REL {
                failures.push(format!("{name}: special {} vs trace {t}", s.tau));
            }
        }
    }
    Ok(collect(
        failures,
        format!("{} graphs ({special} with the special formula), max rel. gap {worst:.2e}", graphs.len()),
    ))
}

fn subdivision(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let graphs = sample(args);
    for (name, g) in &graphs {
        let t = ResistanceModel::new(g)?.tau_trace()?.tau;
        for (k, frac) in [0.5, 0.37].into_iter().enumerate() {
            let edge = k % g.edge_count();
            let ts = ResistanceModel::new(&g.subdivide_edge(edge, frac)?)?.tau_trace()?.tau;
            worst = worst.max((ts - t).abs());
            if (ts - t).abs() > SUBDIVISION_ABS {
                failures.push(format!("{name}: edge {edge} at {frac} gives {ts} vs {t}"));
            }
        }
    }
    Ok(collect(failures, format!("{} graphs, max gap {worst:.2e}", graphs.len())))
}

fn spectrum(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut failures = Vec::new();
    let (mut worst, mut pairs) = (0.0f64, 0);
    for n in 0..args.n_max {
        for m in 0..args.n_max {
            let pair = pair_sum_residual(n, m);
            if pair > PAIR_SUM_ABS {
                failures.push(format!("H({n},{m}): pair-sum residual {pair:.3e}"));
            }
            let g = hexagonal_torus(n, m)?;
            if !g.is_adequate() || g.vertex_count() > SPECTRUM_MAX_VERTICES {
                continue;
            }
            pairs += 1;
            let numeric = DiscreteLaplacian::build(&g).eigenvalues();
            let gap = hex_eigenvalues(n, m)
                .eigenvalues
                .iter()
                .zip(&numeric)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            worst = worst.max(gap);
            if gap > SPECTRUM_ABS {
                failures.push(format!("H({n},{m}): eigenvalue gap {gap:.3e}"));
            }
        }
    }
    Ok(collect(failures, format!("{pairs} tori compared densely, max gap {worst:.2e}")))
}

fn trig(args: &VerifyArgs) -> Outcome {
    let mut failures = Vec::new();
    let mut rationals = 0;
    for n in 2..=args.n_max.max(2) {
        let s = trig_sum(n);
        if let Some(res) = s.rational_residual() {
            if res <= RATIONAL_ABS {
                rationals += 1;
            } else {
                failures.push(format!("S({n}) = {} misses {:?} by {res:.3e}", s.value, s.known_rational));
            }
        }
        let (lo, hi) = trig_sum_bounds(n);
        if !(lo <= s.value && s.value <= hi) {
            failures.push(format!("S({n}) = {} outside [{lo}, {hi}]", s.value));
        }
        let id = csc_cot_identities(n);
        if id.csc_residual > IDENTITY_REL || id.cot_residual > IDENTITY_REL {
            failures.push(format!("n={n}: csc/cot residuals {:.3e}, {:.3e}", id.csc_residual, id.cot_residual));
        }
    }
    collect(failures, format!("{rationals} rational matches, brackets and identities up to n={}", args.n_max))
}

fn bounds(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut failures = Vec::new();
    for n in 3..=args.n_max.max(3) {
        let (lo, hi) = tau_hex_bounds(n);
        let t = tau_hex_closed(n);
        if !(lo <= t && t <= hi) {
            failures.push(format!("closed form n={n}: {t} outside [{lo}, {hi}]"));
        }
    }
    let mut cubic = 0;
    let graphs = [
        ("K4", complete(4)),
        ("H(2,2)", hexagonal_torus(2, 2)?),
        ("H(3,4)", hexagonal_torus(3, 4)?),
        ("MM(3,3)", mm_graph(3, 3)?),
        ("TT(4,5,2)", tt_graph(4, 5, 2)?),
    ];
    for (name, g) in &graphs {
        let g = g.normalize()?;
        let tau = ResistanceModel::new(&g)?.tau_trace()?;
        let report = tau_bounds_check(&g, &g.structure_report(), &tau)?;
        if report.all_hold() {
            cubic += 1;
        } else {
            failures.push(format!("{name}: {report:?}"));
        }
    }
    Ok(collect(
        failures,
        format!("closed form bracketed for n=3..{}, {cubic} cubic graphs within bounds", args.n_max.max(3)),
    ))
}

fn kirchhoff(args: &VerifyArgs) -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=args.n_max.max(2) {
        let cells = ((n + 1) * (n + 1)) as f64;
        let kf = 2.0 * cells * hex_trace_pinv(n, n);
        let (lo, hi) = kirchhoff_hex_bounds(n);
        if !(lo <= kf && kf <= hi) {
            failures.push(format!("Kf(H({n},{n})) = {kf:.4} outside [{lo:.4}, {hi:.4}]"));
        }
    }
    collect(failures, format!("published bracket holds for n=2..{}", args.n_max.max(2)))
}

fn suites(args: &VerifyArgs) -> Vec<Suite> {
    let mut out = Vec::new();
    for s in &args.suite {
        let expand: &[Suite] = match s {
            Suite::All => &[
                Suite::Genus,
                Suite::Agreement,
                Suite::Subdivision,
                Suite::Spectrum,
                Suite::Trig,
                Suite::Bounds,
            ],
            other => std::slice::from_ref(other),
        };
        for s in expand {
            if !out.contains(s) {
                out.push(*s);
            }
        }
    }
    out
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let mut failures = Vec::new();
    for suite in suites(args) {
        let start = Instant::now();
        let outcome = match suite {
            Suite::Genus => genus(args)?,
            Suite::Agreement => agreement(args)?,
            Suite::Subdivision => subdivision(args)?,
            Suite::Spectrum => spectrum(args)?,
            Suite::Trig => trig(args),
            Suite::Bounds => bounds(args)?,
            Suite::Kirchhoff => kirchhoff(args),
            Suite::All => unreachable!("expanded above"),
        };
        let name = format!("{suite:?}").to_lowercase();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("PASS {name} [{secs:.2}s]: {summary}"),
            Err(list) => {
                println!("FAIL {name} [{secs:.2}s]: {} failure(s)", list.len());
                for f in &list {
                    println!("    {f}");
                }
                failures.extend(list.into_iter().map(|f| format!("{name}: {f}")));
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failures))
    }
}
