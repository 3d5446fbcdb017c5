//! Closed forms for the hexagonal torus `H(n, m)`.
//!
//! Index conventions: [`hex_eigenvalues`], [`hex_trace_pinv`] and
//! [`tau_hex_lattice_sum`] take the structural `(n, m)` of `H(n, m)`.
//! [`tau_hex_closed`], [`tau_hex_bounds`], [`tau_hex_approx`] and
//! [`trig_sum`] take `n` with the graph being `H(n−1, n−1)`, which has
//! `2n²` vertices. [`kirchhoff_hex_bounds`] is again structural (`H(n, n)`).

use std::f64::consts::PI;

use serde::Serialize;

use crate::sum::{compensated_sum, CompensatedSum};
use crate::tau::{TauDiagnostics, TauMethod, TauResult};

/// Value of the lattice integral quoted alongside the approximation.
pub const LATTICE_INTEGRAL_REFERENCE: f64 = 5.4661;

/// `S(n)` for `n = 2..=10` as exact fractions.
pub const TRIG_SUM_RATIONALS: [(usize, u64, u64); 9] = [
    (2, 1, 4),
    (3, 10, 9),
    (4, 11, 4),
    (5, 58, 11),
    (6, 1577, 180),
    (7, 3812, 287),
    (8, 529, 28),
    (9, 419788, 16371),
    (10, 813957, 24244),
];

fn angle(i: usize, period: usize) -> f64 {
    2.0 * PI * i as f64 / period as f64
}

/// `3 − cos x − cos y − cos(x + y)`.
fn lattice_denominator(x: f64, y: f64) -> f64 {
    3.0 - x.cos() - y.cos() - (x + y).cos()
}

/// `√(3 + 2cos x + 2cos y + 2cos(x+y))`, evaluated as `|1 + e^{ix} + e^{−iy}|`.
/// The radicand vanishes at the Dirac points, where taking the root of the
/// cosine sum would amplify its rounding error to about `1e-8`.
fn spectral_root(x: f64, y: f64) -> f64 {
    (1.0 + x.cos() + y.cos()).hypot(x.sin() - y.sin())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HexSpectrum {
    pub n: usize,
    pub m: usize,
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
}

/// `λ_{i,j,k} = 3 + (−1)^k √(3 + 2cos θ_i + 2cos φ_j + 2cos(θ_i + φ_j))`.
pub fn hex_eigenvalues(n: usize, m: usize) -> HexSpectrum {
    let mut eigenvalues = Vec::with_capacity(2 * (n + 1) * (m + 1));
    for i in 0..=n {
        let x = angle(i, n + 1);
        for j in 0..=m {
            let root = spectral_root(x, angle(j, m + 1));
            eigenvalues.push(3.0 + root);
            eigenvalues.push(3.0 - root);
        }
    }
    eigenvalues.sort_by(f64::total_cmp);
    HexSpectrum { n, m, eigenvalues }
}

/// Largest `|1/λ_{i,j,0} + 1/λ_{i,j,1} − 3/(3 − cos − cos − cos)|` over
/// `(i, j) ≠ (0, 0)`.
pub fn pair_sum_residual(n: usize, m: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..=n {
        let x = angle(i, n + 1);
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let y = angle(j, m + 1);
            let root = spectral_root(x, y);
            let lhs = 1.0 / (3.0 + root) + 1.0 / (3.0 - root);
            let rhs = 3.0 / lattice_denominator(x, y);
            worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
        }
    }
    worst
}

/// `tr(L⁺)` of unit-length `H(n, m)`: `1/6 + Σ_{(i,j)≠(0,0)} 3/(3 − cos θ_i − cos φ_j − cos(θ_i+φ_j))`.
pub fn hex_trace_pinv(n: usize, m: usize) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.add(1.0 / 6.0);
    for i in 0..=n {
        let x = angle(i, n + 1);
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            acc.add(3.0 / lattice_denominator(x, angle(j, m + 1)));
        }
    }
    acc.value()
}

/// Reduced form of [`hex_trace_pinv`] for `m = n`, with the `i = 0` and
/// `j = 0` lines summed through the cosecant identity:
/// `1/6 + n(n+2)/2 + Σ_{i,j=1..n} 3/(3 − cos − cos − cos)`.
pub fn hex_trace_pinv_square(n: usize) -> f64 {
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    acc.add(1.0 / 6.0);
    acc.add(nf * (nf + 2.0) / 2.0);
    for i in 1..=n {
        let x = angle(i, n + 1);
        for j in 1..=n {
            acc.add(3.0 / lattice_denominator(x, angle(j, n + 1)));
        }
    }
    acc.value()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigSumValue {
    pub n: usize,
    pub value: f64,
    /// `(numerator, denominator)` when tabulated.
    pub known_rational: Option<(u64, u64)>,
}

impl TrigSumValue {
    pub fn rational_residual(&self) -> Option<f64> {
        self.known_rational.map(|(p, q)| (self.value - p as f64 / q as f64).abs())
    }
}

/// `S(n) = Σ_{i,j=1..n−1} 1/(3 − cos(2πi/n) − cos(2πj/n) − cos(2π(i+j)/n))`.
pub fn trig_sum(n: usize) -> TrigSumValue {
    assert!(n >= 2, "trig_sum needs n >= 2");
    let mut acc = CompensatedSum::new();
    for i in 1..n {
        let x = angle(i, n);
        for j in 1..n {
            acc.add(1.0 / lattice_denominator(x, angle(j, n)));
        }
    }
    let known_rational = TRIG_SUM_RATIONALS
        .iter()
        .find(|(k, _, _)| *k == n)
        .map(|&(_, p, q)| (p, q));
    TrigSumValue {
        n,
        value: acc.value(),
        known_rational,
    }
}

/// `((n−1)²/6, (n+1)(n−1)²/6)`, the bracket on [`trig_sum`].
pub fn trig_sum_bounds(n: usize) -> (f64, f64) {
    let nf = n as f64;
    let sq = (nf - 1.0) * (nf - 1.0);
    (sq / 6.0, (nf + 1.0) * sq / 6.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CscCotResiduals {
    pub n: usize,
    pub csc_sum: f64,
    pub cot_sum: f64,
    /// `|Σ csc²(πj/n) − (n²−1)/3|` relative to the target.
    pub csc_residual: f64,
    /// `|Σ cot²(πj/n) − (n−1)(n−2)/3|` relative to the target (absolute at `n = 2`).
    pub cot_residual: f64,
}

pub fn csc_cot_identities(n: usize) -> CscCotResiduals {
    assert!(n >= 2, "identities need n >= 2");
    let nf = n as f64;
    let terms = || (1..n).map(|j| PI * j as f64 / nf);
    let csc_sum = compensated_sum(terms().map(|t| 1.0 / t.sin().powi(2)));
    let cot_sum = compensated_sum(terms().map(|t| (t.cos() / t.sin()).powi(2)));
    let csc_target = (nf * nf - 1.0) / 3.0;
    let cot_target = (nf - 1.0) * (nf - 2.0) / 3.0;
    CscCotResiduals {
        n,
        csc_sum,
        cot_sum,
        csc_residual: (csc_sum - csc_target).abs() / csc_target,
        cot_residual: (cot_sum - cot_target).abs() / cot_target.max(1.0),
    }
}

/// Normalized tau of `H(n−1, n−1)`:
/// `(n⁴ + 11n² − 5)/(108n⁴) + S(n)/(2n⁴)`.
pub fn tau_hex_closed(n: usize) -> f64 {
    assert!(n >= 2, "tau_hex_closed needs n >= 2");
    let n4 = (n as f64).powi(4);
    let n2 = (n as f64).powi(2);
    (n4 + 11.0 * n2 - 5.0) / (108.0 * n4) + trig_sum(n).value / (2.0 * n4)
}

/// `((n⁴ + 20n² − 18n + 4)/(108n⁴), (n⁴ + 9n³ + 2n² − 9n + 4)/(108n⁴))`,
/// the polynomial bracket on [`tau_hex_closed`].
pub fn tau_hex_bounds(n: usize) -> (f64, f64) {
    let nf = n as f64;
    let n4 = nf.powi(4);
    let lower = (n4 + 20.0 * nf * nf - 18.0 * nf + 4.0) / (108.0 * n4);
    let upper = (n4 + 9.0 * nf.powi(3) + 2.0 * nf * nf - 9.0 * nf + 4.0) / (108.0 * n4);
    (lower, upper)
}

/// `(1/108)(1 + 1/n²)² + 5.4661/(6n²)`.
pub fn tau_hex_approx(n: usize) -> f64 {
    let n2 = (n as f64).powi(2);
    (1.0 + 1.0 / n2).powi(2) / 108.0 + LATTICE_INTEGRAL_REFERENCE / (6.0 * n2)
}

/// Bracket on the Kirchhoff index of unit-length `H(n, n)`:
/// `2n(n+1)²(2n+3)/3 + (n+1)²/3` and `n(n+1)²(n+2)(n+3)/3 + (n+1)²/3`.
pub fn kirchhoff_hex_bounds(n: usize) -> (f64, f64) {
    let nf = n as f64;
    let sq = (nf + 1.0).powi(2);
    let lower = 2.0 * nf * sq * (2.0 * nf + 3.0) / 3.0 + sq / 3.0;
    let upper = nf * sq * (nf + 2.0) * (nf + 3.0) / 3.0 + sq / 3.0;
    (lower, upper)
}

pub const LATTICE_MIN_RESOLUTION: usize = 64;

/// `(1/4π²)∬ 3/(3 − cos x − cos y − cos(x+y))` over `[0, 2π]²` on an
/// `N × N` midpoint grid. The grid is offset by half a cell so the pole at
/// the origin is never sampled.
pub fn lattice_integral(resolution: usize) -> f64 {
    assert!(
        resolution >= LATTICE_MIN_RESOLUTION,
        "resolution must be at least {LATTICE_MIN_RESOLUTION}"
    );
    let h = 2.0 * PI / resolution as f64;
    let mut acc = CompensatedSum::new();
    for a in 0..resolution {
        let x = (a as f64 + 0.5) * h;
        for b in 0..resolution {
            acc.add(3.0 / lattice_denominator(x, (b as f64 + 0.5) * h));
        }
    }
    acc.value() / (resolution * resolution) as f64
}

/// Endpoint resistances of the three edge classes of unit-length `H(n, m)`
/// and `tr(L⁺)`, from the two-site Bloch decomposition.
///
/// Cell `(a, k)` holds `x = (a, 2k)` and `y = (a, 2k+1)`; `y` is joined to
/// `x` in cells `(a, k)`, `(a, k+1)` and `(a+1, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HexEdgeResistances {
    /// Cycle edge `(a,2k)–(a,2k+1)`.
    pub inner: f64,
    /// Cycle edge `(a,2k+1)–(a,2k+2)`.
    pub along: f64,
    /// Rung `(a,2k+1)–(a+1,2k)`.
    pub rung: f64,
    pub trace: f64,
}

pub fn hex_edge_resistances(n: usize, m: usize) -> HexEdgeResistances {
    let cells = ((n + 1) * (m + 1)) as f64;
    // Offsets of the three neighbours, as (a, k) shifts.
    let offsets = [(0i64, 0i64), (0, 1), (1, 0)];
    let mut r = [CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new()];
    let mut diag = CompensatedSum::new();
    for i in 0..=n {
        let th = angle(i, n + 1);
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let ph = angle(j, m + 1);
            let d = 3.0 - th.cos() - ph.cos() - (th - ph).cos();
            diag.add(1.0 / d);
            for (slot, &(da, dk)) in r.iter_mut().zip(&offsets) {
                let coupling: f64 = offsets
                    .iter()
                    .map(|&(ea, ek)| ((da - ea) as f64 * th + (dk - ek) as f64 * ph).cos())
                    .sum();
                slot.add((3.0 - coupling) / d);
            }
        }
    }
    // The q = 0 block contributes 1/3 to every endpoint resistance.
    let per = |s: &CompensatedSum| (1.0 / 3.0 + s.value()) / cells;
    HexEdgeResistances {
        inner: per(&r[0]),
        along: per(&r[1]),
        rung: per(&r[2]),
        trace: 1.0 / 6.0 + 3.0 * diag.value(),
    }
}

/// Normalized tau of `H(n, m)` from the Bloch edge resistances. Every vertex
/// has the same `L⁺` diagonal, so the trace route reduces to
/// `(1/12)Σ(1 − r_e)² + tr(L⁺)/(2N)` on unit lengths with `N = (n+1)(m+1)`,
/// then scaled by `1/ℓ = 1/(3N)`.
pub fn tau_hex_lattice_sum(n: usize, m: usize) -> TauResult {
    let cells = (n + 1) * (m + 1);
    let nf = cells as f64;
    let res = hex_edge_resistances(n, m);
    let ell = 3.0 * nf;
    let first = nf * [res.inner, res.along, res.rung].iter().map(|r| (1.0 - r).powi(2)).sum::<f64>() / 12.0;
    let second = res.trace / (2.0 * nf);
    analytic_result(2 * cells, 3 * cells, first / ell, second / ell, "lattice sum")
}

/// [`tau_hex_closed`] wrapped as a result record for `H^N(n−1, n−1)`.
pub fn tau_hex_closed_result(n: usize) -> TauResult {
    let n2 = n * n;
    let nf = n2 as f64;
    let tau = tau_hex_closed(n);
    let first = (1.0 + 1.0 / nf).powi(2) / 108.0;
    analytic_result(2 * n2, 3 * n2, first, tau - first, "closed form")
}

fn analytic_result(v: usize, e: usize, first: f64, second: f64, note: &str) -> TauResult {
    TauResult {
        tau: first + second,
        first_term: first,
        second_term: second,
        method: TauMethod::Analytic,
        v,
        e,
        genus: e as i64 - v as i64 + 1,
        normalized: true,
        diagnostics: TauDiagnostics {
            total_length: 1.0,
            note: Some(note.to_string()),
            ..TauDiagnostics::default()
        },
    }
}
