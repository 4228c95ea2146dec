//! Laplacian spectra, circulant closed forms, and the algebraic-connectivity
//! bounds for constructed graphs.
//!
//! The closed form used throughout is
//! `a = k̄ − sin(k̄π/n) / sin(π/n)` with `k̄ = 2⌊k/2⌋ + 1` and `k = ⌊2m/n⌋`.

pub mod eigen;

use std::f64::consts::PI;

use serde::Serialize;

pub use eigen::{jacobi_eigen, symmetric_eigenvalues, EigenDecomposition, SymmetricMatrix};

use crate::connectivity::{edge_connectivity, vertex_connectivity};
use crate::constructor::{construct_plan, select_case, Case, ConstructionPlan};
use crate::error::SpectralError;
use crate::graph::Graph;

/// `λ₂` above this counts as connected.
pub const CONNECTED_THRESHOLD: f64 = 1e-7;
/// Slack for every "bound holds" comparison.
pub const BOUND_TOL: f64 = 1e-9;
/// Tie band for the cosine-sum scan.
pub const TIE_TOL: f64 = 1e-9;

pub fn laplacian_matrix(g: &Graph) -> SymmetricMatrix {
    SymmetricMatrix::new(g.n(), g.laplacian().to_f64()).expect("Laplacian is symmetric")
}

/// Sorted Laplacian eigenvalues.
pub fn laplacian_spectrum(g: &Graph) -> Vec<f64> {
    symmetric_eigenvalues(&laplacian_matrix(g)).expect("QL converges on Laplacian matrices")
}

/// Second-smallest Laplacian eigenvalue; exactly 0 for a single vertex or a
/// disconnected graph.
pub fn algebraic_connectivity(g: &Graph) -> f64 {
    if g.n() < 2 || !g.is_connected() {
        return 0.0;
    }
    laplacian_spectrum(g)[1]
}

pub fn kbar(k: usize) -> usize {
    2 * (k / 2) + 1
}

/// `k̄ − sin(k̄π/n)/sin(π/n)`; needs `2 <= k <= n - 1`.
pub fn thm5_closed_form(n: usize, k: usize) -> Result<f64, SpectralError> {
    if k < 2 || k + 1 > n {
        return Err(SpectralError::OutOfRange(format!("need 2 <= k <= n-1 (n = {n}, k = {k})")));
    }
    let kb = kbar(k) as f64;
    let n = n as f64;
    Ok(kb - (kb * PI / n).sin() / (PI / n).sin())
}

/// First row `c₀ … c_{n−1}` of a symmetric circulant matrix (`c_p = c_{n−p}`).
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantRow(Vec<f64>);

impl CirculantRow {
    pub fn new(row: Vec<f64>) -> Result<Self, SpectralError> {
        let n = row.len();
        for p in 1..n {
            if (row[p] - row[n - p]).abs() > 1e-12 {
                return Err(SpectralError::AsymmetricRow { p });
            }
        }
        Ok(CirculantRow(row))
    }

    /// The first Laplacian row, if the Laplacian of `g` is circulant.
    pub fn from_graph(g: &Graph) -> Option<Self> {
        let l = g.laplacian();
        let n = g.n();
        let first = l.row(0);
        let circulant = (1..n).all(|i| (0..n).all(|j| l.get(i, j) == first[(j + n - i) % n]));
        circulant.then(|| CirculantRow(first.iter().map(|&x| x as f64).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_matrix(&self) -> SymmetricMatrix {
        let n = self.len();
        SymmetricMatrix::from_fn(n, |i, j| self.0[(j + n - i) % n]).expect("symmetric circulant")
    }
}

/// `λᵢ = Σ_p c_p cos(2π p i / n)` for `i = 0..n`, in index order.
pub fn circulant_spectrum(row: &CirculantRow) -> Vec<f64> {
    let n = row.len();
    (0..n)
        .map(|i| {
            row.0
                .iter()
                .enumerate()
                .map(|(p, &c)| if c == 0.0 { 0.0 } else { c * (2.0 * PI * ((p * i) % n) as f64 / n as f64).cos() })
                .sum()
        })
        .collect()
}

/// Outcome of checking the closed-form lower bound on a constructed graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm5Check {
    pub n: usize,
    pub m: usize,
    pub case: Case,
    pub measured: f64,
    pub bound: f64,
    pub holds: bool,
    /// Equality within tolerance, only asserted for `C1_1`.
    pub equality: Option<bool>,
    pub discrepancy: Option<Thm5Discrepancy>,
}

/// A `C2_1` instance whose measured algebraic connectivity exceeds the
/// closed-form value that the equality clause would predict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm5Discrepancy {
    pub n: usize,
    pub m: usize,
    pub case: Case,
    pub measured: f64,
    pub closed_form: f64,
}

/// Checks `a(g) >= closed form` (and equality for `C1_1`). `g` must be the
/// graph built from `plan`, with `m >= n`.
pub fn verify_thm5(g: &Graph, plan: &ConstructionPlan) -> Result<Thm5Check, SpectralError> {
    if plan.m < plan.n {
        return Err(SpectralError::OutOfRange(format!("need m >= n (n = {}, m = {})", plan.n, plan.m)));
    }
    let bound = thm5_closed_form(plan.n, plan.k)?;
    let measured = algebraic_connectivity(g);
    Ok(thm5_check_from(plan, measured, bound))
}

/// Same as [`verify_thm5`] for an already measured `a` and closed form.
pub fn thm5_check_from(plan: &ConstructionPlan, measured: f64, bound: f64) -> Thm5Check {
    let equality = (plan.case == Case::C1_1).then(|| (measured - bound).abs() <= BOUND_TOL);
    let discrepancy = (plan.case == Case::C2_1 && measured > bound + BOUND_TOL).then(|| Thm5Discrepancy {
        n: plan.n,
        m: plan.m,
        case: plan.case,
        measured,
        closed_form: bound,
    });
    Thm5Check {
        n: plan.n,
        m: plan.m,
        case: plan.case,
        measured,
        bound,
        holds: measured >= bound - BOUND_TOL,
        equality,
        discrepancy,
    }
}

/// Sandwich `lo < closed form < hi` around the closed-form value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma7Bounds {
    pub lo: f64,
    pub hi: f64,
    pub closed_form: f64,
    pub holds: bool,
}

/// `lo = π²(k̄³/2 − k̄)/(6n² − π²)`, `hi = k̄³π²/(6n²)`; `k̄` odd, `3 <= k̄ <= n`.
pub fn lemma7_bounds(n: usize, kbar: usize) -> Result<Lemma7Bounds, SpectralError> {
    if kbar % 2 == 0 || kbar < 3 || kbar > n {
        return Err(SpectralError::OutOfRange(format!("need odd 3 <= kbar <= n (n = {n}, kbar = {kbar})")));
    }
    let (nf, kb) = (n as f64, kbar as f64);
    let pi2 = PI * PI;
    let lo = pi2 * (0.5 * kb.powi(3) - kb) / (6.0 * nf * nf - pi2);
    let hi = kb.powi(3) * pi2 / (6.0 * nf * nf);
    let closed_form = kb - (kb * PI / nf).sin() / (PI / nf).sin();
    Ok(Lemma7Bounds { lo, hi, closed_form, holds: lo < closed_form && closed_form < hi })
}

/// `⌊2m/n⌋ <= (6n²/π²)^{1/3} − 1`.
pub fn corollary2_predicate(n: usize, m: usize) -> bool {
    let k = (2 * m / n) as f64;
    let nf = n as f64;
    k <= (6.0 * nf * nf / (PI * PI)).cbrt() - 1.0
}

/// Guaranteed floor `k − 2√(k−1)` when `k >= n + 1 − √(2n − 3)`.
pub fn corollary3_guarantee(n: usize, m: usize) -> Option<f64> {
    if n < 2 {
        return None;
    }
    let k = 2 * m / n;
    let kf = k as f64;
    let nf = n as f64;
    (k >= 1 && kf >= nf + 1.0 - (2.0 * nf - 3.0).sqrt()).then(|| kf - 2.0 * (kf - 1.0).sqrt())
}

/// Classical bounds `2e(1 − cos(π/n)) <= a <= v` (upper only for non-complete graphs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiedlerBounds {
    pub lower: f64,
    pub upper: Option<f64>,
    pub algebraic_connectivity: f64,
    pub holds: bool,
}

pub fn fiedler_reference_bounds(g: &Graph) -> Result<FiedlerBounds, SpectralError> {
    if g.n() < 2 || !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let a = algebraic_connectivity(g);
    fiedler_bounds_with(g, a)
}

fn fiedler_bounds_with(g: &Graph, a: f64) -> Result<FiedlerBounds, SpectralError> {
    let e = edge_connectivity(g)?.value as f64;
    let lower = 2.0 * e * (1.0 - (PI / g.n() as f64).cos());
    let upper = if g.is_complete() { None } else { Some(vertex_connectivity(g)?.value as f64) };
    let holds = lower - BOUND_TOL <= a && upper.map_or(true, |u| a <= u + BOUND_TOL);
    Ok(FiedlerBounds { lower, upper, algebraic_connectivity: a, holds })
}

/// Scan of `2 Σ_{p=1}^{⌊k/2⌋} cos(2π p i / n)` over `i = 1..n−1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CosineArgmax {
    /// Every `i` within `1e-9` of the maximum, ascending.
    pub argmax: Vec<usize>,
    pub max: f64,
    /// `sin(k̄π/n)/sin(π/n) − 1`.
    pub closed_form: f64,
}

impl CosineArgmax {
    pub fn argmax_is_extreme_pair(&self, n: usize) -> bool {
        self.argmax == [1, n - 1]
    }

    pub fn max_matches_closed_form(&self) -> bool {
        (self.max - self.closed_form).abs() <= TIE_TOL
    }
}

pub fn cosine_sum_argmax(n: usize, k: usize) -> Result<CosineArgmax, SpectralError> {
    if n < 2 || k < 2 || k + 2 > n {
        return Err(SpectralError::OutOfRange(format!("need 2 <= k <= n-2 (n = {n}, k = {k})")));
    }
    let values: Vec<f64> = (1..n)
        .map(|i| {
            2.0 * (1..=k / 2).map(|p| (2.0 * PI * ((p * i) % n) as f64 / n as f64).cos()).sum::<f64>()
        })
        .collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax = values.iter().enumerate().filter(|(_, &v)| v >= max - TIE_TOL).map(|(i, _)| i + 1).collect();
    let kb = kbar(k) as f64;
    let nf = n as f64;
    let closed_form = (kb * PI / nf).sin() / (PI / nf).sin() - 1.0;
    Ok(CosineArgmax { argmax, max, closed_form })
}

/// Spectral summary of a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    pub algebraic_connectivity: f64,
    pub energy_spectral: f64,
    /// Closed-form value for this `(n, m)` when `m >= n`.
    pub thm5_bound: Option<f64>,
    /// Construction case, when the graph is exactly the constructed one.
    pub thm5_case: Option<Case>,
    pub fiedler_lower: Option<f64>,
    pub fiedler_upper: Option<f64>,
    pub kbar: Option<usize>,
}

pub fn spectral_report(g: &Graph) -> SpectralReport {
    let eigenvalues = laplacian_spectrum(g);
    let a = if g.n() >= 2 && g.is_connected() { eigenvalues[1] } else { 0.0 };
    let energy_spectral = eigenvalues.iter().map(|x| x * x).sum();
    let (n, m) = (g.n(), g.m());
    let k = if n > 0 { 2 * m / n } else { 0 };
    let thm5_bound = if n >= 3 && m >= n { thm5_closed_form(n, k).ok() } else { None };
    let thm5_case = select_case(n, m).ok().filter(|p| construct_plan(p) == *g).map(|p| p.case);
    let (fiedler_lower, fiedler_upper) = if n >= 2 && g.is_connected() {
        match fiedler_bounds_with(g, a) {
            Ok(b) => (Some(b.lower), b.upper),
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    SpectralReport {
        eigenvalues,
        algebraic_connectivity: a,
        energy_spectral,
        thm5_bound,
        thm5_case,
        fiedler_lower,
        fiedler_upper,
        kbar: thm5_bound.map(|_| kbar(k)),
    }
}
