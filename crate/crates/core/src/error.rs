use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("need at least {min} vertices (got {n})")]
    TooFewVertices { n: usize, min: usize },
    #[error("cannot remove every vertex of the graph")]
    RemovesAllVertices,
}

/// Edge-list parse failures. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line 1: malformed header, expected \"n m\"")]
    MalformedHeader,
    #[error("line {line}: malformed edge line, expected \"u v\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("header declares {expected} edges but {found} edge lines follow")]
    EdgeCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnergyError {
    #[error("m = {m} exceeds n(n-1)/2 = {max} for n = {n}")]
    TooManyEdges { n: usize, m: usize, max: usize },
    #[error("graph must have at least one vertex")]
    NoVertices,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("m < n-1: no connected graph with n = {n} vertices and m = {m} edges")]
    TooFewEdges { n: usize, m: usize },
    #[error("m > n(n-1)/2: no simple graph with n = {n} vertices and m = {m} edges")]
    TooManyEdges { n: usize, m: usize },
    #[error("n must be at least 2")]
    TooFewVertices { n: usize },
    #[error("regular lattice needs an even degree d with 2 <= d <= n-1 (n = {n}, d = {d})")]
    InvalidLatticeDegree { n: usize, d: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {diff:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },
    #[error("circulant row is not symmetric at offset {p}")]
    AsymmetricRow { p: usize },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("connectivity requires n >= 2 (got n = {0})")]
    TooSmall(usize),
    #[error("brute-force connectivity is limited to n <= 12 (got n = {0})")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("exhaustive enumeration is limited to n <= {limit} (got n = {n}); pass an override to go further")]
    TooLarge { n: usize, limit: usize },
    #[error("m = {m} out of range 0..={max}")]
    EdgesOutOfRange { m: usize, max: usize },
    #[error("matching table needs 4 <= n <= 7 (got n = {0})")]
    TableRange(usize),
    #[error("canonical form is limited to n <= 8 (got n = {0})")]
    CanonicalBudget(usize),
    #[error("no graph with n = {n}, m = {m} passes the filter")]
    NoCandidates { n: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("initial state has {got} entries, graph has {n} vertices")]
    DimensionMismatch { n: usize, got: usize },
    #[error("invalid time parameters: t_end = {t_end}, dt = {dt}")]
    InvalidTime { t_end: f64, dt: f64 },
    #[error("unstable step: dt * lambda_max = {0} >= 2")]
    UnstableStep(f64),
    #[error("disagreement underflowed inside the fit window; use the exact spectral rate")]
    Underflow,
    #[error("fit window {0} must lie in (0, 1]")]
    InvalidWindow(f64),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("base lattice algebraic connectivity mismatch: closed form {closed_form} vs eigensolver {eigensolver}")]
    BaselineMismatch { closed_form: f64, eigensolver: f64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("verify sweeps are limited to n_max <= {limit} (got {n_max})")]
    NMaxTooLarge { n_max: usize, limit: usize },
}
