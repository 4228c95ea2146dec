use lapen::connectivity::{connectivity_report, ConnectivityReport};
use lapen::energy::is_min_energy;
use lapen::spectral::{corollary3_guarantee, spectral_report, SpectralReport, BOUND_TOL};
use lapen::{laplacian_energy, min_energy_value, Graph};
use serde::Serialize;

/// Everything `analyze` reports about one graph.
#[derive(Debug, Serialize)]
pub struct AnalysisBundle {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub energy: u64,
    pub min_energy: Option<u64>,
    pub is_min_energy: bool,
    #[serde(flatten)]
    pub spectral: SpectralReport,
    pub connectivity: Option<ConnectivityReport>,
    pub checklist: Checklist,
}

/// `None` marks a check that does not apply to this graph.
#[derive(Debug, Serialize)]
pub struct Checklist {
    pub thm1_degree_match: bool,
    pub thm4_pass: Option<bool>,
    pub thm5_pass: Option<bool>,
    pub corollary3_floor: Option<f64>,
    pub corollary3_pass: Option<bool>,
}

pub fn analyze(g: &Graph) -> AnalysisBundle {
    let (n, m) = (g.n(), g.m());
    let k = if n > 0 { 2 * m / n } else { 0 };
    let spectral = spectral_report(g);
    let connectivity = (n >= 2).then(|| connectivity_report(g).expect("n >= 2"));
    let a = spectral.algebraic_connectivity;
    let connected = n >= 2 && g.is_connected();

    let thm4_pass = connectivity
        .as_ref()
        .filter(|_| connected)
        .map(|c| c.vertex_connectivity == k && c.edge_connectivity == k);
    let thm5_pass = spectral.thm5_bound.map(|b| a >= b - BOUND_TOL);
    let corollary3_floor = if m + 1 >= n { corollary3_guarantee(n, m) } else { None };
    let checklist = Checklist {
        thm1_degree_match: is_min_energy(g),
        thm4_pass,
        thm5_pass,
        corollary3_floor,
        corollary3_pass: corollary3_floor.map(|f| a >= f - BOUND_TOL),
    };
    AnalysisBundle {
        n,
        m,
        k,
        energy: laplacian_energy(g).0,
        min_energy: min_energy_value(n, m).ok().map(|e| e.0),
        is_min_energy: checklist.thm1_degree_match,
        spectral,
        connectivity,
        checklist,
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

impl AnalysisBundle {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k:<24}{v}\n"));
        line("n", self.n.to_string());
        line("m", self.m.to_string());
        line("k", self.k.to_string());
        line("energy", self.energy.to_string());
        line("min_energy", opt(&self.min_energy));
        line("is_min_energy", self.is_min_energy.to_string());
        line("algebraic_connectivity", format!("{:.12}", self.spectral.algebraic_connectivity));
        line("energy_spectral", format!("{:.9}", self.spectral.energy_spectral));
        line("thm5_bound", opt(&self.spectral.thm5_bound));
        line("thm5_case", opt(&self.spectral.thm5_case));
        line("fiedler_lower", opt(&self.spectral.fiedler_lower));
        line("fiedler_upper", opt(&self.spectral.fiedler_upper));
        if let Some(c) = &self.connectivity {
            line("vertex_connectivity", c.vertex_connectivity.to_string());
            line("edge_connectivity", c.edge_connectivity.to_string());
            line("min_degree", c.min_degree.to_string());
            line("vertex_cut", format!("{:?}", c.vertex_cut));
            line("edge_cut", format!("{:?}", c.edge_cut));
        }
        line("thm1_degree_match", self.checklist.thm1_degree_match.to_string());
        line("thm4_pass", opt(&self.checklist.thm4_pass));
        line("thm5_pass", opt(&self.checklist.thm5_pass));
        line("corollary3_floor", opt(&self.checklist.corollary3_floor));
        line("corollary3_pass", opt(&self.checklist.corollary3_pass));
        out
    }
}
