//! Exhaustive search over all labeled graphs with fixed `(n, m)`.
//!
//! Graphs are encoded as bitmasks over the lexicographically ordered vertex
//! pairs `(1,2), (1,3), …, (n−1,n)`. Extremal values are computed on labeled
//! graphs; only the extremal sets are reduced up to isomorphism.

use std::collections::HashSet;

use serde::{Serialize, Serializer};

use crate::connectivity::subsets_of_size;
use crate::energy::min_energy_value;
use crate::error::SearchError;
use crate::graph::Graph;
use crate::spectral::{symmetric_eigenvalues, SymmetricMatrix};

/// Default bound on `n` for enumeration.
pub const ENUMERATION_LIMIT: usize = 7;
/// Hard bound: the pair set must fit in a `u64`.
pub const OVERRIDE_LIMIT: usize = 11;
pub const CANONICAL_LIMIT: usize = 8;
/// Graphs within this distance of the maximum algebraic connectivity tie.
pub const A_TIE_TOL: f64 = 1e-9;

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect()
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    // 0-based u < v
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn mask_to_graph(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
    Graph::from_sorted_unchecked(n, edges)
}

fn graph_to_mask(g: &Graph) -> u64 {
    g.edges().iter().fold(0, |acc, &(u, v)| acc | 1 << pair_index(g.n(), u - 1, v - 1))
}

/// Every labeled simple graph on `n` vertices with `m` edges, once each.
pub fn enumerate_graphs(
    n: usize,
    m: usize,
    allow_large: bool,
) -> Result<impl Iterator<Item = Graph>, SearchError> {
    check_size(n, m, allow_large)?;
    let pairs = pair_list(n);
    Ok(subsets_of_size(pairs.len(), m).map(move |mask| mask_to_graph(n, &pairs, mask)))
}

fn check_size(n: usize, m: usize, allow_large: bool) -> Result<(), SearchError> {
    let limit = if allow_large { OVERRIDE_LIMIT } else { ENUMERATION_LIMIT };
    if n > limit {
        return Err(SearchError::TooLarge { n, limit });
    }
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(SearchError::EdgesOutOfRange { m, max });
    }
    Ok(())
}

/// Relabeling tables for all `n!` permutations, acting on pair indices.
struct Relabelings {
    maps: Vec<Vec<u8>>,
}

impl Relabelings {
    fn new(n: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut maps = Vec::new();
        permute(&mut perm, 0, &mut |p| {
            let mut map = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for u in 0..n {
                for v in u + 1..n {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    map.push(pair_index(n, a, b) as u8);
                }
            }
            maps.push(map);
        });
        Relabelings { maps }
    }

    fn apply(map: &[u8], mut mask: u64) -> u64 {
        let mut out = 0u64;
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            out |= 1 << map[i];
        }
        out
    }

    fn orbit(&self, mask: u64) -> impl Iterator<Item = u64> + '_ {
        self.maps.iter().map(move |m| Self::apply(m, mask))
    }
}

fn permute(p: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize])) {
    if at + 1 >= p.len() {
        f(p);
        return;
    }
    for i in at..p.len() {
        p.swap(at, i);
        permute(p, at + 1, f);
        p.swap(at, i);
    }
}

/// Minimum pair-bitmask over all vertex relabelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    mask: u64,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn to_graph(&self) -> Graph {
        mask_to_graph(self.n, &pair_list(self.n), self.mask)
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_graph().edges().serialize(s)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, SearchError> {
    if g.n() > CANONICAL_LIMIT {
        return Err(SearchError::CanonicalBudget(g.n()));
    }
    let mask = graph_to_mask(g);
    let min = Relabelings::new(g.n()).orbit(mask).min().unwrap_or(0);
    Ok(CanonicalForm { n: g.n(), mask: min })
}

/// Reduces labeled masks to isomorphism classes, sorted by canonical form.
fn classes(n: usize, masks: &[u64], relabel: &Relabelings) -> Vec<CanonicalForm> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &mask in masks {
        if seen.contains(&mask) {
            continue;
        }
        let mut min = u64::MAX;
        for image in relabel.orbit(mask) {
            min = min.min(image);
            seen.insert(image);
        }
        out.push(CanonicalForm { n, mask: min });
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub connected_only: bool,
    /// Worker threads; 0 or 1 runs inline. Results do not depend on it.
    pub threads: usize,
    /// Lift the `n <= 7` guard (up to `n = 11`).
    pub allow_large: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub m: usize,
    pub connected_only: bool,
    pub min_energy: u64,
    pub max_a: f64,
    pub min_energy_reps: Vec<CanonicalForm>,
    pub max_a_reps: Vec<CanonicalForm>,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Labeled graphs enumerated.
    pub counts: u64,
    /// Labeled graphs that passed the connectivity filter.
    pub considered: u64,
    pub n_min_energy_classes: usize,
    pub n_max_a_classes: usize,
    /// Labeled graphs in each extremal set.
    pub labeled_min_energy: usize,
    pub labeled_max_a: usize,
    /// A complete bipartite graph is among the max-a representatives.
    pub complete_bipartite_max_a: bool,
}

/// Fixed-size adjacency data for one mask.
struct Scan {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Scan {
    fn adjacency(&self, mask: u64) -> [u64; OVERRIDE_LIMIT] {
        let mut adj = [0u64; OVERRIDE_LIMIT];
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (u, v) = self.pairs[i];
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        adj
    }

    fn connected(&self, adj: &[u64]) -> bool {
        let all = (1u64 << self.n) - 1;
        let mut reached = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= !reached;
            reached |= next;
            frontier = next;
        }
        reached == all
    }

    fn algebraic_connectivity(&self, adj: &[u64]) -> f64 {
        let n = self.n;
        let m = SymmetricMatrix::from_fn(n, |i, j| {
            if i == j {
                adj[i].count_ones() as f64
            } else if adj[i] >> j & 1 == 1 {
                -1.0
            } else {
                0.0
            }
        })
        .expect("Laplacian is symmetric");
        symmetric_eigenvalues(&m).expect("QL converges on Laplacian matrices")[1]
    }
}

#[derive(Debug, Clone, Default)]
struct Partial {
    counts: u64,
    considered: u64,
    min_energy: Option<u64>,
    min_set: Vec<u64>,
    max_a: f64,
    max_set: Vec<(u64, f64)>,
}

impl Partial {
    fn offer_energy(&mut self, mask: u64, e: u64) {
        match self.min_energy {
            Some(best) if e > best => {}
            Some(best) if e == best => self.min_set.push(mask),
            _ => {
                self.min_energy = Some(e);
                self.min_set = vec![mask];
            }
        }
    }

    fn offer_a(&mut self, mask: u64, a: f64) {
        if self.max_set.is_empty() || a > self.max_a {
            self.max_a = a;
            self.max_set.retain(|&(_, b)| b >= a - A_TIE_TOL);
        }
        if a >= self.max_a - A_TIE_TOL {
            self.max_set.push((mask, a));
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.counts += other.counts;
        self.considered += other.considered;
        if let Some(e) = other.min_energy {
            match self.min_energy {
                Some(best) if e > best => {}
                Some(best) if e == best => self.min_set.extend(other.min_set),
                _ => {
                    self.min_energy = Some(e);
                    self.min_set = other.min_set;
                }
            }
        }
        if !other.max_set.is_empty() {
            self.max_a = if self.max_set.is_empty() { other.max_a } else { self.max_a.max(other.max_a) };
            self.max_set.extend(other.max_set);
            let max = self.max_a;
            self.max_set.retain(|&(_, b)| b >= max - A_TIE_TOL);
        }
        self
    }
}

fn scan_part(scan: &Scan, m: usize, connected_only: bool, part: usize, parts: usize) -> Partial {
    let n = scan.n;
    let mut acc = Partial::default();
    // a <= n/(n-1) * min degree lets most graphs skip the eigensolver
    let bound_factor = if n > 1 { n as f64 / (n - 1) as f64 } else { 0.0 };
    for (idx, mask) in subsets_of_size(scan.pairs.len(), m).enumerate() {
        if idx % parts != part {
            continue;
        }
        acc.counts += 1;
        let adj = scan.adjacency(mask);
        let connected = n >= 1 && scan.connected(&adj[..n]);
        if connected_only && !connected {
            continue;
        }
        acc.considered += 1;
        let degrees = adj[..n].iter().map(|a| a.count_ones() as u64);
        let energy = degrees.clone().map(|d| d * d + d).sum();
        acc.offer_energy(mask, energy);

        let a = if n < 2 || !connected {
            0.0
        } else {
            let min_degree = degrees.min().unwrap_or(0) as f64;
            if !acc.max_set.is_empty() && bound_factor * min_degree < acc.max_a - A_TIE_TOL {
                continue;
            }
            scan.algebraic_connectivity(&adj[..n])
        };
        acc.offer_a(mask, a);
    }
    acc
}

fn is_complete_bipartite(g: &Graph) -> bool {
    let n = g.n();
    if n < 2 {
        return false;
    }
    let side: Vec<bool> = (1..=n).map(|v| v == 1 || !g.has_edge(1, v)).collect();
    let a = side.iter().filter(|&&s| s).count();
    if a == n || g.m() != a * (n - a) {
        return false;
    }
    g.edges().iter().all(|&(u, v)| side[u - 1] != side[v - 1])
}

pub fn extremal_search(n: usize, m: usize, connected_only: bool) -> Result<ExtremalReport, SearchError> {
    extremal_search_with(n, m, SearchOptions { connected_only, ..SearchOptions::default() })
}

pub fn extremal_search_with(n: usize, m: usize, opts: SearchOptions) -> Result<ExtremalReport, SearchError> {
    check_size(n, m, opts.allow_large)?;
    if n == 0 {
        return Err(SearchError::NoCandidates { n, m });
    }
    let scan = Scan { n, pairs: pair_list(n) };
    let parts = opts.threads.max(1);
    let partial = if parts == 1 {
        scan_part(&scan, m, opts.connected_only, 0, 1)
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..parts)
                .map(|p| {
                    let scan = &scan;
                    s.spawn(move || scan_part(scan, m, opts.connected_only, p, parts))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .fold(Partial::default(), Partial::merge)
        })
    };
    let Some(min_energy) = partial.min_energy else {
        return Err(SearchError::NoCandidates { n, m });
    };
    let mut min_set = partial.min_set;
    min_set.sort_unstable();
    let mut max_set: Vec<u64> = partial.max_set.iter().map(|&(mask, _)| mask).collect();
    max_set.sort_unstable();

    let relabel = Relabelings::new(n);
    let min_reps = classes(n, &min_set, &relabel);
    let max_reps = classes(n, &max_set, &relabel);
    let matched = min_reps.iter().any(|r| max_reps.binary_search(r).is_ok());
    let complete_bipartite_max_a = max_reps.iter().any(|r| is_complete_bipartite(&r.to_graph()));
    Ok(ExtremalReport {
        n,
        m,
        connected_only: opts.connected_only,
        min_energy,
        max_a: partial.max_a,
        n_min_energy_classes: min_reps.len(),
        n_max_a_classes: max_reps.len(),
        min_energy_reps: min_reps,
        max_a_reps: max_reps,
        matched,
        counts: partial.counts,
        considered: partial.considered,
        labeled_min_energy: min_set.len(),
        labeled_max_a: max_set.len(),
        complete_bipartite_max_a,
    })
}

/// One extremal row per `m` in `n−1 ..= n(n−1)/2`, over all graphs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingTable {
    pub n: usize,
    pub rows: Vec<ExtremalReport>,
    pub non_matching: Vec<usize>,
    pub matching_fraction: f64,
    /// `m = n − 1` is among the non-matching rows.
    pub sparsest_non_matching: bool,
}

impl MatchingTable {
    /// Every row agrees with the closed-form minimum energy.
    pub fn energy_consistent(&self) -> bool {
        self.rows.iter().all(|r| min_energy_value(r.n, r.m).map_or(false, |e| e.0 == r.min_energy))
    }
}

pub fn matching_table(n: usize) -> Result<MatchingTable, SearchError> {
    matching_table_with(n, 1)
}

pub fn matching_table_with(n: usize, threads: usize) -> Result<MatchingTable, SearchError> {
    if !(4..=7).contains(&n) {
        return Err(SearchError::TableRange(n));
    }
    let opts = SearchOptions { connected_only: false, threads, allow_large: false };
    let rows = (n - 1..=n * (n - 1) / 2)
        .map(|m| extremal_search_with(n, m, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let non_matching: Vec<usize> = rows.iter().filter(|r| !r.matched).map(|r| r.m).collect();
    let matching_fraction = (rows.len() - non_matching.len()) as f64 / rows.len() as f64;
    Ok(MatchingTable { n, sparsest_non_matching: non_matching.first() == Some(&(n - 1)), non_matching, matching_fraction, rows })
}
