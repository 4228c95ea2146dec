//! Deterministic construction of a connected minimum-energy graph for any
//! `(n, m)` with `n - 1 <= m <= n(n-1)/2`.
//!
//! With `k = ⌊2m/n⌋` the construction starts from a ring in which every vertex
//! is joined to its `⌊k/2⌋` nearest neighbours on each side, then adds chords
//! so that exactly `2m - nk` vertices end up with degree `k + 1`:
//!
//! | case   | parity          | `2m`           | chords                                         |
//! |--------|-----------------|----------------|------------------------------------------------|
//! | `C1_1` | k even          | `nk`           | none                                           |
//! | `C1_2` | k even          | `nk + l`       | `i ~ i + ⌊n/2⌋`, `i ≤ l/2`                     |
//! | `C2_1` | k odd, n even   | `nk`           | diameters `i ~ i + n/2`                        |
//! | `C2_2` | k odd, n even   | `nk + l`       | diameters, then `i ~ i + (n-2)/2`, `i ≤ l/2`   |
//! | `C2_3` | k odd, n odd    | `nk + 1`       | `i ~ i + (n-1)/2` for `i ≤ (n+1)/2`            |
//! | `C2_4` | k odd, n odd    | `nk + 1 + l`   | as `C2_3`, continued cyclically for `l/2` more |

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::ConstructError;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    C1_1,
    C1_2,
    C2_1,
    C2_2,
    C2_3,
    C2_4,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::C1_1 => "C1_1",
            Case::C1_2 => "C1_2",
            Case::C2_1 => "C2_1",
            Case::C2_2 => "C2_2",
            Case::C2_3 => "C2_3",
            Case::C2_4 => "C2_4",
        }
    }

    /// The case this one extends by adding chords, if any.
    pub fn base(self) -> Option<Case> {
        match self {
            Case::C1_2 => Some(Case::C1_1),
            Case::C2_2 => Some(Case::C2_1),
            Case::C2_4 => Some(Case::C2_3),
            _ => None,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The resolved branch for a given `(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Even surplus consumed by the extra chords (0 for the base cases).
    pub l: usize,
    pub case: Case,
    pub kbar: usize,
}

impl ConstructionPlan {
    /// Ring half-width: each vertex is joined to this many neighbours per side.
    pub fn ring_radius(&self) -> usize {
        self.k / 2
    }
}

pub fn select_case(n: usize, m: usize) -> Result<ConstructionPlan, ConstructError> {
    if n < 2 {
        return Err(ConstructError::TooFewVertices { n });
    }
    if m < n - 1 {
        return Err(ConstructError::TooFewEdges { n, m });
    }
    if m > n * (n - 1) / 2 {
        return Err(ConstructError::TooManyEdges { n, m });
    }
    let k = 2 * m / n;
    let r = 2 * m - n * k;
    let (case, l) = match (k % 2 == 0, n % 2 == 0) {
        (true, _) if r == 0 => (Case::C1_1, 0),
        (true, _) => (Case::C1_2, r),
        (false, true) if r == 0 => (Case::C2_1, 0),
        (false, true) => (Case::C2_2, r),
        (false, false) if r == 1 => (Case::C2_3, 0),
        (false, false) => (Case::C2_4, r - 1),
    };
    debug_assert_eq!(l % 2, 0, "surplus must be even");
    Ok(ConstructionPlan { n, m, k, l, case, kbar: 2 * (k / 2) + 1 })
}

/// Maps any positive integer onto `1..=n` (residue 0 is vertex `n`).
fn wrap(x: usize, n: usize) -> usize {
    (x - 1) % n + 1
}

struct EdgeSet {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeSet {
    fn new(n: usize) -> Self {
        EdgeSet { n, edges: BTreeSet::new() }
    }

    fn connect(&mut self, a: usize, b: usize) {
        let (u, v) = (a.min(b), a.max(b));
        assert!(u != v && u >= 1 && v <= self.n, "invalid edge ({a}, {b}) for n = {}", self.n);
        assert!(self.edges.insert((u, v)), "construction produced duplicate edge ({u}, {v})");
    }

    fn ring(&mut self, radius: usize) {
        for i in 1..=self.n {
            for j in 1..=radius {
                self.connect(i, wrap(i + j, self.n));
            }
        }
    }

    fn into_graph(self) -> Graph {
        Graph::from_sorted_unchecked(self.n, self.edges.into_iter().collect())
    }
}

pub fn construct(n: usize, m: usize) -> Result<Graph, ConstructError> {
    Ok(construct_plan(&select_case(n, m)?))
}

/// Builds the graph for an already resolved plan.
pub fn construct_plan(plan: &ConstructionPlan) -> Graph {
    let n = plan.n;
    let mut es = EdgeSet::new(n);
    es.ring(plan.ring_radius());
    match plan.case {
        Case::C1_1 => {}
        Case::C1_2 => {
            for i in 1..=plan.l / 2 {
                es.connect(i, i + n / 2);
            }
        }
        Case::C2_1 | Case::C2_2 => {
            for i in 1..=n / 2 {
                es.connect(i, i + n / 2);
            }
            if plan.case == Case::C2_2 {
                for i in 1..=plan.l / 2 {
                    es.connect(i, i + (n - 2) / 2);
                }
            }
        }
        Case::C2_3 | Case::C2_4 => {
            let half = (n - 1) / 2;
            for i in 1..=(n + 1) / 2 {
                es.connect(i, i + half);
            }
            if plan.case == Case::C2_4 {
                for i in (n + 3) / 2..=(n + 1 + plan.l) / 2 {
                    es.connect(i, wrap(i + half, n));
                }
            }
        }
    }
    let g = es.into_graph();
    assert_eq!(g.m(), plan.m, "construction edge count mismatch for {plan:?}");
    g
}

/// The `d`-regular ring lattice: `i` adjacent to `i ± 1, …, i ± d/2` (mod n).
pub fn regular_lattice(n: usize, d: usize) -> Result<Graph, ConstructError> {
    if n < 3 || d < 2 || d % 2 != 0 || d > n - 1 {
        return Err(ConstructError::InvalidLatticeDegree { n, d });
    }
    let mut es = EdgeSet::new(n);
    es.ring(d / 2);
    Ok(es.into_graph())
}

/// Returns `d` if `g` is exactly the `d`-regular ring lattice on its labels.
pub fn is_regular_lattice(g: &Graph) -> Option<usize> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let d = g.degree(1);
    let lattice = regular_lattice(n, d).ok()?;
    (lattice.edges() == g.edges()).then_some(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{laplacian_energy, min_energy_value, optimal_degree_pattern};

    fn plan(n: usize, m: usize) -> ConstructionPlan {
        select_case(n, m).unwrap()
    }

    #[test]
    fn case_examples() {
        let p = plan(7, 14);
        assert_eq!((p.case, p.k, p.l, p.kbar), (Case::C1_1, 4, 0, 5));
        let p = plan(6, 11);
        assert_eq!((p.case, p.k, p.l), (Case::C2_2, 3, 4));
        let p = plan(7, 13);
        assert_eq!((p.case, p.k, p.l), (Case::C2_4, 3, 4));
        assert_eq!(plan(7, 16).case, Case::C1_2);
        assert_eq!(plan(6, 9).case, Case::C2_1);
        assert_eq!(plan(7, 11).case, Case::C2_3);
        assert_eq!(plan(6, 6).case, Case::C1_1);
    }

    #[test]
    fn precondition_errors() {
        assert_eq!(select_case(4, 2), Err(ConstructError::TooFewEdges { n: 4, m: 2 }));
        assert_eq!(select_case(4, 7), Err(ConstructError::TooManyEdges { n: 4, m: 7 }));
        assert_eq!(select_case(1, 0), Err(ConstructError::TooFewVertices { n: 1 }));
    }

    #[test]
    fn case_invariants_hold() {
        for n in 2..=40 {
            for m in n - 1..=n * (n - 1) / 2 {
                let p = plan(n, m);
                let two_m = 2 * m;
                match p.case {
                    Case::C1_1 => assert!(p.k % 2 == 0 && two_m == n * p.k),
                    Case::C1_2 => assert!(p.k % 2 == 0 && two_m == n * p.k + p.l && p.l >= 1 && p.l < n),
                    Case::C2_1 => assert!(p.k % 2 == 1 && n % 2 == 0 && two_m == n * p.k),
                    Case::C2_2 => {
                        assert!(p.k % 2 == 1 && n % 2 == 0 && two_m == n * p.k + p.l && p.l >= 1 && p.l < n)
                    }
                    Case::C2_3 => assert!(p.k % 2 == 1 && n % 2 == 1 && two_m == n * p.k + 1),
                    Case::C2_4 => assert!(
                        p.k % 2 == 1 && n % 2 == 1 && two_m == n * p.k + 1 + p.l && p.l >= 1 && p.l < n - 1
                    ),
                }
                assert_eq!(p.l % 2, 0);
            }
        }
    }

    #[test]
    fn small_worked_graphs() {
        let g = construct(7, 14).unwrap();
        for i in 1..=7 {
            let mut expect: Vec<usize> = [1, 2, 5, 6].iter().map(|&j| wrap(i + j, 7)).collect();
            expect.sort_unstable();
            assert_eq!(g.neighbors(i), &expect[..]);
        }

        let g = construct(6, 9).unwrap();
        for i in 1..=6 {
            let mut expect = vec![wrap(i + 1, 6), wrap(i + 5, 6), wrap(i + 3, 6)];
            expect.sort_unstable();
            assert_eq!(g.neighbors(i), &expect[..]);
        }

        let g = construct(7, 11).unwrap();
        let mut expect: Vec<(usize, usize)> = (1..=7).map(|i| (i.min(wrap(i + 1, 7)), i.max(wrap(i + 1, 7)))).collect();
        expect.extend((1..=4).map(|i| (i, i + 3)));
        expect.sort_unstable();
        assert_eq!(g.edges(), &expect[..]);
        assert_eq!(g.degree(4), 4);
        assert!((1..=7).filter(|&v| v != 4).all(|v| g.degree(v) == 3));

        assert_eq!(construct(4, 3).unwrap().edges(), &[(1, 2), (1, 3), (2, 4)]);
        assert_eq!(construct(2, 1).unwrap().edges(), &[(1, 2)]);
        // follows the C1_1 branch literally: the 6-cycle, not a path
        assert_eq!(construct(6, 6).unwrap(), Graph::cycle(6).unwrap());
    }

    #[test]
    fn construction_is_optimal_and_connected() {
        for n in 2..=30 {
            for m in n - 1..=n * (n - 1) / 2 {
                let g = construct(n, m).unwrap();
                assert_eq!(g.m(), m);
                assert!(g.is_connected(), "({n}, {m}) disconnected");
                let p = optimal_degree_pattern(n, m).unwrap();
                assert_eq!(g.degree_sequence(), p.degree_sequence(), "({n}, {m})");
                assert_eq!(laplacian_energy(&g), min_energy_value(n, m).unwrap());
            }
        }
    }

    #[test]
    fn extended_cases_contain_their_base() {
        for n in 3..=30 {
            for m in n - 1..=n * (n - 1) / 2 {
                let p = plan(n, m);
                let Some(base_case) = p.case.base() else { continue };
                let base_m = match base_case {
                    Case::C2_3 => (n * p.k + 1) / 2,
                    _ => n * p.k / 2,
                };
                // for k = 1 the base has fewer than n - 1 edges, so build it directly
                let base = ConstructionPlan { m: base_m, l: 0, case: base_case, ..p };
                if let Ok(resolved) = select_case(n, base_m) {
                    assert_eq!(resolved, base);
                }
                let g = construct_plan(&p);
                assert!(construct_plan(&base).edges().iter().all(|&(u, v)| g.has_edge(u, v)), "({n}, {m})");
            }
        }
    }

    #[test]
    fn deterministic() {
        for (n, m) in [(7, 16), (9, 20), (10, 23)] {
            assert_eq!(construct(n, m).unwrap().to_edge_list(), construct(n, m).unwrap().to_edge_list());
        }
    }

    #[test]
    fn lattice_detection() {
        assert_eq!(is_regular_lattice(&construct(7, 14).unwrap()), Some(4));
        assert_eq!(is_regular_lattice(&construct(6, 9).unwrap()), None);
        assert_eq!(is_regular_lattice(&Graph::complete(3).unwrap()), Some(2));
        assert_eq!(is_regular_lattice(&Graph::cycle(8).unwrap()), Some(2));
        assert_eq!(is_regular_lattice(&Graph::path(5).unwrap()), None);
        for n in 3..=20 {
            for k in (2..n).step_by(2) {
                assert_eq!(is_regular_lattice(&construct(n, n * k / 2).unwrap()), Some(k));
            }
        }
    }
}
