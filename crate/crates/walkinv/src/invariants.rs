//! Distance- and resistance-based graph invariants.
//!
//! Effective resistances come from Laplacian minors and the Matrix-Tree
//! theorem: `r(v,w) = det L_vw / det L_v`, where `det L_v` is the number of
//! spanning trees and `det L_vw` counts the two-component spanning forests
//! separating `v` from `w`. This keeps every value an exact rational.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::linalg::laplacian;
use crate::rational::{rat_u, Rational};

/// Exact effective resistances between all vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistanceMatrix {
    n: usize,
    r: Vec<Rational>,
    tau: Rational,
}

impl ResistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> &Rational {
        &self.r[x * self.n + y]
    }

    /// Number of spanning trees (the shared denominator of all entries).
    pub fn spanning_trees(&self) -> &Rational {
        &self.tau
    }
}

/// Effective resistance matrix of a connected graph, via Laplacian minors.
/// The spanning-tree count `det L_v` is computed once and shared by all
/// `n(n-1)/2` pair minors.
pub fn resistance_matrix(g: &Graph) -> ResistanceMatrix {
    let n = g.n();
    let lap = laplacian(g);
    let tau = lap.delete_rc(&[0]).expect("vertex 0 exists").det();
    let mut r = vec![Rational::zero(); n * n];
    for x in 0..n {
        for y in x + 1..n {
            let minor = lap.delete_rc(&[x, y]).expect("checked indices").det();
            let val = minor / &tau;
            r[x * n + y] = val.clone();
            r[y * n + x] = val;
        }
    }
    ResistanceMatrix { n, r, tau }
}

/// Per-vertex distance and resistance centralities.
///
/// `centrality(v)` sums distances from `v`; the `_pi` variants weight each
/// target by its degree; the `resistance_` variants replace distance by
/// effective resistance. On a tree the two families coincide entrywise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexInvariants {
    pub centrality: Vec<Rational>,
    pub centrality_pi: Vec<Rational>,
    pub resistance_centrality: Vec<Rational>,
    pub resistance_centrality_pi: Vec<Rational>,
}

/// Whole-graph invariants; all exact, integers where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalInvariants {
    pub n: usize,
    pub m: usize,
    /// Spanning-tree count `tau(G)`.
    pub spanning_trees: Rational,
    pub wiener: Rational,
    pub kirchhoff: Rational,
    pub kirchhoff_pi: Rational,
    pub kirchhoff_pi2: Rational,
    pub schultz: Rational,
    pub gutman: Rational,
}

pub fn vertex_invariants(g: &Graph) -> VertexInvariants {
    vertex_invariants_from(g, &g.distances(), &resistance_matrix(g))
}

/// As [`vertex_invariants`], reusing precomputed distance and resistance
/// matrices (the enumeration sweeps share them across checks).
pub fn vertex_invariants_from(
    g: &Graph,
    dist: &DistanceMatrix,
    res: &ResistanceMatrix,
) -> VertexInvariants {
    let n = g.n();
    let mut inv = VertexInvariants {
        centrality: Vec::with_capacity(n),
        centrality_pi: Vec::with_capacity(n),
        resistance_centrality: Vec::with_capacity(n),
        resistance_centrality_pi: Vec::with_capacity(n),
    };
    for v in 0..n {
        let mut d_pi = 0usize;
        let mut r_sum = Rational::zero();
        let mut r_pi = Rational::zero();
        for w in 0..n {
            d_pi += g.degree(w) * dist.get(v, w);
            r_sum += res.get(v, w);
            r_pi += res.get(v, w) * rat_u(g.degree(w));
        }
        inv.centrality.push(rat_u(dist.row_sum(v)));
        inv.centrality_pi.push(rat_u(d_pi));
        inv.resistance_centrality.push(r_sum);
        inv.resistance_centrality_pi.push(r_pi);
    }
    inv
}

pub fn global_invariants(g: &Graph) -> GlobalInvariants {
    global_invariants_from(g, &g.distances(), &resistance_matrix(g))
}

/// All sums run over ordered pairs and are halved, matching the definitions
/// of the indices as half of a double sum.
pub fn global_invariants_from(
    g: &Graph,
    dist: &DistanceMatrix,
    res: &ResistanceMatrix,
) -> GlobalInvariants {
    let n = g.n();
    let two = rat_u(2);
    let mut wiener = 0usize;
    let mut schultz = 0usize;
    let mut gutman = 0usize;
    let mut kirchhoff = Rational::zero();
    let mut kirchhoff_pi = Rational::zero();
    let mut kirchhoff_pi2 = Rational::zero();
    for x in 0..n {
        let dx = g.degree(x);
        for y in 0..n {
            let dy = g.degree(y);
            let d = dist.get(x, y);
            wiener += d;
            schultz += (dx + dy) * d;
            gutman += dx * dy * d;
            let r = res.get(x, y);
            kirchhoff += r;
            kirchhoff_pi += r * rat_u(dy);
            kirchhoff_pi2 += r * rat_u(dx * dy);
        }
    }
    GlobalInvariants {
        n,
        m: g.m(),
        spanning_trees: res.spanning_trees().clone(),
        wiener: rat_u(wiener) / &two,
        kirchhoff: kirchhoff / &two,
        kirchhoff_pi: kirchhoff_pi / &two,
        kirchhoff_pi2: kirchhoff_pi2 / &two,
        schultz: rat_u(schultz) / &two,
        gutman: rat_u(gutman) / &two,
    }
}

/// Exact identity checks that hold on every tree: each field records one
/// equality tested with zero tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeIdentityReport {
    /// `D_pi(x) = 2 D(x) - m` for every vertex.
    pub centrality_pi_formula: bool,
    /// `Sch(T) = 4W - n(n-1)`.
    pub schultz_formula: bool,
    /// `Gut(T) = 4W - (n-1)(2n-1)`.
    pub gutman_formula: bool,
    /// `K = W`.
    pub kirchhoff_equals_wiener: bool,
    /// `K_pi = Sch / 2`.
    pub kirchhoff_pi_half_schultz: bool,
    /// `K_pi2 = Gut`.
    pub kirchhoff_pi2_equals_gutman: bool,
    /// `r(x,y) = d(x,y)` entrywise, hence `R = D` and `R_pi = D_pi`.
    pub resistance_equals_distance: bool,
}

impl TreeIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.centrality_pi_formula
            && self.schultz_formula
            && self.gutman_formula
            && self.kirchhoff_equals_wiener
            && self.kirchhoff_pi_half_schultz
            && self.kirchhoff_pi2_equals_gutman
            && self.resistance_equals_distance
    }
}

pub fn tree_identities_report(g: &Graph) -> Result<TreeIdentityReport> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let dist = g.distances();
    let res = resistance_matrix(g);
    Ok(tree_identities_report_from(g, &dist, &res))
}

pub fn tree_identities_report_from(
    g: &Graph,
    dist: &DistanceMatrix,
    res: &ResistanceMatrix,
) -> TreeIdentityReport {
    let n = g.n();
    let m = g.m();
    let vinv = vertex_invariants_from(g, dist, res);
    let ginv = global_invariants_from(g, dist, res);
    let four_w = rat_u(4) * &ginv.wiener;
    TreeIdentityReport {
        centrality_pi_formula: (0..n).all(|x| {
            vinv.centrality_pi[x] == rat_u(2) * &vinv.centrality[x] - rat_u(m)
        }),
        schultz_formula: ginv.schultz == &four_w - rat_u(n * (n - 1)),
        gutman_formula: ginv.gutman == &four_w - rat_u((n - 1) * (2 * n - 1)),
        kirchhoff_equals_wiener: ginv.kirchhoff == ginv.wiener,
        kirchhoff_pi_half_schultz: ginv.kirchhoff_pi == &ginv.schultz / rat_u(2),
        kirchhoff_pi2_equals_gutman: ginv.kirchhoff_pi2 == ginv.gutman,
        resistance_equals_distance: (0..n).all(|x| {
            (0..n).all(|y| res.get(x, y) == &rat_u(dist.get(x, y)))
        }),
    }
}

/// Splits a tree at edge `e` and counts the vertices on `x`'s side (`A`) and
/// the far side (`B`), so `|A| + |B| = n` and `x` lies in `A`.
pub fn branch_sizes(g: &Graph, x: usize, e: (usize, usize)) -> Result<(usize, usize)> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if x >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
    }
    if !g.has_edge(e.0, e.1) {
        return Err(Error::NotAnEdge(e.0, e.1));
    }
    // BFS from x without crossing e.
    let mut seen = vec![false; g.n()];
    let mut stack = vec![x];
    seen[x] = true;
    let mut a = 1usize;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            let crossing = (v, w) == e || (w, v) == e;
            if !crossing && !seen[w] {
                seen[w] = true;
                a += 1;
                stack.push(w);
            }
        }
    }
    Ok((a, g.n() - a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    #[test]
    fn resistance_examples() {
        let k3 = Graph::complete(3).unwrap();
        let r = resistance_matrix(&k3);
        assert_eq!(r.get(0, 1), &rat(2, 3));
        assert_eq!(r.spanning_trees(), &rat_i(3));

        // Trees: resistance equals distance.
        for g in [Graph::path(4).unwrap(), Graph::star(5).unwrap()] {
            let d = g.distances();
            let r = resistance_matrix(&g);
            for x in 0..g.n() {
                for y in 0..g.n() {
                    assert_eq!(r.get(x, y), &rat_u(d.get(x, y)));
                }
            }
        }

        // Two vertices of a k-clique: exactly 2/k.
        for k in [4usize, 5, 6] {
            let r = resistance_matrix(&Graph::complete(k).unwrap());
            assert_eq!(r.get(0, 1), &rat(2, k as i64));
        }
    }

    #[test]
    fn vertex_and_global_examples() {
        let p3 = Graph::path(3).unwrap();
        let v = vertex_invariants(&p3);
        assert_eq!(v.centrality, vec![rat_i(3), rat_i(2), rat_i(3)]);
        let g = global_invariants(&p3);
        assert_eq!(g.wiener, rat_i(4));

        let s4 = Graph::star(4).unwrap();
        let v = vertex_invariants(&s4);
        assert_eq!(v.centrality[0], rat_i(3));
        assert_eq!(v.centrality[1], rat_i(5));
        assert_eq!(global_invariants(&s4).wiener, rat_i(9));

        let k3 = Graph::complete(3).unwrap();
        let g = global_invariants(&k3);
        assert_eq!(g.kirchhoff, rat_i(2));
        assert_eq!(g.kirchhoff_pi2, rat_i(8));
    }

    #[test]
    fn centrality_sum_is_twice_wiener() {
        for g in [
            Graph::path(5).unwrap(),
            Graph::star(6).unwrap(),
            Graph::cycle(5).unwrap(),
            Graph::complete(4).unwrap(),
        ] {
            let v = vertex_invariants(&g);
            let w = global_invariants(&g).wiener;
            let sum_d: Rational = v.centrality.iter().sum();
            let sum_r: Rational = v.resistance_centrality.iter().sum();
            assert_eq!(sum_d, rat_u(2) * &w);
            assert_eq!(sum_r, rat_u(2) * global_invariants(&g).kirchhoff);
        }
    }

    #[test]
    fn tree_identities_examples() {
        for g in [
            Graph::complete(2).unwrap(),
            Graph::path(3).unwrap(),
            Graph::star(4).unwrap(),
            Graph::path(6).unwrap(),
        ] {
            assert!(tree_identities_report(&g).unwrap().all_hold());
        }
        // Hand values: path(3) has Sch = 10, Gut = 6.
        let g = global_invariants(&Graph::path(3).unwrap());
        assert_eq!(g.schultz, rat_i(10));
        assert_eq!(g.gutman, rat_i(6));

        assert_eq!(
            tree_identities_report(&Graph::complete(3).unwrap()),
            Err(Error::NotATree)
        );
    }

    #[test]
    fn spanning_tree_counts() {
        for n in 2..=6 {
            let path = Graph::path(n).unwrap();
            assert_eq!(resistance_matrix(&path).spanning_trees(), &rat_i(1));
            let complete = Graph::complete(n).unwrap();
            assert_eq!(
                resistance_matrix(&complete).spanning_trees(),
                &rat_i((n as i64).pow(n as u32 - 2))
            );
        }
    }

    #[test]
    fn branch_sizes_examples() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(branch_sizes(&p3, 0, (1, 2)).unwrap(), (2, 1));

        let s4 = Graph::star(4).unwrap();
        for leaf in 1..4 {
            assert_eq!(branch_sizes(&s4, 0, (0, leaf)).unwrap(), (3, 1));
        }

        assert_eq!(
            branch_sizes(&Graph::cycle(4).unwrap(), 0, (0, 1)),
            Err(Error::NotATree)
        );
        assert_eq!(
            branch_sizes(&p3, 0, (0, 2)),
            Err(Error::NotAnEdge(0, 2))
        );
    }
}
