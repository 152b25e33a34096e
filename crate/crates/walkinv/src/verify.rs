//! Theorem-level verification campaigns.
//!
//! Each suite enumerates a small-instance corpus exhaustively (labelled
//! trees via Prüfer codes, connected graphs via edge masks) and checks exact
//! identities with zero tolerance, counting failures per named check.
//! Sweeps parallelise over the enumeration index with commutative tallies,
//! so results are deterministic regardless of thread schedule.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{
    edge_pairs, graph_from_edge_mask, labelled_tree_by_index, labelled_tree_count,
    random_connected_graph, random_labelled_tree, MAX_GRAPH_ENUM,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{
    branch_sizes, global_invariants_from, resistance_matrix, tree_identities_report_from,
    vertex_invariants_from,
};
use crate::linalg::{det_i128, laplacian};
use crate::rational::{frac_string, rat_u, Rational};
use crate::simulate::{derive_seed, estimate_cover_time, WalkConfig};
use crate::spectral::{eigen_identities_check, kemeny_triple, puv_relations};
use crate::walkcost::{
    cost_table_from, hitting_matrix_linear, hitting_matrix_tetali_from, return_time,
    tree_hitting_bounds_from, zw_identity_from, CostTable, HittingMatrix,
};

/// Largest `n` accepted by the tree sweeps (runtime guard; enumeration
/// itself goes one further).
pub const MAX_TREE_SUITE: usize = 8;
/// Largest tree size in the scaling experiment.
pub const MAX_SCALING_N: usize = 2048;

// ---------------------------------------------------------------------------
// Vertex preorders
// ---------------------------------------------------------------------------

/// Exact key values for the six vertex orderings compared by the preorder
/// campaign:
///
/// (i) resistance centrality `R`, (ii) weighted resistance centrality
/// `R_pi`, (iii) the pairwise hitting comparison `x <= y iff H_yx <= H_xy`,
/// (iv) `RC_pi`, (v) `RC`, (vi) `CC` descending. On a tree, `R` and `R_pi`
/// coincide with the distance centralities `D` and `D_pi`.
#[derive(Debug, Clone)]
pub struct PreorderProfile {
    pub resistance_centrality: Vec<Rational>,
    pub resistance_centrality_pi: Vec<Rational>,
    pub hitting: HittingMatrix,
    pub reverse_cover_cost_pi: Vec<Rational>,
    pub reverse_cover_cost: Vec<Rational>,
    pub cover_cost: Vec<Rational>,
}

pub const ORDERING_COUNT: usize = 6;

impl PreorderProfile {
    fn n(&self) -> usize {
        self.resistance_centrality.len()
    }

    /// Comparison outcome of `x` against `y` under ordering `ord`.
    fn cmp(&self, ord: usize, x: usize, y: usize) -> Ordering {
        match ord {
            0 => self.resistance_centrality[x].cmp(&self.resistance_centrality[y]),
            1 => self.resistance_centrality_pi[x].cmp(&self.resistance_centrality_pi[y]),
            // x comes earlier when it is easier to reach: H_yx <= H_xy.
            2 => self.hitting.get(y, x).cmp(self.hitting.get(x, y)),
            3 => self.reverse_cover_cost_pi[x].cmp(&self.reverse_cover_cost_pi[y]),
            4 => self.reverse_cover_cost[x].cmp(&self.reverse_cover_cost[y]),
            5 => self.cover_cost[y].cmp(&self.cover_cost[x]),
            _ => unreachable!(),
        }
    }
}

pub fn preorder_profile(g: &Graph) -> Result<PreorderProfile> {
    let dist = g.distances();
    let res = resistance_matrix(g);
    let vinv = vertex_invariants_from(g, &dist, &res);
    let ginv = global_invariants_from(g, &dist, &res);
    let hit = hitting_matrix_linear(g);
    let table = cost_table_from(g, &hit, &vinv, &ginv)?;
    Ok(PreorderProfile {
        resistance_centrality: vinv.resistance_centrality,
        resistance_centrality_pi: vinv.resistance_centrality_pi,
        hitting: hit,
        reverse_cover_cost_pi: table.reverse_cover_cost_pi,
        reverse_cover_cost: table.reverse_cover_cost,
        cover_cost: table.cover_cost,
    })
}

/// `equivalences[i][j]` is true when orderings `i` and `j` induce the same
/// preorder: identical comparison outcome on every ordered pair, ties
/// included (the claims are stated with `<=` both ways, so tie structure is
/// part of the equivalence).
pub fn preorder_equivalences_from(p: &PreorderProfile) -> [[bool; ORDERING_COUNT]; ORDERING_COUNT] {
    let n = p.n();
    let mut eq = [[true; ORDERING_COUNT]; ORDERING_COUNT];
    for i in 0..ORDERING_COUNT {
        for j in i + 1..ORDERING_COUNT {
            let same = (0..n).all(|x| (0..n).all(|y| p.cmp(i, x, y) == p.cmp(j, x, y)));
            eq[i][j] = same;
            eq[j][i] = same;
        }
    }
    eq
}

pub fn preorder_equivalences(g: &Graph) -> Result<[[bool; ORDERING_COUNT]; ORDERING_COUNT]> {
    Ok(preorder_equivalences_from(&preorder_profile(g)?))
}

/// Checks directly on the hitting matrix that `x <= y iff H_yx <= H_xy` is
/// transitive (it is total by construction), i.e. that the hitting
/// comparison really defines a linear preorder on the vertices.
pub fn hitting_order_is_total_preorder(p: &PreorderProfile) -> bool {
    let n = p.n();
    let leq = |x: usize, y: usize| p.hitting.get(y, x) <= p.hitting.get(x, y);
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| !(leq(x, y) && leq(y, z)) || leq(x, z))
        })
    })
}

// ---------------------------------------------------------------------------
// Extremal certificates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtremalQuantity {
    CoverCostMin,
    CoverCostMax,
    ReverseCoverCostMin,
    ReverseCoverCostMax,
    HittingMin,
    HittingMax,
}

pub const EXTREMAL_QUANTITIES: [ExtremalQuantity; 6] = [
    ExtremalQuantity::CoverCostMin,
    ExtremalQuantity::CoverCostMax,
    ExtremalQuantity::ReverseCoverCostMin,
    ExtremalQuantity::ReverseCoverCostMax,
    ExtremalQuantity::HittingMin,
    ExtremalQuantity::HittingMax,
];

impl ExtremalQuantity {
    pub fn name(&self) -> &'static str {
        match self {
            ExtremalQuantity::CoverCostMin => "cover_cost_min",
            ExtremalQuantity::CoverCostMax => "cover_cost_max",
            ExtremalQuantity::ReverseCoverCostMin => "reverse_cover_cost_min",
            ExtremalQuantity::ReverseCoverCostMax => "reverse_cover_cost_max",
            ExtremalQuantity::HittingMin => "hitting_min",
            ExtremalQuantity::HittingMax => "hitting_max",
        }
    }

    /// Closed form for the optimum over all rooted trees (or pairs) of
    /// order `n`.
    pub fn closed_form(&self, n: usize) -> Rational {
        let n_ = n as i64;
        let v = match self {
            ExtremalQuantity::CoverCostMin => 2 * n_ * n_ - 6 * n_ + 5,
            ExtremalQuantity::CoverCostMax => (n_ * n_ * n_ - n_) / 3 - (n_ * n_) / 4,
            ExtremalQuantity::ReverseCoverCostMin => n_ - 1,
            ExtremalQuantity::ReverseCoverCostMax => n_ * (n_ - 1) * (4 * n_ - 5) / 6,
            ExtremalQuantity::HittingMin => 1,
            ExtremalQuantity::HittingMax => (n_ - 1) * (n_ - 1),
        };
        Rational::from_integer(v.into())
    }

    fn is_min(&self) -> bool {
        matches!(
            self,
            ExtremalQuantity::CoverCostMin
                | ExtremalQuantity::ReverseCoverCostMin
                | ExtremalQuantity::HittingMin
        )
    }

    fn over_pairs(&self) -> bool {
        matches!(
            self,
            ExtremalQuantity::HittingMin | ExtremalQuantity::HittingMax
        )
    }
}

/// Sweep result for one extremal quantity at a fixed order `n`.
#[derive(Debug, Clone)]
pub struct ExtremalCertificate {
    pub n: usize,
    pub quantity: ExtremalQuantity,
    /// The optimum found by the exhaustive sweep.
    pub value: Rational,
    /// The closed form the optimum must equal.
    pub formula_value: Rational,
    pub witness_edges: Vec<(usize, usize)>,
    /// Root attaining the optimum (cover-cost quantities).
    pub witness_root: Option<usize>,
    /// Ordered pair attaining the optimum (hitting-time quantities).
    pub witness_pair: Option<(usize, usize)>,
    /// Whether every optimal configuration, not just the stored witness,
    /// belongs to the stated extremal family.
    pub all_optima_in_family: bool,
}

impl ExtremalCertificate {
    pub fn matches_formula(&self) -> bool {
        self.value == self.formula_value
    }
}

fn is_star(g: &Graph) -> bool {
    g.degrees().iter().any(|&d| d == g.n() - 1)
}

fn is_path(g: &Graph) -> bool {
    g.degrees().iter().all(|&d| d <= 2)
}

fn bfs_eccentricity(g: &Graph, v: usize) -> usize {
    let mut seen = vec![usize::MAX; g.n()];
    seen[v] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if seen[w] == usize::MAX {
                seen[w] = seen[u] + 1;
                ecc = ecc.max(seen[w]);
                queue.push_back(w);
            }
        }
    }
    ecc
}

/// Membership in the extremal family claimed for each quantity.
fn in_extremal_family(q: ExtremalQuantity, g: &Graph, root: usize, pair: (usize, usize)) -> bool {
    match q {
        // Star rooted at a leaf.
        ExtremalQuantity::CoverCostMin => is_star(g) && g.degree(root) == 1,
        // Path rooted at a midpoint (a centrality-minimising vertex, i.e.
        // eccentricity ceil(m/2)).
        ExtremalQuantity::CoverCostMax => {
            is_path(g) && bfs_eccentricity(g, root) == g.m().div_ceil(2)
        }
        // Star rooted at its centre.
        ExtremalQuantity::ReverseCoverCostMin => is_star(g) && g.degree(root) == g.n() - 1,
        // Path rooted at an end.
        ExtremalQuantity::ReverseCoverCostMax => is_path(g) && g.degree(root) == 1,
        // x a leaf, y its neighbour.
        ExtremalQuantity::HittingMin => g.degree(pair.0) == 1 && g.has_edge(pair.0, pair.1),
        // Path with x, y its two endpoints.
        ExtremalQuantity::HittingMax => {
            is_path(g) && g.degree(pair.0) == 1 && g.degree(pair.1) == 1 && pair.0 != pair.1
        }
    }
}

#[derive(Clone)]
struct ExtremalSlot {
    value: Option<Rational>,
    code: u64,
    root: usize,
    pair: (usize, usize),
    all_family: bool,
}

impl ExtremalSlot {
    fn empty() -> Self {
        ExtremalSlot {
            value: None,
            code: 0,
            root: 0,
            pair: (0, 0),
            all_family: true,
        }
    }

    fn offer(
        &mut self,
        q: ExtremalQuantity,
        g: &Graph,
        code: u64,
        root: usize,
        pair: (usize, usize),
        value: &Rational,
    ) {
        let better = match &self.value {
            None => true,
            Some(cur) => {
                if q.is_min() {
                    value < cur
                } else {
                    value > cur
                }
            }
        };
        if better {
            self.value = Some(value.clone());
            self.code = code;
            self.root = root;
            self.pair = pair;
            self.all_family = in_extremal_family(q, g, root, pair);
        } else if self.value.as_ref() == Some(value) {
            self.all_family &= in_extremal_family(q, g, root, pair);
            if code < self.code {
                self.code = code;
                self.root = root;
                self.pair = pair;
            }
        }
    }

    fn merge(&mut self, q: ExtremalQuantity, other: ExtremalSlot) {
        let Some(v) = other.value.as_ref() else {
            return;
        };
        let better = match &self.value {
            None => true,
            Some(cur) => {
                if q.is_min() {
                    v < cur
                } else {
                    v > cur
                }
            }
        };
        if better {
            *self = other;
        } else if self.value.as_ref() == Some(v) {
            self.all_family &= other.all_family;
            if other.code < self.code {
                self.code = other.code;
                self.root = other.root;
                self.pair = other.pair;
            }
        }
    }
}

/// Exhaustive extremal sweep over all labelled trees of order `n` and all
/// roots (or ordered vertex pairs for the hitting quantities), one pass for
/// all six quantities. `2 <= n <= 8`.
pub fn certify_all_extremal(n: usize) -> Result<Vec<ExtremalCertificate>> {
    if n < 2 {
        return Err(Error::SizeTooSmall {
            what: "extremal sweep",
            min: 2,
            got: n,
        });
    }
    if n > MAX_TREE_SUITE {
        return Err(Error::NTooLarge {
            what: "extremal sweep",
            max: MAX_TREE_SUITE,
            got: n,
        });
    }
    let total = labelled_tree_count(n);
    let empty = || EXTREMAL_QUANTITIES.map(|_| ExtremalSlot::empty());
    let slots = (0..total)
        .into_par_iter()
        .fold(empty, |mut slots, code| {
            let g = labelled_tree_by_index(n, code);
            let hit = hitting_matrix_linear(&g);
            for root in 0..n {
                let cc = hit.row_sum(root);
                let rc = hit.col_sum(root);
                slots[0].offer(EXTREMAL_QUANTITIES[0], &g, code, root, (0, 0), &cc);
                slots[1].offer(EXTREMAL_QUANTITIES[1], &g, code, root, (0, 0), &cc);
                slots[2].offer(EXTREMAL_QUANTITIES[2], &g, code, root, (0, 0), &rc);
                slots[3].offer(EXTREMAL_QUANTITIES[3], &g, code, root, (0, 0), &rc);
            }
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    let h = hit.get(x, y);
                    slots[4].offer(EXTREMAL_QUANTITIES[4], &g, code, 0, (x, y), h);
                    slots[5].offer(EXTREMAL_QUANTITIES[5], &g, code, 0, (x, y), h);
                }
            }
            slots
        })
        .reduce(empty, |mut a, b| {
            for (i, (slot, other)) in a.iter_mut().zip(b).enumerate() {
                slot.merge(EXTREMAL_QUANTITIES[i], other);
            }
            a
        });

    Ok(EXTREMAL_QUANTITIES
        .iter()
        .zip(slots)
        .map(|(&quantity, slot)| {
            let witness = labelled_tree_by_index(n, slot.code);
            ExtremalCertificate {
                n,
                quantity,
                value: slot.value.expect("sweep saw at least one tree"),
                formula_value: quantity.closed_form(n),
                witness_edges: witness.edges().to_vec(),
                witness_root: (!quantity.over_pairs()).then_some(slot.root),
                witness_pair: quantity.over_pairs().then_some(slot.pair),
                all_optima_in_family: slot.all_family,
            }
        })
        .collect())
}

/// Certificate for a single quantity (runs the shared one-pass sweep).
pub fn certify_extremal(n: usize, quantity: ExtremalQuantity) -> Result<ExtremalCertificate> {
    Ok(certify_all_extremal(n)?
        .into_iter()
        .find(|c| c.quantity == quantity)
        .expect("sweep covers every quantity"))
}

// ---------------------------------------------------------------------------
// Counterexample search
// ---------------------------------------------------------------------------

/// A graph plus vertex pair witnessing one targeted failure mode, with the
/// exact key values spelled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub x: usize,
    pub y: usize,
    pub detail: String,
}

/// Exact evaluation of the clique–path–star graph: a `k`-clique joined by an
/// edge to `x`, a length-`p` path from `x` to `y`, and `l` leaves on `y`.
#[derive(Debug, Clone)]
pub struct BrushEvaluation {
    pub clique: usize,
    pub path_len: usize,
    pub star_leaves: usize,
    pub n: usize,
    /// `R(x) - R(y)`.
    pub r_gap: Rational,
    /// `R_pi(y) - R_pi(x)`.
    pub r_pi_gap: Rational,
    /// Whether `R(x) - R(y) > R_pi(y) - R_pi(x) > 0` holds exactly.
    pub strict_chain: bool,
}

#[derive(Debug, Clone, Default)]
pub struct CounterexampleFindings {
    /// A regular graph whose resistance centrality `R` is not constant.
    pub regular_nonconstant_resistance: Option<Witness>,
    /// A graph with `R(x) = R(y)` but `R_pi(x) != R_pi(y)`.
    pub equal_resistance_distinct_weighted: Option<Witness>,
    /// A graph with `R(x) - R(y) > R_pi(y) - R_pi(x) > 0`.
    pub gap_dominance: Option<Witness>,
    /// Exact values for the clique–path–star family at `l = k(k+1)/2`.
    pub brush_family: Vec<BrushEvaluation>,
    pub max_n_searched: usize,
}

impl CounterexampleFindings {
    pub fn all_found(&self) -> bool {
        self.regular_nonconstant_resistance.is_some()
            && self.equal_resistance_distinct_weighted.is_some()
            && self.gap_dominance.is_some()
    }
}

/// Integer resistance keys over the common denominator `tau`: `R(v)` equals
/// `r_num[v] / tau` and `R_pi(v)` equals `r_pi_num[v] / tau`, so orderings
/// and equalities reduce to integer comparisons. Laplacian minors of graphs
/// this small are far below the `i128` range.
struct IntKeys {
    r_num: Vec<i128>,
    r_pi_num: Vec<i128>,
}

fn int_laplacian(g: &Graph) -> Vec<Vec<i128>> {
    let n = g.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        g.degree(i) as i128
                    } else if g.has_edge(i, j) {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

fn int_minor_det(lap: &[Vec<i128>], drop_a: usize, drop_b: usize) -> i128 {
    let n = lap.len();
    let keep: Vec<usize> = (0..n).filter(|&i| i != drop_a && i != drop_b).collect();
    let sub: Vec<Vec<i128>> = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| lap[i][j]).collect())
        .collect();
    det_i128(sub)
}

fn int_keys(g: &Graph) -> IntKeys {
    let n = g.n();
    let lap = int_laplacian(g);
    let mut pair = vec![0i128; n * n];
    for x in 0..n {
        for y in x + 1..n {
            let d = int_minor_det(&lap, x, y);
            pair[x * n + y] = d;
            pair[y * n + x] = d;
        }
    }
    let r_num: Vec<i128> = (0..n).map(|v| (0..n).map(|w| pair[v * n + w]).sum()).collect();
    let r_pi_num: Vec<i128> = (0..n)
        .map(|v| {
            (0..n)
                .map(|w| pair[v * n + w] * g.degree(w) as i128)
                .sum()
        })
        .collect();
    IntKeys { r_num, r_pi_num }
}

/// Targeted failure modes of the counterexample search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FailureMode {
    RegularNonconstantResistance,
    EqualResistanceDistinctWeighted,
    GapDominance,
}

impl FailureMode {
    fn describe(self) -> &'static str {
        match self {
            FailureMode::RegularNonconstantResistance => "regular graph with R(x) != R(y)",
            FailureMode::EqualResistanceDistinctWeighted => "R(x) = R(y) with R_pi(x) != R_pi(y)",
            FailureMode::GapDominance => "R(x) - R(y) > R_pi(y) - R_pi(x) > 0",
        }
    }

    /// The defining predicate, on exact key values.
    fn holds(self, rx: &Rational, ry: &Rational, rpx: &Rational, rpy: &Rational) -> bool {
        match self {
            FailureMode::RegularNonconstantResistance => rx != ry,
            FailureMode::EqualResistanceDistinctWeighted => rx == ry && rpx != rpy,
            FailureMode::GapDominance => {
                let r_gap = rx - ry;
                let r_pi_gap = rpy - rpx;
                r_gap > r_pi_gap && r_pi_gap.is_positive()
            }
        }
    }
}

/// Re-verifies a fast-path witness with the exact big-rational route and
/// renders the key values. Panics if the exact route disagrees with the
/// integer kernel (which would be a kernel bug).
fn exact_witness(g: &Graph, x: usize, y: usize, mode: FailureMode) -> Witness {
    let res = resistance_matrix(g);
    let dist = g.distances();
    let vinv = vertex_invariants_from(g, &dist, &res);
    let (rx, ry) = (
        &vinv.resistance_centrality[x],
        &vinv.resistance_centrality[y],
    );
    let (rpx, rpy) = (
        &vinv.resistance_centrality_pi[x],
        &vinv.resistance_centrality_pi[y],
    );
    assert!(
        mode.holds(rx, ry, rpx, rpy),
        "fast integer scan and exact route disagree on {:?}",
        mode
    );
    let detail = format!(
        "{}: R(x)={}, R(y)={}, R_pi(x)={}, R_pi(y)={}",
        mode.describe(),
        frac_string(rx),
        frac_string(ry),
        frac_string(rpx),
        frac_string(rpy),
    );
    Witness {
        n: g.n(),
        edges: g.edges().to_vec(),
        x,
        y,
        detail,
    }
}

/// First (mask, x, y) hit per failure mode within one mask chunk.
#[derive(Clone, Copy, Default)]
struct ScanHits {
    regular: Option<(u64, usize, usize)>,
    equal_r: Option<(u64, usize, usize)>,
    gap: Option<(u64, usize, usize)>,
}

impl ScanHits {
    fn merge(mut self, other: ScanHits) -> ScanHits {
        let min = |a: Option<(u64, usize, usize)>, b: Option<(u64, usize, usize)>| match (a, b) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, y) => x.or(y),
        };
        self.regular = min(self.regular, other.regular);
        self.equal_r = min(self.equal_r, other.equal_r);
        self.gap = min(self.gap, other.gap);
        self
    }
}

fn scan_graph(g: &Graph, mask: u64, need: (bool, bool, bool), hits: &mut ScanHits) {
    let (need_reg, need_eq, need_gap) = need;
    let regular = g.is_regular();
    if !(need_eq || need_gap || (need_reg && regular)) {
        return;
    }
    let keys = int_keys(g);
    let n = g.n();
    if need_reg && regular && hits.regular.is_none() {
        'outer: for x in 0..n {
            for y in x + 1..n {
                if keys.r_num[x] != keys.r_num[y] {
                    hits.regular = Some((mask, x, y));
                    break 'outer;
                }
            }
        }
    }
    if need_eq && hits.equal_r.is_none() {
        'outer: for x in 0..n {
            for y in x + 1..n {
                if keys.r_num[x] == keys.r_num[y] && keys.r_pi_num[x] != keys.r_pi_num[y] {
                    hits.equal_r = Some((mask, x, y));
                    break 'outer;
                }
            }
        }
    }
    if need_gap && hits.gap.is_none() {
        'outer: for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let r_gap = keys.r_num[x] - keys.r_num[y];
                let r_pi_gap = keys.r_pi_num[y] - keys.r_pi_num[x];
                if r_gap > r_pi_gap && r_pi_gap > 0 {
                    hits.gap = Some((mask, x, y));
                    break 'outer;
                }
            }
        }
    }
}

/// `R(v)` and `R_pi(v)` of selected vertices by the exact minor route.
fn resistance_keys_exact(g: &Graph, vs: &[usize]) -> Vec<(Rational, Rational)> {
    let lap = laplacian(g);
    let tau = lap.delete_rc(&[0]).expect("vertex 0").det();
    vs.iter()
        .map(|&v| {
            let mut r = Rational::zero();
            let mut r_pi = Rational::zero();
            for w in 0..g.n() {
                if w == v {
                    continue;
                }
                let rvw = lap.delete_rc(&[v, w]).expect("indices ok").det() / &tau;
                r += &rvw;
                r_pi += rvw * rat_u(g.degree(w));
            }
            (r, r_pi)
        })
        .collect()
}

fn brush_evaluation(k: usize, p: usize, l: usize) -> Result<BrushEvaluation> {
    let g = Graph::clique_path_star(k, p, l)?;
    let x = k;
    let y = k + p;
    let keys = resistance_keys_exact(&g, &[x, y]);
    let r_gap = &keys[0].0 - &keys[1].0;
    let r_pi_gap = &keys[1].1 - &keys[0].1;
    let strict_chain = r_gap > r_pi_gap && r_pi_gap.is_positive();
    Ok(BrushEvaluation {
        clique: k,
        path_len: p,
        star_leaves: l,
        n: g.n(),
        r_gap,
        r_pi_gap,
        strict_chain,
    })
}

/// Searches every connected graph with `3 <= n <= max_n` for the three
/// targeted failure modes, returning exact witnesses (earliest in
/// enumeration order). Also evaluates the clique–path–star family at
/// `l = k(k+1)/2` for `k in 3..=8`; if the free search does not produce a
/// gap-dominance witness, the family is swept over smaller `l` as well,
/// which yields one at `k = 5`.
pub fn find_counterexamples(max_n: usize) -> Result<CounterexampleFindings> {
    if max_n < 3 {
        return Err(Error::SizeTooSmall {
            what: "counterexample search",
            min: 3,
            got: max_n,
        });
    }
    if max_n > MAX_GRAPH_ENUM {
        return Err(Error::NTooLarge {
            what: "counterexample search",
            max: MAX_GRAPH_ENUM,
            got: max_n,
        });
    }
    let mut findings = CounterexampleFindings {
        max_n_searched: max_n,
        ..Default::default()
    };
    for n in 3..=max_n {
        if findings.all_found() {
            break;
        }
        let need = (
            findings.regular_nonconstant_resistance.is_none(),
            findings.equal_resistance_distinct_weighted.is_none(),
            findings.gap_dominance.is_none(),
        );
        let pairs = edge_pairs(n);
        let masks = 1u64 << pairs.len();
        const CHUNK: u64 = 1 << 14;
        let chunks = masks.div_ceil(CHUNK);
        let hits = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut hits = ScanHits::default();
                for mask in c * CHUNK..((c + 1) * CHUNK).min(masks) {
                    if let Some(g) = graph_from_edge_mask(n, &pairs, mask) {
                        scan_graph(&g, mask, need, &mut hits);
                    }
                }
                hits
            })
            .reduce(ScanHits::default, ScanHits::merge);

        let rebuild = |(mask, x, y): (u64, usize, usize), mode: FailureMode| {
            let g = graph_from_edge_mask(n, &pairs, mask).expect("witness mask is connected");
            exact_witness(&g, x, y, mode)
        };
        if need.0 {
            findings.regular_nonconstant_resistance = hits
                .regular
                .map(|h| rebuild(h, FailureMode::RegularNonconstantResistance));
        }
        if need.1 {
            findings.equal_resistance_distinct_weighted = hits
                .equal_r
                .map(|h| rebuild(h, FailureMode::EqualResistanceDistinctWeighted));
        }
        if need.2 {
            findings.gap_dominance = hits.gap.map(|h| rebuild(h, FailureMode::GapDominance));
        }
    }

    for k in 3..=8 {
        findings
            .brush_family
            .push(brush_evaluation(k, 1, k * (k + 1) / 2)?);
    }
    if findings.gap_dominance.is_none() {
        'family: for k in 3..=8usize {
            for l in k + 1..k * (k + 1) / 2 {
                let eval = brush_evaluation(k, 1, l)?;
                if eval.strict_chain {
                    let g = Graph::clique_path_star(k, 1, l)?;
                    let mut w = exact_witness(&g, k, k + 1, FailureMode::GapDominance);
                    w.detail = format!("clique_path_star({k}, 1, {l}); {}", w.detail);
                    findings.gap_dominance = Some(w);
                    break 'family;
                }
            }
        }
    }
    Ok(findings)
}

// ---------------------------------------------------------------------------
// Scaling experiment
// ---------------------------------------------------------------------------

/// One row of the random-tree scaling table: means over `samples` uniform
/// random rooted trees of `CC(r)`, `RC(r)` (exact, then normalised by
/// `n^(5/2)`) and of the estimated cover time times `n / n^(5/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub samples: usize,
    pub cc_norm_mean: f64,
    pub rc_norm_mean: f64,
    pub ct_norm_mean: f64,
}

/// Wiener index and root centrality of a tree, exactly, in integer
/// arithmetic: `W = sum_e |A_e| |B_e|` over the edge splits, `D(r)` by
/// breadth-first search.
fn tree_wiener_and_centrality(g: &Graph, root: usize) -> (i128, i128) {
    debug_assert!(g.is_tree());
    let n = g.n();
    // Orient the tree away from vertex 0 to get subtree sizes.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::from([0usize]);
    parent[0] = 0;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut size = vec![1i128; n];
    for &v in order.iter().rev() {
        if v != 0 {
            size[parent[v]] += size[v];
        }
    }
    let wiener: i128 = (1..n).map(|v| size[order[v]] * (n as i128 - size[order[v]])).sum();

    let mut dist = vec![u32::MAX; n];
    dist[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut total = 0i128;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                total += i128::from(dist[w]);
                queue.push_back(w);
            }
        }
    }
    (wiener, total)
}

/// Monte Carlo walks per sampled tree in the scaling experiment.
const SCALING_COVER_WALKS: u64 = 2;

/// Runs the random-tree scaling experiment: for each size, samples uniform
/// random rooted trees, computes `CC(r) = 2W - D(r)` and
/// `RC(r) = (2n-1) D(r) - 2W` exactly, estimates the cover time by
/// simulation, and reports `n^(5/2)`-normalised means.
pub fn scaling_experiment(sizes: &[usize], samples: usize, seed: u64) -> Result<Vec<ScalingRow>> {
    if samples < 1 {
        return Err(Error::SizeTooSmall {
            what: "scaling samples",
            min: 1,
            got: samples,
        });
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        if n < 2 {
            return Err(Error::SizeTooSmall {
                what: "scaling size",
                min: 2,
                got: n,
            });
        }
        if n > MAX_SCALING_N {
            return Err(Error::NTooLarge {
                what: "scaling size",
                max: MAX_SCALING_N,
                got: n,
            });
        }
        let mut cc_sum = 0i128;
        let mut rc_sum = 0i128;
        let mut ct_sum = 0f64;
        for i in 0..samples {
            let tree = random_labelled_tree(n, derive_seed(seed, n as u64, i as u64))?;
            let (w, d) = tree_wiener_and_centrality(tree.graph(), tree.root());
            cc_sum += 2 * w - d;
            rc_sum += (2 * n as i128 - 1) * d - 2 * w;
            let cfg = WalkConfig {
                seed: derive_seed(seed ^ 0x5eed_c0de, n as u64, i as u64),
                walks: SCALING_COVER_WALKS,
                max_steps: 100 * (n as u64).pow(3),
            };
            let est = estimate_cover_time(tree.graph(), tree.root(), &cfg)?;
            ct_sum += est.mean;
        }
        let norm = (n as f64).powf(2.5);
        let s = samples as f64;
        rows.push(ScalingRow {
            n,
            samples,
            cc_norm_mean: cc_sum as f64 / s / norm,
            rc_norm_mean: rc_sum as f64 / s / norm,
            ct_norm_mean: ct_sum / s * n as f64 / norm,
        });
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Campaign suites
// ---------------------------------------------------------------------------

/// Outcome of one named exact check across a corpus.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub passed: bool,
}

/// Outcome of a verification suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub max_n: usize,
    pub cases: u64,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

fn assemble_outcome(suite: &str, max_n: usize, cases: u64, names: &[&str], fails: &[u64]) -> SuiteOutcome {
    let checks: Vec<CheckOutcome> = names
        .iter()
        .zip(fails)
        .map(|(&name, &failures)| CheckOutcome {
            name: name.to_string(),
            cases,
            failures,
            passed: failures == 0,
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    SuiteOutcome {
        suite: suite.to_string(),
        max_n,
        cases,
        checks,
        passed,
    }
}

fn tally_sweep<F>(total: u64, width: usize, check: F) -> Vec<u64>
where
    F: Fn(u64) -> Vec<bool> + Sync,
{
    (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; width],
            |mut acc, idx| {
                for (slot, ok) in acc.iter_mut().zip(check(idx)) {
                    if !ok {
                        *slot += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

pub const TREE_SUITE_CHECKS: [&str; 18] = [
    "cover_cost_plus_centrality_is_twice_wiener",
    "reverse_cost_tradeoff",
    "hitting_time_formula",
    "centrality_pi_formula",
    "schultz_formula",
    "gutman_formula",
    "kirchhoff_equals_wiener",
    "kirchhoff_pi_half_schultz",
    "kirchhoff_pi2_equals_gutman",
    "resistance_equals_distance",
    "reverse_cost_closed_form",
    "reverse_cost_pi_closed_form",
    "reverse_cost_difference_scaling",
    "cost_decompositions_consistent",
    "hitting_bounds_with_tightness",
    "hitting_minmax_characterisation",
    "six_preorders_coincide",
    "centrality_branch_decomposition",
];

fn check_tree(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let m = g.m();
    let dist = g.distances();
    let res = resistance_matrix(g);
    let vinv = vertex_invariants_from(g, &dist, &res);
    let ginv = global_invariants_from(g, &dist, &res);
    let hit = hitting_matrix_linear(g);
    let tree_report = tree_identities_report_from(g, &dist, &res);
    let two_w = rat_u(2) * &ginv.wiener;
    let four_w = rat_u(4) * &ginv.wiener;

    let table = cost_table_from(g, &hit, &vinv, &ginv);
    let cost_ok = table.is_ok();
    let table = table.unwrap_or_else(|_| CostTable {
        cover_cost: vec![Rational::zero(); n],
        reverse_cover_cost: vec![Rational::zero(); n],
        cover_cost_pi: vec![Rational::zero(); n],
        reverse_cover_cost_pi: vec![Rational::zero(); n],
        kemeny: Rational::zero(),
    });

    let cc_wiener = cost_ok
        && (0..n).all(|v| &table.cover_cost[v] + &vinv.centrality[v] == two_w);
    let rc_tradeoff = cost_ok
        && (0..n).all(|v| {
            &table.reverse_cover_cost[v] + rat_u(2 * n - 1) * &table.cover_cost[v]
                == rat_u(4 * (n - 1)) * &ginv.wiener
        });
    let hit_formula = (0..n).all(|x| {
        (0..n).all(|y| {
            hit.get(x, y)
                == &(rat_u(m * dist.get(x, y)) + &vinv.centrality[y] - &vinv.centrality[x])
        })
    });
    let rc_closed = cost_ok
        && (0..n).all(|x| {
            table.reverse_cover_cost[x] == rat_u(2 * n - 1) * &vinv.centrality[x] - &two_w
        });
    let rc_pi_closed = cost_ok
        && (0..n).all(|x| {
            table.reverse_cover_cost_pi[x]
                == rat_u(4 * m) * &vinv.centrality[x] + rat_u(m) - &four_w
        });
    let rc_diff = cost_ok
        && (0..n).all(|x| {
            (0..n).all(|y| {
                &table.reverse_cover_cost[x] - &table.reverse_cover_cost[y]
                    == rat_u(2 * n - 1) * (&table.cover_cost[y] - &table.cover_cost[x])
            })
        });

    let mut bounds_ok = true;
    let mut minmax_ok = true;
    let m_sq = rat_u(m * m);
    let one = Rational::one();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            match tree_hitting_bounds_from(g, &hit, &dist, x, y) {
                Ok(_) => {}
                Err(_) => bounds_ok = false,
            }
            let h = hit.get(x, y);
            if h < &one || h > &m_sq {
                minmax_ok = false;
            }
            let min_char = g.degree(x) == 1 && g.has_edge(x, y);
            if (h == &one) != min_char {
                minmax_ok = false;
            }
            let max_char = is_path(g) && g.degree(x) == 1 && g.degree(y) == 1;
            if (h == &m_sq) != max_char {
                minmax_ok = false;
            }
        }
    }

    let preorders_ok = cost_ok && {
        let profile = PreorderProfile {
            resistance_centrality: vinv.resistance_centrality.clone(),
            resistance_centrality_pi: vinv.resistance_centrality_pi.clone(),
            hitting: hit.clone(),
            reverse_cover_cost_pi: table.reverse_cover_cost_pi.clone(),
            reverse_cover_cost: table.reverse_cover_cost.clone(),
            cover_cost: table.cover_cost.clone(),
        };
        let eq = preorder_equivalences_from(&profile);
        eq.iter().all(|row| row.iter().all(|&b| b))
    };

    // D(x) equals the sum over edges of the far-side sizes.
    let branch_ok = (0..n).all(|x| {
        let sum: usize = g
            .edges()
            .iter()
            .map(|&e| branch_sizes(g, x, e).expect("tree edge").1)
            .sum();
        rat_u(sum) == vinv.centrality[x]
    });

    vec![
        cc_wiener,
        rc_tradeoff,
        hit_formula,
        tree_report.centrality_pi_formula,
        tree_report.schultz_formula,
        tree_report.gutman_formula,
        tree_report.kirchhoff_equals_wiener,
        tree_report.kirchhoff_pi_half_schultz,
        tree_report.kirchhoff_pi2_equals_gutman,
        tree_report.resistance_equals_distance,
        rc_closed,
        rc_pi_closed,
        rc_diff,
        cost_ok,
        bounds_ok,
        minmax_ok,
        preorders_ok,
        branch_ok,
    ]
}

/// Exhaustive tree campaign over all labelled trees with `2 <= n <= max_n`.
pub fn tree_suite(max_n: usize) -> Result<SuiteOutcome> {
    if max_n < 2 {
        return Err(Error::SizeTooSmall {
            what: "tree suite",
            min: 2,
            got: max_n,
        });
    }
    if max_n > MAX_TREE_SUITE {
        return Err(Error::NTooLarge {
            what: "tree suite",
            max: MAX_TREE_SUITE,
            got: max_n,
        });
    }
    let width = TREE_SUITE_CHECKS.len();
    let mut fails = vec![0u64; width];
    let mut cases = 0u64;
    for n in 2..=max_n {
        let total = labelled_tree_count(n);
        cases += total;
        let batch = tally_sweep(total, width, |code| {
            check_tree(&labelled_tree_by_index(n, code))
        });
        for (a, b) in fails.iter_mut().zip(batch) {
            *a += b;
        }
    }
    Ok(assemble_outcome(
        "trees",
        max_n,
        cases,
        &TREE_SUITE_CHECKS,
        &fails,
    ))
}

pub const GRAPH_SUITE_CHECKS: [&str; 12] = [
    "tetali_equals_linear",
    "commute_identity",
    "cost_decompositions_consistent",
    "zw_identity",
    "regular_iff_constant_cover_cost",
    "return_time_first_step",
    "resistance_is_metric",
    "resistance_at_most_distance",
    "spanning_tree_minor_invariance",
    "preorders_ii_iii_iv_coincide",
    "hitting_order_is_total_preorder",
    "handshake",
];

fn check_graph(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let dist = g.distances();
    let res = resistance_matrix(g);
    let vinv = vertex_invariants_from(g, &dist, &res);
    let ginv = global_invariants_from(g, &dist, &res);
    let hit = hitting_matrix_linear(g);
    let tet = hitting_matrix_tetali_from(g, &res);

    let tetali_ok = hit == tet;

    let two_m = rat_u(2 * g.m());
    let commute_ok = (0..n).all(|x| {
        (0..n).all(|y| hit.get(x, y) + hit.get(y, x) == &two_m * res.get(x, y))
    });

    let table = cost_table_from(g, &hit, &vinv, &ginv);
    let cost_ok = table.is_ok();

    let (zw_ok, correg_ok, preorder_ok, total_ok) = match &table {
        Ok(table) => {
            let zw_ok = (0..n).all(|x| {
                let (lhs, rhs) = zw_identity_from(g, table, x);
                lhs == rhs
            });

            let cc_constant = table.cover_cost.iter().all(|c| c == &table.cover_cost[0]);
            let mut correg_ok = cc_constant == g.is_regular();
            if g.is_regular() {
                let k = rat_u(g.degree(0));
                correg_ok &= table.kemeny == ginv.kirchhoff_pi2
                    && table.kemeny == &k * &table.cover_cost[0]
                    && table.kemeny == &k * &ginv.kirchhoff_pi
                    && table.kemeny == &k * &k * &ginv.kirchhoff;
            }

            let profile = PreorderProfile {
                resistance_centrality: vinv.resistance_centrality.clone(),
                resistance_centrality_pi: vinv.resistance_centrality_pi.clone(),
                hitting: hit.clone(),
                reverse_cover_cost_pi: table.reverse_cover_cost_pi.clone(),
                reverse_cover_cost: table.reverse_cover_cost.clone(),
                cover_cost: table.cover_cost.clone(),
            };
            let eq = preorder_equivalences_from(&profile);
            let preorder_ok = eq[1][2] && eq[1][3] && eq[2][3];
            let total_ok = hitting_order_is_total_preorder(&profile);
            (zw_ok, correg_ok, preorder_ok, total_ok)
        }
        Err(_) => (false, false, false, false),
    };

    let return_ok = (0..n).all(|x| {
        let sum: Rational = g.neighbors(x).iter().map(|&z| hit.get(z, x)).sum();
        return_time(g, x) == Rational::one() + sum / rat_u(g.degree(x))
    });

    let metric_ok = (0..n).all(|x| {
        res.get(x, x).is_zero()
            && (0..n).all(|y| {
                (x == y || res.get(x, y).is_positive())
                    && res.get(x, y) == res.get(y, x)
                    && (0..n).all(|w| res.get(x, y) <= &(res.get(x, w) + res.get(w, y)))
            })
    });

    let r_leq_d = (0..n).all(|x| (0..n).all(|y| res.get(x, y) <= &rat_u(dist.get(x, y))))
        && ginv.kirchhoff <= ginv.wiener;

    let lap = laplacian(g);
    let tau_ok = (0..n).all(|v| {
        lap.delete_rc(&[v]).expect("vertex exists").det() == ginv.spanning_trees
    });

    let handshake = g.degrees().iter().sum::<usize>() == 2 * g.m();

    vec![
        tetali_ok,
        commute_ok,
        cost_ok,
        zw_ok,
        correg_ok,
        return_ok,
        metric_ok,
        r_leq_d,
        tau_ok,
        preorder_ok,
        total_ok,
        handshake,
    ]
}

/// Exhaustive connected-graph campaign with `2 <= n <= max_n <= 7`.
pub fn graph_suite(max_n: usize) -> Result<SuiteOutcome> {
    if max_n < 2 {
        return Err(Error::SizeTooSmall {
            what: "graph suite",
            min: 2,
            got: max_n,
        });
    }
    if max_n > MAX_GRAPH_ENUM {
        return Err(Error::NTooLarge {
            what: "graph suite",
            max: MAX_GRAPH_ENUM,
            got: max_n,
        });
    }
    let width = GRAPH_SUITE_CHECKS.len();
    let mut fails = vec![0u64; width];
    let mut cases = 0u64;
    for n in 2..=max_n {
        let pairs = edge_pairs(n);
        let masks = 1u64 << pairs.len();
        const CHUNK: u64 = 1 << 12;
        let chunks = masks.div_ceil(CHUNK);
        let (batch, count) = (0..chunks)
            .into_par_iter()
            .fold(
                || (vec![0u64; width], 0u64),
                |(mut acc, mut count), c| {
                    for mask in c * CHUNK..((c + 1) * CHUNK).min(masks) {
                        if let Some(g) = graph_from_edge_mask(n, &pairs, mask) {
                            count += 1;
                            for (slot, ok) in acc.iter_mut().zip(check_graph(&g)) {
                                if !ok {
                                    *slot += 1;
                                }
                            }
                        }
                    }
                    (acc, count)
                },
            )
            .reduce(
                || (vec![0u64; width], 0u64),
                |(mut a, ca), (b, cb)| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    (a, ca + cb)
                },
            );
        cases += count;
        for (a, b) in fails.iter_mut().zip(batch) {
            *a += b;
        }
    }
    Ok(assemble_outcome(
        "graphs",
        max_n,
        cases,
        &GRAPH_SUITE_CHECKS,
        &fails,
    ))
}

pub const SPECTRAL_SUITE_CHECKS: [&str; 14] = [
    "eigen_kirchhoff",
    "eigen_kirchhoff_pi2",
    "eigen_resistance_centrality",
    "eigen_resistance_centrality_pi",
    "puv_coeff_u",
    "puv_coeff_v",
    "puv_coeff_u2",
    "puv_coeff_uv",
    "puv_coeff_v2",
    "puv_origin_zero",
    "puv_u_slice_is_laplacian_charpoly",
    "puv_v_slice_is_scaled_walk_charpoly",
    "kemeny_triple_equality",
    "laplacian_corank_one",
];

fn check_spectral(g: &Graph) -> Vec<bool> {
    let eigen = eigen_identities_check(g);
    let puv = puv_relations(g);
    let kemeny_ok = match kemeny_triple(g) {
        Ok((a, b, c)) => a == b && b == c,
        Err(_) => false,
    };
    let corank_ok = laplacian(g).charpoly().lowest_nonzero() == Some(1);
    vec![
        eigen.kirchhoff,
        eigen.kirchhoff_pi2,
        eigen.resistance_centrality,
        eigen.resistance_centrality_pi,
        puv.coeff_u,
        puv.coeff_v,
        puv.coeff_u2,
        puv.coeff_uv,
        puv.coeff_v2,
        puv.at_origin_zero,
        puv.u_slice_is_laplacian_charpoly,
        puv.v_slice_is_scaled_walk_charpoly,
        kemeny_ok,
        corank_ok,
    ]
}

/// Spectral campaign: exhaustive over connected graphs with `n <= max_n`
/// (at most 6) plus `random_count` random connected graphs with sizes up to
/// `random_max_n`.
pub fn spectral_suite(
    max_n: usize,
    random_count: usize,
    random_max_n: usize,
    seed: u64,
) -> Result<SuiteOutcome> {
    if max_n < 2 {
        return Err(Error::SizeTooSmall {
            what: "spectral suite",
            min: 2,
            got: max_n,
        });
    }
    if max_n > 6 {
        return Err(Error::NTooLarge {
            what: "spectral suite (exhaustive part)",
            max: 6,
            got: max_n,
        });
    }
    if random_count > 0 && random_max_n < 2 {
        return Err(Error::SizeTooSmall {
            what: "spectral suite random sizes",
            min: 2,
            got: random_max_n,
        });
    }
    let width = SPECTRAL_SUITE_CHECKS.len();
    let mut fails = vec![0u64; width];
    let mut cases = 0u64;
    for n in 2..=max_n {
        let pairs = edge_pairs(n);
        let masks = 1u64 << pairs.len();
        let batch = tally_sweep(masks, width, |mask| {
            match graph_from_edge_mask(n, &pairs, mask) {
                Some(g) => {
                    check_spectral(&g)
                }
                // Disconnected selections are skipped, not failures.
                None => vec![true; width],
            }
        });
        cases += (0..masks)
            .into_par_iter()
            .filter(|&mask| graph_from_edge_mask(n, &pairs, mask).is_some())
            .count() as u64;
        for (a, b) in fails.iter_mut().zip(batch) {
            *a += b;
        }
    }
    // Random part: sizes cycle through 2..=random_max_n deterministically.
    let random_fails = tally_sweep(random_count as u64, width, |i| {
        let n = 2 + (i as usize % (random_max_n - 1));
        let g = random_connected_graph(n, derive_seed(seed, 0xABCD, i)).expect("n >= 2");
        check_spectral(&g)
    });
    cases += random_count as u64;
    for (a, b) in fails.iter_mut().zip(random_fails) {
        *a += b;
    }
    Ok(assemble_outcome(
        "spectral",
        max_n,
        cases,
        &SPECTRAL_SUITE_CHECKS,
        &fails,
    ))
}

/// Extremal campaign: certificates for every quantity at each
/// `2 <= n <= max_n`, checking closed forms and witness families.
pub fn extremal_suite(max_n: usize) -> Result<(SuiteOutcome, Vec<ExtremalCertificate>)> {
    if max_n < 2 {
        return Err(Error::SizeTooSmall {
            what: "extremal suite",
            min: 2,
            got: max_n,
        });
    }
    let mut certificates = Vec::new();
    let mut checks = Vec::new();
    let mut cases = 0u64;
    for n in 2..=max_n {
        cases += labelled_tree_count(n);
        for cert in certify_all_extremal(n)? {
            let ok = cert.matches_formula() && cert.all_optima_in_family;
            checks.push(CheckOutcome {
                name: format!("{}_n{}", cert.quantity.name(), n),
                cases: labelled_tree_count(n),
                failures: u64::from(!ok),
                passed: ok,
            });
            certificates.push(cert);
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok((
        SuiteOutcome {
            suite: "extremal".to_string(),
            max_n,
            cases,
            checks,
            passed,
        },
        certificates,
    ))
}

/// Counterexample campaign: the three targeted witnesses plus the brush
/// family report. `passed` means every witness was found; an inconclusive
/// search is reported, not asserted away.
pub fn counterexample_suite(max_n: usize) -> Result<(SuiteOutcome, CounterexampleFindings)> {
    let findings = find_counterexamples(max_n)?;
    let witness_checks = [
        (
            "witness_regular_nonconstant_resistance",
            findings.regular_nonconstant_resistance.is_some(),
        ),
        (
            "witness_equal_resistance_distinct_weighted",
            findings.equal_resistance_distinct_weighted.is_some(),
        ),
        ("witness_gap_dominance", findings.gap_dominance.is_some()),
        ("brush_family_reported", findings.brush_family.len() == 6),
    ];
    let checks: Vec<CheckOutcome> = witness_checks
        .iter()
        .map(|&(name, ok)| CheckOutcome {
            name: name.to_string(),
            cases: 1,
            failures: u64::from(!ok),
            passed: ok,
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok((
        SuiteOutcome {
            suite: "counterexamples".to_string(),
            max_n,
            cases: checks.len() as u64,
            checks,
            passed,
        },
        findings,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i;

    #[test]
    fn preorders_coincide_on_trees_and_complete_graphs() {
        for g in [
            Graph::path(5).unwrap(),
            Graph::star(5).unwrap(),
            Graph::complete(4).unwrap(),
        ] {
            let eq = preorder_equivalences(&g).unwrap();
            assert!(eq.iter().all(|row| row.iter().all(|&b| b)), "{g:?}");
        }
    }

    #[test]
    fn hitting_order_total_on_small_graphs() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::clique_path_star(3, 1, 2).unwrap(),
        ] {
            let p = preorder_profile(&g).unwrap();
            assert!(hitting_order_is_total_preorder(&p));
        }
    }

    #[test]
    fn extremal_certificates_n4() {
        let certs = certify_all_extremal(4).unwrap();
        let value = |q: ExtremalQuantity| {
            certs
                .iter()
                .find(|c| c.quantity == q)
                .map(|c| c.value.clone())
                .unwrap()
        };
        assert_eq!(value(ExtremalQuantity::CoverCostMin), rat_i(13));
        assert_eq!(value(ExtremalQuantity::CoverCostMax), rat_i(16));
        assert_eq!(value(ExtremalQuantity::ReverseCoverCostMin), rat_i(3));
        assert_eq!(value(ExtremalQuantity::ReverseCoverCostMax), rat_i(22));
        assert_eq!(value(ExtremalQuantity::HittingMin), rat_i(1));
        assert_eq!(value(ExtremalQuantity::HittingMax), rat_i(9));
        for c in &certs {
            assert!(c.matches_formula(), "{:?}", c.quantity);
            assert!(c.all_optima_in_family, "{:?}", c.quantity);
        }
    }

    #[test]
    fn extremal_degenerate_small_orders() {
        for n in [2usize, 3] {
            for cert in certify_all_extremal(n).unwrap() {
                assert!(cert.matches_formula(), "n={n} {:?}", cert.quantity);
                assert!(cert.all_optima_in_family, "n={n} {:?}", cert.quantity);
            }
        }
    }

    #[test]
    fn brush_family_exact_values() {
        // k = 3, l = 6, p = 1 by hand: R(x) - R(y) = 3 = l - k and
        // R_pi(y) - R_pi(x) = -4.
        let eval = brush_evaluation(3, 1, 6).unwrap();
        assert_eq!(eval.r_gap, rat_i(3));
        assert_eq!(eval.r_pi_gap, rat_i(-4));
        assert!(!eval.strict_chain);

        // k = 5, l = 10 satisfies the strict chain 5 > 2 > 0.
        let eval = brush_evaluation(5, 1, 10).unwrap();
        assert_eq!(eval.r_gap, rat_i(5));
        assert_eq!(eval.r_pi_gap, rat_i(2));
        assert!(eval.strict_chain);
    }

    #[test]
    fn int_keys_match_exact_route() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::complete(4).unwrap(),
            Graph::clique_path_star(3, 1, 2).unwrap(),
        ] {
            let keys = int_keys(&g);
            let exact = resistance_keys_exact(&g, &(0..g.n()).collect::<Vec<_>>());
            let lap = int_laplacian(&g);
            let tau = int_minor_det(&lap, 0, 0);
            for v in 0..g.n() {
                assert_eq!(
                    Rational::new(keys.r_num[v].into(), tau.into()),
                    exact[v].0
                );
                assert_eq!(
                    Rational::new(keys.r_pi_num[v].into(), tau.into()),
                    exact[v].1
                );
            }
        }
    }

    #[test]
    fn scaling_experiment_smoke() {
        let rows = scaling_experiment(&[16, 24], 5, 11).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].n, 16);
        assert!(rows.iter().all(|r| r.cc_norm_mean > 0.0));
        // Determinism.
        assert_eq!(rows, scaling_experiment(&[16, 24], 5, 11).unwrap());
        assert!(matches!(
            scaling_experiment(&[4096], 1, 0),
            Err(Error::NTooLarge { .. })
        ));
    }

    #[test]
    fn tree_wiener_helper_matches_distances() {
        for seed in 0..10 {
            let t = random_labelled_tree(9, seed).unwrap();
            let (w, d) = tree_wiener_and_centrality(t.graph(), t.root());
            let dist = t.graph().distances();
            let w_direct: usize =
                (0..9).map(|x| dist.row_sum(x)).sum::<usize>() / 2;
            assert_eq!(w, w_direct as i128);
            assert_eq!(d, dist.row_sum(t.root()) as i128);
        }
    }

    #[test]
    fn small_suites_pass() {
        let t = tree_suite(5).unwrap();
        assert!(t.passed, "{:?}", t.checks);
        assert_eq!(t.cases, 1 + 3 + 16 + 125);

        let g = graph_suite(4).unwrap();
        assert!(g.passed, "{:?}", g.checks);
        assert_eq!(g.cases, 1 + 4 + 38);

        let s = spectral_suite(4, 10, 8, 3).unwrap();
        assert!(s.passed, "{:?}", s.checks);
    }
}
