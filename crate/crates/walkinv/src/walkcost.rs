//! Exact hitting times and cost functionals of the simple random walk.
//!
//! Hitting times are computed by two independent first-class routes and
//! cross-asserted: a per-target linear solve of the first-step equations,
//! and Tetali's effective-resistance formula. Cover costs are likewise
//! computed both by direct summation and by their resistance decompositions;
//! any disagreement raises [`Error::FormulaMismatch`] so corpus sweeps fail
//! loudly instead of averaging a bug away.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::invariants::{
    global_invariants_from, resistance_matrix, vertex_invariants_from, GlobalInvariants,
    ResistanceMatrix, VertexInvariants,
};
use crate::linalg::laplacian;
use crate::rational::{rat_u, Rational};

/// Dense matrix of expected hitting times; rows index the start vertex,
/// columns the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingMatrix {
    n: usize,
    h: Vec<Rational>,
}

impl HittingMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, from: usize, to: usize) -> &Rational {
        &self.h[from * self.n + to]
    }

    /// Sum of hitting times started at `x` (the cover cost of `x`).
    pub fn row_sum(&self, x: usize) -> Rational {
        self.h[x * self.n..(x + 1) * self.n].iter().sum()
    }

    /// Sum of hitting times into `x` (the reverse cover cost of `x`).
    pub fn col_sum(&self, x: usize) -> Rational {
        (0..self.n).map(|from| self.get(from, x)).sum()
    }
}

/// Hitting times from the first-step equations: for a fixed target `y` the
/// values `H_xy` solve `d(x) H_xy - sum_{z ~ x, z != y} H_zy = d(x)`, whose
/// matrix is the Laplacian with row and column `y` deleted.
pub fn hitting_matrix_linear(g: &Graph) -> HittingMatrix {
    let n = g.n();
    let lap = laplacian(g);
    let mut h = vec![Rational::zero(); n * n];
    for y in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&x| x != y).collect();
        let sub = lap.delete_rc(&[y]).expect("target vertex exists");
        let rhs: Vec<Rational> = keep.iter().map(|&x| rat_u(g.degree(x))).collect();
        let sol = sub
            .solve(&rhs)
            .expect("deleted Laplacian of a connected graph is nonsingular");
        for (idx, &x) in keep.iter().enumerate() {
            h[x * n + y] = sol[idx].clone();
        }
    }
    HittingMatrix { n, h }
}

/// Hitting times from Tetali's formula
/// `H_xy = (1/2) sum_w d(w) (r(x,y) + r(w,y) - r(w,x))`.
///
/// Independent of [`hitting_matrix_linear`] (different route through the
/// electrical-network correspondence); the two must agree entrywise.
pub fn hitting_matrix_tetali(g: &Graph) -> HittingMatrix {
    hitting_matrix_tetali_from(g, &resistance_matrix(g))
}

pub fn hitting_matrix_tetali_from(g: &Graph, res: &ResistanceMatrix) -> HittingMatrix {
    let n = g.n();
    let mut h = vec![Rational::zero(); n * n];
    let half = Rational::new(1.into(), 2.into());
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let mut acc = Rational::zero();
            for w in 0..n {
                let term = res.get(x, y) + res.get(w, y) - res.get(w, x);
                acc += term * rat_u(g.degree(w));
            }
            h[x * n + y] = acc * &half;
        }
    }
    HittingMatrix { n, h }
}

/// Commute time `H_xy + H_yx`; equals `2m r(x,y)`.
pub fn commute(g: &Graph, x: usize, y: usize) -> Rational {
    let h = hitting_matrix_linear(g);
    h.get(x, y) + h.get(y, x)
}

/// Expected return time to `x`, which is `2m / d(x)`.
pub fn return_time(g: &Graph, x: usize) -> Rational {
    Rational::new((2 * g.m()).into(), g.degree(x).into())
}

/// Per-vertex cover costs and the Kemeny constant.
///
/// `cover_cost(x)` sums hitting times out of `x`, `reverse_cover_cost(x)`
/// sums them into `x`, the `_pi` variants weight each term by the degree of
/// the far endpoint. `kemeny` is the common value of `cover_cost_pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostTable {
    pub cover_cost: Vec<Rational>,
    pub reverse_cover_cost: Vec<Rational>,
    pub cover_cost_pi: Vec<Rational>,
    pub reverse_cover_cost_pi: Vec<Rational>,
    pub kemeny: Rational,
}

pub fn cost_table(g: &Graph) -> Result<CostTable> {
    let dist = g.distances();
    let res = resistance_matrix(g);
    let vinv = vertex_invariants_from(g, &dist, &res);
    let ginv = global_invariants_from(g, &dist, &res);
    cost_table_from(g, &hitting_matrix_linear(g), &vinv, &ginv)
}

/// Builds the cost table twice — by direct summation over the hitting matrix
/// and by the resistance decompositions
/// `CC(x) = m R(x) - (n/2) R_pi(x) + K_pi`,
/// `RC(x) = m R(x) + (n/2) R_pi(x) - K_pi`,
/// `RC_pi(x) = 2m R_pi(x) - K_pi2`, `CC_pi(x) = K_pi2` —
/// and fails with [`Error::FormulaMismatch`] unless they agree exactly.
pub fn cost_table_from(
    g: &Graph,
    hit: &HittingMatrix,
    vinv: &VertexInvariants,
    ginv: &GlobalInvariants,
) -> Result<CostTable> {
    let n = g.n();
    let m = rat_u(g.m());
    let half_n = Rational::new(n.into(), 2.into());
    let two_m = rat_u(2 * g.m());

    let mut table = CostTable {
        cover_cost: Vec::with_capacity(n),
        reverse_cover_cost: Vec::with_capacity(n),
        cover_cost_pi: Vec::with_capacity(n),
        reverse_cover_cost_pi: Vec::with_capacity(n),
        kemeny: ginv.kirchhoff_pi2.clone(),
    };
    for x in 0..n {
        let cc = hit.row_sum(x);
        let rc = hit.col_sum(x);
        let mut cc_pi = Rational::zero();
        let mut rc_pi = Rational::zero();
        for w in 0..n {
            let dw = rat_u(g.degree(w));
            cc_pi += hit.get(x, w) * &dw;
            rc_pi += hit.get(w, x) * &dw;
        }

        let r = &vinv.resistance_centrality[x];
        let r_pi = &vinv.resistance_centrality_pi[x];
        let cc_formula = &m * r - &half_n * r_pi + &ginv.kirchhoff_pi;
        let rc_formula = &m * r + &half_n * r_pi - &ginv.kirchhoff_pi;
        let rc_pi_formula = &two_m * r_pi - &ginv.kirchhoff_pi2;

        let mismatch = |what: &str, x: usize| {
            Err(Error::FormulaMismatch(format!(
                "{what} decomposition disagrees with the direct sum at vertex {x}"
            )))
        };
        if cc != cc_formula {
            return mismatch("cover cost", x);
        }
        if rc != rc_formula {
            return mismatch("reverse cover cost", x);
        }
        if rc_pi != rc_pi_formula {
            return mismatch("weighted reverse cover cost", x);
        }
        if cc_pi != ginv.kirchhoff_pi2 {
            return mismatch("weighted cover cost", x);
        }

        table.cover_cost.push(cc);
        table.reverse_cover_cost.push(rc);
        table.cover_cost_pi.push(cc_pi);
        table.reverse_cover_cost_pi.push(rc_pi);
    }
    Ok(table)
}

/// Both sides of the neighbourhood identity
/// `sum_{z ~ x} (CC(x) - CC(z)) = n d(x) - 2m`.
pub fn zw_identity_check(g: &Graph, x: usize) -> Result<(Rational, Rational)> {
    let table = cost_table(g)?;
    Ok(zw_identity_from(g, &table, x))
}

pub fn zw_identity_from(g: &Graph, table: &CostTable, x: usize) -> (Rational, Rational) {
    let lhs = g
        .neighbors(x)
        .iter()
        .map(|&z| &table.cover_cost[x] - &table.cover_cost[z])
        .sum();
    let rhs = rat_u(g.n() * g.degree(x)) - rat_u(2 * g.m());
    (lhs, rhs)
}

/// Result of checking `d(x,y)^2 <= H_xy <= d(x,y)(2m - d(x,y))` on a tree,
/// together with whether each bound is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitBoundCheck {
    pub hitting: Rational,
    pub distance: usize,
    pub lower_tight: bool,
    pub upper_tight: bool,
}

/// Verifies the two-sided hitting-time bound for a tree pair `x != y`.
///
/// Tightness flags are computed both from the hitting time itself and from
/// the geometric characterisations (lower bound: every vertex `w` lies on
/// the `x`-`y` path or has `y` on its path to `x`; upper bound: mirrored);
/// a disagreement or a violated bound raises [`Error::FormulaMismatch`].
pub fn tree_hitting_bounds_check(g: &Graph, x: usize, y: usize) -> Result<HitBoundCheck> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let hit = hitting_matrix_linear(g);
    let dist = g.distances();
    tree_hitting_bounds_from(g, &hit, &dist, x, y)
}

pub fn tree_hitting_bounds_from(
    g: &Graph,
    hit: &HittingMatrix,
    dist: &DistanceMatrix,
    x: usize,
    y: usize,
) -> Result<HitBoundCheck> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    assert_ne!(x, y, "bounds are for distinct vertices");
    let h = hit.get(x, y).clone();
    let d = dist.get(x, y);
    let lower = rat_u(d * d);
    let upper = rat_u(d * (2 * g.m() - d));
    if h < lower || h > upper {
        return Err(Error::FormulaMismatch(format!(
            "hitting time outside [d^2, d(2m-d)] for pair ({x}, {y})"
        )));
    }
    // w lies on the shortest a-b path iff the triangle inequality is tight.
    let on_path = |w: usize, a: usize, b: usize| dist.get(a, w) + dist.get(w, b) == dist.get(a, b);
    let lower_geo = (0..g.n()).all(|w| on_path(w, x, y) || on_path(y, w, x));
    let upper_geo = (0..g.n()).all(|w| on_path(w, x, y) || on_path(x, w, y));
    let lower_tight = h == lower;
    let upper_tight = h == upper;
    if lower_tight != lower_geo || upper_tight != upper_geo {
        return Err(Error::FormulaMismatch(format!(
            "bound tightness disagrees with its geometric characterisation for ({x}, {y})"
        )));
    }
    Ok(HitBoundCheck {
        hitting: h,
        distance: d,
        lower_tight,
        upper_tight,
    })
}
