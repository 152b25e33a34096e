//! Eigenvalue-sum identities, evaluated without eigenvalues.
//!
//! Every spectral sum used here is a sum of reciprocals of (nonzero)
//! eigenvalues, which by Vieta is an exact ratio of two characteristic
//! polynomial coefficients. Working with coefficient ratios keeps the whole
//! module in exact rationals; no root-finding, no tolerances.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::graph::Graph;
use crate::invariants::{global_invariants_from, resistance_matrix, vertex_invariants_from};
use crate::linalg::{bivariate_det, laplacian, n_matrix, Polynomial};
use crate::rational::{rat_u, Rational};
use crate::walkcost::cost_table;

/// Reciprocal eigenvalue sums of the Laplacian `L`, the walk Laplacian
/// `N = I - M`, and their vertex-deleted minors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSums {
    /// `sum 1/mu` over nonzero eigenvalues of `L`.
    pub inv_sum_laplacian: Rational,
    /// `sum 1/lambda` over nonzero eigenvalues of `N`.
    pub inv_sum_walk: Rational,
    /// Per vertex `v`: `sum 1/lambda` over eigenvalues of `L_v`.
    pub inv_sum_laplacian_minor: Vec<Rational>,
    /// Per vertex `v`: `sum 1/lambda` over eigenvalues of `N_v`.
    pub inv_sum_walk_minor: Vec<Rational>,
}

/// Sum of reciprocals of the nonzero roots of a monic polynomial:
/// `-c_{k+1} / c_k` where `x^k` is the lowest nonvanishing term.
fn inv_sum_nonzero_roots(p: &Polynomial) -> Rational {
    let k = p.lowest_nonzero().expect("nonzero polynomial");
    -p.coeff(k + 1) / p.coeff(k)
}

/// Sum of reciprocals of all roots of a polynomial with nonzero constant
/// term: `-c_1 / c_0`.
fn inv_sum_all_roots(p: &Polynomial) -> Rational {
    debug_assert_eq!(p.lowest_nonzero(), Some(0), "matrix must be nonsingular");
    -p.coeff(1) / p.coeff(0)
}

pub fn spectral_sums(g: &Graph) -> SpectralSums {
    let n = g.n();
    let lap = laplacian(g);
    let walk = n_matrix(g);
    let cp_l = lap.charpoly();
    let cp_n = walk.charpoly();
    // Connected graphs have Laplacian rank n-1: the lowest nonvanishing
    // coefficient sits at index exactly 1.
    assert_eq!(cp_l.lowest_nonzero(), Some(1));
    assert_eq!(cp_n.lowest_nonzero(), Some(1));
    let minor = |mat: &crate::linalg::RationalMatrix, v: usize| {
        inv_sum_all_roots(&mat.delete_rc(&[v]).expect("vertex exists").charpoly())
    };
    SpectralSums {
        inv_sum_laplacian: inv_sum_nonzero_roots(&cp_l),
        inv_sum_walk: inv_sum_nonzero_roots(&cp_n),
        inv_sum_laplacian_minor: (0..n).map(|v| minor(&lap, v)).collect(),
        inv_sum_walk_minor: (0..n).map(|v| minor(&walk, v)).collect(),
    }
}

/// One flag per eigenvalue-sum identity:
/// `K = n sum 1/mu`, `K_pi2 = 2m sum 1/lambda`, `R(v) = sum 1/lambda(L_v)`,
/// `R_pi(v) = sum 1/lambda(N_v)` — each compared exactly against the
/// independently computed resistance invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenIdentityReport {
    pub kirchhoff: bool,
    pub kirchhoff_pi2: bool,
    pub resistance_centrality: bool,
    pub resistance_centrality_pi: bool,
}

impl EigenIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.kirchhoff
            && self.kirchhoff_pi2
            && self.resistance_centrality
            && self.resistance_centrality_pi
    }
}

pub fn eigen_identities_check(g: &Graph) -> EigenIdentityReport {
    let sums = spectral_sums(g);
    let dist = g.distances();
    let res = resistance_matrix(g);
    let vinv = vertex_invariants_from(g, &dist, &res);
    let ginv = global_invariants_from(g, &dist, &res);
    EigenIdentityReport {
        kirchhoff: ginv.kirchhoff == rat_u(g.n()) * &sums.inv_sum_laplacian,
        kirchhoff_pi2: ginv.kirchhoff_pi2 == rat_u(2 * g.m()) * &sums.inv_sum_walk,
        resistance_centrality: vinv.resistance_centrality == sums.inv_sum_laplacian_minor,
        resistance_centrality_pi: vinv.resistance_centrality_pi == sums.inv_sum_walk_minor,
    }
}

/// Coefficient relations of `P(u,v) = det(uI + vD - L)`:
///
/// ```text
/// [u]   = (-1)^(n-1) n tau        [v]  = 2 (-1)^(n-1) m tau
/// [u^2] = (-1)^n tau K            [uv] = 2 (-1)^n tau K_pi
/// [v^2] = (-1)^n tau K_pi2
/// ```
///
/// plus `P(0,0) = 0`, `P(u,0) = det(uI - L)`, and `P(0,v)` being `det(D)`
/// times the characteristic polynomial of `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PuvReport {
    pub coeff_u: bool,
    pub coeff_v: bool,
    pub coeff_u2: bool,
    pub coeff_uv: bool,
    pub coeff_v2: bool,
    pub at_origin_zero: bool,
    pub u_slice_is_laplacian_charpoly: bool,
    pub v_slice_is_scaled_walk_charpoly: bool,
}

impl PuvReport {
    pub fn all_hold(&self) -> bool {
        self.coeff_u
            && self.coeff_v
            && self.coeff_u2
            && self.coeff_uv
            && self.coeff_v2
            && self.at_origin_zero
            && self.u_slice_is_laplacian_charpoly
            && self.v_slice_is_scaled_walk_charpoly
    }
}

pub fn puv_relations(g: &Graph) -> PuvReport {
    let n = g.n();
    let p = bivariate_det(g);
    let dist = g.distances();
    let res = resistance_matrix(g);
    let ginv = global_invariants_from(g, &dist, &res);
    let tau = &ginv.spanning_trees;
    let sign_n1 = if (n - 1) % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let sign_n = -&sign_n1;

    // P(0,v) = det(vD - L) = det(D) det(vI - N).
    let det_d = rat_u(g.degrees().iter().product::<usize>());
    let v_slice = Polynomial::new((0..=n).map(|j| p.coeff(0, j)).collect());
    let walk_scaled = Polynomial::new(
        n_matrix(g)
            .charpoly()
            .coeffs()
            .iter()
            .map(|c| c * &det_d)
            .collect(),
    );

    PuvReport {
        coeff_u: p.coeff(1, 0) == &sign_n1 * rat_u(n) * tau,
        coeff_v: p.coeff(0, 1) == rat_u(2) * &sign_n1 * rat_u(g.m()) * tau,
        coeff_u2: p.coeff(2, 0) == &sign_n * tau * &ginv.kirchhoff,
        coeff_uv: p.coeff(1, 1) == rat_u(2) * &sign_n * tau * &ginv.kirchhoff_pi,
        coeff_v2: p.coeff(0, 2) == &sign_n * tau * &ginv.kirchhoff_pi2,
        at_origin_zero: p.coeff(0, 0).is_zero(),
        u_slice_is_laplacian_charpoly: p.eval_v(&Rational::zero()) == laplacian(g).charpoly(),
        v_slice_is_scaled_walk_charpoly: v_slice == walk_scaled,
    }
}

/// The three faces of the Kemeny constant: the common weighted cover cost,
/// `2m` times the reciprocal nonzero eigenvalue sum of `N`, and `K_pi2`.
/// Returns the triple for exact comparison.
pub fn kemeny_triple(g: &Graph) -> Result<(Rational, Rational, Rational)> {
    let table = cost_table(g)?;
    let sums = spectral_sums(g);
    let dist = g.distances();
    let res = resistance_matrix(g);
    let ginv = global_invariants_from(g, &dist, &res);
    Ok((
        table.kemeny,
        rat_u(2 * g.m()) * sums.inv_sum_walk,
        ginv.kirchhoff_pi2,
    ))
}
