//! Dense exact rational linear algebra.
//!
//! One determinant kernel (fraction-free Bareiss elimination over scaled
//! integer rows) backs everything here: determinants, linear solves,
//! characteristic polynomials (by exact evaluation and Lagrange
//! interpolation) and the bivariate polynomial `det(uI + vD - L)`. No
//! floating point, no tolerances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{rat_u, Rational};

/// Dense row-major matrix over arbitrary-precision rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    /// Removes the rows and columns listed in `idxs` (a set of indices of a
    /// square matrix), e.g. the vertex-deleted Laplacian minors.
    pub fn delete_rc(&self, idxs: &[usize]) -> Result<RationalMatrix> {
        assert!(self.is_square(), "delete_rc needs a square matrix");
        let n = self.rows;
        if idxs.iter().any(|&i| i >= n) {
            return Err(Error::IndexOutOfRange);
        }
        let keep: Vec<usize> = (0..n).filter(|i| !idxs.contains(i)).collect();
        Ok(RationalMatrix::from_fn(keep.len(), keep.len(), |i, j| {
            self.get(keep[i], keep[j]).clone()
        }))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Scales each row by the lcm of its denominators, yielding an integer
    /// matrix and the product of the scale factors.
    fn scaled_integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = lcm.lcm(self.get(i, j).denom());
                }
                let row = (0..self.cols)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect();
                scale *= &lcm;
                row
            })
            .collect();
        (rows, scale)
    }

    /// Exact determinant (empty matrix has determinant 1).
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant needs a square matrix");
        let (rows, scale) = self.scaled_integer_rows();
        Rational::new(bareiss_det(rows), scale)
    }

    /// Solves `self * x = rhs` exactly. Fails with [`Error::SingularMatrix`]
    /// when the matrix is not invertible.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        assert!(self.is_square(), "solve needs a square matrix");
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        if n == 0 {
            return Ok(Vec::new());
        }
        // Fraction-free forward elimination on the augmented integer system,
        // then rational back-substitution.
        let aug = RationalMatrix::from_fn(n, n + 1, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let (mut a, _) = aug.scaled_integer_rows();
        drop(aug);
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => a.swap(k, r),
                    None => return Err(Error::SingularMatrix),
                }
            }
            if k + 1 == n {
                break;
            }
            let (upper, lower) = a.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower.iter_mut() {
                for j in k + 1..=n {
                    let t = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                    row[j] = t / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(a[i][n].clone());
            for j in i + 1..n {
                acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
            }
            x[i] = acc / Rational::from_integer(a[i][i].clone());
        }
        Ok(x)
    }

    /// Characteristic polynomial `det(tI - A)`, monic of degree `dim`.
    ///
    /// Computed by evaluating the determinant exactly at `t = 0, 1, ..., dim`
    /// and interpolating: this reuses the one well-tested determinant kernel
    /// instead of carrying a second elimination scheme.
    pub fn charpoly(&self) -> Polynomial {
        assert!(self.is_square());
        let n = self.rows;
        let points: Vec<(Rational, Rational)> = (0..=n)
            .map(|t| {
                let tr = rat_u(t);
                let shifted = RationalMatrix::from_fn(n, n, |i, j| {
                    if i == j {
                        &tr - self.get(i, j)
                    } else {
                        -self.get(i, j)
                    }
                });
                (tr, shifted.det())
            })
            .collect();
        let p = lagrange_interpolate(&points);
        debug_assert_eq!(p.degree(), Some(n), "charpoly must have degree dim");
        debug_assert!(p.coeff(n).is_one(), "charpoly must be monic");
        p
    }
}

/// Fraction-free Bareiss determinant of an integer matrix. All intermediate
/// divisions are exact. The empty matrix has determinant 1.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                let t = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = t / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = std::mem::take(&mut a[n - 1][n - 1]);
    if sign {
        -d
    } else {
        d
    }
}

/// Bareiss determinant over `i128`, for hot enumeration loops where entries
/// and all subdeterminants are known to be tiny (e.g. Laplacian minors of
/// graphs on at most 8 vertices).
pub(crate) fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Graph Laplacian `L = D - A`.
pub fn laplacian(g: &Graph) -> RationalMatrix {
    let n = g.n();
    RationalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            rat_u(g.degree(i))
        } else if g.has_edge(i, j) {
            -Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Transition matrix of the simple random walk: `M[i][j] = 1/d(i)` when
/// `ij` is an edge. Row-stochastic.
pub fn transition(g: &Graph) -> RationalMatrix {
    let n = g.n();
    RationalMatrix::from_fn(n, n, |i, j| {
        if g.has_edge(i, j) {
            Rational::new(BigInt::one(), BigInt::from(g.degree(i)))
        } else {
            Rational::zero()
        }
    })
}

/// Walk Laplacian `N = I - M`; equals `D^{-1} L`, so its rows sum to zero.
pub fn n_matrix(g: &Graph) -> RationalMatrix {
    let n = g.n();
    RationalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Rational::one()
        } else if g.has_edge(i, j) {
            -Rational::new(BigInt::one(), BigInt::from(g.degree(i)))
        } else {
            Rational::zero()
        }
    })
}

/// Diagonal degree matrix.
pub fn degree_matrix(g: &Graph) -> RationalMatrix {
    let n = g.n();
    RationalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            rat_u(g.degree(i))
        } else {
            Rational::zero()
        }
    })
}

/// Univariate polynomial with exact rational coefficients, ascending degree,
/// trailing zeros trimmed. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the lowest nonvanishing coefficient.
    pub fn lowest_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn add_scaled(&mut self, other: &[Rational], factor: &Rational) {
        if self.coeffs.len() < other.len() {
            self.coeffs.resize(other.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(other) {
            *a += b * factor;
        }
    }

    /// Multiplies by the linear factor `(x - r)` in place.
    fn mul_linear(&mut self, r: &Rational) {
        self.coeffs.insert(0, Rational::zero());
        for i in 0..self.coeffs.len() - 1 {
            let t = &self.coeffs[i + 1] * r;
            self.coeffs[i] -= t;
        }
    }

    /// Exact quotient by `(x - r)` where `r` is a root (synthetic division).
    fn div_linear_at_root(&self, r: &Rational) -> Vec<Rational> {
        let d = self.coeffs.len() - 1;
        let mut q = vec![Rational::zero(); d];
        q[d - 1] = self.coeffs[d].clone();
        for j in (1..d).rev() {
            q[j - 1] = &self.coeffs[j] + r * &q[j];
        }
        debug_assert!((&self.coeffs[0] + r * &q[0]).is_zero(), "not a root");
        q
    }
}

/// Lagrange interpolation through distinct exact points.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Polynomial {
    // master = prod (x - x_i); each basis numerator is master / (x - x_i).
    let mut master = Polynomial::new(vec![Rational::one()]);
    for (x, _) in points {
        master.mul_linear(x);
    }
    let mut out = Polynomial::zero();
    for (xi, yi) in points {
        if yi.is_zero() {
            continue;
        }
        let basis = master.div_linear_at_root(xi);
        let mut denom = Rational::zero();
        let mut pow = Rational::one();
        for c in &basis {
            denom += c * &pow;
            pow *= xi;
        }
        out.add_scaled(&basis, &(yi / denom));
    }
    Polynomial::new(out.coeffs)
}

/// Bivariate polynomial with exact coefficients indexed by `(deg u, deg v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<Rational>>,
}

impl BivariatePoly {
    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for row in self.coeffs.iter().rev() {
            let mut inner = Rational::zero();
            for c in row.iter().rev() {
                inner = inner * v + c;
            }
            acc = acc * u + inner;
        }
        acc
    }

    /// Coefficients of `v^j` as a polynomial in `u`.
    pub fn slice_v(&self, j: usize) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|row| {
            row.get(j).cloned().unwrap_or_else(Rational::zero)
        }).collect())
    }

    /// The polynomial `P(u, v0)` in `u`.
    pub fn eval_v(&self, v0: &Rational) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|row| {
                    let mut acc = Rational::zero();
                    for c in row.iter().rev() {
                        acc = acc * v0 + c;
                    }
                    acc
                })
                .collect(),
        )
    }
}

/// The bivariate polynomial `P(u, v) = det(uI + vD - L)` of a graph.
///
/// Computed exactly by evaluating the determinant on the integer grid
/// `u, v in {0, ..., n}` and interpolating in each variable; the grid stays
/// small so the integer growth inside the determinants stays modest.
pub fn bivariate_det(g: &Graph) -> BivariatePoly {
    let n = g.n();
    // values[ui][vi] = det(u I + v D - L) at u = ui, v = vi.
    let values: Vec<Vec<Rational>> = (0..=n)
        .map(|u| {
            (0..=n)
                .map(|v| {
                    let a: Vec<Vec<BigInt>> = (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| {
                                    if i == j {
                                        BigInt::from(u as i64 + (v as i64 - 1) * g.degree(i) as i64)
                                    } else if g.has_edge(i, j) {
                                        BigInt::one()
                                    } else {
                                        BigInt::zero()
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    Rational::from_integer(bareiss_det(a))
                })
                .collect()
        })
        .collect();
    // Interpolate along v for each grid value of u, then along u per
    // v-coefficient.
    let v_polys: Vec<Polynomial> = values
        .iter()
        .map(|row| {
            let pts: Vec<_> = row
                .iter()
                .enumerate()
                .map(|(v, val)| (rat_u(v), val.clone()))
                .collect();
            lagrange_interpolate(&pts)
        })
        .collect();
    let coeffs = (0..=n)
        .map(|j| {
            let pts: Vec<_> = v_polys
                .iter()
                .enumerate()
                .map(|(u, p)| (rat_u(u), p.coeff(j)))
                .collect();
            lagrange_interpolate(&pts)
        })
        .collect::<Vec<_>>();
    // coeffs[j] is a polynomial in u; transpose into the (i, j) grid.
    let grid = (0..=n)
        .map(|i| (0..=n).map(|j| coeffs[j].coeff(i)).collect())
        .collect();
    BivariatePoly { coeffs: grid }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_i(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn graph_matrices() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(laplacian(&k2), mat(&[&[1, -1], &[-1, 1]]));

        let k3 = Graph::complete(3).unwrap();
        let m = transition(&k3);
        assert_eq!(m.get(0, 1), &rat(1, 2));
        assert_eq!(m.get(1, 1), &Rational::zero());

        let p3 = Graph::path(3).unwrap();
        let n = n_matrix(&p3);
        assert_eq!(
            (0..3).map(|j| n.get(1, j).clone()).collect::<Vec<_>>(),
            vec![rat(-1, 2), rat_i(1), rat(-1, 2)]
        );
        // Row sums of N vanish, M is row-stochastic.
        for i in 0..3 {
            let sum: Rational = (0..3).map(|j| n.get(i, j).clone()).sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn delete_rc_minors() {
        let k3 = Graph::complete(3).unwrap();
        let l = laplacian(&k3);
        assert_eq!(l.delete_rc(&[0]).unwrap(), mat(&[&[2, -1], &[-1, 2]]));
        assert_eq!(l.delete_rc(&[0, 1]).unwrap(), mat(&[&[2]]));
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(laplacian(&k2).delete_rc(&[0]).unwrap(), mat(&[&[1]]));
        assert_eq!(l.delete_rc(&[3]), Err(Error::IndexOutOfRange));
    }

    #[test]
    fn determinants() {
        let k3 = Graph::complete(3).unwrap();
        let tau = laplacian(&k3).delete_rc(&[0]).unwrap().det();
        assert_eq!(tau, rat_i(3)); // spanning trees of K_3

        let p3 = Graph::path(3).unwrap();
        assert_eq!(laplacian(&p3).delete_rc(&[0]).unwrap().det(), rat_i(1));

        // Empty minor (both vertices of K_2 deleted).
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(laplacian(&k2).delete_rc(&[0, 1]).unwrap().det(), rat_i(1));

        // Rational entries and a zero pivot needing a swap.
        let m = RationalMatrix::from_rows(vec![
            vec![rat_i(0), rat(1, 2)],
            vec![rat(2, 3), rat_i(5)],
        ]);
        assert_eq!(m.det(), rat(-1, 3));

        assert!(mat(&[&[1, 2], &[2, 4]]).det().is_zero());
    }

    #[test]
    fn solve_exact() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let rhs = vec![rat_i(5), rat_i(10)];
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.mul_vec(&x), rhs);
        assert_eq!(x, vec![rat_i(1), rat_i(3)]);

        assert_eq!(
            mat(&[&[1, 2], &[2, 4]]).solve(&[rat_i(1), rat_i(2)]),
            Err(Error::SingularMatrix)
        );

        // Pivot swap path.
        let a = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.solve(&[rat_i(3), rat_i(4)]).unwrap(),
            vec![rat_i(4), rat_i(3)]
        );
    }

    #[test]
    fn charpoly_examples() {
        let k2 = Graph::complete(2).unwrap();
        let p = laplacian(&k2).charpoly();
        assert_eq!(p.coeffs(), &[rat_i(0), rat_i(-2), rat_i(1)]); // t^2 - 2t

        let k3 = Graph::complete(3).unwrap();
        let p = laplacian(&k3).charpoly();
        assert_eq!(p.coeffs(), &[rat_i(0), rat_i(9), rat_i(-6), rat_i(1)]);

        // charpoly(0) = (-1)^dim det for odd dim.
        let m = mat(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(m.charpoly().coeff(0), -m.det());
    }

    #[test]
    fn lagrange_recovers_polynomials() {
        // x^3 - 2x + 1 through 4 points.
        let poly = Polynomial::new(vec![rat_i(1), rat_i(-2), rat_i(0), rat_i(1)]);
        let pts: Vec<_> = (0..4).map(|t| (rat_i(t), poly.eval(&rat_i(t)))).collect();
        assert_eq!(lagrange_interpolate(&pts), poly);
    }

    #[test]
    fn bivariate_k2_coefficients() {
        // P(u,v) = (u + v - 1)^2 - 1 = u^2 + v^2 + 2uv - 2u - 2v.
        let p = bivariate_det(&Graph::complete(2).unwrap());
        assert_eq!(p.coeff(0, 0), rat_i(0));
        assert_eq!(p.coeff(1, 0), rat_i(-2));
        assert_eq!(p.coeff(0, 1), rat_i(-2));
        assert_eq!(p.coeff(2, 0), rat_i(1));
        assert_eq!(p.coeff(0, 2), rat_i(1));
        assert_eq!(p.coeff(1, 1), rat_i(2));
    }

    #[test]
    fn bivariate_matches_hand_expansions() {
        // K_3: uI + vD - L = (u + 2v - 3)I + J, and det(aI + J) = a^2 (a+3)
        // for 3x3, so P = (u + 2v - 3)^2 (u + 2v).
        let p = bivariate_det(&Graph::complete(3).unwrap());
        for u in -3i64..=3 {
            for v in -3i64..=3 {
                let a = rat_i(u) + rat_i(2 * v) - rat_i(3);
                let expect = &a * &a * (rat_i(u) + rat_i(2 * v));
                assert_eq!(p.eval(&rat_i(u), &rat_i(v)), expect);
            }
        }

        // Path 0-1-2: det = a(ab - 2) with a = u + v - 1, b = u + 2v - 2.
        let p = bivariate_det(&Graph::path(3).unwrap());
        for u in -3i64..=3 {
            for v in -3i64..=3 {
                let a = rat_i(u + v - 1);
                let b = rat_i(u + 2 * v - 2);
                let expect = &a * (&a * &b - rat_i(2));
                assert_eq!(p.eval(&rat_i(u), &rat_i(v)), expect);
            }
        }
    }

    #[test]
    fn bivariate_u_slice_is_laplacian_charpoly() {
        for g in [Graph::path(4).unwrap(), Graph::complete(4).unwrap()] {
            let p = bivariate_det(&g);
            let cp = laplacian(&g).charpoly();
            assert_eq!(p.eval_v(&Rational::zero()), cp,
                "P(u, 0) must equal det(uI - L)");
            assert!(p.eval(&Rational::zero(), &Rational::zero()).is_zero());
        }
    }
}
