//! Monte Carlo random-walk engine.
//!
//! This is the statistical oracle for the exact machinery (hitting-time
//! estimates) and the only practical route to cover times at experiment
//! scale. Walks draw from ChaCha8 with one counter-mode stream per walk, so
//! runs are reproducible and schedule-independent; aggregation happens in
//! exact integer arithmetic before the final division. Floating point lives
//! here and nowhere else in the crate.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::RationalMatrix;
use crate::rational::{rat_u, Rational};

/// Largest `n` for the exact subset-state cover-time solve.
pub const MAX_EXACT_COVER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub seed: u64,
    /// Number of independent walks per estimate (at least 1).
    pub walks: u64,
    /// Step cap per walk; a capped walk is an error, never silently dropped.
    pub max_steps: u64,
}

impl WalkConfig {
    /// Config with the default step cap `100 n^3`, far above every tree
    /// hitting time (`<= m^2`) and the polynomial cover-time bounds, so a
    /// truncation signals a bug rather than an unlucky walk.
    pub fn for_graph(g: &Graph, seed: u64, walks: u64) -> WalkConfig {
        let n = g.n() as u64;
        WalkConfig {
            seed,
            walks,
            max_steps: 100 * n * n * n,
        }
    }
}

/// Sample mean and standard error of a walk statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    /// Count of capped walks; always 0 for accepted estimates.
    pub truncated: u64,
}

/// Independent per-walk generator: same key, one ChaCha stream per walk.
fn walk_rng(seed: u64, walk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(walk);
    rng
}

fn step(g: &Graph, rng: &mut ChaCha8Rng, v: usize) -> usize {
    let nbrs = g.neighbors(v);
    nbrs[rng.random_range(0..nbrs.len())]
}

/// Aggregates per-walk step counts exactly, then converts once.
fn tally(samples: &[Option<u64>]) -> Result<Estimate> {
    let truncated = samples.iter().filter(|s| s.is_none()).count() as u64;
    if truncated > 0 {
        return Err(Error::Truncation { truncated });
    }
    let n = samples.len() as u64;
    let sum: u128 = samples.iter().map(|s| u128::from(s.unwrap())).sum();
    let sum_sq: u128 = samples
        .iter()
        .map(|s| {
            let v = u128::from(s.unwrap());
            v * v
        })
        .sum();
    let mean = sum as f64 / n as f64;
    let std_error = if n > 1 {
        // Unbiased sample variance over n, from the exact moment sums.
        let num = n as f64 * sum_sq as f64 - (sum as f64) * (sum as f64);
        let var = num / (n as f64 * (n - 1) as f64);
        (var.max(0.0) / n as f64).sqrt()
    } else {
        0.0
    };
    Ok(Estimate {
        mean,
        std_error,
        truncated: 0,
    })
}

/// Monte Carlo estimate of the hitting time from `x` to `y`.
pub fn estimate_hitting(g: &Graph, x: usize, y: usize, cfg: &WalkConfig) -> Result<Estimate> {
    assert!(x != y && x < g.n() && y < g.n());
    assert!(cfg.walks >= 1);
    let samples: Vec<Option<u64>> = (0..cfg.walks)
        .into_par_iter()
        .map(|w| {
            let mut rng = walk_rng(cfg.seed, w);
            let mut v = x;
            for steps in 1..=cfg.max_steps {
                v = step(g, &mut rng, v);
                if v == y {
                    return Some(steps);
                }
            }
            None
        })
        .collect();
    tally(&samples)
}

/// Monte Carlo estimate of the cover time from `r` (first time every vertex
/// has been visited).
pub fn estimate_cover_time(g: &Graph, r: usize, cfg: &WalkConfig) -> Result<Estimate> {
    assert!(r < g.n());
    assert!(cfg.walks >= 1);
    let n = g.n();
    let samples: Vec<Option<u64>> = (0..cfg.walks)
        .into_par_iter()
        .map(|w| {
            let mut rng = walk_rng(cfg.seed, w);
            let mut visited = vec![false; n];
            visited[r] = true;
            let mut left = n - 1;
            if left == 0 {
                return Some(0);
            }
            let mut v = r;
            for steps in 1..=cfg.max_steps {
                v = step(g, &mut rng, v);
                if !visited[v] {
                    visited[v] = true;
                    left -= 1;
                    if left == 0 {
                        return Some(steps);
                    }
                }
            }
            None
        })
        .collect();
    tally(&samples)
}

/// Exact expected cover time from `r`, for `n <= 10`.
///
/// Works on the Markov chain of (visited subset, current vertex) states.
/// Subsets only grow along transitions, so states are solved in descending
/// subset order; within a fixed subset the unknowns couple through an
/// `|S| x |S|` linear system solved exactly.
pub fn exact_cover_time_small(g: &Graph, r: usize) -> Result<Rational> {
    let n = g.n();
    if n > MAX_EXACT_COVER {
        return Err(Error::NTooLarge {
            what: "exact cover time",
            max: MAX_EXACT_COVER,
            got: n,
        });
    }
    assert!(r < n);
    let full: u32 = ((1u64 << n) - 1) as u32;
    // expect[S * n + v] = expected remaining cover time from (S, v), v in S.
    let mut expect = vec![Rational::zero(); (full as usize + 1) * n];
    for s in (1..full).rev() {
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let k = members.len();
        let index_of = |v: usize| members.iter().position(|&w| w == v).unwrap();
        // d(v) x_v - sum_{w ~ v, w in S} x_w = d(v) + sum_{w ~ v, w not in S} E[S + w, w]
        let mut mat = RationalMatrix::zeros(k, k);
        let mut rhs = Vec::with_capacity(k);
        for (i, &v) in members.iter().enumerate() {
            mat.set(i, i, rat_u(g.degree(v)));
            let mut acc = rat_u(g.degree(v));
            for &w in g.neighbors(v) {
                if s >> w & 1 == 1 {
                    mat.set(i, index_of(w), -Rational::one());
                } else {
                    acc += &expect[(s | 1 << w) as usize * n + w];
                }
            }
            rhs.push(acc);
        }
        let sol = mat
            .solve(&rhs)
            .expect("cover-time system of a connected graph is nonsingular");
        for (i, &v) in members.iter().enumerate() {
            expect[s as usize * n + v] = sol[i].clone();
        }
    }
    Ok(expect[(1usize << r) * n + r].clone())
}

/// Splits a base seed into independent sub-seeds for derived experiments
/// (SplitMix64 over the combined words).
pub fn derive_seed(base: u64, tag: u64, idx: u64) -> u64 {
    let mut z = base
        .wrapping_add(tag.wrapping_mul(0x9E3779B97F4A7C15))
        .wrapping_add(idx.wrapping_mul(0xBF58476D1CE4E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i;

    #[test]
    fn k2_walks_are_deterministic() {
        let g = Graph::complete(2).unwrap();
        let cfg = WalkConfig::for_graph(&g, 1, 100);
        let e = estimate_hitting(&g, 0, 1, &cfg).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.std_error, 0.0);
        let c = estimate_cover_time(&g, 0, &cfg).unwrap();
        assert_eq!(c.mean, 1.0);
    }

    #[test]
    fn seed_determinism_is_bit_identical() {
        let g = Graph::cycle(5).unwrap();
        let cfg = WalkConfig::for_graph(&g, 99, 500);
        let a = estimate_hitting(&g, 0, 2, &cfg).unwrap();
        let b = estimate_hitting(&g, 0, 2, &cfg).unwrap();
        assert_eq!(a, b);
        let c = estimate_cover_time(&g, 0, &cfg).unwrap();
        let d = estimate_cover_time(&g, 0, &cfg).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn truncation_is_loud() {
        let g = Graph::path(3).unwrap();
        let cfg = WalkConfig {
            seed: 5,
            walks: 50,
            max_steps: 1,
        };
        assert!(matches!(
            estimate_hitting(&g, 0, 2, &cfg),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn exact_cover_time_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(exact_cover_time_small(&k2, 0).unwrap(), rat_i(1));

        // Path 0-1-2: covering from an end is one hit of the far end (4);
        // from the middle it costs 5.
        let p3 = Graph::path(3).unwrap();
        assert_eq!(exact_cover_time_small(&p3, 0).unwrap(), rat_i(4));
        assert_eq!(exact_cover_time_small(&p3, 1).unwrap(), rat_i(5));

        // Star on 4 vertices from the centre: 1 + 3 + 6 = 10.
        let s4 = Graph::star(4).unwrap();
        assert_eq!(exact_cover_time_small(&s4, 0).unwrap(), rat_i(10));

        assert!(matches!(
            exact_cover_time_small(&Graph::path(11).unwrap(), 0),
            Err(Error::NTooLarge { .. })
        ));
    }

    #[test]
    fn estimates_match_exact_cover_time() {
        let p3 = Graph::path(3).unwrap();
        let cfg = WalkConfig::for_graph(&p3, 2024, 20_000);
        let est = estimate_cover_time(&p3, 0, &cfg).unwrap();
        assert!((est.mean - 4.0).abs() <= 3.0 * est.std_error);

        let s4 = Graph::star(4).unwrap();
        let cfg = WalkConfig::for_graph(&s4, 7, 20_000);
        let est = estimate_cover_time(&s4, 0, &cfg).unwrap();
        assert!((est.mean - 10.0).abs() <= 3.0 * est.std_error);
    }

    #[test]
    fn hitting_estimate_matches_exact() {
        let p3 = Graph::path(3).unwrap();
        let cfg = WalkConfig::for_graph(&p3, 11, 20_000);
        let est = estimate_hitting(&p3, 0, 2, &cfg).unwrap();
        assert!((est.mean - 4.0).abs() <= 3.0 * est.std_error);
    }
}
