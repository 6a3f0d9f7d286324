//! Deterministic instance generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

const GNP_RETRY_BUDGET: usize = 64;

/// Graph families. All generators are pure functions of
/// `(family, n, params, seed)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Erdos-Renyi G(n, p); retries until connected.
    Gnp,
    /// Path 0-1-...-(n-1), unit weights.
    Path,
    /// Star with center 0, unit weights.
    Star,
    /// Complete graph on random points in the unit square, Euclidean weights.
    CompleteMetric,
    /// Cycle on 1..n-1 plus center 0 joined to every rim vertex, unit weights.
    Wheel,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnp" => Ok(Family::Gnp),
            "path" => Ok(Family::Path),
            "star" => Ok(Family::Star),
            "complete_metric" => Ok(Family::CompleteMetric),
            "wheel" => Ok(Family::Wheel),
            other => Err(Error::BadParameter(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenParams {
    /// Edge probability for `gnp`.
    pub p: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { p: 0.5 }
    }
}

pub fn generate(family: Family, n: usize, params: &GenParams, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::BadParameter("generators require n >= 2".into()));
    }
    match family {
        Family::Path => {
            let edges = (0..n - 1).map(|i| Edge::new(i, i + 1, 1.0)).collect();
            Graph::new(n, edges)
        }
        Family::Star => {
            let edges = (1..n).map(|v| Edge::new(0, v, 1.0)).collect();
            Graph::new(n, edges)
        }
        Family::Wheel => {
            if n < 4 {
                return Err(Error::BadParameter("wheel requires n >= 4".into()));
            }
            let mut edges: Vec<Edge> = (1..n).map(|v| Edge::new(0, v, 1.0)).collect();
            for v in 1..n - 1 {
                edges.push(Edge::new(v, v + 1, 1.0));
            }
            edges.push(Edge::new(n - 1, 1, 1.0));
            Graph::new(n, edges)
        }
        Family::CompleteMetric => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts: Vec<(f64, f64)> =
                (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
            let mut edges = Vec::with_capacity(n * (n - 1) / 2);
            for u in 0..n {
                for v in u + 1..n {
                    let dx = pts[u].0 - pts[v].0;
                    let dy = pts[u].1 - pts[v].1;
                    edges.push(Edge::new(u, v, (dx * dx + dy * dy).sqrt()));
                }
            }
            Graph::new(n, edges)
        }
        Family::Gnp => {
            if !(params.p > 0.0 && params.p <= 1.0) {
                return Err(Error::BadParameter(format!("gnp needs p in (0, 1], got {}", params.p)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..GNP_RETRY_BUDGET {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.random::<f64>() < params.p {
                            edges.push(Edge::new(u, v, dyadic_weight(&mut rng)));
                        }
                    }
                }
                let g = Graph::new(n, edges)?;
                if g.is_connected() {
                    return Ok(g);
                }
            }
            Err(Error::RetryBudgetExhausted(GNP_RETRY_BUDGET))
        }
    }
}

/// Random weight on the dyadic grid `{1/256, 2/256, ..., 2048/256}`.
///
/// Every such weight and every sum of polynomially many of them is exact
/// in f64, so weight comparisons downstream never see rounding noise.
fn dyadic_weight<R: Rng>(rng: &mut R) -> f64 {
    (1 + rng.random_range(0..2048u32)) as f64 / 256.0
}
