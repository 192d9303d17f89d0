//! Dense reference implementation of the walk operator.
//!
//! Builds the full arc-space matrix directly from its defining pieces — the
//! orientation-swap permutation and the reflection `2P - I` assembled from
//! explicit outer products — with none of the sparse bookkeeping the fast
//! path uses. Tests pit the two against each other.

use ndarray::{Array1, Array2};
use thiserror::Error;

use crate::arcspace::ArcState;
use crate::graph::Graph;
use crate::scalar::{inv_sqrt_degree, Scalar};

/// Default vertex cap: 40 vertices is a 1600-dimensional arc space.
pub const DEFAULT_ORACLE_CAP: usize = 40;

/// Environment variable overriding the vertex cap.
pub const ORACLE_CAP_ENV: &str = "MARKOVPST_ORACLE_CAP";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices; dense oracle is capped at {cap} (override with {ORACLE_CAP_ENV})")]
    TooLarge { n: usize, cap: usize },
}

/// Current vertex cap: `MARKOVPST_ORACLE_CAP` when set and parseable,
/// otherwise [`DEFAULT_ORACLE_CAP`].
pub fn oracle_cap() -> usize {
    effective_cap(std::env::var(ORACLE_CAP_ENV).ok().as_deref())
}

fn effective_cap(env_value: Option<&str>) -> usize {
    env_value.and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_ORACLE_CAP)
}

/// Builds the explicit `n^2 x n^2` one-step matrix from the operator's
/// definition.
pub fn dense_oracle_step<S: Scalar>(g: &Graph) -> Result<Array2<S>, OracleError> {
    let cap = oracle_cap();
    let n = g.n();
    if n > cap {
        return Err(OracleError::TooLarge { n, cap });
    }
    let dim = n * n;
    let two = S::one() + S::one();

    // Reflection 2P - I, with P the sum over vertices of |psi_j><psi_j|.
    let mut reflection = Array2::<S>::zeros((dim, dim));
    for i in 0..dim {
        reflection[(i, i)] = -S::one();
    }
    for j in 0..n {
        let q: S = inv_sqrt_degree(g.out_degree(j));
        for &k1 in g.neighbors(j) {
            for &k2 in g.neighbors(j) {
                let (r, c) = (j * n + k1, j * n + k2);
                reflection[(r, c)] = reflection[(r, c)] + two * q * q;
            }
        }
    }

    // Swap permutes |jk> to |kj>; composing means row jk of the product is
    // row kj of the reflection.
    let mut u = Array2::<S>::zeros((dim, dim));
    for j in 0..n {
        for k in 0..n {
            let dst = j * n + k;
            let src = k * n + j;
            for c in 0..dim {
                u[(dst, c)] = reflection[(src, c)];
            }
        }
    }
    Ok(u)
}

/// Flattens a sparse state into the dense arc-space vector.
pub fn state_to_vector<S: Scalar>(state: &ArcState<S>) -> Array1<S> {
    let n = state.n();
    let mut v = Array1::zeros(n * n);
    for (j, k, a) in state.arcs() {
        v[j * n + k] = a;
    }
    v
}

/// Largest absolute entry of `U^T U - I`.
pub fn orthogonality_defect<S: Scalar>(u: &Array2<S>) -> S {
    let mut gram = u.t().dot(u);
    let dim = gram.nrows();
    for i in 0..dim {
        gram[(i, i)] = gram[(i, i)] - S::one();
    }
    gram.iter().fold(S::zero(), |acc, &x| acc.max(x.abs()))
}
