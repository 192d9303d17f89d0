//! Quantum states over directed arcs and the sparse walk step.
//!
//! The walk acts on the space spanned by arcs `(j, k)`, one pair per edge
//! orientation. One step first reflects through the span of the per-vertex
//! superposition states `psi_j`, then swaps arc orientation. Both halves are
//! applied sparsely: the reflection only ever touches arcs leaving a vertex
//! that already carries amplitude, so a step costs time proportional to the
//! state's support (times local degree), never the full arc-space dimension.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::numfmt::format_amplitude;
use crate::scalar::{inv_sqrt_degree, Scalar};

/// Amplitudes below this are dropped after every operation to keep states
/// sparse. Genuine walk amplitudes are `0`, `±1`, or `±sqrt(1/d)` sums and
/// sit many orders of magnitude above it.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StateError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("graph is disconnected; the walk is only defined on connected graphs")]
    Disconnected,
}

/// Sparse real-amplitude state over directed arcs `(j, k)`.
///
/// Arcs are keyed by the flattened index `j * n + k`; arcs with zero
/// amplitude are absent. States are plain values: every operation returns a
/// new state and leaves its input untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcState<S: Scalar> {
    n: usize,
    amplitudes: BTreeMap<usize, S>,
}

impl<S: Scalar> ArcState<S> {
    /// The zero state (empty support).
    pub fn zero(n: usize) -> Self {
        ArcState { n, amplitudes: BTreeMap::new() }
    }

    /// The basis state `|jk>` with unit amplitude on a single arc.
    pub fn basis(n: usize, j: usize, k: usize) -> Result<Self, StateError> {
        if j >= n {
            return Err(StateError::InvalidVertex { vertex: j, n });
        }
        if k >= n {
            return Err(StateError::InvalidVertex { vertex: k, n });
        }
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(j * n + k, S::one());
        Ok(ArcState { n, amplitudes })
    }

    /// Builds a state from `(source, target, amplitude)` triples, summing
    /// duplicates and pruning negligible results.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self, StateError> {
        let mut state = Self::zero(n);
        for (j, k, a) in arcs {
            if j >= n {
                return Err(StateError::InvalidVertex { vertex: j, n });
            }
            if k >= n {
                return Err(StateError::InvalidVertex { vertex: k, n });
            }
            let slot = state.amplitudes.entry(j * n + k).or_insert_with(S::zero);
            *slot = *slot + a;
        }
        state.prune();
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arcs carrying amplitude.
    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitude on arc `(j, k)`; zero when absent.
    ///
    /// # Panics
    /// Panics if either vertex is out of range.
    pub fn amplitude(&self, j: usize, k: usize) -> S {
        assert!(j < self.n && k < self.n, "arc ({j}, {k}) out of range for {} vertices", self.n);
        self.amplitudes.get(&(j * self.n + k)).copied().unwrap_or_else(S::zero)
    }

    /// Arcs in ascending flattened order with their amplitudes.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, S)> + '_ {
        self.amplitudes.iter().map(move |(&idx, &a)| (idx / self.n, idx % self.n, a))
    }

    /// Squared-amplitude sum.
    pub fn norm_squared(&self) -> S {
        self.amplitudes.values().fold(S::zero(), |acc, &a| acc + a * a)
    }

    pub fn norm(&self) -> S {
        self.norm_squared().sqrt()
    }

    /// Inner product; errors when the vertex counts differ.
    pub fn overlap(&self, other: &Self) -> Result<S, StateError> {
        if self.n != other.n {
            return Err(StateError::VertexCountMismatch(self.n, other.n));
        }
        let (small, large) = if self.amplitudes.len() <= other.amplitudes.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = S::zero();
        for (idx, &a) in &small.amplitudes {
            if let Some(&b) = large.amplitudes.get(idx) {
                acc = acc + a * b;
            }
        }
        Ok(acc)
    }

    /// Per-vertex probability of finding the walker at `k`: the sum of
    /// squared amplitudes over arcs leaving `k`.
    pub fn position_distribution(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for (j, _, a) in self.arcs() {
            out[j] = out[j] + a * a;
        }
        out
    }

    /// Largest absolute amplitude difference over the union of supports.
    pub fn max_abs_difference(&self, other: &Self) -> Result<S, StateError> {
        if self.n != other.n {
            return Err(StateError::VertexCountMismatch(self.n, other.n));
        }
        let mut worst = S::zero();
        for (&idx, &a) in &self.amplitudes {
            let b = other.amplitudes.get(&idx).copied().unwrap_or_else(S::zero);
            worst = worst.max((a - b).abs());
        }
        for (&idx, &b) in &other.amplitudes {
            if !self.amplitudes.contains_key(&idx) {
                worst = worst.max(b.abs());
            }
        }
        Ok(worst)
    }

    /// True when both states have identical support and amplitudes within
    /// `tol` pointwise.
    pub fn same_support_and_close(&self, other: &Self, tol: S) -> bool {
        self.n == other.n
            && self.amplitudes.len() == other.amplitudes.len()
            && self
                .amplitudes
                .iter()
                .zip(other.amplitudes.iter())
                .all(|((i, a), (j, b))| i == j && (*a - *b).abs() <= tol)
    }

    /// Relabels every arc `(j, k)` to `(map(j), map(k))`. The map must be a
    /// bijection on `0..n`.
    pub fn relabeled(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut amplitudes = BTreeMap::new();
        for (j, k, a) in self.arcs() {
            amplitudes.insert(map(j) * self.n + map(k), a);
        }
        ArcState { n: self.n, amplitudes }
    }

    /// Serializes as one `j k amplitude` line per arc, ascending flattened
    /// index, amplitudes at 12 significant digits.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (j, k, a) in self.arcs() {
            writeln!(out, "{j} {k} {}", format_amplitude(a.to_f64().unwrap())).unwrap();
        }
        out
    }

    fn prune(&mut self) {
        let cut = S::from_f64(PRUNE_THRESHOLD).expect("threshold fits in scalar");
        self.amplitudes.retain(|_, a| a.abs() > cut);
    }
}

/// The one-step walk operator bound to a graph: reflection through the
/// span of the `psi_j` states followed by the arc swap.
///
/// Immutable after construction and freely shareable across threads;
/// independent evolutions need no synchronization.
pub struct WalkStep<'g, S: Scalar> {
    graph: &'g Graph,
    inv_sqrt_deg: Vec<S>,
}

impl<'g, S: Scalar> WalkStep<'g, S> {
    /// Binds the walk to `graph`; rejects disconnected graphs.
    pub fn new(graph: &'g Graph) -> Result<Self, StateError> {
        if !graph.is_connected() {
            return Err(StateError::Disconnected);
        }
        let inv_sqrt_deg = (0..graph.n()).map(|j| inv_sqrt_degree(graph.out_degree(j))).collect();
        Ok(WalkStep { graph, inv_sqrt_deg })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// The basis state `psi_j`: amplitude `sqrt(p(j, k))` on each outgoing
    /// arc `(j, k)`.
    pub fn psi(&self, j: usize) -> Result<ArcState<S>, StateError> {
        let n = self.graph.n();
        if j >= n {
            return Err(StateError::InvalidVertex { vertex: j, n });
        }
        let q = self.inv_sqrt_deg[j];
        let mut amplitudes = BTreeMap::new();
        for &k in self.graph.neighbors(j) {
            amplitudes.insert(j * n + k, q);
        }
        Ok(ArcState { n, amplitudes })
    }

    /// Applies the reflection `2P - I` where `P` projects onto the span of
    /// all `psi_j`.
    ///
    /// Work is grouped by source vertex: for each vertex carrying amplitude,
    /// the overlap with its `psi_j` is accumulated, then only that vertex's
    /// outgoing arcs are rewritten. The projector is never materialized.
    pub fn reflect(&self, state: &ArcState<S>) -> ArcState<S> {
        debug_assert!(
            state.arcs().all(|(j, k, _)| self.graph.is_adjacent(j, k)),
            "state carries amplitude off the graph's arcs"
        );
        debug_assert_eq!(state.n(), self.graph.n());
        let n = self.graph.n();
        let cut = S::from_f64(PRUNE_THRESHOLD).expect("threshold fits in scalar");
        let two = S::one() + S::one();
        let mut out = BTreeMap::new();

        // BTreeMap iteration is ordered by j * n + k, so arcs sharing a
        // source are consecutive.
        let mut entries = state.amplitudes.iter().peekable();
        let mut group: Vec<(usize, S)> = Vec::new();
        while let Some((&idx, &a)) = entries.next() {
            let source = idx / n;
            group.push((idx % n, a));
            let flush = match entries.peek() {
                Some((&next_idx, _)) => next_idx / n != source,
                None => true,
            };
            if !flush {
                continue;
            }
            let q = self.inv_sqrt_deg[source];
            let overlap = group.iter().fold(S::zero(), |acc, &(_, a)| acc + a) * q;
            let gain = two * overlap * q;
            if gain.abs() > cut {
                // Touch every outgoing arc of this source.
                let mut held = group.iter().peekable();
                for &k in self.graph.neighbors(source) {
                    let a = match held.peek() {
                        Some(&&(gk, ga)) if gk == k => {
                            held.next();
                            ga
                        }
                        _ => S::zero(),
                    };
                    let v = gain - a;
                    if v.abs() > cut {
                        out.insert(source * n + k, v);
                    }
                }
            } else {
                // The psi component is negligible: only negate the support.
                for &(k, a) in &group {
                    let v = gain - a;
                    if v.abs() > cut {
                        out.insert(source * n + k, v);
                    }
                }
            }
            group.clear();
        }
        ArcState { n, amplitudes: out }
    }

    /// Applies one walk step: reflection, then swap.
    pub fn apply(&self, state: &ArcState<S>) -> ArcState<S> {
        apply_swap(&self.reflect(state))
    }

    /// Applies `t` walk steps; `t = 0` returns a copy of the input.
    pub fn evolve(&self, state: &ArcState<S>, t: usize) -> ArcState<S> {
        let mut current = state.clone();
        for _ in 0..t {
            current = self.apply(&current);
        }
        current
    }

    /// Fidelity amplitudes `<psi_k | state>` for every vertex `k`, in one
    /// pass over the support.
    pub fn fidelities(&self, state: &ArcState<S>) -> Vec<S> {
        let mut out = vec![S::zero(); self.graph.n()];
        for (j, _, a) in state.arcs() {
            out[j] = out[j] + self.inv_sqrt_deg[j] * a;
        }
        out
    }
}

/// Swaps arc orientation: amplitude on `(j, k)` moves to `(k, j)`. An
/// involution.
pub fn apply_swap<S: Scalar>(state: &ArcState<S>) -> ArcState<S> {
    let n = state.n();
    let mut amplitudes = BTreeMap::new();
    for (j, k, a) in state.arcs() {
        amplitudes.insert(k * n + j, a);
    }
    ArcState { n, amplitudes }
}

/// The basis state `psi_j` on `g`. Convenience wrapper over [`WalkStep`].
pub fn psi_state<S: Scalar>(g: &Graph, j: usize) -> Result<ArcState<S>, StateError> {
    WalkStep::new(g)?.psi(j)
}

/// Inner product of two states.
pub fn overlap<S: Scalar>(a: &ArcState<S>, b: &ArcState<S>) -> Result<S, StateError> {
    a.overlap(b)
}

/// Applies the reflection half of the walk step.
pub fn apply_reflection<S: Scalar>(g: &Graph, state: &ArcState<S>) -> Result<ArcState<S>, StateError> {
    Ok(WalkStep::new(g)?.reflect(state))
}

/// Applies one full walk step.
pub fn step<S: Scalar>(g: &Graph, state: &ArcState<S>) -> Result<ArcState<S>, StateError> {
    Ok(WalkStep::new(g)?.apply(state))
}

/// Applies `t` walk steps.
pub fn evolve<S: Scalar>(g: &Graph, state: &ArcState<S>, t: usize) -> Result<ArcState<S>, StateError> {
    Ok(WalkStep::new(g)?.evolve(state, t))
}
