//! Closed-form propagated states on cycles and paths, and the per-vertex
//! probability profile.
//!
//! On a cycle the walker splits into two counter-rotating wavefronts; after
//! `t` steps the state is the equal superposition of the arcs
//! `|(j+t)(j+t-1)>` and `|(j-t)(j-t+1)>` with all vertex arithmetic modulo
//! `n`. On a path the same two fronts bounce off the endpoints, which yields
//! three regimes for an interior start vertex: both fronts free, the
//! downward front reflected, and both fronts reflected. Endpoint starts
//! collapse to a single travelling arc. Everything here is cross-checked
//! against step-by-step evolution in the test suites.

use thiserror::Error;

use crate::arcspace::{ArcState, StateError, WalkStep};
use crate::graph::Graph;
use crate::numfmt::format_amplitude;
use crate::scalar::{inv_sqrt_degree, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalyticError {
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("path needs at least 2 vertices, got {0}")]
    PathTooSmall(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("profile horizon {t_max} exceeds the closed form's range {limit}")]
    HorizonOutOfRange { t_max: usize, limit: usize },
}

/// Which branch of the path propagation produced a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathRegime {
    /// `0 <= t <= j`: both wavefronts still travelling freely.
    Early,
    /// `j+1 <= t <= n-j-1`: the downward front has bounced off vertex 0.
    Middle,
    /// `n-j <= t <= n-1`: both fronts have bounced.
    Late,
}

/// A closed-form state at time `t`, tagged with the propagation regime when
/// the three-branch path expression produced it.
///
/// `regime` is `None` on cycles and for endpoint starts (single travelling
/// arc); for start vertices in the upper half of a path it reports the
/// regime of the mirror-image computation.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagatedState<S: Scalar> {
    pub state: ArcState<S>,
    pub regime: Option<PathRegime>,
}

/// Closed-form state of a cycle walker started at `j` after `t` steps.
pub fn cycle_state<S: Scalar>(n: usize, j: usize, t: usize) -> Result<PropagatedState<S>, AnalyticError> {
    if n < 3 {
        return Err(AnalyticError::CycleTooSmall(n));
    }
    if j >= n {
        return Err(AnalyticError::InvalidVertex { vertex: j, n });
    }
    let t = t % n;
    let half: S = inv_sqrt_degree(2);
    // Upward front on arc (j+t, j+t-1), downward front on (j-t, j-t+1),
    // with everything modulo n; at t = 0 the two arcs form psi_j.
    let state = ArcState::from_arcs(
        n,
        vec![
            ((j + t) % n, (j + t + n - 1) % n, half),
            ((j + n - t) % n, (j + n - t + 1) % n, half),
        ],
    )
    .expect("cycle arcs in range");
    Ok(PropagatedState { state, regime: None })
}

/// Closed-form state of a path walker started at `j` after `t` steps.
///
/// The three-branch expression covers start vertices in the lower half for
/// `t <= n-1`; endpoint starts reduce to a single travelling arc, upper-half
/// starts follow by mirror symmetry, and larger `t` reduces through the
/// graph's full period `2(n-1)`.
pub fn path_state<S: Scalar>(n: usize, j: usize, t: usize) -> Result<PropagatedState<S>, AnalyticError> {
    if n < 2 {
        return Err(AnalyticError::PathTooSmall(n));
    }
    if j >= n {
        return Err(AnalyticError::InvalidVertex { vertex: j, n });
    }
    let period = 2 * (n - 1);
    let mut t = t % period;
    let mut j = j;
    if t > n - 1 {
        // Every vertex transfers perfectly to its mirror at t = n-1, so the
        // remaining steps restart from the mirrored vertex.
        j = n - 1 - j;
        t -= n - 1;
    }
    let mirrored = j > n - 1 - j;
    let start = if mirrored { n - 1 - j } else { j };
    let (arcs, regime) = lower_half_arcs(n, start, t);
    let state = ArcState::from_arcs(n, arcs).expect("path arcs in range");
    let state = if mirrored { state.relabeled(|v| n - 1 - v) } else { state };
    Ok(PropagatedState { state, regime })
}

/// Arcs for a start vertex in the lower half (`start <= n-1-start`) and
/// `0 <= t <= n-1`.
fn lower_half_arcs<S: Scalar>(
    n: usize,
    start: usize,
    t: usize,
) -> (Vec<(usize, usize, S)>, Option<PathRegime>) {
    debug_assert!(start <= n - 1 - start && t < n);
    if start == 0 {
        // Single arc sweeping up the path; at t = 0 it is psi_0 itself.
        let arc = if t == 0 { (0, 1) } else { (t, t - 1) };
        return (vec![(arc.0, arc.1, S::one())], None);
    }
    let half: S = inv_sqrt_degree(2);
    let (upper, lower, regime) = if t <= start {
        ((start + t, start + t - 1), (start - t, start - t + 1), PathRegime::Early)
    } else if t <= n - 1 - start {
        ((start + t, start + t - 1), (t - start, t - start - 1), PathRegime::Middle)
    } else {
        let b = 2 * n - t - start - 2;
        ((b, b + 1), (t - start, t - start - 1), PathRegime::Late)
    };
    (vec![(upper.0, upper.1, half), (lower.0, lower.1, half)], Some(regime))
}

/// One row of a probability profile.
///
/// `amplitude` is the fidelity `<psi_k | state>`; `probability` is the
/// chance of finding the walker at `k`, i.e. the squared amplitude summed
/// over the arcs leaving `k`. The two readings differ off basis states and
/// both are emitted.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow<S: Scalar> {
    pub time: usize,
    pub vertex: usize,
    pub amplitude: S,
    pub probability: S,
}

/// Table of per-vertex arrival data over `t = 0..=t_max`, sorted by
/// `(time, vertex)`. Vertices carrying nothing at a time step are omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityProfile<S: Scalar> {
    pub start: usize,
    pub rows: Vec<ProfileRow<S>>,
}

impl<S: Scalar> ProbabilityProfile<S> {
    /// CSV with header `t,k,amplitude,probability`, values at 12
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,k,amplitude,probability\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.time,
                row.vertex,
                format_amplitude(row.amplitude.to_f64().unwrap()),
                format_amplitude(row.probability.to_f64().unwrap()),
            ));
        }
        out
    }
}

// Rows below this on both readings are dropped rather than printed as noise.
const ROW_CUTOFF: f64 = 1e-12;

fn profile_rows<S: Scalar>(
    walk: &WalkStep<'_, S>,
    state: &ArcState<S>,
    time: usize,
    rows: &mut Vec<ProfileRow<S>>,
) {
    let cutoff = S::from_f64(ROW_CUTOFF).expect("cutoff fits in scalar");
    let fidelities = walk.fidelities(state);
    let masses = state.position_distribution();
    for (vertex, (&amplitude, &probability)) in fidelities.iter().zip(masses.iter()).enumerate() {
        if amplitude.abs() > cutoff || probability > cutoff {
            rows.push(ProfileRow { time, vertex, amplitude, probability });
        }
    }
}

/// Profile of a path walker from the closed-form states.
pub fn path_probability_profile<S: Scalar>(
    n: usize,
    start: usize,
    t_max: usize,
) -> Result<ProbabilityProfile<S>, AnalyticError> {
    if n < 2 {
        return Err(AnalyticError::PathTooSmall(n));
    }
    if start >= n {
        return Err(AnalyticError::InvalidVertex { vertex: start, n });
    }
    if t_max > n - 1 {
        return Err(AnalyticError::HorizonOutOfRange { t_max, limit: n - 1 });
    }
    let graph = Graph::path(n).expect("n >= 2");
    let walk = WalkStep::new(&graph).expect("paths are connected");
    let mut rows = Vec::new();
    for t in 0..=t_max {
        let predicted = path_state::<S>(n, start, t)?;
        profile_rows(&walk, &predicted.state, t, &mut rows);
    }
    Ok(ProbabilityProfile { start, rows })
}

/// Profile of any connected graph computed by stepwise evolution.
pub fn evolution_probability_profile<S: Scalar>(
    g: &Graph,
    start: usize,
    t_max: usize,
) -> Result<ProbabilityProfile<S>, StateError> {
    let walk = WalkStep::new(g)?;
    let mut state = walk.psi(start)?;
    let mut rows = Vec::new();
    profile_rows(&walk, &state, 0, &mut rows);
    for t in 1..=t_max {
        state = walk.apply(&state);
        profile_rows(&walk, &state, t, &mut rows);
    }
    Ok(ProbabilityProfile { start, rows })
}
