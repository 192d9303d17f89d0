//! Undirected simple graphs: validation, standard generators, products,
//! random-walk transition probabilities, and the edge-list text format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::scalar::Scalar;

/// Validation and parse errors for graph construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph needs at least {min} vertices, got {got}")]
    TooFewVertices { got: usize, min: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("hypercube dimension must be at least 1")]
    BadDimension,
    #[error("edge list line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Which graph product to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    /// Adjacent iff adjacent in both coordinates (categorical product).
    Tensor,
    /// Adjacent iff equal in one coordinate and adjacent in the other.
    Cartesian,
}

impl ProductKind {
    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Tensor => "tensor",
            ProductKind::Cartesian => "cartesian",
        }
    }
}

/// An undirected simple graph on vertices `0..n`.
///
/// Stored as sorted adjacency lists; immutable after construction, so it can
/// be shared freely across threads. A `Graph` is not necessarily connected
/// (products of connected graphs may not be); walk construction rejects
/// disconnected graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a validated graph from an explicit edge list.
    ///
    /// Duplicate pairs collapse and `(j, k)` is the same edge as `(k, j)`.
    /// Self-loops, out-of-range endpoints, and disconnected inputs are
    /// rejected with distinct errors.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let g = Self::from_edges_unchecked_connectivity(n, edges)?;
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Same as [`Graph::from_edge_list`] but allows a disconnected result.
    /// Products use this; callers inspect connectivity themselves.
    fn from_edges_unchecked_connectivity(
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewVertices { got: n, min: 2 });
        }
        let mut set = BTreeSet::new();
        for &(j, k) in edges {
            if j >= n {
                return Err(GraphError::VertexOutOfRange { vertex: j, n });
            }
            if k >= n {
                return Err(GraphError::VertexOutOfRange { vertex: k, n });
            }
            if j == k {
                return Err(GraphError::SelfLoop(j));
            }
            set.insert((j.min(k), j.max(k)));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(j, k) in &set {
            adjacency[j].push(k);
            adjacency[k].push(j);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { n, adjacency })
    }

    /// Path graph: edges `(j, j+1)` for `j = 0..n-1`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewVertices { got: n, min: 2 });
        }
        let edges: Vec<_> = (0..n - 1).map(|j| (j, j + 1)).collect();
        Self::from_edge_list(n, &edges)
    }

    /// Cycle graph: `j` and `k` adjacent iff they differ by 1 modulo `n`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices { got: n, min: 3 });
        }
        let edges: Vec<_> = (0..n).map(|j| (j, (j + 1) % n)).collect();
        Self::from_edge_list(n, &edges)
    }

    /// Hypercube of dimension `d`: `2^d` vertices, adjacency at Hamming
    /// distance 1 between binary labels.
    pub fn hypercube(d: usize) -> Result<Self, GraphError> {
        if d < 1 {
            return Err(GraphError::BadDimension);
        }
        let n = 1usize << d;
        let mut edges = Vec::with_capacity(d * n / 2);
        for v in 0..n {
            for bit in 0..d {
                let w = v ^ (1 << bit);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Self::from_edge_list(n, &edges)
    }

    /// Star graph with center vertex 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewVertices { got: n, min: 2 });
        }
        let edges: Vec<_> = (1..n).map(|j| (0, j)).collect();
        Self::from_edge_list(n, &edges)
    }

    /// Graph product. Vertex `(a, b)` is flattened to `a * g2.n() + b`.
    ///
    /// The result can be disconnected (the tensor product of two connected
    /// bipartite graphs always is); that is surfaced when a walk is
    /// constructed on it, not here, so the product remains inspectable.
    pub fn product(g1: &Graph, g2: &Graph, kind: ProductKind) -> Self {
        let n1 = g1.n();
        let n2 = g2.n();
        let n = n1 * n2;
        let flat = |a: usize, b: usize| a * n2 + b;
        let mut edges = Vec::new();
        match kind {
            ProductKind::Tensor => {
                for a in 0..n1 {
                    for &a2 in g1.neighbors(a) {
                        for b in 0..n2 {
                            for &b2 in g2.neighbors(b) {
                                let u = flat(a, b);
                                let v = flat(a2, b2);
                                if u < v {
                                    edges.push((u, v));
                                }
                            }
                        }
                    }
                }
            }
            ProductKind::Cartesian => {
                for a in 0..n1 {
                    for b in 0..n2 {
                        for &b2 in g2.neighbors(b) {
                            if b < b2 {
                                edges.push((flat(a, b), flat(a, b2)));
                            }
                        }
                        for &a2 in g1.neighbors(a) {
                            if a < a2 {
                                edges.push((flat(a, b), flat(a2, b)));
                            }
                        }
                    }
                }
            }
        }
        Self::from_edges_unchecked_connectivity(n, &edges)
            .expect("product of valid graphs is structurally valid")
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbors of `j`.
    ///
    /// # Panics
    /// Panics if `j` is out of range.
    pub fn neighbors(&self, j: usize) -> &[usize] {
        &self.adjacency[j]
    }

    /// Out-degree of `j` in the arc orientation (= undirected degree).
    pub fn out_degree(&self, j: usize) -> usize {
        self.adjacency[j].len()
    }

    pub fn is_adjacent(&self, j: usize, k: usize) -> bool {
        self.adjacency[j].binary_search(&k).is_ok()
    }

    /// Undirected edges as `(j, k)` pairs with `j < k`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(j, ns)| ns.iter().filter(move |&&k| k > j).map(move |&k| (j, k)))
    }

    /// Random-walk transition probability `p(j, k)`: exactly `1/deg(j)` on
    /// edges and `0` off them, so every row sums to exactly 1.
    ///
    /// # Panics
    /// Panics if `j` or `k` is out of range.
    pub fn transition_probability(&self, j: usize, k: usize) -> Ratio<u64> {
        assert!(j < self.n, "vertex {j} out of range for {} vertices", self.n);
        assert!(k < self.n, "vertex {k} out of range for {} vertices", self.n);
        if self.is_adjacent(j, k) {
            Ratio::new(1, self.out_degree(j) as u64)
        } else {
            Ratio::from_integer(0)
        }
    }

    /// Floating view of [`Graph::transition_probability`].
    pub fn transition_probability_float<S: Scalar>(&self, j: usize, k: usize) -> S {
        let p = self.transition_probability(j, k);
        if *p.numer() == 0 {
            S::zero()
        } else {
            S::one() / S::from_u64(*p.denom()).expect("degree fits in scalar")
        }
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_reach(0).iter().all(|&seen| seen)
    }

    /// Connected components as standalone graphs, each paired with the map
    /// from its dense labels back to the original vertex labels. Components
    /// are ordered by their smallest original vertex.
    pub fn connected_components(&self) -> Vec<(Graph, Vec<usize>)> {
        let mut assigned = vec![false; self.n];
        let mut components = Vec::new();
        for root in 0..self.n {
            if assigned[root] {
                continue;
            }
            let reach = self.bfs_reach(root);
            let members: Vec<usize> = (0..self.n).filter(|&v| reach[v] && !assigned[v]).collect();
            for &v in &members {
                assigned[v] = true;
            }
            if members.len() < 2 {
                // An isolated vertex cannot host a walk; skip it.
                continue;
            }
            let index_of = |v: usize| members.binary_search(&v).expect("member lookup");
            let edges: Vec<_> = members
                .iter()
                .flat_map(|&v| {
                    self.neighbors(v)
                        .iter()
                        .filter(move |&&w| w > v)
                        .map(move |&w| (index_of(v), index_of(w)))
                })
                .collect();
            let sub = Graph::from_edge_list(members.len(), &edges)
                .expect("component is connected by construction");
            components.push((sub, members));
        }
        components
    }

    fn bfs_reach(&self, root: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        seen[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// True iff the graph is a path whose vertices are labeled in order
    /// `0 - 1 - ... - (n-1)`, which is what the closed-form propagators
    /// assume.
    pub fn is_canonical_path(&self) -> bool {
        self.edge_count() == self.n - 1 && (0..self.n - 1).all(|j| self.is_adjacent(j, j + 1))
    }

    /// Parses the edge-list text format: comment lines start with `#`, the
    /// first non-comment line is `n <count>`, and every following line is a
    /// `j k` pair. The parsed graph must be connected.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match n {
                None => {
                    if tokens.next() != Some("n") {
                        return Err(GraphError::Parse {
                            line: idx + 1,
                            reason: "expected header 'n <count>'".into(),
                        });
                    }
                    let count = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| GraphError::Parse {
                            line: idx + 1,
                            reason: "expected header 'n <count>'".into(),
                        })?;
                    if tokens.next().is_some() {
                        return Err(GraphError::Parse {
                            line: idx + 1,
                            reason: "trailing tokens after header".into(),
                        });
                    }
                    n = Some(count);
                }
                Some(_) => {
                    let parse = |t: Option<&str>| {
                        t.and_then(|t| t.parse::<usize>().ok()).ok_or_else(|| GraphError::Parse {
                            line: idx + 1,
                            reason: format!("expected 'j k' pair, got '{line}'"),
                        })
                    };
                    let j = parse(tokens.next())?;
                    let k = parse(tokens.next())?;
                    if tokens.next().is_some() {
                        return Err(GraphError::Parse {
                            line: idx + 1,
                            reason: "trailing tokens after edge".into(),
                        });
                    }
                    edges.push((j, k));
                }
            }
        }
        let n = n.ok_or(GraphError::Parse { line: 0, reason: "missing 'n <count>' header".into() })?;
        Self::from_edge_list(n, &edges)
    }

    /// Canonical edge-list serialization: header then edges ascending, one
    /// per line. `parse_edge_list` round-trips it exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n).unwrap();
        for (j, k) in self.edges() {
            writeln!(out, "{j} {k}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smallest_path_from_edge_list() {
        let g = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.out_degree(0), 1);
        assert_eq!(g.out_degree(1), 1);
    }

    #[test]
    fn square_cycle_from_edge_list() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g, Graph::cycle(4).unwrap());
        assert!((0..4).all(|j| g.out_degree(j) == 2));
    }

    #[test]
    fn disconnected_edge_list_rejected() {
        assert_eq!(Graph::from_edge_list(3, &[(0, 1)]), Err(GraphError::Disconnected));
    }

    #[test]
    fn invalid_edge_lists_rejected_distinctly() {
        assert_eq!(Graph::from_edge_list(3, &[(0, 0), (0, 1), (1, 2)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 3 })
        );
        assert_eq!(
            Graph::from_edge_list(1, &[]),
            Err(GraphError::TooFewVertices { got: 1, min: 2 })
        );
    }

    #[test]
    fn duplicate_and_reversed_pairs_collapse() {
        let g = Graph::from_edge_list(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn path_generator_degree_sequences() {
        assert_eq!(Graph::path(2).unwrap().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let p6 = Graph::path(6).unwrap();
        assert_eq!(p6.edge_count(), 5);
        let degrees: Vec<_> = (0..6).map(|j| p6.out_degree(j)).collect();
        assert_eq!(degrees, vec![1, 2, 2, 2, 2, 1]);
        let p3 = Graph::path(3).unwrap();
        assert_eq!((0..3).map(|j| p3.out_degree(j)).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert!(Graph::path(1).is_err());
    }

    #[test]
    fn cycle_generator_is_two_regular() {
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(c6.edge_count(), 6);
        assert!((0..6).all(|j| c6.out_degree(j) == 2));
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn path_and_cycle_degrees_hold_at_scale() {
        for n in [2usize, 3, 10, 137, 1000] {
            let p = Graph::path(n).unwrap();
            for j in 0..n {
                let expected = if j == 0 || j == n - 1 { 1 } else { 2 };
                assert_eq!(p.out_degree(j), expected);
            }
            if n >= 3 {
                let c = Graph::cycle(n).unwrap();
                assert!((0..n).all(|j| c.out_degree(j) == 2));
            }
        }
    }

    #[test]
    fn hypercube_sizes() {
        let q2 = Graph::hypercube(2).unwrap();
        // Q_2 is a 4-cycle: connected and 2-regular on 4 vertices.
        assert_eq!(q2.n(), 4);
        assert!(q2.is_connected());
        assert!((0..4).all(|j| q2.out_degree(j) == 2));

        let q3 = Graph::hypercube(3).unwrap();
        assert_eq!(q3.n(), 8);
        assert_eq!(q3.edge_count(), 12);

        assert_eq!(Graph::hypercube(1).unwrap(), Graph::path(2).unwrap());
        assert!(Graph::hypercube(0).is_err());

        for d in 1..=10 {
            let q = Graph::hypercube(d).unwrap();
            assert_eq!(q.edge_count(), d * (1 << (d - 1)));
        }
    }

    #[test]
    fn star_generator_degrees() {
        assert_eq!(Graph::star(2).unwrap(), Graph::path(2).unwrap());
        let s4 = Graph::star(4).unwrap();
        assert_eq!((0..4).map(|j| s4.out_degree(j)).collect::<Vec<_>>(), vec![3, 1, 1, 1]);
        assert_eq!(Graph::star(5).unwrap().edge_count(), 4);
    }

    #[test]
    fn cartesian_product_of_two_edges_is_square() {
        let p2 = Graph::path(2).unwrap();
        let g = Graph::product(&p2, &p2, ProductKind::Cartesian);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(g.is_connected());
    }

    #[test]
    fn tensor_product_of_two_edges_is_disconnected() {
        let p2 = Graph::path(2).unwrap();
        let g = Graph::product(&p2, &p2, ProductKind::Tensor);
        // Two disjoint edges: (0,0)-(1,1) and (0,1)-(1,0).
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
        assert!(!g.is_connected());
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].1, vec![0, 3]);
        assert_eq!(comps[1].1, vec![1, 2]);
    }

    #[test]
    fn cartesian_product_edge_count_formula() {
        let p2 = Graph::path(2).unwrap();
        let p3 = Graph::path(3).unwrap();
        let g = Graph::product(&p2, &p3, ProductKind::Cartesian);
        assert_eq!(g.n(), 6);
        let (n1, e1, n2, e2) = (2, 1, 3, 2);
        assert_eq!(g.edge_count(), n1 * e2 + n2 * e1);
    }

    #[test]
    fn transition_probabilities_on_a_path() {
        let p6 = Graph::path(6).unwrap();
        assert_eq!(p6.transition_probability(0, 1), Ratio::from_integer(1));
        assert_eq!(p6.transition_probability(2, 3), Ratio::new(1, 2));
        assert_eq!(p6.transition_probability(0, 3), Ratio::from_integer(0));
        assert_eq!(p6.transition_probability_float::<f64>(2, 1), 0.5);
    }

    #[test]
    fn transition_rows_sum_to_exactly_one() {
        let graphs = vec![
            Graph::path(7).unwrap(),
            Graph::cycle(5).unwrap(),
            Graph::star(9).unwrap(),
            Graph::hypercube(4).unwrap(),
            Graph::path(1000).unwrap(),
        ];
        for g in graphs {
            for j in 0..g.n() {
                let total: Ratio<u64> =
                    (0..g.n()).map(|k| g.transition_probability(j, k)).sum();
                assert_eq!(total, Ratio::from_integer(1));
                for k in 0..g.n() {
                    assert_eq!(*g.transition_probability(j, k).numer() > 0, g.is_adjacent(j, k));
                }
            }
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(
            Graph::parse_edge_list("0 1\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("n 3\n0 one\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(Graph::parse_edge_list("# only comments\n"), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let g = Graph::parse_edge_list("# a path\n\nn 3\n0 1\n# middle comment\n1 2\n").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
    }

    #[test]
    fn canonical_path_detection() {
        assert!(Graph::path(6).unwrap().is_canonical_path());
        assert!(!Graph::cycle(6).unwrap().is_canonical_path());
        // A path with scrambled labels is not canonical.
        let scrambled = Graph::from_edge_list(3, &[(1, 0), (0, 2)]).unwrap();
        assert!(!scrambled.is_canonical_path());
    }

    fn arbitrary_connected_graph() -> impl Strategy<Value = Graph> {
        (2usize..10, any::<u64>()).prop_map(|(n, seed)| {
            // Random spanning tree plus a few extra edges, seeded for shrinking.
            let mut x = seed | 1;
            let mut rng = move || {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                x
            };
            let mut edges = Vec::new();
            for v in 1..n {
                edges.push((v, (rng() as usize) % v));
            }
            for _ in 0..n / 2 {
                let a = (rng() as usize) % n;
                let b = (rng() as usize) % n;
                if a != b {
                    edges.push((a, b));
                }
            }
            Graph::from_edge_list(n, &edges).expect("spanning tree keeps it connected")
        })
    }

    proptest! {
        #[test]
        fn edge_list_round_trips(g in arbitrary_connected_graph()) {
            let text = g.to_edge_list();
            let back = Graph::parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_edge_list(), text);
        }
    }
}
