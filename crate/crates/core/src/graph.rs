//! Hadamard graphs, Cayley graphs of 2-groups, and the dense adjacency
//! representation used as a brute-force oracle.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{ensure_len, ensure_size, Error, Result};
use crate::group::{Convention, ConnectionSet, GroupElement, Subgroup};

/// Largest Hadamard order accepted by the dense constructors.
pub const MAX_DENSE_HADAMARD_N: usize = 12;
/// Largest Hadamard order whose connection set is materialised.
pub const MAX_CONNECTION_N: usize = 24;
/// Largest group dimension accepted by [`build_cayley`].
pub const MAX_DENSE_GROUP_DIM: usize = 12;

/// Symmetric, irreflexive adjacency stored as packed bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGraph {
    size: usize,
    stride: usize,
    rows: Vec<u64>,
    labels: Option<Vec<GroupElement>>,
    convention: Convention,
}

impl DenseGraph {
    /// Edgeless graph on `size` vertices.
    pub fn empty(size: usize) -> Self {
        let stride = size.div_ceil(64).max(1);
        Self {
            size,
            stride,
            rows: vec![0; stride * size],
            labels: None,
            convention: Convention::default(),
        }
    }

    pub fn complete(size: usize) -> Self {
        let mut g = Self::empty(size);
        for u in 0..size {
            for v in u + 1..size {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(size: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(size);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from a full boolean matrix, which must be symmetric with
    /// an all-false diagonal.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self> {
        let size = matrix.len();
        let mut g = Self::empty(size);
        for (u, row) in matrix.iter().enumerate() {
            ensure_len(size, row.len())?;
            if row[u] {
                return Err(Error::Invariant(format!("self loop at vertex {u}")));
            }
            for (v, &adj) in row.iter().enumerate() {
                if adj != matrix[v][u] {
                    return Err(Error::Invariant(format!(
                        "adjacency not symmetric at ({u}, {v})"
                    )));
                }
                if adj && u < v {
                    g.set_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[GroupElement]> {
        self.labels.as_deref()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_labels(mut self, labels: Vec<GroupElement>) -> Result<Self> {
        ensure_len(self.size, labels.len())?;
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    fn set_bit(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize) {
        self.set_bit(u, v);
        self.set_bit(v, u);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.size || v >= self.size {
            return Err(Error::Index(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.size
            )));
        }
        if u == v {
            return Err(Error::Invariant(format!("self loop at vertex {u}")));
        }
        self.set_edge(u, v);
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.rows[u * self.stride + v / 64] >> (v % 64)) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.stride..(u + 1) * self.stride]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(block, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(block * 64 + bit)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.size).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.size == 0 { 0 } else { self.degree(0) };
        (0..self.size).all(|u| self.degree(u) == d).then_some(d)
    }

    /// True when both graphs have the same adjacency under the identity
    /// vertex map. Labels are ignored.
    pub fn same_adjacency(&self, other: &DenseGraph) -> bool {
        self.size == other.size && self.rows == other.rows
    }

    /// Adjacency as a dense `f64` matrix.
    pub fn adjacency_matrix(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.size, self.size, |i, j| {
            if self.has_edge(i, j) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Index of the vertex carrying `label`, if labeled.
    pub fn index_of(&self, label: &GroupElement) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Relabels to another sign convention. Adjacency is untouched.
    pub fn to_convention(&self, to: Convention) -> Result<DenseGraph> {
        if self.labels.is_none() {
            return Err(Error::Parameter(
                "convention conversion needs a labeled graph".into(),
            ));
        }
        let mut g = self.clone();
        g.convention = to;
        Ok(g)
    }

    /// One `u v` line per edge, `u < v`, ascending.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list format. Vertex count is taken from `size`, or
    /// from the largest index seen when `None`.
    pub fn parse_edge_list(text: &str, size: Option<usize>) -> Result<DenseGraph> {
        let mut edges = Vec::new();
        let mut max_index = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let mut parts = line.split_whitespace();
            let mut next = || -> Result<usize> {
                parts
                    .next()
                    .ok_or_else(|| parse_err(format!("expected two vertex indices in {line:?}")))?
                    .parse::<usize>()
                    .map_err(|e| parse_err(e.to_string()))
            };
            let (u, v) = (next()?, next()?);
            if parts.next().is_some() {
                return Err(parse_err(format!("trailing tokens in {line:?}")));
            }
            max_index = Some(max_index.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }
        let size = size.unwrap_or(max_index.map_or(0, |m| m + 1));
        DenseGraph::from_edges(size, edges)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        if let Some(labels) = &self.labels {
            for (i, l) in labels.iter().enumerate() {
                let _ = writeln!(out, "  {i} [label=\"{}\"];", self.label_text(l));
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    fn label_text(&self, l: &GroupElement) -> String {
        match self.convention {
            Convention::ZeroOne => l.entries(Convention::ZeroOne).iter().map(|e| e.to_string()).collect(),
            Convention::PlusMinusOne => l
                .entries(Convention::PlusMinusOne)
                .iter()
                .map(|&e| if e > 0 { '+' } else { '-' })
                .collect(),
        }
    }

    /// `{"n": size, "edges": [[u, v], ...], "labels": [[entries], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct GraphJson {
            n: usize,
            edges: Vec<[usize; 2]>,
            labels: Option<Vec<Vec<i8>>>,
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| ls.iter().map(|l| l.entries(self.convention)).collect());
        serde_json::to_value(GraphJson {
            n: self.size,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            labels,
        })
        .expect("graph serializes")
    }
}

/// Number of connected components, by breadth-first search.
pub fn count_components(g: &DenseGraph) -> usize {
    let mut seen = vec![false; g.size()];
    let mut queue = VecDeque::new();
    let mut components = 0;
    for start in 0..g.size() {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    components
}

/// Which part of the Hadamard graph to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    /// All `2^N` words.
    Full,
    /// The `2^{N-1}` even-popcount words (component of the all-ones vector).
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HadamardParams {
    pub n: usize,
    pub component: Component,
    pub convention: Convention,
}

impl HadamardParams {
    pub fn new(n: usize, component: Component) -> Self {
        Self {
            n,
            component,
            convention: Convention::PlusMinusOne,
        }
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }
}

fn check_even_order(n: usize) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Parameter(format!(
            "Hadamard order must be a positive even integer, got {n}"
        )));
    }
    Ok(())
}

/// Rejects orders that are not multiples of 4, as bound and strategy
/// operations require.
pub fn require_multiple_of_four(n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::Parameter(format!(
            "Hadamard order must be a positive multiple of 4, got {n}"
        )));
    }
    Ok(())
}

/// Builds the Hadamard graph: words adjacent iff they differ in exactly `N/2`
/// positions. Vertices are in ascending word order.
pub fn build_hadamard(params: HadamardParams) -> Result<DenseGraph> {
    let n = params.n;
    check_even_order(n)?;
    ensure_size("Hadamard order for dense construction", n, MAX_DENSE_HADAMARD_N)?;
    let group = match params.component {
        Component::Full => Subgroup::Full { len: n },
        Component::Even => Subgroup::EvenParity { len: n },
    };
    let labels: Vec<GroupElement> = group.elements().collect();
    let half = (n / 2) as u32;
    let mut g = DenseGraph::empty(labels.len());
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate().skip(i + 1) {
            if (a.bits() ^ b.bits()).count_ones() == half {
                g.set_edge(i, j);
            }
        }
    }
    g.convention = params.convention;
    g.with_labels(labels)
}

/// All words of weight exactly `N/2`: the neighbours of the all-ones vector.
pub fn hadamard_connection_set(n: usize) -> Result<ConnectionSet> {
    check_even_order(n)?;
    ensure_size("Hadamard order for connection set", n, MAX_CONNECTION_N)?;
    let half = n / 2;
    let mut words = Vec::new();
    // Gosper's hack over weight-`half` words of length n
    let mut w: u64 = (1u64 << half) - 1;
    let limit = 1u64 << n;
    while w < limit {
        words.push(w);
        let c = w & w.wrapping_neg();
        let r = w + c;
        w = (((r ^ w) >> 2) / c) | r;
    }
    ConnectionSet::from_bits(n, words)
}

/// How a Cayley graph's vertices and connection words are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// Group `Z_2^k`, words of length `k`.
    Coordinates,
    /// Even-parity subgroup of `Z_2^{k+1}`, words of length `k + 1`.
    EvenParity,
}

/// A Cayley graph of an elementary abelian 2-group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraphSpec {
    group_dim: usize,
    connection: ConnectionSet,
    ambient: Ambient,
}

impl CayleyGraphSpec {
    pub fn new(group_dim: usize, connection: ConnectionSet, ambient: Ambient) -> Result<Self> {
        let word_len = match ambient {
            Ambient::Coordinates => group_dim,
            Ambient::EvenParity => group_dim + 1,
        };
        ensure_len(word_len, connection.word_len())?;
        if ambient == Ambient::EvenParity {
            if let Some(bad) = connection.elements().iter().find(|e| !e.is_even()) {
                return Err(Error::Invariant(format!(
                    "connection element {bad} is not in the even-parity subgroup"
                )));
            }
        }
        if !connection.is_inverse_closed() {
            return Err(Error::Invariant("connection set not inverse-closed".into()));
        }
        Ok(Self {
            group_dim,
            connection,
            ambient,
        })
    }

    /// The even-parity component of `H_N` as a Cayley graph; `N` must be a
    /// multiple of 4 so that all connection words are even.
    pub fn hadamard_even(n: usize) -> Result<Self> {
        require_multiple_of_four(n)?;
        Self::new(n - 1, hadamard_connection_set(n)?, Ambient::EvenParity)
    }

    /// The full `H_N` on all `2^N` words.
    pub fn hadamard_full(n: usize) -> Result<Self> {
        Self::new(n, hadamard_connection_set(n)?, Ambient::Coordinates)
    }

    pub fn group_dim(&self) -> usize {
        self.group_dim
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn group(&self) -> Subgroup {
        match self.ambient {
            Ambient::Coordinates => Subgroup::Full {
                len: self.group_dim,
            },
            Ambient::EvenParity => Subgroup::EvenParity {
                len: self.group_dim + 1,
            },
        }
    }

    /// Vertex labels in canonical (ascending word) order.
    pub fn vertices(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let group = self.group();
        let v: Vec<GroupElement> = group.elements().collect();
        v.into_iter()
    }

    /// Maps a word to its `group_dim`-bit coordinate. Even-parity words drop
    /// bit 0, which is determined by the parity of the rest; this map is a
    /// group isomorphism and preserves the ascending order.
    pub fn coordinate(&self, e: &GroupElement) -> u64 {
        match self.ambient {
            Ambient::Coordinates => e.bits(),
            Ambient::EvenParity => e.bits() >> 1,
        }
    }

    /// Connection set in `group_dim`-bit coordinates.
    pub fn coordinate_connection(&self) -> Vec<u64> {
        self.connection
            .elements()
            .iter()
            .map(|e| self.coordinate(e))
            .collect()
    }

    /// Same graph re-expressed in coordinates.
    pub fn to_coordinates(&self) -> Result<CayleyGraphSpec> {
        if self.ambient == Ambient::Coordinates {
            return Ok(self.clone());
        }
        let conn = ConnectionSet::from_bits(self.group_dim.max(1), self.coordinate_connection())?;
        CayleyGraphSpec::new(self.group_dim, conn, Ambient::Coordinates)
    }

    pub fn degree(&self) -> usize {
        self.connection.len()
    }
}

/// Dense Cayley graph: `u ~ v` iff `u ^ v` lies in the connection set.
pub fn build_cayley(spec: &CayleyGraphSpec) -> Result<DenseGraph> {
    ensure_size("group dimension for dense Cayley graph", spec.group_dim, MAX_DENSE_GROUP_DIM)?;
    if spec.connection.elements().iter().any(|c| c.is_identity()) {
        return Err(Error::Invariant("connection set contains the identity".into()));
    }
    let size = 1usize << spec.group_dim;
    let conn = spec.coordinate_connection();
    let mut g = DenseGraph::empty(size);
    // coordinate order coincides with ascending word order
    for u in 0..size {
        for &c in &conn {
            let v = u ^ c as usize;
            g.set_bit(u, v);
        }
    }
    let labels = spec.vertices().collect();
    g.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::pair_generator;

    fn pm(entries: &[i8]) -> GroupElement {
        GroupElement::from_entries(entries, Convention::PlusMinusOne).unwrap()
    }

    #[test]
    fn h4_full_is_six_regular_with_two_components() {
        let g = build_hadamard(HadamardParams::new(4, Component::Full)).unwrap();
        assert_eq!(g.size(), 16);
        assert_eq!(g.regular_degree(), Some(6));
        assert_eq!(count_components(&g), 2);
    }

    #[test]
    fn h4_even_component_misses_only_complement() {
        let g = build_hadamard(HadamardParams::new(4, Component::Even)).unwrap();
        assert_eq!(g.size(), 8);
        assert_eq!(g.regular_degree(), Some(6));
        assert_eq!(count_components(&g), 1);
        let labels = g.labels().unwrap();
        for u in 0..8 {
            for v in 0..8 {
                if u == v {
                    continue;
                }
                let complement = labels[u].bits() ^ labels[v].bits() == 0b1111;
                assert_eq!(g.has_edge(u, v), !complement);
            }
        }
    }

    #[test]
    fn orthogonal_vectors_are_adjacent() {
        let g = build_hadamard(HadamardParams::new(4, Component::Full)).unwrap();
        let x = g.index_of(&pm(&[1, 1, 1, 1])).unwrap();
        let y = g.index_of(&pm(&[1, 1, -1, -1])).unwrap();
        let neg = g.index_of(&pm(&[-1, -1, -1, -1])).unwrap();
        assert!(g.has_edge(x, y));
        assert!(!g.has_edge(x, neg));
    }

    #[test]
    fn hadamard_parameter_errors() {
        assert!(matches!(
            build_hadamard(HadamardParams::new(5, Component::Full)),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            build_hadamard(HadamardParams::new(14, Component::Even)),
            Err(Error::Size { .. })
        ));
        // N = 6 is a valid graph, just not one the theorems cover
        let g = build_hadamard(HadamardParams::new(6, Component::Full)).unwrap();
        assert_eq!(g.regular_degree(), Some(20));
        assert!(CayleyGraphSpec::hadamard_even(6).is_err());
    }

    #[test]
    fn connection_set_sizes() {
        let c4 = hadamard_connection_set(4).unwrap();
        assert_eq!(c4.len(), 6);
        assert!(c4.elements().iter().all(|e| e.weight() == 2));
        // binom(8,4) by enumeration
        let brute = (0u64..256).filter(|w| w.count_ones() == 4).count();
        assert_eq!(hadamard_connection_set(8).unwrap().len(), brute);
        assert_eq!(brute, 70);
        assert_eq!(hadamard_connection_set(12).unwrap().len(), 924);
        assert!(hadamard_connection_set(12).unwrap().elements().iter().all(|e| e.is_even()));
        assert!(matches!(hadamard_connection_set(7), Err(Error::Parameter(_))));
        assert!(matches!(hadamard_connection_set(26), Err(Error::Size { .. })));
    }

    #[test]
    fn cayley_matches_hadamard_component() {
        for n in [4, 8] {
            let spec = CayleyGraphSpec::hadamard_even(n).unwrap();
            let cayley = build_cayley(&spec).unwrap();
            let direct = build_hadamard(HadamardParams::new(n, Component::Even)).unwrap();
            assert!(cayley.same_adjacency(&direct));
            assert_eq!(cayley.labels(), direct.labels());
        }
    }

    #[test]
    fn small_cayley_graphs() {
        let c = ConnectionSet::from_bits(2, [0b01, 0b10]).unwrap();
        let cycle = build_cayley(&CayleyGraphSpec::new(2, c, Ambient::Coordinates).unwrap()).unwrap();
        let expected = DenseGraph::from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap();
        assert!(cycle.same_adjacency(&expected));

        let all = ConnectionSet::from_bits(3, 1..8).unwrap();
        let k8 = build_cayley(&CayleyGraphSpec::new(3, all, Ambient::Coordinates).unwrap()).unwrap();
        assert!(k8.same_adjacency(&DenseGraph::complete(8)));
    }

    #[test]
    fn even_parity_spec_rejects_odd_words() {
        let odd = ConnectionSet::new(4, [GroupElement::new(0b0001, 4).unwrap()]).unwrap();
        assert!(matches!(
            CayleyGraphSpec::new(3, odd, Ambient::EvenParity),
            Err(Error::Invariant(_))
        ));
        let w = ConnectionSet::new(4, [pair_generator(4, 0, 1).unwrap()]).unwrap();
        assert!(CayleyGraphSpec::new(4, w, Ambient::EvenParity).is_err());
    }

    #[test]
    fn edgeless_graph_components() {
        assert_eq!(count_components(&DenseGraph::empty(5)), 5);
    }

    #[test]
    fn matrix_constructor_checks_symmetry() {
        let asym = vec![vec![false, true], vec![false, false]];
        assert!(matches!(DenseGraph::from_matrix(&asym), Err(Error::Invariant(_))));
        let sym = vec![vec![false, true], vec![true, false]];
        assert_eq!(DenseGraph::from_matrix(&sym).unwrap().edge_count(), 1);
    }

    #[test]
    fn exports() {
        let g = build_hadamard(HadamardParams::new(4, Component::Even)).unwrap();
        let el = g.to_edge_list();
        assert_eq!(el.lines().count(), 24);
        assert_eq!(el.lines().next(), Some("0 1"));
        let back = DenseGraph::parse_edge_list(&el, Some(8)).unwrap();
        assert!(back.same_adjacency(&g));
        let json = g.to_json();
        assert_eq!(json["n"], 8);
        assert_eq!(json["labels"][0], serde_json::json!([1, 1, 1, 1]));
        let zo = g.to_convention(Convention::ZeroOne).unwrap();
        assert!(zo.same_adjacency(&g));
        assert_eq!(zo.to_json()["labels"][1], serde_json::json!([0, 0, 1, 1]));
        let back = zo.to_convention(Convention::PlusMinusOne).unwrap();
        assert_eq!(back, g);
        assert!(g.to_dot().starts_with("graph G {\n  0 [label=\"++++\"];"));
        assert!(DenseGraph::empty(3).to_convention(Convention::ZeroOne).is_err());
        assert!(matches!(
            DenseGraph::parse_edge_list("0 1\n2\n", None),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
