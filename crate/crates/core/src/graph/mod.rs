//! Finite graphs as symmetric relations on `0..n`, loops allowed.
//!
//! Adjacency is kept as one bit row per vertex; a loop at `v` is the bit `v`
//! in row `v`. Everything downstream (quotients, products, the search cores)
//! works on these rows.

mod io;
pub mod subset;

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
pub use io::{GraphJson, ParsedDimacs};
pub use subset::SubsetLabel;

/// Opaque per-vertex annotation carried through constructions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Index(usize),
    Subset(SubsetLabel),
    /// A vertex `(layer, inner)` of a Kronecker cover, layer in {1, 2}.
    Layer { layer: u8, inner: Box<Label> },
    Pair(Box<Label>, Box<Label>),
    /// A two-element orbit of an involution, smaller representative first.
    Orbit(Box<Label>, Box<Label>),
    Text(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Index(i) => write!(f, "{i}"),
            Label::Subset(s) => write!(f, "{s}"),
            Label::Layer { layer, inner } => write!(f, "({layer},{inner})"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Orbit(a, b) => write!(f, "{{{a} | {b}}}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

/// Finite graph on vertices `0..n` with a symmetric adjacency relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    labels: Option<Vec<Label>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    order: n,
                });
            }
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Attaches labels; there must be exactly one per vertex.
    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::InvalidParameters(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&Label> {
        self.labels.as_ref().map(|l| &l[v])
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Neighborhood row of `v` (contains `v` iff there is a loop).
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    /// Degree with a loop counted once.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.adj[v].contains(v)
    }

    pub fn is_simple(&self) -> bool {
        (0..self.order()).all(|v| !self.has_loop(v))
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.has_loop(v)).collect()
    }

    /// Sorted edge list with `u <= v`; loops appear as `(v, v)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            for v in self.adj[u].ones() {
                if u <= v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Sorted degree multiset (a loop adds 1).
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Image of the graph under the vertex bijection `v -> perm[v]`, labels moved along.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order();
        check_bijection(perm, n)?;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        if let Some(labels) = &self.labels {
            let mut moved = labels.clone();
            for (v, l) in labels.iter().enumerate() {
                moved[perm[v]] = l.clone();
            }
            g.labels = Some(moved);
        }
        Ok(g)
    }

    /// Subgraph induced on `vertices`; the i-th smallest vertex becomes vertex i.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Self> {
        let n = self.order();
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: n,
            });
        }
        let mut index = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for w in self.adj[v].ones() {
                if index[w] != usize::MAX {
                    g.adj[i].insert(index[w]);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(keep.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(g)
    }

    /// Proper 2-coloring with parts {1, 2}, or `None` if the graph has a loop or
    /// an odd cycle. The smallest vertex of each component gets parity 1.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.order();
        let mut parity = vec![0u8; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if parity[root] != 0 {
                continue;
            }
            parity[root] = 1;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].ones() {
                    if parity[w] == 0 {
                        parity[w] = 3 - parity[u];
                        queue.push_back(w);
                    } else if parity[w] == parity[u] {
                        return None;
                    }
                }
            }
        }
        Some(parity)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.adj[u].ones() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Checks that `map` sends every edge of `self` onto an edge of `target`.
    pub fn check_homomorphism(&self, target: &Graph, map: &[usize]) -> Result<()> {
        if map.len() != self.order() {
            return Err(Error::InvalidParameters(format!(
                "map has {} entries for {} vertices",
                map.len(),
                self.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: target.order(),
            });
        }
        for (u, v) in self.edges() {
            if !target.adjacent(map[u], map[v]) {
                return Err(Error::NotHomomorphism(u, v));
            }
        }
        Ok(())
    }

    /// True iff `perm` is a bijection preserving adjacency and non-adjacency.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        self.is_isomorphism_to(self, perm)
    }

    pub fn is_isomorphism_to(&self, target: &Graph, map: &[usize]) -> bool {
        if self.order() != target.order() || check_bijection(map, self.order()).is_err() {
            return false;
        }
        let n = self.order();
        (0..n).all(|u| {
            self.adj[u].count_ones(..) == target.adj[map[u]].count_ones(..)
                && self.adj[u].ones().all(|v| target.adjacent(map[u], map[v]))
        })
    }
}

pub(crate) fn check_bijection(map: &[usize], n: usize) -> Result<()> {
    if map.len() != n {
        return Err(Error::NotPermutation(format!(
            "length {} for degree {n}",
            map.len()
        )));
    }
    let mut seen = FixedBitSet::with_capacity(n);
    for &x in map {
        if x >= n || seen.put(x) {
            return Err(Error::NotPermutation(format!("bad image {x}")));
        }
    }
    Ok(())
}

/// `K_n`: all distinct pairs adjacent, no loops.
pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
    }
    g
}

/// The cycle `C_n` on `0..n` (n >= 3).
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Kneser graph `K(n,k)`: k-subsets of `[n]` in colex order, adjacent iff disjoint.
///
/// `n = 2k` is accepted (a perfect matching).
pub fn kneser_graph(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidParameters(format!(
            "Kneser graph needs k >= 1 and n >= 2k, got n={n}, k={k}"
        )));
    }
    let subsets = subset::k_subsets(n, k)?;
    let mut g = Graph::empty(subsets.len());
    for (a, &s) in subsets.iter().enumerate() {
        for (b, &t) in subsets.iter().enumerate().skip(a + 1) {
            if s & t == 0 {
                g.adj[a].insert(b);
                g.adj[b].insert(a);
            }
        }
    }
    let labels = subsets
        .iter()
        .map(|&s| Label::Subset(SubsetLabel::from_mask(s)))
        .collect();
    g.with_labels(labels)
}

fn label_or_index(g: &Graph, v: usize) -> Label {
    g.label(v).cloned().unwrap_or(Label::Index(v))
}

/// Categorical product `G x H`; vertex `(a, b)` gets id `a * |H| + b`.
pub fn categorical_product(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.order(), h.order());
    let mut p = Graph::empty(ng * nh);
    for a in 0..ng {
        for a2 in g.adj[a].ones() {
            for b in 0..nh {
                for b2 in h.adj[b].ones() {
                    p.adj[a * nh + b].insert(a2 * nh + b2);
                }
            }
        }
    }
    if g.labels.is_some() || h.labels.is_some() {
        let mut labels = Vec::with_capacity(ng * nh);
        for a in 0..ng {
            for b in 0..nh {
                labels.push(Label::Pair(
                    Box::new(label_or_index(g, a)),
                    Box::new(label_or_index(h, b)),
                ));
            }
        }
        p.labels = Some(labels);
    }
    p
}

/// Side-by-side union; vertices of `h` are shifted by `|G|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let ng = g.order();
    let mut u = Graph::empty(ng + h.order());
    for (a, b) in g.edges() {
        u.adj[a].insert(b);
        u.adj[b].insert(a);
    }
    for (a, b) in h.edges() {
        u.adj[ng + a].insert(ng + b);
        u.adj[ng + b].insert(ng + a);
    }
    if g.labels.is_some() || h.labels.is_some() {
        let labels = (0..ng)
            .map(|v| label_or_index(g, v))
            .chain((0..h.order()).map(|v| label_or_index(h, v)))
            .collect();
        u.labels = Some(labels);
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs() {
        let k1 = complete_graph(1);
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        let k4 = complete_graph(4);
        assert_eq!((k4.order(), k4.edge_count()), (4, 6));
        assert_eq!(k4.degree_sequence(), vec![3; 4]);
        assert!(k4.is_simple());
    }

    #[test]
    fn kneser_1_is_complete_after_relabeling() {
        for n in 2..7 {
            let k = kneser_graph(n, 1).unwrap();
            // {j} has colex rank j - 1, so the relabeling is the identity on ids
            assert_eq!(k.clone().without_labels(), complete_graph(n));
            assert_eq!(k.label(0).unwrap().to_string(), "{1}");
        }
    }

    #[test]
    fn petersen_counts() {
        let p = kneser_graph(5, 2).unwrap();
        assert_eq!(p.order(), 10);
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.degree_sequence(), vec![3; 10]);
        // brute-force enumeration of disjoint 2-subset pairs of [5]
        let mut pairs = 0;
        for a in 0u32..32 {
            for b in 0u32..32 {
                if a < b && a.count_ones() == 2 && b.count_ones() == 2 && a & b == 0 {
                    pairs += 1;
                }
            }
        }
        assert_eq!(pairs, 15);
    }

    #[test]
    fn kneser_2k_is_perfect_matching() {
        let g = kneser_graph(4, 2).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree_sequence(), vec![1; 6]);
        for v in 0..6 {
            let w = g.neighbors(v).next().unwrap();
            let s = g.label(v).unwrap().to_string();
            let t = g.label(w).unwrap().to_string();
            assert_ne!(s, t);
        }
    }

    #[test]
    fn kneser_rejects_bad_parameters() {
        assert!(kneser_graph(5, 0).is_err());
        assert!(kneser_graph(3, 2).is_err());
    }

    #[test]
    fn k2_times_k3_is_hexagon() {
        let p = categorical_product(&complete_graph(2), &complete_graph(3));
        assert_eq!(p.order(), 6);
        assert_eq!(p.degree_sequence(), vec![2; 6]);
        assert!(p.is_connected());
        assert!(p.bipartition().is_some());
    }

    #[test]
    fn product_with_loopless_point_is_edgeless() {
        let g = kneser_graph(5, 2).unwrap();
        let p = categorical_product(&g, &Graph::empty(1));
        assert_eq!(p.order(), 10);
        assert_eq!(p.edge_count(), 0);
    }

    #[test]
    fn k2_times_k4_counts() {
        let p = categorical_product(&complete_graph(2), &complete_graph(4));
        assert_eq!((p.order(), p.edge_count()), (8, 12));
        assert!(p.bipartition().is_some());
    }

    #[test]
    fn disjoint_union_of_points() {
        let u = disjoint_union(&complete_graph(1), &complete_graph(1));
        assert_eq!((u.order(), u.edge_count()), (2, 0));
    }

    #[test]
    fn induced_subgraph_edge_cases() {
        let g = kneser_graph(5, 2).unwrap();
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);
        let none = g.induced_subgraph(&[]).unwrap();
        assert_eq!(none.order(), 0);
        assert!(matches!(
            g.induced_subgraph(&[3, 10]),
            Err(Error::VertexOutOfRange { vertex: 10, .. })
        ));
    }

    #[test]
    fn loops_count_once_in_degree() {
        let g = Graph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree_sequence(), vec![1, 2]);
        assert!(!g.is_simple());
        assert_eq!(g.edges(), vec![(0, 0), (0, 1)]);
        assert!(g.bipartition().is_none());
    }

    #[test]
    fn bipartition_examples() {
        let c6 = cycle_graph(6).unwrap();
        let parity = c6.bipartition().unwrap();
        assert_eq!(parity, vec![1, 2, 1, 2, 1, 2]);
        assert!(complete_graph(3).bipartition().is_none());
    }

    #[test]
    fn relabel_is_isomorphism() {
        let g = kneser_graph(5, 2).unwrap();
        let perm = vec![3, 1, 4, 0, 2, 9, 8, 7, 6, 5];
        let h = g.relabel(&perm).unwrap();
        assert!(g.is_isomorphism_to(&h, &perm));
        assert_eq!(h.label(3), g.label(0));
    }
}
