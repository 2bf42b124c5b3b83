//! Individualization–refinement search: automorphism groups, canonical forms
//! and isomorphism witnesses.
//!
//! The automorphism group comes from the first path of the search tree: at each
//! level we look for leaves equivalent to the first leaf below every vertex of the
//! target cell that is not yet in the orbit of the first choice. The canonical
//! leaf is then the least `(trace, certificate)` pair over the tree, exploring
//! one child per orbit of the pointwise stabilizer of the current prefix.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::group::{orbits_of, PermutationGroup};
use super::partition::Partition;
use super::perm::Permutation;
use crate::cover::GraphMap;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Limits for the canonical search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_vertices: 256,
            max_nodes: 20_000_000,
        }
    }
}

/// Relabeled graph in canonical vertex order: per-position colors plus the
/// sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub colors: Vec<u64>,
    pub edges: Vec<(u32, u32)>,
}

impl Certificate {
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for c in &self.colors {
            h.update(c.to_le_bytes());
        }
        for &(u, v) in &self.edges {
            h.update(u.to_le_bytes());
            h.update(v.to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// `labeling` sends each vertex to its canonical position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub labeling: Permutation,
    pub certificate: Certificate,
}

/// Output of the automorphism search, with the orbit sizes along the base so the
/// group order can be checked against the stabilizer chain.
#[derive(Clone, Debug)]
pub struct AutomorphismSearch {
    pub group: PermutationGroup,
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    pub nodes: u64,
}

impl AutomorphismSearch {
    pub fn order_from_orbits(&self) -> BigUint {
        self.orbit_sizes
            .iter()
            .fold(BigUint::one(), |acc, &s| acc * BigUint::from(s))
    }
}

struct PathNode {
    part: Partition,
    trace: u64,
    target: Option<usize>,
}

struct Best {
    traces: Vec<u64>,
    certificate: Certificate,
    pos: Vec<usize>,
}

struct Searcher<'a> {
    g: &'a Graph,
    colors: &'a [u64],
    opts: SearchOptions,
    nodes: u64,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, colors: &'a [u64], opts: SearchOptions) -> Result<Self> {
        if g.order() > opts.max_vertices {
            return Err(Error::BudgetExceeded {
                what: "canonical search vertices",
                limit: opts.max_vertices as u64,
            });
        }
        if colors.len() != g.order() {
            return Err(Error::InvalidParameters(format!(
                "{} colors for {} vertices",
                colors.len(),
                g.order()
            )));
        }
        Ok(Searcher {
            g,
            colors,
            opts,
            nodes: 0,
        })
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.opts.max_nodes {
            return Err(Error::BudgetExceeded {
                what: "canonical search nodes",
                limit: self.opts.max_nodes,
            });
        }
        Ok(())
    }

    fn root(&self) -> (Partition, u64) {
        let effective: Vec<u64> = (0..self.g.order())
            .map(|v| self.colors[v] * 2 + self.g.has_loop(v) as u64)
            .collect();
        let mut part = Partition::from_colors(&effective);
        let trace = part.refine_all(self.g);
        (part, trace)
    }

    fn first_path(&mut self) -> Result<Vec<PathNode>> {
        let (part, trace) = self.root();
        let mut path = vec![PathNode {
            target: part.target_cell(),
            part,
            trace,
        }];
        while let Some(ts) = path.last().unwrap().target {
            self.tick()?;
            let node = path.last().unwrap();
            let c = *node.part.cell_members(ts).iter().min().unwrap();
            let mut part = node.part.clone();
            let trace = part.individualize(self.g, c);
            path.push(PathNode {
                target: part.target_cell(),
                part,
                trace,
            });
        }
        Ok(path)
    }

    fn automorphisms(&mut self) -> Result<AutomorphismSearch> {
        let n = self.g.order();
        let path = self.first_path()?;
        let depth = path.len() - 1;
        let leaf = path[depth].part.order.clone();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut base = vec![0; depth];
        let mut orbit_sizes = vec![0; depth];
        for l in (0..depth).rev() {
            let ts = path[l].target.unwrap();
            let mut cell = path[l].part.cell_members(ts).to_vec();
            cell.sort_unstable();
            let c = cell[0];
            base[l] = c;
            let mut orbits = orbit_index(n, &gens);
            for &w in &cell[1..] {
                if orbits[w] == orbits[c] {
                    continue;
                }
                let mut part = path[l].part.clone();
                let trace = part.individualize(self.g, w);
                if trace != path[l + 1].trace {
                    continue;
                }
                if let Some(gamma) = self.equivalent_leaf(part, l + 1, &path, &leaf)? {
                    gens.push(gamma);
                    orbits = orbit_index(n, &gens);
                }
            }
            orbit_sizes[l] = orbits.iter().filter(|&&o| o == orbits[c]).count();
        }
        let group = PermutationGroup::new(n, gens)?;
        Ok(AutomorphismSearch {
            group,
            base,
            orbit_sizes,
            nodes: self.nodes,
        })
    }

    fn equivalent_leaf(
        &mut self,
        part: Partition,
        depth: usize,
        path: &[PathNode],
        leaf: &[usize],
    ) -> Result<Option<Permutation>> {
        self.tick()?;
        if part.is_discrete() {
            if depth + 1 != path.len() {
                return Ok(None);
            }
            let mut images = vec![0; leaf.len()];
            for (p, &v) in leaf.iter().enumerate() {
                images[v] = part.order[p];
            }
            if self.g.is_automorphism(&images) {
                return Ok(Some(Permutation::from_images(images)?));
            }
            return Ok(None);
        }
        let Some(expected) = path.get(depth).and_then(|p| p.target) else {
            return Ok(None);
        };
        let ts = part.target_cell().unwrap();
        if ts != expected || part.end[ts] != path[depth].part.end[ts] {
            return Ok(None);
        }
        let mut cell = part.cell_members(ts).to_vec();
        cell.sort_unstable();
        for x in cell {
            let mut child = part.clone();
            let trace = child.individualize(self.g, x);
            if trace != path[depth + 1].trace {
                continue;
            }
            if let Some(gamma) = self.equivalent_leaf(child, depth + 1, path, leaf)? {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }

    fn canonical(&mut self, group: &PermutationGroup) -> Result<CanonicalForm> {
        let (part, trace) = self.root();
        let mut best: Option<Best> = None;
        let mut traces = vec![trace];
        let mut prefix = Vec::new();
        self.canonical_dfs(part, &mut traces, &mut prefix, group, &mut best)?;
        let best = best.expect("search reaches a leaf");
        Ok(CanonicalForm {
            labeling: Permutation::from_images(best.pos)?,
            certificate: best.certificate,
        })
    }

    fn canonical_dfs(
        &mut self,
        part: Partition,
        traces: &mut Vec<u64>,
        prefix: &mut Vec<usize>,
        group: &PermutationGroup,
        best: &mut Option<Best>,
    ) -> Result<()> {
        self.tick()?;
        if let Some(b) = best.as_ref() {
            if compare_prefix(traces, &b.traces) == Ordering::Greater {
                return Ok(());
            }
        }
        let Some(ts) = part.target_cell() else {
            let certificate = self.certificate(&part);
            let better = match best.as_ref() {
                None => true,
                Some(b) => (traces.as_slice(), &certificate) < (b.traces.as_slice(), &b.certificate),
            };
            if better {
                *best = Some(Best {
                    traces: traces.clone(),
                    certificate,
                    pos: part.pos.clone(),
                });
            }
            return Ok(());
        };
        let stabilizer = group.pointwise_stabilizer(prefix);
        let orbits = orbit_index(self.g.order(), &stabilizer);
        let mut cell = part.cell_members(ts).to_vec();
        cell.sort_unstable();
        let mut seen_orbits = Vec::new();
        for w in cell {
            if seen_orbits.contains(&orbits[w]) {
                continue;
            }
            seen_orbits.push(orbits[w]);
            let mut child = part.clone();
            let trace = child.individualize(self.g, w);
            traces.push(trace);
            prefix.push(w);
            self.canonical_dfs(child, traces, prefix, group, best)?;
            traces.pop();
            prefix.pop();
        }
        Ok(())
    }

    fn certificate(&self, part: &Partition) -> Certificate {
        let mut edges: Vec<(u32, u32)> = self
            .g
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (part.pos[u] as u32, part.pos[v] as u32);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Certificate {
            n: self.g.order(),
            colors: part.order.iter().map(|&v| self.colors[v]).collect(),
            edges,
        }
    }
}

/// Lexicographic comparison of a node's trace prefix against a leaf's traces;
/// a longer sequence agreeing on the whole leaf is treated as greater.
fn compare_prefix(node: &[u64], leaf: &[u64]) -> Ordering {
    for (a, b) in node.iter().zip(leaf) {
        match a.cmp(b) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    if node.len() > leaf.len() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// `index[v]` = least point of the orbit of `v`.
fn orbit_index(n: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut index = vec![0; n];
    for orbit in orbits_of(n, gens) {
        for &v in &orbit {
            index[v] = orbit[0];
        }
    }
    index
}

pub fn automorphism_search(g: &Graph, colors: &[u64], opts: SearchOptions) -> Result<AutomorphismSearch> {
    let mut s = Searcher::new(g, colors, opts)?;
    s.automorphisms()
}

/// Canonical form of a vertex-colored graph; the group is the colored automorphism group.
pub fn canonical_form_with_group(
    g: &Graph,
    colors: &[u64],
    group: &PermutationGroup,
    opts: SearchOptions,
) -> Result<CanonicalForm> {
    let mut s = Searcher::new(g, colors, opts)?;
    s.canonical(group)
}

pub fn automorphism_group(g: &Graph) -> Result<PermutationGroup> {
    automorphism_group_with(g, SearchOptions::default())
}

pub fn automorphism_group_with(g: &Graph, opts: SearchOptions) -> Result<PermutationGroup> {
    Ok(automorphism_search(g, &vec![0; g.order()], opts)?.group)
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_colored(g, &vec![0; g.order()], SearchOptions::default())
}

pub fn canonical_form_colored(g: &Graph, colors: &[u64], opts: SearchOptions) -> Result<CanonicalForm> {
    let search = automorphism_search(g, colors, opts)?;
    canonical_form_with_group(g, colors, &search.group, opts)
}

/// Witness isomorphism `g -> h` built from two canonical forms, verified edge by edge.
pub fn isomorphism_from_forms(
    g: &Graph,
    h: &Graph,
    cg: &CanonicalForm,
    ch: &CanonicalForm,
) -> Result<Option<GraphMap>> {
    if cg.certificate != ch.certificate {
        return Ok(None);
    }
    let map = ch.labeling.inverse().compose(&cg.labeling);
    if !g.is_isomorphism_to(h, map.images()) {
        return Err(Error::InvalidParameters(
            "equal certificates produced a non-isomorphism".into(),
        ));
    }
    Ok(Some(GraphMap::new(g, h, map.images().to_vec())?))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<GraphMap>> {
    are_isomorphic_with(g, h, SearchOptions::default())
}

pub fn are_isomorphic_with(g: &Graph, h: &Graph, opts: SearchOptions) -> Result<Option<GraphMap>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return Ok(None);
    }
    let cg = canonical_form_colored(g, &vec![0; g.order()], opts)?;
    let ch = canonical_form_colored(h, &vec![0; h.order()], opts)?;
    isomorphism_from_forms(g, h, &cg, &ch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, kneser_graph};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn random_relabel(g: &Graph, seed: u64) -> (Graph, Vec<usize>) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rng);
        (g.relabel(&perm).unwrap(), perm)
    }

    /// Brute-force automorphism count over all n! bijections.
    fn brute_aut_count(g: &Graph) -> usize {
        fn rec(g: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let v = map.len();
            if v == g.order() {
                *count += 1;
                return;
            }
            for w in 0..g.order() {
                if used[w] {
                    continue;
                }
                if (0..v).any(|u| g.adjacent(u, v) != g.adjacent(map[u], w))
                    || g.has_loop(v) != g.has_loop(w)
                {
                    continue;
                }
                used[w] = true;
                map.push(w);
                rec(g, map, used, count);
                map.pop();
                used[w] = false;
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut count);
        count
    }

    #[test]
    fn small_group_orders_match_brute_force() {
        let graphs = vec![
            kneser_graph(5, 2).unwrap(),
            cycle_graph(6).unwrap(),
            complete_graph(5),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 3)]).unwrap(),
            Graph::empty(4),
            crate::graph::disjoint_union(&complete_graph(3), &cycle_graph(4).unwrap()),
        ];
        for g in graphs {
            let search = automorphism_search(&g, &vec![0; g.order()], SearchOptions::default()).unwrap();
            let brute = brute_aut_count(&g) as u128;
            assert_eq!(search.group.order_u128(), Some(brute));
            assert_eq!(search.order_from_orbits(), search.group.order());
            for gen in search.group.generators() {
                assert!(g.is_automorphism(gen.images()));
            }
        }
    }

    #[test]
    fn petersen_group() {
        let g = kneser_graph(5, 2).unwrap();
        assert_eq!(automorphism_group(&g).unwrap().order_u128(), Some(120));
    }

    #[test]
    fn relabelings_share_certificates() {
        let g = kneser_graph(5, 2).unwrap();
        let c0 = canonical_form(&g).unwrap();
        for seed in 0..5 {
            let (h, _) = random_relabel(&g, seed);
            assert_eq!(canonical_form(&h).unwrap().certificate, c0.certificate);
        }
    }

    #[test]
    fn empty_graph_certificate() {
        let c = canonical_form(&Graph::empty(0)).unwrap();
        assert_eq!(c.certificate.n, 0);
        assert!(c.certificate.edges.is_empty());
    }

    #[test]
    fn isomorphism_witness_is_verified() {
        let g = kneser_graph(6, 2).unwrap();
        let (h, _) = random_relabel(&g, 11);
        let w = are_isomorphic(&g, &h).unwrap().unwrap();
        assert!(g.is_isomorphism_to(&h, w.assignment()));
        let self_iso = are_isomorphic(&g, &g).unwrap().unwrap();
        assert!(g.is_automorphism(self_iso.assignment()));
    }

    #[test]
    fn non_isomorphic_pairs() {
        // same degree sequence: C_6 versus two triangles
        let c6 = cycle_graph(6).unwrap();
        let two_k3 = crate::graph::disjoint_union(&complete_graph(3), &complete_graph(3));
        assert!(are_isomorphic(&c6, &two_k3).unwrap().is_none());
        // a loop changes the certificate
        let a = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 0)]).unwrap();
        let b = Graph::from_edges(3, &[(0, 1), (1, 2), (1, 1)]).unwrap();
        assert_ne!(canonical_form(&a).unwrap().certificate, canonical_form(&b).unwrap().certificate);
    }

    #[test]
    fn budget_is_enforced() {
        let g = kneser_graph(5, 2).unwrap();
        let opts = SearchOptions {
            max_vertices: 5,
            max_nodes: 10,
        };
        assert!(automorphism_group_with(&g, opts).unwrap_err().is_budget());
    }

    #[test]
    fn colors_restrict_automorphisms() {
        let c4 = cycle_graph(4).unwrap();
        let s = automorphism_search(&c4, &[1, 0, 0, 0], SearchOptions::default()).unwrap();
        assert_eq!(s.group.order_u128(), Some(2));
    }
}
