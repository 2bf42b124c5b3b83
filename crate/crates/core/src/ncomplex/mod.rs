//! Simplicial complexes given by facets, neighborhood complexes of graphs, and
//! their integer homology.

mod homology;
mod pi1;
pub mod snf;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symmetry::{canonical_form_colored, isomorphism_from_forms, SearchOptions};

pub use homology::{
    connectivity_evidence, euler_characteristic, reduced_homology, ConnectivityEvidence, DimensionHomology,
    HomologyReport, Pi1Verdict,
};
pub use pi1::{simplify_presentation, Presentation, TietzeOutcome};

/// Default cap on the number of simplices enumerated in one dimension range.
pub const DEFAULT_SIMPLEX_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal sets; the ground set is their union.
    pub fn from_facets(sets: Vec<Vec<usize>>) -> Self {
        let mut sets: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .filter(|s| !s.is_empty())
            .collect();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for s in sets {
            if !facets.iter().any(|f| is_subset(&s, f)) {
                facets.push(s);
            }
        }
        facets.sort();
        let vertices: BTreeSet<usize> = facets.iter().flatten().copied().collect();
        SimplicialComplex {
            vertices: vertices.into_iter().collect(),
            facets,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// All simplices of dimension `0..=max_dim`, each dimension sorted.
    pub fn simplices_up_to(&self, max_dim: usize, budget: u64) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut out = Vec::with_capacity(max_dim + 1);
        let mut total = 0u64;
        for d in 0..=max_dim {
            let mut faces = BTreeSet::new();
            for f in &self.facets {
                if f.len() > d {
                    for_each_combination(f, d + 1, &mut |s| {
                        faces.insert(s.to_vec());
                    });
                    if total + faces.len() as u64 > budget {
                        return Err(Error::BudgetExceeded {
                            what: "simplices",
                            limit: budget,
                        });
                    }
                }
            }
            total += faces.len() as u64;
            out.push(faces.into_iter().collect());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex json")
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

fn for_each_combination(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for j in start..=items.len() - (size - cur.len()) {
            cur.push(items[j]);
            rec(items, size, j + 1, cur, f);
            cur.pop();
        }
    }
    if size <= items.len() {
        rec(items, size, 0, &mut Vec::with_capacity(size), f);
    }
}

/// `N(G)`: facets are the maximal neighborhoods.
pub fn neighborhood_complex(g: &Graph) -> Result<SimplicialComplex> {
    if let Some(&v) = g.loops().first() {
        return Err(Error::HasLoop(v));
    }
    Ok(SimplicialComplex::from_facets(
        (0..g.order()).map(|v| g.neighbors(v).collect()).collect(),
    ))
}

/// Vertex–facet incidence graph: ground vertices first (color 0), then facets (color 1).
fn incidence_graph(k: &SimplicialComplex) -> Result<(Graph, Vec<u64>)> {
    let nv = k.vertices.len();
    let mut edges = Vec::new();
    for (j, f) in k.facets.iter().enumerate() {
        for v in f {
            let idx = k.vertices.binary_search(v).expect("facet vertex in ground set");
            edges.push((idx, nv + j));
        }
    }
    let g = Graph::from_edges(nv + k.facets.len(), &edges)?;
    let colors = (0..g.order()).map(|x| u64::from(x >= nv)).collect();
    Ok((g, colors))
}

/// A ground-set bijection `(u, v)` carrying the facets of `K` onto those of `L`.
pub fn complexes_isomorphic(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    opts: SearchOptions,
) -> Result<Option<Vec<(usize, usize)>>> {
    if k.vertices.len() != l.vertices.len() || k.facets.len() != l.facets.len() {
        return Ok(None);
    }
    let sizes = |c: &SimplicialComplex| {
        let mut s: Vec<usize> = c.facets.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    };
    if sizes(k) != sizes(l) {
        return Ok(None);
    }
    let (gk, ck) = incidence_graph(k)?;
    let (gl, cl) = incidence_graph(l)?;
    let fk = canonical_form_colored(&gk, &ck, opts)?;
    let fl = canonical_form_colored(&gl, &cl, opts)?;
    if fk.certificate != fl.certificate {
        return Ok(None);
    }
    let Some(map) = isomorphism_from_forms(&gk, &gl, &fk, &fl)? else {
        return Ok(None);
    };
    let nv = k.vertices.len();
    let mut bijection = Vec::with_capacity(nv);
    for x in 0..nv {
        let y = map.apply(x);
        if y >= nv {
            return Err(Error::HypothesisFailed("witness mixes vertices and facets".into()));
        }
        bijection.push((k.vertices[x], l.vertices[y]));
    }
    let image: BTreeSet<Vec<usize>> = k
        .facets
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f
                .iter()
                .map(|v| bijection[k.vertices.binary_search(v).unwrap()].1)
                .collect();
            g.sort_unstable();
            g
        })
        .collect();
    let target: BTreeSet<Vec<usize>> = l.facets.iter().cloned().collect();
    if image != target {
        return Err(Error::HypothesisFailed("witness does not carry facets onto facets".into()));
    }
    Ok(Some(bijection))
}
