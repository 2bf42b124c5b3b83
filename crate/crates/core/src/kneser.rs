//! The permutations `σ_i`, the bipartite Kneser graph `H(n,k)` in both of its
//! forms, and the quotients `G_i(n,k) = H(n,k)/(τ×σ_i)`.
//!
//! Vertex `j` of `G_i(n,k)` is the orbit `{(1,s), (2,σ_i s)}` of the colex
//! rank-`j` subset `s`, so `G_i(n−1,k)` is the induced subgraph on the first
//! `C(n−1,k)` vertices.

use crate::cover::{kronecker_cover, Cover, GraphMap, Involution, OddQuotient};
use crate::error::{Error, Result};
use crate::graph::subset::{binomial, colex_rank, complement, k_subsets, SubsetLabel};
use crate::graph::{kneser_graph, Graph, Label};
use crate::symmetry::{phi_embedding, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct FamilyIndex {
    pub n: usize,
    pub k: usize,
    pub i: usize,
}

impl FamilyIndex {
    pub fn new(n: usize, k: usize, i: usize) -> Result<Self> {
        check_nk(n, k)?;
        if i > n / 2 {
            return Err(Error::InvalidParameters(format!("i={i} exceeds n/2 for n={n}")));
        }
        Ok(FamilyIndex { n, k, i })
    }

    pub fn is_simple_index(&self) -> bool {
        self.i < self.k
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidParameters(format!("need n >= 2k >= 2, got n={n}, k={k}")));
    }
    if n > crate::graph::subset::MAX_GROUND {
        return Err(Error::InvalidParameters(format!("n={n} is too large")));
    }
    Ok(())
}

fn check_strict(n: usize, k: usize) -> Result<()> {
    check_nk(n, k)?;
    if n == 2 * k {
        return Err(Error::InvalidParameters(format!(
            "n = 2k = {n} makes the two subset layers coincide"
        )));
    }
    Ok(())
}

/// `(1,2)(3,4)⋯(2i−1,2i)` on `n` points.
pub fn sigma(i: usize, n: usize) -> Result<Permutation> {
    if 2 * i > n {
        return Err(Error::InvalidParameters(format!("σ_{i} needs n >= {}, got {n}", 2 * i)));
    }
    let images = (0..n).map(|x| if x < 2 * i { x ^ 1 } else { x }).collect();
    Permutation::from_images(images)
}

/// Image of a subset bitmask under a permutation of the ground set.
pub fn permute_mask(p: &Permutation, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let x = m.trailing_zeros() as usize;
        out |= 1 << p.apply(x);
        m &= m - 1;
    }
    out
}

/// The action of `ρ ∈ S_n` on the vertices of `K(n,k)`.
pub fn subset_action(n: usize, k: usize, rho: &Permutation) -> Result<Permutation> {
    if rho.degree() != n {
        return Err(Error::InvalidParameters(format!(
            "permutation of degree {} on [{n}]",
            rho.degree()
        )));
    }
    let images = k_subsets(n, k)?
        .into_iter()
        .map(|s| colex_rank(permute_mask(rho, s)) as usize)
        .collect();
    Permutation::from_images(images)
}

/// `H(n,k) = K_2 × K(n,k)`.
pub fn bipartite_kneser(n: usize, k: usize) -> Result<Cover> {
    check_nk(n, k)?;
    kronecker_cover(&kneser_graph(n, k)?)
}

/// `ι × ρ` on `H(n,k)`, with `ι` the layer swap when `swap_layers` is set.
pub fn product_automorphism(h: &Cover, n: usize, k: usize, swap_layers: bool, rho: &Permutation) -> Result<Permutation> {
    Ok(h.product_perm(swap_layers, &subset_action(n, k, rho)?))
}

/// The odd involution `τ × ρ` for an involution `ρ ∈ S_n`.
pub fn cover_involution(h: &Cover, n: usize, k: usize, rho: &Permutation) -> Result<Involution> {
    if !rho.is_involution() {
        return Err(Error::NotInvolution);
    }
    Involution::new(h.bigraph.graph(), product_automorphism(h, n, k, true, rho)?)
}

/// k-subsets then (n−k)-subsets, each in colex order, adjacent under proper containment.
pub fn bipartite_kneser_subset_form(n: usize, k: usize) -> Result<Graph> {
    check_strict(n, k)?;
    let small = k_subsets(n, k)?;
    let large = k_subsets(n, n - k)?;
    let offset = small.len();
    let mut edges = Vec::new();
    for (a, &s) in small.iter().enumerate() {
        for (b, &t) in large.iter().enumerate() {
            if s & t == s {
                edges.push((a, offset + b));
            }
        }
    }
    let labels = small
        .iter()
        .chain(&large)
        .map(|&m| Label::Subset(SubsetLabel::from_mask(m)))
        .collect();
    Graph::from_edges(offset + large.len(), &edges)?.with_labels(labels)
}

/// `(1,s) ↦ s`, `(2,s) ↦ [n]∖s`, checked to be an isomorphism.
pub fn subset_form_iso(n: usize, k: usize) -> Result<GraphMap> {
    check_strict(n, k)?;
    let cover = bipartite_kneser(n, k)?;
    let form = bipartite_kneser_subset_form(n, k)?;
    let subsets = k_subsets(n, k)?;
    let offset = subsets.len();
    let assignment = (0..2 * offset)
        .map(|x| {
            let s = subsets[x % offset];
            if x < offset {
                x
            } else {
                offset + colex_rank(complement(s, n)) as usize
            }
        })
        .collect();
    let map = GraphMap::new(cover.bigraph.graph(), &form, assignment)?;
    if !map.is_isomorphism(cover.bigraph.graph(), &form) {
        return Err(Error::HypothesisFailed("subset-form map is not an isomorphism".into()));
    }
    Ok(map)
}

/// `H(n,k)` with `τ × σ_i` and the resulting quotient.
pub fn g_quotient(n: usize, k: usize, i: usize) -> Result<OddQuotient> {
    let idx = FamilyIndex::new(n, k, i)?;
    let h = bipartite_kneser(idx.n, idx.k)?;
    let alpha = cover_involution(&h, n, k, &sigma(i, n)?)?;
    let mut q = OddQuotient::new(h.bigraph, alpha)?;
    let s = sigma(i, n)?;
    let labels = k_subsets(n, k)?
        .into_iter()
        .map(|m| {
            Label::Orbit(
                Box::new(Label::Subset(SubsetLabel::from_mask(m))),
                Box::new(Label::Subset(SubsetLabel::from_mask(permute_mask(&s, m)))),
            )
        })
        .collect();
    q.quotient.graph = q.quotient.graph.with_labels(labels)?;
    Ok(q)
}

/// `G_i(n,k)`, labeled by orbits `{s | σ_i s}`.
pub fn g_graph(n: usize, k: usize, i: usize) -> Result<Graph> {
    Ok(g_quotient(n, k, i)?.quotient.graph)
}

/// Simplicity of `G_i(n,k)` for `i = 0..=⌊n/2⌋`.
pub fn simplicity_threshold(n: usize, k: usize) -> Result<Vec<bool>> {
    check_nk(n, k)?;
    let h = bipartite_kneser(n, k)?;
    (0..=n / 2)
        .map(|i| {
            let alpha = cover_involution(&h, n, k, &sigma(i, n)?)?;
            crate::cover::quotient_is_simple(&h.bigraph, &alpha)
        })
        .collect()
}

/// Orbits whose k-subset contains `n`: the vertices of `G_i(n,k)` outside `G_i(n−1,k)`.
pub fn new_layer_vertices(n: usize, k: usize, i: usize) -> Result<Vec<usize>> {
    check_strict(n, k)?;
    FamilyIndex::new(n, k, i)?;
    let start = binomial(n - 1, k) as usize;
    Ok((start..binomial(n, k) as usize).collect())
}

/// Relabels `{1..2i}` from the block layout `(j, i+j)` to the paired layout `(2j−1, 2j)`.
fn block_to_pairs(i: usize, p: &Permutation) -> Permutation {
    let to_pair = |x: usize| if x < i { 2 * x } else { 2 * (x - i) + 1 };
    let mut images = vec![0; 2 * i];
    for x in 0..2 * i {
        images[to_pair(x)] = to_pair(p.apply(x));
    }
    Permutation::from_images(images).unwrap()
}

/// The image in `Z_{S_n}(σ_i)` of `((x, σ), ρ) ∈ (Z_2^i ⋊ S_i) × S_{n−2i}`.
pub fn centralizer_element(n: usize, i: usize, x: &[bool], s: &Permutation, rho: &Permutation) -> Result<Permutation> {
    if 2 * i > n || x.len() != i || s.degree() != i || rho.degree() != n - 2 * i {
        return Err(Error::InvalidParameters("shape of the semidirect factor".into()));
    }
    let mut images: Vec<usize> = (0..n).collect();
    if i > 0 {
        let paired = block_to_pairs(i, &phi_embedding(x, s)?);
        images[..2 * i].copy_from_slice(paired.images());
    }
    for y in 0..n - 2 * i {
        images[2 * i + y] = 2 * i + rho.apply(y);
    }
    Permutation::from_images(images)
}

/// Generators of `(Z_2^i ⋊ S_i) × S_{n−2i}` as `(x, σ, ρ)` triples.
pub fn abstract_generators(n: usize, i: usize) -> Vec<(Vec<bool>, Permutation, Permutation)> {
    let r = n - 2 * i;
    let mut out = Vec::new();
    let zero = vec![false; i];
    if i > 0 {
        let mut e1 = zero.clone();
        e1[0] = true;
        out.push((e1, Permutation::identity(i), Permutation::identity(r)));
    }
    for gen in symmetric_generators(i) {
        out.push((zero.clone(), gen, Permutation::identity(r)));
    }
    for gen in symmetric_generators(r) {
        out.push((zero.clone(), Permutation::identity(i), gen));
    }
    out
}

fn symmetric_generators(m: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    if m >= 2 {
        out.push(Permutation::transposition(m, 0, 1).unwrap());
    }
    if m >= 3 {
        out.push(Permutation::from_images((0..m).map(|x| (x + 1) % m).collect()).unwrap());
    }
    out
}

/// Automorphism of `G_i(n,k)` induced by `ρ ∈ Z_{S_n}(σ_i)`, via descent of `id × ρ`.
pub fn descend_centralizer_element(q: &OddQuotient, n: usize, k: usize, rho: &Permutation) -> Result<Permutation> {
    let h = Cover {
        bigraph: q.bigraph.clone(),
        swap: q.alpha.clone(),
        base_order: q.bigraph.order() / 2,
    };
    let lifted = product_automorphism(&h, n, k, false, rho)?;
    let f = GraphMap::new(q.bigraph.graph(), q.bigraph.graph(), lifted.images().to_vec())?;
    let bar = crate::cover::descend_map(q, q, &f)?;
    Permutation::from_images(bar.assignment().to_vec())
}
