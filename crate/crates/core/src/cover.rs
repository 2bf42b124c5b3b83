//! Bigraphs, odd involutions and quotients `X/α`, together with the descent and
//! lift of maps between quotients.
//!
//! Vertex ids of a Kronecker cover `K_2 × G` are `layer * |G| + v` with layer 0
//! holding the parity-1 copy. A quotient numbers its orbits by their smaller
//! member, so on a cover the orbit `{(1,v), (2,w)}` gets id `v`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{categorical_product, complete_graph, Graph, Label};
use crate::symmetry::{
    automorphism_search, Permutation, PermutationGroup, SearchOptions,
};

/// A vertex map checked to be a graph homomorphism at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphMap {
    assignment: Vec<usize>,
    target_order: usize,
}

impl GraphMap {
    pub fn new(source: &Graph, target: &Graph, assignment: Vec<usize>) -> Result<Self> {
        source.check_homomorphism(target, &assignment)?;
        Ok(GraphMap {
            assignment,
            target_order: target.order(),
        })
    }

    pub fn identity(g: &Graph) -> Self {
        GraphMap {
            assignment: (0..g.order()).collect(),
            target_order: g.order(),
        }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn source_order(&self) -> usize {
        self.assignment.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GraphMap) -> GraphMap {
        GraphMap {
            assignment: self.assignment.iter().map(|&v| next.assignment[v]).collect(),
            target_order: next.target_order,
        }
    }

    pub fn is_isomorphism(&self, source: &Graph, target: &Graph) -> bool {
        source.is_isomorphism_to(target, &self.assignment)
    }
}

/// A graph with a proper 2-coloring `parity: V -> {1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigraph {
    graph: Graph,
    parity: Vec<u8>,
}

impl Bigraph {
    pub fn new(graph: Graph, parity: Vec<u8>) -> Result<Self> {
        if parity.len() != graph.order() {
            return Err(Error::InvalidParameters(format!(
                "{} parities for {} vertices",
                parity.len(),
                graph.order()
            )));
        }
        if let Some(v) = parity.iter().position(|&p| p != 1 && p != 2) {
            return Err(Error::InvalidParameters(format!("parity of {v} is not 1 or 2")));
        }
        for (u, v) in graph.edges() {
            if parity[u] == parity[v] {
                return Err(Error::BadParity(u, v));
            }
        }
        Ok(Bigraph { graph, parity })
    }

    /// Uses the deterministic bipartition of `graph`.
    pub fn from_bipartite(graph: Graph) -> Result<Self> {
        let parity = graph
            .bipartition()
            .ok_or_else(|| Error::InvalidParameters("graph is not bipartite".into()))?;
        Bigraph::new(graph, parity)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct BigraphJson<'a> {
            #[serde(flatten)]
            graph: crate::graph::GraphJson,
            parity: &'a [u8],
        }
        serde_json::to_string(&BigraphJson {
            graph: (&self.graph).into(),
            parity: &self.parity,
        })
        .expect("bigraph json")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapParity {
    Even,
    Odd,
    Neither,
}

/// Even iff `ε_Y f = ε_X`, odd iff `ε_Y f(x) ≠ ε_X(x)` for every `x`.
pub fn parity_of_map(x: &Bigraph, y: &Bigraph, f: &GraphMap) -> MapParity {
    let same = (0..x.order()).filter(|&v| y.parity[f.apply(v)] == x.parity[v]).count();
    if same == x.order() {
        MapParity::Even
    } else if same == 0 {
        MapParity::Odd
    } else {
        MapParity::Neither
    }
}

/// An automorphism of order at most two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Involution(Permutation);

impl Involution {
    pub fn new(g: &Graph, perm: Permutation) -> Result<Self> {
        if perm.degree() != g.order() {
            return Err(Error::NotPermutation(format!(
                "degree {} on a graph of order {}",
                perm.degree(),
                g.order()
            )));
        }
        if !perm.is_involution() {
            return Err(Error::NotInvolution);
        }
        for (u, v) in g.edges() {
            if !g.adjacent(perm.apply(u), perm.apply(v)) {
                return Err(Error::NotAutomorphism(u, v));
            }
        }
        Ok(Involution(perm))
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0.apply(v)
    }

    pub fn is_odd(&self, x: &Bigraph) -> bool {
        (0..x.order()).all(|v| x.parity[self.apply(v)] != x.parity[v])
    }

    fn check_odd(&self, x: &Bigraph) -> Result<()> {
        match (0..x.order()).find(|&v| x.parity[self.apply(v)] == x.parity[v]) {
            Some(v) => Err(Error::NotOdd(v)),
            None => Ok(()),
        }
    }
}

/// `K_2 × G` with its layer parity and the layer swap.
#[derive(Clone, Debug)]
pub struct Cover {
    pub bigraph: Bigraph,
    pub swap: Involution,
    pub base_order: usize,
}

impl Cover {
    /// Vertex id of `(layer, v)`, layer in {1, 2}.
    pub fn vertex(&self, layer: u8, v: usize) -> usize {
        (layer as usize - 1) * self.base_order + v
    }

    /// `ι × f` on the cover, with `ι` the layer swap when `swap_layers` is set.
    pub fn product_perm(&self, swap_layers: bool, f: &Permutation) -> Permutation {
        let n = self.base_order;
        let images = (0..2 * n)
            .map(|x| {
                let (layer, v) = (x / n, x % n);
                let layer = if swap_layers { 1 - layer } else { layer };
                layer * n + f.apply(v)
            })
            .collect();
        Permutation::from_images(images).expect("product of bijections")
    }
}

/// The Kronecker cover of a loop-free graph.
pub fn kronecker_cover(g: &Graph) -> Result<Cover> {
    if let Some(v) = g.loops().first() {
        return Err(Error::HasLoop(*v));
    }
    let n = g.order();
    let mut graph = categorical_product(&complete_graph(2), g);
    let labels = (0..2 * n)
        .map(|x| Label::Layer {
            layer: (x / n + 1) as u8,
            inner: Box::new(g.label(x % n).cloned().unwrap_or(Label::Index(x % n))),
        })
        .collect();
    graph = graph.with_labels(labels)?;
    let parity = (0..2 * n).map(|x| (x / n + 1) as u8).collect();
    let bigraph = Bigraph::new(graph, parity)?;
    let swap_images = (0..2 * n).map(|x| (x + n) % (2 * n)).collect();
    let swap = Involution::new(bigraph.graph(), Permutation::from_images(swap_images)?)?;
    Ok(Cover {
        bigraph,
        swap,
        base_order: n,
    })
}

/// `X/α` with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub graph: Graph,
    /// Orbit id of each vertex of `X`.
    pub projection: Vec<usize>,
    /// Orbit members, smaller id first.
    pub orbits: Vec<[usize; 2]>,
}

impl Quotient {
    pub fn projection_map(&self, x: &Graph) -> GraphMap {
        GraphMap::new(x, &self.graph, self.projection.clone()).expect("projection is a homomorphism")
    }
}

/// Orbits of `α` become vertices; orbits are adjacent iff some cross pair is.
pub fn quotient(x: &Bigraph, alpha: &Involution) -> Result<Quotient> {
    alpha.check_odd(x)?;
    let n = x.order();
    let mut projection = vec![usize::MAX; n];
    let mut orbits = Vec::with_capacity(n / 2);
    for v in 0..n {
        if projection[v] == usize::MAX {
            let w = alpha.apply(v);
            projection[v] = orbits.len();
            projection[w] = orbits.len();
            orbits.push([v, w]);
        }
    }
    let mut graph = Graph::empty(orbits.len());
    for (u, v) in x.graph().edges() {
        graph.add_edge(projection[u], projection[v])?;
    }
    if x.graph().labels().is_some() {
        let labels = orbits
            .iter()
            .map(|&[a, b]| {
                Label::Orbit(
                    Box::new(x.graph().label(a).unwrap().clone()),
                    Box::new(x.graph().label(b).unwrap().clone()),
                )
            })
            .collect();
        graph = graph.with_labels(labels)?;
    }
    Ok(Quotient {
        graph,
        projection,
        orbits,
    })
}

/// True iff no vertex is adjacent to its partner.
pub fn quotient_is_simple(x: &Bigraph, alpha: &Involution) -> Result<bool> {
    alpha.check_odd(x)?;
    Ok(simplicity_witness(x, alpha).is_none())
}

/// A vertex `v` with `v ~ α(v)`, if any.
pub fn simplicity_witness(x: &Bigraph, alpha: &Involution) -> Option<usize> {
    (0..x.order()).find(|&v| x.graph().adjacent(v, alpha.apply(v)))
}

/// A bigraph with a chosen odd involution and the quotient it induces.
#[derive(Clone, Debug)]
pub struct OddQuotient {
    pub bigraph: Bigraph,
    pub alpha: Involution,
    pub quotient: Quotient,
}

impl OddQuotient {
    pub fn new(bigraph: Bigraph, alpha: Involution) -> Result<Self> {
        let quotient = quotient(&bigraph, &alpha)?;
        Ok(OddQuotient {
            bigraph,
            alpha,
            quotient,
        })
    }

    /// The partner of orbit `o` with parity `p`.
    fn member_with_parity(&self, orbit: usize, p: u8) -> usize {
        let [a, b] = self.quotient.orbits[orbit];
        if self.bigraph.parity[a] == p {
            a
        } else {
            b
        }
    }
}

/// `x -> (ε(x), π(x))` from `X` onto the cover of `X/α`; checked to be an even isomorphism.
pub fn canonical_cover_iso(x: &Bigraph, alpha: &Involution) -> Result<(Cover, GraphMap)> {
    let q = quotient(x, alpha)?;
    if !q.graph.is_simple() {
        // The cover of a looped quotient is still defined on the relation level.
        return cover_of_looped(x, &q);
    }
    let cover = kronecker_cover(&q.graph)?;
    finish_cover_iso(x, &q, cover)
}

fn cover_of_looped(x: &Bigraph, q: &Quotient) -> Result<(Cover, GraphMap)> {
    let m = q.graph.order();
    let graph = categorical_product(&complete_graph(2), &q.graph);
    let parity = (0..2 * m).map(|v| (v / m + 1) as u8).collect();
    let bigraph = Bigraph::new(graph, parity)?;
    let swap_images = (0..2 * m).map(|v| (v + m) % (2 * m)).collect();
    let swap = Involution::new(bigraph.graph(), Permutation::from_images(swap_images)?)?;
    let cover = Cover {
        bigraph,
        swap,
        base_order: m,
    };
    finish_cover_iso(x, q, cover)
}

fn finish_cover_iso(x: &Bigraph, q: &Quotient, cover: Cover) -> Result<(Cover, GraphMap)> {
    let assignment: Vec<usize> = (0..x.order())
        .map(|v| cover.vertex(x.parity[v], q.projection[v]))
        .collect();
    let map = GraphMap::new(x.graph(), cover.bigraph.graph(), assignment)?;
    if !map.is_isomorphism(x.graph(), cover.bigraph.graph())
        || parity_of_map(x, &cover.bigraph, &map) != MapParity::Even
    {
        return Err(Error::HypothesisFailed(
            "(ε, π) is not an even isomorphism".into(),
        ));
    }
    Ok((cover, map))
}

fn check_intertwines(f: &GraphMap, alpha: &Involution, beta: &Involution) -> Result<()> {
    for v in 0..f.source_order() {
        if f.apply(alpha.apply(v)) != beta.apply(f.apply(v)) {
            return Err(Error::NotIntertwining(v));
        }
    }
    Ok(())
}

/// The induced map `X/α -> Y/β` of a homomorphism with `fα = βf`.
pub fn descend_map(from: &OddQuotient, to: &OddQuotient, f: &GraphMap) -> Result<GraphMap> {
    from.bigraph.graph().check_homomorphism(to.bigraph.graph(), f.assignment())?;
    check_intertwines(f, &from.alpha, &to.alpha)?;
    let assignment = from
        .quotient
        .orbits
        .iter()
        .map(|&[a, _]| to.quotient.projection[f.apply(a)])
        .collect();
    let bar = GraphMap::new(&from.quotient.graph, &to.quotient.graph, assignment)?;
    if f.is_isomorphism(from.bigraph.graph(), to.bigraph.graph())
        && !bar.is_isomorphism(&from.quotient.graph, &to.quotient.graph)
    {
        return Err(Error::HypothesisFailed("descent of an isomorphism is not one".into()));
    }
    Ok(bar)
}

/// The even lift `X -> Y` of a homomorphism `X/α -> Y/β`.
pub fn lift_map(from: &OddQuotient, to: &OddQuotient, f: &GraphMap) -> Result<GraphMap> {
    from.quotient.graph.check_homomorphism(&to.quotient.graph, f.assignment())?;
    let assignment = (0..from.bigraph.order())
        .map(|v| {
            let orbit = f.apply(from.quotient.projection[v]);
            to.member_with_parity(orbit, from.bigraph.parity[v])
        })
        .collect();
    let lift = GraphMap::new(from.bigraph.graph(), to.bigraph.graph(), assignment)?;
    if f.is_isomorphism(&from.quotient.graph, &to.quotient.graph)
        && !lift.is_isomorphism(from.bigraph.graph(), to.bigraph.graph())
    {
        return Err(Error::HypothesisFailed("lift of an isomorphism is not one".into()));
    }
    Ok(lift)
}

/// `Aut(X)` with its elements listed, for the odd-involution computations.
#[derive(Clone, Debug)]
pub struct BigraphSymmetry {
    pub bigraph: Bigraph,
    pub group: PermutationGroup,
    elements: Vec<Permutation>,
}

/// Default cap on `|Aut(X)|` for element enumeration.
pub const DEFAULT_ELEMENT_LIMIT: u64 = 10_000_000;

impl BigraphSymmetry {
    pub fn new(bigraph: Bigraph, opts: SearchOptions, element_limit: u64) -> Result<Self> {
        let search = automorphism_search(bigraph.graph(), &vec![0; bigraph.order()], opts)?;
        let mut elements = search.group.elements(element_limit)?;
        elements.sort_unstable();
        Ok(BigraphSymmetry {
            bigraph,
            group: search.group,
            elements,
        })
    }

    pub fn compute(bigraph: Bigraph) -> Result<Self> {
        BigraphSymmetry::new(bigraph, SearchOptions::default(), DEFAULT_ELEMENT_LIMIT)
    }

    /// All automorphisms in increasing image-array order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    fn is_even(&self, f: &Permutation) -> bool {
        let p = &self.bigraph.parity;
        (0..p.len()).all(|v| p[f.apply(v)] == p[v])
    }

    pub fn even_elements(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.elements.iter().filter(move |f| self.is_even(f))
    }

    /// Every odd involution of `X`, sorted by image array.
    pub fn odd_involutions(&self) -> Vec<Involution> {
        let p = &self.bigraph.parity;
        self.elements
            .iter()
            .filter(|f| f.is_involution() && (0..p.len()).all(|v| p[f.apply(v)] != p[v]))
            .map(|f| Involution(f.clone()))
            .collect()
    }

    fn least_conjugator<'a>(
        &self,
        mut candidates: impl Iterator<Item = &'a Permutation>,
        alpha: &Involution,
        beta: &Involution,
    ) -> Option<Permutation> {
        let (a, b) = (alpha.perm(), beta.perm());
        // candidates arrive sorted, so the first hit is the least witness
        candidates
            .find(|f| (0..f.degree()).all(|x| f.apply(a.apply(x)) == b.apply(f.apply(x))))
            .cloned()
    }

    /// Least even automorphism `f` with `fα = βf`.
    pub fn evenly_conjugating(&self, alpha: &Involution, beta: &Involution) -> Option<Permutation> {
        self.least_conjugator(self.even_elements(), alpha, beta)
    }

    /// Least automorphism `f` with `fα = βf`.
    pub fn conjugating(&self, alpha: &Involution, beta: &Involution) -> Option<Permutation> {
        self.least_conjugator(self.elements.iter(), alpha, beta)
    }

    /// Even automorphisms commuting with `α`.
    pub fn even_centralizer(&self, alpha: &Involution) -> PermutationGroup {
        let a = alpha.perm();
        let members: Vec<&Permutation> = self
            .even_elements()
            .filter(|f| f.commutes_with(a))
            .collect();
        PermutationGroup::from_elements(self.bigraph.order(), members)
    }
}

pub fn enumerate_odd_involutions(x: &Bigraph) -> Result<Vec<Involution>> {
    Ok(BigraphSymmetry::compute(x.clone())?.odd_involutions())
}

pub fn are_evenly_conjugate(x: &Bigraph, alpha: &Involution, beta: &Involution) -> Result<Option<Permutation>> {
    alpha.check_odd(x)?;
    beta.check_odd(x)?;
    Ok(BigraphSymmetry::compute(x.clone())?.evenly_conjugating(alpha, beta))
}

pub fn even_centralizer(x: &Bigraph, alpha: &Involution) -> Result<PermutationGroup> {
    alpha.check_odd(x)?;
    Ok(BigraphSymmetry::compute(x.clone())?.even_centralizer(alpha))
}

/// Splits an involution of `K_2 × G` as `ι × α'`; the flag is set when `ι` swaps layers.
///
/// Requires the product embedding `Z_2 × Aut(G) -> Aut(K_2 × G)` to be onto.
pub fn decompose_odd_involution(
    star: &crate::symmetry::StarMonomorphism,
    base: &Graph,
    alpha: &Involution,
) -> Result<(bool, Involution)> {
    if !star.surjective {
        return Err(Error::HypothesisFailed(
            "Z_2 × Aut(G) -> Aut(K_2 × G) is not onto".into(),
        ));
    }
    let n = base.order();
    if alpha.perm().degree() != 2 * n {
        return Err(Error::NotProductForm("degree mismatch".into()));
    }
    let swaps = alpha.apply(0) >= n;
    let mut images = vec![0; n];
    for v in 0..n {
        for layer in 0..2 {
            let img = alpha.apply(layer * n + v);
            let (img_layer, w) = (img / n, img % n);
            if (img_layer != layer) != swaps {
                return Err(Error::NotProductForm(format!("layer of ({}, {v})", layer + 1)));
            }
            if layer == 0 {
                images[v] = w;
            } else if images[v] != w {
                return Err(Error::NotProductForm(format!("layers disagree at {v}")));
            }
        }
    }
    let factor = Involution::new(base, Permutation::from_images(images)?)?;
    Ok((swaps, factor))
}
