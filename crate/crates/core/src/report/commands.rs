//! Report builders behind the `classify`, `aut`, `chroma` and `ncomplex` commands.

use serde_json::{json, Value};

use super::{Context, Verdict};
use crate::coloring::{chromatic_number_exact, is_proper, lovasz_bound, layered_coloring, Coloring};
use crate::cover::{quotient, BigraphSymmetry};
use crate::error::{Error, Result};
use crate::graph::kneser_graph;
use crate::kneser::{bipartite_kneser, cover_involution, g_graph, sigma, FamilyIndex};
use crate::ncomplex::{complexes_isomorphic, connectivity_evidence, neighborhood_complex, reduced_homology};
use crate::symmetry::{automorphism_search, centralizer_order_formula};

pub(crate) fn big_json(x: &num_bigint::BigUint) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// Odd involutions of `H(n,k)` sorted into the classes of `τ × σ_i`.
pub(crate) struct ExhaustiveClasses {
    pub odd_involutions: usize,
    pub class_sizes: Vec<usize>,
    pub unmatched: usize,
}

impl ExhaustiveClasses {
    pub fn nonempty_classes(&self) -> usize {
        self.class_sizes.iter().filter(|&&s| s > 0).count()
    }
}

pub(crate) fn exhaustive_classes(ctx: &Context, n: usize, k: usize) -> Result<ExhaustiveClasses> {
    let h = bipartite_kneser(n, k)?;
    let reps = (0..=n / 2)
        .map(|i| cover_involution(&h, n, k, &sigma(i, n)?))
        .collect::<Result<Vec<_>>>()?;
    let sym = BigraphSymmetry::new(h.bigraph.clone(), ctx.search_options(), ctx.budgets.group_elements)?;
    let odd = sym.odd_involutions();
    let mut class_sizes = vec![0; reps.len()];
    let mut unmatched = 0;
    for alpha in &odd {
        let hits: Vec<usize> = (0..reps.len())
            .filter(|&i| sym.evenly_conjugating(&reps[i], alpha).is_some())
            .collect();
        match hits[..] {
            [i] => class_sizes[i] += 1,
            [] => unmatched += 1,
            _ => {
                return Err(Error::HypothesisFailed(format!(
                    "an odd involution is evenly conjugate to several of {hits:?}"
                )))
            }
        }
    }
    Ok(ExhaustiveClasses {
        odd_involutions: odd.len(),
        class_sizes,
        unmatched,
    })
}

/// Quotients of `H(n,k)` by every `τ × σ_i`, with an optional exhaustive pass.
pub fn classify_report(ctx: &Context, n: usize, k: usize, exhaustive: bool) -> Result<Value> {
    FamilyIndex::new(n, k, 0)?;
    let h = bipartite_kneser(n, k)?;
    let mut classes = Vec::new();
    let mut simple_count = 0;
    for i in 0..=n / 2 {
        let alpha = cover_involution(&h, n, k, &sigma(i, n)?)?;
        let q = quotient(&h.bigraph, &alpha)?.graph.without_labels();
        let simple = q.is_simple();
        simple_count += usize::from(simple);
        let form = ctx.canonical_form(&q)?;
        classes.push(json!({
            "i": i,
            "simple": simple,
            "vertices": q.order(),
            "edges": q.edge_count(),
            "loops": q.loops().len(),
            "certificate": form.certificate.digest(),
        }));
    }
    let mut out = json!({
        "n": n,
        "k": k,
        "classes": classes,
        "simple_classes": simple_count,
        "non_simple_classes": n / 2 + 1 - simple_count,
        "expected_simple_classes": k,
    });
    if exhaustive {
        let ex = exhaustive_classes(ctx, n, k)?;
        out["exhaustive"] = json!({
            "odd_involutions": ex.odd_involutions,
            "class_sizes": ex.class_sizes,
            "classes": ex.nonempty_classes(),
            "unmatched": ex.unmatched,
        });
    }
    Ok(out)
}

pub fn aut_report(ctx: &Context, n: usize, k: usize, i: usize) -> Result<Value> {
    let idx = FamilyIndex::new(n, k, i)?;
    if !idx.is_simple_index() {
        return Err(Error::InvalidParameters(format!("need i < k, got i={i}, k={k}")));
    }
    let g = g_graph(n, k, i)?;
    let search = automorphism_search(&g, &vec![0; g.order()], ctx.search_options())?;
    let order = search.group.order();
    if order != search.order_from_orbits() {
        return Err(Error::HypothesisFailed("orbit product disagrees with the stabilizer chain".into()));
    }
    let formula = centralizer_order_formula(n, i);
    let verdict = if order == formula { Verdict::Pass } else { Verdict::Fail };
    let structure = format!("(Z_2^{i} ⋊ S_{i}) × S_{}", n - 2 * i);
    Ok(json!({
        "n": n,
        "k": k,
        "i": i,
        "computed": big_json(&order),
        "formula": big_json(&formula),
        "verdict": verdict,
        "group": search.group.report(Some(structure)),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChromaMode {
    Exact,
    Constructive,
    Both,
}

/// The report and the best coloring found.
pub fn chroma_report(ctx: &Context, n: usize, k: usize, i: usize, mode: ChromaMode) -> Result<(Value, Coloring)> {
    let idx = FamilyIndex::new(n, k, i)?;
    if !idx.is_simple_index() {
        return Err(Error::InvalidParameters(format!("need i < k, got i={i}, k={k}")));
    }
    let target = n - 2 * k + 2;
    let g = g_graph(n, k, i)?;
    let mut out = json!({ "n": n, "k": k, "i": i, "expected": target });
    let mut verdict = Verdict::Pass;
    let mut best = None;
    let mut exact_settled = false;
    if mode != ChromaMode::Constructive {
        let r = chromatic_number_exact(&g, None, ctx.budgets.coloring_nodes)?;
        out["exact"] = json!({ "lower": r.lower, "upper": r.upper, "exact": r.exact, "nodes": r.nodes });
        match r.value() {
            Some(chi) if chi != target => verdict = Verdict::Fail,
            Some(_) => exact_settled = true,
            None => verdict = Verdict::Inconclusive,
        }
        if r.lower > target || r.upper < target {
            verdict = Verdict::Fail;
        }
        best = Some(r.coloring);
    }
    if mode != ChromaMode::Exact || !exact_settled {
        let c = layered_coloring(n, k, i)?;
        let proper = is_proper(&g, &c);
        out["constructive"] = json!({ "colors": c.palette_size(), "proper": proper });
        if !proper || c.palette_size() != target {
            verdict = Verdict::Fail;
        }
        best = Some(c);
    }
    out["verdict"] = json!(verdict);
    Ok((out, best.expect("one of the modes ran")))
}

/// Homology of `N(G_i(n,k))` through `depth`, its isomorphism with `N(K(n,k))`, and the
/// connectivity evidence behind the chromatic lower bound.
pub fn ncomplex_report(ctx: &Context, n: usize, k: usize, i: usize, depth: usize) -> Result<Value> {
    let idx = FamilyIndex::new(n, k, i)?;
    if !idx.is_simple_index() {
        return Err(Error::InvalidParameters(format!("need i < k, got i={i}, k={k}")));
    }
    let kc = neighborhood_complex(&g_graph(n, k, i)?)?;
    let lc = neighborhood_complex(&kneser_graph(n, k)?)?;
    let witness = complexes_isomorphic(&kc, &lc, ctx.search_options())?;
    let homology = reduced_homology(&kc, depth, ctx.budgets.simplices)?;
    let m = n as i64 - 2 * k as i64 - 1;
    let evidence = connectivity_evidence(&kc, m, ctx.budgets.simplices, ctx.budgets.tietze_length)?;
    Ok(json!({
        "n": n,
        "k": k,
        "i": i,
        "depth": depth,
        "vertices": kc.vertices().len(),
        "facets": kc.facets().len(),
        "dimension": kc.dimension(),
        "isomorphic_to_kneser_complex": witness.is_some(),
        "homology": homology,
        "connectivity": evidence,
        "lovasz_bound": lovasz_bound(m),
    }))
}
