//! Proper colorings, an exact chromatic-number solver and the inductive
//! coloring of `G_i(n,k)` with `n − 2k + 2` colors.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::subset::binomial;
use crate::graph::Graph;
use crate::kneser::g_graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    assignment: Vec<usize>,
    palette_size: usize,
    #[serde(skip)]
    allow_empty: bool,
}

impl Coloring {
    /// Every color in `0..palette_size` must be used.
    pub fn new(assignment: Vec<usize>, palette_size: usize) -> Result<Self> {
        Self::build(assignment, palette_size, false)
    }

    pub fn with_empty_classes(assignment: Vec<usize>, palette_size: usize) -> Result<Self> {
        Self::build(assignment, palette_size, true)
    }

    fn build(assignment: Vec<usize>, palette_size: usize, allow_empty: bool) -> Result<Self> {
        let mut used = vec![false; palette_size];
        for (v, &c) in assignment.iter().enumerate() {
            if c >= palette_size {
                return Err(Error::InvalidParameters(format!(
                    "vertex {v} has color {c} outside a palette of {palette_size}"
                )));
            }
            used[c] = true;
        }
        if !allow_empty {
            if let Some(c) = used.iter().position(|u| !u) {
                return Err(Error::InvalidParameters(format!("color {c} is unused")));
            }
        }
        Ok(Coloring {
            assignment,
            palette_size,
            allow_empty,
        })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn color(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&v| self.assignment[v] == c).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.assignment).expect("coloring json")
    }

    /// `s col t` followed by one 1-based `l vertex color` line per vertex.
    pub fn to_sol(&self) -> String {
        let mut out = format!("s col {}\n", self.palette_size);
        for (v, &c) in self.assignment.iter().enumerate() {
            writeln!(out, "l {} {}", v + 1, c + 1).unwrap();
        }
        out
    }
}

/// No edge, loops included, joins two vertices of one color.
pub fn is_proper(g: &Graph, c: &Coloring) -> bool {
    c.assignment.len() == g.order() && g.edges().iter().all(|&(u, v)| c.color(u) != c.color(v))
}

/// Size of a greedily grown clique, best over all starting vertices.
pub fn clique_lower_bound(g: &Graph) -> usize {
    let n = g.order();
    let mut best = usize::from(n > 0);
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand = g.row(start).clone();
        cand.set(start, false);
        while let Some(v) = cand
            .ones()
            .max_by_key(|&v| (g.row(v).intersection_count(&cand), std::cmp::Reverse(v)))
        {
            clique.push(v);
            cand.intersect_with(g.row(v));
            cand.set(v, false);
        }
        best = best.max(clique.len());
    }
    best
}

/// Result of the exact search; `exact` is false when the node budget ran out.
#[derive(Clone, Debug, Serialize)]
pub struct ChromaticOutcome {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub nodes: u64,
    pub coloring: Coloring,
}

impl ChromaticOutcome {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

struct Dsatur<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
    /// `conflicts[v][c]`: colored neighbors of `v` with color `c`.
    conflicts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNCOLORED: usize = usize::MAX;

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, palette: usize, budget: u64) -> Self {
        let n = g.order();
        Dsatur {
            g,
            colors: vec![UNCOLORED; n],
            conflicts: vec![vec![0; palette]; n],
            saturation: vec![0; n],
            nodes: 0,
            budget,
        }
    }

    fn pick(&self) -> Option<usize> {
        let g = self.g;
        (0..g.order())
            .filter(|&v| self.colors[v] == UNCOLORED)
            .max_by_key(|&v| {
                let free_deg = g.neighbors(v).filter(|&w| self.colors[w] == UNCOLORED).count();
                (self.saturation[v], free_deg, std::cmp::Reverse(v))
            })
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for w in self.g.neighbors(v) {
            let slot = &mut self.conflicts[w][c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = UNCOLORED;
        for w in self.g.neighbors(v) {
            let slot = &mut self.conflicts[w][c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    /// Colors the rest with colors below `limit`; new colors open in increasing order.
    fn extend(&mut self, used: usize, limit: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let Some(v) = self.pick() else {
            return Some(true);
        };
        for c in 0..(used + 1).min(limit) {
            if self.conflicts[v][c] != 0 {
                continue;
            }
            self.assign(v, c);
            let found = self.extend(used.max(c + 1), limit);
            if found != Some(false) {
                if found.is_none() {
                    self.unassign(v, c);
                }
                return found;
            }
            self.unassign(v, c);
        }
        Some(false)
    }

    /// Greedy DSATUR pass with an unbounded palette.
    fn greedy(g: &Graph) -> Vec<usize> {
        let mut s = Dsatur::new(g, g.order().max(1), u64::MAX);
        while let Some(v) = s.pick() {
            let c = (0..).find(|&c| s.conflicts[v][c] == 0).unwrap();
            s.assign(v, c);
        }
        s.colors
    }
}

fn normalize(assignment: Vec<usize>) -> Coloring {
    let palette = assignment.iter().map(|c| c + 1).max().unwrap_or(0);
    Coloring::new(assignment, palette).expect("dsatur opens colors in order")
}

/// Exact `χ(G)` by saturation-ordered branch and bound, within `budget` search nodes.
pub fn chromatic_number_exact(g: &Graph, upper_hint: Option<usize>, budget: u64) -> Result<ChromaticOutcome> {
    if let Some(&v) = g.loops().first() {
        return Err(Error::HasLoop(v));
    }
    let mut best = normalize(Dsatur::greedy(g));
    let mut lower = clique_lower_bound(g);
    let mut nodes = 0;
    // a hint below the greedy bound is tried first; failing it raises the lower bound
    let mut limits: Vec<usize> = upper_hint
        .filter(|&h| h > lower && h + 1 < best.palette_size())
        .into_iter()
        .collect();
    loop {
        let limit = match limits.pop() {
            Some(h) => h,
            None if best.palette_size() > lower => best.palette_size() - 1,
            None => break,
        };
        let mut s = Dsatur::new(g, limit.max(1), budget.saturating_sub(nodes));
        let found = s.extend(0, limit);
        nodes += s.nodes;
        match found {
            Some(true) => best = normalize(s.colors),
            Some(false) if limit + 1 == best.palette_size() => break,
            Some(false) => lower = lower.max(limit + 1),
            None => {
                return Ok(ChromaticOutcome {
                    lower,
                    upper: best.palette_size(),
                    exact: false,
                    nodes,
                    coloring: best,
                })
            }
        }
    }
    Ok(ChromaticOutcome {
        lower: best.palette_size(),
        upper: best.palette_size(),
        exact: true,
        nodes,
        coloring: best,
    })
}

/// `χ(G)`, or a budget error carrying no bounds.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let out = chromatic_number_exact(g, None, DEFAULT_NODE_BUDGET)?;
    out.value().ok_or(Error::BudgetExceeded {
        what: "coloring search nodes",
        limit: DEFAULT_NODE_BUDGET,
    })
}

/// The coloring of `G_i(n,k)` built along `G_i(2k,k) ⊂ G_i(2k+1,k) ⊂ ⋯ ⊂ G_i(n,k)`:
/// the perfect matching `G_i(2k,k)` gets two colors and every later layer one fresh color.
pub fn layered_coloring(n: usize, k: usize, i: usize) -> Result<Coloring> {
    if k == 0 || n < 2 * k || i >= k {
        return Err(Error::InvalidParameters(format!(
            "need n >= 2k >= 2 and i < k, got n={n}, k={k}, i={i}"
        )));
    }
    let base = g_graph(2 * k, k, i)?;
    let mut assignment = vec![usize::MAX; binomial(n, k) as usize];
    for v in 0..base.order() {
        let mut nbrs = base.neighbors(v);
        let (Some(w), None) = (nbrs.next(), nbrs.next()) else {
            return Err(Error::HypothesisFailed(format!(
                "G_{i}({},{k}) is not a perfect matching at {v}",
                2 * k
            )));
        };
        assignment[v] = usize::from(w < v);
    }
    for m in 2 * k + 1..=n {
        let fresh = m - 2 * k + 1;
        for slot in &mut assignment[binomial(m - 1, k) as usize..binomial(m, k) as usize] {
            *slot = fresh;
        }
    }
    Coloring::new(assignment, n - 2 * k + 2)
}

/// `m + 3` for an `m`-connected neighborhood complex.
pub fn lovasz_bound(m_certified: i64) -> i64 {
    m_certified + 3
}
