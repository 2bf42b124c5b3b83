//! Verification reports, the claim registry and its runner.
//!
//! Every claim expands into tasks over a parameter grid. Tasks run on a
//! bounded worker pool and their reports are released in registry order, so
//! the output stream is the same for any worker count.

mod claims;
mod commands;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::cache::CanonCache;
use crate::cover::GraphMap;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symmetry::{isomorphism_from_forms, CanonicalForm, SearchOptions};

pub use claims::{build_tasks, claim_location, CLAIMS};
pub use commands::{aut_report, chroma_report, classify_report, ncomplex_report, ChromaMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: &'static str,
    pub location: &'static str,
    pub params: Value,
    pub expected: Value,
    pub provenance: String,
    pub computed: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub wall_ms: u64,
}

impl VerificationReport {
    /// The JSON line without the timing field.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report json");
        v.as_object_mut().unwrap().remove("wall_ms");
        v.to_string()
    }
}

/// What a task computed; the verdict defaults to `expected == computed`.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub expected: Value,
    pub provenance: String,
    pub computed: Value,
    pub verdict: Option<Verdict>,
    pub note: Option<String>,
}

impl Outcome {
    pub fn compare(expected: Value, provenance: impl Into<String>, computed: Value) -> Self {
        Outcome {
            expected,
            provenance: provenance.into(),
            computed,
            verdict: None,
            note: None,
        }
    }

    pub fn with_verdict(mut self, v: Verdict) -> Self {
        self.verdict = Some(v);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

type Job = Box<dyn Fn(&Context) -> Result<Outcome> + Send + Sync>;

pub struct Task {
    pub claim: &'static str,
    pub params: Value,
    job: Job,
}

impl Task {
    pub fn new(claim: &'static str, params: Value, job: impl Fn(&Context) -> Result<Outcome> + Send + Sync + 'static) -> Self {
        Task {
            claim,
            params,
            job: Box::new(job),
        }
    }

    pub fn run(&self, ctx: &Context) -> VerificationReport {
        let start = Instant::now();
        let outcome = (self.job)(ctx);
        let wall_ms = start.elapsed().as_millis() as u64;
        let (expected, provenance, computed, verdict, note) = match outcome {
            Ok(o) => {
                let verdict = o.verdict.unwrap_or(if o.expected == o.computed {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                });
                (o.expected, o.provenance, o.computed, verdict, o.note)
            }
            Err(e) => {
                let verdict = if e.is_budget() { Verdict::Inconclusive } else { Verdict::Fail };
                (Value::Null, String::new(), Value::Null, verdict, Some(e.to_string()))
            }
        };
        VerificationReport {
            claim: self.claim,
            location: claim_location(self.claim),
            params: self.params.clone(),
            expected,
            provenance,
            computed,
            verdict,
            note,
            wall_ms,
        }
    }
}

/// Resource caps; exceeding one makes a claim inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub canon_vertices: usize,
    pub canon_nodes: u64,
    pub coloring_nodes: u64,
    pub simplices: u64,
    pub tietze_length: usize,
    pub group_elements: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            canon_vertices: 256,
            canon_nodes: 20_000_000,
            coloring_nodes: crate::coloring::DEFAULT_NODE_BUDGET,
            simplices: crate::ncomplex::DEFAULT_SIMPLEX_BUDGET,
            tietze_length: 200_000,
            group_elements: crate::cover::DEFAULT_ELEMENT_LIMIT,
        }
    }
}

/// Pairs `(n, k)` with `2 ≤ k ≤ max_k` and `2k < n ≤ max_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { max_n: 7, max_k: 3 }
    }
}

impl Grid {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n in 5..=self.max_n {
            for k in 2..=self.max_k {
                if n > 2 * k {
                    out.push((n, k));
                }
            }
        }
        out
    }
}

pub struct Context {
    pub budgets: Budgets,
    pub cache: CanonCache,
}

impl Context {
    pub fn new(budgets: Budgets, cache: CanonCache) -> Self {
        Context { budgets, cache }
    }

    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            max_vertices: self.budgets.canon_vertices,
            max_nodes: self.budgets.canon_nodes,
        }
    }

    pub fn canonical_form(&self, g: &Graph) -> Result<CanonicalForm> {
        self.cache.canonical_form_plain(g, self.search_options())
    }

    /// A verified isomorphism, using cached canonical forms.
    pub fn isomorphism(&self, g: &Graph, h: &Graph) -> Result<Option<GraphMap>> {
        if g.order() != h.order() || g.degree_sequence() != h.degree_sequence() {
            return Ok(None);
        }
        let (cg, ch) = (self.canonical_form(g)?, self.canonical_form(h)?);
        isomorphism_from_forms(g, h, &cg, &ch)
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::new(Budgets::default(), CanonCache::disabled())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
    }
}

/// True when `claim` is `filter` or lies under it (`thm2` selects `thm2.order`).
pub fn claim_matches(claim: &str, filter: &str) -> bool {
    claim == filter || claim.strip_prefix(filter).is_some_and(|rest| rest.starts_with('.'))
}

pub fn select_tasks(tasks: Vec<Task>, only: &[String]) -> Vec<Task> {
    if only.is_empty() {
        return tasks;
    }
    tasks
        .into_iter()
        .filter(|t| only.iter().any(|f| claim_matches(t.claim, f)))
        .collect()
}

/// Runs `tasks` on `jobs` workers, handing reports to `sink` in task order.
pub fn run_tasks(tasks: &[Task], ctx: &Context, jobs: usize, mut sink: impl FnMut(&VerificationReport)) -> Summary {
    let mut summary = Summary::default();
    if jobs <= 1 {
        for t in tasks {
            let r = t.run(ctx);
            summary.add(r.verdict);
            sink(&r);
        }
        return summary;
    }
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, VerificationReport)>();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(tasks.len().max(1)) {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                let Some(task) = tasks.get(j) else { break };
                if tx.send((j, task.run(ctx))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut emit = 0;
        for (j, r) in rx {
            pending.insert(j, r);
            while let Some(r) = pending.remove(&emit) {
                summary.add(r.verdict);
                sink(&r);
                emit += 1;
            }
        }
    });
    summary
}

pub(crate) fn budget_error(what: &'static str, limit: u64) -> Error {
    Error::BudgetExceeded { what, limit }
}
