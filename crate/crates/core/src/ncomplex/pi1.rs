//! Edge-path group presentations from a 2-skeleton and a bounded Tietze
//! simplification.
//!
//! Generators are the edges outside a BFS spanning tree; each triangle gives
//! one relator. Letters are `±(g + 1)`.

use std::collections::VecDeque;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TietzeOutcome {
    pub trivial: bool,
    pub generators_left: usize,
    pub relators_left: usize,
    pub eliminations: usize,
}

impl Presentation {
    pub fn from_two_skeleton(vertices: &[Vec<usize>], edges: &[Vec<usize>], triangles: &[Vec<usize>]) -> Self {
        let n = vertices.len();
        let idx = |v: usize| vertices.binary_search(&vec![v]).expect("vertex of the skeleton");
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, uv) in edges.iter().enumerate() {
            let (a, b) = (idx(uv[0]), idx(uv[1]));
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut in_tree = vec![false; edges.len()];
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                for &(b, e) in &adj[a] {
                    if !seen[b] {
                        seen[b] = true;
                        in_tree[e] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        let mut gen_of = vec![None; edges.len()];
        let mut generators = 0;
        for e in 0..edges.len() {
            if !in_tree[e] {
                gen_of[e] = Some(generators as i32 + 1);
                generators += 1;
            }
        }
        let letter = |a: usize, b: usize| -> Option<i32> {
            let e = edges.binary_search(&vec![a, b]).expect("triangle edge");
            gen_of[e]
        };
        let relators = triangles
            .iter()
            .map(|t| {
                // a→b→c→a with a<b<c
                let (a, b, c) = (t[0], t[1], t[2]);
                [letter(a, b), letter(b, c), letter(a, c).map(|g| -g)]
                    .into_iter()
                    .flatten()
                    .collect()
            })
            .collect();
        Presentation { generators, relators }
    }
}

fn reduce(word: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &x in word.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    *word = out;
}

fn invert(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&x| -x).collect()
}

/// Eliminates generators that occur exactly once in some relator, shortest
/// relators first, until none is left or the total relator length passes `budget`.
pub fn simplify_presentation(mut p: Presentation, budget: usize) -> TietzeOutcome {
    let mut alive = vec![true; p.generators];
    let mut eliminations = 0;
    for r in &mut p.relators {
        reduce(r);
    }
    loop {
        p.relators.retain(|r| !r.is_empty());
        p.relators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        p.relators.dedup();
        let total: usize = p.relators.iter().map(Vec::len).sum();
        if total > budget {
            break;
        }
        let mut pick = None;
        'search: for (ri, r) in p.relators.iter().enumerate() {
            for (pos, &x) in r.iter().enumerate() {
                let g = x.unsigned_abs();
                if r.iter().filter(|y| y.unsigned_abs() == g).count() == 1 {
                    pick = Some((ri, pos));
                    break 'search;
                }
            }
        }
        let Some((ri, pos)) = pick else { break };
        let r = p.relators.swap_remove(ri);
        let x = r[pos];
        // r = u x v = 1 gives x = u^-1 v^-1
        let value = {
            let mut w = invert(&r[..pos]);
            w.extend(invert(&r[pos + 1..]));
            w
        };
        let (g, value) = if x > 0 { (x, value) } else { (-x, invert(&value)) };
        let value_inv = invert(&value);
        for rel in &mut p.relators {
            if rel.iter().any(|y| y.abs() == g) {
                let mut next = Vec::with_capacity(rel.len() + value.len());
                for &y in rel.iter() {
                    if y == g {
                        next.extend_from_slice(&value);
                    } else if y == -g {
                        next.extend_from_slice(&value_inv);
                    } else {
                        next.push(y);
                    }
                }
                reduce(&mut next);
                *rel = next;
            }
        }
        alive[(g - 1) as usize] = false;
        eliminations += 1;
    }
    let generators_left = alive.iter().filter(|a| **a).count();
    TietzeOutcome {
        trivial: generators_left == 0,
        generators_left,
        relators_left: p.relators.len(),
        eliminations,
    }
}
