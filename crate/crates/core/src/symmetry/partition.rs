//! Ordered partitions of the vertex set and equitable refinement.
//!
//! Everything here depends only on cell positions and neighbor counts, never on
//! vertex ids, so refinement commutes with relabeling. The search in `canon`
//! relies on that.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

#[inline]
pub(crate) fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(FNV_PRIME)
}

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    /// Vertices arranged cell by cell.
    pub order: Vec<usize>,
    /// Position of each vertex in `order`.
    pub pos: Vec<usize>,
    /// Start of the cell containing each position.
    pub cell: Vec<usize>,
    /// End (exclusive) of the cell starting at each start position.
    pub end: Vec<usize>,
    pub cells: usize,
}

impl Partition {
    /// Cells are the color classes, in increasing color order.
    pub fn from_colors(colors: &[u64]) -> Self {
        let n = colors.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        let mut cell = vec![0; n];
        let mut end = vec![0; n];
        let mut cells = 0;
        let mut start = 0;
        for p in 0..n {
            pos[order[p]] = p;
            if p > 0 && colors[order[p]] != colors[order[p - 1]] {
                end[start] = p;
                start = p;
            }
            if p == start {
                cells += 1;
            }
            cell[p] = start;
        }
        if n > 0 {
            end[start] = n;
        }
        Partition {
            order,
            pos,
            cell,
            end,
            cells,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.order.len()
    }

    pub fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.len() {
            out.push(s);
            s = self.end[s];
        }
        out
    }

    /// First smallest non-singleton cell, by start position.
    pub fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.len() {
            let size = self.end[s] - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
            }
            s = self.end[s];
        }
        best.map(|(s, _)| s)
    }

    pub fn cell_members(&self, start: usize) -> &[usize] {
        &self.order[start..self.end[start]]
    }

    /// Splits `v` off the front of its cell and refines. Returns the trace.
    pub fn individualize(&mut self, g: &Graph, v: usize) -> u64 {
        let p = self.pos[v];
        let s = self.cell[p];
        let e = self.end[s];
        debug_assert!(e - s > 1);
        let other = self.order[s];
        self.order.swap(s, p);
        self.pos[other] = p;
        self.pos[v] = s;
        self.end[s] = s + 1;
        self.end[s + 1] = e;
        for q in s + 1..e {
            self.cell[q] = s + 1;
        }
        self.cells += 1;
        let trace = mix(0xcbf2_9ce4_8422_2325, s as u64);
        self.refine(g, VecDeque::from([s]), trace)
    }

    /// Refines every cell against every other until equitable.
    pub fn refine_all(&mut self, g: &Graph) -> u64 {
        let queue: VecDeque<usize> = self.cell_starts().into();
        self.refine(g, queue, 0xcbf2_9ce4_8422_2325)
    }

    fn refine(&mut self, g: &Graph, mut queue: VecDeque<usize>, mut trace: u64) -> u64 {
        let n = self.len();
        let mut queued = vec![false; n];
        for &s in &queue {
            queued[s] = true;
        }
        let mut splitter = FixedBitSet::with_capacity(n);
        let mut count = vec![0usize; n];
        while let Some(ws) = queue.pop_front() {
            queued[ws] = false;
            if self.is_discrete() {
                break;
            }
            splitter.clear();
            for &v in &self.order[ws..self.end[ws]] {
                splitter.insert(v);
            }
            let mut s = 0;
            while s < n {
                let e = self.end[s];
                if e - s > 1 {
                    let members = &self.order[s..e];
                    for &v in members {
                        count[v] = g.row(v).intersection_count(&splitter);
                    }
                    let first = count[members[0]];
                    if members.iter().any(|&v| count[v] != first) {
                        trace = self.split(s, e, &count, &mut queue, &mut queued, trace);
                    }
                }
                s = e;
            }
        }
        mix(trace, self.cells as u64)
    }

    fn split(
        &mut self,
        s: usize,
        e: usize,
        count: &[usize],
        queue: &mut VecDeque<usize>,
        queued: &mut [bool],
        mut trace: u64,
    ) -> u64 {
        self.order[s..e].sort_unstable_by_key(|&v| (count[v], v));
        trace = mix(trace, s as u64);
        let mut fs = s;
        while fs < e {
            let c = count[self.order[fs]];
            let mut fe = fs + 1;
            while fe < e && count[self.order[fe]] == c {
                fe += 1;
            }
            for q in fs..fe {
                self.cell[q] = fs;
                self.pos[self.order[q]] = q;
            }
            self.end[fs] = fe;
            trace = mix(mix(trace, c as u64), (fe - fs) as u64);
            if fs != s {
                self.cells += 1;
            }
            if !queued[fs] {
                queued[fs] = true;
                queue.push_back(fs);
            }
            fs = fe;
        }
        trace
    }
}
