//! Permutation groups given by generators, with a stabilizer chain built by the
//! deterministic Schreier–Sims procedure.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::perm::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[x] = Some(u)` iff `x` is in the orbit of `base`, with `u(base) = x`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(s);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    strong: Vec<Permutation>,
}

impl StabChain {
    /// Runs Schreier–Sims; the base starts with `prefix` (in order).
    pub fn new(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
            strong: Vec::new(),
        };
        for g in generators {
            if g.is_identity() || chain.strong.contains(g) {
                continue;
            }
            chain.strong.push(g.clone());
            if chain.levels.iter().all(|l| g.fixes(l.base)) {
                let b = g.first_moved_point().unwrap();
                chain.levels.push(Level::new(b, degree));
            }
        }
        for i in 0..chain.levels.len() {
            chain.reassign(i);
        }
        chain.schreier_sims();
        chain
    }

    fn reassign(&mut self, i: usize) {
        let bases: Vec<usize> = self.levels[..i].iter().map(|l| l.base).collect();
        self.levels[i].gens = self
            .strong
            .iter()
            .filter(|g| bases.iter().all(|&b| g.fixes(b)))
            .cloned()
            .collect();
        self.levels[i].rebuild_orbit();
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level where it stopped.
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(level.base);
            match &level.transversal[beta] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, l),
            }
        }
        let k = self.levels.len();
        (g, k)
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                for s in &gens {
                    let level = &self.levels[lvl];
                    let u_beta = level.transversal[beta].as_ref().unwrap();
                    let u_image = level.transversal[s.apply(beta)].as_ref().unwrap();
                    let schreier = u_beta.then(s).then(&u_image.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(schreier, lvl + 1);
                    if h.is_identity() {
                        continue;
                    }
                    self.strong.push(h.clone());
                    if j == self.levels.len() {
                        let b = h.first_moved_point().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in lvl + 1..=j {
                        self.reassign(l);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    /// Strong generators fixing the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        let bases: Vec<usize> = self.levels.iter().take(depth).map(|l| l.base).collect();
        self.strong
            .iter()
            .filter(|g| bases.iter().all(|&b| g.fixes(b)))
            .cloned()
            .collect()
    }

    fn for_each_element(&self, level: usize, acc: &Permutation, f: &mut dyn FnMut(&Permutation)) {
        if level == self.levels.len() {
            f(acc);
            return;
        }
        for &x in &self.levels[level].orbit {
            let u = self.levels[level].transversal[x].as_ref().unwrap();
            // elements are h then u_level with h in the next stabilizer
            let next = u.then(acc);
            self.for_each_element(level + 1, &next, f);
        }
    }
}

/// A permutation group with its computed order.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidParameters(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::new(degree, &generators, &[]);
        Ok(PermutationGroup {
            degree,
            generators,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::new(degree, Vec::new()).unwrap()
    }

    /// `S_n` on `0..n` generated by `(0 1)` and `(0 1 .. n-1)`.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::transposition(n, 0, 1).unwrap());
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle]).unwrap());
        }
        PermutationGroup::new(n, gens).unwrap()
    }

    /// Group generated by a stream of elements, keeping only those that enlarge it.
    pub fn from_elements<'a>(degree: usize, elements: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut group = PermutationGroup::trivial(degree);
        for e in elements {
            if !group.contains(e) {
                let mut gens = group.generators.clone();
                gens.push(e.clone());
                group = PermutationGroup::new(degree, gens).unwrap();
            }
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.order().to_u128()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// Every element, in stabilizer-chain order. Fails above `limit` elements.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::BudgetExceeded {
                what: "group elements",
                limit,
            });
        }
        let mut out = Vec::with_capacity(order.to_usize().unwrap_or(0));
        self.chain
            .for_each_element(0, &Permutation::identity(self.degree), &mut |p| out.push(p.clone()));
        Ok(out)
    }

    /// Generators of the pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Vec<Permutation> {
        if points.is_empty() {
            return self.chain.strong.clone();
        }
        let chain = StabChain::new(self.degree, &self.chain.strong, points);
        chain.stabilizer_generators(points.len())
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn report(&self, structure: Option<String>) -> GroupReport {
        GroupReport {
            degree: self.degree,
            generators: self.generators.iter().map(Permutation::to_cycle_string).collect(),
            order: self.order().to_string(),
            structure,
        }
    }
}

/// Orbits of the group generated by `gens`, each sorted, ordered by least point.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        buckets[r].push(x);
    }
    buckets.into_iter().filter(|b| !b.is_empty()).collect()
}

/// Machine-readable group summary.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupReport {
    pub degree: usize,
    pub generators: Vec<String>,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    /// Closure by breadth-first multiplication; independent of the chain.
    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::from([Permutation::identity(degree)]);
        let mut frontier = vec![Permutation::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn orders() {
        let s5 = PermutationGroup::new(5, vec![p("(1,2)", 5), p("(1,2,3,4,5)", 5)]).unwrap();
        assert_eq!(s5.order_u128(), Some(120));
        assert_eq!(PermutationGroup::new(5, vec![]).unwrap().order_u128(), Some(1));
        assert_eq!(PermutationGroup::symmetric(7).order_u128(), Some(5040));
        let a4 = PermutationGroup::new(4, vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        assert_eq!(a4.order_u128(), Some(12));
    }

    #[test]
    fn centralizer_generators_of_double_transposition() {
        // Z_{S_4}((1,2)(3,4)) = <(1,2), (1,3)(2,4)>, dihedral of order 8
        let g = PermutationGroup::new(4, vec![p("(1,2)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        assert_eq!(g.order_u128(), Some(8));
    }

    #[test]
    fn order_matches_closure_on_assorted_groups() {
        let cases: Vec<(usize, Vec<&str>)> = vec![
            (6, vec!["(1,2,3)", "(4,5)"]),
            (6, vec!["(1,2)(3,4)", "(1,3)(2,4)", "(5,6)"]),
            (7, vec!["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]),
            (8, vec!["(1,2)(3,4)(5,6)(7,8)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)"]),
            (6, vec!["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"]),
        ];
        for (n, gens) in cases {
            let gens: Vec<Permutation> = gens.iter().map(|s| p(s, n)).collect();
            let group = PermutationGroup::new(n, gens.clone()).unwrap();
            let brute = closure(n, &gens);
            assert_eq!(group.order_u128(), Some(brute.len() as u128));
            let elems: HashSet<Permutation> = group.elements(10_000).unwrap().into_iter().collect();
            assert_eq!(elems, brute);
            for e in &brute {
                assert!(group.contains(e));
            }
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let a4 = PermutationGroup::new(4, vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        assert!(!a4.contains(&p("(1,2)", 4)));
        assert!(a4.contains(&p("(1,2)(3,4)", 4)));
    }

    #[test]
    fn pointwise_stabilizers() {
        let s5 = PermutationGroup::symmetric(5);
        let stab = s5.pointwise_stabilizer(&[0, 1]);
        let g = PermutationGroup::new(5, stab.clone()).unwrap();
        assert_eq!(g.order_u128(), Some(6));
        assert!(stab.iter().all(|s| s.fixes(0) && s.fixes(1)));
        assert_eq!(orbits_of(5, &stab), vec![vec![0], vec![1], vec![2, 3, 4]]);
    }

    #[test]
    fn element_budget() {
        assert!(PermutationGroup::symmetric(8).elements(100).unwrap_err().is_budget());
    }

    #[test]
    fn from_elements_keeps_few_generators() {
        let s4 = PermutationGroup::symmetric(4);
        let elems = s4.elements(100).unwrap();
        let rebuilt = PermutationGroup::from_elements(4, &elems);
        assert_eq!(rebuilt.order_u128(), Some(24));
        assert!(rebuilt.generators().len() <= 4);
    }
}
