//! Centralizers in `S_n`, the map `Φ: Z_2^m ⋊ S_m -> Z_{S_2m}(τ)`, and the
//! product embedding `Z_2 × Aut(G) -> Aut(K_2 × G)`.

use num_bigint::BigUint;

use super::canon::{automorphism_group_with, SearchOptions};
use super::group::PermutationGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::graph::{categorical_product, complete_graph, Graph};

/// Exact order of the group generated by `generators` on `degree` points.
pub fn group_order(degree: usize, generators: &[Permutation]) -> Result<BigUint> {
    Ok(PermutationGroup::new(degree, generators.to_vec())?.order())
}

/// Number of 2-cycles of an involution.
pub fn involution_class_index(sigma: &Permutation) -> Result<usize> {
    if !sigma.is_involution() {
        return Err(Error::NotInvolution);
    }
    Ok(sigma.cycles().len())
}

/// `Z_{S_n}(σ)` from explicit generators: for each cycle length, a rotation of
/// one cycle plus aligned swaps and shifts of the cycles of that length.
pub fn centralizer_in_symmetric(n: usize, sigma: &Permutation) -> Result<PermutationGroup> {
    if sigma.degree() != n {
        return Err(Error::InvalidParameters(format!(
            "permutation of degree {} in S_{n}",
            sigma.degree()
        )));
    }
    let mut all_cycles: Vec<Vec<usize>> = sigma.cycles();
    all_cycles.extend((0..n).filter(|&x| sigma.fixes(x)).map(|x| vec![x]));
    let mut by_len: std::collections::BTreeMap<usize, Vec<Vec<usize>>> = Default::default();
    for c in all_cycles {
        by_len.entry(c.len()).or_default().push(c);
    }
    let mut gens = Vec::new();
    for (len, cycles) in &by_len {
        if *len > 1 {
            let mut images: Vec<usize> = (0..n).collect();
            for (j, &x) in cycles[0].iter().enumerate() {
                images[x] = cycles[0][(j + 1) % len];
            }
            gens.push(Permutation::from_images(images)?);
        }
        let r = cycles.len();
        if r > 1 {
            let mut swap: Vec<usize> = (0..n).collect();
            for j in 0..*len {
                swap[cycles[0][j]] = cycles[1][j];
                swap[cycles[1][j]] = cycles[0][j];
            }
            gens.push(Permutation::from_images(swap)?);
        }
        if r > 2 {
            let mut shift: Vec<usize> = (0..n).collect();
            for c in 0..r {
                for j in 0..*len {
                    shift[cycles[c][j]] = cycles[(c + 1) % r][j];
                }
            }
            gens.push(Permutation::from_images(shift)?);
        }
    }
    gens.retain(|g| !g.is_identity());
    PermutationGroup::new(n, gens)
}

/// Every permutation of `0..n` commuting with `σ`, by exhaustive enumeration.
pub fn centralizer_by_enumeration(n: usize, sigma: &Permutation) -> Result<Vec<Permutation>> {
    if n > 10 {
        return Err(Error::BudgetExceeded {
            what: "symmetric group enumeration",
            limit: 10,
        });
    }
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        let p = Permutation::from_images(images.clone())?;
        if p.commutes_with(sigma) {
            out.push(p);
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    Ok(out)
}

/// `|Z_{S_n}(σ_m)|` for every `m ≤ n/2`, from a single pass over `S_n`.
pub fn centralizer_counts_by_enumeration(n: usize) -> Result<Vec<u64>> {
    if n > 10 {
        return Err(Error::BudgetExceeded {
            what: "symmetric group enumeration",
            limit: 10,
        });
    }
    let sigmas: Vec<Vec<usize>> = (0..=n / 2)
        .map(|m| (0..n).map(|x| if x < 2 * m { x ^ 1 } else { x }).collect())
        .collect();
    let mut counts = vec![0u64; sigmas.len()];
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        for (m, s) in sigmas.iter().enumerate() {
            if (0..n).all(|x| p[s[x]] == s[p[x]]) {
                counts[m] += 1;
            }
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    Ok(counts)
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `2^m · m! · (n − 2m)!`.
pub fn centralizer_order_formula(n: usize, m: usize) -> BigUint {
    let fact = |x: usize| (1..=x).fold(BigUint::from(1u32), |acc, y| acc * y);
    (BigUint::from(1u32) << m) * fact(m) * fact(n - 2 * m)
}

/// `τ = (1, m+1)(2, m+2)⋯(m, 2m)` on `2m` points.
pub fn block_swap(m: usize) -> Permutation {
    Permutation::from_images((0..2 * m).map(|x| (x + m) % (2 * m)).collect()).unwrap()
}

/// `ε_1^{x_1}⋯ε_m^{x_m} σ̃` with `ε_j = (j, m+j)` and `σ̃` acting on both blocks.
pub fn phi_embedding(x: &[bool], sigma: &Permutation) -> Result<Permutation> {
    let m = x.len();
    if m == 0 || sigma.degree() != m {
        return Err(Error::InvalidParameters(format!(
            "bit vector of length {m} with a permutation of degree {}",
            sigma.degree()
        )));
    }
    let images = (0..2 * m)
        .map(|p| {
            let (block, j) = (p / m, p % m);
            let s = sigma.apply(j);
            let block = if x[s] { 1 - block } else { block };
            block * m + s
        })
        .collect();
    Permutation::from_images(images)
}

/// Semidirect product law `(x, σ)(y, ρ) = (x + φ(σ)y, σρ)` with `φ(σ)y = y∘σ^{-1}`.
pub fn semidirect_multiply(
    (x, sigma): (&[bool], &Permutation),
    (y, rho): (&[bool], &Permutation),
) -> (Vec<bool>, Permutation) {
    let m = x.len();
    let mut z = x.to_vec();
    for i in 0..m {
        z[sigma.apply(i)] ^= y[i];
    }
    (z, sigma.compose(rho))
}

/// The map `(ι, f) ↦ ι × f` together with the order comparison deciding whether it is onto.
#[derive(Clone, Debug)]
pub struct StarMonomorphism {
    pub base_order: usize,
    pub base_group: PermutationGroup,
    pub cover_group: PermutationGroup,
    pub surjective: bool,
}

impl StarMonomorphism {
    pub fn compute(g: &Graph, opts: SearchOptions) -> Result<Self> {
        let base_group = automorphism_group_with(g, opts)?;
        let cover = categorical_product(&complete_graph(2), g);
        let cover_group = automorphism_group_with(&cover, opts)?;
        let star = StarMonomorphism {
            base_order: g.order(),
            base_group,
            cover_group,
            surjective: false,
        };
        let image_gens: Vec<Permutation> = std::iter::once(star.embed(true, &Permutation::identity(g.order())))
            .chain(star.base_group.generators().iter().map(|f| star.embed(false, f)))
            .collect();
        for p in &image_gens {
            if !star.cover_group.contains(p) {
                return Err(Error::HypothesisFailed(format!("ι × f = {p} is not an automorphism")));
            }
        }
        let doubled = star.base_group.order() * 2u32;
        let surjective = doubled == star.cover_group.order();
        Ok(StarMonomorphism { surjective, ..star })
    }

    /// `ι × f` on `K_2 × G`, with `ι` the layer swap when `flag` is set.
    pub fn embed(&self, flag: bool, f: &Permutation) -> Permutation {
        let n = self.base_order;
        let images = (0..2 * n)
            .map(|x| {
                let layer = x / n;
                let layer = if flag { 1 - layer } else { layer };
                layer * n + f.apply(x % n)
            })
            .collect();
        Permutation::from_images(images).unwrap()
    }

    pub fn domain_order(&self) -> BigUint {
        self.base_group.order() * 2u32
    }
}

pub fn star_monomorphism(g: &Graph) -> Result<StarMonomorphism> {
    StarMonomorphism::compute(g, SearchOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::kneser_graph;
    use std::collections::BTreeSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn sigma_m(m: usize, n: usize) -> Permutation {
        let pairs: Vec<[usize; 2]> = (0..m).map(|j| [2 * j, 2 * j + 1]).collect();
        let refs: Vec<&[usize]> = pairs.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs).unwrap()
    }

    #[test]
    fn group_order_small_cases() {
        let n = 5;
        assert_eq!(group_order(n, &[p("(1,2)", n), p("(1,2,3,4,5)", n)]).unwrap(), 120u32.into());
        assert_eq!(group_order(n, &[]).unwrap(), 1u32.into());
        let z = centralizer_in_symmetric(4, &p("(1,2)(3,4)", 4)).unwrap();
        assert_eq!(group_order(4, z.generators()).unwrap(), 8u32.into());
    }

    #[test]
    fn class_index() {
        assert_eq!(involution_class_index(&Permutation::identity(5)).unwrap(), 0);
        assert_eq!(involution_class_index(&p("(1,3)(2,4)", 5)).unwrap(), 2);
        assert_eq!(involution_class_index(&p("(1,2)(3,4)(5,6)", 6)).unwrap(), 3);
        assert!(involution_class_index(&p("(1,2,3)", 3)).is_err());
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_in_symmetric(4, &p("(1,2)(3,4)", 4)).unwrap().order(), 8u32.into());
        assert_eq!(centralizer_in_symmetric(5, &p("(1,2)", 5)).unwrap().order(), 12u32.into());
        assert_eq!(centralizer_in_symmetric(5, &Permutation::identity(5)).unwrap().order(), 120u32.into());
    }

    #[test]
    fn centralizer_matches_enumeration_and_formula() {
        for n in 1..=8 {
            for m in 0..=n / 2 {
                let s = sigma_m(m, n);
                let brute = centralizer_by_enumeration(n, &s).unwrap();
                let built = centralizer_in_symmetric(n, &s).unwrap();
                assert_eq!(BigUint::from(brute.len()), built.order(), "n={n} m={m}");
                assert_eq!(built.order(), centralizer_order_formula(n, m));
                assert!(brute.iter().all(|g| built.contains(g)));
            }
        }
    }

    #[test]
    fn single_pass_counts() {
        let counts = centralizer_counts_by_enumeration(6).unwrap();
        let expect: Vec<u64> = (0..=3)
            .map(|m| centralizer_by_enumeration(6, &sigma_m(m, 6)).unwrap().len() as u64)
            .collect();
        assert_eq!(counts, expect);
    }

    #[test]
    fn centralizer_of_general_permutation() {
        let s = p("(1,2,3)(4,5,6)(7,8)", 9);
        let brute = centralizer_by_enumeration(9, &s).unwrap();
        let built = centralizer_in_symmetric(9, &s).unwrap();
        assert_eq!(BigUint::from(brute.len()), built.order());
        assert_eq!(brute.len(), 3 * 3 * 2 * 2);
    }

    #[test]
    fn phi_examples() {
        let id2 = Permutation::identity(2);
        assert!(phi_embedding(&[false, false], &id2).unwrap().is_identity());
        let e1 = phi_embedding(&[true, false], &id2).unwrap();
        assert_eq!(e1.to_cycle_string(), "(1,3)");
        assert!(e1.commutes_with(&p("(1,3)(2,4)", 4)));
        assert!(phi_embedding(&[], &Permutation::identity(0)).is_err());
    }

    fn all_pairs(m: usize) -> Vec<(Vec<bool>, Permutation)> {
        let perms = centralizer_by_enumeration(m, &Permutation::identity(m)).unwrap();
        let mut out = Vec::new();
        for bits in 0..1u32 << m {
            let x: Vec<bool> = (0..m).map(|j| bits >> j & 1 == 1).collect();
            for s in &perms {
                out.push((x.clone(), s.clone()));
            }
        }
        out
    }

    #[test]
    fn phi_is_a_bijection_onto_the_centralizer_of_tau() {
        for m in 1..=4 {
            let tau = block_swap(m);
            let brute: BTreeSet<Permutation> = centralizer_by_enumeration(2 * m, &tau).unwrap().into_iter().collect();
            let image: BTreeSet<Permutation> = all_pairs(m)
                .iter()
                .map(|(x, s)| phi_embedding(x, s).unwrap())
                .collect();
            assert_eq!(image.len(), (1 << m) * (1..=m).product::<usize>(), "injective at m={m}");
            assert_eq!(image, brute, "onto at m={m}");
        }
    }

    #[test]
    fn phi_is_a_homomorphism() {
        for m in 1..=3 {
            let pairs = all_pairs(m);
            for a in &pairs {
                for b in &pairs {
                    let (z, r) = semidirect_multiply((&a.0, &a.1), (&b.0, &b.1));
                    let lhs = phi_embedding(&z, &r).unwrap();
                    let rhs = phi_embedding(&a.0, &a.1)
                        .unwrap()
                        .compose(&phi_embedding(&b.0, &b.1).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn star_on_petersen_is_onto() {
        let star = star_monomorphism(&kneser_graph(5, 2).unwrap()).unwrap();
        assert!(star.surjective);
        assert_eq!(star.cover_group.order(), 240u32.into());
    }

    #[test]
    fn star_on_k4_matches_cube_count() {
        // K_2 × K_4 is the 3-cube; count its automorphisms directly
        let cover = categorical_product(&complete_graph(2), &complete_graph(4));
        let all = centralizer_by_enumeration(8, &Permutation::identity(8)).unwrap();
        let brute = all.iter().filter(|g| cover.is_automorphism(g.images())).count();
        assert_eq!(brute, 48);
        let star = star_monomorphism(&complete_graph(4)).unwrap();
        assert_eq!(star.cover_group.order(), BigUint::from(brute));
        assert_eq!(star.domain_order(), 48u32.into());
        assert!(star.surjective);
    }

    #[test]
    fn star_verdicts_on_small_graphs() {
        // K_2 × K_3 is the hexagon: 12 automorphisms against 2 · 6
        let star = star_monomorphism(&complete_graph(3)).unwrap();
        assert_eq!(star.cover_group.order(), 12u32.into());
        assert!(star.surjective);
        // four isolated vertices
        let star = star_monomorphism(&Graph::empty(2)).unwrap();
        assert_eq!(star.cover_group.order(), 24u32.into());
        assert!(!star.surjective);
    }
}
