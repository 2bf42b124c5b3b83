use serde::Serialize;

use super::pi1::{simplify_presentation, Presentation};
use super::snf::{smith_summary, SparseMatrix};
use super::SimplicialComplex;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionHomology {
    pub dim: usize,
    pub betti: usize,
    pub torsion: Vec<String>,
}

impl DimensionHomology {
    pub fn vanishes(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Reduced integer homology in dimensions `0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub dims: Vec<DimensionHomology>,
    /// Simplex counts `f_0..f_{d+1}`.
    pub face_counts: Vec<usize>,
}

impl HomologyReport {
    pub fn vanishes_through(&self, j: usize) -> bool {
        self.dims.iter().take(j + 1).all(DimensionHomology::vanishes)
    }
}

fn boundary(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> SparseMatrix {
    let mut m = SparseMatrix::new(lower.len(), upper.len());
    for (c, s) in upper.iter().enumerate() {
        for skip in 0..s.len() {
            let face: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect();
            let r = lower.binary_search(&face).expect("faces are closed downward");
            m.set(r, c, if skip % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Reduced homology `H̃_0..H̃_d` from boundary matrices up to `∂_{d+1}`.
pub fn reduced_homology(k: &SimplicialComplex, d: usize, budget: u64) -> Result<HomologyReport> {
    let faces = k.simplices_up_to(d + 1, budget)?;
    let counts: Vec<usize> = faces.iter().map(Vec::len).collect();
    // ranks[j] is the rank of ∂_j, with ∂_0 the augmentation
    let mut ranks = vec![usize::from(counts[0] > 0)];
    let mut torsion = vec![Vec::new()];
    for j in 1..=d + 1 {
        let s = smith_summary(&boundary(&faces[j - 1], &faces[j]));
        ranks.push(s.rank);
        torsion.push(s.torsion.iter().map(ToString::to_string).collect());
    }
    let dims = (0..=d)
        .map(|j| DimensionHomology {
            dim: j,
            betti: counts[j] - ranks[j] - ranks[j + 1],
            torsion: torsion[j + 1].clone(),
        })
        .collect();
    Ok(HomologyReport {
        dims,
        face_counts: counts,
    })
}

/// `Σ (−1)^j f_j`, checked against the alternating sum of reduced Betti numbers.
pub fn euler_characteristic(k: &SimplicialComplex, budget: u64) -> Result<i64> {
    let Some(top) = k.dimension() else {
        return Ok(0);
    };
    let h = reduced_homology(k, top, budget)?;
    let alt = |xs: &mut dyn Iterator<Item = usize>| {
        xs.enumerate()
            .map(|(j, x)| if j % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum::<i64>()
    };
    let chi = alt(&mut h.face_counts.iter().copied());
    let reduced = alt(&mut h.dims.iter().map(|d| d.betti));
    if chi - 1 != reduced {
        return Err(Error::HypothesisFailed(format!(
            "Euler characteristic {chi} disagrees with homology ranks {reduced} + 1"
        )));
    }
    Ok(chi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pi1Verdict {
    Verified,
    Inconclusive,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityEvidence {
    pub m: i64,
    pub nonempty: bool,
    pub connected: bool,
    pub homology_vanishes_to_m: bool,
    pub pi1_trivial: Pi1Verdict,
    pub homology: Option<HomologyReport>,
    /// `proved`, `consistent` or `refuted`.
    pub tier: &'static str,
}

impl ConnectivityEvidence {
    pub fn is_refuted(&self) -> bool {
        self.tier == "refuted"
    }
}

fn one_skeleton_connected(k: &SimplicialComplex, edges: &[Vec<usize>]) -> bool {
    let n = k.vertices().len();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let idx = |v: usize| k.vertices().binary_search(&v).unwrap();
    let mut comps = n;
    for e in edges {
        let (a, b) = (find(&mut parent, idx(e[0])), find(&mut parent, idx(e[1])));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps == 1
}

/// Graded evidence that `K` is `m`-connected.
pub fn connectivity_evidence(
    k: &SimplicialComplex,
    m: i64,
    simplex_budget: u64,
    tietze_budget: usize,
) -> Result<ConnectivityEvidence> {
    if m < -1 {
        return Err(Error::InvalidParameters(format!("connectivity level {m} < -1")));
    }
    let nonempty = !k.is_empty();
    let skeleton = k.simplices_up_to(2, simplex_budget)?;
    let connected = one_skeleton_connected(k, &skeleton[1]);
    let homology = if m >= 1 {
        Some(reduced_homology(k, m as usize, simplex_budget)?)
    } else {
        None
    };
    let homology_vanishes_to_m = homology
        .as_ref()
        .is_none_or(|h| h.dims.iter().skip(1).all(|d| d.vanishes()));
    let pi1_trivial = if m >= 1 && connected {
        let p = Presentation::from_two_skeleton(&skeleton[0], &skeleton[1], &skeleton[2]);
        if simplify_presentation(p, tietze_budget).trivial {
            Pi1Verdict::Verified
        } else {
            Pi1Verdict::Inconclusive
        }
    } else {
        Pi1Verdict::Skipped
    };
    let tier = match m {
        -1 if nonempty => "proved",
        -1 => "refuted",
        _ if !connected || !homology_vanishes_to_m => "refuted",
        0 => "proved",
        1 if pi1_trivial == Pi1Verdict::Verified => "proved",
        _ => "consistent",
    };
    Ok(ConnectivityEvidence {
        m,
        nonempty,
        connected,
        homology_vanishes_to_m,
        pi1_trivial,
        homology,
        tier,
    })
}
