//! Degree-profile hypotheses and the exact machinery tied to them: the
//! cover lower bound, the greedy clique procedure inside the high-degree
//! set, and the lexicographically minimal clique selector with its
//! collapsed-constraint check.
//!
//! Everything here compares exact rationals; a hypothesis "holds with
//! equality" is meaningful and tested.

use itertools::Itertools;
use num::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{degree_profile, degree_threshold, DegreeProfile, Graph, Pattern};
use crate::rat::{int, Rat};
use crate::tiling::{fractional_cover_number, FractionalCover, Limits};

/// Parameters of the degree hypothesis: at least
/// `(1+eta) * (r-2+x|V(H)|) * n/(r-1)` vertices of degree at least
/// `(1+eta) * delta` with `delta = (r-2+x*ell_r) * n/(r-1)`.
#[derive(Debug, Clone)]
pub struct MedianHypothesis {
    pub r: usize,
    pub x: Rat,
    pub ell_r: usize,
    pub h_size: usize,
    pub eta: Rat,
}

impl MedianHypothesis {
    pub fn new(r: usize, x: Rat, ell_r: usize, h_size: usize, eta: Rat) -> Result<Self> {
        if r < 2 {
            return Err(Error::Input(format!("r = {r} must be at least 2")));
        }
        if eta.is_negative() {
            return Err(Error::Input(format!("eta = {eta} must be nonnegative")));
        }
        Ok(MedianHypothesis {
            r,
            x,
            ell_r,
            h_size,
            eta,
        })
    }

    /// Hypothesis derived from a pattern; `eta = 0` yields the exact,
    /// non-asymptotic form.
    pub fn for_pattern(h: &Pattern, x: &Rat, eta: &Rat) -> Result<Self> {
        MedianHypothesis::new(h.r(), x.clone(), h.ell_r(), h.h_size(), eta.clone())
    }

    pub fn delta(&self, n: usize) -> Rat {
        degree_threshold(self.r, &self.x, self.ell_r, n)
    }

    pub fn required_count(&self, n: usize) -> Rat {
        (int(self.r as u64 - 2) + &self.x * int(self.h_size as u64)) * int(n as u64)
            / int(self.r as u64 - 1)
    }
}

/// Exact evaluation of the hypothesis on a concrete graph.
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub threshold: Rat,
    pub count: usize,
    pub required: Rat,
    pub holds: bool,
}

impl HypothesisReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "threshold": self.threshold.to_string(),
            "count": self.count,
            "required": self.required.to_string(),
            "holds": self.holds,
        })
    }
}

pub fn check_median_hypothesis(g: &Graph, hyp: &MedianHypothesis) -> HypothesisReport {
    let scale = Rat::one() + &hyp.eta;
    let threshold = &scale * hyp.delta(g.n());
    let required = &scale * hyp.required_count(g.n());
    let count = degree_profile(g, &threshold).count_at_or_above();
    HypothesisReport {
        threshold,
        holds: int(count as u64) >= required,
        count,
        required,
    }
}

/// Result of the cover lower-bound check: either the degree hypothesis
/// fails (a gate, not a bound violation), or the fractional cover number is
/// compared against `x*n` exactly.
#[derive(Debug, Clone)]
pub enum CoverBoundReport {
    HypothesisNotMet(HypothesisReport),
    Checked {
        hypothesis: HypothesisReport,
        cover_value: Rat,
        cover: FractionalCover,
        xn: Rat,
        slack: Rat,
        holds: bool,
    },
}

impl CoverBoundReport {
    /// False only on a genuine bound violation.
    pub fn bound_ok(&self) -> bool {
        match self {
            CoverBoundReport::HypothesisNotMet(_) => true,
            CoverBoundReport::Checked { holds, .. } => *holds,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CoverBoundReport::HypothesisNotMet(report) => json!({
                "status": "hypothesis-not-met",
                "hypothesis": report.to_json(),
            }),
            CoverBoundReport::Checked {
                hypothesis,
                cover_value,
                xn,
                slack,
                holds,
                ..
            } => json!({
                "status": "checked",
                "hypothesis": hypothesis.to_json(),
                "cover": cover_value.to_string(),
                "xn": xn.to_string(),
                "slack": slack.to_string(),
                "holds": holds,
            }),
        }
    }
}

/// Checks `fractional cover number >= x*n` on graphs satisfying the degree
/// hypothesis at `eta = 0`. A violation here is release-blocking: it means
/// either an implementation bug or a refutation of the bound.
pub fn check_cover_bound(
    g: &Graph,
    h: &Pattern,
    x: &Rat,
    limits: &Limits,
) -> Result<CoverBoundReport> {
    let hyp = MedianHypothesis::for_pattern(h, x, &Rat::zero())?;
    let report = check_median_hypothesis(g, &hyp);
    if !report.holds {
        return Ok(CoverBoundReport::HypothesisNotMet(report));
    }
    let (cover_value, cover) = fractional_cover_number(g, h, limits)?;
    let xn = x * int(g.n() as u64);
    let slack = &cover_value - &xn;
    Ok(CoverBoundReport::Checked {
        hypothesis: report,
        holds: cover_value >= xn,
        cover_value,
        cover,
        xn,
        slack,
    })
}

/// A clique inside the high-degree set `L` with its common neighbourhood,
/// split into the `L` and `S` sides.
#[derive(Debug, Clone)]
pub struct CliqueWitness {
    pub vertices: Vec<u32>,
    pub common_l: Vec<u32>,
    pub common_s: Vec<u32>,
}

impl CliqueWitness {
    pub fn common_total(&self) -> usize {
        self.common_l.len() + self.common_s.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vertices": self.vertices,
            "common_l": self.common_l,
            "common_s": self.common_s,
        })
    }
}

/// Outcome of the greedy procedure. Refinement steps are numbered from 0:
/// step `s` intersects the running neighbourhood with that of the
/// `(s+1)`-th clique vertex. A failure at step `s < r-2` means the clique
/// could not be extended inside `L`; at the final step `r-2` it means the
/// completed clique has an empty common neighbourhood in all of `V(G)`.
#[derive(Debug, Clone)]
pub enum GreedyOutcome {
    Complete(CliqueWitness),
    Failed { step: usize, partial: Vec<u32> },
}

/// Greedy clique in `L`: start from the lowest-index vertex of `L` and
/// repeatedly add the lowest-index vertex of the running common
/// `L`-neighbourhood until `r-1` vertices are picked.
pub fn greedy_clique_in_l(g: &Graph, delta: &Rat, r: usize) -> Result<GreedyOutcome> {
    if r < 2 {
        return Err(Error::Input(format!("r = {r} must be at least 2")));
    }
    let profile = degree_profile(g, delta);
    let Some(&first) = profile.l.first() else {
        return Err(Error::Input(format!(
            "no vertex has degree at least {delta}"
        )));
    };
    let mut clique = vec![first];
    let mut common_l: Option<Vec<u32>> = None;
    let mut common_s: Option<Vec<u32>> = None;
    for step in 0..r - 1 {
        let v = clique[step];
        let (nl, ns) = split_neighbors(g, v, &profile);
        common_l = Some(match common_l {
            None => nl,
            Some(prev) => intersect_sorted(&prev, &nl),
        });
        common_s = Some(match common_s {
            None => ns,
            Some(prev) => intersect_sorted(&prev, &ns),
        });
        let cl = common_l.as_ref().unwrap();
        if step < r - 2 {
            match cl.first() {
                Some(&next) => clique.push(next),
                None => {
                    return Ok(GreedyOutcome::Failed {
                        step,
                        partial: clique,
                    })
                }
            }
        } else if cl.is_empty() && common_s.as_ref().unwrap().is_empty() {
            return Ok(GreedyOutcome::Failed {
                step,
                partial: clique,
            });
        }
    }
    Ok(GreedyOutcome::Complete(CliqueWitness {
        vertices: clique,
        common_l: common_l.unwrap_or_default(),
        common_s: common_s.unwrap_or_default(),
    }))
}

/// `(r-1)*delta - (r-2)*n`: the exact lower bound on the size of the common
/// neighbourhood of an (r-1)-clique whose vertices all have degree at least
/// `delta`, whenever the bound is positive.
pub fn intersection_bound(r: usize, delta: &Rat, n: usize) -> Rat {
    int(r as u64 - 1) * delta - int(r as u64 - 2) * int(n as u64)
}

fn split_neighbors(g: &Graph, v: u32, profile: &DegreeProfile) -> (Vec<u32>, Vec<u32>) {
    let mut nl = Vec::new();
    let mut ns = Vec::new();
    for &u in g.neighbors(v) {
        if profile.in_l(u) {
            nl.push(u);
        } else {
            ns.push(u);
        }
    }
    (nl, ns)
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The clique selected by [`min_cover_clique`], its sorted cover values, and
/// the cheapest common neighbours on each side.
#[derive(Debug, Clone)]
pub struct MinCoverWitness {
    /// Clique vertices ordered by ascending cover value (ties by index).
    pub witness: CliqueWitness,
    /// `alpha_1 <= ... <= alpha_{r-1}`: cover values of the clique vertices.
    pub alphas: Vec<Rat>,
    /// Cheapest common neighbour inside `L`, if any.
    pub u: Option<u32>,
    /// Cheapest common neighbour inside `S`, if any.
    pub w: Option<u32>,
    /// Cover of `u`, defaulting to 1 when `u` is absent.
    pub alpha_l: Rat,
    /// Cover of `w`, defaulting to 1 when `w` is absent.
    pub alpha_s: Rat,
    /// `min(alpha_l, alpha_s)`.
    pub alpha_r: Rat,
}

impl MinCoverWitness {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "witness": self.witness.to_json(),
            "alphas": self.alphas.iter().map(Rat::to_string).collect::<Vec<_>>(),
            "u": self.u,
            "w": self.w,
            "alpha_l": self.alpha_l.to_string(),
            "alpha_s": self.alpha_s.to_string(),
            "alpha_r": self.alpha_r.to_string(),
        })
    }
}

/// Scans every `(r-1)`-clique inside `L` and picks the one whose ascending
/// cover-value vector is lexicographically smallest (ties: smallest vertex
/// sequence). Returns `None` when `L` contains no such clique.
pub fn min_cover_clique(
    g: &Graph,
    delta: &Rat,
    r: usize,
    cover: &FractionalCover,
) -> Result<Option<MinCoverWitness>> {
    if r < 2 {
        return Err(Error::Input(format!("r = {r} must be at least 2")));
    }
    if cover.weights.len() != g.n() {
        return Err(Error::Input(format!(
            "cover assigns {} weights to a graph on {} vertices",
            cover.weights.len(),
            g.n()
        )));
    }
    let profile = degree_profile(g, delta);
    let mut best: Option<(Vec<Rat>, Vec<u32>)> = None;
    for combo in profile.l.iter().copied().combinations(r - 1) {
        let is_clique = combo
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| g.has_edge(a, b));
        if !is_clique {
            continue;
        }
        let mut signature: Vec<Rat> = combo
            .iter()
            .map(|&v| cover.weights[v as usize].clone())
            .collect();
        signature.sort();
        let better = match &best {
            None => true,
            Some((sig, verts)) => (&signature, &combo) < (sig, verts),
        };
        if better {
            best = Some((signature, combo));
        }
    }
    let Some((alphas, mut vertices)) = best else {
        return Ok(None);
    };
    // Order clique vertices by ascending cover, ties by index.
    vertices.sort_by(|&a, &b| {
        (&cover.weights[a as usize], a).cmp(&(&cover.weights[b as usize], b))
    });
    let mut common_l: Option<Vec<u32>> = None;
    let mut common_s: Option<Vec<u32>> = None;
    for &v in &vertices {
        let (nl, ns) = split_neighbors(g, v, &profile);
        common_l = Some(match common_l {
            None => nl,
            Some(prev) => intersect_sorted(&prev, &nl),
        });
        common_s = Some(match common_s {
            None => ns,
            Some(prev) => intersect_sorted(&prev, &ns),
        });
    }
    let common_l = common_l.unwrap_or_default();
    let common_s = common_s.unwrap_or_default();
    let cheapest = |set: &[u32]| -> Option<u32> {
        set.iter()
            .copied()
            .min_by(|&a, &b| (&cover.weights[a as usize], a).cmp(&(&cover.weights[b as usize], b)))
    };
    let u = cheapest(&common_l);
    let w = cheapest(&common_s);
    let alpha_l = u.map_or_else(Rat::one, |v| cover.weights[v as usize].clone());
    let alpha_s = w.map_or_else(Rat::one, |v| cover.weights[v as usize].clone());
    let alpha_r = alpha_l.clone().min(alpha_s.clone());
    Ok(Some(MinCoverWitness {
        witness: CliqueWitness {
            vertices,
            common_l,
            common_s,
        },
        alphas,
        u,
        w,
        alpha_l,
        alpha_s,
        alpha_r,
    }))
}

/// Result of collapsing the pattern onto a clique witness.
#[derive(Debug, Clone)]
pub enum CollapsedCheck {
    /// No common neighbour exists on either side; nothing to collapse onto.
    Vacuous,
    Checked {
        mapping: Vec<u32>,
        lhs: Rat,
        holds: bool,
    },
}

/// Builds the homomorphism that sends the `i`-th largest colour class to the
/// clique vertex with the `i`-th smallest cover value and the smallest class
/// to the cheapest common neighbour, validates it edge by edge, and checks
/// `sum_i l_i * alpha_i >= 1` exactly.
pub fn check_collapsed_constraint(
    g: &Graph,
    h: &Pattern,
    witness: &MinCoverWitness,
) -> Result<CollapsedCheck> {
    let r = h.r();
    if witness.witness.vertices.len() != r - 1 {
        return Err(Error::Input(format!(
            "witness clique has {} vertices but the pattern needs {}",
            witness.witness.vertices.len(),
            r - 1
        )));
    }
    let target = match (witness.u, witness.w) {
        (None, None) => return Ok(CollapsedCheck::Vacuous),
        (Some(u), None) => u,
        (None, Some(w)) => w,
        (Some(u), Some(w)) => {
            if witness.alpha_l <= witness.alpha_s {
                u
            } else {
                w
            }
        }
    };
    let mapping: Vec<u32> = h
        .colouring()
        .iter()
        .map(|&class| {
            if class < r - 1 {
                witness.witness.vertices[class]
            } else {
                target
            }
        })
        .collect();
    let hom = crate::hom::Homomorphism {
        mapping: mapping.clone(),
    };
    if !hom.is_valid(h.graph(), g) {
        return Err(Error::Invariant(
            "collapsing map is not a homomorphism: clique or neighbourhood data is corrupt".into(),
        ));
    }
    let sizes = h.class_sizes();
    let mut lhs = Rat::zero();
    for (i, alpha) in witness.alphas.iter().enumerate() {
        lhs += int(sizes[i] as u64) * alpha;
    }
    lhs += int(sizes[r - 1] as u64) * &witness.alpha_r;
    Ok(CollapsedCheck::Checked {
        mapping,
        holds: lhs >= Rat::one(),
        lhs,
    })
}
