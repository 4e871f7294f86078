//! Fractional tiling and cover numbers, their certificates and independent
//! checkers, and the integral tiling number by branch and bound.
//!
//! The fractional tiling LP has one variable per deduplicated multiplicity
//! vector and one capacity row per host vertex; the cover LP is its dual,
//! solved by lazy row generation against a violated-column separation
//! oracle. Both optima come back with certificates that the checkers here
//! re-validate against a full, LP-independent column enumeration.

use std::collections::BTreeMap;
use std::time::Instant;

use num::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{Graph, Pattern};
use crate::hom::{
    enumerate_columns_capped, enumerate_injective_copies, ColumnVector, HomColumn, Homomorphism,
    InjectiveCopy,
};
use crate::lp::{solve, solve_with_lazy_rows, Direction, LpProblem, LpRow, LpStatus, Sense};
use crate::rat::{int, Rat};

/// Resource caps threaded through the solvers. `Default` means effectively
/// unlimited, with a generous lazy-iteration cap as a termination backstop.
#[derive(Debug, Clone)]
pub struct Limits {
    pub max_columns: Option<usize>,
    pub max_nodes: Option<u64>,
    pub lazy_iteration_cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_columns: None,
            max_nodes: None,
            lazy_iteration_cap: 10_000,
            deadline: None,
        }
    }
}

impl Limits {
    fn check_deadline(&self) -> Result<()> {
        if let Some(deadline) = self.deadline {
            if Instant::now() > deadline {
                return Err(Error::Resource("time budget exhausted".into()));
            }
        }
        Ok(())
    }
}

/// Nonnegative column weights with per-vertex load at most one. Only
/// columns with nonzero weight are stored.
#[derive(Debug, Clone)]
pub struct FractionalTiling {
    pub weights: Vec<(ColumnVector, Rat)>,
    pub size: Rat,
}

impl FractionalTiling {
    pub fn to_json(&self) -> serde_json::Value {
        let weights: Vec<_> = self
            .weights
            .iter()
            .map(|(col, w)| {
                let column: BTreeMap<String, u32> =
                    col.entries().map(|(v, m)| (v.to_string(), m)).collect();
                json!({ "column": column, "weight": w.to_string() })
            })
            .collect();
        json!({ "size": self.size.to_string(), "weights": weights })
    }
}

/// Vertex weights in `[0,1]` collecting at least one unit of weight, with
/// multiplicity, on every homomorphism column. Indexed by vertex.
#[derive(Debug, Clone)]
pub struct FractionalCover {
    pub weights: Vec<Rat>,
    pub size: Rat,
}

impl FractionalCover {
    pub fn to_json(&self) -> serde_json::Value {
        let weights: BTreeMap<String, String> = self
            .weights
            .iter()
            .enumerate()
            .map(|(v, w)| (v.to_string(), w.to_string()))
            .collect();
        json!({ "size": self.size.to_string(), "weights": weights })
    }
}

/// One copy in an integral tiling: an image set with a concrete embedding.
#[derive(Debug, Clone)]
pub struct TilingCopy {
    pub image: Vec<u32>,
    pub embedding: Homomorphism,
}

/// Pairwise vertex-disjoint embedded copies of the pattern.
#[derive(Debug, Clone, Default)]
pub struct IntegralTiling {
    pub copies: Vec<TilingCopy>,
}

impl IntegralTiling {
    pub fn size(&self) -> usize {
        self.copies.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let copies: Vec<_> = self
            .copies
            .iter()
            .map(|c| json!({ "image": c.image, "embedding": c.embedding.mapping }))
            .collect();
        json!({ "size": self.copies.len(), "copies": copies })
    }
}

/// Maximize the total column weight subject to unit capacity per vertex.
/// Returns the LP together with the column list indexing its variables.
pub fn build_tiling_lp(g: &Graph, h: &Pattern) -> Result<(LpProblem, Vec<HomColumn>)> {
    build_tiling_lp_capped(g, h, &Limits::default())
}

pub fn build_tiling_lp_capped(
    g: &Graph,
    h: &Pattern,
    limits: &Limits,
) -> Result<(LpProblem, Vec<HomColumn>)> {
    let columns = enumerate_columns_capped(h, g, limits.max_columns)?;
    let mut problem = LpProblem::new(Direction::Maximize, vec![int(1); columns.len()]);
    for v in 0..g.n() as u32 {
        let coeffs: Vec<(usize, Rat)> = columns
            .iter()
            .enumerate()
            .filter_map(|(j, col)| {
                let mult = col.vector.multiplicity(v);
                (mult > 0).then(|| (j, int(mult)))
            })
            .collect();
        problem.push_row(coeffs, Sense::Le, int(1));
    }
    Ok((problem, columns))
}

/// Exact fractional tiling number with an optimal certificate.
pub fn fractional_tiling_number(
    g: &Graph,
    h: &Pattern,
    limits: &Limits,
) -> Result<(Rat, FractionalTiling)> {
    let (problem, columns) = build_tiling_lp_capped(g, h, limits)?;
    if columns.is_empty() {
        return Ok((
            Rat::zero(),
            FractionalTiling {
                weights: Vec::new(),
                size: Rat::zero(),
            },
        ));
    }
    let solution = solve(&problem)?;
    debug_assert_eq!(solution.status, LpStatus::Optimal);
    let mut weights: Vec<(ColumnVector, Rat)> = columns
        .into_iter()
        .zip(solution.primal)
        .filter(|(_, w)| !w.is_zero())
        .map(|(col, w)| (col.vector, w))
        .collect();
    weights.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((
        solution.value.clone(),
        FractionalTiling {
            weights,
            size: solution.value,
        },
    ))
}

/// Exact fractional cover number with an optimal certificate, by lazy row
/// generation: rows are added only as the separation oracle finds
/// homomorphism columns whose weighted multiplicity sum is below one.
pub fn fractional_cover_number(
    g: &Graph,
    h: &Pattern,
    limits: &Limits,
) -> Result<(Rat, FractionalCover)> {
    let base = LpProblem::new(Direction::Minimize, vec![int(1); g.n()]);
    let solution = solve_with_lazy_rows(
        &base,
        |point| {
            find_violated_column(g, h, point).map(|col| LpRow {
                coeffs: col.entries().map(|(v, m)| (v as usize, int(m))).collect(),
                sense: Sense::Ge,
                rhs: int(1),
            })
        },
        limits.lazy_iteration_cap,
    )?;
    debug_assert_eq!(solution.status, LpStatus::Optimal);
    Ok((
        solution.value.clone(),
        FractionalCover {
            weights: solution.primal,
            size: solution.value,
        },
    ))
}

/// Cover LP over the full column set; used to cross-check the lazy route.
pub fn fractional_cover_number_full(
    g: &Graph,
    h: &Pattern,
    limits: &Limits,
) -> Result<(Rat, FractionalCover)> {
    let columns = enumerate_columns_capped(h, g, limits.max_columns)?;
    let mut problem = LpProblem::new(Direction::Minimize, vec![int(1); g.n()]);
    for col in &columns {
        let coeffs = col
            .vector
            .entries()
            .map(|(v, m)| (v as usize, int(m)))
            .collect();
        problem.push_row(coeffs, Sense::Ge, int(1));
    }
    let solution = solve(&problem)?;
    Ok((
        solution.value.clone(),
        FractionalCover {
            weights: solution.primal,
            size: solution.value,
        },
    ))
}

/// Finds a homomorphism column with weighted multiplicity sum below one, or
/// `None` if every column is covered.
///
/// Backtracks over `H`-vertices in index order, restricting candidate images
/// to common neighbours of already-placed `H`-neighbours, and prunes as soon
/// as the partial weight sum reaches one (weights are nonnegative, so no
/// completion can fall back below). Returns the first violated column in
/// lexicographic mapping order.
pub fn find_violated_column(g: &Graph, h: &Pattern, weights: &[Rat]) -> Option<ColumnVector> {
    debug_assert!(weights.iter().all(|w| !w.is_negative()));
    let hn = h.h_size();
    let gn = g.n();
    if hn == 0 || gn == 0 {
        return None;
    }
    let hg = h.graph();
    let earlier: Vec<Vec<u32>> = (0..hn)
        .map(|v| {
            hg.neighbors(v as u32)
                .iter()
                .copied()
                .filter(|&u| (u as usize) < v)
                .collect()
        })
        .collect();

    fn rec(
        pos: usize,
        hn: usize,
        gn: usize,
        g: &Graph,
        earlier: &[Vec<u32>],
        weights: &[Rat],
        mapping: &mut Vec<u32>,
        partial: &Rat,
        one: &Rat,
    ) -> Option<Vec<u32>> {
        if pos == hn {
            return Some(mapping.clone());
        }
        for img in 0..gn as u32 {
            if !earlier[pos]
                .iter()
                .all(|&u| g.has_edge(mapping[u as usize], img))
            {
                continue;
            }
            let next = partial + &weights[img as usize];
            if &next >= one {
                continue;
            }
            mapping.push(img);
            if let Some(found) = rec(pos + 1, hn, gn, g, earlier, weights, mapping, &next, one) {
                return Some(found);
            }
            mapping.pop();
        }
        None
    }

    let one = Rat::one();
    let mut mapping = Vec::with_capacity(hn);
    rec(
        0,
        hn,
        gn,
        g,
        &earlier,
        weights,
        &mut mapping,
        &Rat::zero(),
        &one,
    )
    .map(|m| ColumnVector::from_mapping(&m))
}

/// Outcome of the independent tiling check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingCheck {
    Valid,
    WeightOutOfRange { column: ColumnVector },
    VertexOverload { vertex: u32, load: Rat },
    SizeMismatch { stated: Rat, actual: Rat },
}

/// Validates a fractional tiling against a fresh column enumeration:
/// referenced columns must exist, weights must lie in `[0,1]`, per-vertex
/// loads must stay at most one, and the size must equal the weight sum.
pub fn check_tiling(g: &Graph, h: &Pattern, t: &FractionalTiling) -> Result<TilingCheck> {
    let known: std::collections::BTreeSet<ColumnVector> = enumerate_columns_capped(h, g, None)?
        .into_iter()
        .map(|c| c.vector)
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for (col, _) in &t.weights {
        if !known.contains(col) {
            return Err(Error::Input(format!(
                "unknown column {col:?}: no homomorphism has this multiplicity vector"
            )));
        }
        if !seen.insert(col.clone()) {
            return Err(Error::Input(format!("column {col:?} listed twice")));
        }
    }
    for (col, w) in &t.weights {
        if w.is_negative() || w > &Rat::one() {
            return Ok(TilingCheck::WeightOutOfRange {
                column: col.clone(),
            });
        }
    }
    let mut load = vec![Rat::zero(); g.n()];
    for (col, w) in &t.weights {
        for (v, m) in col.entries() {
            load[v as usize] += w * int(m);
        }
    }
    for (v, l) in load.into_iter().enumerate() {
        if l > Rat::one() {
            return Ok(TilingCheck::VertexOverload {
                vertex: v as u32,
                load: l,
            });
        }
    }
    let actual: Rat = t
        .weights
        .iter()
        .map(|(_, w)| w.clone())
        .fold(Rat::zero(), |acc, w| acc + w);
    if actual != t.size {
        return Ok(TilingCheck::SizeMismatch {
            stated: t.size.clone(),
            actual,
        });
    }
    Ok(TilingCheck::Valid)
}

/// Outcome of the independent cover check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverCheck {
    Valid,
    WeightOutOfRange { vertex: u32 },
    ColumnUncovered { column: ColumnVector, total: Rat },
    SizeMismatch { stated: Rat, actual: Rat },
}

/// Validates a fractional cover by enumerating every column afresh; the
/// check never consults the LP that produced the certificate.
pub fn check_cover(g: &Graph, h: &Pattern, c: &FractionalCover) -> Result<CoverCheck> {
    if c.weights.len() != g.n() {
        return Err(Error::Input(format!(
            "cover assigns {} weights to a graph on {} vertices",
            c.weights.len(),
            g.n()
        )));
    }
    for (v, w) in c.weights.iter().enumerate() {
        if w.is_negative() || w > &Rat::one() {
            return Ok(CoverCheck::WeightOutOfRange { vertex: v as u32 });
        }
    }
    for col in enumerate_columns_capped(h, g, None)? {
        let total: Rat = col
            .vector
            .entries()
            .map(|(v, m)| &c.weights[v as usize] * int(m))
            .fold(Rat::zero(), |acc, t| acc + t);
        if total < Rat::one() {
            return Ok(CoverCheck::ColumnUncovered {
                column: col.vector,
                total,
            });
        }
    }
    let actual: Rat = c
        .weights
        .iter()
        .cloned()
        .fold(Rat::zero(), |acc, w| acc + w);
    if actual != c.size {
        return Ok(CoverCheck::SizeMismatch {
            stated: c.size.clone(),
            actual,
        });
    }
    Ok(CoverCheck::Valid)
}

/// Both fractional numbers computed by independent routes (tiling via the
/// full LP, cover via lazy rows), with their certificates and the exact
/// equality verdict.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub tiling_value: Rat,
    pub cover_value: Rat,
    pub equal: bool,
    pub tiling: FractionalTiling,
    pub cover: FractionalCover,
}

pub fn verify_duality(g: &Graph, h: &Pattern, limits: &Limits) -> Result<DualityReport> {
    let (tiling_value, tiling) = fractional_tiling_number(g, h, limits)?;
    let (cover_value, cover) = fractional_cover_number(g, h, limits)?;
    Ok(DualityReport {
        equal: tiling_value == cover_value,
        tiling_value,
        cover_value,
        tiling,
        cover,
    })
}

// ---------------------------------------------------------------------------
// Integral tiling by branch and bound
// ---------------------------------------------------------------------------

const LP_BOUND_CANDIDATE_THRESHOLD: usize = 50;
const LP_BOUND_COLUMN_CAP: usize = 500;

#[derive(Clone)]
struct VertexSet {
    words: Vec<u64>,
    count: usize,
}

impl VertexSet {
    fn new(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(64)],
            count: 0,
        }
    }

    fn contains(&self, v: u32) -> bool {
        self.words[v as usize / 64] >> (v % 64) & 1 == 1
    }

    fn insert(&mut self, v: u32) {
        debug_assert!(!self.contains(v));
        self.words[v as usize / 64] |= 1 << (v % 64);
        self.count += 1;
    }

    fn remove(&mut self, v: u32) {
        debug_assert!(self.contains(v));
        self.words[v as usize / 64] &= !(1 << (v % 64));
        self.count -= 1;
    }
}

fn copy_mask(copy: &InjectiveCopy, words: usize) -> Vec<u64> {
    let mut mask = vec![0u64; words];
    for &v in &copy.image {
        mask[v as usize / 64] |= 1 << (v % 64);
    }
    mask
}

struct BranchState<'a> {
    g: &'a Graph,
    h: &'a Pattern,
    copies: &'a [InjectiveCopy],
    masks: Vec<Vec<u64>>,
    covered: VertexSet,
    unusable: VertexSet,
    chosen: Vec<usize>,
    best: Vec<usize>,
    target: Option<usize>,
    limits: &'a Limits,
    nodes: u64,
}

impl BranchState<'_> {
    fn blocked(&self, mask: &[u64]) -> bool {
        mask.iter()
            .zip(self.covered.words.iter().zip(&self.unusable.words))
            .any(|(m, (c, u))| m & (c | u) != 0)
    }

    /// Copies entirely inside the free vertices.
    fn candidate_count(&self) -> usize {
        self.masks.iter().filter(|m| !self.blocked(m)).count()
    }

    fn reached_target(&self) -> bool {
        self.target.is_some_and(|t| self.best.len() >= t)
    }

    fn search(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 1024 == 0 {
            self.limits.check_deadline()?;
        }
        if let Some(cap) = self.limits.max_nodes {
            if self.nodes > cap {
                return Err(Error::Resource(format!(
                    "branch and bound exceeded {cap} nodes"
                )));
            }
        }
        if self.reached_target() {
            return Ok(());
        }
        if let Some(t) = self.target {
            // Early stop: the requested size is reached, no need to extend.
            if self.chosen.len() >= t {
                if self.chosen.len() > self.best.len() {
                    self.best = self.chosen.clone();
                }
                return Ok(());
            }
        }
        let n = self.g.n();
        let h_size = self.h.h_size().max(1);
        let goal = match self.target {
            Some(t) => t,
            None => self.best.len() + 1,
        };
        let avail = n - self.covered.count - self.unusable.count;
        if self.chosen.len() + avail / h_size < goal {
            return Ok(());
        }
        let branch =
            (0..n as u32).find(|&v| !self.covered.contains(v) && !self.unusable.contains(v));
        let Some(v) = branch else {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        };
        // The LP relaxation of the residual graph is a sharper bound, priced
        // in only at busy nodes and skipped when the column set is large.
        if self.candidate_count() > LP_BOUND_CANDIDATE_THRESHOLD {
            let free: Vec<u32> = (0..n as u32)
                .filter(|&u| !self.covered.contains(u) && !self.unusable.contains(u))
                .collect();
            let residual = self.g.induced(&free);
            let residual_limits = Limits {
                max_columns: Some(
                    self.limits
                        .max_columns
                        .map_or(LP_BOUND_COLUMN_CAP, |c| c.min(LP_BOUND_COLUMN_CAP)),
                ),
                ..self.limits.clone()
            };
            if let Ok((frac, _)) = fractional_tiling_number(&residual, self.h, &residual_limits) {
                let bound = frac.floor().to_integer().to_usize().unwrap_or(usize::MAX);
                if self.chosen.len() + bound < goal {
                    return Ok(());
                }
            }
        }
        // Branch A: cover v with each candidate copy, in enumeration order.
        for idx in 0..self.copies.len() {
            let mask = &self.masks[idx];
            if mask[v as usize / 64] >> (v % 64) & 1 == 0 || self.blocked(mask) {
                continue;
            }
            for &u in &self.copies[idx].image {
                self.covered.insert(u);
            }
            self.chosen.push(idx);
            self.search()?;
            self.chosen.pop();
            for &u in &self.copies[idx].image {
                self.covered.remove(u);
            }
            if self.reached_target() {
                return Ok(());
            }
        }
        // Branch B: commit to leaving v uncovered.
        self.unusable.insert(v);
        self.search()?;
        self.unusable.remove(v);
        Ok(())
    }
}

/// Maximum number of pairwise vertex-disjoint copies of the pattern, with a
/// witness tiling.
///
/// Branches on the lowest-index vertex that is neither covered nor excluded:
/// either some candidate copy covers it (tried in enumeration order) or it is
/// marked unusable. Subtrees are cut by the capacity bound
/// `floor(free / |V(H)|)` and, at busy nodes, by the fractional tiling number
/// of the residual graph.
///
/// With `target` set, the search stops as soon as `target` disjoint copies
/// are found; if it exhausts instead, the true tiling number is strictly
/// below `target` and the returned tiling is the largest one the pruned
/// search encountered.
pub fn integral_tiling_number(
    g: &Graph,
    h: &Pattern,
    target: Option<usize>,
    limits: &Limits,
) -> Result<(usize, IntegralTiling)> {
    // Packing only cares about vertex sets, so keep one copy per image set
    // (the first in enumeration order).
    let mut seen_images = std::collections::BTreeSet::new();
    let copies: Vec<InjectiveCopy> = enumerate_injective_copies(h, g)
        .into_iter()
        .filter(|c| seen_images.insert(c.image.clone()))
        .collect();
    let words = g.n().div_ceil(64);
    let masks: Vec<Vec<u64>> = copies.iter().map(|c| copy_mask(c, words)).collect();
    let mut state = BranchState {
        g,
        h,
        copies: &copies,
        masks,
        covered: VertexSet::new(g.n()),
        unusable: VertexSet::new(g.n()),
        chosen: Vec::new(),
        best: Vec::new(),
        target,
        limits,
        nodes: 0,
    };
    state.search()?;
    let tiling = IntegralTiling {
        copies: state
            .best
            .iter()
            .map(|&idx| TilingCopy {
                image: copies[idx].image.clone(),
                embedding: copies[idx].witness.clone(),
            })
            .collect(),
    };
    Ok((tiling.size(), tiling))
}

/// Integral and fractional tiling numbers side by side; the integral number
/// can never exceed the fractional one.
pub fn integral_vs_fractional_gap(
    g: &Graph,
    h: &Pattern,
    limits: &Limits,
) -> Result<(usize, Rat)> {
    let (integral, _) = integral_tiling_number(g, h, None, limits)?;
    let (fractional, _) = fractional_tiling_number(g, h, limits)?;
    if int(integral as u64) > fractional {
        return Err(Error::Invariant(format!(
            "integral tiling number {integral} exceeds fractional {fractional}"
        )));
    }
    Ok((integral, fractional))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, optimal_r_colouring, path_graph};
    use crate::rat::rat;

    fn pat(h: &Graph, r: usize) -> Pattern {
        optimal_r_colouring(h, r).unwrap()
    }

    fn k(n: usize) -> Graph {
        complete_graph(n)
    }

    #[test]
    fn tiling_lp_shapes() {
        let (lp, cols) = build_tiling_lp(&k(3), &pat(&k(2), 2)).unwrap();
        assert_eq!(cols.len(), 3);
        assert_eq!(lp.rows.len(), 3);
        assert!(lp
            .rows
            .iter()
            .all(|r| r.coeffs.iter().all(|(_, c)| *c == int(1))));

        let (lp, cols) = build_tiling_lp(&cycle_graph(5), &pat(&k(3), 3)).unwrap();
        assert_eq!(cols.len(), 0);
        assert_eq!(lp.num_vars(), 0);

        let (lp, cols) = build_tiling_lp(&k(4), &pat(&k(3), 3)).unwrap();
        assert_eq!(cols.len(), 4);
        assert_eq!(lp.rows.len(), 4);
        assert!(lp.rows.iter().all(|r| r.coeffs.len() == 3));
    }

    #[test]
    fn fractional_tiling_examples() {
        let limits = Limits::default();
        let (v, t) = fractional_tiling_number(&k(3), &pat(&k(2), 2), &limits).unwrap();
        assert_eq!(v, rat(3, 2));
        assert_eq!(
            check_tiling(&k(3), &pat(&k(2), 2), &t).unwrap(),
            TilingCheck::Valid
        );

        let (v, _) = fractional_tiling_number(&cycle_graph(5), &pat(&k(3), 3), &limits).unwrap();
        assert_eq!(v, int(0));

        let (v, t) = fractional_tiling_number(&k(4), &pat(&k(3), 3), &limits).unwrap();
        assert_eq!(v, rat(4, 3));
        assert_eq!(
            check_tiling(&k(4), &pat(&k(3), 3), &t).unwrap(),
            TilingCheck::Valid
        );
    }

    #[test]
    fn fractional_cover_examples() {
        let limits = Limits::default();
        let (v, c) = fractional_cover_number(&k(3), &pat(&k(2), 2), &limits).unwrap();
        assert_eq!(v, rat(3, 2));
        assert_eq!(
            check_cover(&k(3), &pat(&k(2), 2), &c).unwrap(),
            CoverCheck::Valid
        );

        let (v, _) = fractional_cover_number(&cycle_graph(5), &pat(&k(3), 3), &limits).unwrap();
        assert_eq!(v, int(0));

        let (v, c) = fractional_cover_number(&cycle_graph(5), &pat(&k(2), 2), &limits).unwrap();
        assert_eq!(v, rat(5, 2));
        assert_eq!(
            check_cover(&cycle_graph(5), &pat(&k(2), 2), &c).unwrap(),
            CoverCheck::Valid
        );
    }

    #[test]
    fn violated_column_oracle() {
        let g = k(3);
        let h = pat(&k(2), 2);
        assert!(find_violated_column(&g, &h, &vec![rat(1, 2); 3]).is_none());

        let col = find_violated_column(&g, &h, &vec![int(0); 3]).unwrap();
        assert_eq!(col.total(), 2);

        // All triangles of K_4 violate c = 1/4; the first in mapping order is
        // (0, 1, 2).
        let col = find_violated_column(&k(4), &pat(&k(3), 3), &vec![rat(1, 4); 4]).unwrap();
        assert_eq!(col, ColumnVector::from_mapping(&[0, 1, 2]));
    }

    #[test]
    fn tiling_checker_catches_overload() {
        let g = k(3);
        let h = pat(&k(2), 2);
        // Weight 1 on two edges sharing vertex 0.
        let t = FractionalTiling {
            weights: vec![
                (ColumnVector::from_mapping(&[0, 1]), int(1)),
                (ColumnVector::from_mapping(&[0, 2]), int(1)),
            ],
            size: int(2),
        };
        match check_tiling(&g, &h, &t).unwrap() {
            TilingCheck::VertexOverload { vertex, load } => {
                assert_eq!(vertex, 0);
                assert_eq!(load, int(2));
            }
            other => panic!("expected overload, got {other:?}"),
        }

        // The all-zero tiling is valid with size 0.
        let t = FractionalTiling {
            weights: vec![],
            size: int(0),
        };
        assert_eq!(check_tiling(&g, &h, &t).unwrap(), TilingCheck::Valid);
    }

    #[test]
    fn tiling_checker_rejects_unknown_columns() {
        let g = k(3);
        let h = pat(&k(2), 2);
        let t = FractionalTiling {
            weights: vec![(ColumnVector::from_mapping(&[0, 0]), int(1))],
            size: int(1),
        };
        assert!(matches!(check_tiling(&g, &h, &t), Err(Error::Input(_))));
    }

    #[test]
    fn cover_checker_catches_uncovered_columns() {
        let g = k(3);
        let h = pat(&k(2), 2);
        let c = FractionalCover {
            weights: vec![rat(1, 4); 3],
            size: rat(3, 4),
        };
        match check_cover(&g, &h, &c).unwrap() {
            CoverCheck::ColumnUncovered { total, .. } => assert_eq!(total, rat(1, 2)),
            other => panic!("expected uncovered column, got {other:?}"),
        }

        // The uniform 1/2 cover hits every edge column exactly.
        let c = FractionalCover {
            weights: vec![rat(1, 2); 3],
            size: rat(3, 2),
        };
        assert_eq!(check_cover(&g, &h, &c).unwrap(), CoverCheck::Valid);
    }

    #[test]
    fn duality_examples() {
        let limits = Limits::default();
        let report = verify_duality(&k(3), &pat(&k(2), 2), &limits).unwrap();
        assert!(report.equal);
        assert_eq!(report.tiling_value, rat(3, 2));

        let report = verify_duality(&cycle_graph(5), &pat(&k(3), 3), &limits).unwrap();
        assert!(report.equal);
        assert_eq!(report.tiling_value, int(0));
    }

    #[test]
    fn integral_examples() {
        let limits = Limits::default();
        let h = pat(&k(3), 3);
        let (n, t) = integral_tiling_number(&k(6), &h, None, &limits).unwrap();
        assert_eq!(n, 2);
        assert_eq!(t.copies.len(), 2);
        // Copies are vertex-disjoint with valid embeddings.
        let mut seen = std::collections::BTreeSet::new();
        for copy in &t.copies {
            for &v in &copy.image {
                assert!(seen.insert(v));
            }
            assert!(copy.embedding.is_valid(h.graph(), &k(6)));
        }

        let (n, _) =
            integral_tiling_number(&cycle_graph(5), &pat(&k(2), 2), None, &limits).unwrap();
        assert_eq!(n, 2);
    }

    #[test]
    fn integral_with_target_stops_early() {
        let limits = Limits::default();
        let (n, _) = integral_tiling_number(&k(9), &pat(&k(3), 3), Some(2), &limits).unwrap();
        assert_eq!(n, 2);
        // Impossible target: exhausts and reports the best found.
        let (n, _) =
            integral_tiling_number(&cycle_graph(5), &pat(&k(3), 3), Some(1), &limits).unwrap();
        assert_eq!(n, 0);
    }

    #[test]
    fn gap_examples() {
        let limits = Limits::default();
        let (i, f) = integral_vs_fractional_gap(&cycle_graph(5), &pat(&k(2), 2), &limits).unwrap();
        assert_eq!((i, f), (2, rat(5, 2)));

        let (i, f) = integral_vs_fractional_gap(&k(6), &pat(&k(3), 3), &limits).unwrap();
        assert_eq!((i, f), (2, int(2)));

        let (i, f) = integral_vs_fractional_gap(&cycle_graph(5), &pat(&k(3), 3), &limits).unwrap();
        assert_eq!((i, f), (0, int(0)));
    }

    #[test]
    fn node_cap_is_enforced() {
        let limits = Limits {
            max_nodes: Some(1),
            ..Limits::default()
        };
        let result = integral_tiling_number(&k(6), &pat(&k(3), 3), None, &limits);
        assert!(matches!(result, Err(Error::Resource(_))));
    }

    #[test]
    fn lazy_cover_equals_full_cover() {
        let limits = Limits::default();
        for g in [k(4), cycle_graph(6), path_graph(5)] {
            for h in [pat(&k(2), 2), pat(&path_graph(3), 2)] {
                let (lazy, _) = fractional_cover_number(&g, &h, &limits).unwrap();
                let (full, _) = fractional_cover_number_full(&g, &h, &limits).unwrap();
                assert_eq!(lazy, full);
            }
        }
    }
}
