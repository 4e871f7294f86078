//! Independent oracles shared by the integration suites. Nothing here calls
//! into the solver paths it is used to check: the LP oracle enumerates basic
//! points directly, the tiling oracle scans subsets and permutations, and
//! the colouring oracle tries every colour sequence.
#![allow(dead_code)]

use homtile_core::lp::{LpProblem, Sense};
use homtile_core::rat::{int, Rat};
use homtile_core::Graph;
use itertools::Itertools;
use num::Zero;

/// Maximum of the objective over all vertices of the feasible region,
/// found by solving every square subsystem of tight constraints. Returns
/// `None` when no feasible vertex exists. Only valid for problems whose
/// optimum is attained at a vertex (bounded feasible LPs).
pub fn brute_force_lp_max(p: &LpProblem) -> Option<Rat> {
    let d = p.num_vars();
    if d == 0 {
        return feasible(p, &[]).then(|| Rat::zero());
    }
    // Constraint list: the problem rows, then the axes x_j = 0.
    let m = p.rows.len();
    let mut best: Option<Rat> = None;
    for tight in (0..m + d).combinations(d) {
        let mut system: Vec<Vec<Rat>> = Vec::with_capacity(d);
        for &t in &tight {
            let mut row = vec![Rat::zero(); d + 1];
            if t < m {
                for (j, c) in &p.rows[t].coeffs {
                    row[*j] = c.clone();
                }
                row[d] = p.rows[t].rhs.clone();
            } else {
                row[t - m] = int(1);
            }
            system.push(row);
        }
        let Some(x) = solve_square(&mut system) else {
            continue;
        };
        if !feasible(p, &x) {
            continue;
        }
        let value: Rat = p
            .objective
            .iter()
            .zip(&x)
            .map(|(c, xi)| c * xi)
            .fold(Rat::zero(), |acc, t| acc + t);
        if best.as_ref().is_none_or(|b| &value > b) {
            best = Some(value);
        }
    }
    best
}

fn feasible(p: &LpProblem, x: &[Rat]) -> bool {
    if x.iter().any(|v| v < &Rat::zero()) {
        return false;
    }
    p.rows.iter().all(|row| {
        let lhs: Rat = row
            .coeffs
            .iter()
            .map(|(j, c)| c * &x[*j])
            .fold(Rat::zero(), |acc, t| acc + t);
        match row.sense {
            Sense::Le => lhs <= row.rhs,
            Sense::Ge => lhs >= row.rhs,
        }
    })
}

fn solve_square(aug: &mut [Vec<Rat>]) -> Option<Vec<Rat>> {
    let d = aug.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for j in col..=d {
            aug[col][j] /= &p;
        }
        for r in 0..d {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in col..=d {
                    let delta = &f * &aug[col][j];
                    aug[r][j] -= delta;
                }
            }
        }
    }
    Some(aug.iter().map(|row| row[d].clone()).collect())
}

/// Every image vertex set of an injective embedding of `h` in `g`, found by
/// scanning all subsets and all bijections onto them.
pub fn brute_force_copy_sets(h: &Graph, g: &Graph) -> Vec<Vec<u32>> {
    let hn = h.n();
    let mut sets = Vec::new();
    for subset in (0..g.n() as u32).combinations(hn) {
        let embeds = subset.iter().copied().permutations(hn).any(|perm| {
            h.edges()
                .iter()
                .all(|&(u, v)| g.has_edge(perm[u as usize], perm[v as usize]))
        });
        if embeds {
            sets.push(subset);
        }
    }
    sets
}

/// Maximum number of pairwise disjoint copies, by scanning families of copy
/// sets directly, largest first.
pub fn exhaustive_tiling_number(h: &Graph, g: &Graph) -> usize {
    let sets = brute_force_copy_sets(h, g);
    let upper = if h.n() == 0 { 0 } else { g.n() / h.n() };
    for k in (1..=upper).rev() {
        for family in sets.iter().combinations(k) {
            let mut seen = std::collections::BTreeSet::new();
            if family.iter().all(|set| set.iter().all(|v| seen.insert(*v))) {
                return k;
            }
        }
    }
    0
}

/// Smallest achievable minimum class size over all proper colourings with
/// exactly `r` non-empty classes, by trying every colour sequence.
pub fn brute_force_min_ell(h: &Graph, r: usize) -> Option<usize> {
    let n = h.n();
    let mut best: Option<usize> = None;
    let mut colours = vec![0usize; n];
    loop {
        let proper = h
            .edges()
            .iter()
            .all(|&(u, v)| colours[u as usize] != colours[v as usize]);
        if proper {
            let mut sizes = vec![0usize; r];
            for &c in &colours {
                sizes[c] += 1;
            }
            if sizes.iter().all(|&s| s > 0) {
                let ell = *sizes.iter().min().unwrap();
                if best.is_none_or(|b| ell < b) {
                    best = Some(ell);
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return best;
            }
            colours[pos] += 1;
            if colours[pos] == r {
                colours[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
    }
}
