//! Enumeration of graph homomorphisms `H -> G`, their multiplicity columns,
//! and injective copies, plus an independent brute-force counting oracle.
//!
//! The backtracking order over `H`-vertices is connectivity-respecting (each
//! vertex after the first in a component has an already-placed neighbour),
//! with ties broken by descending degree then index. Candidate images are cut
//! down with bitset intersections over the neighbourhoods of already-placed
//! `H`-neighbours, so dense patterns prune hard.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Pattern};

/// A vertex map `V(H) -> V(G)` sending edges to edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Homomorphism {
    pub mapping: Vec<u32>,
}

impl Homomorphism {
    /// Re-checks edge preservation from scratch.
    pub fn is_valid(&self, h: &Graph, g: &Graph) -> bool {
        self.mapping.len() == h.n()
            && h.edges().iter().all(|&(u, v)| {
                g.has_edge(self.mapping[u as usize], self.mapping[v as usize])
            })
    }
}

/// The multiplicity vector of a homomorphism: how many `H`-vertices land on
/// each host vertex. Two homomorphisms with the same vector load host
/// vertices identically, so the vector is what an LP column needs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColumnVector(BTreeMap<u32, u32>);

impl ColumnVector {
    pub fn from_mapping(mapping: &[u32]) -> Self {
        let mut counts = BTreeMap::new();
        for &v in mapping {
            *counts.entry(v).or_insert(0u32) += 1;
        }
        ColumnVector(counts)
    }

    pub fn multiplicity(&self, v: u32) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    /// `(host vertex, multiplicity)` pairs in vertex order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&v, &m)| (v, m))
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }
}

/// A deduplicated LP column: a multiplicity vector together with the number
/// of homomorphisms that share it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomColumn {
    pub vector: ColumnVector,
    pub class_size: u64,
}

/// An injective copy of `H`, keyed by its image subgraph (vertex set plus
/// image edges: two embeddings onto the same vertices still differ when they
/// trace different edges). `witness` is the lexicographically smallest
/// embedding realizing the copy and `embedding_count` the number that do.
#[derive(Debug, Clone)]
pub struct InjectiveCopy {
    pub image: Vec<u32>,
    pub image_edges: Vec<(u32, u32)>,
    pub witness: Homomorphism,
    pub embedding_count: u64,
}

/// Backtracking order: component by component, each vertex after a component
/// root has an already-ordered neighbour; ties by descending degree, then
/// index.
fn backtrack_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let anchored = h
                    .neighbors(v as u32)
                    .iter()
                    .any(|&u| placed[u as usize]);
                // Prefer anchored vertices, then high degree, then low index.
                (anchored, h.neighbors(v as u32).len(), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Core backtracking walk. Calls `visit` on every (injective) homomorphism
/// in an order determined by `backtrack_order`; `visit` may stop the walk.
fn for_each_hom<F>(h: &Graph, g: &Graph, injective: bool, mut visit: F)
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let hn = h.n();
    let gn = g.n();
    if hn == 0 {
        let _ = visit(&[]);
        return;
    }
    if gn == 0 {
        return;
    }
    let order = backtrack_order(h);
    // For each position, which earlier positions hold H-neighbours.
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(pos, &v)| {
            (0..pos)
                .filter(|&p| h.has_edge(v as u32, order[p] as u32))
                .collect()
        })
        .collect();
    let words = gn.div_ceil(64);
    let full: Vec<u64> = (0..words)
        .map(|w| {
            let bits = gn - w * 64;
            if bits >= 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            }
        })
        .collect();
    struct Walk<'a, F> {
        order: Vec<usize>,
        earlier: Vec<Vec<usize>>,
        g: &'a Graph,
        full: Vec<u64>,
        injective: bool,
        mapping: Vec<u32>,
        used: Vec<u64>,
        // One candidate bitset per depth, reused across the whole walk.
        cand: Vec<Vec<u64>>,
        visit: F,
    }

    impl<F> Walk<'_, F>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        fn rec(&mut self, pos: usize) -> ControlFlow<()> {
            if pos == self.order.len() {
                return (self.visit)(&self.mapping);
            }
            let words = self.full.len();
            let mut cand = std::mem::take(&mut self.cand[pos]);
            cand.copy_from_slice(&self.full);
            for &p in &self.earlier[pos] {
                let mask = self.g.neighbor_mask(self.mapping[self.order[p]]);
                for w in 0..words {
                    cand[w] &= mask[w];
                }
            }
            if self.injective {
                for w in 0..words {
                    cand[w] &= !self.used[w];
                }
            }
            let v = self.order[pos];
            let mut flow = ControlFlow::Continue(());
            'outer: for w in 0..words {
                let mut bits = cand[w];
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    self.mapping[v] = (w * 64 + b) as u32;
                    if self.injective {
                        self.used[w] |= 1 << b;
                    }
                    let step = self.rec(pos + 1);
                    if self.injective {
                        self.used[w] &= !(1 << b);
                    }
                    if step.is_break() {
                        flow = ControlFlow::Break(());
                        break 'outer;
                    }
                }
            }
            self.cand[pos] = cand;
            flow
        }
    }

    let mut walk = Walk {
        order,
        earlier,
        g,
        full,
        injective,
        mapping: vec![0u32; hn],
        used: vec![0u64; words],
        cand: vec![vec![0u64; words]; hn],
        visit,
    };
    let _ = walk.rec(0);
}

/// All homomorphisms `H -> G`, sorted lexicographically by mapping vector.
pub fn enumerate_homomorphisms(h: &Graph, g: &Graph) -> Vec<Homomorphism> {
    let mut out = Vec::new();
    for_each_hom(h, g, false, |mapping| {
        out.push(Homomorphism {
            mapping: mapping.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out.sort_unstable();
    out
}

/// Number of homomorphisms `H -> G`, without materializing them.
pub fn count_homomorphisms(h: &Graph, g: &Graph) -> u64 {
    let mut count = 0u64;
    for_each_hom(h, g, false, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Distinct multiplicity vectors over all homomorphisms `H -> G`, each with
/// its class size, in vector order. `max_columns` caps the number of
/// distinct columns; exceeding it is a resource error.
pub fn enumerate_columns(h: &Pattern, g: &Graph) -> Vec<HomColumn> {
    enumerate_columns_capped(h, g, None).expect("uncapped enumeration cannot hit a cap")
}

pub fn enumerate_columns_capped(
    h: &Pattern,
    g: &Graph,
    max_columns: Option<usize>,
) -> Result<Vec<HomColumn>> {
    let mut classes: BTreeMap<ColumnVector, u64> = BTreeMap::new();
    let mut exceeded = false;
    for_each_hom(h.graph(), g, false, |mapping| {
        let vector = ColumnVector::from_mapping(mapping);
        *classes.entry(vector).or_insert(0) += 1;
        if let Some(cap) = max_columns {
            if classes.len() > cap {
                exceeded = true;
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    if exceeded {
        return Err(Error::Resource(format!(
            "column count exceeds cap {}",
            max_columns.unwrap()
        )));
    }
    Ok(classes
        .into_iter()
        .map(|(vector, class_size)| HomColumn { vector, class_size })
        .collect())
}

/// Injective copies of `H` in `G`, deduplicated by image subgraph, in
/// (vertices, edges) order.
pub fn enumerate_injective_copies(h: &Pattern, g: &Graph) -> Vec<InjectiveCopy> {
    let h_edges = h.graph().edges().to_vec();
    let mut by_image: BTreeMap<(Vec<u32>, Vec<(u32, u32)>), (Homomorphism, u64)> = BTreeMap::new();
    for_each_hom(h.graph(), g, true, |mapping| {
        let mut image: Vec<u32> = mapping.to_vec();
        image.sort_unstable();
        let mut edges: Vec<(u32, u32)> = h_edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (mapping[u as usize], mapping[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        let hom = Homomorphism {
            mapping: mapping.to_vec(),
        };
        by_image
            .entry((image, edges))
            .and_modify(|(witness, count)| {
                *count += 1;
                if hom < *witness {
                    *witness = hom.clone();
                }
            })
            .or_insert((hom, 1));
        ControlFlow::Continue(())
    });
    by_image
        .into_iter()
        .map(
            |((image, image_edges), (witness, embedding_count))| InjectiveCopy {
                image,
                image_edges,
                witness,
                embedding_count,
            },
        )
        .collect()
}

/// Counts homomorphisms by trying every map `V(H) -> V(G)`.
///
/// This is the independent oracle for [`enumerate_homomorphisms`]; it shares
/// no search logic with the backtracking path. Guarded at `|V(G)|^|V(H)| <=
/// 10^7`.
pub fn brute_force_homomorphisms(h: &Graph, g: &Graph) -> Result<u64> {
    const GUARD: f64 = 1e7;
    let hn = h.n();
    let gn = g.n();
    if (gn as f64).powi(hn as i32) > GUARD {
        return Err(Error::Resource(format!(
            "brute force would check {gn}^{hn} maps (guard {GUARD})"
        )));
    }
    if hn == 0 {
        return Ok(1);
    }
    if gn == 0 {
        return Ok(0);
    }
    let mut assignment = vec![0u32; hn];
    let mut count = 0u64;
    loop {
        let ok = h.edges().iter().all(|&(u, v)| {
            g.has_edge(assignment[u as usize], assignment[v as usize])
        });
        if ok {
            count += 1;
        }
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == hn {
                return Ok(count);
            }
            assignment[pos] += 1;
            if assignment[pos] as usize == gn {
                assignment[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
    }
}
