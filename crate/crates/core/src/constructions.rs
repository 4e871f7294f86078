//! Generators for the layered extremal hosts, the tripartite-pattern
//! counterexample host, blow-ups, standard patterns, and seeded random
//! graphs, together with audits of the tiling structure they are built to
//! exhibit.
//!
//! All part sizes are required to be exactly integral; generators refuse
//! rather than round, and [`suggest_parameters`] proposes nearby `(x, n)`
//! pairs when they do.

use std::collections::BTreeMap;

use num::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{
    degree_profile, degree_threshold, optimal_r_colouring, Graph, LabelledGraph, Pattern,
};
use crate::hom::enumerate_injective_copies;
use crate::rat::{int, is_integer, to_usize, Rat};
use crate::tiling::{integral_tiling_number, Limits};

/// Parameters of the four-part layered host on `n` vertices built for a
/// pattern with `h_size` vertices, `r` colour classes, and smallest class
/// size `ell_r`.
#[derive(Debug, Clone)]
pub struct ExtremalSpec {
    pub r: usize,
    pub h_size: usize,
    pub ell_r: usize,
    pub x: Rat,
    pub n: usize,
}

/// The four part sizes, all exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalSizes {
    pub v1: usize,
    pub v2: usize,
    pub v3: usize,
    pub s: usize,
}

impl ExtremalSpec {
    pub fn new(r: usize, h_size: usize, ell_r: usize, x: Rat, n: usize) -> Self {
        ExtremalSpec {
            r,
            h_size,
            ell_r,
            x,
            n,
        }
    }

    /// `delta = (r - 2 + x * ell_r) * n / (r - 1)`.
    pub fn delta(&self) -> Rat {
        degree_threshold(self.r, &self.x, self.ell_r, self.n)
    }

    /// Exact raw part sizes, before integrality checks:
    /// `|V1| = x*ell_r*n`, `|V2| = x*(h-ell_r)*n/(r-1)`,
    /// `|V3| = (r-2)*(1-x*ell_r)*n/(r-1)`, `|S| = (1-x*h)*n/(r-1)`.
    fn raw_sizes(&self) -> [(&'static str, Rat); 4] {
        let n = int(self.n as u64);
        let rm1 = int(self.r as u64 - 1);
        let ell = int(self.ell_r as u64);
        let h = int(self.h_size as u64);
        let v1 = &self.x * &ell * &n;
        let v2 = &self.x * (&h - &ell) * &n / &rm1;
        let v3 = int(self.r as u64 - 2) * (Rat::one() - &self.x * &ell) * &n / &rm1;
        let s = (Rat::one() - &self.x * &h) * &n / &rm1;
        [("V1", v1), ("V2", v2), ("V3", v3), ("S", s)]
    }

    /// Validates the parameter ranges and exact integrality of every part.
    pub fn sizes(&self) -> Result<ExtremalSizes> {
        if self.r < 2 {
            return Err(Error::Input(format!("r = {} must be at least 2", self.r)));
        }
        if self.ell_r == 0 || self.h_size < self.r * self.ell_r {
            return Err(Error::Input(format!(
                "class sizes are inconsistent: need h >= r * ell_r, got {} < {} * {}",
                self.h_size, self.r, self.ell_r
            )));
        }
        if !self.x.is_positive() || self.x >= Rat::new(1.into(), (self.h_size as u64).into()) {
            return Err(Error::Input(format!(
                "x = {} must lie strictly between 0 and 1/{}",
                self.x, self.h_size
            )));
        }
        let mut out = [0usize; 4];
        for (i, (name, value)) in self.raw_sizes().into_iter().enumerate() {
            match to_usize(&value) {
                Some(v) => out[i] = v,
                None => {
                    return Err(Error::Input(format!(
                        "|{name}| = {value} is not a nonnegative integer"
                    )))
                }
            }
        }
        let sizes = ExtremalSizes {
            v1: out[0],
            v2: out[1],
            v3: out[2],
            s: out[3],
        };
        if self.r > 2 && sizes.v3 % (self.r - 2) != 0 {
            return Err(Error::Input(format!(
                "|V3| = {} is not divisible into {} balanced parts",
                sizes.v3,
                self.r - 2
            )));
        }
        debug_assert_eq!(sizes.v1 + sizes.v2 + sizes.v3 + sizes.s, self.n);
        Ok(sizes)
    }
}

/// Builds the layered host: `V1`, `V2`, `S` independent, `V3` a balanced
/// complete `(r-2)`-partite graph, complete bipartite between `V3` and the
/// rest and between `V1` and `V2`, nothing else.
pub fn build_extremal_graph(spec: &ExtremalSpec) -> Result<LabelledGraph> {
    let sizes = spec.sizes()?;
    let v1: Vec<u32> = (0..sizes.v1 as u32).collect();
    let v2: Vec<u32> = (sizes.v1 as u32..(sizes.v1 + sizes.v2) as u32).collect();
    let v3_start = (sizes.v1 + sizes.v2) as u32;
    let v3: Vec<u32> = (v3_start..v3_start + sizes.v3 as u32).collect();
    let s_start = v3_start + sizes.v3 as u32;
    let s: Vec<u32> = (s_start..spec.n as u32).collect();

    let mut edges = Vec::new();
    for &a in &v1 {
        for &b in &v2 {
            edges.push((a, b));
        }
    }
    // V3 induces a balanced complete (r-2)-partite graph; empty when r = 2.
    if spec.r > 2 {
        let part = sizes.v3 / (spec.r - 2);
        for (i, &a) in v3.iter().enumerate() {
            for (j, &b) in v3.iter().enumerate().skip(i + 1) {
                if i / part != j / part {
                    edges.push((a, b));
                }
            }
        }
    }
    for &a in &v3 {
        for b in (0..v3_start).chain(s_start..spec.n as u32) {
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::new(spec.n, edges, Some("extremal".into()))?;
    let parts: BTreeMap<String, Vec<u32>> = [
        ("V1".to_string(), v1),
        ("V2".to_string(), v2),
        ("V3".to_string(), v3),
        ("S".to_string(), s),
    ]
    .into_iter()
    .collect();
    Ok(LabelledGraph { graph, parts })
}

/// Audit of the layered host against the structure it was built to show.
#[derive(Debug, Clone)]
pub struct ExtremalAudit {
    pub copies_checked: usize,
    /// Smallest `|image intersect V1|` over all injective copies; `None`
    /// when no copy exists.
    pub min_v1_intersection: Option<usize>,
    pub v1_ok: bool,
    pub tiling_number: usize,
    pub xn: usize,
    pub tiling_ok: bool,
    pub delta: Rat,
    pub l_count: usize,
    pub expected_l: usize,
    pub profile_ok: bool,
}

impl ExtremalAudit {
    pub fn ok(&self) -> bool {
        self.v1_ok && self.tiling_ok && self.profile_ok
    }
}

/// Verifies computationally that every injective copy of the pattern meets
/// `V1` in at least `ell_r` vertices, that the integral tiling number equals
/// `x*n` exactly, and that exactly `|V1|+|V2|+|V3|` vertices clear the
/// degree threshold.
pub fn audit_extremal_tiling(
    spec: &ExtremalSpec,
    h: &Pattern,
    limits: &Limits,
) -> Result<ExtremalAudit> {
    if h.h_size() != spec.h_size || h.r() != spec.r || h.ell_r() != spec.ell_r {
        return Err(Error::Input(format!(
            "pattern (h={}, r={}, ell_r={}) does not match the host parameters (h={}, r={}, ell_r={})",
            h.h_size(),
            h.r(),
            h.ell_r(),
            spec.h_size,
            spec.r,
            spec.ell_r
        )));
    }
    let xn_rat = &spec.x * int(spec.n as u64);
    if !is_integer(&xn_rat) {
        return Err(Error::Input(format!(
            "tiling target x*n = {xn_rat} is not an integer"
        )));
    }
    let xn = to_usize(&xn_rat).unwrap();
    let labelled = build_extremal_graph(spec)?;
    let g = &labelled.graph;
    let v1 = labelled.part("V1");

    let copies = enumerate_injective_copies(h, g);
    let min_v1 = copies
        .iter()
        .map(|c| c.image.iter().filter(|v| v1.contains(v)).count())
        .min();
    let v1_ok = min_v1.is_none_or(|m| m >= spec.ell_r);

    let (tiling_number, _) = integral_tiling_number(g, h, None, limits)?;
    let sizes = spec.sizes()?;
    let delta = spec.delta();
    let l_count = degree_profile(g, &delta).count_at_or_above();
    let expected_l = sizes.v1 + sizes.v2 + sizes.v3;

    Ok(ExtremalAudit {
        copies_checked: copies.len(),
        min_v1_intersection: min_v1,
        v1_ok,
        tiling_number,
        xn,
        tiling_ok: tiling_number == xn,
        delta,
        l_count,
        expected_l,
        profile_ok: l_count == expected_l,
    })
}

/// Builds the four-part host whose second part carries a spanning cycle:
/// `|V1| = 3xn - 2`, `|V2| = 3xn + 2`, `|V3| = (1-3x)n/2`,
/// `|V4| = (1-9x)n/2`; `V1`, `V3`, `V4` independent, complete bipartite
/// between `V3` and everything else and between `V1` and `V2`.
pub fn build_k333_counterexample(x: &Rat, n: usize) -> Result<LabelledGraph> {
    let three_xn = int(3) * x * int(n as u64);
    let raw = [
        ("V1", &three_xn - int(2)),
        ("V2", &three_xn + int(2)),
        (
            "V3",
            (Rat::one() - int(3) * x) * int(n as u64) / int(2),
        ),
        (
            "V4",
            (Rat::one() - int(9) * x) * int(n as u64) / int(2),
        ),
    ];
    let mut sizes = [0usize; 4];
    for (i, (name, value)) in raw.iter().enumerate() {
        match to_usize(value) {
            Some(v) => sizes[i] = v,
            None => {
                return Err(Error::Input(format!(
                    "|{name}| = {value} is not a nonnegative integer"
                )))
            }
        }
    }
    if sizes[1] < 3 {
        return Err(Error::Input(format!(
            "|V2| = {} is too small to carry a cycle",
            sizes[1]
        )));
    }
    if sizes.iter().sum::<usize>() != n {
        return Err(Error::Input(format!(
            "part sizes {sizes:?} do not sum to n = {n}"
        )));
    }
    let mut start = 0u32;
    let mut parts_vec = Vec::new();
    for size in sizes {
        let part: Vec<u32> = (start..start + size as u32).collect();
        start += size as u32;
        parts_vec.push(part);
    }
    let [v1, v2, v3, v4] = <[Vec<u32>; 4]>::try_from(parts_vec).unwrap();

    let mut edges = Vec::new();
    for &a in &v1 {
        for &b in &v2 {
            edges.push((a, b));
        }
    }
    // Spanning cycle on V2 in index order.
    for i in 0..v2.len() {
        let a = v2[i];
        let b = v2[(i + 1) % v2.len()];
        edges.push((a.min(b), a.max(b)));
    }
    for &a in &v3 {
        for &b in v1.iter().chain(&v2).chain(&v4) {
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::new(n, edges, Some("k333-host".into()))?;
    let parts: BTreeMap<String, Vec<u32>> = [
        ("V1".to_string(), v1),
        ("V2".to_string(), v2),
        ("V3".to_string(), v3),
        ("V4".to_string(), v4),
    ]
    .into_iter()
    .collect();
    Ok(LabelledGraph { graph, parts })
}

/// Packing audit of the cycle-carrying host: the degree profile at the
/// threshold must match the formula count, and branch and bound must prove
/// that no `x*n` disjoint tripartite copies exist.
#[derive(Debug, Clone)]
pub struct K333Audit {
    pub delta: Rat,
    pub l_count: usize,
    pub expected_l: usize,
    pub profile_ok: bool,
    pub xn: usize,
    pub tiling_found: usize,
    pub tiling_below_xn: bool,
}

impl K333Audit {
    pub fn ok(&self) -> bool {
        self.profile_ok && self.tiling_below_xn
    }
}

pub fn audit_k333_counterexample(x: &Rat, n: usize, limits: &Limits) -> Result<K333Audit> {
    let labelled = build_k333_counterexample(x, n)?;
    let pattern = standard_patterns("K_3,3,3")?;
    let xn_rat = x * int(n as u64);
    let xn = to_usize(&xn_rat).ok_or_else(|| {
        Error::Input(format!("tiling target x*n = {xn_rat} is not an integer"))
    })?;
    let delta = degree_threshold(3, x, 3, n);
    let expected = (int(1) + int(9) * x) * int(n as u64) / int(2);
    let expected_l = to_usize(&expected).ok_or_else(|| {
        Error::Input(format!("expected profile count {expected} is not an integer"))
    })?;
    let l_count = degree_profile(&labelled.graph, &delta).count_at_or_above();
    let (found, _) = integral_tiling_number(&labelled.graph, &pattern, Some(xn), limits)?;
    Ok(K333Audit {
        delta,
        l_count,
        expected_l,
        profile_ok: l_count == expected_l,
        xn,
        tiling_found: found,
        tiling_below_xn: found < xn,
    })
}

/// Replaces every vertex by `s` clones and every edge by a complete
/// bipartite graph between the clone sets. Clone `j` of vertex `v` is
/// `v*s + j`.
pub fn blow_up(g: &Graph, s: usize) -> Result<Graph> {
    if s == 0 {
        return Err(Error::Input("blow-up factor must be at least 1".into()));
    }
    let mut edges = Vec::with_capacity(g.edge_count() * s * s);
    for &(u, v) in g.edges() {
        for i in 0..s as u32 {
            for j in 0..s as u32 {
                edges.push((u * s as u32 + i, v * s as u32 + j));
            }
        }
    }
    Graph::new(g.n() * s, edges, g.label().map(|l| format!("{l}-blowup")))
}

/// Parses a standard pattern name into a bare graph.
///
/// Accepted families: `K<k>` complete, `K<a,b,...>` complete multipartite,
/// `P<k>` path on `k` vertices, `C<k>` cycle; an optional underscore may
/// follow the family letter, as in `K_3,3,3`.
pub fn pattern_graph(name: &str) -> Result<Graph> {
    let name = name.trim();
    let mut chars = name.chars();
    let family = chars
        .next()
        .ok_or_else(|| Error::Input("empty pattern name".into()))?;
    let rest: &str = chars.as_str().trim_start_matches('_');
    let nums: Vec<usize> = rest
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Input(format!("invalid pattern name {name:?}")))
        })
        .collect::<Result<_>>()?;
    if nums.is_empty() || nums.iter().any(|&k| k == 0) {
        return Err(Error::Input(format!("invalid pattern name {name:?}")));
    }
    match family {
        'K' | 'k' => {
            if nums.len() == 1 {
                let k = nums[0];
                if k < 2 {
                    return Err(Error::Input("complete pattern needs >= 2 vertices".into()));
                }
                Ok(crate::graph::complete_graph(k))
            } else {
                // Complete multipartite with the given part sizes.
                let total: usize = nums.iter().sum();
                let mut starts = Vec::with_capacity(nums.len());
                let mut acc = 0;
                for &size in &nums {
                    starts.push(acc);
                    acc += size;
                }
                let part_of = |v: usize| starts.iter().rposition(|&s| s <= v).unwrap();
                let edges = (0..total as u32).flat_map(|u| {
                    (u + 1..total as u32)
                        .filter(move |&v| part_of(u as usize) != part_of(v as usize))
                        .map(move |v| (u, v))
                });
                Graph::new(total, edges, Some(name.to_string()))
            }
        }
        'P' | 'p' => {
            if nums.len() != 1 || nums[0] < 2 {
                return Err(Error::Input(format!(
                    "path pattern {name:?} needs a single size >= 2"
                )));
            }
            Ok(crate::graph::path_graph(nums[0]))
        }
        'C' | 'c' => {
            if nums.len() != 1 || nums[0] < 3 {
                return Err(Error::Input(format!(
                    "cycle pattern {name:?} needs a single size >= 3"
                )));
            }
            Ok(crate::graph::cycle_graph(nums[0]))
        }
        _ => Err(Error::Input(format!("unknown pattern family {name:?}"))),
    }
}

/// A named pattern with its canonical colouring: the chromatic number is
/// found by increasing `r`, and among proper `r`-colourings one minimizing
/// the smallest class is chosen.
pub fn standard_patterns(name: &str) -> Result<Pattern> {
    let graph = pattern_graph(name)?;
    pattern_for_graph(graph)
}

/// Wraps an arbitrary graph as a pattern at its chromatic number.
pub fn pattern_for_graph(graph: Graph) -> Result<Pattern> {
    for r in 2..=graph.n().max(2) {
        if let Some(p) = optimal_r_colouring(&graph, r) {
            return Ok(p);
        }
    }
    Err(Error::Input(
        "graph admits no proper colouring with at least 2 non-empty classes".into(),
    ))
}

/// Seeded Erdos-Renyi host: every pair becomes an edge independently with
/// exact probability `p`. The same seed always yields the same graph.
pub fn random_graph(n: usize, p: &Rat, seed: u64) -> Result<Graph> {
    if p.is_negative() || p > &Rat::one() {
        return Err(Error::Input(format!("edge probability {p} not in [0, 1]")));
    }
    let numer = p.numer();
    let denom: u64 = p
        .denom()
        .try_into()
        .map_err(|_| Error::Input("edge probability denominator too large".into()))?;
    let numer: u64 = numer
        .try_into()
        .map_err(|_| Error::Input("edge probability numerator too large".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            // Exact Bernoulli(p): uniform draw from 0..denom lands below numer.
            if rng.gen_range(0..denom) < numer {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges, None)
}

/// Nearby parameter pairs with exactly integral part sizes, for error
/// messages: the same `x` with adjusted `n`, then slightly adjusted
/// numerators of `x`.
pub fn suggest_parameters(
    r: usize,
    h_size: usize,
    ell_r: usize,
    x: &Rat,
    n: usize,
) -> Vec<(Rat, usize)> {
    let mut found = Vec::new();
    let lo = n.saturating_sub(3 * (r.max(2) - 1) * h_size).max(1);
    let hi = n + 3 * (r.max(2) - 1) * h_size;
    for cand_n in lo..=hi {
        let spec = ExtremalSpec::new(r, h_size, ell_r, x.clone(), cand_n);
        if spec.sizes().is_ok() && is_integer(&(x * int(cand_n as u64))) {
            found.push((x.clone(), cand_n));
        }
        if found.len() >= 5 {
            return found;
        }
    }
    // Vary the numerator of x at the same n.
    if let (Ok(a), Ok(q)) = (u64::try_from(x.numer()), u64::try_from(x.denom())) {
        for cand_a in a.saturating_sub(2)..=a + 2 {
            if cand_a == 0 {
                continue;
            }
            let cand_x = Rat::new(cand_a.into(), q.into());
            let spec = ExtremalSpec::new(r, h_size, ell_r, cand_x.clone(), n);
            if spec.sizes().is_ok() && is_integer(&(&cand_x * int(n as u64))) {
                found.push((cand_x, n));
            }
            if found.len() >= 5 {
                break;
            }
        }
    }
    found
}
