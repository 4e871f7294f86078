//! Host graphs, patterns with proper colourings, and their serialization.
//!
//! Graphs are finite, simple and undirected. Vertices are `0..n`, edges are
//! stored canonically as `(min, max)` pairs so that serialization is
//! deterministic. A [`Pattern`] is the fixed graph `H` to tile with, together
//! with a proper `r`-colouring whose class sizes are reported in
//! non-increasing order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{int, Rat};

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    masks: Vec<Vec<u64>>,
    label: Option<String>,
}

impl Graph {
    /// Builds a graph, canonicalizing each edge to `(min, max)`.
    ///
    /// Self-loops, duplicate edges and out-of-range endpoints are input
    /// errors rather than silently dropped, so generator bugs surface early.
    pub fn new<I>(n: usize, edges: I, label: Option<String>) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut canon: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        let words = n.div_ceil(64);
        let mut masks = vec![vec![0u64; words]; n];
        for &(u, v) in &canon {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            masks[u as usize][v as usize / 64] |= 1 << (v % 64);
            masks[v as usize][u as usize / 64] |= 1 << (u % 64);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adj,
            masks,
            label,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v
            && (u as usize) < self.n
            && (v as usize) < self.n
            && self.masks[u as usize][v as usize / 64] >> (v % 64) & 1 == 1
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    /// Neighbourhood of `v` as a bitset, one `u64` word per 64 vertices.
    pub(crate) fn neighbor_mask(&self, v: u32) -> &[u64] {
        &self.masks[v as usize]
    }

    /// Number of neighbours of `v`.
    pub fn degree(&self, v: u32) -> Result<usize> {
        if (v as usize) < self.n {
            Ok(self.adj[v as usize].len())
        } else {
            Err(Error::Input(format!(
                "vertex {v} out of range for a graph on {} vertices",
                self.n
            )))
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }
}

/// The split of `V(G)` at an exact degree threshold: `L` holds every vertex
/// of degree at least the threshold, `S` the rest.
#[derive(Debug, Clone)]
pub struct DegreeProfile {
    pub threshold: Rat,
    pub l: Vec<u32>,
    pub s: Vec<u32>,
}

impl DegreeProfile {
    pub fn count_at_or_above(&self) -> usize {
        self.l.len()
    }

    pub fn in_l(&self, v: u32) -> bool {
        self.l.binary_search(&v).is_ok()
    }
}

/// Partitions the vertices by comparing integer degrees against a rational
/// threshold, exactly.
pub fn degree_profile(g: &Graph, threshold: &Rat) -> DegreeProfile {
    let mut l = Vec::new();
    let mut s = Vec::new();
    for v in 0..g.n() as u32 {
        if &int(g.neighbors(v).len() as u64) >= threshold {
            l.push(v);
        } else {
            s.push(v);
        }
    }
    DegreeProfile {
        threshold: threshold.clone(),
        l,
        s,
    }
}

/// True iff no edge of `h` has both endpoints in the same class.
pub fn is_proper_colouring(h: &Graph, colouring: &[usize]) -> bool {
    colouring.len() == h.n()
        && h.edges()
            .iter()
            .all(|&(u, v)| colouring[u as usize] != colouring[v as usize])
}

/// A pattern graph `H` with a proper `r`-colouring.
///
/// Classes are relabelled on construction so that `class_sizes` is
/// non-increasing; `colouring[v]` indexes into that order. Every class is
/// non-empty, so `class_sizes.last()` is the smallest class size.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: Graph,
    r: usize,
    colouring: Vec<usize>,
    class_sizes: Vec<usize>,
}

impl Pattern {
    pub fn new(graph: Graph, r: usize, colouring: Vec<usize>) -> Result<Self> {
        if r < 2 {
            return Err(Error::Input(format!("colour count {r} must be at least 2")));
        }
        if colouring.len() != graph.n() {
            return Err(Error::Input(
                "colouring must assign a class to every vertex".into(),
            ));
        }
        if let Some(&c) = colouring.iter().find(|&&c| c >= r) {
            return Err(Error::Input(format!("colour {c} out of range 0..{r}")));
        }
        if !is_proper_colouring(&graph, &colouring) {
            return Err(Error::Input("colouring is not proper".into()));
        }
        let mut sizes = vec![0usize; r];
        for &c in &colouring {
            sizes[c] += 1;
        }
        if sizes.iter().any(|&s| s == 0) {
            return Err(Error::Input(
                "every colour class must be non-empty".into(),
            ));
        }
        // Relabel classes to non-increasing size; ties keep the class whose
        // first vertex appears earliest.
        let mut first = vec![usize::MAX; r];
        for (v, &c) in colouring.iter().enumerate() {
            first[c] = first[c].min(v);
        }
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&c| (std::cmp::Reverse(sizes[c]), first[c]));
        let mut relabel = vec![0usize; r];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let colouring: Vec<usize> = colouring.iter().map(|&c| relabel[c]).collect();
        let class_sizes: Vec<usize> = order.iter().map(|&c| sizes[c]).collect();
        Ok(Pattern {
            graph,
            r,
            colouring,
            class_sizes,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn colouring(&self) -> &[usize] {
        &self.colouring
    }

    /// Class sizes `l_1 >= ... >= l_r`.
    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Size of the smallest colour class.
    pub fn ell_r(&self) -> usize {
        *self.class_sizes.last().unwrap()
    }

    pub fn h_size(&self) -> usize {
        self.graph.n()
    }

    /// Vertices per class, indexed like `class_sizes`.
    pub fn classes(&self) -> Vec<Vec<u32>> {
        let mut classes = vec![Vec::new(); self.r];
        for (v, &c) in self.colouring.iter().enumerate() {
            classes[c].push(v as u32);
        }
        classes
    }
}

/// Searches all proper colourings of `h` with exactly `r` non-empty classes
/// and returns one minimizing the smallest class size.
///
/// Ties are broken by the lexicographically smallest sorted class-size
/// vector, then by the smallest colour sequence, so the result is unique.
/// Returns `None` when no such colouring exists.
pub fn optimal_r_colouring(h: &Graph, r: usize) -> Option<Pattern> {
    if r < 2 || h.n() < r {
        return None;
    }
    struct Search<'a> {
        h: &'a Graph,
        r: usize,
        assigned: Vec<usize>,
        counts: Vec<usize>,
        // (ell_r, sorted sizes desc) of the best colouring so far
        best: Option<(usize, Vec<usize>, Vec<usize>)>,
    }
    impl Search<'_> {
        fn go(&mut self, v: usize) {
            let n = self.h.n();
            if v == n {
                if self.counts.iter().any(|&c| c == 0) {
                    return;
                }
                let mut sorted = self.counts.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let ell = *sorted.last().unwrap();
                let better = match &self.best {
                    None => true,
                    Some((be, bs, _)) => (ell, &sorted) < (*be, bs),
                };
                if better {
                    self.best = Some((ell, sorted, self.assigned.clone()));
                }
                return;
            }
            // Too few vertices left to populate the empty classes: prune.
            let empty = self.counts.iter().filter(|&&c| c == 0).count();
            if n - v < empty {
                return;
            }
            for c in 0..self.r {
                let ok = self
                    .h
                    .neighbors(v as u32)
                    .iter()
                    .filter(|&&u| (u as usize) < v)
                    .all(|&u| self.assigned[u as usize] != c);
                if ok {
                    self.assigned[v] = c;
                    self.counts[c] += 1;
                    self.go(v + 1);
                    self.counts[c] -= 1;
                }
            }
        }
    }
    let mut search = Search {
        h,
        r,
        assigned: vec![0; h.n()],
        counts: vec![0; r],
        best: None,
    };
    search.go(0);
    search
        .best
        .map(|(_, _, colouring)| Pattern::new(h.clone(), r, colouring).expect("search output is proper"))
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// A graph together with a named partition of its vertices, as produced by
/// the host-graph generators.
#[derive(Debug, Clone)]
pub struct LabelledGraph {
    pub graph: Graph,
    pub parts: BTreeMap<String, Vec<u32>>,
}

impl LabelledGraph {
    pub fn part(&self, name: &str) -> &[u32] {
        self.parts.get(name).map_or(&[], Vec::as_slice)
    }

    pub fn to_json(&self) -> String {
        write_graph_json(&self.graph, Some(&self.parts))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parts: Option<BTreeMap<String, Vec<u32>>>,
}

/// Parses the plain text format: first line `n`, then one `u v` edge per
/// line with `0 <= u < v < n`; `#` lines and blank lines are ignored.
pub fn parse_graph_text(input: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno,
            msg,
        };
        match n {
            None => {
                n = Some(
                    line.parse()
                        .map_err(|_| err(format!("expected vertex count, got {line:?}")))?,
                );
            }
            Some(count) => {
                let mut it = line.split_whitespace();
                let (u, v) = match (it.next(), it.next(), it.next()) {
                    (Some(u), Some(v), None) => (u, v),
                    _ => return Err(err(format!("expected \"u v\", got {line:?}"))),
                };
                let u: u32 = u
                    .parse()
                    .map_err(|_| err(format!("invalid vertex {u:?}")))?;
                let v: u32 = v
                    .parse()
                    .map_err(|_| err(format!("invalid vertex {v:?}")))?;
                if u >= v {
                    return Err(err(format!("edge {u} {v} must satisfy u < v")));
                }
                if v as usize >= count {
                    return Err(err(format!("endpoint {v} out of range 0..{count}")));
                }
                if !seen.insert((u, v)) {
                    return Err(err(format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: input.lines().count().max(1),
        msg: "missing vertex count".into(),
    })?;
    Graph::new(n, edges, None)
}

/// Canonical text form: `n`, then sorted `u v` lines.
pub fn write_graph_text(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_graph_json(input: &str) -> Result<Graph> {
    let parsed: GraphJson = serde_json::from_str(input)
        .map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
    Graph::new(parsed.n, parsed.edges, parsed.label)
}

pub fn write_graph_json(g: &Graph, parts: Option<&BTreeMap<String, Vec<u32>>>) -> String {
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges().to_vec(),
        label: g.label().map(str::to_owned),
        parts: parts.cloned(),
    };
    serde_json::to_string_pretty(&doc).expect("graph serialization cannot fail")
}

/// Dispatches on the leading character: `{` means JSON, anything else the
/// text format.
pub fn parse_graph_auto(input: &str) -> Result<Graph> {
    if input.trim_start().starts_with('{') {
        parse_graph_json(input)
    } else {
        parse_graph_text(input)
    }
}

/// Shorthands used throughout the tests.
#[doc(hidden)]
pub fn complete_graph(k: usize) -> Graph {
    let edges = (0..k as u32)
        .flat_map(|u| (u + 1..k as u32).map(move |v| (u, v)));
    Graph::new(k, edges, None).unwrap()
}

#[doc(hidden)]
pub fn cycle_graph(k: usize) -> Graph {
    assert!(k >= 3);
    let edges = (0..k as u32).map(|u| {
        let v = (u + 1) % k as u32;
        (u.min(v), u.max(v))
    });
    Graph::new(k, edges, None).unwrap()
}

#[doc(hidden)]
pub fn path_graph(k: usize) -> Graph {
    let edges = (0..k.saturating_sub(1) as u32).map(|u| (u, u + 1));
    Graph::new(k, edges, None).unwrap()
}

/// `delta = (r - 2 + x * ell_r) * n / (r - 1)`, the degree threshold used by
/// the profile-based bounds.
pub fn degree_threshold(r: usize, x: &Rat, ell_r: usize, n: usize) -> Rat {
    (int(r as i64 - 2) + x * int(ell_r as u64)) * int(n as u64) / int(r as i64 - 1)
}

impl std::fmt::Display for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "graph(n={}, m={})", self.n, self.edges.len())
    }
}

/// Checks `sum_v deg(v) = 2|E|`; used by property tests and generators.
pub fn handshake_ok(g: &Graph) -> bool {
    let total: usize = g.degrees().iter().sum();
    total == 2 * g.edge_count()
}

impl Graph {
    /// The subgraph induced by `keep` (sorted, deduplicated internally),
    /// with vertices relabelled to `0..keep.len()` in sorted order.
    pub fn induced(&self, keep: &[u32]) -> Graph {
        let mut keep: Vec<u32> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let index: BTreeMap<u32, u32> = keep
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((*index.get(&u)?, *index.get(&v)?)));
        Graph::new(keep.len(), edges, None).expect("induced subgraph of a valid graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn degree_examples() {
        assert_eq!(complete_graph(3).degree(0).unwrap(), 2);
        let empty = Graph::new(4, [], None).unwrap();
        assert_eq!(empty.degree(2).unwrap(), 0);
        assert_eq!(cycle_graph(5).degree(3).unwrap(), 2);
        assert!(complete_graph(3).degree(5).is_err());
    }

    #[test]
    fn degree_profile_examples() {
        let k4 = complete_graph(4);
        let profile = degree_profile(&k4, &int(3));
        assert_eq!(profile.l, vec![0, 1, 2, 3]);
        assert!(profile.s.is_empty());

        // Star K_{1,3} with center 0.
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)], None).unwrap();
        let profile = degree_profile(&star, &int(2));
        assert_eq!(profile.count_at_or_above(), 1);
        assert_eq!(profile.l, vec![0]);
    }

    #[test]
    fn degree_profile_is_exact_on_rational_thresholds() {
        let k4 = complete_graph(4);
        assert_eq!(degree_profile(&k4, &rat(7, 2)).count_at_or_above(), 0);
        assert_eq!(degree_profile(&k4, &rat(5, 2)).count_at_or_above(), 4);
        assert_eq!(degree_profile(&k4, &int(3)).count_at_or_above(), 4);
    }

    #[test]
    fn proper_colouring_examples() {
        let k3 = complete_graph(3);
        assert!(is_proper_colouring(&k3, &[0, 1, 2]));
        assert!(!is_proper_colouring(&k3, &[0, 0, 1]));
        let c5 = cycle_graph(5);
        for a in 0..2usize {
            for b in 0..2usize {
                for c in 0..2usize {
                    for d in 0..2usize {
                        for e in 0..2usize {
                            assert!(!is_proper_colouring(&c5, &[a, b, c, d, e]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn optimal_colouring_examples() {
        let p3 = path_graph(3);
        let pat = optimal_r_colouring(&p3, 2).unwrap();
        assert_eq!(pat.class_sizes(), &[2, 1]);
        assert_eq!(pat.ell_r(), 1);

        assert!(optimal_r_colouring(&cycle_graph(5), 2).is_none());

        let c5 = cycle_graph(5);
        let pat = optimal_r_colouring(&c5, 3).unwrap();
        assert_eq!(pat.class_sizes(), &[2, 2, 1]);
    }

    #[test]
    fn colouring_requires_nonempty_classes() {
        // K_2 admits no surjective proper 3-colouring.
        assert!(optimal_r_colouring(&complete_graph(2), 3).is_none());
    }

    #[test]
    fn pattern_relabels_classes_by_size() {
        let p3 = path_graph(3);
        // Colour the middle vertex 0 and the endpoints 1: sizes (1, 2) as
        // given, reported resorted as (2, 1) with relabelled indices.
        let pat = Pattern::new(p3, 2, vec![1, 0, 1]).unwrap();
        assert_eq!(pat.class_sizes(), &[2, 1]);
        assert_eq!(pat.colouring(), &[0, 1, 0]);
        assert_eq!(pat.classes(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn parse_and_write_text() {
        let g = parse_graph_text("3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g, complete_graph(3));
        assert_eq!(write_graph_text(&g), "3\n0 1\n0 2\n1 2\n");

        // Round trip is identity on the canonical form.
        let canon = write_graph_text(&g);
        assert_eq!(write_graph_text(&parse_graph_text(&canon).unwrap()), canon);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_graph_text("2\n0 2\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("out of range"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_graph_text("3\n0 1\n0 1\n").is_err());
        assert!(parse_graph_text("3\n1 0\n").is_err());
        assert!(parse_graph_text("3\nx y\n").is_err());
        assert!(parse_graph_text("# only a comment\n").is_err());
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let g = parse_graph_text("# triangle\n3\n\n0 1\n# middle\n1 2\n0 2\n").unwrap();
        assert_eq!(g, complete_graph(3));
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::new(4, [(0, 1), (2, 3)], Some("pair".into())).unwrap();
        let json = write_graph_json(&g, None);
        let back = parse_graph_json(&json).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.label(), Some("pair"));
        assert_eq!(parse_graph_auto(&json).unwrap(), g);
        assert_eq!(parse_graph_auto("2\n0 1\n").unwrap(), complete_graph(2));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(Graph::new(3, [(0, 3)], None).is_err());
        assert!(Graph::new(3, [(1, 1)], None).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)], None).is_err());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let c5 = cycle_graph(5);
        let sub = c5.induced(&[0, 1, 3]);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edges(), &[(0, 1)]);
    }
}
