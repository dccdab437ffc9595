//! Explicit graphs for the two parametric families, colorings, and the
//! equitable-coloring verifier.
//!
//! Vertex and color indices are 0-based in memory. File formats in
//! [`dimacs`] are 1-based.

pub mod dimacs;

use std::fmt;

use crate::closedform::ProductSpec;
use crate::error::{domain, Result};

/// Dense symmetric, irreflexive adjacency relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        let words = vertex_count.div_ceil(64).max(1);
        Graph {
            vertex_count,
            words,
            rows: vec![0; vertex_count * words],
        }
    }

    /// Builds a graph from an edge list; rejects loops and out-of-range ends.
    /// Repeated edges are merged.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(vertex_count);
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return domain(format!("edge ({u}, {v}) out of range for {vertex_count} vertices"));
            }
            if u == v {
                return domain(format!("loop at vertex {u}"));
            }
            g.set(u, v);
            g.set(v, u);
        }
        Ok(g)
    }

    fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count).filter(move |&v| self.has_edge(u, v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count).flat_map(move |u| {
            ((u + 1)..self.vertex_count)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Adjacency row as a single word; only valid for graphs of at most 64 vertices.
    pub fn row_mask(&self, u: usize) -> u64 {
        debug_assert!(self.vertex_count <= 64);
        self.rows[u * self.words]
    }
}

/// A vertex `(x_i^j, y^s)` of the product, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    /// Partite class `i`.
    pub part: usize,
    /// Index `j` within the class.
    pub index: usize,
    /// Coordinate `s` in `K_n`.
    pub column: usize,
}

/// Bijection between product vertices and linear indices:
/// `offset(i) + j*n + s` with `offset(i) = n * sum_{i' < i} m_{i'}`.
///
/// Block `i` of the product therefore occupies the same index range as
/// partite set `i` of the companion multipartite graph.
#[derive(Debug, Clone)]
pub struct ProductLayout {
    parts: Vec<usize>,
    n: usize,
    offsets: Vec<usize>,
}

impl ProductLayout {
    pub fn new(spec: &ProductSpec) -> Self {
        let n = spec.n();
        let mut offsets = Vec::with_capacity(spec.r());
        let mut acc = 0;
        for &p in spec.parts() {
            offsets.push(acc);
            acc += p * n;
        }
        ProductLayout {
            parts: spec.parts().to_vec(),
            n,
            offsets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().sum::<usize>() * self.n
    }

    pub fn index_of(&self, v: Vertex) -> usize {
        self.offsets[v.part] + v.index * self.n + v.column
    }

    pub fn vertex_of(&self, idx: usize) -> Vertex {
        let part = self.offsets.partition_point(|&o| o <= idx) - 1;
        let local = idx - self.offsets[part];
        Vertex {
            part,
            index: local / self.n,
            column: local % self.n,
        }
    }

    /// Linear index range of block `part`.
    pub fn block(&self, part: usize) -> std::ops::Range<usize> {
        let start = self.offsets[part];
        start..start + self.parts[part] * self.n
    }
}

/// `K_{sizes}`: vertices in different parts are adjacent.
pub fn build_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() {
        return domain("size list is empty");
    }
    if sizes.contains(&0) {
        return domain("sizes must be positive");
    }
    let part_of: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    let total = part_of.len();
    let mut g = Graph::empty(total);
    for u in 0..total {
        for v in (u + 1)..total {
            if part_of[u] != part_of[v] {
                g.set(u, v);
                g.set(v, u);
            }
        }
    }
    Ok(g)
}

/// `K_{m_1,...,m_r} x K_n`: two vertices are adjacent iff they lie in
/// different parts and different columns.
pub fn build_product(spec: &ProductSpec) -> Graph {
    let layout = ProductLayout::new(spec);
    let total = layout.vertex_count();
    let labels: Vec<Vertex> = (0..total).map(|i| layout.vertex_of(i)).collect();
    let mut g = Graph::empty(total);
    for u in 0..total {
        for v in (u + 1)..total {
            if labels[u].part != labels[v].part && labels[u].column != labels[v].column {
                g.set(u, v);
                g.set(v, u);
            }
        }
    }
    g
}

/// A total map from vertices to colors `0..k`, with its class census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<usize>,
    k: usize,
    census: Vec<usize>,
}

impl Coloring {
    pub fn new(assignment: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return domain("k must be positive");
        }
        let mut census = vec![0; k];
        for (v, &c) in assignment.iter().enumerate() {
            if c >= k {
                return domain(format!("vertex {v} has color {c} outside 0..{k}"));
            }
            census[c] += 1;
        }
        Ok(Coloring { assignment, k, census })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn color_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Class size per color; empty classes are present with size 0.
    pub fn census(&self) -> &[usize] {
        &self.census
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Sorted multiset of class sizes.
    pub fn size_profile(&self) -> Vec<usize> {
        let mut s = self.census.clone();
        s.sort_unstable();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    ImproperEdge(usize, usize),
    NotEquitable(Vec<usize>),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => write!(f, "ok"),
            Verdict::ImproperEdge(u, v) => write!(f, "ImproperEdge({}, {})", u + 1, v + 1),
            Verdict::NotEquitable(census) => {
                let sizes: Vec<String> = census.iter().map(|s| s.to_string()).collect();
                write!(f, "NotEquitable({})", sizes.join(","))
            }
        }
    }
}

/// Checks properness first (reporting the lexicographically first
/// monochromatic edge), then that class sizes differ by at most one.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<Verdict> {
    if c.assignment.len() != g.vertex_count() {
        return domain(format!(
            "coloring covers {} vertices, graph has {}",
            c.assignment.len(),
            g.vertex_count()
        ));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| c.assignment[u] == c.assignment[v]) {
        return Ok(Verdict::ImproperEdge(u, v));
    }
    let max = c.census.iter().max().copied().unwrap_or(0);
    let min = c.census.iter().min().copied().unwrap_or(0);
    if max - min > 1 {
        return Ok(Verdict::NotEquitable(c.census.clone()));
    }
    Ok(Verdict::Ok)
}

/// Shape of a vertex set inside the product graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    /// All vertices share partite class `i`.
    Block(usize),
    /// All vertices share column `s` (and span more than one part).
    Column(usize),
    NotIndependent,
}

/// Classifies a set of linear indices of `build_product(spec)`.
/// Sets that are both a block and a column report `Block`.
pub fn classify_class(spec: &ProductSpec, class: &[usize]) -> Result<ClassKind> {
    let layout = ProductLayout::new(spec);
    let Some(&first) = class.first() else {
        return domain("cannot classify an empty vertex set");
    };
    if let Some(&bad) = class.iter().find(|&&v| v >= layout.vertex_count()) {
        return domain(format!("vertex {bad} outside the product graph"));
    }
    let head = layout.vertex_of(first);
    let labels = class.iter().map(|&v| layout.vertex_of(v));
    if labels.clone().all(|x| x.part == head.part) {
        Ok(ClassKind::Block(head.part))
    } else if labels.clone().all(|x| x.column == head.column) {
        Ok(ClassKind::Column(head.column))
    } else {
        Ok(ClassKind::NotIndependent)
    }
}

/// Whether every class of an equitable `floor(mn/(m+1))`-coloring of the
/// companion graph has size `m + 1` or `m + 2`.
pub fn critical_class_sizes_ok(spec: &ProductSpec, c: &Coloring) -> Result<bool> {
    let m = spec.m();
    if !spec.formula_applicable() {
        return domain(format!("requires m <= n (m={m}, n={})", spec.n()));
    }
    let k = spec.vertex_count() / (m + 1);
    if c.k() != k {
        return domain(format!("coloring has k={}, expected floor(mn/(m+1))={k}", c.k()));
    }
    Ok(c.census().iter().all(|&s| s == m + 1 || s == m + 2))
}
