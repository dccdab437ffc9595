//! Witness constructions for equitable colorings.
//!
//! Colorings of the companion graph `K_{m_1 n,...,m_r n}` are simultaneous
//! q-partitions of the block sizes. Colorings of the product add column
//! classes: an independent set of the product either stays inside one block
//! or inside one column, so any equitable coloring is a choice of "mixed"
//! column classes (spanning at least two blocks) plus a q-partition of what
//! each block has left. [`color_product`] searches exactly that space.

use serde::Serialize;

use crate::closedform::{ProductSpec, ThresholdCase, ThresholdReport};
use crate::error::{domain, Error, Result};
use crate::graphs::{build_multipartite, build_product, verify_coloring, Coloring, ProductLayout};
use crate::partitions::{count_range, split_step, QPartition};

/// Simultaneous q-partitions of several block sizes, one per block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimultaneousPartition {
    pub q: usize,
    pub per_part: Vec<QPartition>,
    pub total_count: usize,
}

impl SimultaneousPartition {
    fn from_parts(q: usize, per_part: Vec<QPartition>) -> Self {
        let total_count = per_part.iter().map(QPartition::count).sum();
        SimultaneousPartition {
            q,
            per_part,
            total_count,
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.per_part.iter().map(|p| p.n).collect()
    }

    /// Lays the partition out as a coloring of `K_{sizes}`: inside each
    /// part, `a` classes of size `q` then `b` of size `q + 1`, on
    /// consecutive vertices.
    pub fn to_coloring(&self) -> Coloring {
        let mut assignment = Vec::with_capacity(self.sizes().iter().sum());
        let mut color = 0;
        for p in &self.per_part {
            for size in p.addends() {
                assignment.extend(std::iter::repeat_n(color, size));
                color += 1;
            }
        }
        Coloring::new(assignment, self.total_count.max(1)).expect("colors are allocated below total_count")
    }
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return domain("size list is empty");
    }
    if sizes.contains(&0) {
        return domain("sizes must be positive");
    }
    Ok(())
}

/// Splits `k` into per-part counts inside `[lo_i, hi_i]`: every count starts
/// at its minimum and the remainder is handed out in part order.
fn distribute(ranges: &[(usize, usize)], k: usize) -> Option<Vec<usize>> {
    let lo: usize = ranges.iter().map(|r| r.0).sum();
    let hi: usize = ranges.iter().map(|r| r.1).sum();
    if k < lo || k > hi {
        return None;
    }
    let mut left = k - lo;
    Some(
        ranges
            .iter()
            .map(|&(l, h)| {
                let extra = left.min(h - l);
                left -= extra;
                l + extra
            })
            .collect(),
    )
}

/// Finds simultaneous `floor(N/k)`-partitions of `sizes` with `k` addends in
/// total, or `None` when `K_{sizes}` has no equitable `k`-coloring.
pub fn simultaneous_partition(sizes: &[usize], k: usize) -> Result<Option<SimultaneousPartition>> {
    check_sizes(sizes)?;
    let total: usize = sizes.iter().sum();
    if k == 0 || k > total {
        return domain(format!("k={k} outside 1..={total}"));
    }
    let q = total / k;
    let Some(ranges) = sizes.iter().map(|&s| count_range(s, q)).collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    let Some(counts) = distribute(&ranges, k) else {
        return Ok(None);
    };
    let per_part = sizes
        .iter()
        .zip(counts)
        .map(|(&s, c)| QPartition::with_count(s, q, c).expect("count lies in the realizable range"))
        .collect();
    Ok(Some(SimultaneousPartition::from_parts(q, per_part)))
}

fn singletons(total: usize, k: usize) -> Result<Coloring> {
    Coloring::new((0..total).collect(), k)
}

/// Equitable `k`-coloring of `K_{sizes}`, or `None` if there is none.
/// For `k` above the vertex count the extra classes stay empty.
pub fn color_multipartite(sizes: &[usize], k: usize) -> Result<Option<Coloring>> {
    check_sizes(sizes)?;
    if k == 0 {
        return domain("k must be positive");
    }
    let total: usize = sizes.iter().sum();
    let coloring = if k >= total {
        singletons(total, k)?
    } else {
        match simultaneous_partition(sizes, k)? {
            Some(sp) => sp.to_coloring(),
            None => return Ok(None),
        }
    };
    let g = build_multipartite(sizes)?;
    let verdict = verify_coloring(&g, &coloring)?;
    assert!(verdict.is_ok(), "multipartite layout failed verification: {verdict}");
    Ok(Some(coloring))
}

/// The induction step could not be applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoStepAvailable;

fn rescale_down(p: &QPartition) -> QPartition {
    debug_assert_eq!(p.b, 0);
    QPartition {
        n: p.n,
        q: p.q - 1,
        a: 0,
        b: p.a,
    }
}

/// One more class, keeping every class size in a two-value set.
///
/// In order of preference:
/// 1. the first part with `b >= q` is split at the same scale;
/// 2. if every part is maximal with `b = 0`, the first part with
///    `a >= q - 1` moves to scale `q - 1` and the others are rewritten there;
/// 3. if every part is maximal and exactly one has `b > 0`, that part takes
///    its minimal `(q-1)`-partition (one addend more when `q` does not divide
///    it) and the others are rewritten at scale `q - 1`.
pub fn increment_coloring(sp: &SimultaneousPartition) -> std::result::Result<SimultaneousPartition, NoStepAvailable> {
    let q = sp.q;
    if let Some(i) = sp.per_part.iter().position(|p| p.b >= q) {
        let mut parts = sp.per_part.clone();
        parts[i] = split_step(&parts[i]).map_err(|_| NoStepAvailable)?;
        return Ok(SimultaneousPartition::from_parts(q, parts));
    }
    if q < 2 {
        return Err(NoStepAvailable);
    }
    let uneven: Vec<usize> = (0..sp.per_part.len()).filter(|&i| sp.per_part[i].b != 0).collect();
    let (target, replacement) = match uneven.as_slice() {
        [] => {
            let i = sp
                .per_part
                .iter()
                .position(|p| split_step(p).is_ok())
                .ok_or(NoStepAvailable)?;
            (i, split_step(&sp.per_part[i]).map_err(|_| NoStepAvailable)?)
        }
        [i] => {
            let p = &sp.per_part[*i];
            let (lo, _) = count_range(p.n, q - 1).ok_or(NoStepAvailable)?;
            if lo != p.count() + 1 {
                return Err(NoStepAvailable);
            }
            (*i, QPartition::with_count(p.n, q - 1, lo).ok_or(NoStepAvailable)?)
        }
        _ => return Err(NoStepAvailable),
    };
    let parts = sp
        .per_part
        .iter()
        .enumerate()
        .map(|(i, p)| if i == target { replacement } else { rescale_down(p) })
        .collect();
    Ok(SimultaneousPartition::from_parts(q - 1, parts))
}

/// Minimal `(h-1)`-partitions of every size: `sum ceil(s_i / h)` classes.
pub fn threshold_partition(sizes: &[usize], h: usize) -> Option<SimultaneousPartition> {
    if h < 2 {
        return None;
    }
    let q = h - 1;
    let per_part = sizes
        .iter()
        .map(|&s| count_range(s, q).and_then(|(lo, _)| QPartition::with_count(s, q, lo)))
        .collect::<Option<Vec<_>>>()?;
    Some(SimultaneousPartition::from_parts(q, per_part))
}

/// Walks the induction from `chi_eq_star` up to `ceil(mn/(m+1)) - 1` for a
/// second-case spec. Returns one partition per `k`, in order; an empty
/// range yields an empty list.
pub fn increment_chain(
    spec: &ProductSpec,
    report: &ThresholdReport,
) -> std::result::Result<Vec<SimultaneousPartition>, NoStepAvailable> {
    let (ThresholdCase::Case2, Some(h_star)) = (report.case, report.h_star) else {
        return Err(NoStepAvailable);
    };
    let top = report.lin_chang_bound.saturating_sub(1);
    if report.chi_eq_star > top {
        return Ok(Vec::new());
    }
    let mut current = threshold_partition(&spec.block_sizes(), h_star).ok_or(NoStepAvailable)?;
    if current.total_count != report.chi_eq_star {
        return Err(NoStepAvailable);
    }
    let mut chain = vec![current.clone()];
    while current.total_count < top {
        current = increment_coloring(&current)?;
        chain.push(current.clone());
    }
    Ok(chain)
}

/// Which construction produced a product coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tier {
    /// Block classes only, lifted from the companion graph.
    Multipartite,
    /// Identical mixed column classes in some columns, blocks elsewhere.
    Mixed,
    /// Found by the exhaustive column-pattern search.
    Exhaustive,
    /// `k >= mn`: one vertex per class.
    Singletons,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Witness {
        coloring: Coloring,
        tier: Tier,
    },
    /// The exhaustive search proved that no equitable `k`-coloring exists.
    Infeasible,
}

impl Construction {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Construction::Witness { coloring, .. } => Some(coloring),
            Construction::Infeasible => None,
        }
    }
}

/// Mixed classes placed in a single column, summarized by how many vertices
/// they take from each block and how many classes there are.
#[derive(Debug, Clone)]
struct ColumnPattern {
    usage: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

struct PatternSearch<'a> {
    parts: &'a [usize],
    n: usize,
    q: usize,
    k: usize,
    patterns: Vec<ColumnPattern>,
    nodes: u64,
    budget: u64,
}

impl PatternSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// Class vectors `c <= parts` touching at least two blocks, of size `q`
    /// or `q + 1`.
    fn class_vectors(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.parts.len()];
        self.class_rec(0, 0, &mut cur, &mut out)?;
        Ok(out)
    }

    fn class_rec(&mut self, i: usize, sum: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        self.tick()?;
        if i == self.parts.len() {
            if (sum == self.q || sum == self.q + 1) && cur.iter().filter(|&&c| c > 0).count() >= 2 {
                out.push(cur.clone());
            }
            return Ok(());
        }
        for c in 0..=self.parts[i].min(self.q + 1 - sum) {
            cur[i] = c;
            self.class_rec(i + 1, sum + c, cur, out)?;
        }
        cur[i] = 0;
        Ok(())
    }

    /// All ways to fit a multiset of class vectors into one column, keeping
    /// one representative per `(usage, class count)`. The empty pattern is
    /// always first.
    fn build_patterns(&mut self) -> Result<()> {
        let vectors = self.class_vectors()?;
        let mut seen = std::collections::HashSet::new();
        let mut usage = vec![0; self.parts.len()];
        let mut chosen = Vec::new();
        self.pattern_rec(&vectors, 0, &mut usage, &mut chosen, &mut seen)
    }

    fn pattern_rec(
        &mut self,
        vectors: &[Vec<usize>],
        from: usize,
        usage: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        seen: &mut std::collections::HashSet<(Vec<usize>, usize)>,
    ) -> Result<()> {
        self.tick()?;
        if seen.insert((usage.clone(), chosen.len())) {
            self.patterns.push(ColumnPattern {
                usage: usage.clone(),
                classes: chosen.iter().map(|&v| vectors[v].clone()).collect(),
            });
        }
        if chosen.len() >= self.k {
            return Ok(());
        }
        for v in from..vectors.len() {
            if usage
                .iter()
                .zip(&vectors[v])
                .zip(self.parts)
                .any(|((u, c), p)| u + c > *p)
            {
                continue;
            }
            usage.iter_mut().zip(&vectors[v]).for_each(|(u, c)| *u += c);
            chosen.push(v);
            self.pattern_rec(vectors, v, usage, chosen, seen)?;
            chosen.pop();
            usage.iter_mut().zip(&vectors[v]).for_each(|(u, c)| *u -= c);
        }
        Ok(())
    }

    /// Per-block class counts completing a choice of pattern multiplicities.
    fn block_counts(&self, multiplicity: &[usize]) -> Option<Vec<usize>> {
        let mut used = vec![0; self.parts.len()];
        let mut mixed = 0;
        for (p, &x) in self.patterns.iter().zip(multiplicity) {
            for (u, pu) in used.iter_mut().zip(&p.usage) {
                *u += x * pu;
            }
            mixed += x * p.classes.len();
        }
        let ranges = self
            .parts
            .iter()
            .zip(&used)
            .map(|(&p, &u)| {
                let left = p * self.n - u;
                if left == 0 {
                    Some((0, 0))
                } else {
                    count_range(left, self.q)
                }
            })
            .collect::<Option<Vec<_>>>()?;
        distribute(&ranges, self.k.checked_sub(mixed)?)
    }

    /// Multiplicities of non-empty patterns in lexicographic order; the
    /// empty pattern takes the remaining columns.
    fn exhaustive(&mut self) -> Result<Option<Vec<usize>>> {
        let mut mult = vec![0; self.patterns.len()];
        self.exhaustive_rec(1, 0, 0, &mut mult)
    }

    fn exhaustive_rec(
        &mut self,
        p: usize,
        columns: usize,
        mixed: usize,
        mult: &mut Vec<usize>,
    ) -> Result<Option<Vec<usize>>> {
        self.tick()?;
        if p == self.patterns.len() {
            mult[0] = self.n - columns;
            return Ok(self.block_counts(mult).map(|_| mult.clone()));
        }
        let per = self.patterns[p].classes.len();
        let mut x = 0;
        while columns + x <= self.n && mixed + x * per <= self.k {
            mult[p] = x;
            if let Some(found) = self.exhaustive_rec(p + 1, columns + x, mixed + x * per, mult)? {
                return Ok(Some(found));
            }
            x += 1;
        }
        mult[p] = 0;
        Ok(None)
    }

    fn witness(&self, mult: &[usize]) -> Coloring {
        let layout = ProductLayout::new(&ProductSpec::new(self.parts.to_vec(), self.n).expect("validated spec"));
        let counts = self.block_counts(mult).expect("multiplicities were checked");
        let total = layout.vertex_count();
        let mut color_of = vec![usize::MAX; total];
        let mut next = 0;

        let columns = mult.iter().enumerate().flat_map(|(p, &x)| std::iter::repeat_n(p, x));
        for (column, p) in columns.enumerate() {
            let mut taken = vec![0; self.parts.len()];
            for class in &self.patterns[p].classes {
                for (part, &c) in class.iter().enumerate() {
                    for _ in 0..c {
                        let v = layout.index_of(crate::graphs::Vertex {
                            part,
                            index: taken[part],
                            column,
                        });
                        color_of[v] = next;
                        taken[part] += 1;
                    }
                }
                next += 1;
            }
        }
        for (part, &count) in counts.iter().enumerate() {
            let free: Vec<usize> = layout.block(part).filter(|&v| color_of[v] == usize::MAX).collect();
            if free.is_empty() {
                continue;
            }
            let qp = QPartition::with_count(free.len(), self.q, count).expect("count lies in the realizable range");
            let mut vs = free.into_iter();
            for size in qp.addends() {
                for v in vs.by_ref().take(size) {
                    color_of[v] = next;
                }
                next += 1;
            }
        }
        Coloring::new(color_of, self.k).expect("every vertex receives a color below k")
    }
}

/// Equitable `k`-coloring of `K_{m_1,...,m_r} x K_n`.
///
/// Tries, in order, block classes only; one kind of mixed column repeated
/// over some columns; and finally the exhaustive search over column
/// patterns, which is complete. `Infeasible` is only returned by the last
/// one. Works for any spec, including `m > n`.
pub fn color_product(spec: &ProductSpec, k: usize, budget: u64) -> Result<Construction> {
    if k == 0 {
        return domain("k must be positive");
    }
    let total = spec.vertex_count();
    let graph = build_product(spec);
    let finish = |coloring: Coloring, tier: Tier| -> Result<Construction> {
        let verdict = verify_coloring(&graph, &coloring)?;
        assert!(verdict.is_ok(), "{tier:?} construction failed verification: {verdict}");
        Ok(Construction::Witness { coloring, tier })
    };

    if k >= total {
        return finish(singletons(total, k)?, Tier::Singletons);
    }
    if let Some(sp) = simultaneous_partition(&spec.block_sizes(), k)? {
        return finish(sp.to_coloring(), Tier::Multipartite);
    }

    let mut search = PatternSearch {
        parts: spec.parts(),
        n: spec.n(),
        q: total / k,
        k,
        patterns: Vec::new(),
        nodes: 0,
        budget,
    };
    search.build_patterns()?;

    let mut mult = vec![0; search.patterns.len()];
    for p in 1..search.patterns.len() {
        for x in 1..=search.n {
            mult[0] = search.n - x;
            mult[p] = x;
            if search.block_counts(&mult).is_some() {
                return finish(search.witness(&mult), Tier::Mixed);
            }
        }
        mult[p] = 0;
    }

    match search.exhaustive()? {
        Some(found) => finish(search.witness(&found), Tier::Exhaustive),
        None => Ok(Construction::Infeasible),
    }
}
