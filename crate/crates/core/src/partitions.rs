//! Integer q-partitions: decompositions `n = a*q + b*(q+1)`.
//!
//! A q-partition is stored as its two addend counts. For fixed `(n, q)` the
//! addend count `a + b` determines the partition (`b = n - (a+b)*q`), so the
//! pair is a lossless encoding and every count between the minimal and the
//! maximal one is realized exactly once.

use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};

/// `n = a*q + b*(q+1)` with `q >= 1`, `a + b >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QPartition {
    pub n: usize,
    pub q: usize,
    /// Number of addends equal to `q`.
    pub a: usize,
    /// Number of addends equal to `q + 1`.
    pub b: usize,
}

impl QPartition {
    /// Checked constructor; rejects anything that does not sum to `n`.
    pub fn new(n: usize, q: usize, a: usize, b: usize) -> Result<Self> {
        if q == 0 || n == 0 || a + b == 0 {
            return domain(format!("invalid q-partition n={n} q={q} a={a} b={b}"));
        }
        if a * q + b * (q + 1) != n {
            return domain(format!("{a}*{q} + {b}*{} != {n}", q + 1));
        }
        Ok(QPartition { n, q, a, b })
    }

    /// The unique q-partition of `n` with `count` addends, if there is one.
    pub fn with_count(n: usize, q: usize, count: usize) -> Option<Self> {
        if q == 0 || count == 0 {
            return None;
        }
        let b = n.checked_sub(count.checked_mul(q)?)?;
        let a = count.checked_sub(b)?;
        Some(QPartition { n, q, a, b })
    }

    pub fn count(&self) -> usize {
        self.a + self.b
    }

    /// Minimal iff `a < q + 1`.
    pub fn is_minimal(&self) -> bool {
        self.a < self.q + 1
    }

    /// Maximal iff `b < q`.
    pub fn is_maximal(&self) -> bool {
        self.b < self.q
    }

    /// Addend sizes, `a` copies of `q` followed by `b` copies of `q + 1`.
    pub fn addends(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::repeat_n(self.q, self.a).chain(std::iter::repeat_n(self.q + 1, self.b))
    }
}

impl fmt::Display for QPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}*{} + {}*{}", self.n, self.a, self.q, self.b, self.q + 1)
    }
}

fn check_domain(n: usize, q: usize) -> Result<()> {
    if n == 0 || q == 0 {
        return domain(format!("n and q must be positive (n={n}, q={q})"));
    }
    if q > n {
        return domain(format!("q={q} exceeds n={n}"));
    }
    Ok(())
}

/// Realizable addend counts for q-partitions of `n`, without domain checks.
///
/// Returns `None` whenever no q-partition exists, including `q > n`.
pub(crate) fn count_range(n: usize, q: usize) -> Option<(usize, usize)> {
    if n == 0 || q == 0 || q > n {
        return None;
    }
    let lo = n.div_ceil(q + 1);
    let hi = n / q;
    (lo <= hi).then_some((lo, hi))
}

/// Existence test: writing `n = k*q + r` with `0 <= r < q`, a q-partition
/// exists iff `r <= k`.
pub fn q_partition_exists(n: usize, q: usize) -> Result<bool> {
    check_domain(n, q)?;
    Ok(n % q <= n / q)
}

/// The same question answered through `ceil(n/(q+1)) <= n/q`, compared
/// exactly as `ceil(n/(q+1)) * q <= n`.
pub fn q_partition_exists_by_ceiling(n: usize, q: usize) -> Result<bool> {
    check_domain(n, q)?;
    Ok(n.div_ceil(q + 1) * q <= n)
}

/// The q-partition with the fewest addends (`a < q + 1`).
pub fn minimal_q_partition(n: usize, q: usize) -> Result<Option<QPartition>> {
    check_domain(n, q)?;
    Ok(count_range(n, q).and_then(|(lo, _)| QPartition::with_count(n, q, lo)))
}

/// The q-partition with the most addends (`b < q`).
pub fn maximal_q_partition(n: usize, q: usize) -> Result<Option<QPartition>> {
    check_domain(n, q)?;
    Ok(count_range(n, q).and_then(|(_, hi)| QPartition::with_count(n, q, hi)))
}

/// Every q-partition of `n`, ordered by addend count.
pub fn enumerate_q_partitions(n: usize, q: usize) -> Result<Vec<QPartition>> {
    check_domain(n, q)?;
    let mut out: Vec<QPartition> = (0..=n / (q + 1))
        .filter_map(|b| {
            let rest = n - b * (q + 1);
            rest.is_multiple_of(q).then(|| QPartition { n, q, a: rest / q, b })
        })
        .filter(|p| p.count() > 0)
        .collect();
    out.sort_by_key(|p| p.count());
    Ok(out)
}

/// `(ceil(n/(q+1)), floor(n/q))`, or `None` if no q-partition exists.
pub fn addend_count_bounds(n: usize, q: usize) -> Result<Option<(usize, usize)>> {
    check_domain(n, q)?;
    Ok(count_range(n, q))
}

/// Neither rewrite of [`split_step`] applies to the given partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotApplicable;

/// Rewrites a partition into one with exactly one more addend.
///
/// * `b >= q`: trade `q` addends of size `q+1` for `q+1` addends of size `q`,
///   giving `(a + q + 1, b - q)` at the same scale.
/// * `b == 0`, `a >= q - 1`, `q >= 2`: drop to scale `q - 1` as
///   `q` addends of `q - 1` plus `a - q + 1` addends of `q`.
pub fn split_step(p: &QPartition) -> std::result::Result<QPartition, NotApplicable> {
    let QPartition { n, q, a, b } = *p;
    if b >= q {
        return Ok(QPartition {
            n,
            q,
            a: a + q + 1,
            b: b - q,
        });
    }
    if b == 0 && q >= 2 && a + 1 >= q {
        return Ok(QPartition {
            n,
            q: q - 1,
            a: q,
            b: a + 1 - q,
        });
    }
    Err(NotApplicable)
}
