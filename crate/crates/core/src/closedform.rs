//! Closed-form values for complete multipartite graphs and for the products
//! `K_{m_1,...,m_r} x K_n` with `m = sum(m_i) <= n`.
//!
//! Every comparison of the shape `x/y >= ceil(x/z)` is done by
//! cross-multiplication on integers.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Parameters of `K_{m_1,...,m_r} x K_n` and of its companion
/// `K_{m_1 n,...,m_r n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProductSpec {
    parts: Vec<usize>,
    n: usize,
}

impl ProductSpec {
    pub fn new(parts: Vec<usize>, n: usize) -> Result<Self> {
        if parts.is_empty() {
            return domain("at least one part is required");
        }
        if parts.contains(&0) {
            return domain("part sizes must be positive");
        }
        if n == 0 {
            return domain("n must be positive");
        }
        let m = parts
            .iter()
            .try_fold(0usize, |acc, &p| acc.checked_add(p))
            .ok_or_else(|| Error::Domain("part sizes overflow".into()))?;
        if m.checked_mul(n).is_none() {
            return domain("m*n overflows");
        }
        Ok(ProductSpec { parts, n })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of partite classes.
    pub fn r(&self) -> usize {
        self.parts.len()
    }

    /// Total part size `m = sum(m_i)`.
    pub fn m(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Vertex count of the product, `m * n`.
    pub fn vertex_count(&self) -> usize {
        self.m() * self.n
    }

    /// Whether `m <= n`, the hypothesis of the product formulas.
    pub fn formula_applicable(&self) -> bool {
        self.m() <= self.n
    }

    /// Part sizes `m_i * n` of the companion multipartite graph.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|&p| p * self.n).collect()
    }

    fn require_applicable(&self) -> Result<()> {
        if self.formula_applicable() {
            Ok(())
        } else {
            Err(Error::OutOfScope { m: self.m(), n: self.n })
        }
    }
}

/// `x/y >= ceil(x/z)` without leaving the integers.
fn ratio_at_least_ceil(x: usize, y: usize, z: usize) -> bool {
    x >= y * x.div_ceil(z)
}

/// Whether `x` admits a `q`-partition, phrased as `x/q >= ceil(x/(q+1))`.
fn has_partition(x: usize, q: usize) -> bool {
    ratio_at_least_ceil(x, q, q + 1)
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

/// `max { k : s_i/(k-1) >= ceil(s_i/k) for all i }` over `k in [2, min+1]`.
///
/// The predicate set is not assumed to be an interval, so the whole range is
/// scanned and the literal maximum is returned.
pub fn h_multipartite(sizes: &[usize]) -> Result<usize> {
    check_sizes(sizes)?;
    let top = sizes.iter().min().copied().unwrap_or(1) + 1;
    let h = (2..=top)
        .rev()
        .find(|&k| sizes.iter().all(|&s| ratio_at_least_ceil(s, k - 1, k)))
        .unwrap_or(2);
    Ok(h)
}

/// `sum ceil(s_i / h)` with `h = h_multipartite(sizes)`.
pub fn equitable_threshold_multipartite(sizes: &[usize]) -> Result<usize> {
    let h = h_multipartite(sizes)?;
    Ok(sizes.iter().map(|&s| s.div_ceil(h)).sum())
}

/// Upper bound `ceil(mn/(m+1))` on the threshold of `K_m x K_n`, `m <= n`.
pub fn lin_chang_bound(m: usize, n: usize) -> Result<usize> {
    if m == 0 || n == 0 {
        return domain("m and n must be positive");
    }
    if m > n {
        return domain(format!("bound requires m <= n (m={m}, n={n})"));
    }
    Ok((m * n).div_ceil(m + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductNumber {
    pub value: usize,
    pub h: usize,
}

/// Equitable chromatic number of the product: `sum ceil(m_i n / h)` where
/// `h` is [`h_multipartite`] of the block sizes.
pub fn equitable_number_product(spec: &ProductSpec) -> Result<ProductNumber> {
    spec.require_applicable()?;
    let sizes = spec.block_sizes();
    let h = h_multipartite(&sizes)?;
    let value = sizes.iter().map(|&s| s.div_ceil(h)).sum();
    Ok(ProductNumber { value, h })
}

/// Smallest `t >= m + 2` such that some block size has no `t`-partition or
/// two distinct blocks are both not divisible by `t`.
///
/// Terminates by `max(m_i n) + 1`, where every block lacks a `t`-partition.
pub fn h_star_product(spec: &ProductSpec) -> Result<usize> {
    spec.require_applicable()?;
    let sizes = spec.block_sizes();
    let start = spec.m() + 2;
    let stop = sizes.iter().max().copied().unwrap_or(0) + 1;
    let hit = (start..=stop.max(start))
        .find(|&t| sizes.iter().any(|&s| !has_partition(s, t)) || sizes.iter().filter(|&&s| s % t != 0).count() >= 2);
    // `stop` always satisfies the first disjunct, so the scan cannot miss.
    Ok(hit.unwrap_or(stop.max(start)))
}

/// Which version of the first Case-1 subcondition decides the case split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Case1Reading {
    /// `sum floor(m_i n/(m+1)) < floor(mn/(m+1))`.
    #[default]
    Floor,
    /// `sum ceil(m_i n/(m+1)) < ceil(mn/(m+1))`.
    Ceiling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThresholdCase {
    Case1,
    Case2,
}

impl ThresholdCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThresholdCase::Case1 => "Case1",
            ThresholdCase::Case2 => "Case2",
        }
    }
}

/// Truth values of the Case-1 subconditions under both readings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionTrace {
    pub floor_sum_short: bool,
    pub ceiling_sum_short: bool,
    /// First block index whose size has no `(m+1)`-partition.
    pub part_without_partition: Option<usize>,
    pub reading: Case1Reading,
}

impl ConditionTrace {
    pub fn case1_under(&self, reading: Case1Reading) -> bool {
        let first = match reading {
            Case1Reading::Floor => self.floor_sum_short,
            Case1Reading::Ceiling => self.ceiling_sum_short,
        };
        first || self.part_without_partition.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub chi_eq: usize,
    pub chi_eq_star: usize,
    pub h: usize,
    pub h_star: Option<usize>,
    pub lin_chang_bound: usize,
    pub case: ThresholdCase,
    pub condition_trace: ConditionTrace,
}

/// Full report using the floor reading of the case split.
pub fn equitable_threshold_product(spec: &ProductSpec) -> Result<ThresholdReport> {
    equitable_threshold_product_with(spec, Case1Reading::Floor)
}

pub fn equitable_threshold_product_with(spec: &ProductSpec, reading: Case1Reading) -> Result<ThresholdReport> {
    spec.require_applicable()?;
    let m = spec.m();
    let mn = spec.vertex_count();
    let sizes = spec.block_sizes();

    let floor_sum: usize = sizes.iter().map(|&s| s / (m + 1)).sum();
    let ceil_sum: usize = sizes.iter().map(|&s| s.div_ceil(m + 1)).sum();
    let trace = ConditionTrace {
        floor_sum_short: floor_sum < mn / (m + 1),
        ceiling_sum_short: ceil_sum < mn.div_ceil(m + 1),
        part_without_partition: sizes.iter().position(|&s| !has_partition(s, m + 1)),
        reading,
    };

    let number = equitable_number_product(spec)?;
    let lin_chang = lin_chang_bound(m, spec.n)?;
    let (case, chi_eq_star, h_star) = if trace.case1_under(reading) {
        (ThresholdCase::Case1, lin_chang, None)
    } else {
        let hs = h_star_product(spec)?;
        let value = sizes.iter().map(|&s| s.div_ceil(hs)).sum();
        (ThresholdCase::Case2, value, Some(hs))
    };

    Ok(ThresholdReport {
        chi_eq: number.value,
        chi_eq_star,
        h: number.h,
        h_star,
        lin_chang_bound: lin_chang,
        case,
        condition_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(parts: &[usize], n: usize) -> ProductSpec {
        ProductSpec::new(parts.to_vec(), n).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(ProductSpec::new(vec![], 3).is_err());
        assert!(ProductSpec::new(vec![1, 0], 3).is_err());
        assert!(ProductSpec::new(vec![1], 0).is_err());
        let s = spec(&[1, 2], 3);
        assert_eq!((s.m(), s.r(), s.vertex_count()), (3, 2, 9));
        assert!(s.formula_applicable());
        assert!(!spec(&[2, 2], 3).formula_applicable());
    }

    #[test]
    fn h_multipartite_examples() {
        assert_eq!(h_multipartite(&[3, 3]).unwrap(), 4);
        assert_eq!(h_multipartite(&[1, 3]).unwrap(), 2);
        assert_eq!(h_multipartite(&[1, 1]).unwrap(), 2);
        assert_eq!(h_multipartite(&[5]).unwrap(), 6);
        assert!(h_multipartite(&[]).is_err());
    }

    #[test]
    fn h_multipartite_takes_literal_maximum() {
        // 7 has a 4-partition but neither a 5- nor a 6-partition; 7 itself is
        // a 7-partition. The non-interval predicate set still yields 8.
        assert_eq!(h_multipartite(&[7, 7]).unwrap(), 8);
    }

    #[test]
    fn threshold_multipartite_examples() {
        assert_eq!(equitable_threshold_multipartite(&[3, 3]).unwrap(), 2);
        assert_eq!(equitable_threshold_multipartite(&[1, 3]).unwrap(), 3);
        assert_eq!(equitable_threshold_multipartite(&[5]).unwrap(), 1);
    }

    #[test]
    fn lin_chang_examples() {
        assert_eq!(lin_chang_bound(3, 3).unwrap(), 3);
        assert_eq!(lin_chang_bound(2, 3).unwrap(), 2);
        for n in 1..20 {
            assert_eq!(lin_chang_bound(1, n).unwrap(), n.div_ceil(2));
        }
        assert!(lin_chang_bound(4, 3).is_err());
    }

    #[test]
    fn number_examples() {
        let r = equitable_number_product(&spec(&[1, 1], 3)).unwrap();
        assert_eq!((r.value, r.h), (2, 4));
        let r = equitable_number_product(&spec(&[1, 2], 3)).unwrap();
        assert_eq!((r.value, r.h), (3, 4));
        assert_eq!(equitable_number_product(&spec(&[1, 1, 1], 3)).unwrap().value, 3);
        assert_eq!(
            equitable_number_product(&spec(&[2, 2], 3)),
            Err(Error::OutOfScope { m: 4, n: 3 })
        );
    }

    #[test]
    fn h_star_examples() {
        assert_eq!(h_star_product(&spec(&[1, 1], 4)).unwrap(), 5);
        assert_eq!(h_star_product(&spec(&[1, 1], 3)).unwrap(), 4);
        // m + 2 = 3 and 5/3 < ceil(5/4) = 2 already holds at t = 3.
        assert_eq!(h_star_product(&spec(&[1], 5)).unwrap(), 3);
    }

    #[test]
    fn threshold_examples() {
        let r = equitable_threshold_product(&spec(&[1, 1, 1], 3)).unwrap();
        assert_eq!((r.chi_eq_star, r.case), (3, ThresholdCase::Case1));
        assert_eq!(r.condition_trace.part_without_partition, Some(0));

        let r = equitable_threshold_product(&spec(&[1, 1], 4)).unwrap();
        assert_eq!((r.chi_eq_star, r.case, r.h_star), (2, ThresholdCase::Case2, Some(5)));
        assert!(!r.condition_trace.floor_sum_short);
        assert_eq!(r.condition_trace.part_without_partition, None);

        let r = equitable_threshold_product(&spec(&[1, 1], 2)).unwrap();
        assert_eq!((r.chi_eq_star, r.case), (2, ThresholdCase::Case1));
        assert!(r.condition_trace.floor_sum_short);
        assert!(!r.condition_trace.ceiling_sum_short);
    }

    #[test]
    fn ceiling_reading_changes_the_case() {
        // Only the floor subcondition fires for (1,1) x K_8.
        let s = spec(&[1, 1], 8);
        let floor = equitable_threshold_product(&s).unwrap();
        assert!(floor.condition_trace.floor_sum_short);
        assert_eq!(floor.condition_trace.part_without_partition, None);
        assert_eq!((floor.case, floor.chi_eq_star), (ThresholdCase::Case1, 6));

        let ceiling = equitable_threshold_product_with(&s, Case1Reading::Ceiling).unwrap();
        assert_eq!(ceiling.condition_trace.reading, Case1Reading::Ceiling);
        assert_eq!(
            (ceiling.case, ceiling.h_star, ceiling.chi_eq_star),
            (ThresholdCase::Case2, Some(5), 4)
        );
    }

    #[test]
    fn rational_comparison() {
        assert!(ratio_at_least_ceil(3, 3, 4));
        assert!(!ratio_at_least_ceil(3, 4, 5));
        assert!(has_partition(8, 2));
        assert!(!has_partition(5, 3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn applicable() -> impl Strategy<Value = ProductSpec> {
            (prop::collection::vec(1usize..5, 1..4), 0usize..12).prop_map(|(parts, extra)| {
                let m: usize = parts.iter().sum();
                ProductSpec::new(parts, m + extra).unwrap()
            })
        }

        proptest! {
            #[test]
            fn number_equals_multipartite_formula(s in applicable()) {
                let v = equitable_number_product(&s).unwrap().value;
                prop_assert_eq!(v, equitable_threshold_multipartite(&s.block_sizes()).unwrap());
            }

            #[test]
            fn report_is_ordered(s in applicable()) {
                let r = equitable_threshold_product(&s).unwrap();
                prop_assert!(r.chi_eq <= r.chi_eq_star);
                prop_assert!(r.chi_eq_star <= r.lin_chang_bound);
            }

            #[test]
            fn ceiling_subcondition_is_vacuous(s in applicable()) {
                let r = equitable_threshold_product(&s).unwrap();
                prop_assert!(!r.condition_trace.ceiling_sum_short);
            }
        }
    }
}
