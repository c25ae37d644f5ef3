//! Ranking metrics: ROC-AUC in the Mann–Whitney form and precision at k.
//!
//! Scores are compared with `f64::total_cmp`; infinite scores are fine.

use std::cmp::Ordering;

use crate::error::{CspError, Result};

/// Probability that a random positive outranks a random negative, ties = ½.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(CspError::Shape(format!("{} scores but {} labels", scores.len(), labels.len())));
    }
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(CspError::DegenerateLabels);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    // sum of 1-based midranks of the positives
    let mut pos_rank_sum = 0.0f64;
    let mut start = 0;
    while start < order.len() {
        let s = scores[order[start]];
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == s {
            end += 1;
        }
        let positives = order[start..end].iter().filter(|&&i| labels[i]).count();
        // ranks start+1 ..= end, average (start + 1 + end) / 2
        pos_rank_sum += positives as f64 * (start + 1 + end) as f64 * 0.5;
        start = end;
    }
    let n_pos_f = n_pos as f64;
    let u = pos_rank_sum - n_pos_f * (n_pos_f + 1.0) * 0.5;
    Ok(u / (n_pos_f * n_neg as f64))
}

/// Descending score, ties by ascending index.
#[inline]
fn rank_order(scores: &[f64], a: usize, b: usize) -> Ordering {
    scores[b].total_cmp(&scores[a]).then(a.cmp(&b))
}

/// Indices of the `min(k, len)` best-ranked entries, in rank order.
pub fn top_k(scores: &[f64], k: usize) -> Vec<usize> {
    let k = k.min(scores.len());
    let mut order: Vec<usize> = (0..scores.len()).collect();
    if k == 0 {
        return Vec::new();
    }
    if k < order.len() {
        order.select_nth_unstable_by(k - 1, |&a, &b| rank_order(scores, a, b));
        order.truncate(k);
    }
    order.sort_unstable_by(|&a, &b| rank_order(scores, a, b));
    order
}

/// Fraction of positives among the `min(k, len)` top-ranked entries.
pub fn precision_at_k(scores: &[f64], labels: &[bool], k: usize) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(CspError::Shape(format!("{} scores but {} labels", scores.len(), labels.len())));
    }
    if scores.is_empty() {
        return Err(CspError::Shape("precision_at_k on an empty set".into()));
    }
    if k == 0 {
        return Err(CspError::InvalidConfig("top-k must be at least 1".into()));
    }
    let top = top_k(scores, k);
    let hits = top.iter().filter(|&&i| labels[i]).count();
    Ok(hits as f64 / top.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn auc_examples() {
        assert_eq!(roc_auc(&[0.9, 0.1], &[true, false]).unwrap(), 1.0);
        assert_eq!(roc_auc(&[0.3; 5], &[true, false, true, false, false]).unwrap(), 0.5);
        // pairs: (.8,.5) (.8,.2) (.5,.2) win, (.5,.5) tie -> 3.5 / 4
        assert_eq!(roc_auc(&[0.8, 0.5, 0.5, 0.2], &[true, true, false, false]).unwrap(), 0.875);
        assert_eq!(roc_auc(&[0.1, 0.9], &[true, false]).unwrap(), 0.0);
    }

    #[test]
    fn auc_degenerate() {
        assert!(matches!(roc_auc(&[1.0, 2.0], &[true, true]), Err(CspError::DegenerateLabels)));
        assert!(matches!(roc_auc(&[], &[]), Err(CspError::DegenerateLabels)));
        assert!(matches!(roc_auc(&[1.0], &[true, false]), Err(CspError::Shape(_))));
    }

    #[test]
    fn auc_with_infinities() {
        let s = [f64::INFINITY, 0.0, f64::NEG_INFINITY, f64::INFINITY];
        assert_eq!(roc_auc(&s, &[true, false, false, false]).unwrap(), (2.0 + 0.5) / 3.0);
    }

    #[test]
    fn precision_examples() {
        assert_eq!(precision_at_k(&[1.0; 100], &[true; 100], 100).unwrap(), 1.0);
        assert_eq!(precision_at_k(&[0.5, 0.2, 0.9], &[false; 3], 100).unwrap(), 0.0);
        // tie at 2: index 1 (negative) beats index 2 (positive)
        assert_eq!(precision_at_k(&[3.0, 2.0, 2.0, 1.0], &[true, false, true, true], 2).unwrap(), 0.5);
        // k larger than the set
        assert_eq!(precision_at_k(&[3.0, 2.0], &[true, false], 10).unwrap(), 0.5);
    }

    #[test]
    fn precision_errors() {
        assert!(precision_at_k(&[], &[], 3).is_err());
        assert!(precision_at_k(&[1.0], &[true], 0).is_err());
    }

    #[test]
    fn top_k_order() {
        assert_eq!(top_k(&[1.0, 5.0, 5.0, 3.0, 9.0], 3), vec![4, 1, 2]);
        assert_eq!(top_k(&[1.0, 2.0], 5), vec![1, 0]);
        assert!(top_k(&[1.0], 0).is_empty());
    }

    fn draws() -> impl Strategy<Value = (Vec<f64>, Vec<bool>)> {
        (2usize..60).prop_flat_map(|n| {
            (
                proptest::collection::vec((0i32..8).prop_map(|v| v as f64 * 0.5), n),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
    }

    proptest! {
        #[test]
        fn auc_invariant_under_monotone_transform((s, l) in draws()) {
            prop_assume!(l.iter().any(|&x| x) && l.iter().any(|&x| !x));
            let t: Vec<f64> = s.iter().map(|v| (v * 3.0 + 1.0).exp()).collect();
            prop_assert_eq!(roc_auc(&s, &l).unwrap(), roc_auc(&t, &l).unwrap());
        }

        #[test]
        fn auc_negation_complements(l in proptest::collection::vec(any::<bool>(), 2..60)) {
            prop_assume!(l.iter().any(|&x| x) && l.iter().any(|&x| !x));
            // distinct scores
            let s: Vec<f64> = (0..l.len()).map(|i| ((i * 7919) % 1009) as f64).collect();
            let neg: Vec<f64> = s.iter().map(|v| -v).collect();
            let total = roc_auc(&s, &l).unwrap() + roc_auc(&neg, &l).unwrap();
            prop_assert!((total - 1.0).abs() < 1e-12);
        }

        #[test]
        fn precision_invariant_under_monotone_transform((s, l) in draws(), k in 1usize..70) {
            let t: Vec<f64> = s.iter().map(|v| v * v * v + 2.0 * v).collect();
            prop_assert_eq!(precision_at_k(&s, &l, k).unwrap(), precision_at_k(&t, &l, k).unwrap());
        }
    }
}
