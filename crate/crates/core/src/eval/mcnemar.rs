use serde::{Deserialize, Serialize};

use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McNemarResult {
    /// First system correct, second wrong.
    pub b: u64,
    /// First system wrong, second correct.
    pub c: u64,
    pub p_value: f64,
    pub significant: bool,
}

/// Exact two-sided McNemar test over paired correctness vectors.
pub fn mcnemar(correct_a: &[bool], correct_b: &[bool]) -> Result<McNemarResult, EvalError> {
    if correct_a.len() != correct_b.len() {
        return Err(EvalError::LengthMismatch { left: correct_a.len(), right: correct_b.len() });
    }
    let b = correct_a.iter().zip(correct_b).filter(|(a, b)| **a && !**b).count() as u64;
    let c = correct_a.iter().zip(correct_b).filter(|(a, b)| !**a && **b).count() as u64;
    let p_value = exact_binomial_p(b, c);
    Ok(McNemarResult { b, c, p_value, significant: p_value < 0.05 })
}

/// `min(1, 2 * P(X <= min(b, c)))` for `X ~ Binomial(b + c, 1/2)`; 1 when
/// there are no discordant pairs.
pub fn exact_binomial_p(b: u64, c: u64) -> f64 {
    let n = b + c;
    if n == 0 {
        return 1.0;
    }
    let k_max = b.min(c);
    // Terms C(n, k) / 2^n built up in log space so large n cannot overflow.
    let mut log_term = -(n as f64) * std::f64::consts::LN_2;
    let mut tail = log_term.exp();
    for k in 0..k_max {
        log_term += ((n - k) as f64).ln() - ((k + 1) as f64).ln();
        tail += log_term.exp();
    }
    (2.0 * tail).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// P(X <= k) for Binomial(n, 1/2) by counting all 2^n outcomes.
    fn brute_force_tail(n: u32, k: u32) -> f64 {
        let hits = (0u64..1 << n).filter(|x| x.count_ones() <= k).count();
        hits as f64 / (1u64 << n) as f64
    }

    #[test]
    fn matches_enumeration_up_to_twenty() {
        for n in 0..=20u64 {
            for b in 0..=n {
                let c = n - b;
                let want = if n == 0 { 1.0 } else { (2.0 * brute_force_tail(n as u32, b.min(c) as u32)).min(1.0) };
                let got = exact_binomial_p(b, c);
                assert!((got - want).abs() < 1e-12, "b={b} c={c}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn hand_checked_values() {
        assert_eq!(exact_binomial_p(0, 0), 1.0);
        assert_eq!(exact_binomial_p(3, 3), 1.0);
        assert!((exact_binomial_p(0, 10) - 2.0 / 1024.0).abs() < 1e-15);
        let r = mcnemar(&[true; 10], &[false; 10]).unwrap();
        assert_eq!((r.b, r.c), (10, 0));
        assert!(r.significant);
    }

    #[test]
    fn large_counts_stay_finite() {
        let p = exact_binomial_p(500, 620);
        assert!(p > 0.0 && p < 0.05);
        assert_eq!(exact_binomial_p(5000, 5000), 1.0);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(mcnemar(&[true], &[]), Err(EvalError::LengthMismatch { left: 1, right: 0 })));
    }

    proptest! {
        #[test]
        fn swapping_systems_swaps_b_and_c(pairs in proptest::collection::vec((any::<bool>(), any::<bool>()), 0..60)) {
            let a: Vec<bool> = pairs.iter().map(|p| p.0).collect();
            let b: Vec<bool> = pairs.iter().map(|p| p.1).collect();
            let ab = mcnemar(&a, &b).unwrap();
            let ba = mcnemar(&b, &a).unwrap();
            prop_assert_eq!((ab.b, ab.c), (ba.c, ba.b));
            prop_assert_eq!(ab.p_value, ba.p_value);
            prop_assert!(ab.p_value > 0.0 && ab.p_value <= 1.0);
        }
    }
}
