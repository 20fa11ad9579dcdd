//! Binomial coefficients and ordered subset enumeration.
//!
//! Counts are arbitrary-precision: schedules and bounds multiply several
//! binomials together and 64-bit products overflow well before the toolkit's
//! supported network sizes run out.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `n` choose `k` with the out-of-range convention: 0 when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    binom_u(n, k as u64)
}

/// `n` choose `k` for nonnegative `k`; 0 when `k > n`.
pub fn binom_u(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 1..=k {
        // exact at every step: result holds C(n-k+i-1, i-1) times (n-k+i)
        result = result * BigUint::from(n - k + i) / BigUint::from(i);
    }
    result
}

/// All `k`-element subsets of `{1, .., n}` in lexicographic order.
///
/// `k = 0` yields the single empty subset, matching the degenerate cache and
/// serving-group cases.
pub fn k_subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut current: Vec<u32> = (1..=k).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination in lexicographic order
        let mut i = k as usize;
        while i > 0 && current[i - 1] == n - (k - i as u32) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        current[i - 1] += 1;
        for j in i..k as usize {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binom(4, 2), BigUint::from(6u32));
        assert_eq!(binom(4, 3), BigUint::from(4u32));
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(binom(5, -1), BigUint::zero());
        assert_eq!(binom(0, 0), BigUint::from(1u32));
    }

    #[test]
    fn binomials_do_not_overflow_machine_words() {
        // C(80, 40) needs 77 bits
        let big = binom(80, 40);
        assert!(big > BigUint::from(u64::MAX));
    }

    #[test]
    fn subsets_are_lexicographic_and_complete() {
        let subs = k_subsets(4, 2);
        assert_eq!(
            subs,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        for (n, k) in [(1u32, 0u32), (5, 1), (6, 3), (6, 6), (3, 0)] {
            let subs = k_subsets(n, k);
            assert_eq!(BigUint::from(subs.len()), binom(n as u64, k as i64));
            for w in subs.windows(2) {
                assert!(w[0] < w[1], "not lexicographic: {:?} !< {:?}", w[0], w[1]);
            }
        }
        assert!(k_subsets(2, 3).is_empty());
    }
}
