use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of well bicoloured trees with `n` vertices whose rightmost branch
/// has `d` edges: `2^(n-1-d) · d/(2n-2-d) · C(2n-2-d, n-1-d)`.
pub fn count_by_branch(n: u64, d: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if d == 0 || d >= n {
        return Err(Error::InvalidArgument(format!(
            "branch length {d} outside 1..={}",
            n - 1
        )));
    }
    let m = 2 * n - 2 - d;
    let num = binomial(m, n - 1 - d) * d;
    debug_assert!((&num % m).is_zero());
    Ok((num / m) << (n - 1 - d))
}

/// `count_by_branch(n, d)` for every `d` in `1..n`, at index `d - 1`.
/// Built incrementally from `d = n - 1` downwards, so it stays linear in the
/// number of big-integer operations.
pub fn branch_counts(n: u64) -> Result<Vec<BigUint>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    // b = 2^k · C(n-1+k, k) with k = n-1-d
    let mut b = BigUint::one();
    let mut out = Vec::with_capacity(n as usize - 1);
    for k in 0..n.saturating_sub(1) {
        if k > 0 {
            b = (b * (n - 1 + k) / k) << 1;
        }
        let d = n - 1 - k;
        out.push(&b * d / (n - 1 + k));
    }
    out.reverse();
    Ok(out)
}

pub fn count_well_bicoloured(n: u64) -> Result<BigUint> {
    if n == 1 {
        return Ok(BigUint::one());
    }
    Ok(branch_counts(n)?.into_iter().sum())
}

/// Catalan number `Cat(m) = C(2m, m)/(m+1)`.
pub fn catalan(m: u64) -> BigUint {
    binomial(2 * m, m) / (m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let got: Vec<u64> = (1..=8)
            .map(|n| count_well_bicoloured(n).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(got, vec![1, 1, 3, 13, 67, 381, 2307, 14589]);
    }

    #[test]
    fn incremental_counts_match_closed_form() {
        for n in 2..40 {
            let direct: Vec<BigUint> = (1..n).map(|d| count_by_branch(n, d).unwrap()).collect();
            assert_eq!(branch_counts(n).unwrap(), direct, "n={n}");
        }
    }

    #[test]
    fn branch_formula() {
        assert_eq!(count_by_branch(7, 1).unwrap(), BigUint::from(1344u32));
        assert_eq!(count_by_branch(4, 3).unwrap(), BigUint::from(1u32));
        assert!(count_by_branch(4, 0).is_err());
        assert!(count_by_branch(4, 4).is_err());
        assert_eq!(count_well_bicoloured(0), Err(Error::ZeroSize));
    }

    #[test]
    fn catalan_numbers() {
        let got: Vec<u64> = (0..8).map(|m| catalan(m).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn grows_like_eight_to_the_n() {
        // successive ratios approach 8 from below
        let a = count_well_bicoloured(400).unwrap();
        let b = count_well_bicoloured(401).unwrap();
        let r = (b * 1000u32 / a).to_u64_digits()[0];
        assert!((7_900..8_000).contains(&r), "{r}");
    }
}
