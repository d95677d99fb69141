//! Small enumeration helpers shared by the sector, potential and product code.

use num_bigint::BigInt;
use num_traits::One;

/// Non-decreasing sequences of length `len` over `0..alphabet`, in
/// lexicographic order.
pub fn multisets(alphabet: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 {
        out.push(Vec::new());
        return out;
    }
    if alphabet == 0 {
        return out;
    }
    let mut current = vec![0usize; len];
    loop {
        out.push(current.clone());
        // rightmost position that can still grow
        let Some(pos) = (0..len).rev().find(|&i| current[i] + 1 < alphabet) else {
            break;
        };
        let next = current[pos] + 1;
        for c in current[pos..].iter_mut() {
            *c = next;
        }
    }
    out
}

/// Number of multisets of size `len` drawn from `alphabet` symbols.
pub fn multiset_count(alphabet: usize, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    if alphabet == 0 {
        return 0;
    }
    binomial_u128((alphabet + len - 1) as u128, len as u128)
}

pub fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Product of `m!` over the multiplicities of a sorted sequence.
pub fn multiplicity_factorials<T: PartialEq>(sorted: &[T]) -> BigInt {
    let mut acc = BigInt::one();
    let mut run = 0u64;
    for (i, item) in sorted.iter().enumerate() {
        if i > 0 && *item == sorted[i - 1] {
            run += 1;
        } else {
            run = 1;
        }
        acc *= BigInt::from(run);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multisets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        for a in 0..5 {
            for n in 0..5 {
                assert_eq!(multisets(a, n).len() as u128, multiset_count(a, n));
            }
        }
    }

    #[test]
    fn factorials_of_runs() {
        assert_eq!(multiplicity_factorials(&[1, 1, 1, 2, 2]), BigInt::from(12));
        assert_eq!(multiplicity_factorials::<u8>(&[]), BigInt::from(1));
        assert_eq!(binomial(11, 4), BigInt::from(330));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
