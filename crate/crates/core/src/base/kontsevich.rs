use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::binomial;

fn memo() -> &'static Mutex<Vec<BigInt>> {
    static MEMO: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    // index 0 is unused
    MEMO.get_or_init(|| Mutex::new(vec![BigInt::zero(), BigInt::one()]))
}

/// Number of rational plane curves of degree `d` through `3d - 1` general
/// points.
pub fn kontsevich_nd(d: u32) -> BigInt {
    assert!(d >= 1, "kontsevich_nd: degree must be positive");
    let mut table = memo().lock().unwrap();
    while table.len() <= d as usize {
        let next = recursion_step(&table, table.len() as u64);
        table.push(next);
    }
    table[d as usize].clone()
}

fn recursion_step(known: &[BigInt], d: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        let weight = BigInt::from(d1 * d1 * d2 * d2) * binomial(3 * d - 4, 3 * d1 - 2)
            - BigInt::from(d1 * d1 * d1 * d2) * binomial(3 * d - 4, 3 * d1 - 1);
        acc += &known[d1 as usize] * &known[d2 as usize] * weight;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let values: Vec<BigInt> = (1..=6).map(kontsevich_nd).collect();
        let expected: Vec<BigInt> = [1i64, 1, 12, 620, 87304, 26312976]
            .into_iter()
            .map(BigInt::from)
            .collect();
        assert_eq!(values, expected);
    }

    #[test]
    fn grows_past_machine_words() {
        let n12 = kontsevich_nd(12);
        assert!(n12 > BigInt::from(u64::MAX));
    }
}
