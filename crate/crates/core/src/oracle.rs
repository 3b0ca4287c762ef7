//! Brute-force searches used to cross-check the cycle walk.

use num_bigint::BigInt;

use crate::cycle::{validate_d, PellSign, PellSolution};
use crate::error::Result;
use crate::form::isqrt;

/// Smallest `y` in `1..=y_bound` with `D·y² + 1` a perfect square.
pub fn brute_force_fundamental(d: impl Into<BigInt>, y_bound: u64) -> Result<Option<PellSolution>> {
    scan(d.into(), y_bound, PellSign::Plus)
}

/// Smallest `y` in `1..=y_bound` with `D·y² − 1` a perfect square.
pub fn brute_force_negative(d: impl Into<BigInt>, y_bound: u64) -> Result<Option<PellSolution>> {
    scan(d.into(), y_bound, PellSign::Minus)
}

fn scan(d: BigInt, y_bound: u64, sign: PellSign) -> Result<Option<PellSolution>> {
    let d = validate_d(d)?.into_inner();
    let offset = BigInt::from(sign.value());
    for y in 1..=y_bound {
        let y = BigInt::from(y);
        let target = &d * &y * &y + &offset;
        let x = isqrt(&target)?;
        if &x * &x == target {
            return Ok(Some(PellSolution { d, x, y, sign }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(s: Option<PellSolution>) -> Option<(i64, i64)> {
        s.map(|s| (s.x.try_into().unwrap(), s.y.try_into().unwrap()))
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(xy(brute_force_fundamental(2, 10).unwrap()), Some((3, 2)));
        assert_eq!(xy(brute_force_fundamental(3, 10).unwrap()), Some((2, 1)));
        assert_eq!(xy(brute_force_fundamental(5, 10).unwrap()), Some((9, 4)));
        assert_eq!(xy(brute_force_fundamental(5, 3).unwrap()), None);
    }

    #[test]
    fn negative_examples() {
        assert_eq!(xy(brute_force_negative(2, 10).unwrap()), Some((1, 1)));
        assert_eq!(xy(brute_force_negative(7, 10_000).unwrap()), None);
        assert_eq!(xy(brute_force_negative(5, 10).unwrap()), Some((2, 1)));
    }

    #[test]
    fn rejects_bad_d() {
        assert!(brute_force_fundamental(16, 10).is_err());
        assert!(brute_force_negative(0, 10).is_err());
    }
}
