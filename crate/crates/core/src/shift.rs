//! The Tarry shift: a degree-`k` solution `X | Y` and its translate by `h`
//! combine into the degree-`k+1` solution `X ∪ (Y+h) | Y ∪ (X+h)`.
//! Common terms are cancelled across the two sides.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::solution::{cancel_common, verify_degree, MultigradeSolution};

/// One application of the shift with maximal multiset cancellation.
/// `h = 0` cancels everything and yields the empty solution.
pub fn tarry_shift(sol: &MultigradeSolution, h: &BigInt) -> MultigradeSolution {
    let shifted = |v: &[BigInt]| v.iter().map(|e| e + h).collect::<Vec<_>>();
    let mut left = sol.left.clone();
    left.extend(shifted(&sol.right));
    let mut right = sol.right.clone();
    right.extend(shifted(&sol.left));
    let (left, right) = cancel_common(left, right);
    MultigradeSolution::new(left, right, sol.degree + 1)
}

/// Folds [`tarry_shift`] over `hs`, checking the claimed degree after every
/// step. A failed check means the input did not satisfy its own degree.
pub fn shift_chain(sol: &MultigradeSolution, hs: &[BigInt]) -> Result<MultigradeSolution> {
    let mut cur = sol.clone();
    for h in hs {
        cur = tarry_shift(&cur, h);
        let report = verify_degree(&cur, cur.degree)?;
        if report.max_degree < cur.degree {
            return Err(Error::NotASolution {
                claimed: cur.degree,
                actual: report.max_degree,
            });
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::equivalent;
    use proptest::prelude::*;

    #[test]
    fn zero_shift_is_empty() {
        let s = MultigradeSolution::from_i64(&[1, 5, 6], &[2, 3, 7], 2);
        let t = tarry_shift(&s, &BigInt::from(0));
        assert!(t.is_empty());
        assert_eq!(t.degree, 3);
        assert!(t.is_valid());
    }

    #[test]
    fn raises_degree() {
        let s = MultigradeSolution::from_i64(&[1, 5, 6], &[2, 3, 7], 2);
        let t = tarry_shift(&s, &BigInt::from(5));
        assert!(t.size() <= 6);
        assert_eq!(t.verify(3).unwrap().max_degree, 3);
    }

    #[test]
    fn empty_chain_is_identity() {
        let s = MultigradeSolution::from_i64(&[1, 5, 6], &[2, 3, 7], 2);
        assert_eq!(shift_chain(&s, &[]).unwrap(), s);
    }

    #[test]
    fn chain_rejects_false_claims() {
        let s = MultigradeSolution::from_i64(&[1, 5, 6], &[2, 3, 8], 2);
        assert!(matches!(
            shift_chain(&s, &[BigInt::from(3)]),
            Err(Error::NotASolution { .. })
        ));
    }

    fn small_solution() -> impl Strategy<Value = MultigradeSolution> {
        // Frolov images of a few known small solutions.
        let bases = [
            MultigradeSolution::from_i64(&[1, 5, 6], &[2, 3, 7], 2),
            MultigradeSolution::from_i64(&[0, 4, 7, 11], &[1, 2, 9, 10], 3),
            MultigradeSolution::from_i64(&[1, 4], &[2, 3], 1),
        ];
        (0..bases.len(), 1i64..6, -20i64..20).prop_map(move |(i, m, k)| {
            let b = &bases[i];
            let map = |v: &[BigInt]| v.iter().map(|e| e * m + k).collect();
            MultigradeSolution::new(map(&b.left), map(&b.right), b.degree)
        })
    }

    proptest! {
        #[test]
        fn shift_raises_degree(s in small_solution(), h in -50i64..=50) {
            let t = tarry_shift(&s, &BigInt::from(h));
            prop_assert!(t.size() <= 2 * s.size());
            prop_assert!(t.verify(s.degree + 1).unwrap().max_degree > s.degree);
        }

        #[test]
        fn shift_commutes_with_negation(s in small_solution(), h in -50i64..=50) {
            let a = tarry_shift(&s, &BigInt::from(h));
            let b = tarry_shift(&s.negate(), &BigInt::from(-h));
            prop_assert_eq!(a.negate().canonical(), b.canonical());
            if !a.is_empty() {
                prop_assert!(equivalent(&a.negate(), &b));
            }
        }
    }
}
