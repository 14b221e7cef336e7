//! Arithmetic-progression blocks `[a, n, d]`: the `2n` numbers
//! `a ± d, a ± 3d, ..., a ± (2n-1)d`, with common difference `2d`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{clear_denominators, frac, int, q, Q};
use crate::solution::MultigradeSolution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApBlock {
    #[serde(with = "rational_string")]
    pub a: Q,
    pub n: i64,
    #[serde(with = "rational_string")]
    pub d: Q,
}

impl ApBlock {
    pub fn new(a: Q, n: i64, d: Q) -> Self {
        ApBlock { a, n, d }
    }

    pub fn from_ints(a: i64, n: i64, d: i64) -> Self {
        Self::new(q(a), n, q(d))
    }

    fn check_count(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::NonPositiveCount(self.n));
        }
        Ok(())
    }

    /// Terms in increasing order of the odd multiplier `-(2n-1), ..., 2n-1`.
    pub fn terms(&self) -> Result<Vec<Q>> {
        self.check_count()?;
        Ok((1 - self.n..=self.n)
            .map(|j| &self.a + q(2 * j - 1) * &self.d)
            .collect())
    }

    /// `S_k(a, n, d)` from its closed form, `k` in `1..=4`.
    pub fn closed_power_sum(&self, k: u32) -> Result<Q> {
        self.check_count()?;
        let n = q(self.n);
        let (a, d) = (&self.a, &self.d);
        let two_n = q(2) * &n;
        // 4n^2 - 1
        let w = q(4) * &n * &n - q(1);
        let d2 = d * d;
        Ok(match k {
            1 => &two_n * a,
            2 => &two_n * a * a + &two_n * &w * &d2 / q(3),
            3 => &two_n * a * a * a + &two_n * &w * a * &d2,
            4 => {
                let a2 = a * a;
                &two_n * &a2 * &a2
                    + q(2) * &two_n * &w * &a2 * &d2
                    + &two_n * &w * (q(12) * &n * &n - q(7)) * &d2 * &d2 * frac(1, 15)
            }
            _ => return Err(Error::UnsupportedExponent(k)),
        })
    }

    pub fn len(&self) -> usize {
        2 * self.n.max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n < 1
    }
}

/// Expands the blocks and clears denominators with one global factor.
/// The result is not verified.
pub fn assemble(
    left_blocks: &[ApBlock],
    right_blocks: &[ApBlock],
    degree: u32,
) -> Result<MultigradeSolution> {
    assemble_with_scale(left_blocks, right_blocks, degree).map(|(s, _)| s)
}

/// Like [`assemble`], also returning the factor the rational terms were
/// multiplied by (needed to scale shifts expressed in the original units).
pub fn assemble_with_scale(
    left_blocks: &[ApBlock],
    right_blocks: &[ApBlock],
    degree: u32,
) -> Result<(MultigradeSolution, num_bigint::BigInt)> {
    let expand = |blocks: &[ApBlock]| -> Result<Vec<Q>> {
        let mut out = Vec::new();
        for b in blocks {
            out.extend(b.terms()?);
        }
        Ok(out)
    };
    let left = expand(left_blocks)?;
    let right = expand(right_blocks)?;
    if left.len() != right.len() {
        return Err(Error::CardinalityMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    let all: Vec<Q> = left.iter().chain(&right).cloned().collect();
    let (ints, scale) = clear_denominators(&all);
    let (l, r) = ints.split_at(left.len());
    Ok((
        MultigradeSolution::new(l.to_vec(), r.to_vec(), degree),
        scale,
    ))
}

/// Direct `sum t^k` over the expanded terms, any `k`.
pub fn direct_power_sum(block: &ApBlock, k: u32) -> Result<Q> {
    Ok(block
        .terms()?
        .iter()
        .map(|t| num_traits::pow(t.clone(), k as usize))
        .fold(Q::zero(), |acc, x| acc + x))
}

/// Scales `h` (given in the block's rational units) by an assembly factor.
pub fn scale_shift(h: &Q, scale: &num_bigint::BigInt) -> Option<num_bigint::BigInt> {
    let v = h * int(scale);
    v.is_integer().then(|| v.to_integer())
}

mod rational_string {
    use crate::rational::Q;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        crate::rational::parse_q(&raw).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn expansion() {
        assert_eq!(ApBlock::from_ints(0, 1, 1).terms().unwrap(), qs(&[-1, 1]));
        assert_eq!(
            ApBlock::from_ints(5, 2, 1).terms().unwrap(),
            qs(&[2, 4, 6, 8])
        );
        assert_eq!(
            ApBlock::from_ints(3, 3, 2).terms().unwrap(),
            qs(&[-7, -3, 1, 5, 9, 13])
        );
        assert_eq!(
            ApBlock::from_ints(3, 0, 2).terms(),
            Err(Error::NonPositiveCount(0))
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            ApBlock::from_ints(0, 3, 5).closed_power_sum(1).unwrap(),
            q(0)
        );
        assert_eq!(
            ApBlock::from_ints(2, 2, 1).closed_power_sum(2).unwrap(),
            q(36)
        );
        assert_eq!(
            ApBlock::from_ints(1, 1, 1).closed_power_sum(4).unwrap(),
            q(16)
        );
        assert_eq!(
            ApBlock::from_ints(1, 1, 1).closed_power_sum(5),
            Err(Error::UnsupportedExponent(5))
        );
    }

    #[test]
    fn assembly() {
        let b = ApBlock::from_ints(0, 1, 1);
        let s = assemble(std::slice::from_ref(&b), std::slice::from_ref(&b), 1).unwrap();
        assert_eq!(s, MultigradeSolution::from_i64(&[-1, 1], &[-1, 1], 1));

        let l = ApBlock::new(frac(1, 2), 1, frac(1, 4));
        let r = ApBlock::new(frac(-1, 2), 1, frac(1, 4));
        let (s, scale) = assemble_with_scale(&[l], &[r], 1).unwrap();
        assert_eq!(s, MultigradeSolution::from_i64(&[1, 3], &[-3, -1], 1));
        assert_eq!(scale, num_bigint::BigInt::from(4));

        let err = assemble(
            &[ApBlock::from_ints(0, 2, 1)],
            &[ApBlock::from_ints(0, 1, 1)],
            1,
        );
        assert_eq!(err, Err(Error::CardinalityMismatch { left: 4, right: 2 }));
    }

    #[test]
    fn json_block() {
        let b: ApBlock = serde_json::from_str(r#"{"a":"5","n":2,"d":"1/2"}"#).unwrap();
        assert_eq!(b, ApBlock::new(q(5), 2, frac(1, 2)));
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"a":"5","n":2,"d":"1/2"}"#
        );
    }

    fn rational() -> impl Strategy<Value = Q> {
        (-60i64..60, 1i64..8).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn closed_form_matches_summation(a in rational(), n in 1i64..=20, d in rational(), k in 1u32..=4) {
            let b = ApBlock::new(a, n, d);
            prop_assert_eq!(b.closed_power_sum(k).unwrap(), direct_power_sum(&b, k).unwrap());
        }

        #[test]
        fn step_sign_does_not_matter(a in rational(), n in 1i64..=8, d in rational()) {
            let mut x = ApBlock::new(a.clone(), n, d.clone()).terms().unwrap();
            let mut y = ApBlock::new(a, n, -d).terms().unwrap();
            x.sort();
            y.sort();
            prop_assert_eq!(x, y);
        }
    }
}
