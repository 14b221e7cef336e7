//! Multigrade solutions: two equal-size integer multisets whose power sums
//! agree up to some degree.
//!
//! This module holds the exact verifier, Frolov transforms (`e -> M e + K`),
//! reduction to the canonical reduced form, equivalence, and symmetry
//! classification.
//!
//! Canonical form: each side sorted ascending, the lexicographically smaller
//! side first, and out of the two global signs the one whose concatenation is
//! lexicographically smaller. A reduced solution has zero side sums and entry
//! gcd 1, so it is unique up to sign and side order; the canonical form picks
//! one representative of that orbit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{clear_denominators, gcd_all, int, Q};

/// Two multisets of integers plus the degree they are claimed to satisfy.
///
/// Entry order carries no meaning; duplicates are legal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultigradeSolution {
    #[serde(with = "decimal_strings")]
    pub left: Vec<BigInt>,
    #[serde(with = "decimal_strings")]
    pub right: Vec<BigInt>,
    pub degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryClass {
    SymmetricOdd,
    SymmetricEven,
    Nonsymmetric,
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SymmetryClass::SymmetricOdd => "SymmetricOdd",
            SymmetryClass::SymmetricEven => "SymmetricEven",
            SymmetryClass::Nonsymmetric => "Nonsymmetric",
        };
        f.write_str(s)
    }
}

/// Per-exponent outcome of [`verify_degree`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub per_exponent: Vec<(u32, bool)>,
    /// Largest `k` such that every exponent `1..=k` holds.
    pub max_degree: u32,
}

impl VerifyReport {
    pub fn holds(&self, r: u32) -> bool {
        self.per_exponent.iter().any(|&(e, ok)| e == r && ok)
    }

    pub fn holding_exponents(&self) -> Vec<u32> {
        self.per_exponent
            .iter()
            .filter(|(_, ok)| *ok)
            .map(|(r, _)| *r)
            .collect()
    }

    pub fn cap(&self) -> u32 {
        self.per_exponent.last().map_or(0, |(r, _)| *r)
    }
}

/// Exact sum of `r`-th powers.
pub fn power_sum(values: &[BigInt], r: u32) -> BigInt {
    values
        .iter()
        .map(|v| num_traits::pow(v.clone(), r as usize))
        .sum()
}

/// Checks the power-sum relations for `r = 1..=cap`.
pub fn verify_degree(sol: &MultigradeSolution, cap: u32) -> Result<VerifyReport> {
    sol.check_cardinality()?;
    // Running powers avoid recomputing v^r from scratch for every exponent.
    let mut lp: Vec<BigInt> = sol.left.clone();
    let mut rp: Vec<BigInt> = sol.right.clone();
    let mut per_exponent = Vec::with_capacity(cap as usize);
    let mut max_degree = 0;
    let mut prefix = true;
    for r in 1..=cap {
        if r > 1 {
            for (p, v) in lp.iter_mut().zip(&sol.left) {
                *p *= v;
            }
            for (p, v) in rp.iter_mut().zip(&sol.right) {
                *p *= v;
            }
        }
        let ok = lp.iter().sum::<BigInt>() == rp.iter().sum::<BigInt>();
        per_exponent.push((r, ok));
        if ok && prefix {
            max_degree = r;
        } else {
            prefix = false;
        }
    }
    Ok(VerifyReport {
        per_exponent,
        max_degree,
    })
}

/// Applies `e -> M e + K` to every entry and clears denominators.
pub fn frolov_transform(sol: &MultigradeSolution, m: &Q, k: &Q) -> Result<MultigradeSolution> {
    if m.is_zero() {
        return Err(Error::ZeroScale);
    }
    let map = |side: &[BigInt]| -> Vec<Q> { side.iter().map(|e| m * int(e) + k).collect() };
    Ok(MultigradeSolution::from_rationals(
        &map(&sol.left),
        &map(&sol.right),
        sol.degree,
    ))
}

/// Canonical reduced form: zero side sums, entry gcd 1, canonical ordering.
pub fn reduce(sol: &MultigradeSolution) -> Result<MultigradeSolution> {
    Ok(reduce_keep_order(sol)?.canonical())
}

/// Translation and scaling of [`reduce`] without the reordering: entry `e`
/// becomes `(s e - sum) / g`, in place.
pub fn reduce_keep_order(sol: &MultigradeSolution) -> Result<MultigradeSolution> {
    sol.check_cardinality()?;
    if sol.left.is_empty() {
        return Err(Error::DegenerateSolution("empty solution".into()));
    }
    let s = BigInt::from(sol.left.len());
    let total: BigInt = sol.left.iter().sum();
    if total != sol.right.iter().sum::<BigInt>() {
        return Err(Error::UnequalSideSums);
    }
    let shift = |side: &[BigInt]| -> Vec<BigInt> { side.iter().map(|e| &s * e - &total).collect() };
    let mut left = shift(&sol.left);
    let mut right = shift(&sol.right);
    let g = gcd_all(left.iter().chain(&right));
    if g.is_zero() {
        return Err(Error::DegenerateSolution(
            "all entries coincide after translation".into(),
        ));
    }
    if !g.is_one() {
        for e in left.iter_mut().chain(right.iter_mut()) {
            *e = e.div_floor(&g);
        }
    }
    Ok(MultigradeSolution::new(left, right, sol.degree))
}

/// Frolov equivalence, up to global sign and swapping sides.
pub fn equivalent(a: &MultigradeSolution, b: &MultigradeSolution) -> bool {
    match (reduce(a), reduce(b)) {
        (Ok(ra), Ok(rb)) => ra.left == rb.left && ra.right == rb.right,
        (Err(_), Err(_)) => {
            let (ca, cb) = (a.canonical(), b.canonical());
            ca.left == cb.left && ca.right == cb.right
        }
        _ => false,
    }
}

/// Classifies the reduced form of `sol`.
pub fn classify_symmetry(sol: &MultigradeSolution) -> SymmetryClass {
    let reduced = match reduce(sol) {
        Ok(r) => r,
        Err(_) => return SymmetryClass::Nonsymmetric,
    };
    let neg_left = sorted(reduced.left.iter().map(|e| -e).collect());
    if neg_left == sorted(reduced.right.clone()) {
        return SymmetryClass::SymmetricOdd;
    }
    if negation_closed(&reduced.left) && negation_closed(&reduced.right) {
        return SymmetryClass::SymmetricEven;
    }
    SymmetryClass::Nonsymmetric
}

fn negation_closed(side: &[BigInt]) -> bool {
    sorted(side.iter().map(|e| -e).collect()) == sorted(side.to_vec())
}

fn sorted(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    v
}

/// Removes the multiset intersection of two sides from both of them.
/// The relative order of the surviving entries is kept.
pub fn cancel_common(left: Vec<BigInt>, right: Vec<BigInt>) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut rs: Vec<(BigInt, usize)> = right.iter().cloned().zip(0..).collect();
    rs.sort();
    let mut removed_right = vec![false; right.len()];
    let mut kept_left = Vec::with_capacity(left.len());
    for x in left {
        // first unused occurrence of x among the sorted right entries
        let start = rs.partition_point(|(v, _)| *v < x);
        let hit = rs[start..]
            .iter()
            .take_while(|(v, _)| *v == x)
            .find(|(_, i)| !removed_right[*i])
            .map(|(_, i)| *i);
        match hit {
            Some(i) => removed_right[i] = true,
            None => kept_left.push(x),
        }
    }
    let kept_right = right
        .into_iter()
        .zip(removed_right)
        .filter(|(_, gone)| !gone)
        .map(|(v, _)| v)
        .collect();
    (kept_left, kept_right)
}

impl MultigradeSolution {
    pub fn new(left: Vec<BigInt>, right: Vec<BigInt>, degree: u32) -> Self {
        MultigradeSolution {
            left,
            right,
            degree,
        }
    }

    pub fn from_i64(left: &[i64], right: &[i64], degree: u32) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect();
        Self::new(conv(left), conv(right), degree)
    }

    /// Builds a solution from values written the way they are usually
    /// published: each listed value `x` stands for the pair `x, -x`.
    pub fn plus_minus(left: &[i64], right: &[i64], degree: u32) -> Self {
        let pm = |v: &[i64]| -> Vec<i64> { v.iter().flat_map(|&x| [x, -x]).collect() };
        Self::from_i64(&pm(left), &pm(right), degree)
    }

    /// Multiplies rational entries through by their common denominator.
    pub fn from_rationals(left: &[Q], right: &[Q], degree: u32) -> Self {
        let all: Vec<Q> = left.iter().chain(right).cloned().collect();
        let (ints, _) = clear_denominators(&all);
        let (l, r) = ints.split_at(left.len());
        Self::new(l.to_vec(), r.to_vec(), degree)
    }

    pub fn empty(degree: u32) -> Self {
        Self::new(Vec::new(), Vec::new(), degree)
    }

    pub fn size(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    fn check_cardinality(&self) -> Result<()> {
        if self.left.len() != self.right.len() {
            return Err(Error::SideCardinalityMismatch {
                left: self.left.len(),
                right: self.right.len(),
            });
        }
        Ok(())
    }

    pub fn verify(&self, cap: u32) -> Result<VerifyReport> {
        verify_degree(self, cap)
    }

    /// Verifies with the default cap of `degree + 2`.
    pub fn verify_claimed(&self) -> Result<VerifyReport> {
        verify_degree(self, self.degree + 2)
    }

    /// True when every exponent up to the claimed degree holds.
    pub fn is_valid(&self) -> bool {
        verify_degree(self, self.degree)
            .map(|r| r.max_degree >= self.degree)
            .unwrap_or(false)
    }

    pub fn negate(&self) -> Self {
        let neg = |v: &[BigInt]| v.iter().map(|e| -e).collect();
        Self::new(neg(&self.left), neg(&self.right), self.degree)
    }

    pub fn swap_sides(&self) -> Self {
        Self::new(self.right.clone(), self.left.clone(), self.degree)
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }

    /// Same solution divided by the gcd of its entries, order kept.
    pub fn primitive(&self) -> Self {
        let g = gcd_all(self.left.iter().chain(&self.right));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        let div = |v: &[BigInt]| v.iter().map(|e| e / &g).collect();
        Self::new(div(&self.left), div(&self.right), self.degree)
    }

    /// Sorted sides, smaller side first, lexicographically smaller sign.
    /// No translation or scaling is applied.
    pub fn canonical(&self) -> Self {
        let arrange = |l: Vec<BigInt>, r: Vec<BigInt>| -> (Vec<BigInt>, Vec<BigInt>) {
            let (l, r) = (sorted(l), sorted(r));
            if r < l {
                (r, l)
            } else {
                (l, r)
            }
        };
        let plus = arrange(self.left.clone(), self.right.clone());
        let minus = arrange(
            self.left.iter().map(|e| -e).collect(),
            self.right.iter().map(|e| -e).collect(),
        );
        let key = |p: &(Vec<BigInt>, Vec<BigInt>)| -> Vec<BigInt> {
            p.0.iter().chain(&p.1).cloned().collect()
        };
        let (left, right) = if key(&minus) < key(&plus) {
            minus
        } else {
            plus
        };
        Self::new(left, right, self.degree)
    }

    /// Left and right coincide as multisets.
    pub fn sides_coincide(&self) -> bool {
        sorted(self.left.clone()) == sorted(self.right.clone())
    }

    pub fn max_abs(&self) -> BigInt {
        self.left
            .iter()
            .chain(&self.right)
            .map(|e| e.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn products_equal(&self) -> bool {
        let prod = |v: &[BigInt]| v.iter().fold(BigInt::one(), |acc, e| acc * e);
        prod(&self.left) == prod(&self.right)
    }
}

/// Serde adapter: big integers travel as decimal strings, never JSON numbers.
mod decimal_strings {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|e| e.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("not a decimal integer: {s:?}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn deg4_example() -> MultigradeSolution {
        MultigradeSolution::from_i64(&[57, -22, 40, -61, -14], &[19, 16, -42, 62, -55], 4)
    }

    fn deg7_example() -> MultigradeSolution {
        MultigradeSolution::plus_minus(&[63, 211, 125, 292], &[36, 203, 145, 293], 7)
    }

    #[test]
    fn power_sum_examples() {
        let v: Vec<BigInt> = [57, -22, 40, -61, -14]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(power_sum(&v, 1), BigInt::zero());
        assert_eq!(power_sum(&[], 5), BigInt::zero());
        let s = deg4_example();
        assert_eq!(power_sum(&s.left, 4), power_sum(&s.right, 4));
    }

    #[test]
    fn verify_examples() {
        let r = verify_degree(&deg4_example(), 6).unwrap();
        assert_eq!(r.max_degree, 4);
        assert_eq!(r.holding_exponents(), vec![1, 2, 3, 4, 6]);
        assert!(!r.holds(5));

        let same = MultigradeSolution::from_i64(&[1, 2, 3], &[1, 2, 3], 2);
        assert_eq!(verify_degree(&same, 9).unwrap().max_degree, 9);

        let r = verify_degree(&deg7_example(), 8).unwrap();
        assert_eq!(r.max_degree, 7);
        assert!(!r.holds(8));
    }

    #[test]
    fn verify_rejects_uneven_sides() {
        let s = MultigradeSolution::from_i64(&[1, 2], &[3], 1);
        assert_eq!(
            verify_degree(&s, 2),
            Err(Error::SideCardinalityMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn frolov_examples() {
        let s = deg4_example();
        assert_eq!(frolov_transform(&s, &q(1), &q(0)).unwrap(), s);
        let t = frolov_transform(&s, &q(2), &q(1)).unwrap();
        assert_eq!(
            t,
            MultigradeSolution::from_i64(&[115, -43, 81, -121, -27], &[39, 33, -83, 125, -109], 4)
        );
        assert_eq!(t.verify(4).unwrap().max_degree, 4);
        let n = frolov_transform(&s, &q(-1), &q(0)).unwrap();
        assert_eq!(n, s.negate());
        assert_eq!(frolov_transform(&s, &q(0), &q(3)), Err(Error::ZeroScale));
        // rational images are cleared back to integers
        let h = frolov_transform(&s, &frac(1, 2), &frac(1, 3)).unwrap();
        assert_eq!(h.verify(4).unwrap().max_degree, 4);
    }

    #[test]
    fn reduce_examples() {
        let s = deg4_example();
        let r = reduce(&s).unwrap();
        assert_eq!(r, s.canonical());

        let t = MultigradeSolution::from_i64(&[2, 4, 6], &[2, 4, 6], 2);
        let moved = frolov_transform(&t, &q(3), &q(5)).unwrap();
        assert_eq!(
            reduce(&moved).unwrap(),
            MultigradeSolution::from_i64(&[-1, 0, 1], &[-1, 0, 1], 2)
        );

        let d7 = deg7_example();
        let moved = frolov_transform(&d7, &q(7), &q(13)).unwrap();
        assert_eq!(reduce(&moved).unwrap(), reduce(&d7).unwrap());
    }

    #[test]
    fn reduce_errors() {
        let flat = MultigradeSolution::from_i64(&[5, 5], &[5, 5], 1);
        assert!(matches!(reduce(&flat), Err(Error::DegenerateSolution(_))));
        assert!(matches!(
            reduce(&MultigradeSolution::empty(3)),
            Err(Error::DegenerateSolution(_))
        ));
        let unbalanced = MultigradeSolution::from_i64(&[1, 2], &[1, 3], 1);
        assert_eq!(reduce(&unbalanced), Err(Error::UnequalSideSums));
    }

    #[test]
    fn equivalence_examples() {
        let s = deg4_example();
        let image = frolov_transform(&s, &q(5), &q(-2)).unwrap();
        assert!(equivalent(&s, &image));
        assert!(equivalent(&s, &s.negate().swap_sides()));
        let other = MultigradeSolution::from_i64(
            &[2184, -2011, 164, -1466, 1129],
            &[-2186, 1589, -516, 1984, -871],
            4,
        );
        assert!(!equivalent(&s, &other));
    }

    #[test]
    fn symmetry_examples() {
        let even = MultigradeSolution::plus_minus(&[101, 70, 61], &[49, 86, 95], 5);
        assert_eq!(classify_symmetry(&even), SymmetryClass::SymmetricEven);
        let odd = MultigradeSolution::from_i64(
            &[-66, -134, 133, 47, 8, 87, -75],
            &[66, 134, -133, -47, -8, -87, 75],
            6,
        );
        assert_eq!(classify_symmetry(&odd), SymmetryClass::SymmetricOdd);
        assert_eq!(
            classify_symmetry(&deg4_example()),
            SymmetryClass::Nonsymmetric
        );
        // translated copies of symmetric solutions are still symmetric
        let moved = frolov_transform(&even, &q(3), &q(11)).unwrap();
        assert_eq!(classify_symmetry(&moved), SymmetryClass::SymmetricEven);
    }

    #[test]
    fn cancellation_is_multiset_aware() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let (l, r) = cancel_common(b(&[1, 1, 2, 5]), b(&[1, 2, 2, 7]));
        assert_eq!(l, b(&[1, 5]));
        assert_eq!(r, b(&[2, 7]));
    }

    #[test]
    fn json_uses_strings() {
        let s = deg4_example();
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.starts_with(r#"{"left":["57","-22""#));
        let back: MultigradeSolution = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<MultigradeSolution>(
            r#"{"left":[1],"right":[1],"degree":1}"#
        )
        .is_err());
    }
}
