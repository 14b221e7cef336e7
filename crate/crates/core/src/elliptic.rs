//! Rational points on `Y^2 = X^3 + c2 X^2 + c4 X + c6` and the route from
//! points on `Y^2 = X^3 - X^2 - 784X + 8704` to symmetric ideal solutions.
//!
//! The curve is birational to the quartic `V^2 = 18U^4 - 25U^2 + 8`. A point
//! `(U, V)` gives two three-term progressions
//! `a - d1, a, a + d1` and `b - d2, b, b + d2` whose squares and fourth
//! powers have equal sums; closing each side under negation gives a 6+6
//! solution of degree 5, and two Tarry shifts by `d1` and `d2` give 8+8 of
//! degree 7.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{clear_denominators, gcd_all, q, Q};
use crate::shift::tarry_shift;
use crate::solution::{reduce, MultigradeSolution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    pub c2: Q,
    pub c4: Q,
    pub c6: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ECPoint {
    Infinity,
    Affine { x: Q, y: Q },
}

impl ECPoint {
    pub fn affine(x: Q, y: Q) -> Self {
        ECPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => write!(f, "O"),
            ECPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// A point on `V^2 = 18U^4 - 25U^2 + 8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticPoint {
    pub u: Q,
    pub v: Q,
}

impl QuarticPoint {
    pub fn on_curve(&self) -> bool {
        let u2 = &self.u * &self.u;
        &self.v * &self.v == q(18) * &u2 * &u2 - q(25) * &u2 + q(8)
    }
}

impl EllipticCurve {
    /// Fails with `DegenerateSolution` when the cubic has a repeated root.
    pub fn new(c2: Q, c4: Q, c6: Q) -> Result<Self> {
        let c = EllipticCurve { c2, c4, c6 };
        if c.discriminant().is_zero() {
            return Err(Error::DegenerateSolution("singular cubic".into()));
        }
        Ok(c)
    }

    /// `Y^2 = X^3 - X^2 - 784X + 8704`.
    pub fn progression_curve() -> Self {
        EllipticCurve::new(q(-1), q(-784), q(8704)).expect("nonsingular")
    }

    /// `(-8, 120)`, a generator of the rational points of
    /// [`EllipticCurve::progression_curve`].
    pub fn progression_generator() -> ECPoint {
        ECPoint::affine(q(-8), q(120))
    }

    /// Discriminant of the cubic on the right-hand side.
    pub fn discriminant(&self) -> Q {
        let (a, b, c) = (&self.c2, &self.c4, &self.c6);
        q(18) * a * b * c - q(4) * a * a * a * c + a * a * b * b - q(4) * b * b * b - q(27) * c * c
    }

    fn rhs(&self, x: &Q) -> Q {
        ((x + &self.c2) * x + &self.c4) * x + &self.c6
    }

    pub fn on_curve(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    pub fn point(&self, x: Q, y: Q) -> Result<ECPoint> {
        let p = ECPoint::affine(x, y);
        if !self.on_curve(&p) {
            return Err(Error::NotOnCurve);
        }
        Ok(p)
    }

    pub fn negate(&self, p: &ECPoint) -> ECPoint {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::affine(x.clone(), -y.clone()),
        }
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, p: &ECPoint, r: &ECPoint) -> Result<ECPoint> {
        if !self.on_curve(p) || !self.on_curve(r) {
            return Err(Error::NotOnCurve);
        }
        let ((x1, y1), (x2, y2)) = match (p, r) {
            (ECPoint::Infinity, _) => return Ok(r.clone()),
            (_, ECPoint::Infinity) => return Ok(p.clone()),
            (ECPoint::Affine { x: a, y: b }, ECPoint::Affine { x: c, y: d }) => ((a, b), (c, d)),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Ok(ECPoint::Infinity);
            }
            (q(3) * x1 * x1 + q(2) * &self.c2 * x1 + &self.c4) / (q(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - &self.c2 - x1 - x2;
        let y3 = -(y1 + &lambda * (&x3 - x1));
        Ok(ECPoint::affine(x3, y3))
    }

    pub fn double(&self, p: &ECPoint) -> Result<ECPoint> {
        self.add(p, p)
    }

    /// `n P` by double-and-add; negative `n` uses `-P`.
    pub fn scalar_mul(&self, p: &ECPoint, n: i64) -> Result<ECPoint> {
        if !self.on_curve(p) {
            return Err(Error::NotOnCurve);
        }
        let mut base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = ECPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base)?;
            }
        }
        Ok(acc)
    }
}

/// `(X, Y) -> (U, V)`.
pub fn to_quartic(p: &ECPoint) -> Result<QuarticPoint> {
    let (x, y) = match p {
        ECPoint::Infinity => return Err(Error::ExceptionalPoint("point at infinity".into())),
        ECPoint::Affine { x, y } => (x, y),
    };
    let den = q(11) * x - y - q(236);
    if den.is_zero() {
        return Err(Error::ExceptionalPoint(format!("11X - Y - 236 = 0 at {p}")));
    }
    let u = (q(9) * x - y - q(104)) / &den;
    let v = (x * x * x - q(198) * x * x + q(916) * x + q(980) * y + q(34336)) / (&den * &den);
    Ok(QuarticPoint { u, v })
}

/// `(U, V) -> (X, Y)`.
pub fn from_quartic(p: &QuarticPoint) -> Result<ECPoint> {
    let (u, v) = (&p.u, &p.v);
    let w = u - q(1);
    if w.is_zero() {
        return Err(Error::ExceptionalPoint("U = 1".into()));
    }
    let x = q(2) * (q(14) * u * u - q(17) * u + v + q(4)) / (&w * &w);
    let y = q(2)
        * (q(36) * u * u * u - q(25) * u * u + q(11) * u * v - q(25) * u - q(9) * v + q(16))
        / (&w * &w * &w);
    Ok(ECPoint::affine(x, y))
}

/// Two three-term progressions with common differences `d1`, `d2`:
/// `x = (a - d1, a, a + d1)`, `y = (b - d2, b, b + d2)`, in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressionPair {
    pub x: [BigInt; 3],
    pub y: [BigInt; 3],
    pub d1: BigInt,
    pub d2: BigInt,
}

impl ProgressionPair {
    /// The 6+6 solution `±x | ±y` of degree 5.
    pub fn solution(&self) -> MultigradeSolution {
        let pm = |v: &[BigInt; 3]| v.iter().flat_map(|e| [e.clone(), -e]).collect();
        MultigradeSolution::new(pm(&self.x), pm(&self.y), 5)
    }
}

/// Progressions attached to a point of the curve.
pub fn point_to_progressions(p: &ECPoint) -> Result<ProgressionPair> {
    let qp = to_quartic(p)?;
    let u = &qp.u;
    let den = q(2) * u * u - q(1);
    if den.is_zero() {
        return Err(Error::ExceptionalPoint("2U^2 - 1 = 0".into()));
    }
    let pp = &qp.v / den;
    let a = &pp * u + q(2);
    let b = -(&pp * u) + q(2);
    let d1 = &pp - q(3) * u;
    let d2 = -pp - q(3) * u;
    let vals = [
        &a - &d1,
        a.clone(),
        &a + &d1,
        &b - &d2,
        b.clone(),
        &b + &d2,
        d1,
        d2,
    ];
    let (ints, _) = clear_denominators(&vals);
    let g = gcd_all(ints[..6].iter());
    if g.is_zero() {
        return Err(Error::DegenerateSolution("all terms vanish".into()));
    }
    let v: Vec<BigInt> = ints.iter().map(|e| e / &g).collect();
    Ok(ProgressionPair {
        x: [v[0].clone(), v[1].clone(), v[2].clone()],
        y: [v[3].clone(), v[4].clone(), v[5].clone()],
        d1: v[6].clone(),
        d2: v[7].clone(),
    })
}

/// Symmetric 6+6 solution of degree 5 from a curve point.
pub fn point_to_deg5(p: &ECPoint) -> Result<MultigradeSolution> {
    let sol = point_to_progressions(p)?.solution();
    if sol.sides_coincide() {
        return Err(Error::DegenerateSolution(format!(
            "{p} gives a trivial solution"
        )));
    }
    Ok(sol)
}

/// Symmetric 8+8 solution of degree 7: the degree-5 solution shifted by
/// `d1` and then by `d2`, in reduced form.
pub fn point_to_deg7(p: &ECPoint) -> Result<MultigradeSolution> {
    let pair = point_to_progressions(p)?;
    let base = pair.solution();
    if base.sides_coincide() {
        return Err(Error::DegenerateSolution(format!(
            "{p} gives a trivial solution"
        )));
    }
    let once = tarry_shift(&base, &pair.d1);
    let twice = tarry_shift(&once, &pair.d2);
    if twice.is_empty() || twice.sides_coincide() {
        return Err(Error::DegenerateSolution(format!(
            "{p}: shifts cancel everything"
        )));
    }
    reduce(&twice)
}

/// `n P` for the generator `P` of the progression curve.
pub fn multiple_of_generator(n: i64) -> Result<ECPoint> {
    let c = EllipticCurve::progression_curve();
    c.scalar_mul(&EllipticCurve::progression_generator(), n)
}
