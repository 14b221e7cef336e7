//! Fermat's method for producing new rational points on `w^2 = f(t)` with
//! `f` a quartic, starting from a point where `f` is already a square.
//!
//! The tangent step fits `g(e) = w + alpha e + beta e^2` to `f(t0 + e)`
//! through order 2; the remaining terms `(f3 - 2 alpha beta) e^3 +
//! (f4 - beta^2) e^4` vanish at one nonzero `e`. When that fails, the secant
//! step fits a quadratic through `t0` (with its tangent) and a second known
//! point, and reads off the fourth intersection.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{height, q, sqrt_exact, Q};

/// `f(t) = c[0] t^4 + c[1] t^3 + c[2] t^2 + c[3] t + c[4]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticForm {
    pub c: [Q; 5],
}

impl fmt::Display for QuarticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl QuarticForm {
    pub fn new(c: [Q; 5]) -> Result<Self> {
        if c.iter().all(Zero::is_zero) {
            return Err(Error::DegenerateSolution("zero quartic".into()));
        }
        Ok(QuarticForm { c })
    }

    pub fn from_i64(c: [i64; 5]) -> Result<Self> {
        Self::new(c.map(q))
    }

    /// `4 d^2` as a function of `t = u / v` for the degree-5 specialisation of
    /// the three-progression family with parameters `f, g`.
    pub fn family_b(f: &Q, g: &Q) -> Self {
        let (f2, g2) = (f * f, g * g);
        let (f4, g4) = (&f2 * &f2, &g2 * &g2);
        let fg = f * g;
        let k = &fg * (q(3) * &f2 - &g2);
        QuarticForm {
            c: [
                q(27) * &f4 - q(14) * &f2 * &g2 + q(3) * &g4,
                q(-32) * &k,
                -(q(126) * &f4 - q(108) * &f2 * &g2 + q(14) * &g4),
                q(96) * &k,
                q(243) * &f4 - q(126) * &f2 * &g2 + q(27) * &g4,
            ],
        }
    }

    /// `{5(2n-1)^2 t^2 - 9(4n^2+1)} {(4n^2+1) t^2 - 5(2n+1)^2}`, the
    /// condition behind the one-parameter degree-7 family.
    pub fn degree_seven(n: &Q) -> Self {
        let s = q(4) * n * n + q(1);
        let a = q(5) * (q(2) * n - q(1)) * (q(2) * n - q(1));
        let b = q(-9) * &s;
        let c = s;
        let d = q(-5) * (q(2) * n + q(1)) * (q(2) * n + q(1));
        QuarticForm {
            c: [&a * &c, Q::zero(), &a * &d + &b * &c, Q::zero(), b * d],
        }
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.c.iter().fold(Q::zero(), |acc, c| acc * t + c)
    }

    /// Nonnegative square root of `f(t)` when it is a rational square.
    pub fn eval_square(&self, t: &Q) -> Option<Q> {
        sqrt_exact(&self.eval(t))
    }

    /// Coefficients of `f(t0 + e)` in increasing powers of `e`.
    pub fn taylor(&self, t0: &Q) -> [Q; 5] {
        // repeated synthetic division by (t - t0)
        let mut work: Vec<Q> = self.c.to_vec();
        let mut out: [Q; 5] = Default::default();
        for slot in out.iter_mut() {
            let mut acc = Q::zero();
            let mut next = Vec::with_capacity(work.len());
            for c in &work {
                acc = acc * t0 + c;
                next.push(acc.clone());
            }
            *slot = next.pop().unwrap_or_default();
            work = next;
        }
        out
    }

    fn derivative_at(&self, t: &Q) -> Q {
        self.taylor(t)[1].clone()
    }

    /// Even in `t`, so `-t` is a square whenever `t` is.
    pub fn is_even(&self) -> bool {
        self.c[1].is_zero() && self.c[3].is_zero()
    }
}

fn require_square(f: &QuarticForm, t: &Q) -> Result<Q> {
    match f.eval_square(t) {
        Some(w) if !w.is_zero() => Ok(w),
        _ => Err(Error::NotASquare(format!("f({t}) = {}", f.eval(t)))),
    }
}

/// Tangent step at `t0`. Fails when the fit leaves a pole or returns `t0`.
pub fn tangent_step(f: &QuarticForm, t0: &Q) -> Result<Q> {
    let w = require_square(f, t0)?;
    let [_, f1, f2, f3, f4] = f.taylor(t0);
    let two_w = q(2) * &w;
    let alpha = &f1 / &two_w;
    let beta = (&f2 - &alpha * &alpha) / &two_w;
    let num = f3 - q(2) * &alpha * &beta;
    let den = f4 - &beta * &beta;
    match (num.is_zero(), den.is_zero()) {
        // f is the square of a quadratic; every t works
        (true, true) => Ok(t0 + Q::one()),
        (_, true) => Err(Error::AscentStuck(format!("{t0}: tangent has a pole"))),
        (true, false) => Err(Error::AscentStuck(format!("{t0}: tangent returns t0"))),
        (false, false) => Ok(t0 - num / den),
    }
}

/// Secant step through `t0` (with its tangent) and a second point `t1`,
/// trying both signs of `sqrt f(t1)`; the result of smaller height wins.
pub fn secant_step(f: &QuarticForm, t0: &Q, t1: &Q) -> Result<Q> {
    let w0 = require_square(f, t0)?;
    let w1 = f
        .eval_square(t1)
        .ok_or_else(|| Error::NotASquare(format!("f({t1}) = {}", f.eval(t1))))?;
    if t0 == t1 {
        return Err(Error::AscentStuck(format!(
            "{t0}: secant needs two distinct points"
        )));
    }
    let m = f.derivative_at(t0) / (q(2) * &w0);
    let h = t1 - t0;
    let mut found: Vec<Q> = Vec::new();
    for s in [Q::one(), -Q::one()] {
        let a = (s * &w1 - &w0 - &m * &h) / (&h * &h);
        let b = &m - q(2) * &a * t0;
        let lead = &f.c[0] - &a * &a;
        if lead.is_zero() {
            continue;
        }
        let cubic = &f.c[1] - q(2) * &a * &b;
        let t = -cubic / lead - q(2) * t0 - t1;
        if &t != t0 && &t != t1 {
            found.push(t);
        }
    }
    found
        .into_iter()
        .min_by(|x, y| height(x).cmp(&height(y)).then_with(|| x.cmp(y)))
        .ok_or_else(|| Error::AscentStuck(format!("{t0}: secant through {t1} degenerates")))
}

/// One new square point from `t0`: the tangent first, then secants through
/// the known points `others` (and `-t0` for even quartics).
pub fn fermat_ascent_with(f: &QuarticForm, t0: &Q, others: &[Q]) -> Result<Q> {
    require_square(f, t0)?;
    match tangent_step(f, t0) {
        Ok(t) if f.eval_square(&t).is_some() => return Ok(t),
        Ok(_) | Err(Error::AscentStuck(_)) => {}
        Err(e) => return Err(e),
    }
    let mut partners: Vec<Q> = others.to_vec();
    if f.is_even() && !t0.is_zero() {
        partners.push(-t0.clone());
    }
    let mut best: Option<Q> = None;
    for p in partners.iter().filter(|p| *p != t0) {
        if let Ok(t) = secant_step(f, t0, p) {
            if f.eval_square(&t).is_some() && !partners.contains(&t) {
                let better = best
                    .as_ref()
                    .is_none_or(|b| (height(&t), &t) < (height(b), b));
                if better {
                    best = Some(t);
                }
            }
        }
    }
    best.ok_or_else(|| Error::AscentStuck(t0.to_string()))
}

pub fn fermat_ascent(f: &QuarticForm, t0: &Q) -> Result<Q> {
    fermat_ascent_with(f, t0, &[])
}

/// `k` successive ascents, each from the previous output; every point found
/// so far is available to the secant fallback.
pub fn fermat_steps(f: &QuarticForm, t0: &Q, k: usize) -> Result<Vec<Q>> {
    let mut seen = vec![t0.clone()];
    for _ in 0..k {
        let cur = seen.last().unwrap().clone();
        let next = fermat_ascent_with(f, &cur, &seen)?;
        seen.push(next);
    }
    Ok(seen.split_off(1))
}
