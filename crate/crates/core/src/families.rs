//! Parametric families of ideal and equal-product solutions.
//!
//! Each family is written once as a list of polynomials ([`symbolic_family`]);
//! the numeric generators evaluate those polynomials at rational parameters,
//! clear denominators and check the result. The two constructions that need
//! a square root or a linear solve ([`deg4_family_b`], [`deg5_nonsym_at`])
//! are also carried out step by step on numbers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::progression::{assemble_with_scale, scale_shift, ApBlock};
use crate::rational::{parse_q, q, sqrt_exact, Q};
use crate::solution::{
    cancel_common, reduce_keep_order, verify_degree, MultigradeSolution, SymmetryClass,
    VerifyReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Deg4SixTerm,
    Deg4A,
    Deg4B,
    Deg5Sym1,
    Deg5Sym2,
    Deg5Nonsym,
    Deg6,
    Deg7,
    EqProdDeg4,
    EqProdDeg5,
}

impl FamilyId {
    pub const ALL: [FamilyId; 10] = [
        FamilyId::Deg4SixTerm,
        FamilyId::Deg4A,
        FamilyId::Deg4B,
        FamilyId::Deg5Sym1,
        FamilyId::Deg5Sym2,
        FamilyId::Deg5Nonsym,
        FamilyId::Deg6,
        FamilyId::Deg7,
        FamilyId::EqProdDeg4,
        FamilyId::EqProdDeg5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Deg4SixTerm => "Deg4SixTerm",
            FamilyId::Deg4A => "Deg4A",
            FamilyId::Deg4B => "Deg4B",
            FamilyId::Deg5Sym1 => "Deg5Sym1",
            FamilyId::Deg5Sym2 => "Deg5Sym2",
            FamilyId::Deg5Nonsym => "Deg5Nonsym",
            FamilyId::Deg6 => "Deg6",
            FamilyId::Deg7 => "Deg7",
            FamilyId::EqProdDeg4 => "EqProdDeg4",
            FamilyId::EqProdDeg5 => "EqProdDeg5",
        }
    }

    /// Parameter names in positional order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            FamilyId::Deg4SixTerm => &["m1", "m2", "p", "q"],
            FamilyId::Deg4A => &["m1", "m2"],
            FamilyId::Deg4B => &["f", "g", "u", "v"],
            FamilyId::Deg5Sym1 => &["n1", "p", "q"],
            FamilyId::Deg5Sym2 => &["m", "t"],
            FamilyId::Deg5Nonsym => &["f", "g"],
            FamilyId::Deg6 => &["n1", "n2"],
            FamilyId::Deg7 => &["n"],
            FamilyId::EqProdDeg4 => &["f", "g", "d"],
            FamilyId::EqProdDeg5 => &["m"],
        }
    }

    pub fn degree(self) -> u32 {
        match self {
            FamilyId::Deg4SixTerm | FamilyId::Deg4A | FamilyId::Deg4B | FamilyId::EqProdDeg4 => 4,
            FamilyId::Deg5Sym1
            | FamilyId::Deg5Sym2
            | FamilyId::Deg5Nonsym
            | FamilyId::EqProdDeg5 => 5,
            FamilyId::Deg6 => 6,
            FamilyId::Deg7 => 7,
        }
    }

    /// Terms per side for generic parameters.
    pub fn size(self) -> usize {
        match self {
            FamilyId::Deg4A | FamilyId::Deg4B => 5,
            FamilyId::Deg4SixTerm
            | FamilyId::Deg5Sym1
            | FamilyId::Deg5Sym2
            | FamilyId::Deg5Nonsym
            | FamilyId::EqProdDeg4 => 6,
            FamilyId::Deg6 | FamilyId::EqProdDeg5 => 7,
            FamilyId::Deg7 => 8,
        }
    }

    /// Symmetry class of the output for generic parameters.
    pub fn symmetry(self) -> SymmetryClass {
        match self {
            FamilyId::Deg5Sym1 | FamilyId::Deg5Sym2 | FamilyId::Deg7 => {
                SymmetryClass::SymmetricEven
            }
            FamilyId::Deg6 => SymmetryClass::SymmetricOdd,
            _ => SymmetryClass::Nonsymmetric,
        }
    }

    pub fn equal_products(self) -> bool {
        matches!(self, FamilyId::EqProdDeg4 | FamilyId::EqProdDeg5)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// Case-insensitive; `-` and `_` are ignored, so `deg5-sym1` works.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .flat_map(char::to_lowercase)
            .collect();
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name().to_lowercase() == key)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family as polynomials in its parameters.
#[derive(Debug, Clone)]
pub struct SymbolicFamily {
    pub vars: Vec<&'static str>,
    pub left: Vec<MultiPoly>,
    pub right: Vec<MultiPoly>,
    pub degree: u32,
    pub equal_products: bool,
}

impl SymbolicFamily {
    pub fn eval(&self, params: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let ev = |v: &[MultiPoly]| v.iter().map(|p| p.eval(params)).collect();
        (ev(&self.left), ev(&self.right))
    }
}

const DEG4A_LEFT: [&str; 5] = [
    "56m1^2m2+60m1*m2^2+12m2^3+44m1^2+70m1*m2+24m2^2+10m1+9m2",
    "-24m1^2m2+12m2^3-36m1^2-40m1*m2-6m2^2-10m1-6m2",
    "56m1^2m2+80m1*m2^2+32m2^3-16m1^2+20m1*m2+24m2^2+4m2",
    "-64m1^2m2-80m1*m2^2-28m2^3-16m1^2-60m1*m2-36m2^2-10m1-11m2",
    "-24m1^2m2-60m1*m2^2-28m2^3+24m1^2+10m1*m2-6m2^2+10m1+4m2",
];

const DEG4A_RIGHT: [&str; 5] = [
    "-24m1^2m2+12m2^3+24m1^2+40m1*m2+24m2^2+10m1+9m2",
    "56m1^2m2+60m1*m2^2+12m2^3-16m1^2-10m1*m2-6m2^2-10m1-6m2",
    "-64m1^2m2-80m1*m2^2-28m2^3-16m1^2-20m1*m2-6m2^2+4m2",
    "56m1^2m2+80m1*m2^2+32m2^3+44m1^2+60m1*m2+24m2^2+10m1+4m2",
    "-24m1^2m2-60m1*m2^2-28m2^3-36m1^2-70m1*m2-36m2^2-10m1-11m2",
];

const DEG5_SYM1_LEFT: [&str; 3] = [
    "(2p^2+6q^2)n1^2-(p^2+6p*q-3q^2)n1-p^2-3q^2",
    "2(p+q)(p-3q)n1^2-(3p^2+9q^2)n1+(p+q)(p-3q)",
    "8p*q*n1^2+(p^2+3q^2)n1-(p+3q)(p-q)",
];

const DEG5_SYM1_RIGHT: [&str; 3] = [
    "(2p^2+6q^2)n1^2-3(p+q)(p-3q)n1+p^2+3q^2",
    "8p*q*n1^2-(p^2+3q^2)n1+(p+q)(p-3q)",
    "2(p+q)(p-3q)n1^2-(p^2+3q^2)n1-(p+3q)(p-q)",
];

const DEG5_SYM2_LEFT: [&str; 3] = [
    "2m^2-6t(t-2)m+6(t-1)(t+2)(3t-2)",
    "m^2t+16(t-1)m-3t(t+2)(3t-2)",
    "(2t-2)m^2-2(3t^2-4t+4)m-6(t+2)(3t-2)",
];

const DEG5_SYM2_RIGHT: [&str; 3] = [
    "(2t-2)m^2-6t(t-2)m+6(t+2)(3t-2)",
    "m^2t-16(t-1)m-3t(t+2)(3t-2)",
    "2m^2+2(3t^2-4t+4)m-6(t-1)(t+2)(3t-2)",
];

/// Coefficients of `f^10, f^9 g, ..., g^10`.
const DEG5_NONSYM_LEFT: [[i64; 11]; 6] = [
    [1701, 3888, 459, 1656, -5310, 2504, -1482, 616, 25, -24, -1],
    [243, 1944, 4509, -5256, -1314, -3112, 42, 40, -17, 48, -7],
    [-1215, -972, 2403, 1872, 4770, 4088, 798, 208, 157, -12, -1],
    [-1215, -2916, 459, 1656, 4122, -832, 1878, -248, -59, 36, -1],
    [243, 972, -3591, -936, 126, -1600, 354, -728, -17, -12, 5],
    [
        243, -2916, -4239, 1008, -2394, -1048, -1590, 112, -89, -36, 5,
    ],
];

const DEG5_NONSYM_RIGHT: [[i64; 11]; 6] = [
    [243, -1944, -675, 5544, 4446, 2504, 1770, 184, -17, 48, -7],
    [
        -1215, -972, 459, -6552, -1062, -1600, -42, -104, 133, 12, -1,
    ],
    [243, -972, -4239, 1872, -2394, 4088, -1590, 208, -89, -12, 5],
    [243, 2916, 1593, -2232, -5634, -832, -1374, 184, -17, -36, 5],
    [1701, 3888, 459, 360, -126, -3112, 438, -584, -167, 24, -1],
    [
        -1215, -2916, 2403, 1008, 4770, -1048, 798, 112, 157, -36, -1,
    ],
];

const DEG6_LEFT: [&str; 7] = [
    "-4n1(n1-n2)(n1+n2)(n1^2-3n1*n2+n2^2)",
    "-4n1(n1^4-4n1^3n2+5n1^2n2^2-n2^4)",
    "4(n1^2-n1*n2+n2^2)(n1^3-3n1^2n2+n2^3)",
    "-4n2(n1^4-4n1^3n2+n1^2n2^2+2n1*n2^3-n2^4)",
    "-4n1*n2(n1-2n2)(n1^2+n1*n2-n2^2)",
    "4(n1-n2)(n1^4-2n1^3n2-n1^2n2^2+n2^4)",
    "4n2(2n1-n2)(n1-n2)(n1^2-n1*n2-n2^2)",
];

const DEG7_LEFT: [&str; 4] = [
    "16n^4-64n^3-13n^2-4n+1",
    "32n^5-16n^4+30n^3+13n^2-2n-1",
    "-32n^5+16n^4+26n^3-15n^2-2n-1",
    "-32n^5-32n^4+26n^3-32n^2-2n",
];

const DEG7_RIGHT: [&str; 4] = [
    "-32n^5+32n^4+26n^3+32n^2-2n",
    "-32n^5-16n^4+26n^3+15n^2-2n+1",
    "16n^4+64n^3-13n^2+4n+1",
    "32n^5+16n^4+30n^3-13n^2-2n+1",
];

/// Each entry is `L(a) L(b)` with `L(c0, c1, c2) = c0 f^2 + c1 f g + c2 g^2 + d`.
type QuadPair = ([i64; 3], [i64; 3]);

const EQPROD4_LEFT: [QuadPair; 6] = [
    ([6, 12, 6], [-30, 4, 2]),
    ([-6, 4, 10], [30, -4, -2]),
    ([18, 20, 2], [-18, 12, -2]),
    ([6, -4, -10], [18, -12, 2]),
    ([-6, 20, -6], [-18, -20, -2]),
    ([6, -20, 6], [-6, -12, -6]),
];

const EQPROD4_RIGHT: [QuadPair; 6] = [
    ([-18, 12, -2], [-6, 4, 10]),
    ([6, -20, 6], [18, 20, 2]),
    ([-6, 20, -6], [6, 12, 6]),
    ([30, -4, -2], [-6, -12, -6]),
    ([-30, 4, 2], [6, -4, -10]),
    ([18, -12, 2], [-18, -20, -2]),
];

const EQPROD5_LEFT: [&str; 7] = [
    "(4m+3)(8m-3)",
    "-2(2m+3)(12m-1)",
    "-4(3m+1)(4m-9)",
    "6(4m+1)(8m+1)",
    "3(4m+1)(16m-3)",
    "8(4m+3)(m-1)",
    "-4(16m+9)(2m-1)",
];

const EQPROD5_RIGHT: [&str; 7] = [
    "(8m+1)(4m-9)",
    "(16m+9)(12m-1)",
    "4(2m+3)(4m+3)",
    "8(3m+1)(8m-3)",
    "-6(4m+1)(2m-1)",
    "-2(4m+1)(16m-3)",
    "-12(4m+3)(m-1)",
];

fn parse_all(src: &[&str], vars: &[&str]) -> Result<Vec<MultiPoly>> {
    src.iter().map(|s| MultiPoly::parse(s, vars)).collect()
}

fn with_negations(v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let neg: Vec<MultiPoly> = v.iter().rev().map(|p| -p.clone()).collect();
    v.into_iter().chain(neg).collect()
}

fn binary_form(coeffs: &[i64], nvars: usize) -> MultiPoly {
    let n = coeffs.len() as u32 - 1;
    MultiPoly::from_terms(
        nvars,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (vec![n - i as u32, i as u32], q(c))),
    )
}

/// The transcribed polynomials of `id`, in the family's own parameters.
/// `Deg4B` uses the default cancellation pair.
pub fn symbolic_family(id: FamilyId) -> Result<SymbolicFamily> {
    let vars: Vec<&'static str> = id.params().to_vec();
    let (left, right) = match id {
        FamilyId::Deg4A => (
            parse_all(&DEG4A_LEFT, &vars)?,
            parse_all(&DEG4A_RIGHT, &vars)?,
        ),
        FamilyId::Deg4SixTerm => six_term_polys()?,
        FamilyId::Deg4B => {
            let (x, y) = Deg4BMode::DEFAULT_PAIR;
            family_b_cancelled_polys(x, y)?
        }
        FamilyId::Deg5Sym1 => (
            with_negations(parse_all(&DEG5_SYM1_LEFT, &vars)?),
            with_negations(parse_all(&DEG5_SYM1_RIGHT, &vars)?),
        ),
        FamilyId::Deg5Sym2 => (
            with_negations(parse_all(&DEG5_SYM2_LEFT, &vars)?),
            with_negations(parse_all(&DEG5_SYM2_RIGHT, &vars)?),
        ),
        FamilyId::Deg5Nonsym => (
            DEG5_NONSYM_LEFT.iter().map(|c| binary_form(c, 2)).collect(),
            DEG5_NONSYM_RIGHT
                .iter()
                .map(|c| binary_form(c, 2))
                .collect(),
        ),
        FamilyId::Deg6 => {
            let x = parse_all(&DEG6_LEFT, &vars)?;
            let y = x.iter().map(|p| -p.clone()).collect();
            (x, y)
        }
        FamilyId::Deg7 => (
            with_negations(parse_all(&DEG7_LEFT, &vars)?),
            with_negations(parse_all(&DEG7_RIGHT, &vars)?),
        ),
        FamilyId::EqProdDeg4 => {
            let quad = |c: &[i64; 3]| -> Result<MultiPoly> {
                Ok(MultiPoly::parse("f^2", &vars)?.scale(&q(c[0]))
                    + MultiPoly::parse("f*g", &vars)?.scale(&q(c[1]))
                    + MultiPoly::parse("g^2", &vars)?.scale(&q(c[2]))
                    + MultiPoly::var(3, 2))
            };
            let side = |pairs: &[QuadPair]| -> Result<Vec<MultiPoly>> {
                pairs
                    .iter()
                    .map(|(a, b)| Ok(&quad(a)? * &quad(b)?))
                    .collect()
            };
            (side(&EQPROD4_LEFT)?, side(&EQPROD4_RIGHT)?)
        }
        FamilyId::EqProdDeg5 => (
            parse_all(&EQPROD5_LEFT, &vars)?,
            parse_all(&EQPROD5_RIGHT, &vars)?,
        ),
    };
    Ok(SymbolicFamily {
        vars,
        left,
        right,
        degree: id.degree(),
        equal_products: id.equal_products(),
    })
}

/// `a, b, d1, d2` of the three-progression construction, in `m1, m2, p, q`.
fn six_term_ingredients() -> Result<[MultiPoly; 4]> {
    let vars = FamilyId::Deg4SixTerm.params();
    let p = |s: &str| MultiPoly::parse(s, vars);
    let a_coef = p("12m1^2+12m1*m2+4m2^2-1")?;
    let w = p("24m1^2+24m1*m2+8m2^2-2")?;
    let d1 = -(&a_coef * &p("p^2")? - p("(8m2^2-2)p*q")? + p("(4m2^2-1)q^2")?);
    let d2 = &a_coef * &p("p^2")? - &w * &p("p*q")? + p("(4m2^2-1)q^2")?;
    let r = &w * &p("p^2")? - p("(8m2^2-2)q^2")?;
    let n = p("m1+m2")?;
    let a = &n * &r;
    let b = &p("m1")? * &r;
    Ok([a, b, d1, d2])
}

fn six_term_polys() -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
    let vars = FamilyId::Deg4SixTerm.params();
    let p = |s: &str| MultiPoly::parse(s, vars);
    let [a, b, d1, d2] = six_term_ingredients()?;
    let two = MultiPoly::constant(4, q(2));
    let m = |s: &str, x: &MultiPoly| -> Result<MultiPoly> { Ok(&p(s)? * x) };
    let two_d1 = &two * &d1;
    let two_d2 = &two * &d2;
    let left = vec![
        a.clone() - m("2m1-1", &d1)?,
        a.clone() + m("2m1+1", &d1)? + two_d2.clone(),
        -m("2m2-1", &d2)?,
        m("2m2+1", &d2)? + two_d1.clone(),
        b.clone() + m("2m1+2m2+1", &d1)?,
        b.clone() - m("2m1+2m2-1", &d1)? + two_d2.clone(),
    ];
    let right = vec![
        a.clone() + m("2m1+1", &d1)?,
        a - m("2m1-1", &d1)? + two_d2.clone(),
        m("2m2+1", &d2)?,
        -m("2m2-1", &d2)? + two_d1,
        b.clone() - m("2m1+2m2-1", &d1)?,
        b + m("2m1+2m2+1", &d1)? + two_d2,
    ];
    Ok((left, right))
}

const FAMILY_B_N: [&str; 3] = [
    "f*g*u^2+(3f^2-g^2)u*v-3f*g*v^2",
    "-(3f^2+g^2)u*v",
    "-f*g(u^2+3v^2)",
];

const FAMILY_B_A: [&str; 3] = [
    "u(2f*g*u+(3f^2-g^2)v)((3f^2+g^2)u^2+(12f^2-4g^2)u*v-(27f^2+24f*g+9g^2)v^2)",
    "(f*u-g*v)(-g*u+3f*v)((3f^2+4f*g-3g^2)u^2+(12f^2-24f*g+4g^2)u*v+(-27f^2+12f*g+3g^2)v^2)",
    "2(3f^2+g^2)(g*u^2+6f*u*v-3g*v^2)(f*u^2-2g*u*v-3f*v^2)",
];

const FAMILY_B_B: [&str; 2] = [
    "v((3f^2-g^2)u-6f*g*v)((9f^2+8f*g+3g^2)u^2+(12f^2-4g^2)u*v-(9f^2+3g^2)v^2)",
    "(f*u+g*v)(g*u+3f*v)((9f^2-4f*g-g^2)u^2+(12f^2-24f*g+4g^2)u*v-(9f^2+12f*g-9g^2)v^2)",
];

/// `4 d^2` for the degree-5 condition on family B, as a form in `u, v`.
const FAMILY_B_QUARTIC: &str = "(27f^4-14f^2g^2+3g^4)u^4-32f*g(3f^2-g^2)u^3v\
    -(126f^4-108f^2g^2+14g^4)u^2v^2+96f*g(3f^2-g^2)u*v^3+(243f^4-126f^2g^2+27g^4)v^4";

/// Entries of family B as `(constant, coefficient of d)` pairs, `X` then `Y`.
/// Generic over the coefficient type so the symbolic and numeric paths share it.
fn family_b_linear<T>(n: &[T; 3], a: &[T; 3], b: &[T; 3], one: &T) -> [Vec<(T, T)>; 2]
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Neg<Output = T>,
{
    let two_n: Vec<_> = n.iter().map(|ni| ni.clone() + ni.clone()).collect();
    let mut x = Vec::with_capacity(6);
    let mut y = Vec::with_capacity(6);
    for (ai, tn) in a.iter().zip(&two_n) {
        x.push((ai.clone(), -(tn.clone() - one.clone())));
        y.push((ai.clone(), tn.clone() + one.clone()));
    }
    for (bi, tn) in b.iter().zip(&two_n) {
        x.push((bi.clone(), tn.clone() + one.clone()));
        y.push((bi.clone(), -(tn.clone() - one.clone())));
    }
    [x, y]
}

fn family_b_polys() -> Result<[Vec<(MultiPoly, MultiPoly)>; 2]> {
    let vars = FamilyId::Deg4B.params();
    let n = parse_all(&FAMILY_B_N, vars)?;
    let a = parse_all(&FAMILY_B_A, vars)?;
    let b = parse_all(&FAMILY_B_B, vars)?;
    let arr = |v: Vec<MultiPoly>| -> [MultiPoly; 3] { [v[0].clone(), v[1].clone(), v[2].clone()] };
    let b3 = [b[0].clone(), b[1].clone(), MultiPoly::zero(4)];
    Ok(family_b_linear(&arr(n), &arr(a), &b3, &MultiPoly::one(4)))
}

fn family_b_cancelled_polys(x: usize, y: usize) -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
    check_pair(x, y)?;
    let [xs, ys] = family_b_polys()?;
    let num = ys[y - 1].0.clone() - xs[x - 1].0.clone();
    let den = xs[x - 1].1.clone() - ys[y - 1].1.clone();
    if den.is_zero() {
        return Err(Error::NoCancellation { x, y });
    }
    let scaled = |v: &[(MultiPoly, MultiPoly)], skip: usize| -> Vec<MultiPoly> {
        v.iter()
            .enumerate()
            .filter(|(i, _)| *i != skip - 1)
            .map(|(_, (c, k))| &(c * &den) + &(k * &num))
            .collect()
    };
    Ok((scaled(&xs, x), scaled(&ys, y)))
}

fn check_pair(x: usize, y: usize) -> Result<()> {
    if !(1..=6).contains(&x) || !(1..=6).contains(&y) {
        return Err(Error::BadCancellationPair { x, y });
    }
    Ok(())
}

/// How `d` is fixed in family B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deg4BMode {
    /// Choose `d` so that `X_x = Y_y` and cancel that pair (5+5).
    Cancel { x: usize, y: usize },
    /// Keep `d` as given (6+6).
    FreeD(Q),
}

impl Deg4BMode {
    /// `X_1 = Y_3`, the pair that reproduces the published two-parameter table.
    pub const DEFAULT_PAIR: (usize, usize) = (1, 3);
}

impl Default for Deg4BMode {
    fn default() -> Self {
        let (x, y) = Self::DEFAULT_PAIR;
        Deg4BMode::Cancel { x, y }
    }
}

struct FamilyB {
    n: [Q; 3],
    a: [Q; 3],
    b: [Q; 3],
}

fn family_b_values(f: &Q, g: &Q, u: &Q, v: &Q) -> Result<FamilyB> {
    let vars = FamilyId::Deg4B.params();
    let pt = [f.clone(), g.clone(), u.clone(), v.clone()];
    let ev = |src: &[&str]| -> Result<Vec<Q>> {
        Ok(parse_all(src, vars)?.iter().map(|p| p.eval(&pt)).collect())
    };
    let n = ev(&FAMILY_B_N)?;
    let a = ev(&FAMILY_B_A)?;
    let b = ev(&FAMILY_B_B)?;
    Ok(FamilyB {
        n: [n[0].clone(), n[1].clone(), n[2].clone()],
        a: [a[0].clone(), a[1].clone(), a[2].clone()],
        b: [b[0].clone(), b[1].clone(), Q::zero()],
    })
}

fn family_b_entries(fb: &FamilyB, d: &Q) -> (Vec<Q>, Vec<Q>) {
    let [xs, ys] = family_b_linear(&fb.n, &fb.a, &fb.b, &Q::one());
    let ev = |v: &[(Q, Q)]| v.iter().map(|(c, k)| c + k * d).collect();
    (ev(&xs), ev(&ys))
}

fn degenerate(id: FamilyId, reason: &str) -> Error {
    Error::DegenerateParameters {
        family: id.name().to_string(),
        reason: reason.to_string(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Normalize {
    /// Divide by the entry gcd, order and translation kept.
    Primitive,
    /// Translate to zero side sums as well.
    Reduce,
}

/// Clears denominators, rejects collapsed outputs, cancels common terms
/// (except for equal-product systems, where a cancelled zero would break the
/// product relation) and checks the claimed relations.
fn finish(
    id: FamilyId,
    left: &[Q],
    right: &[Q],
    degree: u32,
    norm: Normalize,
) -> Result<MultigradeSolution> {
    let raw = MultigradeSolution::from_rationals(left, right, degree);
    if raw.sides_coincide() {
        return Err(degenerate(id, "both sides coincide"));
    }
    let sol = if id.equal_products() {
        raw
    } else {
        let (l, r) = cancel_common(raw.left, raw.right);
        MultigradeSolution::new(l, r, degree)
    };
    let sol = match norm {
        Normalize::Primitive => sol.primitive(),
        Normalize::Reduce => reduce_keep_order(&sol)
            .map_err(|_| degenerate(id, "entries collapse under reduction"))?,
    };
    let report = verify_degree(&sol, degree)?;
    if report.max_degree < degree {
        return Err(Error::NotASolution {
            claimed: degree,
            actual: report.max_degree,
        });
    }
    if id.equal_products() && !sol.products_equal() {
        return Err(Error::IdentityFails {
            r: 0,
            difference: "products differ".into(),
        });
    }
    Ok(sol)
}

fn from_table(id: FamilyId, params: &[Q], norm: Normalize) -> Result<MultigradeSolution> {
    let fam = symbolic_family(id)?;
    let (l, r) = fam.eval(params);
    finish(id, &l, &r, id.degree(), norm)
}

/// Six-term family of degree 4 built from two progressions on each side.
/// Coinciding terms are cancelled, so special parameters give 5+5.
pub fn deg4_six_term(m1: &Q, m2: &Q, p: &Q, q: &Q) -> Result<MultigradeSolution> {
    if (m1 + m2).is_zero() {
        return Err(Error::DenominatorVanishes("m1 + m2 = 0".into()));
    }
    let params = [m1.clone(), m2.clone(), p.clone(), q.clone()];
    from_table(FamilyId::Deg4SixTerm, &params, Normalize::Primitive)
}

/// The degree-2 solution `[a, m1, d1] ∪ [0, m2, d2]` vs `[b, m1 + m2, d1]`
/// that the six-term family descends from, together with the shifts
/// `2 d1, 2 d2` (in the same integer units) that raise it to degree 4.
/// `m1` and `m2` must be positive integers here since they count terms.
pub fn six_term_ancestor(
    m1: i64,
    m2: i64,
    p: &Q,
    q_: &Q,
) -> Result<(MultigradeSolution, [BigInt; 2])> {
    if m1 < 1 || m2 < 1 {
        return Err(Error::NonPositiveCount(m1.min(m2)));
    }
    let point = [q(m1), q(m2), p.clone(), q_.clone()];
    let [a, b, d1, d2] = six_term_ingredients()?.map(|f| f.eval(&point));
    let left = [
        ApBlock::new(a, m1, d1.clone()),
        ApBlock::new(Q::zero(), m2, d2.clone()),
    ];
    let right = [ApBlock::new(b, m1 + m2, d1.clone())];
    let (sol, scale) = assemble_with_scale(&left, &right, 2)?;
    let shift = |d: &Q| {
        scale_shift(&(q(2) * d), &scale)
            .ok_or_else(|| Error::DenominatorVanishes("shift is not integral after scaling".into()))
    };
    Ok((sol, [shift(&d1)?, shift(&d2)?]))
}

pub fn deg4_family_a(m1: &Q, m2: &Q) -> Result<MultigradeSolution> {
    from_table(
        FamilyId::Deg4A,
        &[m1.clone(), m2.clone()],
        Normalize::Primitive,
    )
}

/// Family B: three progressions per side with common step `2d`, from
/// parameters `f, g, u, v`. The output is in reduced form, in construction
/// order.
pub fn deg4_family_b(f: &Q, g: &Q, u: &Q, v: &Q, mode: &Deg4BMode) -> Result<MultigradeSolution> {
    let fb = family_b_values(f, g, u, v)?;
    let [n1, n2, n3] = &fb.n;
    let checks = [
        (n1.is_zero(), "n1 = 0"),
        (n2.is_zero(), "n2 = 0"),
        (n1 == n2 || *n1 == -n2.clone(), "n1 = ±n2"),
        (n2 == n3 || *n2 == -n3.clone(), "n2 = ±n3"),
    ];
    if let Some((_, what)) = checks.iter().find(|(bad, _)| *bad) {
        return Err(Error::DenominatorVanishes((*what).into()));
    }
    let psi = q(3) * (n1 + n2 + n3) * (n1 + n2 - n3) * (n2 + n3 - n1) * (n1 - n2 + n3);
    if sqrt_exact(&psi).is_none() {
        return Err(Error::NotASquare(psi.to_string()));
    }
    let d = match mode {
        Deg4BMode::FreeD(d) => d.clone(),
        Deg4BMode::Cancel { x, y } => {
            let (x, y) = (*x, *y);
            check_pair(x, y)?;
            let [xs, ys] = family_b_linear(&fb.n, &fb.a, &fb.b, &Q::one());
            let num = &ys[y - 1].0 - &xs[x - 1].0;
            let den = &xs[x - 1].1 - &ys[y - 1].1;
            if den.is_zero() {
                if num.is_zero() {
                    // the pair coincides for every d
                    Q::one()
                } else {
                    return Err(Error::NoCancellation { x, y });
                }
            } else {
                num / den
            }
        }
    };
    let (l, r) = family_b_entries(&fb, &d);
    finish(FamilyId::Deg4B, &l, &r, 4, Normalize::Reduce)
}

/// Value of the quartic `4 d^2` at `(u, v)`.
pub fn family_b_quartic(f: &Q, g: &Q, u: &Q, v: &Q) -> Result<Q> {
    let p = MultiPoly::parse(FAMILY_B_QUARTIC, FamilyId::Deg4B.params())?;
    Ok(p.eval(&[f.clone(), g.clone(), u.clone(), v.clone()]))
}

/// Degree-5 member of family B: `d` is fixed by `4 d^2 = quartic(u, v)`,
/// which must be a rational square.
pub fn deg5_nonsym_at(f: &Q, g: &Q, u: &Q, v: &Q) -> Result<MultigradeSolution> {
    let four_d2 = family_b_quartic(f, g, u, v)?;
    let root = sqrt_exact(&four_d2).ok_or_else(|| Error::NotASquare(four_d2.to_string()))?;
    let d = root / q(2);
    let fb = family_b_values(f, g, u, v)?;
    let (l, r) = family_b_entries(&fb, &d);
    finish(FamilyId::Deg5Nonsym, &l, &r, 5, Normalize::Reduce)
}

/// The point `u = -3(3f^2 - g^2), v = 3f^2 + 8fg - g^2` of the quartic.
pub fn deg5_nonsym_point(f: &Q, g: &Q) -> (Q, Q) {
    let (f2, g2) = (f * f, g * g);
    let u = q(-3) * (q(3) * &f2 - &g2);
    let v = q(3) * &f2 + q(8) * f * g - g2;
    (u, v)
}

pub fn deg5_nonsym(f: &Q, g: &Q) -> Result<MultigradeSolution> {
    let (u, v) = deg5_nonsym_point(f, g);
    deg5_nonsym_at(f, g, &u, &v)
}

pub fn deg5_sym_family1(n1: &Q, p: &Q, q: &Q) -> Result<MultigradeSolution> {
    let params = [n1.clone(), p.clone(), q.clone()];
    from_table(FamilyId::Deg5Sym1, &params, Normalize::Primitive)
}

pub fn deg5_sym_family2(m: &Q, t: &Q) -> Result<MultigradeSolution> {
    from_table(
        FamilyId::Deg5Sym2,
        &[m.clone(), t.clone()],
        Normalize::Primitive,
    )
}

pub fn deg6_family(n1: &Q, n2: &Q) -> Result<MultigradeSolution> {
    from_table(
        FamilyId::Deg6,
        &[n1.clone(), n2.clone()],
        Normalize::Primitive,
    )
}

pub fn deg7_family(n: &Q) -> Result<MultigradeSolution> {
    from_table(
        FamilyId::Deg7,
        std::slice::from_ref(n),
        Normalize::Primitive,
    )
}

/// Degree 4 with equal products, 6+6.
pub fn eqprod_deg4(f: &Q, g: &Q, d: &Q) -> Result<MultigradeSolution> {
    let params = [f.clone(), g.clone(), d.clone()];
    from_table(FamilyId::EqProdDeg4, &params, Normalize::Primitive)
}

/// Degree 5 with equal products, 7+7.
pub fn eqprod_deg5(m: &Q) -> Result<MultigradeSolution> {
    from_table(
        FamilyId::EqProdDeg5,
        std::slice::from_ref(m),
        Normalize::Primitive,
    )
}

/// The degree-5 power-sum solution behind [`eqprod_deg5`], before the
/// product step: progressions `[a1, m1, d1]`, `[a2, m2, d2]` against
/// `[0, m1 + m2, 1]`, shifted by `2`, `2 d1` and `2 d2`. Generically 8+8;
/// at `m1 = -3/4` one more pair cancels.
pub fn eqprod_deg5_precursor(m1: &Q, m2: &Q) -> Result<MultigradeSolution> {
    let den = q(4) * m1 * m2 + m1 + m2;
    if den.is_zero() {
        return Err(Error::DenominatorVanishes("4 m1 m2 + m1 + m2 = 0".into()));
    }
    let n = m1 + m2;
    let one = Q::one();
    let two = q(2);
    let d1 = (q(4) * m1 * m2 + m1 + q(4) * m2 * m2 + q(3) * m2) / &den;
    let d2 = (q(4) * m1 * m1 + q(4) * m1 * m2 + q(3) * m1 + m2) / &den;
    let d3 = one.clone();
    let a1 = (&two * &n + &one) - (&two * m1 + &one) * &d1;
    let a2 = (&two * m2 + &one) * &d2 - (&two * &n + &one);
    let first = |a: &Q, m: &Q, d: &Q| a - (&two * m - &one) * d;
    let last = |a: &Q, m: &Q, d: &Q| a + (&two * m - &one) * d;
    let (al1, om1) = (first(&a1, m1, &d1), last(&a1, m1, &d1));
    let (al2, om2) = (first(&a2, m2, &d2), last(&a2, m2, &d2));
    let (t1, t2, t3) = (&two * &d1, &two * &d2, &two * &d3);
    let left = vec![
        al1.clone(),
        &om1 + &t1 + &t3,
        &om1 + &t1 + &t1 + &t2,
        &al1 + &t3 + &t2,
        al2.clone(),
        &al2 + &t3 - &t2 + &t1,
        &om2 + &t3 + &t2,
        &om2 + &t1 + &t2,
    ];
    let right = vec![
        &om1 + &t1 + &t1,
        &al1 + &t3,
        &al1 + &t2,
        &om1 + &t1 + &t3 + &t2,
        &om2 + &t2,
        &om2 + &t3 + &t1 + &t2,
        &al2 + &t3 - &t2,
        &al2 + &t1,
    ];
    let raw = MultigradeSolution::from_rationals(&left, &right, 5);
    let (l, r) = cancel_common(raw.left, raw.right);
    let sol = MultigradeSolution::new(l, r, 5).primitive();
    if sol.sides_coincide() {
        return Err(degenerate(FamilyId::EqProdDeg5, "both sides coincide"));
    }
    Ok(sol)
}

/// Translates an ideal degree-`k` solution to zero side sums and reports
/// exponents `1..=k+2`. For nonsymmetric inputs exponent `k+2` holds too.
pub fn gloden_augment(sol: &MultigradeSolution) -> Result<(MultigradeSolution, VerifyReport)> {
    let k = sol.degree;
    if sol.size() != k as usize + 1 || sol.right.len() != sol.size() {
        return Err(Error::NotIdeal {
            size: sol.size(),
            degree: k,
        });
    }
    let s = BigInt::from(k + 1);
    let total: BigInt = sol.left.iter().sum();
    let tr = |v: &[BigInt]| v.iter().map(|e| &s * e - &total).collect();
    let moved = MultigradeSolution::new(tr(&sol.left), tr(&sol.right), k).primitive();
    let report = verify_degree(&moved, k + 2)?;
    Ok((moved, report))
}

/// Positional parameters, in the order of [`FamilyId::params`].
pub fn generate(id: FamilyId, params: &[Q]) -> Result<MultigradeSolution> {
    let names = id.params();
    if params.len() < names.len() {
        return Err(Error::MissingParameter(names[params.len()].to_string()));
    }
    if params.len() > names.len() {
        return Err(Error::Parse(format!(
            "{id} takes {} parameters, got {}",
            names.len(),
            params.len()
        )));
    }
    let p = params;
    match id {
        FamilyId::Deg4SixTerm => deg4_six_term(&p[0], &p[1], &p[2], &p[3]),
        FamilyId::Deg4A => deg4_family_a(&p[0], &p[1]),
        FamilyId::Deg4B => deg4_family_b(&p[0], &p[1], &p[2], &p[3], &Deg4BMode::default()),
        FamilyId::Deg5Sym1 => deg5_sym_family1(&p[0], &p[1], &p[2]),
        FamilyId::Deg5Sym2 => deg5_sym_family2(&p[0], &p[1]),
        FamilyId::Deg5Nonsym => deg5_nonsym(&p[0], &p[1]),
        FamilyId::Deg6 => deg6_family(&p[0], &p[1]),
        FamilyId::Deg7 => deg7_family(&p[0]),
        FamilyId::EqProdDeg4 => eqprod_deg4(&p[0], &p[1], &p[2]),
        FamilyId::EqProdDeg5 => eqprod_deg5(&p[0]),
    }
}

/// Named parameters such as `[("m1", "1"), ("m2", "-3/4")]`.
///
/// `Deg4B` also accepts `x` and `y` (the cancellation pair) or `d`
/// (a free step, giving the 6+6 form).
pub fn generate_named(id: FamilyId, params: &[(String, String)]) -> Result<MultigradeSolution> {
    let extras: &[&str] = if id == FamilyId::Deg4B {
        &["x", "y", "d"]
    } else {
        &[]
    };
    for (k, _) in params {
        if !id.params().contains(&k.as_str()) && !extras.contains(&k.as_str()) {
            return Err(Error::Parse(format!("{id} has no parameter {k:?}")));
        }
    }
    let lookup = |name: &str| {
        params
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    };
    let values = id
        .params()
        .iter()
        .map(|name| {
            lookup(name)
                .ok_or_else(|| Error::MissingParameter(name.to_string()))
                .and_then(parse_q)
        })
        .collect::<Result<Vec<Q>>>()?;
    if id != FamilyId::Deg4B {
        return generate(id, &values);
    }
    let index = |name: &str, default: usize| -> Result<usize> {
        lookup(name).map_or(Ok(default), |v| {
            v.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{name} must be an index 1..=6, got {v:?}")))
        })
    };
    let mode = match lookup("d") {
        Some(d) => Deg4BMode::FreeD(parse_q(d)?),
        None => {
            let (dx, dy) = Deg4BMode::DEFAULT_PAIR;
            Deg4BMode::Cancel {
                x: index("x", dx)?,
                y: index("y", dy)?,
            }
        }
    };
    let v = &values;
    deg4_family_b(&v[0], &v[1], &v[2], &v[3], &mode)
}
