//! Symbolic check that a family's power sums agree identically.
//!
//! The family's entries are scaled to integer coefficients and expanded in a
//! hashed integer representation, which is much cheaper than rational
//! arithmetic for the large powers involved.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::families::{symbolic_family, FamilyId, SymbolicFamily};
use crate::rational::{common_denominator, int};

type Terms = HashMap<Vec<u32>, BigInt>;

fn to_terms(p: &MultiPoly, scale: &BigInt) -> Terms {
    p.terms()
        .map(|(e, c)| (e.clone(), (c * int(scale)).to_integer()))
        .collect()
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out: Terms = HashMap::with_capacity(a.len() * 2);
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn accumulate(acc: &mut Terms, p: &Terms, sign: i8) {
    for (e, c) in p {
        let slot = acc.entry(e.clone()).or_insert_with(BigInt::zero);
        if sign > 0 {
            *slot += c;
        } else {
            *slot -= c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

fn describe(diff: &Terms, nvars: usize, names: &[&str]) -> String {
    let p = MultiPoly::from_terms(nvars, diff.iter().map(|(e, c)| (e.clone(), int(c))));
    let text = p.display_with(names).to_string();
    if text.len() > 200 {
        format!("{}... ({} terms)", &text[..200], p.num_terms())
    } else {
        text
    }
}

/// Checks `sum x_i^r = sum y_i^r` as polynomial identities for
/// `r = 1..=degree` and, for equal-product families, `prod x_i = prod y_i`.
/// A product failure is reported with `r = 0`.
pub fn verify_symbolic(fam: &SymbolicFamily) -> Result<()> {
    let nvars = fam.vars.len();
    let scale = common_denominator(
        fam.left
            .iter()
            .chain(&fam.right)
            .flat_map(|p| p.terms().map(|(_, c)| c)),
    );
    let left: Vec<Terms> = fam.left.iter().map(|p| to_terms(p, &scale)).collect();
    let right: Vec<Terms> = fam.right.iter().map(|p| to_terms(p, &scale)).collect();
    let k = fam.degree as usize;

    // powers[j][r-1] = entry_j^r
    let powers = |side: &[Terms]| -> Vec<Vec<Terms>> {
        side.par_iter()
            .map(|p| {
                let mut out = Vec::with_capacity(k);
                out.push(p.clone());
                for _ in 1..k {
                    let next = mul(out.last().unwrap(), p);
                    out.push(next);
                }
                out
            })
            .collect()
    };
    let lp = powers(&left);
    let rp = powers(&right);

    let failures: Vec<(u32, Terms)> = (1..=k)
        .into_par_iter()
        .filter_map(|r| {
            let mut acc = Terms::new();
            for p in &lp {
                accumulate(&mut acc, &p[r - 1], 1);
            }
            for p in &rp {
                accumulate(&mut acc, &p[r - 1], -1);
            }
            (!acc.is_empty()).then_some((r as u32, acc))
        })
        .collect();
    if let Some((r, diff)) = failures.into_iter().min_by_key(|(r, _)| *r) {
        return Err(Error::IdentityFails {
            r,
            difference: describe(&diff, nvars, &fam.vars),
        });
    }

    if fam.equal_products {
        let product = |side: &[Terms]| {
            let mut one = Terms::new();
            one.insert(vec![0; nvars], BigInt::one());
            side.iter().fold(one, |acc, p| mul(&acc, p))
        };
        let (l, r) = rayon::join(|| product(&left), || product(&right));
        let mut diff = l;
        accumulate(&mut diff, &r, -1);
        if !diff.is_empty() {
            return Err(Error::IdentityFails {
                r: 0,
                difference: describe(&diff, nvars, &fam.vars),
            });
        }
    }
    Ok(())
}

/// [`verify_symbolic`] applied to the transcribed formulas of `id`.
pub fn verify_identity_family(id: FamilyId) -> Result<()> {
    verify_symbolic(&symbolic_family(id)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(left: &[&str], right: &[&str], degree: u32, equal_products: bool) -> SymbolicFamily {
        let vars = vec!["a", "b"];
        let parse = |v: &[&str]| {
            v.iter()
                .map(|s| MultiPoly::parse(s, &vars).unwrap())
                .collect()
        };
        SymbolicFamily {
            vars: vars.clone(),
            left: parse(left),
            right: parse(right),
            degree,
            equal_products,
        }
    }

    #[test]
    fn translation_invariance() {
        // 1,5,6 = 2,3,7 at degree 2, translated by a and scaled by b
        let f = fam(
            &["a+b", "a+5b", "a+6b"],
            &["a+2b", "a+3b", "a+7b"],
            2,
            false,
        );
        assert!(verify_symbolic(&f).is_ok());
        let g = fam(
            &["a+b", "a+5b", "a+6b"],
            &["a+2b", "a+3b", "a+7b"],
            3,
            false,
        );
        assert!(matches!(
            verify_symbolic(&g),
            Err(Error::IdentityFails { r: 3, .. })
        ));
    }

    #[test]
    fn products_checked() {
        let f = fam(&["a", "-a"], &["b", "-b"], 1, true);
        assert!(matches!(
            verify_symbolic(&f),
            Err(Error::IdentityFails { r: 0, .. })
        ));
        let g = fam(&["a", "2b"], &["2a", "b"], 0, true);
        assert!(verify_symbolic(&g).is_ok());
    }

    #[test]
    fn every_family_is_an_identity() {
        for id in FamilyId::ALL {
            assert_eq!(verify_identity_family(id), Ok(()), "{id}");
        }
    }

    #[test]
    fn perturbed_coefficient_is_caught() {
        let mut f = symbolic_family(FamilyId::Deg7).unwrap();
        let n = MultiPoly::var(1, 0);
        f.left[0] = f.left[0].clone() + n;
        assert!(matches!(
            verify_symbolic(&f),
            Err(Error::IdentityFails { r: 1, .. })
        ));

        let mut g = symbolic_family(FamilyId::EqProdDeg5).unwrap();
        // the misprinted y1 = 8m + 1(4m - 9)
        g.right[0] = MultiPoly::parse("8m+(4m-9)", &["m"]).unwrap();
        assert!(verify_symbolic(&g).is_err());
    }

    #[test]
    fn rational_coefficients() {
        let mut f = fam(
            &["a+b", "a+5b", "a+6b"],
            &["a+2b", "a+3b", "a+7b"],
            2,
            false,
        );
        let half = crate::rational::frac(1, 2);
        f.left = f.left.iter().map(|p| p.scale(&half)).collect();
        f.right = f.right.iter().map(|p| p.scale(&half)).collect();
        assert!(verify_symbolic(&f).is_ok());
    }
}
