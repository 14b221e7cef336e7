//! Exhaustive search for small ideal solutions.
//!
//! Every solution class has a reduced representative with zero side sums,
//! so it is enough to enumerate sorted zero-sum multisets in `[-B, B]`,
//! bucket them by their power sums of order `2..=k`, and pair up multisets
//! within a bucket. The enumeration is split by smallest entry and runs in
//! parallel; buckets are formed after a deterministic merge, so the output
//! does not depend on the number of threads.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::solution::{reduce, MultigradeSolution};

/// Default cap on the search bound.
pub const DEFAULT_SAFETY_LIMIT: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Largest accepted bound.
    pub safety_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: None,
            safety_limit: DEFAULT_SAFETY_LIMIT,
        }
    }
}

type Signature = Vec<i128>;

/// Ideal solutions (`s = k + 1`) whose reduced form fits in `[-bound, bound]`,
/// canonical and sorted.
pub fn brute_force_ideal(
    k: u32,
    bound: u64,
    opts: &SearchOptions,
) -> Result<Vec<MultigradeSolution>> {
    brute_force(k, k as usize + 1, bound, opts)
}

/// Like [`brute_force_ideal`] with an explicit side size `s`. Only pairs of
/// disjoint multisets are reported.
pub fn brute_force(
    k: u32,
    s: usize,
    bound: u64,
    opts: &SearchOptions,
) -> Result<Vec<MultigradeSolution>> {
    if bound > opts.safety_limit {
        return Err(Error::BoundTooLarge {
            bound,
            limit: opts.safety_limit,
        });
    }
    if s < 2 || k == 0 {
        return Ok(Vec::new());
    }
    check_range(k, s, bound)?;
    let b = bound as i64;
    let run = || search_inner(k, s, b);
    match opts.jobs {
        Some(n) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?
            .install(run)),
        None => Ok(run()),
    }
}

fn check_range(k: u32, s: usize, bound: u64) -> Result<()> {
    let b = bound as i128;
    let fits = b
        .checked_pow(k)
        .and_then(|p| p.checked_mul(s as i128))
        .is_some();
    if !fits {
        return Err(Error::ExponentOverflow {
            degree: k,
            cap: (127.0 / (bound.max(2) as f64).log2()) as u32,
        });
    }
    Ok(())
}

fn signature(v: &[i64], k: u32) -> Signature {
    let mut sig = vec![0i128; k.saturating_sub(1) as usize];
    for &x in v {
        let x = x as i128;
        let mut p = x;
        for slot in sig.iter_mut() {
            p *= x;
            *slot += p;
        }
    }
    sig
}

/// All sorted multisets of size `s` in `[lo, b]` with sum `-acc_sum`
/// extending `prefix`.
fn extend(prefix: &mut Vec<i64>, lo: i64, b: i64, s: usize, acc_sum: i64, out: &mut Vec<Vec<i64>>) {
    let left = s - prefix.len();
    if left == 1 {
        let last = -acc_sum;
        if last >= lo && last <= b {
            prefix.push(last);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    for x in lo..=b {
        // the remaining entries are all >= x
        let rest = acc_sum + x;
        let min_tail = rest + x * (left as i64 - 1);
        let max_tail = rest + b * (left as i64 - 1);
        if min_tail > 0 {
            break;
        }
        if max_tail < 0 {
            continue;
        }
        prefix.push(x);
        extend(prefix, x, b, s, rest, out);
        prefix.pop();
    }
}

fn search_inner(k: u32, s: usize, b: i64) -> Vec<MultigradeSolution> {
    // partitions by smallest entry; a zero-sum multiset has a nonpositive one
    let mut items: Vec<(Signature, Vec<i64>)> = (-b..=0)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            extend(&mut vec![first], first, b, s, first, &mut out);
            out.into_iter()
                .map(|v| (signature(&v, k), v))
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    items.par_sort_unstable();

    let groups: Vec<&[(Signature, Vec<i64>)]> = items
        .chunk_by(|a, b| a.0 == b.0)
        .filter(|g| g.len() > 1)
        .collect();
    let found: BTreeSet<(Vec<BigInt>, Vec<BigInt>)> = groups
        .par_iter()
        .flat_map_iter(|g| {
            let mut local = Vec::new();
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    if let Some(sol) = pair_solution(&g[i].1, &g[j].1, k) {
                        local.push((sol.left, sol.right));
                    }
                }
            }
            local
        })
        .collect();
    found
        .into_iter()
        .map(|(l, r)| MultigradeSolution::new(l, r, k))
        .collect()
}

fn pair_solution(x: &[i64], y: &[i64], k: u32) -> Option<MultigradeSolution> {
    if x.iter().any(|e| y.binary_search(e).is_ok()) {
        return None;
    }
    let g = x.iter().chain(y).fold(0i64, |acc, e| acc.gcd(e));
    if g != 1 {
        return None;
    }
    let to_big = |v: &[i64]| v.iter().map(|&e| BigInt::from(e)).collect();
    let sol = MultigradeSolution::new(to_big(x), to_big(y), k);
    reduce(&sol).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::equivalent;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn degree_two() {
        let found = brute_force_ideal(2, 8, &opts()).unwrap();
        let target = MultigradeSolution::from_i64(&[1, 5, 6], &[2, 3, 7], 2);
        assert!(found.iter().any(|s| equivalent(s, &target)));
        for s in &found {
            assert!(s.is_valid());
            assert_eq!(&reduce(s).unwrap(), s);
        }
        for (i, a) in found.iter().enumerate() {
            for b in &found[i + 1..] {
                assert!(!equivalent(a, b));
            }
        }
    }

    #[test]
    fn degree_three() {
        let found = brute_force_ideal(3, 12, &opts()).unwrap();
        let target = MultigradeSolution::from_i64(&[0, 4, 7, 11], &[1, 2, 9, 10], 3);
        assert!(found.iter().any(|s| equivalent(s, &target)));
        assert!(found.iter().all(|s| s.is_valid()));
    }

    #[test]
    fn tiny_box_is_empty() {
        assert!(brute_force_ideal(4, 3, &opts()).unwrap().is_empty());
    }

    #[test]
    fn safety_limit() {
        let o = SearchOptions {
            jobs: None,
            safety_limit: 10,
        };
        assert_eq!(
            brute_force_ideal(2, 11, &o),
            Err(Error::BoundTooLarge {
                bound: 11,
                limit: 10
            })
        );
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let one = SearchOptions {
            jobs: Some(1),
            ..opts()
        };
        let four = SearchOptions {
            jobs: Some(4),
            ..opts()
        };
        assert_eq!(
            brute_force_ideal(3, 10, &one).unwrap(),
            brute_force_ideal(3, 10, &four).unwrap()
        );
    }

    #[test]
    fn monotone_in_bound() {
        let small = brute_force_ideal(2, 6, &opts()).unwrap();
        let large = brute_force_ideal(2, 9, &opts()).unwrap();
        assert!(small.iter().all(|s| large.contains(s)));
        assert!(large.len() > small.len());
    }

    #[test]
    fn non_ideal_sizes() {
        let found = brute_force(2, 4, 4, &opts()).unwrap();
        assert!(!found.is_empty());
        assert!(found.iter().all(|s| s.size() == 4 && s.is_valid()));
    }

    #[test]
    #[ignore = "long running: degree-4 search up to bound 62"]
    fn finds_degree_four_family_member() {
        let found = brute_force_ideal(4, 62, &opts()).unwrap();
        let target =
            crate::families::deg4_family_a(&crate::rational::q(1), &crate::rational::q(1)).unwrap();
        assert!(found.iter().any(|s| equivalent(s, &target)));
    }
}
