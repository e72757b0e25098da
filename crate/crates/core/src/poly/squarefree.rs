//! Monte Carlo squarefreeness via restriction to random lines.
//!
//! If `f = g²·h` with `g` nonconstant, then on any line `x = a·t + b` along
//! which `f` keeps its degree, `g` keeps its degree too and the restriction
//! has a repeated root. So a single squarefree degree-preserving restriction
//! proves `f` squarefree. The converse direction is probabilistic: a
//! squarefree `f` of degree `d` restricts to a non-squarefree polynomial
//! only when `(a, b)` hits the zero set of a discriminant of degree at most
//! `d·(2d−2)`, so by Schwartz–Zippel one line errs with probability at most
//! `d·(2d−2) / (2·SAMPLE_RANGE + 1)`. Two independent lines are required
//! before answering `NotSquarefree`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MPoly;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rat::Rat;

/// Line coordinates are drawn uniformly from `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: i64 = 10_000;

/// Lines whose restriction is non-squarefree needed before answering `NotSquarefree`.
const CONFIRMATIONS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Squarefree,
    NotSquarefree,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarefreeOutcome {
    pub verdict: Verdict,
    /// Lines sampled before the verdict was reached.
    pub lines_sampled: usize,
    /// Of those, lines along which `f` kept its total degree.
    pub degree_preserving: usize,
    /// Of those, restrictions that had a repeated factor.
    pub repeated_factor: usize,
}

/// Sample range and seed are fixed by the caller, so outcomes are
/// reproducible. Lines are examined in sampling order; with a parallel
/// executor they are evaluated in batches but the scan stays sequential.
pub fn squarefree_test(f: &MPoly, trials: usize, seed: u64) -> Result<SquarefreeOutcome> {
    squarefree_test_with(f, trials, seed, Exec::default())
}

pub fn squarefree_test_with(
    f: &MPoly,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<SquarefreeOutcome> {
    if f.is_zero() {
        return Err(Error::InvalidInput("squarefree test of the zero polynomial".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("squarefree test needs at least one trial".into()));
    }
    let mut out = SquarefreeOutcome {
        verdict: Verdict::Inconclusive,
        lines_sampled: 0,
        degree_preserving: 0,
        repeated_factor: 0,
    };
    let deg = f.total_degree().unwrap_or(0) as usize;
    if deg == 0 {
        out.verdict = Verdict::Squarefree;
        return Ok(out);
    }
    let n = f.ring().nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let batch = exec.width();
    while out.lines_sampled < trials {
        let count = batch.min(trials - out.lines_sampled);
        let lines: Vec<(Vec<Rat>, Vec<Rat>)> = (0..count)
            .map(|_| (random_point(&mut rng, n), random_point(&mut rng, n)))
            .collect();
        let results = exec.map(&lines, |(a, b)| {
            let u = f.restrict_to_line(a, b).expect("line has ring length");
            (u.degree() == Some(deg)).then(|| u.is_squarefree())
        });
        for r in results {
            out.lines_sampled += 1;
            match r {
                None => {}
                Some(true) => {
                    out.degree_preserving += 1;
                    out.verdict = Verdict::Squarefree;
                    return Ok(out);
                }
                Some(false) => {
                    out.degree_preserving += 1;
                    out.repeated_factor += 1;
                    if out.repeated_factor >= CONFIRMATIONS {
                        out.verdict = Verdict::NotSquarefree;
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A point with integer coordinates in `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub fn random_point(rng: &mut impl Rng, n: usize) -> Vec<Rat> {
    (0..n)
        .map(|_| Rat::from(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
        .collect()
}
