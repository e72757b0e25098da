//! Divisors built from collections of maximal minors of a generic `m × n`
//! matrix.
//!
//! An auxiliary quiver on the columns `1..=n` describes a group `G_R` of
//! column operations: the diagonal torus plus `X ↦ X·(I + t·E_ij)` for each
//! non-loop arrow `(i, j)`, which adds column `i` to column `j`. A maximal
//! minor on the column set `S` is invariant exactly when every arrow has
//! `i ∈ S` or `j ∉ S`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::logder::{LinearVectorField, VectorFieldBasis};
use crate::par::Exec;
use crate::poly::{cofactor_det, random_point, squarefree_test, subsets, MPoly, Ring, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxQuiver {
    pub m: usize,
    pub n: usize,
    /// Non-loop arrows `(i, j)`, 1-based; loops are implicit.
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl AuxQuiver {
    pub fn new(m: usize, n: usize, arrows: Vec<(usize, usize)>) -> Self {
        AuxQuiver { m, n, arrows }
    }

    /// Arrows without loops and duplicates, in input order.
    fn proper_arrows(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &(i, j) in &self.arrows {
            if i != j && !out.contains(&(i, j)) {
                out.push((i, j));
            }
        }
        out
    }

    /// Checks the arrow count, the implicit loops, and transitivity.
    pub fn validate(&self) -> Validation {
        let mut diagnostics = Vec::new();
        let (m, n) = (self.m, self.n);
        if m == 0 || m > n {
            diagnostics.push(format!("shape {m}x{n} needs 1 <= m <= n"));
        }
        if let Some(&(i, j)) = self.arrows.iter().find(|&&(i, j)| i == 0 || j == 0 || i > n || j > n) {
            diagnostics.push(format!("arrow ({i}, {j}) leaves the column range 1..={n}"));
        }
        let arrows = self.proper_arrows();
        let q1 = n + arrows.len();
        let want = (m * n + 1).checked_sub(m * m);
        if want != Some(q1) {
            diagnostics.push(format!(
                "arrow count: |Q1| = {q1} including {n} loops, expected mn - m^2 + 1 = {}",
                want.map_or("negative".to_string(), |w| w.to_string())
            ));
        }
        for &(i, j) in &arrows {
            for &(j2, k) in &arrows {
                if j2 == j && i != k && !arrows.contains(&(i, k)) {
                    diagnostics.push(format!(
                        "transitivity: ({i}, {j}) and ({j}, {k}) but not ({i}, {k})"
                    ));
                }
            }
        }
        Validation {
            valid: diagnostics.is_empty(),
            diagnostics,
        }
    }

    fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.valid {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "invalid auxiliary quiver: {}",
                v.diagnostics.join("; ")
            )))
        }
    }

    /// True when no two distinct columns are joined in both directions.
    /// For a transitively closed quiver this means no oriented cycles.
    pub fn loop_free(&self) -> bool {
        let a = self.proper_arrows();
        !a.iter().any(|&(i, j)| a.contains(&(j, i)))
    }

    /// Variables `x{r}{c}` of the generic matrix, row-major, 1-based.
    pub fn ring(&self) -> Ring {
        let wide = self.m >= 10 || self.n >= 10;
        Ring::new((1..=self.m).flat_map(|r| {
            (1..=self.n).map(move |c| {
                if wide {
                    format!("x{r}_{c}")
                } else {
                    format!("x{r}{c}")
                }
            })
        }))
    }

    fn var(&self, r: usize, c: usize) -> usize {
        r * self.n + c
    }

    /// The generator basis: traceless `𝔤𝔩_m` acting on the left, then the
    /// diagonal and arrow generators of `G_R` acting on the right.
    pub fn group_basis(&self) -> Result<VectorFieldBasis> {
        self.check()?;
        let (m, n) = (self.m, self.n);
        let size = m * n;
        let mut fields = Vec::with_capacity(size);
        let left = |a: usize, b: usize| {
            // E_ab·X: δ(x_{a,c}) = x_{b,c}
            let mut f = QMatrix::zeros(size, size);
            for c in 0..n {
                f[(self.var(b, c), self.var(a, c))] = crate::rat::Rat::one();
            }
            f
        };
        let right = |i: usize, j: usize| {
            // X·E_ij: δ(x_{r,j}) = x_{r,i}
            let mut f = QMatrix::zeros(size, size);
            for r in 0..m {
                f[(self.var(r, i), self.var(r, j))] = crate::rat::Rat::one();
            }
            f
        };
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    fields.push(left(a, b));
                } else if a + 1 < m {
                    fields.push(left(a, a).sub(&left(a + 1, a + 1)));
                }
            }
        }
        for i in 0..n {
            fields.push(right(i, i));
        }
        for (i, j) in self.proper_arrows() {
            fields.push(right(i - 1, j - 1));
        }
        let fields = fields
            .into_iter()
            .map(LinearVectorField::new)
            .collect::<Result<Vec<_>>>()?;
        VectorFieldBasis::new(&self.ring(), fields)
    }

    /// The determinant of columns `cols` (0-based) of the generic matrix.
    pub fn minor(&self, ring: &Ring, cols: &[usize]) -> MPoly {
        let rows: Vec<Vec<MPoly>> = (0..self.m)
            .map(|r| cols.iter().map(|&c| MPoly::var(ring, self.var(r, c))).collect())
            .collect();
        cofactor_det(ring, &rows)
    }
}

/// Column subsets (1-based, increasing) whose maximal minor is invariant.
pub fn admissible_minors(a: &AuxQuiver) -> Result<Vec<Vec<usize>>> {
    a.check()?;
    let arrows = a.proper_arrows();
    Ok(subsets(a.n, a.m)
        .into_iter()
        .map(|s| s.into_iter().map(|c| c + 1).collect::<Vec<_>>())
        .filter(|s| arrows.iter().all(|(i, j)| s.contains(i) || !s.contains(j)))
        .collect())
}

pub fn minor_label(s: &[usize]) -> String {
    let sep = if s.iter().any(|&c| c >= 10) { "," } else { "" };
    let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("M{}", parts.join(sep))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorVerdict {
    Yes,
    No,
}

/// How a verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// More admissible minors than columns.
    TooManyMinors,
    /// Fewer admissible minors than columns, not checked symbolically.
    TooFewMinors,
    /// Fewer minors, with the symbolic discriminant checked.
    TooFewMinorsConfirmed { discriminant_zero: bool, squarefree: Option<Verdict> },
    /// The discriminant evaluated to a nonzero value at a sampled point.
    NonzeroAtPoint { attempt: usize },
    /// Every sampled point gave zero; decided by the symbolic determinant.
    Symbolic { discriminant_zero: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorFamilyReport {
    pub m: usize,
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
    pub admissible: Vec<String>,
    pub verdict: MinorVerdict,
    pub reason: String,
    pub certificate: Certificate,
    /// No oriented cycles among the arrows.
    pub loop_free: bool,
}

/// Decides whether the admissible minors cut out a linear free divisor.
pub fn minor_family_report(a: &AuxQuiver, trials: usize, seed: u64) -> Result<MinorFamilyReport> {
    let adm = admissible_minors(a)?;
    let (verdict, reason, certificate) = if adm.len() > a.n {
        (
            MinorVerdict::No,
            "more admissible minors than columns: discriminant vanishes".to_string(),
            Certificate::TooManyMinors,
        )
    } else if adm.len() < a.n {
        let cert = if a.m * a.n <= 10 {
            let delta = symbolic_discriminant(a)?;
            let squarefree = if delta.is_zero() {
                None
            } else {
                Some(squarefree_test(&delta, trials.max(1), seed)?.verdict)
            };
            Certificate::TooFewMinorsConfirmed {
                discriminant_zero: delta.is_zero(),
                squarefree,
            }
        } else {
            Certificate::TooFewMinors
        };
        (MinorVerdict::No, "non-reduced or zero".to_string(), cert)
    } else {
        decide_by_evaluation(a, trials, seed)?
    };
    Ok(MinorFamilyReport {
        m: a.m,
        n: a.n,
        arrows: a.proper_arrows(),
        admissible: adm.iter().map(|s| minor_label(s)).collect(),
        verdict,
        reason,
        certificate,
        loop_free: a.loop_free(),
    })
}

fn decide_by_evaluation(a: &AuxQuiver, trials: usize, seed: u64) -> Result<(MinorVerdict, String, Certificate)> {
    let basis = a.group_basis()?;
    let coeffs = basis.coefficient_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=trials.max(1) {
        let p = random_point(&mut rng, a.m * a.n);
        if !coeffs.evaluate(&p)?.det()?.is_zero() {
            return Ok((
                MinorVerdict::Yes,
                "n admissible minors and a nonzero discriminant".to_string(),
                Certificate::NonzeroAtPoint { attempt },
            ));
        }
    }
    let delta = coeffs.det()?;
    let zero = delta.is_zero();
    let (verdict, reason) = if zero {
        (MinorVerdict::No, "discriminant vanishes identically")
    } else {
        (MinorVerdict::Yes, "n admissible minors and a nonzero discriminant")
    };
    Ok((verdict, reason.to_string(), Certificate::Symbolic { discriminant_zero: zero }))
}

/// The `mn × mn` discriminant of the group basis.
pub fn symbolic_discriminant(a: &AuxQuiver) -> Result<MPoly> {
    a.group_basis()?.coefficient_matrix().det()
}

/// Product of the admissible minors.
pub fn admissible_product(a: &AuxQuiver) -> Result<MPoly> {
    let ring = a.ring();
    let adm = admissible_minors(a)?;
    Ok(adm.iter().fold(MPoly::one(&ring), |acc, s| {
        let cols: Vec<usize> = s.iter().map(|c| c - 1).collect();
        &acc * &a.minor(&ring, &cols)
    }))
}

/// Reports for many quivers, in input order.
pub fn minor_table(rows: &[AuxQuiver], trials: usize, seed: u64, exec: Exec) -> Result<Vec<MinorFamilyReport>> {
    exec.map(rows, |a| minor_family_report(a, trials, seed))
        .into_iter()
        .collect()
}
