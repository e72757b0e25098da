//! Strong Euler homogeneity and local quasihomogeneity.
//!
//! For a linear free divisor with basis split as `χ, δ_2, …, δ_n` (the
//! `δ_i` annihilating `Δ`), `S` is the coefficient matrix with the Euler
//! row first and `T` the annihilator rows. The divisor is strongly Euler
//! homogeneous iff the zero sets of the `(k+1)`-minors of `S` and `T`
//! agree for `0 ≤ k ≤ n − 2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::logder::{
    annihilator_split, discriminant_determinant, is_logarithmic, verify_lfd, LfdReport, LinearVectorField,
    VectorFieldBasis,
};
use crate::par::Exec;
use crate::poly::groebner::{ideal_equal_radical, Budget, Ideal};
use crate::poly::{parse_poly, MPoly, PolyMatrix, Ring, UniPoly};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoPair {
    pub s: PolyMatrix,
    pub t: PolyMatrix,
    /// `det(s)`, unnormalized.
    pub delta: MPoly,
}

/// Splits the basis and assembles `S` and `T`.
pub fn build_saito_pair(b: &VectorFieldBasis) -> Result<SaitoPair> {
    let delta = discriminant_determinant(b);
    if delta.is_zero() {
        return Err(Error::Structure("basis has zero discriminant".into()));
    }
    let split = annihilator_split(b, &delta)?;
    let ring = b.ring();
    let n = b.dim();
    let coeff_row = |f: &LinearVectorField| (0..n).map(|j| f.coefficient(ring, j)).collect::<Vec<_>>();
    let t_rows: Vec<Vec<MPoly>> = split.annihilators.iter().map(coeff_row).collect();
    let mut s_rows = vec![coeff_row(&split.euler)];
    s_rows.extend(t_rows.iter().cloned());
    let s = PolyMatrix::from_rows(ring, s_rows)?;
    let t = PolyMatrix::from_rows(ring, t_rows)?;
    let det = s.det()?;
    if det != split.delta {
        return Err(Error::Structure("det(S) differs from the split discriminant".into()));
    }
    Ok(SaitoPair { s, t, delta: det })
}

/// Checks `∂_k Δ = n·(−1)^(k+1)·det(T without column k)` for every `k`
/// (1-based signs), where `Δ = det S`.
pub fn gradient_minor_identity(p: &SaitoPair) -> Result<bool> {
    let n = p.s.cols();
    let scale = Rat::from(n as i64);
    let all_rows: Vec<usize> = (0..p.t.rows()).collect();
    for k in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&c| c != k).collect();
        let minor = p.t.submatrix(&all_rows, &cols).det()?;
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        let rhs = minor.scale(&(&scale * &sign));
        if p.delta.partial_derivative(k)? != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StratumSource {
    S,
    T,
}

#[derive(Clone, Debug)]
pub struct StratumIdeal {
    pub source: StratumSource,
    pub k: usize,
    pub ideal: Ideal,
}

/// The ideal of all `(k+1) × (k+1)` minors of `S` or `T`.
pub fn stratum_ideal(p: &SaitoPair, source: StratumSource, k: usize) -> Result<StratumIdeal> {
    let m = match source {
        StratumSource::S => &p.s,
        StratumSource::T => &p.t,
    };
    let max = m.rows().min(m.cols()) - 1;
    if k > max {
        return Err(Error::OutOfRange { index: k, max });
    }
    let ideal = Ideal::new(p.s.ring(), m.minors(k + 1))?;
    Ok(StratumIdeal { source, k, ideal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongEulerReport {
    /// `S_k = T_k` for `k = 0..=n−2`; `None` where the budget ran out.
    pub per_k: Vec<Option<bool>>,
    /// `None` only if no level failed but some were left undecided.
    pub verdict: Option<bool>,
    pub budget_exhausted: bool,
}

pub fn strong_euler_check(p: &SaitoPair, budget: &Budget) -> Result<StrongEulerReport> {
    strong_euler_check_with(p, budget, Exec::default())
}

/// Compares the strata level by level; levels run concurrently.
pub fn strong_euler_check_with(p: &SaitoPair, budget: &Budget, exec: Exec) -> Result<StrongEulerReport> {
    let n = p.s.cols();
    let levels = n.saturating_sub(1);
    let results = exec.map_range(levels, |k| -> Result<Option<bool>> {
        let s = stratum_ideal(p, StratumSource::S, k)?;
        let t = stratum_ideal(p, StratumSource::T, k)?;
        match ideal_equal_radical(&s.ideal, &t.ideal, budget, Exec::Sequential) {
            Ok(eq) => Ok(Some(eq)),
            Err(Error::Budget(_)) => Ok(None),
            Err(e) => Err(e),
        }
    });
    let per_k = results.into_iter().collect::<Result<Vec<_>>>()?;
    let budget_exhausted = per_k.iter().any(Option::is_none);
    let verdict = if per_k.contains(&Some(false)) {
        Some(false)
    } else if budget_exhausted {
        None
    } else {
        Some(true)
    };
    Ok(StrongEulerReport {
        per_k,
        verdict,
        budget_exhausted,
    })
}

/// One summand `(numerator / denominator)·field` of a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTerm {
    pub numerator: MPoly,
    pub denominator: MPoly,
    pub field: LinearVectorField,
}

/// A candidate field `Σ (a_i/b_i)·ν_i` vanishing at `point`, with the
/// spectrum its linear part is expected to have there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LqhWitness {
    pub point: Vec<Rat>,
    pub terms: Vec<WitnessTerm>,
    pub expected_eigenvalues: Vec<Rat>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessTermJson {
    pub numerator: String,
    pub denominator: String,
    pub field: LinearVectorField,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LqhWitnessJson {
    pub variables: Vec<String>,
    pub point: Vec<Rat>,
    pub terms: Vec<WitnessTermJson>,
    pub expected_eigenvalues: Vec<Rat>,
}

impl LqhWitness {
    pub fn to_json(&self, ring: &Ring) -> LqhWitnessJson {
        LqhWitnessJson {
            variables: ring.names().to_vec(),
            point: self.point.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| WitnessTermJson {
                    numerator: t.numerator.to_string(),
                    denominator: t.denominator.to_string(),
                    field: t.field.clone(),
                })
                .collect(),
            expected_eigenvalues: self.expected_eigenvalues.clone(),
        }
    }

    pub fn from_json(j: &LqhWitnessJson) -> Result<(Ring, Self)> {
        let ring = Ring::new(j.variables.iter().cloned());
        let terms = j
            .terms
            .iter()
            .map(|t| {
                Ok(WitnessTerm {
                    numerator: parse_poly(&t.numerator, &ring)?,
                    denominator: parse_poly(&t.denominator, &ring)?,
                    field: t.field.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((
            ring,
            LqhWitness {
                point: j.point.clone(),
                terms,
                expected_eigenvalues: j.expected_eigenvalues.clone(),
            },
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Every term's field lies in the span of the basis.
    pub fields_in_span: bool,
    /// The cleared field maps `Δ` into `Δ·ℚ[x]`.
    pub logarithmic: bool,
    pub vanishes_at_point: bool,
    pub charpoly_matches: bool,
    pub diagonalizable: bool,
    pub positive_spectrum: bool,
    pub passed: bool,
}

/// Verifies a local quasihomogeneity witness for the divisor of `b`.
pub fn verify_lqh_witness(b: &VectorFieldBasis, w: &LqhWitness) -> Result<WitnessReport> {
    let ring = b.ring();
    let n = b.dim();
    if w.point.len() != n || w.expected_eigenvalues.len() != n {
        return Err(Error::Dimension("witness point or spectrum has the wrong length".into()));
    }
    if w.terms.is_empty() {
        return Err(Error::InvalidInput("witness without terms".into()));
    }
    for t in &w.terms {
        if t.field.dim() != n {
            return Err(Error::Dimension("witness field has the wrong size".into()));
        }
        if t.denominator.evaluate(&w.point)?.is_zero() {
            return Err(Error::InvalidInput(format!(
                "denominator {} vanishes at the witness point",
                t.denominator
            )));
        }
    }
    let delta = discriminant_determinant(b);

    // Clear denominators with their product D; the field is V/D.
    let common = w
        .terms
        .iter()
        .fold(MPoly::one(ring), |acc, t| &acc * &t.denominator);
    let mut coeffs = vec![MPoly::zero(ring); n];
    for t in &w.terms {
        let cofactor = w
            .terms
            .iter()
            .filter(|o| !std::ptr::eq(*o, t))
            .fold(t.numerator.clone(), |acc, o| &acc * &o.denominator);
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c = &*c + &(&cofactor * &t.field.coefficient(ring, j));
        }
    }

    let mut fields_in_span = true;
    for t in &w.terms {
        fields_in_span &= b.span_coordinates(&t.field)?.is_some();
    }

    let mut image = MPoly::zero(ring);
    for (j, c) in coeffs.iter().enumerate() {
        image = &image + &(c * &delta.partial_derivative(j)?);
    }
    let logarithmic = image.divide_exact(&delta)?.is_some();

    let mut vanishes_at_point = true;
    for c in &coeffs {
        vanishes_at_point &= c.evaluate(&w.point)?.is_zero();
    }

    // Linear part at p: since V(p) = 0, d(V/D) = dV/D(p).
    let d_at_p = common.evaluate(&w.point)?;
    let mut jac = QMatrix::zeros(n, n);
    for (j, c) in coeffs.iter().enumerate() {
        for k in 0..n {
            jac[(j, k)] = &c.partial_derivative(k)?.evaluate(&w.point)? / &d_at_p;
        }
    }
    let charpoly_matches = jac.charpoly()? == UniPoly::from_roots(&w.expected_eigenvalues);
    let diagonalizable = charpoly_matches && minimal_polynomial_splits(&jac, &w.expected_eigenvalues);
    let positive_spectrum = w.expected_eigenvalues.iter().all(Rat::is_positive);
    let passed =
        fields_in_span && logarithmic && vanishes_at_point && charpoly_matches && diagonalizable && positive_spectrum;
    Ok(WitnessReport {
        fields_in_span,
        logarithmic,
        vanishes_at_point,
        charpoly_matches,
        diagonalizable,
        positive_spectrum,
        passed,
    })
}

/// `Π_{e distinct} (J − e·I) = 0`.
fn minimal_polynomial_splits(j: &QMatrix, eigenvalues: &[Rat]) -> bool {
    let n = j.rows();
    let mut distinct: Vec<&Rat> = Vec::new();
    for e in eigenvalues {
        if !distinct.contains(&e) {
            distinct.push(e);
        }
    }
    let id = QMatrix::identity(n);
    let prod = distinct
        .into_iter()
        .fold(id.clone(), |acc, e| acc.mul(&j.sub(&id.scale(e))));
    prod.is_zero()
}

/// Coordinates `x{i}{j}`, `i ≤ j`, of symmetric `n × n` matrices.
pub fn symn_ring(n: usize) -> Ring {
    Ring::new((1..=n).flat_map(|i| (i..=n).map(move |j| format!("x{i}{j}"))))
}

fn sym_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    a * n - a * a.saturating_sub(1) / 2 + (b - a)
}

/// The field `ξ_ij` (`i ≤ j`, 0-based): `X ↦ X·E_ij + E_ji·X`, the
/// infinitesimal congruence action of the upper Borel subgroup.
pub fn symn_field(n: usize, i: usize, j: usize) -> LinearVectorField {
    let dim = n * (n + 1) / 2;
    let mut m = QMatrix::zeros(dim, dim);
    for a in 0..n {
        for b in a..n {
            let target = sym_index(n, a, b);
            // (X·E_ij)_{ab} = X_{a i}[b = j]; (E_ji·X)_{ab} = [a = j]·X_{i b}
            if b == j {
                m[(sym_index(n, a, i), target)] += &Rat::one();
            }
            if a == j {
                m[(sym_index(n, i, b), target)] += &Rat::one();
            }
        }
    }
    LinearVectorField::new(m).expect("square by construction")
}

pub fn symn_basis(n: usize) -> Result<VectorFieldBasis> {
    let fields = (0..n)
        .flat_map(|i| (i..n).map(move |j| symn_field(n, i, j)))
        .collect();
    VectorFieldBasis::new(&symn_ring(n), fields)
}

/// `det_1 ⋯ det_n`, the product of the leading principal minors.
pub fn leading_minor_product(n: usize) -> Result<MPoly> {
    let ring = symn_ring(n);
    let rows: Vec<Vec<MPoly>> = (0..n)
        .map(|a| (0..n).map(|b| MPoly::var(&ring, sym_index(n, a, b))).collect())
        .collect();
    let full = PolyMatrix::from_rows(&ring, rows)?;
    let mut acc = MPoly::one(&ring);
    for k in 1..=n {
        let idx: Vec<usize> = (0..k).collect();
        acc = &acc * &full.submatrix(&idx, &idx).det()?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymnEigenvalue {
    pub field: String,
    pub value: Option<Rat>,
    pub expected: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymnReport {
    pub n: usize,
    pub lfd: LfdReport,
    pub product_matches: bool,
    pub eigenvalues: Vec<SymnEigenvalue>,
    pub holds: bool,
}

/// Checks the Borel congruence action on `Sym_n` for `n ∈ {2, 3}`.
pub fn symn_catalog_check(n: usize, trials: usize, seed: u64) -> Result<SymnReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::InvalidInput(format!("Sym_n check supports n = 2, 3, got {n}")));
    }
    let b = symn_basis(n)?;
    let lfd = verify_lfd(&b, trials, seed)?;
    let delta = discriminant_determinant(&b);
    let product_matches = delta
        .is_scalar_multiple(&leading_minor_product(n)?)
        .is_some_and(|c| !c.is_zero());
    let mut eigenvalues = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let expected = if i == j {
                Rat::from(2 * (n - i) as i64)
            } else {
                Rat::zero()
            };
            eigenvalues.push(SymnEigenvalue {
                field: format!("xi{}{}", i + 1, j + 1),
                value: is_logarithmic(&b.fields()[k], &delta)?,
                expected,
            });
            k += 1;
        }
    }
    let holds = lfd.is_lfd && product_matches && eigenvalues.iter().all(|e| e.value.as_ref() == Some(&e.expected));
    Ok(SymnReport {
        n,
        lfd,
        product_matches,
        eigenvalues,
        holds,
    })
}
