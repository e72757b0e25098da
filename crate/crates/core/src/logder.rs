//! Linear vector fields, Saito's criterion and Euler fields.
//!
//! A field is stored as an `n × n` rational matrix `A` and acts by
//! `δ = x·A·∂ᵗ`, so `δ(x_j) = Σ_i x_i·A[i][j]`. Under this encoding the
//! commutator of fields is the matrix commutator `AB − BA`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::par::Exec;
use crate::poly::{squarefree_test_with, MPoly, PolyJson, PolyMatrix, Ring, SquarefreeOutcome, Verdict};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearVectorField {
    matrix: QMatrix,
}

impl LinearVectorField {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "vector field matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearVectorField { matrix })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        LinearVectorField::new(QMatrix::from_i64(rows)).expect("square matrix")
    }

    /// The Euler field `χ = Σ x_i ∂_i`.
    pub fn euler(n: usize) -> Self {
        LinearVectorField {
            matrix: QMatrix::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        LinearVectorField {
            matrix: QMatrix::zeros(n, n),
        }
    }

    /// The field `x_i ∂_j`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        m[(i, j)] = Rat::one();
        LinearVectorField { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// The linear form `δ(x_j)`.
    pub fn coefficient(&self, ring: &Ring, j: usize) -> MPoly {
        MPoly::linear(ring, &self.matrix.column(j))
    }

    /// `δ(f) = Σ_j δ(x_j)·∂_j f`.
    pub fn apply(&self, f: &MPoly) -> Result<MPoly> {
        let n = self.dim();
        if f.ring().nvars() != n {
            return Err(Error::Dimension(format!(
                "field on {n} variables applied to a polynomial in {}",
                f.ring().nvars()
            )));
        }
        let mut acc = MPoly::zero(f.ring());
        for j in 0..n {
            let c = self.coefficient(f.ring(), j);
            if c.is_zero() {
                continue;
            }
            let d = f.partial_derivative(j)?;
            if !d.is_zero() {
                acc = &acc + &(&c * &d);
            }
        }
        Ok(acc)
    }

    /// The field `w` with `w(f) = u(v(f)) − v(u(f))`.
    pub fn bracket(&self, other: &LinearVectorField) -> Result<LinearVectorField> {
        self.check_dim(other)?;
        let (a, b) = (&self.matrix, &other.matrix);
        Ok(LinearVectorField {
            matrix: a.mul(b).sub(&b.mul(a)),
        })
    }

    /// The coefficient vector `(δ(x_1)(p), …, δ(x_n)(p)) = p·A`.
    pub fn at_point(&self, p: &[Rat]) -> Result<Vec<Rat>> {
        if p.len() != self.dim() {
            return Err(Error::Dimension("point length differs from field dimension".into()));
        }
        Ok(self.matrix.transpose().mul_vec(p))
    }

    pub fn add(&self, other: &LinearVectorField) -> Result<LinearVectorField> {
        self.check_dim(other)?;
        Ok(LinearVectorField {
            matrix: self.matrix.add(&other.matrix),
        })
    }

    pub fn sub(&self, other: &LinearVectorField) -> Result<LinearVectorField> {
        self.check_dim(other)?;
        Ok(LinearVectorField {
            matrix: self.matrix.sub(&other.matrix),
        })
    }

    pub fn scale(&self, c: &Rat) -> LinearVectorField {
        LinearVectorField {
            matrix: self.matrix.scale(c),
        }
    }

    /// Rescales to coprime integer entries with the first nonzero entry positive.
    pub fn primitive(&self) -> LinearVectorField {
        let rows = self.matrix.to_rows();
        let flat: Vec<&Rat> = rows.iter().flatten().collect();
        let Some(first) = flat.iter().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let den = Rat::common_denominator(flat.iter().copied());
        let g = flat.iter().fold(num_bigint::BigInt::from(0), |g, c| {
            let v = c.numer() * (&den / c.denom());
            num_integer::Integer::gcd(&g, &v)
        });
        let mut s = Rat::from(den) / Rat::from(g);
        if first.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    fn check_dim(&self, other: &LinearVectorField) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "fields of dimension {} and {}",
                self.dim(),
                other.dim()
            )))
        }
    }
}

impl Serialize for LinearVectorField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearVectorField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rat>>::deserialize(d)?;
        let m = QMatrix::from_rows(rows).map_err(serde::de::Error::custom)?;
        LinearVectorField::new(m).map_err(serde::de::Error::custom)
    }
}

/// `n` linear fields on an `n`-dimensional space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorFieldBasis {
    ring: Ring,
    fields: Vec<LinearVectorField>,
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    variables: Vec<String>,
    fields: Vec<LinearVectorField>,
}

impl VectorFieldBasis {
    pub fn new(ring: &Ring, fields: Vec<LinearVectorField>) -> Result<Self> {
        let n = ring.nvars();
        if fields.len() != n {
            return Err(Error::Dimension(format!(
                "{} fields for {n} variables",
                fields.len()
            )));
        }
        if let Some(f) = fields.iter().find(|f| f.dim() != n) {
            return Err(Error::Dimension(format!(
                "field of dimension {} in a basis on {n} variables",
                f.dim()
            )));
        }
        Ok(VectorFieldBasis {
            ring: ring.clone(),
            fields,
        })
    }

    /// Reads row `i` of each matrix as `(δ(x_1), …, δ(x_n))` for `δ = δ_i`
    /// given as linear forms, i.e. `rows[i][j]` is `δ_i(x_j)`.
    pub fn from_coefficient_rows(ring: &Ring, rows: &[Vec<MPoly>]) -> Result<Self> {
        let n = ring.nvars();
        let fields = rows
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(Error::Dimension("coefficient row length".into()));
                }
                let mut m = QMatrix::zeros(n, n);
                for (j, p) in row.iter().enumerate() {
                    if p.total_degree().unwrap_or(1) != 1 || !p.is_homogeneous() {
                        return Err(Error::InvalidInput(format!(
                            "coefficient `{p}` is not a linear form"
                        )));
                    }
                    for k in 0..n {
                        m[(k, j)] = p.linear_coeff(k);
                    }
                }
                LinearVectorField::new(m)
            })
            .collect::<Result<Vec<_>>>()?;
        VectorFieldBasis::new(ring, fields)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn fields(&self) -> &[LinearVectorField] {
        &self.fields
    }

    /// The matrix with entries `δ_i(x_j)`.
    pub fn coefficient_matrix(&self) -> PolyMatrix {
        let rows = self
            .fields
            .iter()
            .map(|f| (0..self.dim()).map(|j| f.coefficient(&self.ring, j)).collect())
            .collect();
        PolyMatrix::from_rows(&self.ring, rows).expect("square by construction")
    }

    /// Coordinates of `v` in the rational span of the basis, if it lies there.
    pub fn span_coordinates(&self, v: &LinearVectorField) -> Result<Option<Vec<Rat>>> {
        let n = self.dim();
        if v.dim() != n {
            return Err(Error::Dimension("field dimension differs from basis".into()));
        }
        let mut m = QMatrix::zeros(n * n, self.fields.len());
        for (c, f) in self.fields.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    m[(i * n + j, c)] = f.matrix()[(i, j)].clone();
                }
            }
        }
        let rhs: Vec<Rat> = (0..n * n).map(|k| v.matrix()[(k / n, k % n)].clone()).collect();
        m.solve(&rhs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BasisJson {
            variables: self.ring.names().to_vec(),
            fields: self.fields.clone(),
        })
        .expect("serializable")
    }

    /// Reads `{"variables", "fields"}` with one matrix per field, or
    /// `{"variables", "coefficients"}` with rows of linear forms `δ_i(x_j)`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        if let Some(rows) = v.get("coefficients") {
            let vars: Vec<String> = serde_json::from_value(v.get("variables").cloned().unwrap_or_default())?;
            let rows: Vec<Vec<String>> = serde_json::from_value(rows.clone())?;
            let ring = Ring::new(vars);
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|s| crate::poly::parse_poly(s, &ring)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            return VectorFieldBasis::from_coefficient_rows(&ring, &rows);
        }
        let b: BasisJson = serde_json::from_value(v.clone())?;
        VectorFieldBasis::new(&Ring::new(b.variables), b.fields)
    }
}

/// `det(δ_i(x_j))`.
pub fn discriminant_determinant(b: &VectorFieldBasis) -> MPoly {
    discriminant_with(b, Exec::default())
}

pub fn discriminant_with(b: &VectorFieldBasis, exec: Exec) -> MPoly {
    b.coefficient_matrix()
        .det_with(exec)
        .expect("coefficient matrix is square")
}

/// The `c` with `v(delta) = c·delta`, if any.
pub fn is_logarithmic(v: &LinearVectorField, delta: &MPoly) -> Result<Option<Rat>> {
    if delta.is_zero() {
        return Err(Error::InvalidInput("logarithmic test against the zero polynomial".into()));
    }
    Ok(v.apply(delta)?.is_scalar_multiple(delta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LfdReport {
    pub discriminant: PolyJson,
    pub discriminant_text: String,
    /// `None` when the discriminant vanishes identically.
    pub reduced: Option<Verdict>,
    pub squarefree: Option<SquarefreeOutcome>,
    pub closed_under_bracket: bool,
    /// `c_i` with `δ_i(Δ) = c_i·Δ`.
    pub log_eigenvalues: Vec<Option<Rat>>,
    pub euler_in_span: bool,
    pub is_lfd: bool,
}

/// Runs Saito's criterion on a linear basis.
pub fn verify_lfd(b: &VectorFieldBasis, trials: usize, seed: u64) -> Result<LfdReport> {
    verify_lfd_with(b, trials, seed, Exec::default())
}

pub fn verify_lfd_with(b: &VectorFieldBasis, trials: usize, seed: u64, exec: Exec) -> Result<LfdReport> {
    let delta = discriminant_with(b, exec);
    let n = b.dim();
    let (squarefree, log_eigenvalues) = if delta.is_zero() {
        (None, vec![None; n])
    } else {
        let sf = squarefree_test_with(&delta, trials, seed, exec)?;
        let eig = exec
            .map(b.fields(), |f| is_logarithmic(f, &delta))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        (Some(sf), eig)
    };
    let closed_under_bracket = is_closed(b, exec)?;
    let euler_in_span = b.span_coordinates(&LinearVectorField::euler(n))?.is_some();
    let reduced = squarefree.as_ref().map(|s| s.verdict);
    let is_lfd = !delta.is_zero()
        && reduced == Some(Verdict::Squarefree)
        && log_eigenvalues.iter().all(Option::is_some);
    Ok(LfdReport {
        discriminant: PolyJson::from(&delta),
        discriminant_text: delta.to_string(),
        reduced,
        squarefree,
        closed_under_bracket,
        log_eigenvalues,
        euler_in_span,
        is_lfd,
    })
}

/// True when every pairwise bracket lies in the rational span of the basis.
pub fn is_closed(b: &VectorFieldBasis, exec: Exec) -> Result<bool> {
    let n = b.fields().len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results = exec.map(&pairs, |&(i, j)| -> Result<bool> {
        let w = b.fields()[i].bracket(&b.fields()[j])?;
        Ok(b.span_coordinates(&w)?.is_some())
    });
    let mut all = true;
    for r in results {
        all &= r?;
    }
    Ok(all)
}

/// A basis re-split into the Euler field and fields annihilating `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorSplit {
    pub ring: Ring,
    pub euler: LinearVectorField,
    pub annihilators: Vec<LinearVectorField>,
    /// Index of the original field replaced by `χ`.
    pub replaced: usize,
    /// `det` of the matrix with rows `χ(x_j)` and `δ_i(x_j)`.
    pub delta: MPoly,
}

/// Replaces one field by `χ` and subtracts `(c_i/c_χ)·χ` from the others
/// so that they kill `delta`. Fields that had to be modified are rescaled
/// to primitive integer matrices; fields already killing `delta` are kept
/// as they are.
pub fn annihilator_split(b: &VectorFieldBasis, delta: &MPoly) -> Result<AnnihilatorSplit> {
    let n = b.dim();
    let chi = LinearVectorField::euler(n);
    let coords = b
        .span_coordinates(&chi)?
        .ok_or_else(|| Error::Structure("the Euler field is not in the span of the basis".into()))?;
    let replaced = coords
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Structure("zero coordinates for the Euler field".into()))?;
    let c_chi = is_logarithmic(&chi, delta)?
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Structure("discriminant is not quasi-homogeneous".into()))?;
    let mut annihilators = Vec::with_capacity(n.saturating_sub(1));
    for (i, f) in b.fields().iter().enumerate() {
        if i == replaced {
            continue;
        }
        let c = is_logarithmic(f, delta)?.ok_or_else(|| {
            Error::Structure(format!("field {i} is not logarithmic for the discriminant"))
        })?;
        if c.is_zero() {
            annihilators.push(f.clone());
        } else {
            let g = f.sub(&chi.scale(&(&c / &c_chi)))?.primitive();
            annihilators.push(g);
        }
    }
    for (k, a) in annihilators.iter().enumerate() {
        if !a.apply(delta)?.is_zero() {
            return Err(Error::Structure(format!("annihilator {k} does not kill the discriminant")));
        }
    }
    let mut rows = vec![chi.clone()];
    rows.extend(annihilators.iter().cloned());
    let split_basis = VectorFieldBasis::new(b.ring(), rows)?;
    let split_delta = discriminant_determinant(&split_basis);
    if split_delta.is_scalar_multiple(delta).is_none_or(|c| c.is_zero()) {
        return Err(Error::Structure("re-split basis changed the divisor".into()));
    }
    Ok(AnnihilatorSplit {
        ring: b.ring().clone(),
        euler: chi,
        annihilators,
        replaced,
        delta: split_delta,
    })
}

/// An Euler field for the divisor at a point: `χ − Σ λ_i·δ_i` vanishing there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerAtPoint {
    pub lambdas: Vec<Rat>,
    pub field: LinearVectorField,
}

/// Solves `χ(p) = Σ λ_i·δ_i(p)` over the annihilators of a split.
pub fn euler_field_at_point(split: &AnnihilatorSplit, p: &[Rat]) -> Result<Option<EulerAtPoint>> {
    let n = split.euler.dim();
    if p.len() != n {
        return Err(Error::Dimension("point length differs from ambient dimension".into()));
    }
    let k = split.annihilators.len();
    let mut m = QMatrix::zeros(n, k);
    for (c, a) in split.annihilators.iter().enumerate() {
        for (r, v) in a.at_point(p)?.into_iter().enumerate() {
            m[(r, c)] = v;
        }
    }
    let rhs = split.euler.at_point(p)?;
    let Some(lambdas) = m.solve(&rhs)? else {
        return Ok(None);
    };
    let mut field = split.euler.clone();
    for (l, a) in lambdas.iter().zip(&split.annihilators) {
        field = field.sub(&a.scale(l))?;
    }
    Ok(Some(EulerAtPoint { lambdas, field }))
}
