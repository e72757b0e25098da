//! Lie algebra presentations, Chevalley–Eilenberg cohomology with trivial
//! coefficients, reductivity, and comparison with group cohomology.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::logder::VectorFieldBasis;
use crate::par::Exec;
use crate::poly::subsets;
use crate::rat::Rat;

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k]·e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePresentation {
    labels: Vec<String>,
    c: Vec<Vec<Vec<Rat>>>,
}

#[derive(Serialize, Deserialize)]
struct StructureEntry {
    i: usize,
    j: usize,
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    structure: Vec<StructureEntry>,
}

impl LiePresentation {
    /// Validates shape and antisymmetry.
    pub fn new(labels: Vec<String>, c: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        let n = labels.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Dimension(format!("structure constants for dimension {n}")));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k] != -&c[j][i][k] {
                        return Err(Error::Structure(format!(
                            "bracket [e{i}, e{j}] is not antisymmetric"
                        )));
                    }
                }
            }
        }
        Ok(LiePresentation { labels, c })
    }

    pub fn abelian(n: usize) -> Self {
        LiePresentation {
            labels: default_labels(n),
            c: vec![vec![vec![Rat::zero(); n]; n]; n],
        }
    }

    /// The Lie algebra spanned by the given matrices under the commutator.
    /// Fails if the span is not closed or the matrices are dependent.
    pub fn from_matrices(labels: Vec<String>, mats: &[QMatrix]) -> Result<Self> {
        let n = mats.len();
        if labels.len() != n {
            return Err(Error::Dimension("one label per matrix".into()));
        }
        let Some(first) = mats.first() else {
            return LiePresentation::new(labels, Vec::new());
        };
        let (r, c) = (first.rows(), first.cols());
        let mut m = QMatrix::zeros(r * c, n);
        for (k, a) in mats.iter().enumerate() {
            if (a.rows(), a.cols()) != (r, c) {
                return Err(Error::Dimension("matrices of different shapes".into()));
            }
            for p in 0..r {
                for q in 0..c {
                    m[(p * c + q, k)] = a[(p, q)].clone();
                }
            }
        }
        if m.rank() != n {
            return Err(Error::Structure("matrices are linearly dependent".into()));
        }
        let mut consts = vec![vec![vec![Rat::zero(); n]; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let w = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]));
                let rhs: Vec<Rat> = (0..r * c).map(|k| w[(k / c, k % c)].clone()).collect();
                let x = m.solve(&rhs)?.ok_or(Error::NotClosed(i, j))?;
                for k in 0..n {
                    consts[j][i][k] = -&x[k];
                    consts[i][j][k] = x[k].clone();
                }
            }
        }
        LiePresentation::new(labels, consts)
    }

    /// `𝔤𝔩_m` in the basis `E_11, E_12, …, E_mm`.
    pub fn gl(m: usize) -> Self {
        let mats: Vec<QMatrix> = (0..m * m).map(|k| unit(m, k / m, k % m)).collect();
        let labels = (0..m * m).map(|k| format!("E{}{}", k / m + 1, k % m + 1)).collect();
        LiePresentation::from_matrices(labels, &mats).expect("gl is closed")
    }

    /// Upper triangular `m × m` matrices, basis `E_ij` for `i ≤ j`.
    pub fn borel(m: usize) -> Self {
        let idx: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
        let mats: Vec<QMatrix> = idx.iter().map(|&(i, j)| unit(m, i, j)).collect();
        let labels = idx.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
        LiePresentation::from_matrices(labels, &mats).expect("borel is closed")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_of(&self, i: usize, j: usize) -> &[Rat] {
        &self.c[i][j]
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &(&s * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` on coordinates: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Rat]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            for (k, v) in self.bracket_vec(x, &e).into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        m
    }

    /// Checks the Jacobi identity on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim();
        let unitv = |i: usize| {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            e
        };
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (x, y, z) = (unitv(a), unitv(b), unitv(c));
                    let t1 = self.bracket_vec(&x, &self.bracket_vec(&y, &z));
                    let t2 = self.bracket_vec(&y, &self.bracket_vec(&z, &x));
                    let t3 = self.bracket_vec(&z, &self.bracket_vec(&x, &y));
                    if (0..n).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Direct sum with `other`, whose basis follows this one.
    pub fn direct_sum(&self, other: &LiePresentation) -> LiePresentation {
        let (n, m) = (self.dim(), other.dim());
        let t = n + m;
        let mut c = vec![vec![vec![Rat::zero(); t]; t]; t];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.c[i][j][k].clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    c[n + i][n + j][n + k] = other.c[i][j][k].clone();
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        LiePresentation { labels, c }
    }

    /// Presentation in the basis `f_a = Σ_i p[a][i]·e_i`; `p` must be invertible.
    pub fn change_basis(&self, p: &QMatrix) -> Result<LiePresentation> {
        let n = self.dim();
        if p.rows() != n || !p.is_square() || p.det()?.is_zero() {
            return Err(Error::InvalidInput("basis change must be invertible".into()));
        }
        let rows = p.to_rows();
        let pt = p.transpose();
        let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                let w = self.bracket_vec(&rows[a], &rows[b]);
                // w = Σ_c y_c f_c = Pᵗ·y
                let y = pt.solve(&w)?.expect("invertible");
                c[a][b] = y;
            }
        }
        LiePresentation::new(self.labels.clone(), c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.dim();
        let structure = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.c[i][j].iter().any(|v| !v.is_zero()))
            .map(|(i, j)| StructureEntry {
                i,
                j,
                coeffs: self.c[i][j].clone(),
            })
            .collect();
        serde_json::to_value(PresentationJson {
            dim: n,
            labels: Some(self.labels.clone()),
            structure,
        })
        .expect("serializable")
    }

    /// Reads `{dim, structure: [{i, j, coeffs}]}`; unlisted brackets are zero
    /// and `[e_j, e_i]` is filled in by antisymmetry.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: PresentationJson = serde_json::from_value(v.clone())?;
        let n = p.dim;
        let labels = p.labels.unwrap_or_else(|| default_labels(n));
        let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
        for e in p.structure {
            if e.i >= n || e.j >= n || e.coeffs.len() != n {
                return Err(Error::Dimension(format!("structure entry ({}, {})", e.i, e.j)));
            }
            for k in 0..n {
                c[e.j][e.i][k] = -&e.coeffs[k];
                c[e.i][e.j][k] = e.coeffs[k].clone();
            }
        }
        LiePresentation::new(labels, c)
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

fn unit(m: usize, i: usize, j: usize) -> QMatrix {
    let mut a = QMatrix::zeros(m, m);
    a[(i, j)] = Rat::one();
    a
}

/// Structure constants of the Lie algebra spanned by a closed basis.
pub fn structure_constants(b: &VectorFieldBasis) -> Result<LiePresentation> {
    let n = b.fields().len();
    let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = b.fields()[i].bracket(&b.fields()[j])?;
            let x = b.span_coordinates(&w)?.ok_or(Error::NotClosed(i, j))?;
            for k in 0..n {
                c[j][i][k] = -&x[k];
                c[i][j][k] = x[k].clone();
            }
        }
    }
    let labels = (1..=n).map(|i| format!("d{i}")).collect();
    LiePresentation::new(labels, c)
}

/// Matrix of `d: Λᵏ𝔤* → Λᵏ⁺¹𝔤*` in the sorted-subset bases; rows are
/// indexed by `(k+1)`-subsets, columns by `k`-subsets.
pub fn ce_differential(p: &LiePresentation, k: usize) -> Result<QMatrix> {
    let n = p.dim();
    if k > n {
        return Err(Error::OutOfRange { index: k, max: n });
    }
    let cols = subsets(n, k);
    let rows = subsets(n, k + 1);
    let col_index = |s: &[usize]| cols.binary_search_by(|c| c.as_slice().cmp(s)).ok();
    let mut d = QMatrix::zeros(rows.len(), cols.len());
    for (r, t) in rows.iter().enumerate() {
        for a in 0..t.len() {
            for b in a + 1..t.len() {
                let sign_ab = if (a + b) % 2 == 0 { Rat::one() } else { -Rat::one() };
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != a && q != b)
                    .map(|(_, &v)| v)
                    .collect();
                for (l, coef) in p.bracket_of(t[a], t[b]).iter().enumerate() {
                    if coef.is_zero() || rest.contains(&l) {
                        continue;
                    }
                    let pos = rest.partition_point(|&v| v < l);
                    let mut s = rest.clone();
                    s.insert(pos, l);
                    let col = col_index(&s).expect("subset of the right size");
                    let mut v = &sign_ab * coef;
                    if pos % 2 == 1 {
                        v = -v;
                    }
                    d[(r, col)] += &v;
                }
            }
        }
    }
    Ok(d)
}

/// All differentials `d_0, …, d_n`, checked to square to zero.
#[derive(Clone, Debug)]
pub struct CeComplex {
    differentials: Vec<QMatrix>,
}

impl CeComplex {
    pub fn new(p: &LiePresentation) -> Result<Self> {
        Self::new_with(p, Exec::default())
    }

    pub fn new_with(p: &LiePresentation, exec: Exec) -> Result<Self> {
        let n = p.dim();
        let differentials = exec
            .map_range(n + 1, |k| ce_differential(p, k))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        for k in 0..n {
            if !differentials[k + 1].mul(&differentials[k]).is_zero() {
                return Err(Error::Structure(format!("d∘d ≠ 0 in degree {k}")));
            }
        }
        Ok(CeComplex { differentials })
    }

    pub fn differentials(&self) -> &[QMatrix] {
        &self.differentials
    }

    pub fn betti_with(&self, exec: Exec) -> Vec<usize> {
        let n = self.differentials.len() - 1;
        let ranks = exec.map(&self.differentials, QMatrix::rank);
        (0..=n)
            .map(|k| {
                let prev = if k == 0 { 0 } else { ranks[k - 1] };
                binomial(n, k) - ranks[k] - prev
            })
            .collect()
    }
}

/// `b_k = C(n,k) − rank d_k − rank d_{k−1}`.
pub fn lie_betti(p: &LiePresentation) -> Result<Vec<usize>> {
    lie_betti_with(p, Exec::default())
}

pub fn lie_betti_with(p: &LiePresentation, exec: Exec) -> Result<Vec<usize>> {
    Ok(CeComplex::new_with(p, exec)?.betti_with(exec))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Decides `𝔤 = 𝔷(𝔤) ⊕ [𝔤,𝔤]` with the Killing form nondegenerate on `[𝔤,𝔤]`.
pub fn is_reductive(p: &LiePresentation) -> bool {
    let n = p.dim();
    if n == 0 {
        return true;
    }
    // center: z with Σ_j z_j c[i][j][k] = 0 for all i, k
    let mut cm = QMatrix::zeros(n * n, n);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                cm[(i * n + k, j)] = p.c[i][j][k].clone();
            }
        }
    }
    let center = cm.nullspace();
    let brackets: Vec<Vec<Rat>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| p.c[i][j].clone())
        .collect();
    let derived: Vec<Vec<Rat>> = if brackets.is_empty() {
        Vec::new()
    } else {
        let (r, piv) = QMatrix::from_rows(brackets).expect("rectangular").rref();
        (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
    };
    if center.len() + derived.len() != n {
        return false;
    }
    let mut all = center.clone();
    all.extend(derived.iter().cloned());
    if crate::linalg::rank_of(&all) != n {
        return false;
    }
    let ads: Vec<QMatrix> = derived.iter().map(|x| p.ad(x)).collect();
    let d = derived.len();
    let mut gram = QMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            gram[(a, b)] = ads[a].mul(&ads[b]).trace();
        }
    }
    d == 0 || !gram.det().expect("square").is_zero()
}

/// One factor of a connected linear algebraic group, up to homotopy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupFactor {
    /// `(ℂ*)^k`.
    Torus(u32),
    GL(u32),
    SL(u32),
    /// Invertible upper triangular `m × m` matrices.
    Borel(u32),
    /// A `k`-dimensional unipotent group, contractible.
    Unipotent(u32),
}

impl GroupFactor {
    pub fn poincare(self) -> Vec<u64> {
        let odd = |i: u32| {
            let mut v = vec![0u64; 2 * i as usize];
            v[0] = 1;
            v[2 * i as usize - 1] = 1;
            v
        };
        match self {
            GroupFactor::Torus(k) | GroupFactor::Borel(k) => (0..k).fold(vec![1], |a, _| poly_mul(&a, &[1, 1])),
            GroupFactor::GL(m) => (1..=m).fold(vec![1], |a, i| poly_mul(&a, &odd(i))),
            GroupFactor::SL(m) => (2..=m).fold(vec![1], |a, i| poly_mul(&a, &odd(i))),
            GroupFactor::Unipotent(_) => vec![1],
        }
    }
}

impl fmt::Display for GroupFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFactor::Torus(k) => write!(f, "T:{k}"),
            GroupFactor::GL(m) => write!(f, "GL:{m}"),
            GroupFactor::SL(m) => write!(f, "SL:{m}"),
            GroupFactor::Borel(m) => write!(f, "B:{m}"),
            GroupFactor::Unipotent(k) => write!(f, "U:{k}"),
        }
    }
}

impl FromStr for GroupFactor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, num) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group factor `{s}` is not KIND:N")))?;
        let k: u32 = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad size in group factor `{s}`")))?;
        if k == 0 {
            return Err(Error::Parse(format!("group factor `{s}` has size 0")));
        }
        match kind.trim().to_ascii_uppercase().as_str() {
            "T" => Ok(GroupFactor::Torus(k)),
            "GL" => Ok(GroupFactor::GL(k)),
            "SL" => Ok(GroupFactor::SL(k)),
            "B" => Ok(GroupFactor::Borel(k)),
            "U" => Ok(GroupFactor::Unipotent(k)),
            _ => Err(Error::Parse(format!("unknown group kind `{kind}`"))),
        }
    }
}

/// A product of group factors, written `T:1,B:2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTypeDecomp(Vec<GroupFactor>);

impl GroupTypeDecomp {
    pub fn new(factors: Vec<GroupFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("group type needs at least one factor".into()));
        }
        Ok(GroupTypeDecomp(factors))
    }

    pub fn factors(&self) -> &[GroupFactor] {
        &self.0
    }

    /// Coefficients of the Poincaré polynomial of the product.
    pub fn poincare(&self) -> Vec<u64> {
        self.0.iter().fold(vec![1], |a, f| poly_mul(&a, &f.poincare()))
    }
}

impl fmt::Display for GroupTypeDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for GroupTypeDecomp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split([',', '*', 'x'])
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        GroupTypeDecomp::new(factors)
    }
}

impl Serialize for GroupTypeDecomp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupTypeDecomp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Poincaré coefficients of a group type.
pub fn group_poincare(g: &GroupTypeDecomp) -> Vec<u64> {
    g.poincare()
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlctReport {
    pub group: GroupTypeDecomp,
    pub lie_betti: Vec<usize>,
    /// Group Poincaré coefficients padded with zeros to length `n + 1`.
    pub group_betti: Vec<u64>,
    pub holds: bool,
}

/// Compares Lie algebra Betti numbers of a basis with the declared group's.
pub fn glct_check(b: &VectorFieldBasis, g: &GroupTypeDecomp) -> Result<GlctReport> {
    let p = structure_constants(b)?;
    let betti = lie_betti(&p)?;
    Ok(compare_betti(betti, g))
}

pub fn compare_betti(lie: Vec<usize>, g: &GroupTypeDecomp) -> GlctReport {
    let mut group = g.poincare();
    if group.len() < lie.len() {
        group.resize(lie.len(), 0);
    }
    let holds = group.len() == lie.len() && lie.iter().zip(&group).all(|(&a, &b)| a as u64 == b);
    GlctReport {
        group: g.clone(),
        lie_betti: lie,
        group_betti: group,
        holds,
    }
}
