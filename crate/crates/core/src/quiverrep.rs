//! Quiver representation spaces and the discriminants of their group actions.
//!
//! A representation assigns to each arrow `φ: t → h` a `d_h × d_t` matrix.
//! The group `Π_α GL(d_α)` acts by `V(φ) ↦ g_h·V(φ)·g_t⁻¹`; an elementary
//! generator `E` at node `α` therefore acts infinitesimally by `E·V(φ)` on
//! arrows into `α` and by `−V(φ)·E` on arrows out of `α`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liecoh::{ce_differential, structure_constants};
use crate::linalg::QMatrix;
use crate::logder::{discriminant_determinant, verify_lfd, LfdReport, LinearVectorField, VectorFieldBasis};
use crate::poly::{MPoly, Ring};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    nodes: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(nodes: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidInput("quiver without nodes".into()));
        }
        let n = nodes.len();
        if let Some(a) = arrows.iter().find(|a| a.tail >= n || a.head >= n) {
            return Err(Error::InvalidInput(format!(
                "arrow {} -> {} refers to a missing node",
                a.tail, a.head
            )));
        }
        let q = Quiver { nodes, arrows };
        if !q.is_connected() {
            return Err(Error::InvalidInput("quiver is not connected".into()));
        }
        Ok(q)
    }

    /// One sink `s` and sources `1..=k`, each with an arrow into the sink.
    pub fn star(sources: usize) -> Self {
        let mut nodes = vec!["s".to_string()];
        nodes.extend((1..=sources).map(|i| format!("v{i}")));
        let arrows = (1..=sources).map(|i| Arrow { tail: i, head: 0 }).collect();
        Quiver::new(nodes, arrows).expect("star is connected")
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.tail, a.head), (a.head, a.tail)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Quiver, dimension vector and designated root in one JSON-friendly value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub nodes: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub dims: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub tail: String,
    pub head: String,
}

/// A quiver with dimensions, ready for computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub quiver: Quiver,
    pub dims: Vec<u32>,
    pub root: usize,
}

impl QuiverRep {
    pub fn new(quiver: Quiver, dims: Vec<u32>, root: usize) -> Result<Self> {
        if dims.len() != quiver.nodes().len() {
            return Err(Error::Dimension("one dimension per node".into()));
        }
        if root >= dims.len() {
            return Err(Error::OutOfRange {
                index: root,
                max: dims.len() - 1,
            });
        }
        Ok(QuiverRep { quiver, dims, root })
    }

    pub fn from_json(q: &QuiverJson) -> Result<Self> {
        let idx = |name: &str| {
            q.nodes
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown node `{name}`")))
        };
        let arrows = q
            .arrows
            .iter()
            .map(|a| Ok(Arrow { tail: idx(&a.tail)?, head: idx(&a.head)? }))
            .collect::<Result<Vec<_>>>()?;
        let dims = q
            .nodes
            .iter()
            .map(|n| {
                q.dims
                    .get(n)
                    .copied()
                    .ok_or_else(|| Error::InvalidInput(format!("no dimension for node `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = q.dims.keys().find(|k| !q.nodes.contains(k)) {
            return Err(Error::InvalidInput(format!("dimension for unknown node `{extra}`")));
        }
        let root = match &q.root {
            Some(r) => idx(r)?,
            None => 0,
        };
        QuiverRep::new(Quiver::new(q.nodes.clone(), arrows)?, dims, root)
    }

    pub fn to_json(&self) -> QuiverJson {
        let names = self.quiver.nodes();
        QuiverJson {
            nodes: names.to_vec(),
            arrows: self
                .quiver
                .arrows()
                .iter()
                .map(|a| ArrowJson {
                    tail: names[a.tail].clone(),
                    head: names[a.head].clone(),
                })
                .collect(),
            dims: names.iter().cloned().zip(self.dims.iter().copied()).collect(),
            root: Some(names[self.root].clone()),
        }
    }

    /// Star quiver with sink of dimension `n` and `n + 1` sources of dimension 1.
    pub fn star(n: u32) -> Self {
        let q = Quiver::star(n as usize + 1);
        let mut dims = vec![n];
        dims.extend(std::iter::repeat_n(1, n as usize + 1));
        QuiverRep::new(q, dims, 0).expect("valid star")
    }

    /// Variable offsets per arrow and the total count.
    fn offsets(&self) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(self.quiver.arrows().len());
        let mut total = 0;
        for a in self.quiver.arrows() {
            off.push(total);
            total += (self.dims[a.head] * self.dims[a.tail]) as usize;
        }
        (off, total)
    }

    /// `dim Rep(Q, d)`.
    pub fn rep_dim(&self) -> usize {
        self.offsets().1
    }

    /// Coordinates `a{k}_{r}_{c}`: arrow `k`, row `r`, column `c` (1-based),
    /// arrows in order and each matrix row-major.
    pub fn ring(&self) -> Ring {
        let mut names = Vec::new();
        for (k, a) in self.quiver.arrows().iter().enumerate() {
            for r in 0..self.dims[a.head] {
                for c in 0..self.dims[a.tail] {
                    names.push(format!("a{}_{}_{}", k + 1, r + 1, c + 1));
                }
            }
        }
        Ring::new(names)
    }

    /// Index of the coordinate for entry `(r, c)` of arrow `k`.
    pub fn var(&self, k: usize, r: usize, c: usize) -> usize {
        let (off, _) = self.offsets();
        let a = self.quiver.arrows()[k];
        off[k] + r * self.dims[a.tail] as usize + c
    }

    /// The matrix of arrow `k` with polynomial entries.
    pub fn arrow_matrix(&self, ring: &Ring, k: usize) -> Vec<Vec<MPoly>> {
        let a = self.quiver.arrows()[k];
        (0..self.dims[a.head] as usize)
            .map(|r| {
                (0..self.dims[a.tail] as usize)
                    .map(|c| MPoly::var(ring, self.var(k, r, c)))
                    .collect()
            })
            .collect()
    }

    /// `Σ d_α² − Σ_φ d_tφ·d_hφ`.
    pub fn tits_defect(&self) -> i64 {
        let nodes: i64 = self.dims.iter().map(|&d| (d as i64) * (d as i64)).sum();
        let arrows: i64 = self
            .quiver
            .arrows()
            .iter()
            .map(|a| self.dims[a.tail] as i64 * self.dims[a.head] as i64)
            .sum();
        nodes - arrows
    }

    /// The field of the elementary generator `E_pq` at `node`.
    pub fn generator_field(&self, node: usize, p: usize, q: usize) -> LinearVectorField {
        let (_, n) = self.offsets();
        let mut m = QMatrix::zeros(n, n);
        for (k, a) in self.quiver.arrows().iter().enumerate() {
            let (dh, dt) = (self.dims[a.head] as usize, self.dims[a.tail] as usize);
            if a.head == node {
                // (E·V)_{p,c} = V_{q,c}
                for c in 0..dt {
                    m[(self.var(k, q, c), self.var(k, p, c))] += &Rat::one();
                }
            }
            if a.tail == node {
                // (V·E)_{r,q} = V_{r,p}
                for r in 0..dh {
                    m[(self.var(k, r, p), self.var(k, r, q))] -= &Rat::one();
                }
            }
        }
        LinearVectorField::new(m).expect("square")
    }

    /// One field per elementary generator of `⊕_α 𝔤𝔩(d_α)`, labelled
    /// `node:E_pq`, nodes in order and generators row-major.
    pub fn action_fields(&self) -> Vec<(String, LinearVectorField)> {
        let mut out = Vec::new();
        for (node, &d) in self.dims.iter().enumerate() {
            for p in 0..d as usize {
                for q in 0..d as usize {
                    let label = format!("{}:E{}{}", self.quiver.nodes()[node], p + 1, q + 1);
                    out.push((label, self.generator_field(node, p, q)));
                }
            }
        }
        out
    }

    /// A basis of `𝔤𝔩(Q, d)` modulo the scalars: full `𝔤𝔩` at every node
    /// except the root, where the traceless part is used.
    pub fn basis(&self) -> Result<VectorFieldBasis> {
        let defect = self.tits_defect();
        if defect != 1 {
            return Err(Error::Dimension(format!("Tits form is {defect}, expected 1")));
        }
        let mut fields = Vec::new();
        for (node, &d) in self.dims.iter().enumerate() {
            let d = d as usize;
            for p in 0..d {
                for q in 0..d {
                    if node != self.root || p != q {
                        fields.push(self.generator_field(node, p, q));
                    } else if p + 1 < d {
                        let f = self
                            .generator_field(node, p, p)
                            .sub(&self.generator_field(node, p + 1, p + 1))?;
                        fields.push(f);
                    }
                }
            }
        }
        VectorFieldBasis::new(&self.ring(), fields)
    }
}

pub fn tits_defect(q: &QuiverRep) -> i64 {
    q.tits_defect()
}

pub fn quiver_discriminant(q: &QuiverRep) -> Result<MPoly> {
    Ok(discriminant_determinant(&q.basis()?))
}

pub fn quiver_lfd_report(q: &QuiverRep, trials: usize, seed: u64) -> Result<LfdReport> {
    verify_lfd(&q.basis()?, trials, seed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KacReport {
    pub h1_rank: usize,
    pub expected: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Compares `b_1` of the Lie algebra with `|Q_0| − 1`.
pub fn kac_component_check(q: &QuiverRep) -> Result<KacReport> {
    if q.dims.contains(&0) {
        return Err(Error::InvalidInput("dimension vector is not sincere".into()));
    }
    let p = structure_constants(&q.basis()?)?;
    // trivial coefficients: d_0 = 0, so b_1 = dim 𝔤 − rank d_1
    let h1_rank = p.dim() - ce_differential(&p, 1)?.rank();
    let expected = q.quiver.nodes().len() - 1;
    Ok(KacReport {
        h1_rank,
        expected,
        matches: h1_rank == expected,
    })
}
