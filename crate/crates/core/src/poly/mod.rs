//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! An [`MPoly`] owns its [`Ring`] (the ordered variable names) and a vector
//! of terms kept sorted in descending degrevlex order with no zero
//! coefficients. That invariant makes equality a plain term-vector compare.

mod expvec;
mod matrix;
mod order;
mod parse;
mod squarefree;
mod univariate;

pub mod groebner;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use expvec::ExpVec;
pub use matrix::{cofactor_det, subsets, PolyMatrix};
pub use order::{MonomialOrder, OrderKind};
pub use squarefree::{
    random_point, squarefree_test, squarefree_test_with, SquarefreeOutcome, Verdict, SAMPLE_RANGE,
};
pub use univariate::UniPoly;

pub(crate) use order::drl_cmp;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone)]
pub struct Ring(Arc<Vec<String>>);

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Ring(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    /// `x1, …, xn`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Ring::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// This ring with one extra variable appended, named so it cannot clash.
    pub fn with_fresh_var(&self, hint: &str) -> Ring {
        let mut name = hint.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        let mut names = (*self.0).clone();
        names.push(name);
        Ring(Arc::new(names))
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ring: Ring,
    terms: Vec<(ExpVec, Rat)>,
}

impl MPoly {
    pub fn zero(ring: &Ring) -> Self {
        MPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rat) -> Self {
        MPoly::monomial(ring, ExpVec::zero(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        MPoly::constant(ring, Rat::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        MPoly::monomial(ring, ExpVec::unit(ring.nvars(), i), Rat::one())
    }

    pub fn monomial(ring: &Ring, e: ExpVec, c: Rat) -> Self {
        assert_eq!(e.len(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(e, c)] };
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (ExpVec, Rat)>) -> Self {
        let mut acc: HashMap<ExpVec, Rat> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent length differs from ring");
            *acc.entry(e).or_insert_with(Rat::zero) += &c;
        }
        MPoly::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<ExpVec, Rat>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| drl_cmp(&b.0, &a.0));
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms must already be sorted descending in degrevlex and nonzero.
    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<(ExpVec, Rat)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| drl_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Linear form `Σ coeffs[i]·x_i`.
    pub fn linear(ring: &Ring, coeffs: &[Rat]) -> Self {
        assert_eq!(coeffs.len(), ring.nvars());
        MPoly::from_terms(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (ExpVec::unit(ring.nvars(), i), c.clone())),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(ExpVec, Rat)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.degree() == 0)
    }

    /// Leading term under degrevlex.
    pub fn leading(&self) -> Option<(&ExpVec, &Rat)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((e0, _)) => self.terms.iter().all(|(e, _)| e.degree() == e0.degree()),
        }
    }

    pub fn coeff(&self, e: &ExpVec) -> Rat {
        self.terms
            .binary_search_by(|(t, _)| drl_cmp(e, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rat::zero())
    }

    /// Coefficient of `x_i` in a polynomial (meaningful for linear forms).
    pub fn linear_coeff(&self, i: usize) -> Rat {
        self.coeff(&ExpVec::unit(self.ring.nvars(), i))
    }

    pub fn check_ring(&self, other: &MPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring, other.ring
            )))
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, e: &ExpVec, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        // multiplying by a monomial preserves the order
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.add(e), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<MPoly> {
        if var >= self.ring.nvars() {
            return Err(Error::OutOfRange {
                index: var,
                max: self.ring.nvars().saturating_sub(1),
            });
        }
        let terms = self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut d = e.clone();
            d.as_mut_slice()[var] -= 1;
            (d, c * Rat::from(e[var] as i64))
        });
        Ok(MPoly::from_terms(&self.ring, terms))
    }

    /// Exact substitution of a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        let maxdeg = self
            .terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        // power table per variable
        let powers: Vec<Vec<Rat>> = point
            .iter()
            .map(|p| {
                let mut row = Vec::with_capacity(maxdeg + 1);
                row.push(Rat::one());
                for k in 1..=maxdeg {
                    let next = &row[k - 1] * p;
                    row.push(next);
                }
                row
            })
            .collect();
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .fold(c.clone(), |acc, (i, &k)| acc * &powers[i][k as usize])
            })
            .sum())
    }

    /// Substitutes polynomials (over a common target ring) for each variable.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        let mut cache: HashMap<(usize, u16), MPoly> = HashMap::new();
        let mut acc = MPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, k))
                    .or_insert_with(|| images[i].pow(k as u32));
                t = &t * &*p;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in `target`, mapping each variable by name.
    pub fn embed(&self, target: &Ring) -> Result<MPoly> {
        let map: Vec<usize> = self
            .ring
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::RingMismatch(format!("variable `{n}` missing in target")))
            })
            .collect::<Result<_>>()?;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = ExpVec::zero(target.nvars());
            for (i, &k) in e.iter().enumerate() {
                f.as_mut_slice()[map[i]] = k;
            }
            (f, c.clone())
        });
        Ok(MPoly::from_terms(target, terms))
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    ///
    /// Runs multivariate division under degrevlex and gives up at the first
    /// remainder term not divisible by the leading term of `g`.
    pub fn divide_exact(&self, g: &MPoly) -> Result<Option<MPoly>> {
        self.check_ring(g)?;
        let (glt, glc) = g.leading().ok_or(Error::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Some(MPoly::zero(&self.ring)));
        }
        if g.terms.len() == 1 {
            let mut q = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                match e.checked_sub(glt) {
                    Some(d) => q.push((d, c / glc)),
                    None => return Ok(None),
                }
            }
            return Ok(Some(MPoly::from_sorted_unchecked(&self.ring, q)));
        }
        let mut rem: BTreeMap<DrlKey, Rat> = self
            .terms
            .iter()
            .map(|(e, c)| (DrlKey(e.clone()), c.clone()))
            .collect();
        let mut q: Vec<(ExpVec, Rat)> = Vec::new();
        while let Some((DrlKey(m), c)) = rem.pop_last() {
            let qe = match m.checked_sub(glt) {
                Some(d) => d,
                None => return Ok(None),
            };
            let qc = &c / glc;
            for (ge, gc) in &g.terms[1..] {
                let key = DrlKey(qe.add(ge));
                let delta = &qc * gc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= &delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            q.push((qe, qc));
        }
        Ok(Some(MPoly::from_sorted_unchecked(&self.ring, q)))
    }

    /// The scalar `c` with `self = c·g`, if any.
    ///
    /// `0 = c·g` yields `c = 0` for nonzero `g`; when both are zero the
    /// convention is `c = 1`.
    pub fn is_scalar_multiple(&self, g: &MPoly) -> Option<Rat> {
        if self.ring != g.ring {
            return None;
        }
        match (self.is_zero(), g.is_zero()) {
            (true, true) => return Some(Rat::one()),
            (true, false) => return Some(Rat::zero()),
            (false, true) => return None,
            _ => {}
        }
        if self.terms.len() != g.terms.len() {
            return None;
        }
        let c = &self.terms[0].1 / &g.terms[0].1;
        let same = self
            .terms
            .iter()
            .zip(&g.terms)
            .all(|((e1, c1), (e2, c2))| e1 == e2 && *c1 == c2 * &c);
        same.then_some(c)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Scales to coprime integer coefficients with a positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = Rat::common_denominator(self.terms.iter().map(|(_, c)| c));
        let scaled = self.scale(&Rat::from(den));
        let g = scaled
            .terms
            .iter()
            .fold(num_bigint::BigInt::from(0), |g, (_, c)| {
                num_integer::Integer::gcd(&g, c.numer())
            });
        let mut out = scaled.scale(&Rat::from(g).recip());
        if out.terms[0].1.is_negative() {
            out = -out;
        }
        out
    }

    /// Restricts to the line `x = a·t + b`, returning a univariate polynomial in `t`.
    pub fn restrict_to_line(&self, a: &[Rat], b: &[Rat]) -> Result<UniPoly> {
        let n = self.ring.nvars();
        if a.len() != n || b.len() != n {
            return Err(Error::Dimension("line direction/base length".into()));
        }
        let maxdeg = self
            .terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let lines: Vec<UniPoly> = (0..n)
            .map(|i| UniPoly::new(vec![b[i].clone(), a[i].clone()]))
            .collect();
        let powers: Vec<Vec<UniPoly>> = lines
            .iter()
            .map(|l| {
                let mut row = vec![UniPoly::constant(Rat::one())];
                for k in 1..=maxdeg {
                    let next = &row[k - 1] * l;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.degree() == d)
            .cloned()
            .collect();
        MPoly::from_sorted_unchecked(&self.ring, terms)
    }

    fn merge(&self, other: &MPoly, negate_other: bool) -> MPoly {
        assert!(self.ring == other.ring, "ring mismatch in polynomial arithmetic");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Rat| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match drl_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (e.clone(), sign(c))));
        MPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &MPoly) -> MPoly {
        assert!(self.ring == other.ring, "ring mismatch in polynomial arithmetic");
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<ExpVec, Rat> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let prod = c1 * c2;
                match acc.entry(e1.add(e2)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &prod,
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        MPoly::from_map(&self.ring, acc)
    }
}

#[derive(Clone, PartialEq, Eq)]
struct DrlKey(ExpVec);

impl PartialOrd for DrlKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DrlKey {
    fn cmp(&self, other: &Self) -> Ordering {
        drl_cmp(&self.0, &other.0)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.product(rhs)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        self.merge(&rhs, false)
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self.merge(&rhs, true)
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        self.product(&rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for (_, c) in &mut self.terms {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -self.clone()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(self.ring.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names()[i], p)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

pub use parse::{parse_poly, PolyJson, TermJson};

#[cfg(test)]
mod tests {
    use super::*;

    fn ring4() -> Ring {
        Ring::new(["x", "y", "z", "w"])
    }

    fn p(s: &str) -> MPoly {
        parse_poly(s, &ring4()).unwrap()
    }

    /// The binary cubic quartic, after the factor 3 is divided out.
    fn quartic() -> MPoly {
        p("-y^2*z^2 + 4*w*y^3 + 4*x*z^3 - 18*w*x*y*z + 27*w^2*x^2")
    }

    #[test]
    fn partial_derivative_examples() {
        assert_eq!(p("x^2*y").partial_derivative(0).unwrap(), p("2*x*y"));
        assert_eq!(p("x*z").partial_derivative(1).unwrap(), MPoly::zero(&ring4()));
        assert_eq!(
            quartic().partial_derivative(3).unwrap(),
            p("4*y^3 - 18*x*y*z + 54*w*x^2")
        );
        assert!(p("x").partial_derivative(4).is_err());
    }

    #[test]
    fn derivative_matches_termwise_oracle() {
        // Independent oracle: differentiate each parsed term by hand.
        let f = quartic();
        for var in 0..4 {
            let mut expect = MPoly::zero(&ring4());
            for (e, c) in f.terms() {
                if e[var] == 0 {
                    continue;
                }
                let mut d = e.clone();
                d.as_mut_slice()[var] -= 1;
                expect = &expect + &MPoly::monomial(&ring4(), d, c * Rat::from(e[var] as i64));
            }
            assert_eq!(f.partial_derivative(var).unwrap(), expect);
        }
    }

    #[test]
    fn divide_exact_examples() {
        assert_eq!(p("x^2*y").divide_exact(&p("x")).unwrap(), Some(p("x*y")));
        assert_eq!(p("x + y").divide_exact(&p("x")).unwrap(), None);
        let d = quartic();
        let prod = &d * &p("x");
        assert_eq!(prod.divide_exact(&d).unwrap(), Some(p("x")));
        assert!(matches!(p("x").divide_exact(&MPoly::zero(&ring4())), Err(Error::DivisionByZero)));
        assert_eq!(MPoly::zero(&ring4()).divide_exact(&p("x+y")).unwrap(), Some(MPoly::zero(&ring4())));
    }

    #[test]
    fn scalar_multiple_examples() {
        assert_eq!(p("2*x*y").is_scalar_multiple(&p("x*y")), Some(Rat::from(2)));
        assert_eq!(p("x*y + x").is_scalar_multiple(&p("x*y")), None);
        assert_eq!(MPoly::zero(&ring4()).is_scalar_multiple(&p("x*y")), Some(Rat::zero()));
        assert_eq!(
            MPoly::zero(&ring4()).is_scalar_multiple(&MPoly::zero(&ring4())),
            Some(Rat::one())
        );
        assert_eq!(p("x").is_scalar_multiple(&MPoly::zero(&ring4())), None);
    }

    #[test]
    fn evaluate_examples() {
        let r = Ring::new(["x", "y"]);
        let xy = parse_poly("x*y", &r).unwrap();
        assert_eq!(xy.evaluate(&[Rat::from(2), Rat::from(3)]).unwrap(), Rat::from(6));
        let z = parse_poly("x - x", &r).unwrap();
        assert_eq!(z.evaluate(&[Rat::new(1, 3), Rat::from(9)]).unwrap(), Rat::zero());
        let pt = [1, 0, 0, 1].map(Rat::from);
        assert_eq!(quartic().evaluate(&pt).unwrap(), Rat::from(27));
        assert!(xy.evaluate(&[Rat::one()]).is_err());
    }

    #[test]
    fn arithmetic_identities() {
        let a = p("x + 2*y - 1/3*z");
        let b = p("x*w - y^2");
        assert_eq!(&(&a * &b) - &(&b * &a), MPoly::zero(&ring4()));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!((&a * &a).divide_exact(&a).unwrap(), Some(a.clone()));
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn primitive_normalizes() {
        assert_eq!(p("-1/2*x + 1/4*y").primitive(), p("2*x - y"));
    }

    #[test]
    fn restrict_to_line_agrees_with_evaluation() {
        let f = quartic();
        let a = [1, -2, 3, 5].map(Rat::from);
        let b = [7, 0, -1, 2].map(Rat::from);
        let u = f.restrict_to_line(&a, &b).unwrap();
        for t in -3..4 {
            let t = Rat::from(t);
            let pt: Vec<Rat> = (0..4).map(|i| &a[i] * &t + &b[i]).collect();
            assert_eq!(u.eval(&t), f.evaluate(&pt).unwrap());
        }
    }

    #[test]
    fn substitute_and_embed() {
        let r2 = Ring::new(["u", "v"]);
        let images: Vec<MPoly> = ["u+v", "u-v", "u", "v"]
            .iter()
            .map(|s| parse_poly(s, &r2).unwrap())
            .collect();
        let f = p("x*y - z^2 + w^2");
        assert_eq!(f.substitute(&images).unwrap(), MPoly::zero(&r2));
        let big = ring4().with_fresh_var("t");
        let e = p("x*w").embed(&big).unwrap();
        assert_eq!(e.ring().nvars(), 5);
        assert_eq!(e.to_string(), "x*w");
    }
}
