//! Buchberger's algorithm, normal forms and radical membership.
//!
//! Polynomials are re-sorted under the requested [`MonomialOrder`] for the
//! duration of a computation; results are handed back as ordinary
//! [`MPoly`] values.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ExpVec, MPoly, MonomialOrder, Ring};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rat::Rat;

/// Hard caps on a single Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest number of basis elements before giving up.
    pub max_basis: usize,
    /// Largest S-pair lcm degree before giving up.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis: 5000,
            max_degree: 20,
        }
    }
}

/// A finitely generated ideal. Zero generators are dropped and generators
/// equal up to a scalar are kept once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<MPoly>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = MPoly>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch("ideal generator over a different ring".into()));
            }
            if g.is_zero() {
                continue;
            }
            if seen.insert(g.primitive().to_string()) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

type Terms = Vec<(ExpVec, Rat)>;

/// Reduced Gröbner basis: monic elements sorted by increasing leading term.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    sorted: Vec<Terms>,
    elements: Vec<MPoly>,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("elements", &self.elements)
            .finish()
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[MPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0].len() == 1 && self.sorted[0][0].0.degree() == 0
    }

    /// Leading monomials under the basis order.
    pub fn leading_monomials(&self) -> Vec<ExpVec> {
        self.sorted.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Fully reduced remainder of `f`; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &MPoly) -> Result<MPoly> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch("normal form over a different ring".into()));
        }
        let t = sort_terms(f, &self.order);
        let r = normal_form(t, &self.sorted, &self.order);
        Ok(MPoly::from_terms(&self.ring, r))
    }

    pub fn contains(&self, f: &MPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks that every S-polynomial of a pair of elements reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let g = &self.sorted;
        (0..g.len()).all(|i| {
            (i + 1..g.len()).all(|j| {
                let s = s_polynomial(&g[i], &g[j], &self.order);
                normal_form(s, g, &self.order).is_empty()
            })
        })
    }
}

/// Reduced Gröbner basis under `order` with the default budget.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(ideal, order, &Budget::default())
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree first) and the coprime and chain criteria.
pub fn buchberger_with_budget(
    ideal: &Ideal,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    if order.nvars() != ring.nvars() {
        return Err(Error::Dimension(format!(
            "order on {} variables for a ring of {}",
            order.nvars(),
            ring.nvars()
        )));
    }
    let mut state = State {
        order,
        g: Vec::new(),
        pending: HashSet::new(),
        unit: false,
    };
    let mut gens: Vec<Terms> = ideal.gens().iter().map(|f| sort_terms(f, order)).collect();
    // small generators first keeps early reductions cheap
    gens.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));
    for f in gens {
        let r = normal_form(f, &state.g, order);
        if !r.is_empty() {
            state.add(r);
        }
        if state.unit {
            return Ok(finish(&ring, order, state.g));
        }
    }
    while let Some((i, j)) = state.select() {
        state.pending.remove(&(i, j));
        let (li, lj) = (&state.g[i][0].0, &state.g[j][0].0);
        if li.coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        if lcm.degree() > budget.max_degree {
            return Err(Error::Budget(format!(
                "S-pair of degree {} exceeds the degree cap {} ({} basis elements so far)",
                lcm.degree(),
                budget.max_degree,
                state.g.len()
            )));
        }
        if state.chain_criterion(i, j, &lcm) {
            continue;
        }
        let s = s_polynomial(&state.g[i], &state.g[j], order);
        let r = normal_form(s, &state.g, order);
        if r.is_empty() {
            continue;
        }
        state.add(r);
        if state.unit {
            break;
        }
        if state.g.len() > budget.max_basis {
            return Err(Error::Budget(format!(
                "basis grew past {} elements",
                budget.max_basis
            )));
        }
    }
    Ok(finish(&ring, order, state.g))
}

struct State<'a> {
    order: &'a MonomialOrder,
    g: Vec<Terms>,
    pending: HashSet<(usize, usize)>,
    unit: bool,
}

impl State<'_> {
    fn add(&mut self, mut h: Terms) {
        make_monic(&mut h);
        if h[0].0.degree() == 0 {
            self.unit = true;
            self.g = vec![h];
            self.pending.clear();
            return;
        }
        let k = self.g.len();
        self.g.push(h);
        for i in 0..k {
            self.pending.insert((i, k));
        }
    }

    /// Pending pair with the smallest lcm, by degree and then by the order.
    fn select(&self) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), ExpVec)> = None;
        for &(i, j) in &self.pending {
            let lcm = self.g[i][0].0.lcm(&self.g[j][0].0);
            let better = match &best {
                None => true,
                Some(((bi, bj), b)) => match lcm.degree().cmp(&b.degree()) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => match self.order.cmp(&lcm, b) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => (i, j) < (*bi, *bj),
                    },
                },
            };
            if better {
                best = Some(((i, j), lcm));
            }
        }
        best.map(|(p, _)| p)
    }

    /// Buchberger's second criterion: skip `(i, j)` if some `k` has a leading
    /// monomial dividing the lcm and both `(i, k)` and `(j, k)` are done.
    fn chain_criterion(&self, i: usize, j: usize, lcm: &ExpVec) -> bool {
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        (0..self.g.len()).any(|k| {
            k != i
                && k != j
                && self.g[k][0].0.divides(lcm)
                && !self.pending.contains(&key(i, k))
                && !self.pending.contains(&key(j, k))
        })
    }
}

/// Minimalizes, inter-reduces, and sorts a Gröbner basis.
fn finish(ring: &Ring, order: &MonomialOrder, g: Vec<Terms>) -> GroebnerBasis {
    let mut keep: Vec<Terms> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lead = &p[0].0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && q[0].0.divides(lead) && (q[0].0 != *lead || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut reduced: Vec<Terms> = (0..keep.len())
        .map(|i| {
            let others: Vec<Terms> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            let mut r = normal_form(keep[i].clone(), &others, order);
            make_monic(&mut r);
            r
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let elements = reduced
        .iter()
        .map(|t| MPoly::from_terms(ring, t.iter().cloned()))
        .collect();
    GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        sorted: reduced,
        elements,
    }
}

fn sort_terms(f: &MPoly, order: &MonomialOrder) -> Terms {
    let mut t: Terms = f.terms().to_vec();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// `a - c·x^e·b`, both inputs sorted descending under `order`.
fn sub_shifted(a: &[(ExpVec, Rat)], c: &Rat, e: &ExpVec, b: &[(ExpVec, Rat)], order: &MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut shifted = b.iter().map(|(m, k)| (m.add(e), k * c)).peekable();
    while i < a.len() {
        let Some((m, _)) = shifted.peek() else { break };
        match order.cmp(&a[i].0, m) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, k) = shifted.next().expect("peeked");
                out.push((m, -k));
            }
            Ordering::Equal => {
                let (m, k) = shifted.next().expect("peeked");
                let v = &a[i].1 - &k;
                if !v.is_zero() {
                    out.push((m, v));
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(shifted.map(|(m, k)| (m, -k)));
    out
}

fn s_polynomial(f: &Terms, g: &Terms, order: &MonomialOrder) -> Terms {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = lcm.checked_sub(&f[0].0).expect("lcm divisible");
    let mg = lcm.checked_sub(&g[0].0).expect("lcm divisible");
    // f and g are monic; the leading terms cancel
    let cf = f[0].1.recip();
    let cg = g[0].1.recip();
    let fs: Terms = f[1..].iter().map(|(m, c)| (m.add(&mf), c * &cf)).collect();
    sub_shifted(&fs, &cg, &mg, &g[1..], order)
}

fn normal_form(mut p: Terms, g: &[Terms], order: &MonomialOrder) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut i = 0;
    while i < p.len() {
        let (e, c) = &p[i];
        match g.iter().find(|q| q[0].0.divides(e)) {
            Some(q) => {
                let shift = e.checked_sub(&q[0].0).expect("divides");
                let coef = c / &q[0].1;
                p = sub_shifted(&p[i + 1..], &coef, &shift, &q[1..], order);
                i = 0;
            }
            None => {
                rem.push(p[i].clone());
                i += 1;
            }
        }
    }
    rem
}

/// True iff `f` vanishes on the variety of `ideal` (over the algebraic closure).
pub fn radical_membership(f: &MPoly, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    let order = MonomialOrder::degrevlex(ideal.ring().nvars());
    let gb = buchberger_with_budget(ideal, &order, budget)?;
    radical_membership_with_basis(f, ideal, &gb, budget)
}

/// As [`radical_membership`], reusing a basis of `ideal` for the cheap
/// ideal-membership shortcut.
pub fn radical_membership_with_basis(
    f: &MPoly,
    ideal: &Ideal,
    gb: &GroebnerBasis,
    budget: &Budget,
) -> Result<bool> {
    if f.ring() != ideal.ring() {
        return Err(Error::RingMismatch("radical membership over different rings".into()));
    }
    if f.is_zero() || gb.is_unit() || gb.contains(f)? {
        return Ok(true);
    }
    if ideal.is_zero() {
        return Ok(false);
    }
    // Rabinowitsch: f ∈ √I iff 1 ∈ I + (1 − t·f) in R[t]
    let ext = ideal.ring().with_fresh_var("t");
    let t = MPoly::var(&ext, ext.nvars() - 1);
    let mut gens = ideal
        .gens()
        .iter()
        .map(|g| g.embed(&ext))
        .collect::<Result<Vec<_>>>()?;
    gens.push(&MPoly::one(&ext) - &(&t * &f.embed(&ext)?));
    let big = Ideal::new(&ext, gens)?;
    let gb = buchberger_with_budget(&big, &MonomialOrder::degrevlex(ext.nvars()), budget)?;
    Ok(gb.is_unit())
}

/// True iff every generator of `sub` lies in the radical of `sup`.
pub fn radical_contains_all(sub: &Ideal, sup: &Ideal, budget: &Budget, exec: Exec) -> Result<bool> {
    let order = MonomialOrder::degrevlex(sup.ring().nvars());
    let gb = buchberger_with_budget(sup, &order, budget)?;
    let results = exec.map(sub.gens(), |f| radical_membership_with_basis(f, sup, &gb, budget));
    let mut all = true;
    for r in results {
        all &= r?;
    }
    Ok(all)
}

/// True iff `√a = √b`.
pub fn ideal_equal_radical(a: &Ideal, b: &Ideal, budget: &Budget, exec: Exec) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch("radical comparison over different rings".into()));
    }
    Ok(radical_contains_all(a, b, budget, exec)? && radical_contains_all(b, a, budget, exec)?)
}
