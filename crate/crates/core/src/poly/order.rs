use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::ExpVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Degrevlex,
    Lex,
}

/// A monomial order: a kind plus a variable priority list. `priority[0]` is
/// the most significant variable (for lex, the largest one).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Degrevlex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut seen = priority.clone();
        seen.sort_unstable();
        assert!(
            seen.iter().enumerate().all(|(i, &v)| i == v),
            "priority must be a permutation"
        );
        MonomialOrder { kind, priority }
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// Adds a new variable, placed last in priority.
    pub fn extended(&self) -> Self {
        let mut priority = self.priority.clone();
        priority.push(priority.len());
        MonomialOrder {
            kind: self.kind,
            priority,
        }
    }

    pub fn cmp(&self, a: &ExpVec, b: &ExpVec) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Degrevlex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in self.priority.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Degrevlex with the identity priority, the canonical term order of [`super::MPoly`].
pub(crate) fn drl_cmp(a: &ExpVec, b: &ExpVec) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u16]) -> ExpVec {
        ExpVec::from_slice(v)
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::degrevlex(3);
        // x^2 > xy > y^2 > xz > yz > z^2 in degree two
        let chain = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&e(&w[0]), &e(&w[1])), Ordering::Greater);
            assert_eq!(drl_cmp(&e(&w[0]), &e(&w[1])), Ordering::Greater);
        }
        assert_eq!(o.cmp(&e(&[0, 0, 3]), &e(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_with_priority() {
        let o = MonomialOrder::with_priority(OrderKind::Lex, vec![1, 0]);
        assert_eq!(o.cmp(&e(&[5, 0]), &e(&[0, 1])), Ordering::Less);
        let o = MonomialOrder::lex(2);
        assert_eq!(o.cmp(&e(&[1, 0]), &e(&[0, 7])), Ordering::Greater);
    }
}
