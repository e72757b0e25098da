use super::{MPoly, Ring};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::par::Exec;
use crate::rat::Rat;

/// Dense matrix of polynomials over one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged polynomial matrix".into()));
        }
        for p in rows.iter().flatten() {
            if p.ring() != ring {
                return Err(Error::RingMismatch("matrix entry over a different ring".into()));
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<MPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Evaluates every entry at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<QMatrix> {
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.evaluate(point)).collect())
            .collect::<Result<Vec<Vec<Rat>>>>()?;
        QMatrix::from_rows(rows).map(|m| {
            if self.rows == 0 {
                QMatrix::zeros(0, self.cols)
            } else {
                m
            }
        })
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<MPoly> {
        self.det_with(Exec::default())
    }

    pub fn det_with(&self, exec: Exec) -> Result<MPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let rows = self.to_rows();
        Ok(bareiss(&self.ring, rows, exec))
    }

    /// All `k × k` minors, rows and columns taken in lexicographic order of
    /// their index subsets. Zero minors are kept.
    pub fn minors(&self, k: usize) -> Vec<MPoly> {
        self.minors_with(k, Exec::default())
    }

    pub fn minors_with(&self, k: usize, exec: Exec) -> Vec<MPoly> {
        let rsets = subsets(self.rows, k);
        let csets = subsets(self.cols, k);
        let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = rsets
            .iter()
            .flat_map(|r| csets.iter().map(move |c| (r, c)))
            .collect();
        exec.map(&pairs, |(r, c)| {
            let sub = self.submatrix(r, c);
            if k <= 4 {
                cofactor_det(&sub.ring, &sub.to_rows())
            } else {
                bareiss(&sub.ring, sub.to_rows(), Exec::Sequential)
            }
        })
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Laplace expansion along the first row.
pub fn cofactor_det(ring: &Ring, m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    match n {
        0 => return MPoly::one(ring),
        1 => return m[0][0].clone(),
        2 => return &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {}
    }
    let mut acc = MPoly::zero(ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(ring, &minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Bareiss elimination with row pivoting. The pivot in each column is the
/// nonzero candidate with the fewest terms; every division is exact.
fn bareiss(ring: &Ring, mut m: Vec<Vec<MPoly>>, exec: Exec) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one(ring);
    }
    let mut negate = false;
    let mut prev = MPoly::one(ring);
    for k in 0..n - 1 {
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].nterms());
        let Some(p) = pivot else {
            return MPoly::zero(ring);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let prev_ref = &prev;
        exec.for_each_mut(tail, |_, row| {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &(&pivot_row[k] * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = num
                    .divide_exact(prev_ref)
                    .expect("same ring")
                    .expect("Bareiss step must divide exactly");
            }
            row[k] = MPoly::zero(ring);
        });
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring() -> Ring {
        Ring::new(["x", "y", "z", "w"])
    }

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        let r = ring();
        PolyMatrix::from_rows(
            &r,
            rows.iter()
                .map(|row| row.iter().map(|s| parse_poly(s, &r).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn binary_cubic_determinant() {
        let a = mat(&[
            &["3*x", "2*y", "z", "0"],
            &["0", "3*x", "2*y", "z"],
            &["y", "2*z", "3*w", "0"],
            &["0", "y", "2*z", "3*w"],
        ]);
        let d = a.det().unwrap();
        let q = parse_poly(
            "-y^2*z^2 + 4*w*y^3 + 4*x*z^3 - 18*w*x*y*z + 27*w^2*x^2",
            &ring(),
        )
        .unwrap();
        assert_eq!(d.is_scalar_multiple(&q), Some(Rat::from(3)));
        assert_eq!(d, cofactor_det(&ring(), &a.to_rows()));
        assert_eq!(a.det_with(Exec::Sequential).unwrap(), d);
    }

    #[test]
    fn pivot_swaps_track_sign() {
        let a = mat(&[&["0", "x"], &["y", "0"]]);
        assert_eq!(a.det().unwrap(), parse_poly("-x*y", &ring()).unwrap());
        let s = mat(&[&["x", "y"], &["x", "y"]]);
        assert!(s.det().unwrap().is_zero());
        assert!(mat(&[&["x", "y"]]).det().is_err());
    }

    #[test]
    fn minors_and_subsets() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        let a = mat(&[&["x", "y", "z"], &["y", "z", "w"]]);
        let m = a.minors(2);
        assert_eq!(m.len(), 3);
        assert_eq!(m[0], parse_poly("x*z - y^2", &ring()).unwrap());
    }
}
