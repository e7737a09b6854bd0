//! Row echelon forms over the rationals, sparse and dense.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::ring::Rational;

/// A sparse vector: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Incrementally maintained echelon basis. Each stored row is monic and its
/// pivot is its smallest column; no two rows share a pivot.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivots: HashMap<usize, usize>,
}

fn axpy(row: &SparseRow, c: &Rational, other: &SparseRow) -> SparseRow {
    // row - c * other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() && j < other.len() {
        let (ci, cj) = (row[i].0, other[j].0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(c * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - c * &other[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend(row[i..].iter().cloned());
    out.extend(other[j..].iter().map(|(k, v)| (*k, -(c * v))));
    out
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Reduces `row` against the stored rows until its leading column is not
    /// a pivot. Returns the reduced row (possibly empty).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((col, c)) = row.first().cloned() {
            match self.pivots.get(&col) {
                Some(&k) => row = axpy(&row, &c, &self.rows[k]),
                None => break,
            }
        }
        row
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, v) in &mut row {
                *v *= &inv;
            }
        }
        self.pivots.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Fully reduces `row` (every entry, not just the leading one).
    pub fn reduce_fully(&self, row: SparseRow) -> SparseRow {
        let mut row = row;
        let mut pos = 0;
        while pos < row.len() {
            let col = row[pos].0;
            if let Some(&k) = self.pivots.get(&col) {
                let c = row[pos].1.clone();
                row = axpy(&row, &c, &self.rows[k]);
            } else {
                pos += 1;
            }
        }
        row
    }
}

/// Finds the first linear dependency of `vectors[last]` on the earlier ones,
/// all given as dense coordinate vectors of length `dim`. Returns the
/// coefficients `c` with `v_last = sum c_i v_i`, or `None` if independent.
pub fn express_in_span(vectors: &[SparseRow]) -> Option<Vec<Rational>> {
    let k = vectors.len() - 1;
    // Track combinations by augmenting each row with a unit marker column
    // placed after all real columns.
    let offset = vectors.iter().flat_map(|v| v.iter().map(|(c, _)| *c + 1)).max().unwrap_or(0);
    let mut ech = Echelon::new();
    for (i, v) in vectors[..k].iter().enumerate() {
        let mut row = v.clone();
        row.push((offset + i, Rational::one()));
        ech.insert(row);
    }
    let mut target = vectors[k].clone();
    target.push((offset + k, Rational::one()));
    let reduced = ech.reduce_fully(target);
    if reduced.iter().any(|(c, _)| *c < offset) {
        return None;
    }
    // reduced = v_k - sum c_i v_i expressed via markers: marker_k coefficient 1,
    // marker_i coefficient equals -c_i.
    let mut coeffs = vec![Rational::zero(); k];
    for (c, v) in reduced {
        if c >= offset && c - offset < k {
            coeffs[c - offset] = -v;
        }
    }
    Some(coeffs)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for k in 0..cols {
                    let d = &factor * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel of a dense matrix.
pub fn kernel(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = m.first().map_or(0, Vec::len);
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Rank of a dense matrix.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(&mut m.to_vec()).len()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::int;

    #[test]
    fn rank_of_dependent_rows() {
        let mut e = Echelon::new();
        assert!(e.insert(vec![(0, int(1)), (1, int(2))]));
        assert!(e.insert(vec![(1, int(1)), (2, int(1))]));
        assert!(!e.insert(vec![(0, int(2)), (1, int(5)), (2, int(1))]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn dependency_coefficients() {
        let v0 = vec![(0, int(1))];
        let v1 = vec![(1, int(1))];
        let v2 = vec![(0, int(3)), (1, int(-2))];
        let c = express_in_span(&[v0, v1, v2]).unwrap();
        assert_eq!(c, vec![int(3), int(-2)]);
        assert!(express_in_span(&[vec![(0, int(1))], vec![(1, int(1))]]).is_none());
    }
}
