use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense exact matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| super::dot(self.row(i), v)).collect())
    }

    pub fn checked_mul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form; returns the pivot columns.
    ///
    /// Pivots are chosen as the entry with the smallest numerator+denominator
    /// size in the column, which keeps intermediate fractions small.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows)
                .filter(|&i| !self[(i, c)].is_zero())
                .min_by_key(|&i| entry_size(&self[(i, c)]))
            else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(r, j)] * &f;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<MatrixQ> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn entry_size(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

impl Index<(usize, usize)> for MatrixQ {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatrixQ {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &MatrixQ {
    type Output = MatrixQ;
    fn mul(self, rhs: &MatrixQ) -> MatrixQ {
        self.checked_mul(rhs).expect("matrix shapes agree")
    }
}

/// Exact determinant by Gaussian elimination.
pub fn det(m: &MatrixQ) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut acc = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            a.swap_rows(p, c);
            acc = -acc;
        }
        let pivot = a[(c, c)].clone();
        acc *= &pivot;
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] / &pivot;
            for j in c..n {
                let v = &a[(c, j)] * &f;
                a[(i, j)] -= v;
            }
        }
    }
    Ok(acc)
}

/// Solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// `particular + span(basis)`, with `basis` non-empty.
    Family {
        particular: Vec<Rational>,
        basis: Vec<Vec<Rational>>,
    },
}

impl LinearSolution {
    /// Any one solution, if the system is consistent.
    pub fn any(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            LinearSolution::Family { particular, .. } => Some(particular),
            LinearSolution::Inconsistent => None,
        }
    }
}

pub fn solve_linear(a: &MatrixQ, b: &[Rational]) -> Result<LinearSolution> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows against right-hand side of length {}",
            a.rows,
            b.len()
        )));
    }
    let n = a.cols;
    let mut aug = MatrixQ::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Ok(LinearSolution::Unique(particular));
    }
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -aug[(r, f)].clone();
            }
            v
        })
        .collect();
    Ok(LinearSolution::Family { particular, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{frac, int, int_vec};

    fn m(rows: &[&[i64]]) -> MatrixQ {
        MatrixQ::from_rows(&rows.iter().map(|r| int_vec(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&MatrixQ::identity(2)).unwrap(), int(1));
        assert_eq!(det(&m(&[&[1, 2], &[3, 4]])).unwrap(), int(-2));
        assert_eq!(det(&MatrixQ::zeros(0, 0)).unwrap(), int(1));
        assert!(matches!(
            det(&MatrixQ::zeros(2, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_cases() {
        let b = vec![frac(1, 2), int(-3)];
        assert_eq!(
            solve_linear(&MatrixQ::identity(2), &b).unwrap(),
            LinearSolution::Unique(b.clone())
        );
        assert_eq!(
            solve_linear(&MatrixQ::zeros(1, 1), &[int(1)]).unwrap(),
            LinearSolution::Inconsistent
        );
        let a = m(&[&[1, 1, 1], &[1, -1, 2]]);
        let rhs = int_vec(&[3, 1]);
        let LinearSolution::Family { particular, basis } = solve_linear(&a, &rhs).unwrap() else {
            panic!("expected a family");
        };
        assert_eq!(basis.len(), 1);
        assert_eq!(a.mul_vec(&particular).unwrap(), rhs);
        for k in -3..=3 {
            let x: Vec<_> = particular
                .iter()
                .zip(&basis[0])
                .map(|(p, v)| p + v * int(k))
                .collect();
            assert_eq!(a.mul_vec(&x).unwrap(), rhs);
        }
    }

    #[test]
    fn inverse_and_nullspace() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, MatrixQ::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let ns = m(&[&[1, 2, 3]]).nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(crate::numeric::dot(&v, &int_vec(&[1, 2, 3])), int(0));
        }
    }
}
