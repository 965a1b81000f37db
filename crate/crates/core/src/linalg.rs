//! Dense matrices over an exact field, with deterministic Gaussian
//! elimination.  Pivot choice is always the first nonzero entry in column
//! order, so reduced forms, kernel bases and solutions are reproducible.

use crate::exactfield::Field;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows in matrix".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
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

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(rows, cols, |_, _| f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "matrix shape mismatch");
    Matrix::from_fn(a.rows, a.cols, |r, c| f.add(a.at(r, c), b.at(r, c)))
}

pub fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "matrix shape mismatch");
    Matrix::from_fn(a.rows, a.cols, |r, c| f.sub(a.at(r, c), b.at(r, c)))
}

pub fn neg<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| f.neg(x))
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| f.mul(c, x))
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    Matrix::from_fn(a.rows, b.cols, |r, c| {
        let mut acc = f.zero();
        for k in 0..a.cols {
            acc = f.add(&acc, &f.mul(a.at(r, k), b.at(k, c)));
        }
        acc
    })
}

pub fn is_zero_matrix<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| !f.is_zero(m.at(r, col))) else {
            continue;
        };
        if pr != row {
            for c in 0..m.cols {
                let tmp = m.at(pr, c).clone();
                let old = m.at(row, c).clone();
                m.set(pr, c, old);
                m.set(row, c, tmp);
            }
        }
        let inv = f.inv(m.at(row, col)).expect("pivot is nonzero");
        for c in col..m.cols {
            let v = f.mul(&inv, m.at(row, c));
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r != row && !f.is_zero(m.at(r, col)) {
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.at(r, c), &f.mul(&factor, m.at(row, c)));
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut w = m.clone();
    rref(f, &mut w).len()
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column,
/// ordered by ascending free column index.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut w = m.clone();
    let pivots = rref(f, &mut w);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(w.at(i, free));
        }
        basis.push(v);
    }
    basis
}

/// One solution of `a x = b` with all free variables set to zero, or None
/// if the system is inconsistent.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let mut aug = Matrix::from_fn(a.rows, a.cols + 1, |r, c| {
        if c < a.cols {
            a.at(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![f.zero(); a.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.at(i, a.cols).clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m.at(r, c).clone()
        } else if c - n == r {
            f.one()
        } else {
            f.zero()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(Matrix::from_fn(n, n, |r, c| aug.at(r, n + c).clone()))
}

pub fn is_invertible<F: Field>(f: &F, m: &Matrix<F::Elem>) -> bool {
    m.is_square() && rank(f, m) == m.rows
}

pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    let mut w = m.clone();
    let mut acc = f.one();
    let mut negate = false;
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !f.is_zero(w.at(r, col))) else {
            return f.zero();
        };
        if pr != col {
            negate = !negate;
            for c in 0..n {
                let tmp = w.at(pr, c).clone();
                let old = w.at(col, c).clone();
                w.set(pr, c, old);
                w.set(col, c, tmp);
            }
        }
        let pivot = w.at(col, col).clone();
        acc = f.mul(&acc, &pivot);
        let inv = f.inv(&pivot).expect("pivot nonzero");
        for r in col + 1..n {
            if !f.is_zero(w.at(r, col)) {
                let factor = f.mul(w.at(r, col), &inv);
                for c in col..n {
                    let v = f.sub(w.at(r, c), &f.mul(&factor, w.at(col, c)));
                    w.set(r, c, v);
                }
            }
        }
    }
    if negate {
        f.neg(&acc)
    } else {
        acc
    }
}

/// Incrementally maintained row space in reduced echelon form.  Used for
/// span closures, containment tests and expressing vectors in a basis.
#[derive(Clone, Debug)]
pub struct EchelonSpan<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        EchelonSpan {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let factor = v[p].clone();
                for c in 0..self.ncols {
                    v[c] = f.sub(&v[c], &f.mul(&factor, &row[c]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Insert a vector; returns true when the span grows.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("leading entry nonzero");
        for c in 0..self.ncols {
            v[c] = f.mul(&inv, &v[c]);
        }
        // eliminate the new pivot column from existing rows
        for row in &mut self.rows {
            if !f.is_zero(&row[p]) {
                let factor = row[p].clone();
                for c in 0..self.ncols {
                    row[c] = f.sub(&row[c], &f.mul(&factor, &v[c]));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
}
