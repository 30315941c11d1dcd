use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use super::ring::{Field, IntegralDomain, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix. Keeps a zero of its coefficient ring so that
/// empty matrices still know where they live.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    zero: R,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, like: &R) -> Matrix<R> {
        let zero = like.zero_like();
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, like: &R) -> Matrix<R> {
        let mut m = Matrix::zeros(n, n, like);
        for i in 0..n {
            m[(i, i)] = like.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Matrix<R>> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Structural("ragged matrix rows".into()));
        }
        let zero = rows
            .first()
            .and_then(|row| row.first())
            .map(Ring::zero_like)
            .ok_or_else(|| Error::Structural("empty matrix needs a ring; use zeros".into()))?;
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), zero })
    }

    pub fn from_fn(rows: usize, cols: usize, like: &R, mut f: impl FnMut(usize, usize) -> R) -> Matrix<R> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, zero: like.zero_like() }
    }

    pub fn from_columns(cols: &[Vec<R>], rows: usize, like: &R) -> Matrix<R> {
        Matrix::from_fn(rows, cols.len(), like, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn transpose(&self) -> Matrix<R> {
        Matrix::from_fn(self.cols, self.rows, &self.zero, |i, j| self[(j, i)].clone())
    }

    pub fn map<S: Ring>(&self, like: &S, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: like.zero_like(),
        }
    }

    pub fn try_map<S: Ring>(&self, like: &S, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
            zero: like.zero_like(),
        })
    }

    pub fn try_mul(&self, o: &Matrix<R>) -> Result<Matrix<R>> {
        if self.cols != o.rows {
            return Err(Error::Structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let t = a.clone() * b;
                        let cell = &mut out[(i, j)];
                        *cell = std::mem::replace(cell, self.zero.clone()) + &t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, o: &Matrix<R>, f: impl Fn(&R, &R) -> R) -> Result<Matrix<R>> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Structural("matrix shapes differ".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn try_add(&self, o: &Matrix<R>) -> Result<Matrix<R>> {
        self.zip_with(o, |a, b| a.clone() + b)
    }

    pub fn try_sub(&self, o: &Matrix<R>) -> Result<Matrix<R>> {
        self.zip_with(o, |a, b| a.clone() - b)
    }

    pub fn scale(&self, s: &R) -> Matrix<R> {
        self.map(&self.zero, |a| a.clone() * s)
    }

    pub fn neg(&self) -> Matrix<R> {
        self.map(&self.zero, |a| -a.clone())
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(self.zero.clone(), |acc, i| acc + &self[(i, i)])
    }

    /// Columns of `self` followed by columns of `o`.
    pub fn hstack(&self, o: &Matrix<R>) -> Result<Matrix<R>> {
        if self.rows != o.rows {
            return Err(Error::Structural("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + o.cols, &self.zero, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<R> {
        Matrix::from_fn(rows.len(), cols.len(), &self.zero, |i, j| self[(rows[i], cols[j])].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<R: IntegralDomain> Matrix<R> {
    /// Fraction-free elimination over rings, ordinary elimination over fields.
    pub fn det(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::Structural(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        if R::IS_FIELD {
            self.det_elimination()
        } else {
            self.det_bareiss()
        }
    }

    pub fn det_bareiss(&self) -> Result<R> {
        let n = self.rows;
        let one = self.zero.one_like();
        if n == 0 {
            return Ok(one);
        }
        let mut m = self.clone();
        let mut prev = one;
        let mut negate = false;
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(self.zero.clone()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m[(i, j)].clone() * &m[(k, k)] - m[(i, k)].clone() * &m[(k, j)];
                    m[(i, j)] = t.div_exact(&prev)?;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }

    fn det_elimination(&self) -> Result<R> {
        let n = self.rows;
        let mut det = self.zero.one_like();
        let mut m = self.clone();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(self.zero.clone());
            };
            if p != k {
                m.swap_rows(k, p);
                det = -det;
            }
            let piv = m[(k, k)].clone();
            det = det * &piv;
            for i in k + 1..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let f = m[(i, k)].div_exact(&piv)?;
                for j in k + 1..n {
                    let t = f.clone() * &m[(k, j)];
                    m[(i, j)] = m[(i, j)].clone() - &t;
                }
                m[(i, k)] = self.zero.clone();
            }
        }
        Ok(det)
    }

    /// Transposed cofactor matrix, so `m * adj(m) = det(m) * I`.
    pub fn adjugate(&self) -> Result<Matrix<R>> {
        if !self.is_square() {
            return Err(Error::Structural("adjugate of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Matrix::identity(1, &self.zero));
        }
        let mut out = Matrix::zeros(n, n, &self.zero);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let d = self.submatrix(&rows, &cols).det()?;
                out[(i, j)] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        Ok(out)
    }
}

impl<R: Field> Matrix<R> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> Result<(Matrix<R>, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv()?;
            for j in c..self.cols {
                m[(r, j)] = m[(r, j)].clone() * &inv;
            }
            for i in 0..self.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..self.cols {
                    if !m[(r, j)].is_zero() {
                        let t = f.clone() * &m[(r, j)];
                        m[(i, j)] = m[(i, j)].clone() - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Echelon basis of the right kernel: one vector per free column, with a
    /// 1 in that column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<R>>> {
        let (m, pivots) = self.rref()?;
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.zero.clone(); self.cols];
            v[f] = self.zero.one_like();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, f)].clone();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn inverse(&self) -> Result<Matrix<R>> {
        if !self.is_square() {
            return Err(Error::Structural("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n, &self.zero))?;
        let (m, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(m.submatrix(&rows, &cols))
    }

    /// Some solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[R]) -> Result<Option<Vec<R>>> {
        let col = Matrix::from_fn(self.rows, 1, &self.zero, |i, _| b[i].clone());
        let aug = self.hstack(&col)?;
        let (m, pivots) = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, o: &Matrix<R>) -> Matrix<R> {
        self.try_mul(o).expect("matrix shapes")
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{parse_mpoly, MPoly, Vars};
    use crate::algebra::rat::{rat, Rat};

    fn q(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(Matrix::identity(2, &rat(0)).det().unwrap(), rat(1));
        assert_eq!(Matrix::identity(0, &rat(0)).det().unwrap(), rat(1));
    }

    #[test]
    fn non_square_determinant_is_structural() {
        assert!(matches!(q(&[&[1, 2]]).det(), Err(Error::Structural(_))));
    }

    #[test]
    fn bareiss_over_polynomials() {
        let p = |s: &str| parse_mpoly(&Vars::xyz(), s).unwrap();
        let m = Matrix::from_rows(vec![vec![p("x"), p("y")], vec![p("z"), p("x + 1")]]).unwrap();
        assert_eq!(m.det().unwrap(), p("x^2 + x - y*z"));
        let z = MPoly::zero(&Vars::xyz());
        let m = Matrix::from_rows(vec![
            vec![z.clone(), p("1"), p("x")],
            vec![p("1"), z.clone(), p("y")],
            vec![p("x"), p("y"), z],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), p("2*x*y"));
    }

    #[test]
    fn kernels() {
        assert_eq!(Matrix::zeros(3, 3, &rat(0)).kernel_basis().unwrap().len(), 3);
        assert!(Matrix::identity(3, &rat(0)).kernel_basis().unwrap().is_empty());
        assert_eq!(q(&[&[1, 1], &[1, 1]]).kernel_basis().unwrap(), vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn inverse_and_adjugate() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3, &rat(0)));
        let adj = m.adjugate().unwrap();
        assert_eq!(&m * &adj, Matrix::identity(3, &rat(0)).scale(&m.det().unwrap()));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = q(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&[rat(1), rat(2)]).unwrap(), Some(vec![rat(1), rat(0)]));
        assert_eq!(m.solve(&[rat(1), rat(3)]).unwrap(), None);
    }
}
