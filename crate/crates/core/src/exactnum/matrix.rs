//! Small dense matrices over ℚ(ζ_N).

use std::fmt;
use std::sync::Arc;

use super::field::CycField;
use super::scalar::CycScalar;
use super::ExactError;

/// Row-major dense matrix with CycScalar entries.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycScalar>,
}

impl CycMatrix {
    pub fn zeros(field: &Arc<CycField>, rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            data: vec![CycScalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, CycScalar::one(field));
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(field: &Arc<CycField>, rows: Vec<Vec<CycScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn scalar(v: CycScalar) -> Self {
        CycMatrix {
            rows: 1,
            cols: 1,
            data: vec![v],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycScalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        CycMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let f = self.field_or(o);
        let mut m = Self::zeros(&f, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = CycScalar::zero(&f);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    fn field_or(&self, o: &Self) -> Arc<CycField> {
        self.data
            .first()
            .or_else(|| o.data.first())
            .map(|v| v.field().clone())
            .expect("field of an empty matrix product is unknown")
    }

    /// Inverse by Gauss–Jordan elimination; errors on singular input.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Singular);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let f = self.data[0].field().clone();
        let mut a = self.clone();
        let mut inv = Self::identity(&f, n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(ExactError::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            let p = a.get(col, col).inverse()?;
            for j in 0..n {
                let v = a.get(col, j) * &p;
                a.set(col, j, v);
                let w = inv.get(col, j) * &p;
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let fct = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &(&fct * a.get(col, j));
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &(&fct * inv.get(col, j));
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
