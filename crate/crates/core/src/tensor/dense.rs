//! Small dense matrices over [`Coefficient`], for trace-formula evaluation.

use num_complex::Complex64;

use crate::poly::{Coefficient, Ring, FLOAT_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Coefficient>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Coefficient::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: Ring, d: usize) -> Self {
        let mut m = Matrix::zeros(ring, d, d);
        for i in 0..d {
            m.set(i, i, Coefficient::one(ring));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Coefficient>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_complex(rows: usize, cols: usize, data: &[Complex64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: data.iter().map(|&c| Coefficient::Float(c)).collect(),
        }
    }

    /// Gaussian-integer entries scaled by `1/den`.
    pub fn gaussian(rows: usize, cols: usize, entries: &[(i64, i64)], den: i64) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let inv = Coefficient::from_ratio(Ring::Exact, 1, den);
        Matrix {
            rows,
            cols,
            data: entries
                .iter()
                .map(|&(re, im)| Coefficient::gaussian(Ring::Exact, re, im).mul(&inv))
                .collect(),
        }
    }

    pub fn column(v: Vec<Coefficient>) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        if self.data.iter().any(|c| c.ring() == Ring::Float) {
            Ring::Float
        } else {
            Ring::Exact
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Coefficient {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coefficient) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_float(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Coefficient::to_float).collect(),
        }
    }

    pub fn adjoint(&self) -> Matrix {
        let mut m = Matrix::zeros(self.ring(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).conj());
            }
        }
        m
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let ring = if self.ring() == Ring::Float || o.ring() == Ring::Float {
            Ring::Float
        } else {
            Ring::Exact
        };
        let mut m = Matrix::zeros(ring, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let i = r * m.cols + c;
                    m.data[i] = m.data[i].add(&a.mul(b));
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Coefficient) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(k)).collect(),
        }
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        let ring = if self.ring() == Ring::Float || o.ring() == Ring::Float {
            Ring::Float
        } else {
            Ring::Exact
        };
        let mut m = Matrix::zeros(ring, self.rows * o.rows, self.cols * o.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..o.rows {
                    for c2 in 0..o.cols {
                        m.set(r1 * o.rows + r2, c1 * o.cols + c2, a.mul(o.get(r2, c2)));
                    }
                }
            }
        }
        m
    }

    pub fn trace(&self) -> Coefficient {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(Coefficient::zero(self.ring()), |acc, i| {
            acc.add(self.get(i, i))
        })
    }

    /// Tr(self† o) without forming the product.
    pub fn inner(&self, o: &Matrix) -> Coefficient {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut acc = Coefficient::zero(self.ring());
        for (a, b) in self.data.iter().zip(&o.data) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc.add(&a.conj().mul(b));
            }
        }
        acc
    }

    pub fn approx_eq(&self, o: &Matrix, tol: f64) -> bool {
        (self.rows, self.cols) == (o.rows, o.cols)
            && self
                .data
                .iter()
                .zip(&o.data)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.approx_eq(&Matrix::identity(self.ring(), self.rows), FLOAT_TOL)
    }
}

pub fn pauli_matrix(p: crate::pauli::Pauli1) -> Matrix {
    use crate::pauli::Pauli1::*;
    let e = |v: &[(i64, i64)]| Matrix::gaussian(2, 2, v, 1);
    match p {
        I => e(&[(1, 0), (0, 0), (0, 0), (1, 0)]),
        X => e(&[(0, 0), (1, 0), (1, 0), (0, 0)]),
        Y => e(&[(0, 0), (0, -1), (0, 1), (0, 0)]),
        Z => e(&[(1, 0), (0, 0), (0, 0), (-1, 0)]),
    }
}

/// ζ_M^k with ζ_M = exp(2πi/M); exact for M ∈ {1, 2, 4}.
pub fn zeta(m: u32, k: i64) -> Coefficient {
    let k = k.rem_euclid(m as i64);
    match (m, k) {
        (_, 0) => Coefficient::one(Ring::Exact),
        (2, 1) => Coefficient::from_int(Ring::Exact, -1),
        (4, 1) => Coefficient::gaussian(Ring::Exact, 0, 1),
        (4, 2) => Coefficient::from_int(Ring::Exact, -1),
        (4, 3) => Coefficient::gaussian(Ring::Exact, 0, -1),
        _ => {
            let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            Coefficient::Float(Complex64::new(t.cos(), t.sin()))
        }
    }
}

/// Clock operator Z_M^α = diag(ζ^{αj}).
pub fn clock_matrix(m: u32, alpha: u32) -> Matrix {
    let ring = if matches!(m, 2 | 4) {
        Ring::Exact
    } else {
        Ring::Float
    };
    let mut z = Matrix::zeros(ring, m as usize, m as usize);
    for j in 0..m as usize {
        z.set(j, j, zeta(m, alpha as i64 * j as i64).to_ring(ring));
    }
    z
}
