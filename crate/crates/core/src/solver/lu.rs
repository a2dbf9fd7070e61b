//! Dense LU factorization with partial pivoting for the simplex basis.

#[derive(Debug, Clone)]
pub struct DenseLu {
    n: usize,
    /// Row-major combined L (unit diagonal, below) and U (on/above).
    lu: Vec<f64>,
    /// Row swap applied at each elimination step.
    ipiv: Vec<usize>,
}

#[derive(Debug)]
pub struct Singular;

impl DenseLu {
    /// Factors the matrix whose k-th column is sparse `cols[basis[k]]`.
    pub fn factor_basis(
        cols: &[Vec<(usize, f64)>],
        basis: &[usize],
    ) -> Result<DenseLu, Singular> {
        let n = basis.len();
        let mut a = vec![0.0; n * n];
        for (k, &col) in basis.iter().enumerate() {
            for &(row, v) in &cols[col] {
                a[row * n + k] = v;
            }
        }
        let mut ipiv = vec![0usize; n];
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].abs();
            for r in k + 1..n {
                let v = a[r * n + k].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best < 1e-12 {
                return Err(Singular);
            }
            ipiv[k] = p;
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
            }
            let pivot = a[k * n + k];
            for r in k + 1..n {
                let factor = a[r * n + k] / pivot;
                a[r * n + k] = factor;
                if factor != 0.0 {
                    for c in k + 1..n {
                        a[r * n + c] -= factor * a[k * n + c];
                    }
                }
            }
        }
        Ok(DenseLu { n, lu: a, ipiv })
    }

    /// Solves `B x = b` in place.
    pub fn solve(&self, b: &mut [f64]) {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.ipiv[k]);
        }
        for k in 0..n {
            let bk = b[k];
            if bk != 0.0 {
                for r in k + 1..n {
                    b[r] -= self.lu[r * n + k] * bk;
                }
            }
        }
        for k in (0..n).rev() {
            b[k] /= self.lu[k * n + k];
            let bk = b[k];
            if bk != 0.0 {
                for r in 0..k {
                    b[r] -= self.lu[r * n + k] * bk;
                }
            }
        }
    }

    /// Solves `B^T y = c` in place.
    pub fn solve_transposed(&self, c: &mut [f64]) {
        let n = self.n;
        // U^T is lower triangular.
        for k in 0..n {
            c[k] /= self.lu[k * n + k];
            let ck = c[k];
            if ck != 0.0 {
                for r in k + 1..n {
                    c[r] -= self.lu[k * n + r] * ck;
                }
            }
        }
        // L^T is unit upper triangular.
        for k in (0..n).rev() {
            let ck = c[k];
            if ck != 0.0 {
                for r in 0..k {
                    c[r] -= self.lu[k * n + r] * ck;
                }
            }
        }
        for k in (0..n).rev() {
            c.swap(k, self.ipiv[k]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_cols(m: &[[f64; 3]; 3]) -> Vec<Vec<(usize, f64)>> {
        (0..3)
            .map(|c| (0..3).filter(|&r| m[r][c] != 0.0).map(|r| (r, m[r][c])).collect())
            .collect()
    }

    #[test]
    fn solve_and_transpose() {
        let m = [[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]];
        let cols = dense_cols(&m);
        let lu = DenseLu::factor_basis(&cols, &[0, 1, 2]).unwrap();

        let x_true = [1.0, -2.0, 3.0];
        let mut b = [0.0; 3];
        for r in 0..3 {
            b[r] = (0..3).map(|c| m[r][c] * x_true[c]).sum();
        }
        lu.solve(&mut b);
        for k in 0..3 {
            assert!((b[k] - x_true[k]).abs() < 1e-12);
        }

        let mut c = [0.0; 3];
        for col in 0..3 {
            c[col] = (0..3).map(|r| m[r][col] * x_true[r]).sum();
        }
        lu.solve_transposed(&mut c);
        for k in 0..3 {
            assert!((c[k] - x_true[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_detected() {
        let m = [[1.0, 2.0, 0.0], [2.0, 4.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(DenseLu::factor_basis(&dense_cols(&m), &[0, 1, 2]).is_err());
    }
}
