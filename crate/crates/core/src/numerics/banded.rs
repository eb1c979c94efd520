//! Banded LU factorization with partial pivoting for complex systems.
//!
//! Storage follows the LAPACK `gbtrf` layout: an `n x n` matrix with `kl`
//! sub-diagonals and `ku` super-diagonals is held in a `(2*kl + ku + 1) x n`
//! array so that `A[i][j]` lives at `ab[kl + ku + i - j][j]`. The extra `kl`
//! rows absorb fill-in from row swaps.

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    /// Row-major band storage, `ldab = 2*kl + ku + 1` rows of length `n`.
    ab: Vec<Complex64>,
}

#[derive(Debug, thiserror::Error)]
pub enum BandError {
    #[error("singular band matrix: zero pivot at column {0}")]
    Singular(usize),
    #[error("index ({i},{j}) outside band kl={kl} ku={ku}")]
    OutOfBand { i: usize, j: usize, kl: usize, ku: usize },
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        BandMatrix { n, kl, ku, ab: vec![Complex64::new(0.0, 0.0); ldab * n] }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        (self.kl + self.ku + i - j) * self.n + j
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert!(j + self.kl >= i && i + self.ku >= j, "({i},{j}) outside band");
        let k = self.idx(i, j);
        self.ab[k] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        let k = self.idx(i, j);
        self.ab[k] += v;
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> Complex64 {
        self.ab[self.idx(i, j)]
    }

    /// Factor in place and solve `A x = b`, overwriting `b` with the solution.
    pub fn solve_in_place(mut self, b: &mut [Complex64]) -> Result<(), BandError> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let mut piv = vec![0usize; n];

        for j in 0..n {
            // pivot search over the kl rows below the diagonal
            let imax = (j + kl).min(n - 1);
            let mut p = j;
            let mut pmag = self.get(j, j).norm_sqr();
            for i in (j + 1)..=imax {
                let m = self.get(i, j).norm_sqr();
                if m > pmag {
                    pmag = m;
                    p = i;
                }
            }
            if pmag == 0.0 {
                return Err(BandError::Singular(j));
            }
            piv[j] = p;
            let jmax = (j + kl + ku).min(n - 1);
            if p != j {
                for k in j..=jmax {
                    let a = self.idx(j, k);
                    let b2 = self.idx(p, k);
                    self.ab.swap(a, b2);
                }
            }
            let pivot = self.get(j, j);
            for i in (j + 1)..=imax {
                let m = self.get(i, j) / pivot;
                self.set(i, j, m);
                for k in (j + 1)..=jmax {
                    let upd = m * self.get(j, k);
                    let a = self.idx(i, k);
                    self.ab[a] -= upd;
                }
            }
        }

        // forward: apply pivots and L
        for j in 0..n {
            if piv[j] != j {
                b.swap(j, piv[j]);
            }
            let imax = (j + kl).min(n - 1);
            let bj = b[j];
            for i in (j + 1)..=imax {
                b[i] -= self.get(i, j) * bj;
            }
        }
        // back substitution with U (bandwidth kl+ku after fill-in)
        for j in (0..n).rev() {
            let jmax = (j + kl + ku).min(n - 1);
            let mut s = b[j];
            for k in (j + 1)..=jmax {
                s -= self.get(j, k) * b[k];
            }
            b[j] = s / self.get(j, j);
        }
        Ok(())
    }
}
