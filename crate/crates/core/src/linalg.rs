//! Thin column-major complex matrix type with the two LAPACK/BLAS calls the
//! engines need: Hermitian eigendecomposition (zheevd) and dense matrix
//! products (zgemm). Linked against the system OpenBLAS.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use openblas_src as _;

extern "C" {
    fn zheevd_(
        jobz: *const u8,
        uplo: *const u8,
        n: *const i32,
        a: *mut C64,
        lda: *const i32,
        w: *mut f64,
        work: *mut C64,
        lwork: *const i32,
        rwork: *mut f64,
        lrwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
    fn zgemm_(
        transa: *const u8,
        transb: *const u8,
        m: *const i32,
        n: *const i32,
        k: *const i32,
        alpha: *const C64,
        a: *const C64,
        lda: *const i32,
        b: *const C64,
        ldb: *const i32,
        beta: *const C64,
        c: *mut C64,
        ldc: *const i32,
    );
}

/// Dense column-major complex matrix.
#[derive(Clone, Debug)]
pub struct ColMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ColMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ColMat {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut C64 {
        &mut self.data[j * self.rows + i]
    }

    /// Column `j` as a slice.
    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn from_raw(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        ColMat { rows, cols, data }
    }

    /// Max |A - A^dagger| entry, for Hermiticity checks.
    pub fn hermiticity_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst = 0.0f64;
        for j in 0..self.cols {
            for i in 0..=j {
                let d = (self.at(i, j) - self.at(j, i).conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }
}

/// Eigendecomposition of a Hermitian matrix (divide and conquer).
///
/// Consumes the matrix; on return the eigenvectors occupy its storage
/// (column j is the eigenvector for `values[j]`, ascending).
pub fn eigh_in_place(mut mat: ColMat) -> Result<(Vec<f64>, ColMat)> {
    assert_eq!(mat.rows, mat.cols, "eigh needs a square matrix");
    let n = mat.rows;
    if n == 0 {
        return Ok((Vec::new(), mat));
    }
    if n > i32::MAX as usize {
        return Err(Error::InvalidParam(format!("matrix dimension {n} too large")));
    }
    let nn = n as i32;
    let (jobz, uplo) = (b'V', b'L');
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;

    // Workspace query.
    let mut wkopt = C64::new(0.0, 0.0);
    let mut rwkopt = 0.0f64;
    let mut iwkopt = 0i32;
    let query = -1i32;
    unsafe {
        zheevd_(
            &jobz, &uplo, &nn, mat.data.as_mut_ptr(), &nn, w.as_mut_ptr(),
            &mut wkopt, &query, &mut rwkopt, &query, &mut iwkopt, &query, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::InvalidParam(format!("zheevd workspace query failed: info = {info}")));
    }
    let lwork = wkopt.re as i32;
    let lrwork = rwkopt as i32;
    let liwork = iwkopt;
    let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
    let mut rwork = vec![0.0f64; lrwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        zheevd_(
            &jobz, &uplo, &nn, mat.data.as_mut_ptr(), &nn, w.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, rwork.as_mut_ptr(), &lrwork,
            iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::InvalidParam(format!("zheevd failed: info = {info}")));
    }
    Ok((w, mat))
}

/// C = A * B for column-major dense matrices.
pub fn gemm_nn(a: &ColMat, b: &ColMat) -> ColMat {
    assert_eq!(a.cols, b.rows, "gemm dimension mismatch");
    let mut c = ColMat::zeros(a.rows, b.cols);
    if a.rows == 0 || b.cols == 0 || a.cols == 0 {
        return c;
    }
    let (m, n, k) = (a.rows as i32, b.cols as i32, a.cols as i32);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    unsafe {
        zgemm_(
            &b'N', &b'N', &m, &n, &k, &one, a.data.as_ptr(), &m,
            b.data.as_ptr(), &(b.rows as i32), &zero, c.data.as_mut_ptr(), &m,
        );
    }
    c
}
