//! Jacobi–Trudi matrices, the minor/part-deletion dictionary, and generic entries.
//!
//! Entry `(i, j)` of the matrix for `lambda/mu` is `h_{lambda_j - mu_i - j + i}`, so rows
//! are indexed by parts of `mu` and columns by parts of `lambda`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{complete_homogeneous, MultiPoly, Var};
use crate::shapes::{Semipartition, Shape};

/// The `h`-indices `lambda_j - mu_i - j + i` for `rows` parts of `mu` and `cols` parts of `lambda`.
fn raw_indices(lambda: &Semipartition, mu: &Semipartition, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (1..=rows)
        .map(|i| (1..=cols).map(|j| lambda.part(j) - mu.part(i) - j as i64 + i as i64).collect())
        .collect()
}

fn h_matrix(indices: &[Vec<i64>], cols: usize, n: u32) -> Result<Matrix<MultiPoly>> {
    if n == 0 {
        return Err(Error::InvalidRange { lo: 1, hi: 0 });
    }
    let entries = indices
        .iter()
        .flatten()
        .map(|&r| complete_homogeneous(r, 1, n as i64))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(indices.len(), cols, entries)
}

/// The `h`-index of every entry of the Jacobi–Trudi matrix of `sh`.
pub fn jt_indices(sh: &Shape) -> Vec<Vec<i64>> {
    let m = sh.length();
    raw_indices(sh.lambda(), sh.mu(), m, m)
}

/// The `m x m` Jacobi–Trudi matrix of `sh` in `x_1, ..., x_n`, `m = length(sh)`.
pub fn jt_matrix(sh: &Shape, n: u32) -> Result<Matrix<MultiPoly>> {
    let m = sh.length();
    h_matrix(&jt_indices(sh), m, n)
}

/// Outcome of a minor/part-deletion comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionVerdict {
    pub pass: bool,
    pub detail: Option<String>,
}

/// Compares `delete_rowcols(jt(sh), rowdel, coldel)` with the matrix built from
/// `mu` with parts `rowdel` deleted and `lambda` with parts `coldel` deleted.
pub fn check_minor_deletion(sh: &Shape, n: u32, rowdel: &[usize], coldel: &[usize]) -> Result<DeletionVerdict> {
    let m = sh.length();
    let minor = jt_matrix(sh, n)?.delete_rowcols(rowdel, coldel)?;
    let mut rows = rowdel.to_vec();
    let mut cols = coldel.to_vec();
    rows.sort_unstable();
    cols.sort_unstable();
    let mu = sh.mu().delete_parts(&rows)?;
    let lambda = sh.lambda().delete_parts(&cols)?;
    let (r, c) = (m - rows.len(), m - cols.len());
    let expected = h_matrix(&raw_indices(&lambda, &mu, r, c), c, n)?;
    if minor.rows() != expected.rows() || minor.cols() != expected.cols() {
        return Ok(DeletionVerdict {
            pass: false,
            detail: Some(format!(
                "minor is {}x{}, deleted-part matrix is {}x{}",
                minor.rows(),
                minor.cols(),
                expected.rows(),
                expected.cols()
            )),
        });
    }
    for i in 1..=r {
        for j in 1..=c {
            if minor.get(i, j) != expected.get(i, j) {
                return Ok(DeletionVerdict {
                    pass: false,
                    detail: Some(format!("entry ({i},{j}): {} != {}", minor.get(i, j), expected.get(i, j))),
                });
            }
        }
    }
    Ok(DeletionVerdict { pass: true, detail: None })
}

/// The shape obtained from `sh` by deleting parts `rowdel` of `mu` and `coldel` of
/// `lambda`, when the two deletions have the same size.
pub fn deleted_shape(sh: &Shape, rowdel: &[usize], coldel: &[usize]) -> Result<Shape> {
    if rowdel.len() != coldel.len() {
        return Err(Error::DimensionMismatch(format!("{rowdel:?} and {coldel:?} differ in size")));
    }
    Shape::new(sh.lambda().delete_parts(coldel)?, sh.mu().delete_parts(rowdel)?)
}

/// `lambda_j = (m - j + 1) * m`, a partition whose Jacobi–Trudi entries all carry
/// different `h`-indices.
pub fn distinct_entry_partition(m: usize) -> Semipartition {
    assert!(m >= 1, "m must be positive");
    let parts: Vec<i64> = (1..=m).map(|j| ((m - j + 1) * m) as i64).collect();
    let lambda = Semipartition::partition(&parts).expect("decreasing positive parts");
    let indices: Vec<i64> = jt_indices(&Shape::straight(lambda.clone())).into_iter().flatten().collect();
    let distinct: HashSet<i64> = indices.iter().copied().collect();
    assert_eq!(distinct.len(), m * m, "indices of {lambda} are not distinct");
    lambda
}

/// Replaces `h_r` by `y_r` (`h_0` by 1, `h_{r<0}` by 0) in the Jacobi–Trudi matrix of `sh`.
/// Rejects shapes where two entries carry the same positive index.
pub fn genericize(sh: &Shape) -> Result<Matrix<MultiPoly>> {
    let idx = jt_indices(sh);
    let mut seen = HashSet::new();
    for &r in idx.iter().flatten() {
        if r > 0 && !seen.insert(r) {
            return Err(Error::InvalidParameters(format!("h-index {r} occurs twice in the matrix of {sh}")));
        }
    }
    let m = sh.length();
    Ok(Matrix::from_fn(m, m, |i, j| {
        let r = idx[i - 1][j - 1];
        match r {
            r if r < 0 => MultiPoly::zero(),
            0 => MultiPoly::one(),
            r => MultiPoly::var(Var::y(r)),
        }
    }))
}

/// Specializes a generic matrix back: `y_r -> h_r(x_1..x_n)`.
pub fn specialize_generic(a: &Matrix<MultiPoly>, n: u32) -> Result<Matrix<MultiPoly>> {
    let entries = a
        .to_rows()
        .into_iter()
        .flatten()
        .map(|e| specialize_entry(&e, n))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(a.rows(), a.cols(), entries)
}

fn specialize_entry(p: &MultiPoly, n: u32) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for (mono, c) in p.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for (v, e) in mono.iter() {
            let r = v
                .y_index()
                .ok_or_else(|| Error::InvalidParameters(format!("{v} is not a y-variable")))?;
            let h = complete_homogeneous(r, 1, n as i64)?;
            for _ in 0..e {
                t = &t * &h;
            }
        }
        out += &t;
    }
    Ok(out)
}
