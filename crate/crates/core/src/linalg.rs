//! Dense matrices over a commutative ring, with the ordered-index minor calculus.
//!
//! All row and column indices are 1-based. Index lists are *ordered*: a minor keeps
//! the order in which its rows and columns are listed, which is what makes the
//! shuffled column sets of the Plücker relations carry the right sign.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Var};

/// The operations a matrix entry type must support.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// Determinant of a square matrix. The default is division-free cofactor expansion.
    fn det_square(m: &Matrix<Self>) -> Self {
        cofactor_det(m)
    }
}

impl Ring for BigInt {
    fn zero_elem() -> Self {
        BigInt::zero()
    }
    fn one_elem() -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn det_square(m: &Matrix<Self>) -> Self {
        bareiss_det(m)
    }
}

impl Ring for MultiPoly {
    fn zero_elem() -> Self {
        MultiPoly::zero()
    }
    fn one_elem() -> Self {
        MultiPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity(m: usize) -> Self {
        Matrix::from_fn(m, m, |i, j| if i == j { R::one_elem() } else { R::zero_elem() })
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

    /// Entry `(i, j)`, 1-based. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> &R {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols, "entry ({i},{j}) out of range");
        &self.data[(i - 1) * self.cols + (j - 1)]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[(i - 1) * self.cols..i * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (1..=self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<R> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap((a - 1) * self.cols + j, (b - 1) * self.cols + j);
        }
    }

    /// The submatrix on rows `rows` and columns `cols`, in the listed order.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix<R>> {
        check_indices(rows, self.rows)?;
        check_indices(cols, self.cols)?;
        Ok(Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i - 1], cols[j - 1]).clone()
        }))
    }

    /// The submatrix left after deleting rows `rows` and columns `cols`.
    pub fn delete_rowcols(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix<R>> {
        check_indices(rows, self.rows)?;
        check_indices(cols, self.cols)?;
        let keep_rows = complement_of(rows, self.rows);
        let keep_cols = complement_of(cols, self.cols);
        self.minor(&keep_rows, &keep_cols)
    }

    pub fn mul(&self, other: &Matrix<R>) -> Result<Matrix<R>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (1..=self.cols).fold(R::zero_elem(), |acc, k| {
                acc.add_ref(&self.get(i, k).mul_ref(other.get(k, j)))
            })
        }))
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (1..=self.rows)
            .map(|i| self.row(i).iter().map(|e| e.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

fn check_indices(idx: &[usize], bound: usize) -> Result<()> {
    for &i in idx {
        if i < 1 || i > bound {
            return Err(Error::IndexOutOfRange { index: i, bound });
        }
    }
    if idx.iter().duplicates().next().is_some() {
        return Err(Error::InvalidIndexSet(format!("{idx:?} has repeated indices")));
    }
    Ok(())
}

fn complement_of(idx: &[usize], bound: usize) -> Vec<usize> {
    (1..=bound).filter(|i| !idx.contains(i)).collect()
}

/// Exact determinant; the 0x0 matrix has determinant 1.
pub fn det<R: Ring>(a: &Matrix<R>) -> Result<R> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    Ok(R::det_square(a))
}

/// Laplace expansion along the rows, memoised on the set of remaining columns.
pub fn cofactor_det<R: Ring>(a: &Matrix<R>) -> R {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let m = a.rows;
    assert!(m < 64, "cofactor expansion is limited to 63x63");
    let mut memo: HashMap<u64, R> = HashMap::new();
    memo.insert(0, R::one_elem());
    let full = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    cofactor_rec(a, full, &mut memo)
}

fn cofactor_rec<R: Ring>(a: &Matrix<R>, mask: u64, memo: &mut HashMap<u64, R>) -> R {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let m = a.rows;
    let row = m - mask.count_ones() as usize + 1;
    let mut acc = R::zero_elem();
    let mut position = 0usize;
    for c in 0..m {
        if mask & (1 << c) == 0 {
            continue;
        }
        let entry = a.get(row, c + 1);
        if !entry.is_zero_elem() {
            let sub = cofactor_rec(a, mask & !(1 << c), memo);
            if !sub.is_zero_elem() {
                let term = entry.mul_ref(&sub);
                acc = if position % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
        }
        position += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Fraction-free Gaussian elimination (Bareiss) over the integers.
pub fn bareiss_det(a: &Matrix<BigInt>) -> BigInt {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 1..n {
        if m.get(k, k).is_zero() {
            match (k + 1..=n).find(|&i| !m.get(i, k).is_zero()) {
                Some(p) => {
                    m.swap_rows(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = m.get(k, k).clone();
        for i in k + 1..=n {
            for j in k + 1..=n {
                let v = (&pivot * m.get(i, j) - m.get(i, k) * m.get(k, j)) / &prev;
                m.data[(i - 1) * n + (j - 1)] = v;
            }
        }
        prev = pivot;
    }
    sign * m.get(n, n).clone()
}

/// Determinant as the signed sum over all permutations. Exponential; used as an
/// independent oracle for small matrices.
pub fn permutation_expansion_det<R: Ring>(a: &Matrix<R>) -> R {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let m = a.rows;
    let mut acc = R::zero_elem();
    for perm in (0..m).permutations(m) {
        let mut term = R::one_elem();
        for (i, &p) in perm.iter().enumerate() {
            term = term.mul_ref(a.get(i + 1, p + 1));
            if term.is_zero_elem() {
                break;
            }
        }
        if permutation_sign(&perm) > 0 {
            acc = acc.add_ref(&term);
        } else {
            acc = acc.sub_ref(&term);
        }
    }
    acc
}

/// Sign of a permutation of `0..n`, given as an image list.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `det(a[I, J]) * det(a[complement I, complement J])`.
pub fn detprod_cminors<R: Ring>(a: &Matrix<R>, i: &IndexSet, j: &IndexSet) -> Result<R> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    if i.len() != j.len() {
        return Err(Error::DimensionMismatch(format!("|{i}| != |{j}|")));
    }
    let inner = det(&a.minor(i.as_slice(), j.as_slice())?)?;
    if inner.is_zero_elem() {
        return Ok(inner);
    }
    let outer = det(&a.delete_rowcols(i.as_slice(), j.as_slice())?)?;
    Ok(inner.mul_ref(&outer))
}

/// An ordered set of distinct positive indices. Sets built with [`IndexSet::new`]
/// are strictly increasing; [`shuffle`] can produce other orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// A strictly increasing set of positive indices.
    pub fn new(v: Vec<usize>) -> Result<Self> {
        if v.first() == Some(&0) || v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "{v:?} is not strictly increasing and positive"
            )));
        }
        Ok(IndexSet(v))
    }

    /// Distinct positive indices in the given order.
    pub fn ordered(v: Vec<usize>) -> Result<Self> {
        if v.contains(&0) || v.iter().duplicates().next().is_some() {
            return Err(Error::InvalidIndexSet(format!("{v:?} has zero or repeated entries")));
        }
        Ok(IndexSet(v))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{1, ..., m}`.
    pub fn range(m: usize) -> Self {
        IndexSet((1..=m).collect())
    }

    /// `{n + 1, ..., n + m}`.
    pub fn shifted_range(m: usize, n: usize) -> Self {
        IndexSet((n + 1..=n + m).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|x| other.contains(*x))
    }

    /// 1-based position of `x` in this ordered set.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.0.iter().position(|&y| y == x).map(|p| p + 1)
    }

    /// `{1..=n} \ self`, increasing.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet(complement_of(&self.0, n))
    }

    /// Elements of `self` not in `other`, keeping the order of `self`.
    pub fn minus(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|x| !other.contains(*x)).collect())
    }

    /// Sorted union.
    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut v: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    pub fn max(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }

    /// All `k`-element subsets, each inheriting the order of `self`, in
    /// lexicographic order of positions.
    pub fn subsets(&self, k: usize) -> Vec<IndexSet> {
        self.0.iter().copied().combinations(k).map(IndexSet).collect()
    }

    /// Every subset of every size.
    pub fn all_subsets(&self) -> Vec<IndexSet> {
        (0..=self.len()).flat_map(|k| self.subsets(k)).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl std::str::FromStr for IndexSet {
    type Err = Error;

    /// Comma-separated indices, optionally in braces: `1,3` or `{1,3}` or `{}`.
    fn from_str(s: &str) -> Result<IndexSet> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if inner.is_empty() {
            return Ok(IndexSet::empty());
        }
        let v = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad index `{p}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSet::ordered(v)
    }
}

/// Replaces the elements of `x` inside `s` by the elements of `y`, position by position.
///
/// `x` must be a subset of `s` listed in the order it occurs in `s`, and `y` must be
/// disjoint from `s` with `|y| = |x|`.
pub fn shuffle(s: &IndexSet, x: &IndexSet, y: &IndexSet) -> Result<IndexSet> {
    if x.len() != y.len() {
        return Err(Error::InvalidIndexSet(format!("|{x}| != |{y}|")));
    }
    let positions: Vec<usize> = x
        .iter()
        .map(|e| {
            s.position(e)
                .ok_or_else(|| Error::InvalidIndexSet(format!("{x} is not a subset of {s}")))
        })
        .collect::<Result<_>>()?;
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidIndexSet(format!("{x} is not in the order of {s}")));
    }
    if y.iter().any(|e| s.contains(e)) {
        return Err(Error::InvalidIndexSet(format!("{y} meets {s}")));
    }
    let mut out = s.0.clone();
    for (p, e) in positions.iter().zip(y.iter()) {
        out[p - 1] = e;
    }
    IndexSet::ordered(out)
}

/// Sum of the 1-based positions that the elements of `s` occupy in `x`.
pub fn sumset(s: &IndexSet, x: &IndexSet) -> Result<usize> {
    s.iter()
        .map(|e| {
            x.position(e)
                .ok_or_else(|| Error::InvalidIndexSet(format!("{s} is not a subset of {x}")))
        })
        .sum()
}

/// The `rows x cols` matrix of independent variables `y_{i+row_offset, j}`.
pub fn generic_matrix(rows: usize, cols: usize, row_offset: u32) -> Matrix<MultiPoly> {
    Matrix::from_fn(rows, cols, |i, j| {
        MultiPoly::var(Var::y_pair(i as u32 + row_offset, j as u32))
    })
}

/// Random integer matrices for identity fuzzing.
///
/// Trial `t` of a run seeded with `seed` draws from `ChaCha8Rng::seed_from_u64(seed)`
/// switched to stream `t`, with entries uniform in `lo..=hi`, filled row by row and
/// matrix by matrix. Any trial can therefore be replayed on its own.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn random_int_matrix(rows: usize, cols: usize, lo: i64, hi: i64, rng: &mut ChaCha8Rng) -> Matrix<BigInt> {
    Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(lo..=hi)))
}

/// Parses a JSON row-major integer matrix literal such as `[[1,2],[3,4]]`.
pub fn int_matrix_from_json(text: &str) -> Result<Matrix<BigInt>> {
    let rows: Vec<Vec<serde_json::Value>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix literal: {e}")))?;
    let rows = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| match v {
                    serde_json::Value::Number(n) => n
                        .to_string()
                        .parse::<BigInt>()
                        .map_err(|e| Error::Parse(format!("matrix entry {n}: {e}"))),
                    serde_json::Value::String(s) => s
                        .parse::<BigInt>()
                        .map_err(|e| Error::Parse(format!("matrix entry {s}: {e}"))),
                    other => Err(Error::Parse(format!("matrix entry {other} is not an integer"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// Row-major JSON form of an integer matrix; entries beyond `i64` are emitted as strings.
pub fn int_matrix_to_json(a: &Matrix<BigInt>) -> serde_json::Value {
    let to_json = |x: &BigInt| -> serde_json::Value {
        if x.abs() < BigInt::from(i64::MAX) {
            serde_json::Value::from(x.to_string().parse::<i64>().expect("fits in i64"))
        } else {
            serde_json::Value::String(x.to_string())
        }
    };
    serde_json::Value::Array(
        (1..=a.rows())
            .map(|i| serde_json::Value::Array(a.row(i).iter().map(to_json).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn det_of_identity_and_empty() {
        assert_eq!(det(&Matrix::<BigInt>::identity(3)).unwrap(), BigInt::one());
        assert_eq!(det(&Matrix::<BigInt>::identity(0)).unwrap(), BigInt::one());
        assert_eq!(det(&Matrix::<MultiPoly>::identity(0)).unwrap(), MultiPoly::one());
    }

    #[test]
    fn det_rejects_non_square() {
        let a = int(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(det(&a), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn generic_two_by_two() {
        let g = generic_matrix(2, 2, 0);
        assert_eq!(det(&g).unwrap().to_string(), "y1_1*y2_2 - y1_2*y2_1");
    }

    #[test]
    fn three_determinant_routes_agree() {
        let a = int(&[&[2, -1, 0, 3], &[1, 4, -2, 0], &[0, 0, 5, 1], &[7, 1, 1, -3]]);
        let b = bareiss_det(&a);
        assert_eq!(cofactor_det(&a), b);
        assert_eq!(permutation_expansion_det(&a), b);
        // a zero leading pivot forces a row swap
        let z = int(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]);
        assert_eq!(bareiss_det(&z), permutation_expansion_det(&z));
        assert_eq!(bareiss_det(&z), BigInt::from(7));
    }

    #[test]
    fn minor_examples() {
        let a = int(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(a.minor(&[1, 2, 3], &[1, 2, 3]).unwrap(), a);
        let m1 = a.minor(&[1, 3], &[2, 3]).unwrap();
        assert_eq!(m1.minor(&[2], &[1]).unwrap(), a.minor(&[3], &[2]).unwrap());
        assert_eq!(a.delete_rowcols(&[2], &[1]).unwrap(), a.minor(&[1, 3], &[2, 3]).unwrap());
        assert!(a.minor(&[4], &[1]).is_err());
        assert!(a.minor(&[1, 1], &[1, 2]).is_err());
        // order is kept: swapping two listed columns negates the determinant
        let swapped = a.minor(&[1, 2, 3], &[2, 1, 3]).unwrap();
        assert_eq!(det(&swapped).unwrap(), -det(&a).unwrap());
    }

    #[test]
    fn detprod_cminors_examples() {
        let a = int(&[&[2, 1, 0, 1], &[3, -1, 2, 0], &[1, 1, 1, 1], &[0, 2, -3, 4]]);
        let d = det(&a).unwrap();
        assert_eq!(detprod_cminors(&a, &IndexSet::range(4), &IndexSet::range(4)).unwrap(), d);
        assert_eq!(detprod_cminors(&a, &IndexSet::empty(), &IndexSet::empty()).unwrap(), d);
        let got = detprod_cminors(&a, &set(&[1]), &set(&[2])).unwrap();
        let expected = a.get(1, 2) * permutation_expansion_det(&a.minor(&[2, 3, 4], &[1, 3, 4]).unwrap());
        assert_eq!(got, expected);
        assert!(detprod_cminors(&a, &set(&[1]), &set(&[1, 2])).is_err());
    }

    #[test]
    fn shuffle_examples() {
        let s = set(&[1, 2, 3]);
        assert_eq!(shuffle(&s, &set(&[2]), &set(&[5])).unwrap().as_slice(), &[1, 5, 3]);
        assert_eq!(shuffle(&s, &IndexSet::empty(), &IndexSet::empty()).unwrap(), s);
        assert_eq!(
            shuffle(&set(&[1, 2, 3, 4]), &set(&[1, 3]), &set(&[7, 9])).unwrap().as_slice(),
            &[7, 2, 9, 4]
        );
        assert!(shuffle(&s, &set(&[4]), &set(&[5])).is_err());
        assert!(shuffle(&s, &set(&[2]), &set(&[3])).is_err());
        assert!(shuffle(&s, &set(&[2]), &set(&[5, 6])).is_err());
    }

    #[test]
    fn sumset_examples() {
        let x = set(&[10, 20, 30, 40, 50]);
        assert_eq!(sumset(&IndexSet::empty(), &x).unwrap(), 0);
        assert_eq!(sumset(&x, &x).unwrap(), 15);
        assert_eq!(sumset(&set(&[20, 40]), &x).unwrap(), 6);
        assert!(sumset(&set(&[21]), &x).is_err());
    }

    #[test]
    fn index_set_parsing_and_subsets() {
        assert_eq!("{1,3}".parse::<IndexSet>().unwrap(), set(&[1, 3]));
        assert_eq!("".parse::<IndexSet>().unwrap(), IndexSet::empty());
        assert!("1,1".parse::<IndexSet>().is_err());
        assert!(IndexSet::new(vec![2, 1]).is_err());
        assert_eq!(IndexSet::range(4).subsets(2).len(), 6);
        assert_eq!(IndexSet::range(3).all_subsets().len(), 8);
        assert_eq!(set(&[2, 4]).complement(5), set(&[1, 3, 5]));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[]), 1);
    }

    #[test]
    fn trial_streams_are_reproducible_and_distinct() {
        let a = random_int_matrix(3, 3, -9, 9, &mut trial_rng(7, 0));
        let b = random_int_matrix(3, 3, -9, 9, &mut trial_rng(7, 0));
        let c = random_int_matrix(3, 3, -9, 9, &mut trial_rng(7, 1));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn json_matrix_literals() {
        let a = int_matrix_from_json("[[1,-2],[3,4]]").unwrap();
        assert_eq!(a, int(&[&[1, -2], &[3, 4]]));
        assert_eq!(int_matrix_to_json(&a).to_string(), "[[1,-2],[3,4]]");
        assert!(int_matrix_from_json("[[1,2],[3]]").is_err());
    }
}
