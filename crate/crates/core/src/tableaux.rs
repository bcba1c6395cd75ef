//! Semistandard skew Young tableaux and the tableau-sum route to skew Schur polynomials.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{bareiss_det, Matrix};
use crate::poly::{Monomial, MultiPoly, Var};
use crate::shapes::{Semipartition, Shape};

/// An `n`-semistandard filling of a skew diagram.
///
/// `rows[i]` holds the entries of row `i + 1`, left to right, for the columns
/// `mu_{i+1} + 1 ..= lambda_{i+1}` of the normalized shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    shape: Shape,
    n: u32,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(shape: &Shape, n: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = shape.shift_normalize();
        let m = shape.length();
        if rows.len() != m {
            return Err(Error::InvalidShape(format!("{} rows for a shape of length {m}", rows.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            let want = (shape.lambda().part(i + 1) - shape.mu().part(i + 1)) as usize;
            if row.len() != want {
                return Err(Error::InvalidShape(format!("row {} has {} entries, expected {want}", i + 1, row.len())));
            }
        }
        let t = Tableau { shape, n, rows };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.iter().any(|&e| e < 1 || e > self.n) {
                return Err(Error::InvalidShape(format!("row {} has entries outside 1..={}", i + 1, self.n)));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidShape(format!("row {} is not weakly increasing", i + 1)));
            }
        }
        for (r, c) in self.shape.ferrers_cells() {
            if r >= 2 {
                if let Some(above) = self.entry(r - 1, c) {
                    if above >= self.entry(r, c).expect("cell of the shape") {
                        return Err(Error::InvalidShape(format!("column {c} is not strictly increasing")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entry in row `r`, column `c` (both 1-based, normalized columns), if that is a cell.
    pub fn entry(&self, r: usize, c: i64) -> Option<u32> {
        let row = self.rows.get(r.checked_sub(1)?)?;
        let first = self.shape.mu().part(r) + 1;
        if c < first {
            return None;
        }
        row.get((c - first) as usize).copied()
    }

    /// Number of entries equal to `k`.
    pub fn count(&self, k: u32) -> usize {
        self.rows.iter().flatten().filter(|&&e| e == k).count()
    }
}

impl fmt::Display for Tableau {
    /// One line per row; skipped cells of `mu` are drawn as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.n.to_string().len();
        for (i, row) in self.rows.iter().enumerate() {
            let skip = self.shape.mu().part(i + 1) as usize;
            let cells: Vec<String> = std::iter::repeat(format!("{:>width$}", "."))
                .take(skip)
                .chain(row.iter().map(|e| format!("{e:>width$}")))
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Stream of all `n`-semistandard tableaux of a shape.
///
/// Cells are filled in row-major order by backtracking, trying the smallest
/// admissible entry first, so tableaux come out in lexicographic order of their
/// row-major reading words.
pub struct SsytIter {
    shape: Shape,
    n: u32,
    cells: Vec<(usize, i64)>,
    left: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    upper: Vec<u32>,
    values: Vec<u32>,
    started: bool,
    done: bool,
}

impl SsytIter {
    fn new(shape: &Shape, n: u32) -> Self {
        let shape = shape.shift_normalize();
        let cells = shape.ferrers_cells();
        let index: HashMap<(usize, i64), usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let left = cells.iter().map(|&(r, c)| index.get(&(r, c - 1)).copied()).collect();
        let above = cells
            .iter()
            .map(|&(r, c)| if r > 1 { index.get(&(r - 1, c)).copied() } else { None })
            .collect();
        let upper = cells
            .iter()
            .map(|&(r, c)| {
                let below = (r + 1..).take_while(|&s| index.contains_key(&(s, c))).count() as i64;
                (n as i64 - below).max(0) as u32
            })
            .collect();
        SsytIter {
            shape,
            n,
            values: vec![0; cells.len()],
            cells,
            left,
            above,
            upper,
            started: false,
            done: false,
        }
    }

    fn lower(&self, k: usize) -> u32 {
        let from_left = self.left[k].map_or(1, |l| self.values[l]);
        let from_above = self.above[k].map_or(1, |a| self.values[a] + 1);
        from_left.max(from_above)
    }

    /// Fills cells `start..` with their least admissible values.
    fn fill_from(&mut self, start: usize) -> bool {
        for k in start..self.cells.len() {
            let lo = self.lower(k);
            if lo > self.upper[k] {
                return false;
            }
            self.values[k] = lo;
        }
        true
    }

    /// Moves to the next complete filling. Lower bounds only grow with earlier
    /// entries, so a failed refill means every larger value at that cell fails too.
    fn advance(&mut self) -> bool {
        let mut k = self.cells.len();
        while k > 0 {
            k -= 1;
            if self.values[k] < self.upper[k] {
                self.values[k] += 1;
                if self.fill_from(k + 1) {
                    return true;
                }
            }
        }
        false
    }

    fn current(&self) -> Tableau {
        let mut rows = vec![Vec::new(); self.shape.length()];
        for (k, &(r, _)) in self.cells.iter().enumerate() {
            rows[r - 1].push(self.values[k]);
        }
        Tableau { shape: self.shape.clone(), n: self.n, rows }
    }
}

impl Iterator for SsytIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.done {
            return None;
        }
        let found = if self.started {
            self.advance()
        } else {
            self.started = true;
            self.fill_from(0)
        };
        if found {
            if self.cells.is_empty() {
                self.done = true;
            }
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

/// All `n`-semistandard tableaux of `sh`; the shape is normalized first.
pub fn enumerate_ssyt(sh: &Shape, n: u32) -> SsytIter {
    SsytIter::new(sh, n)
}

/// `prod_k x_k^{#k in T}`.
pub fn tableau_weight(t: &Tableau) -> Monomial {
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for &e in t.rows.iter().flatten() {
        *counts.entry(e).or_default() += 1;
    }
    Monomial::from_pairs(counts.into_iter().map(|(k, c)| (Var::x(k), c)))
}

/// `s_{lambda/mu}(x_1, ..., x_n)` as the sum of tableau weights.
pub fn skew_schur(sh: &Shape, n: u32) -> MultiPoly {
    let mut counts: HashMap<Monomial, u64> = HashMap::new();
    for t in enumerate_ssyt(sh, n) {
        *counts.entry(tableau_weight(&t)).or_default() += 1;
    }
    let mut p = MultiPoly::zero();
    for (m, c) in counts {
        p.add_term(m, &BigInt::from(c));
    }
    p
}

/// [`skew_schur`], failing once more than `budget` tableaux have been produced.
pub fn skew_schur_bounded(sh: &Shape, n: u32, budget: usize) -> Result<MultiPoly> {
    let mut counts: HashMap<Monomial, u64> = HashMap::new();
    for (k, t) in enumerate_ssyt(sh, n).enumerate() {
        if k >= budget {
            return Err(Error::BudgetExceeded { what: "tableau", limit: budget, flag: "max-tableaux" });
        }
        *counts.entry(tableau_weight(&t)).or_default() += 1;
    }
    let mut p = MultiPoly::zero();
    for (m, c) in counts {
        p.add_term(m, &BigInt::from(c));
    }
    Ok(p)
}

/// Number of `n`-semistandard tableaux of `sh`.
pub fn count_ssyt(sh: &Shape, n: u32) -> usize {
    enumerate_ssyt(sh, n).count()
}

/// The bialternant quotient `det(x_i^{lambda_j + n - j}) / det(x_i^{n - j})` at `point`,
/// with `n = point.len()`. A partition longer than `n` gives 0.
pub fn bialternant_eval(lambda: &Semipartition, point: &[BigInt]) -> Result<BigRational> {
    if !lambda.is_partition() {
        return Err(Error::InvalidShape(format!("{lambda} is not a partition")));
    }
    let n = point.len();
    for (a, b) in point.iter().enumerate().flat_map(|(i, a)| point[i + 1..].iter().map(move |b| (a, b))) {
        if a == b {
            return Err(Error::ZeroDenominator);
        }
    }
    if lambda.length() > n {
        return Ok(BigRational::zero());
    }
    let power = |x: &BigInt, e: i64| -> BigInt {
        if e == 0 {
            BigInt::one()
        } else {
            Pow::pow(x, e as u64)
        }
    };
    let num = Matrix::from_fn(n, n, |i, j| power(&point[i - 1], lambda.part(j) + (n - j) as i64));
    let den = Matrix::from_fn(n, n, |i, j| power(&point[i - 1], (n - j) as i64));
    let d = bareiss_det(&den);
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(bareiss_det(&num), d))
}

/// The assignment `x_k -> point[k-1]`.
pub fn point_assignment(point: &[BigInt]) -> HashMap<Var, BigInt> {
    point.iter().enumerate().map(|(k, v)| (Var::x(k as u32 + 1), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::complete_homogeneous;

    fn shape(s: &str) -> Shape {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(count_ssyt(&shape("1"), 2), 2);
        assert_eq!(count_ssyt(&shape("2,1"), 3), 8);
        assert_eq!(count_ssyt(&shape("1,1"), 1), 0);
        assert_eq!(count_ssyt(&Shape::empty(), 4), 1);
        assert_eq!(count_ssyt(&shape("2,1/1"), 2), 4);
        assert_eq!(count_ssyt(&shape("2,2/1"), 2), 2);
    }

    #[test]
    fn enumeration_order_is_row_major_lexicographic() {
        let all: Vec<Vec<Vec<u32>>> = enumerate_ssyt(&shape("2,1"), 2).map(|t| t.rows().to_vec()).collect();
        assert_eq!(all, vec![vec![vec![1, 1], vec![2]], vec![vec![1, 2], vec![2]]]);
    }

    #[test]
    fn every_enumerated_tableau_is_valid_and_distinct() {
        let sh = shape("3,2,2/1,1");
        let all: Vec<Tableau> = enumerate_ssyt(&sh, 3).collect();
        for t in &all {
            Tableau::new(&sh, 3, t.rows().to_vec()).unwrap();
        }
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn weights() {
        let t = Tableau::new(&shape("3"), 2, vec![vec![1, 1, 2]]).unwrap();
        assert_eq!(tableau_weight(&t).to_string(), "x1^2*x2");
        let single = Tableau::new(&shape("1"), 3, vec![vec![3]]).unwrap();
        assert_eq!(tableau_weight(&single), Monomial::var(Var::x(3)));
    }

    #[test]
    fn invalid_tableaux_rejected() {
        assert!(Tableau::new(&shape("2"), 3, vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(&shape("1,1"), 3, vec![vec![2], vec![2]]).is_err());
        assert!(Tableau::new(&shape("1"), 2, vec![vec![3]]).is_err());
    }

    #[test]
    fn schur_examples() {
        assert_eq!(skew_schur(&shape("1"), 2).to_string(), "x1 + x2");
        assert_eq!(skew_schur(&shape("4"), 3), complete_homogeneous(4, 1, 3).unwrap());
        assert_eq!(skew_schur(&shape("2,1"), 2).to_string(), "x1^2*x2 + x1*x2^2");
        assert!(skew_schur(&Shape::empty(), 3).is_one());
        let sh = shape("3,2/1");
        let s = skew_schur(&sh, 3);
        for z in -2..=2 {
            assert_eq!(skew_schur(&sh.shift(z), 3), s);
        }
    }

    #[test]
    fn bialternant_examples() {
        let one = Semipartition::partition(&[1]).unwrap();
        assert_eq!(bialternant_eval(&one, &ints(&[2, 3])).unwrap(), BigRational::from_integer(5.into()));
        let l21 = Semipartition::partition(&[2, 1]).unwrap();
        assert_eq!(bialternant_eval(&l21, &ints(&[1, 1, 1])), Err(Error::ZeroDenominator));
        let pt = ints(&[1, 2, 3]);
        let expected = skew_schur(&Shape::straight(l21.clone()), 3).eval_int(&point_assignment(&pt)).unwrap();
        assert_eq!(bialternant_eval(&l21, &pt).unwrap(), BigRational::from_integer(expected));
        assert!(bialternant_eval(&Semipartition::empty(), &ints(&[4, -1])).unwrap().is_one());
        let long = Semipartition::partition(&[1, 1, 1]).unwrap();
        assert!(bialternant_eval(&long, &ints(&[2, 5])).unwrap().is_zero());
    }

    #[test]
    fn display_layout() {
        let t = Tableau::new(&shape("3,1/1"), 3, vec![vec![1, 2], vec![3]]).unwrap();
        assert_eq!(t.to_string(), ". 1 2\n3\n");
    }
}
