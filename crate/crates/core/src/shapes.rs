//! Semipartitions, skew shapes, and the part-deletion calculus that mirrors row and
//! column deletion in Jacobi–Trudi matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing integer sequence that is eventually constant.
///
/// Stored as a finite `head` followed by the constant `tail` repeated forever. The
/// head never ends in an entry equal to the tail, so `length()` is simply the head
/// length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Semipartition {
    head: Vec<i64>,
    tail: i64,
}

impl Semipartition {
    pub fn new(head: Vec<i64>, tail: i64) -> Result<Self> {
        if head.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSemipartition(format!(
                "{head:?} is not weakly decreasing"
            )));
        }
        if head.iter().any(|&p| p < tail) {
            return Err(Error::InvalidSemipartition(format!(
                "{head:?} has entries below the tail {tail}"
            )));
        }
        let mut head = head;
        while head.last() == Some(&tail) {
            head.pop();
        }
        Ok(Semipartition { head, tail })
    }

    /// An ordinary partition (tail 0, nonnegative parts).
    pub fn partition(parts: &[i64]) -> Result<Self> {
        Semipartition::new(parts.to_vec(), 0)
    }

    /// The constant semipartition `(z, z, z, ...)`.
    pub fn constant(z: i64) -> Self {
        Semipartition { head: Vec::new(), tail: z }
    }

    /// `(z, ..., z, 0, 0, ...)` with `m` copies of `z`; only a semipartition for `z >= 0`.
    pub fn constant_prefix(z: i64, m: usize) -> Result<Self> {
        Semipartition::new(vec![z; m], 0)
    }

    pub fn empty() -> Self {
        Semipartition::constant(0)
    }

    /// Part `i` (1-based); every index past the head reads the tail.
    pub fn part(&self, i: usize) -> i64 {
        assert!(i >= 1, "parts are indexed from 1");
        self.head.get(i - 1).copied().unwrap_or(self.tail)
    }

    pub fn head(&self) -> &[i64] {
        &self.head
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    /// Number of parts strictly greater than the tail.
    pub fn length(&self) -> usize {
        self.head.len()
    }

    /// Sum of the parts above the tail, `sum (lambda_i - tail)`.
    pub fn weight(&self) -> i64 {
        self.head.iter().map(|p| p - self.tail).sum()
    }

    pub fn is_partition(&self) -> bool {
        self.tail == 0
    }

    /// Component-wise sum.
    pub fn add(&self, other: &Semipartition) -> Semipartition {
        let len = self.length().max(other.length());
        let head = (1..=len).map(|i| self.part(i) + other.part(i)).collect();
        Semipartition::new(head, self.tail + other.tail).expect("sum of semipartitions is a semipartition")
    }

    /// Adds `z` to the first `m` parts (`None` means every part, including the tail).
    pub fn add_const(&self, z: i64, m: Option<usize>) -> Result<Semipartition> {
        match m {
            None => Ok(Semipartition {
                head: self.head.iter().map(|p| p + z).collect(),
                tail: self.tail + z,
            }),
            Some(m) => {
                let len = self.length().max(m);
                let head = (1..=len)
                    .map(|i| if i <= m { self.part(i) + z } else { self.part(i) })
                    .collect();
                Semipartition::new(head, self.tail)
            }
        }
    }

    /// Deletes part `k`: `(l_1, ..., l_{k-1}, l_{k+1} - 1, l_{k+2} - 1, ...)`.
    ///
    /// The tail drops by one and the length becomes `max(length, k) - 1`.
    pub fn delete_part(&self, k: usize) -> Semipartition {
        assert!(k >= 1, "parts are indexed from 1");
        let len = self.length().max(k);
        let head: Vec<i64> = (1..len)
            .map(|i| if i < k { self.part(i) } else { self.part(i + 1) - 1 })
            .collect();
        Semipartition::new(head, self.tail - 1).expect("part deletion preserves monotonicity")
    }

    /// Deletes the parts `k_1 < k_2 < ... < k_l`, largest index first, so that every
    /// index refers to a part of the original semipartition.
    pub fn delete_parts(&self, ks: &[usize]) -> Result<Semipartition> {
        if ks.first() == Some(&0) || ks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "{ks:?} is not a strictly increasing set of positive indices"
            )));
        }
        Ok(ks.iter().rev().fold(self.clone(), |acc, &k| acc.delete_part(k)))
    }
}

impl fmt::Display for Semipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.head.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))?;
        if self.tail != 0 {
            write!(f, "@{}", self.tail)?;
        }
        Ok(())
    }
}

/// `mu ⊴ lambda`: component-wise `mu_i <= lambda_i` with equal tails.
pub fn contains(mu: &Semipartition, lambda: &Semipartition) -> bool {
    if mu.tail != lambda.tail {
        return false;
    }
    let len = mu.length().max(lambda.length());
    (1..=len).all(|i| mu.part(i) <= lambda.part(i))
}

/// A skew shape `lambda / mu`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    lambda: Semipartition,
    mu: Semipartition,
}

impl Shape {
    pub fn new(lambda: Semipartition, mu: Semipartition) -> Result<Self> {
        if !contains(&mu, &lambda) {
            return Err(Error::InvalidShape(format!("{mu} is not contained in {lambda}")));
        }
        Ok(Shape { lambda, mu })
    }

    /// The straight shape `lambda / (tail, tail, ...)`.
    pub fn straight(lambda: Semipartition) -> Self {
        let mu = Semipartition::constant(lambda.tail());
        Shape { lambda, mu }
    }

    pub fn from_parts(lambda: &[i64], mu: &[i64]) -> Result<Self> {
        Shape::new(Semipartition::partition(lambda)?, Semipartition::partition(mu)?)
    }

    pub fn empty() -> Self {
        Shape::straight(Semipartition::empty())
    }

    pub fn lambda(&self) -> &Semipartition {
        &self.lambda
    }

    pub fn mu(&self) -> &Semipartition {
        &self.mu
    }

    pub fn tail(&self) -> i64 {
        self.lambda.tail()
    }

    /// Number of rows, `length(lambda)`.
    pub fn length(&self) -> usize {
        self.lambda.length()
    }

    pub fn weight(&self) -> i64 {
        (1..=self.length()).map(|i| self.lambda.part(i) - self.mu.part(i)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weight() == 0
    }

    pub fn is_normalized(&self) -> bool {
        self.tail() == 0
    }

    /// Adds the constant `-tail` to both semipartitions; the Ferrers diagram is unchanged.
    pub fn shift_normalize(&self) -> Shape {
        self.shift(-self.tail())
    }

    /// Adds the constant `z` to every part of both semipartitions.
    pub fn shift(&self, z: i64) -> Shape {
        Shape {
            lambda: self.lambda.add_const(z, None).expect("constant shift"),
            mu: self.mu.add_const(z, None).expect("constant shift"),
        }
    }

    /// Cells `(row, column)` of the Ferrers diagram, rows and columns 1-based and
    /// measured on the normalized shape: row `i` holds columns `mu_i + 1 ..= lambda_i`.
    pub fn ferrers_cells(&self) -> Vec<(usize, i64)> {
        let t = self.tail();
        (1..=self.length())
            .flat_map(|i| ((self.mu.part(i) - t + 1)..=(self.lambda.part(i) - t)).map(move |c| (i, c)))
            .collect()
    }
}

impl fmt::Display for Shape {
    /// Text form `l1,l2,.../m1,m2,...@tail`; the `@tail` suffix is omitted for tail 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &Semipartition| s.head().iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}/{}", join(&self.lambda), join(&self.mu))?;
        if self.tail() != 0 {
            write!(f, "@{}", self.tail())?;
        }
        Ok(())
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// Parses `l1,l2,.../m1,m2,...@tail`. The `/mu` and `@tail` parts are optional;
    /// the empty string is the empty shape.
    fn from_str(s: &str) -> Result<Shape> {
        let s = s.trim();
        let (body, tail) = match s.split_once('@') {
            Some((b, t)) => (
                b,
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad tail `{t}`: {e}")))?,
            ),
            None => (s, 0),
        };
        let (lam, mu) = body.split_once('/').unwrap_or((body, ""));
        let lambda = Semipartition::new(parse_parts(lam)?, tail)?;
        let mu = Semipartition::new(parse_parts(mu)?, tail)?;
        Shape::new(lambda, mu)
    }
}

fn parse_parts(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad part `{p}`: {e}")))
        })
        .collect()
}
