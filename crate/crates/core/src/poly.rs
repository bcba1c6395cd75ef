//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Two disjoint variable families share one ring: the `x` series used by Schur
//! polynomials and the generic `y` variables that stand in for independent matrix
//! entries. Terms are kept in a canonical graded-lexicographic order, so two
//! polynomials are equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
enum VarKind {
    X(u32),
    Y(i64),
    YPair(u32, u32),
}

/// A polynomial variable: `x_k` (k >= 1), a generic `y_r`, or a generic `y_{i,j}`.
///
/// Variables are totally ordered: all `x` before all `y_r` before all `y_{i,j}`,
/// each family ordered by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(VarKind);

impl Var {
    /// `x_k`. Panics when `k == 0`.
    pub fn x(k: u32) -> Var {
        assert!(k >= 1, "x-series variables are indexed from 1");
        Var(VarKind::X(k))
    }

    pub fn try_x(k: i64) -> Result<Var> {
        if k < 1 || k > u32::MAX as i64 {
            return Err(Error::InvalidRange { lo: k, hi: k });
        }
        Ok(Var(VarKind::X(k as u32)))
    }

    pub fn y(r: i64) -> Var {
        Var(VarKind::Y(r))
    }

    pub fn y_pair(i: u32, j: u32) -> Var {
        Var(VarKind::YPair(i, j))
    }

    pub fn x_index(&self) -> Option<u32> {
        match self.0 {
            VarKind::X(k) => Some(k),
            _ => None,
        }
    }

    pub fn y_index(&self) -> Option<i64> {
        match self.0 {
            VarKind::Y(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_generic(&self) -> bool {
        !matches!(self.0, VarKind::X(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            VarKind::X(k) => write!(f, "x{k}"),
            VarKind::Y(r) if r >= 0 => write!(f, "y{r}"),
            VarKind::Y(r) => write!(f, "y({r})"),
            VarKind::YPair(i, j) => write!(f, "y{i}_{j}"),
        }
    }
}

/// A monomial as a sorted list of `(variable, exponent)` with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            exps: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, ea) = self.exps[i];
            let (b, eb) = other.exps[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: higher total degree is larger; ties are broken by the
    /// exponent of the smallest variable where the monomials differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.exps.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial: map from monomial to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Monomial::var(v), 1)
    }

    pub fn term<T: Into<BigInt>>(m: Monomial, c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Highest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Exact integer value at a point. Every variable of `self` must be assigned.
    pub fn eval_int(&self, assignment: &HashMap<Var, BigInt>) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.iter() {
                let x = assignment.get(&v).ok_or(Error::MissingVariable(v))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect();
        vars.sort();
        vars.dedup();
        vars
    }
}

/// `h_r(x_lo, ..., x_hi)`: the sum of all monomials of degree `r` in the given variables.
pub fn complete_homogeneous(r: i64, lo: i64, hi: i64) -> Result<MultiPoly> {
    if lo < 1 || lo > hi || hi > u32::MAX as i64 {
        return Err(Error::InvalidRange { lo, hi });
    }
    if r < 0 {
        return Ok(MultiPoly::zero());
    }
    let vars: Vec<Var> = (lo..=hi).map(|k| Var::x(k as u32)).collect();
    let mut out = MultiPoly::zero();
    let mut exps = vec![0u32; vars.len()];
    fill_exponents(&vars, &mut exps, 0, r as u32, &mut out);
    Ok(out)
}

fn fill_exponents(vars: &[Var], exps: &mut [u32], pos: usize, remaining: u32, out: &mut MultiPoly) {
    if pos + 1 == vars.len() {
        exps[pos] = remaining;
        let m = Monomial::from_pairs(vars.iter().copied().zip(exps.iter().copied()));
        out.terms.insert(m, BigInt::one());
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        fill_exponents(vars, exps, pos + 1, remaining - e, out);
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order with explicit signs, e.g. `x1^2 - 2*x1*x2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl From<Monomial> for MultiPoly {
    fn from(m: Monomial) -> Self {
        MultiPoly::term(m, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: u32) -> MultiPoly {
        MultiPoly::var(Var::x(k))
    }

    fn point(vals: &[(u32, i64)]) -> HashMap<Var, BigInt> {
        vals.iter().map(|&(k, v)| (Var::x(k), BigInt::from(v))).collect()
    }

    #[test]
    fn h2_in_three_variables() {
        let h = complete_homogeneous(2, 1, 3).unwrap();
        let expected = &(&(&(&x(1) * &x(1)) + &(&x(2) * &x(2))) + &(&x(3) * &x(3)))
            + &(&(&(&x(1) * &x(2)) + &(&x(1) * &x(3))) + &(&x(2) * &x(3)));
        assert_eq!(h, expected);
        assert_eq!(h.to_string(), "x1^2 + x1*x2 + x1*x3 + x2^2 + x2*x3 + x3^2");
    }

    #[test]
    fn h_boundary_degrees() {
        assert_eq!(complete_homogeneous(0, 1, 5).unwrap(), MultiPoly::one());
        assert!(complete_homogeneous(-3, 1, 2).unwrap().is_zero());
    }

    #[test]
    fn h_rejects_bad_ranges() {
        assert!(complete_homogeneous(2, 3, 2).is_err());
        assert!(complete_homogeneous(2, 0, 2).is_err());
    }

    #[test]
    fn addition_examples() {
        assert!((&x(1) + &(-x(1))).is_zero());
        let h1 = complete_homogeneous(1, 1, 2).unwrap();
        assert_eq!((&h1 + &h1).to_string(), "2*x1 + 2*x2");
        assert_eq!(&MultiPoly::zero() + &h1, h1);
    }

    #[test]
    fn multiplication_examples() {
        let p = &(&x(1) + &x(2)) * &(&x(1) - &x(2));
        assert_eq!(p.to_string(), "x1^2 - x2^2");
        assert_eq!(&p * &MultiPoly::one(), p);
        let h1 = complete_homogeneous(1, 1, 2).unwrap();
        let sq = &h1 * &h1;
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
        // h_1^2 = h_2 + e_2
        let e2 = &x(1) * &x(2);
        assert_eq!(sq, &complete_homogeneous(2, 1, 2).unwrap() + &e2);
    }

    #[test]
    fn evaluation_examples() {
        let h2 = complete_homogeneous(2, 1, 3).unwrap();
        assert_eq!(h2.eval_int(&point(&[(1, 1), (2, 1), (3, 1)])).unwrap(), BigInt::from(6));
        assert_eq!(MultiPoly::zero().eval_int(&HashMap::new()).unwrap(), BigInt::zero());
        let p = &x(1) * &x(2);
        assert_eq!(p.eval_int(&point(&[(1, 3), (2, -2)])).unwrap(), BigInt::from(-6));
        assert_eq!(
            p.eval_int(&point(&[(1, 3)])),
            Err(Error::MissingVariable(Var::x(2)))
        );
    }

    #[test]
    fn display_of_constants_and_generic_vars() {
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(MultiPoly::constant(-4).to_string(), "-4");
        let p = &MultiPoly::var(Var::y_pair(1, 1)) * &MultiPoly::var(Var::y_pair(2, 2))
            - &MultiPoly::var(Var::y_pair(1, 2)) * &MultiPoly::var(Var::y_pair(2, 1));
        assert_eq!(p.to_string(), "y1_1*y2_2 - y1_2*y2_1");
        assert_eq!(MultiPoly::var(Var::y(4)).to_string(), "y4");
    }

    #[test]
    fn graded_order_puts_higher_degree_first_in_display() {
        let p = &(&x(2) + &MultiPoly::one()) + &(&x(1) * &x(1));
        assert_eq!(p.to_string(), "x1^2 + x2 + 1");
    }

    #[test]
    #[should_panic]
    fn x_zero_is_not_a_variable() {
        Var::x(0);
    }
}
