//! Lattice paths in the plane, the tableau–path bijection, and the
//! Lindström–Gessel–Viennot involution.
//!
//! A horizontal step at height `k` carries the weight `x_k`. Lower points sit at
//! height 1 and upper points at height `n`; both are listed from the right.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::permutation_sign;
use crate::poly::{complete_homogeneous, Monomial, MultiPoly, Var};
use crate::shapes::{Semipartition, Shape};
use crate::tableaux::Tableau;

/// A lattice point, ordered lexicographically by `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn step(self, s: Step) -> Point {
        match s {
            Step::H => Point::new(self.x + 1, self.y),
            Step::V => Point::new(self.x, self.y + 1),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    H,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePath {
    start: Point,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: Point, steps: Vec<Step>) -> Result<Self> {
        if start.y < 1 {
            return Err(Error::InvalidParameters(format!("path starts below level 1 at {start}")));
        }
        Ok(LatticePath { start, steps })
    }

    /// Parses a step word such as `"HVVH"`.
    pub fn from_word(start: Point, word: &str) -> Result<Self> {
        let steps = word
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'H' | 'h' => Ok(Step::H),
                'V' | 'v' => Ok(Step::V),
                other => Err(Error::Parse(format!("bad step `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::new(start, steps)
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn end(&self) -> Point {
        self.steps.iter().fold(self.start, |p, &s| p.step(s))
    }

    /// Every point visited, starting point first.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut p = self.start;
        out.push(p);
        for &s in &self.steps {
            p = p.step(s);
            out.push(p);
        }
        out
    }

    /// `(from, step)` for every arc, in order.
    pub fn arcs(&self) -> Vec<(Point, Step)> {
        let pts = self.points();
        self.steps.iter().enumerate().map(|(k, &s)| (pts[k], s)).collect()
    }

    /// Heights of the horizontal steps, bottom to top.
    pub fn horizontal_heights(&self) -> Vec<i64> {
        self.arcs().into_iter().filter(|(_, s)| *s == Step::H).map(|(p, _)| p.y).collect()
    }

    pub fn weight(&self) -> Monomial {
        let mut counts: HashMap<i64, u32> = HashMap::new();
        for h in self.horizontal_heights() {
            *counts.entry(h).or_default() += 1;
        }
        Monomial::from_pairs(counts.into_iter().map(|(k, c)| (Var::x(k as u32), c)))
    }

    pub fn word(&self) -> String {
        self.steps.iter().map(|s| if *s == Step::H { 'H' } else { 'V' }).collect()
    }

    /// Splits after the step that reaches `q`; `None` if the path avoids `q`.
    fn split_at(&self, q: Point) -> Option<(Vec<Step>, Vec<Step>)> {
        let k = self.points().iter().position(|&p| p == q)?;
        Some((self.steps[..k].to_vec(), self.steps[k..].to_vec()))
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.word())
    }
}

/// An `m`-tuple of paths where path `i` runs from `lower[perm[i]]` to `upper[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathTuple {
    paths: Vec<LatticePath>,
    perm: Vec<usize>,
    lower: Vec<Point>,
    upper: Vec<Point>,
    n: i64,
}

impl PathTuple {
    pub fn new(paths: Vec<LatticePath>, perm: Vec<usize>, lower: Vec<Point>, upper: Vec<Point>, n: i64) -> Result<Self> {
        let m = paths.len();
        if perm.len() != m || lower.len() != m || upper.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "{m} paths, {} permutation entries, {} lower and {} upper points",
                perm.len(),
                lower.len(),
                upper.len()
            )));
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..m).collect::<Vec<_>>() {
            return Err(Error::InvalidParameters(format!("{perm:?} is not a permutation")));
        }
        for (i, p) in paths.iter().enumerate() {
            if p.start() != lower[perm[i]] || p.end() != upper[i] {
                return Err(Error::InvalidParameters(format!(
                    "path {} runs {} -> {}, expected {} -> {}",
                    i + 1,
                    p.start(),
                    p.end(),
                    lower[perm[i]],
                    upper[i]
                )));
            }
        }
        if lower.iter().any(|p| p.y != 1) || upper.iter().any(|p| p.y != n) {
            return Err(Error::InvalidParameters(format!("endpoints must lie at levels 1 and {n}")));
        }
        Ok(PathTuple { paths, perm, lower, upper, n })
    }

    pub fn paths(&self) -> &[LatticePath] {
        &self.paths
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn lower(&self) -> &[Point] {
        &self.lower
    }

    pub fn upper(&self) -> &[Point] {
        &self.upper
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn sign(&self) -> i32 {
        permutation_sign(&self.perm)
    }

    pub fn weight(&self) -> Monomial {
        self.paths.iter().fold(Monomial::one(), |acc, p| acc.mul(&p.weight()))
    }

    /// `sign * weight` as a polynomial.
    pub fn signed_weight(&self) -> MultiPoly {
        MultiPoly::term(self.weight(), self.sign())
    }

    /// Multiplicity of every visited point.
    pub fn point_multiplicities(&self) -> HashMap<Point, usize> {
        let mut counts = HashMap::new();
        for p in &self.paths {
            for q in p.points() {
                *counts.entry(q).or_insert(0) += 1;
            }
        }
        counts
    }

    /// The lexicographically smallest point shared by two paths.
    pub fn first_intersection(&self) -> Option<Point> {
        self.point_multiplicities().into_iter().filter(|&(_, c)| c >= 2).map(|(p, _)| p).min()
    }

    /// The shape and shift that produce these endpoints under [`endpoints_for_shape`].
    ///
    /// The shift is chosen so that `mu_m = 0`; trailing rows with no cells are dropped
    /// from the shape.
    pub fn shape_context(&self) -> Result<(Shape, i64)> {
        let m = self.len();
        if m == 0 {
            return Ok((Shape::empty(), 0));
        }
        let t = self.lower[m - 1].x + m as i64;
        let mu: Vec<i64> = (0..m).map(|i| self.lower[i].x + i as i64 + 1 - t).collect();
        let lambda: Vec<i64> = (0..m).map(|i| self.upper[i].x + i as i64 + 1 - t).collect();
        let sh = Shape::new(Semipartition::new(lambda, 0)?, Semipartition::new(mu, 0)?)?;
        Ok((sh, t))
    }
}

impl fmt::Display for PathTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.paths.iter().enumerate() {
            writeln!(f, "p{}: {} -> {}  {}", i + 1, p.start(), p.end(), p.word())?;
        }
        Ok(())
    }
}

/// Lower points `(mu_i - i + t, 1)` and upper points `(lambda_i - i + t, n)` for
/// `i = 1..=length`, computed on the normalized shape.
pub fn endpoints_for_shape(sh: &Shape, n: i64, t: i64) -> (Vec<Point>, Vec<Point>) {
    let sh = sh.shift_normalize();
    let m = sh.length();
    let lower = (1..=m).map(|i| Point::new(sh.mu().part(i) - i as i64 + t, 1)).collect();
    let upper = (1..=m).map(|i| Point::new(sh.lambda().part(i) - i as i64 + t, n)).collect();
    (lower, upper)
}

/// The nonintersecting family of a tableau: the `k`-th horizontal step of path `i`
/// sits at the height given by the `k`-th entry of row `i`.
pub fn tableau_to_paths(t: &Tableau, shift: i64) -> PathTuple {
    let n = t.n() as i64;
    let (lower, upper) = endpoints_for_shape(t.shape(), n, shift);
    let paths = t
        .rows()
        .iter()
        .zip(&lower)
        .map(|(row, &start)| {
            let mut steps = Vec::new();
            let mut h = 1;
            for &e in row {
                steps.extend(std::iter::repeat(Step::V).take((e as i64 - h) as usize));
                steps.push(Step::H);
                h = e as i64;
            }
            steps.extend(std::iter::repeat(Step::V).take((n - h) as usize));
            LatticePath { start, steps }
        })
        .collect();
    let m = lower.len();
    PathTuple { paths, perm: (0..m).collect(), lower, upper, n }
}

/// Inverse of [`tableau_to_paths`]; the shape is recovered from the endpoints.
pub fn paths_to_tableau(p: &PathTuple) -> Result<Tableau> {
    if !p.is_identity() || !is_nonintersecting(p) {
        return Err(Error::NotNonintersecting);
    }
    let (sh, _) = p.shape_context()?;
    let rows = p.paths[..sh.length()]
        .iter()
        .map(|path| path.horizontal_heights().into_iter().map(|h| h as u32).collect())
        .collect();
    Tableau::new(&sh, p.n as u32, rows)
}

pub fn is_nonintersecting(p: &PathTuple) -> bool {
    p.point_multiplicities().values().all(|&c| c < 2)
}

/// Exchanges the initial segments of the two paths through the lexicographically
/// smallest intersection point.
pub fn lgv_involution(p: &PathTuple) -> Result<PathTuple> {
    let q = p.first_intersection().ok_or(Error::Nonintersecting)?;
    let through: Vec<usize> = (0..p.len()).filter(|&i| p.paths[i].points().contains(&q)).collect();
    assert_eq!(through.len(), 2, "more than two paths meet at the first intersection {q}");
    let (i, j) = (through[0], through[1]);
    let (pre_i, post_i) = p.paths[i].split_at(q).expect("path i visits q");
    let (pre_j, post_j) = p.paths[j].split_at(q).expect("path j visits q");
    let mut out = p.clone();
    out.paths[i] = LatticePath { start: p.paths[j].start, steps: [pre_j, post_i].concat() };
    out.paths[j] = LatticePath { start: p.paths[i].start, steps: [pre_i, post_j].concat() };
    out.perm.swap(i, j);
    Ok(out)
}

/// All paths from `v` to `w`, in lexicographic order of their step words (`H < V`).
pub fn all_paths(v: Point, w: Point) -> Vec<LatticePath> {
    let dx = w.x - v.x;
    let dy = w.y - v.y;
    if dx < 0 || dy < 0 {
        return Vec::new();
    }
    let len = (dx + dy) as usize;
    (0..len)
        .combinations(dy as usize)
        .map(|vs| {
            let steps = (0..len).map(|k| if vs.contains(&k) { Step::V } else { Step::H }).collect();
            LatticePath { start: v, steps }
        })
        .sorted_by(|a, b| a.steps.cmp(&b.steps))
        .collect()
}

/// Number of paths from `v` to `w`.
pub fn count_paths(v: Point, w: Point) -> BigInt {
    let dx = w.x - v.x;
    let dy = w.y - v.y;
    if dx < 0 || dy < 0 {
        return BigInt::from(0);
    }
    let (k, total) = (dx.min(dy) as u64, (dx + dy) as u64);
    (0..k).fold(BigInt::from(1), |acc, i| acc * (total - i) / (i + 1))
}

/// Every tuple of the signed set for `sh`: all permutations, all path choices.
///
/// The tuple count is computed first and compared against `budget`.
pub fn enumerate_signed_tuples(sh: &Shape, n: i64, budget: usize) -> Result<Vec<PathTuple>> {
    let (lower, upper) = endpoints_for_shape(sh, n, 0);
    let m = lower.len();
    let total: BigInt = (0..m)
        .permutations(m)
        .map(|perm| perm.iter().enumerate().map(|(i, &p)| count_paths(lower[p], upper[i])).product::<BigInt>())
        .sum();
    if total > BigInt::from(budget) {
        return Err(Error::BudgetExceeded { what: "path tuple", limit: budget, flag: "max-tuples" });
    }
    if m == 0 {
        return Ok(vec![PathTuple { paths: vec![], perm: vec![], lower, upper, n }]);
    }
    let mut out = Vec::new();
    for perm in (0..m).permutations(m) {
        let choices: Vec<Vec<LatticePath>> = perm.iter().enumerate().map(|(i, &p)| all_paths(lower[p], upper[i])).collect();
        for combo in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            out.push(PathTuple {
                paths: combo.into_iter().cloned().collect(),
                perm: perm.clone(),
                lower: lower.clone(),
                upper: upper.clone(),
                n,
            });
        }
    }
    Ok(out)
}

/// `sum sign(P) * weight(P)`.
pub fn signed_weight_sum<'a>(tuples: impl IntoIterator<Item = &'a PathTuple>) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for t in tuples {
        p.add_term(t.weight(), &BigInt::from(t.sign()));
    }
    p
}

/// Generating function of all paths from `v` to `w`: `h_{w.x - v.x}(x_{v.y}, ..., x_{w.y})`.
pub fn gf_paths(v: Point, w: Point) -> Result<MultiPoly> {
    if v.y < 1 {
        return Err(Error::InvalidRange { lo: v.y, hi: w.y });
    }
    if w.x < v.x || w.y < v.y {
        return Ok(MultiPoly::zero());
    }
    complete_homogeneous(w.x - v.x, v.y, w.y)
}

/// A uniformly random path from `v` to `w` (`None` if there is none).
pub fn random_path<R: Rng>(v: Point, w: Point, rng: &mut R) -> Option<LatticePath> {
    let dx = w.x - v.x;
    let dy = w.y - v.y;
    if dx < 0 || dy < 0 {
        return None;
    }
    let mut steps: Vec<Step> = std::iter::repeat(Step::H)
        .take(dx as usize)
        .chain(std::iter::repeat(Step::V).take(dy as usize))
        .collect();
    steps.shuffle(rng);
    Some(LatticePath { start: v, steps })
}

/// A random element of the signed set for `sh` (random permutation, random paths),
/// or `None` when the drawn permutation admits no paths.
pub fn random_signed_tuple<R: Rng>(sh: &Shape, n: i64, rng: &mut R) -> Option<PathTuple> {
    let (lower, upper) = endpoints_for_shape(sh, n, 0);
    let m = lower.len();
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let paths = perm
        .iter()
        .enumerate()
        .map(|(i, &p)| random_path(lower[p], upper[i], rng))
        .collect::<Option<Vec<_>>>()?;
    Some(PathTuple { paths, perm, lower, upper, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::{enumerate_ssyt, skew_schur, tableau_weight};

    fn shape(s: &str) -> Shape {
        s.parse().unwrap()
    }

    #[test]
    fn lexicographic_order() {
        assert!(Point::new(1, 5) < Point::new(2, 1));
        assert!(Point::new(2, 1) < Point::new(2, 3));
    }

    #[test]
    fn endpoint_examples() {
        let (lower, _) = endpoints_for_shape(&shape("9,7,5,3,3,1"), 6, 0);
        assert_eq!(lower, (1..=6).map(|i| Point::new(-i, 1)).collect::<Vec<_>>());
        let (_, upper) = endpoints_for_shape(&shape("8,6,4,3"), 7, 0);
        assert!(upper.contains(&Point::new(7, 7)));
        let (l, u) = endpoints_for_shape(&Shape::empty(), 3, 0);
        assert!(l.is_empty() && u.is_empty());
    }

    #[test]
    fn single_row_tableau_path() {
        let t = Tableau::new(&shape("2"), 3, vec![vec![1, 2]]).unwrap();
        let p = tableau_to_paths(&t, 0);
        assert_eq!(p.paths()[0].word(), "HVHV");
        assert_eq!(p.paths()[0].horizontal_heights(), vec![1, 2]);
    }

    #[test]
    fn bijection_round_trip() {
        for t in enumerate_ssyt(&shape("2,1"), 3) {
            let p = tableau_to_paths(&t, 0);
            assert!(is_nonintersecting(&p));
            assert_eq!(p.weight(), tableau_weight(&t));
            assert_eq!(paths_to_tableau(&p).unwrap(), t);
        }
    }

    #[test]
    fn paths_to_tableau_rejects_non_identity() {
        let tuples = enumerate_signed_tuples(&shape("1,1"), 2, 100).unwrap();
        let bad = tuples.iter().find(|t| !t.is_identity()).unwrap();
        assert_eq!(paths_to_tableau(bad), Err(Error::NotNonintersecting));
    }

    #[test]
    fn signed_sums() {
        let s = signed_weight_sum(&enumerate_signed_tuples(&shape("1,1"), 2, 100).unwrap());
        assert_eq!(s.to_string(), "x1*x2");
        let s = signed_weight_sum(&enumerate_signed_tuples(&shape("2"), 2, 100).unwrap());
        assert_eq!(s, complete_homogeneous(2, 1, 2).unwrap());
        let s = signed_weight_sum(&enumerate_signed_tuples(&shape("2,1"), 2, 100).unwrap());
        assert_eq!(s, skew_schur(&shape("2,1"), 2));
        assert!(matches!(
            enumerate_signed_tuples(&shape("3,3,3"), 3, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn involution_on_small_tuples() {
        for t in enumerate_signed_tuples(&shape("2,2/1"), 3, 10_000).unwrap() {
            if is_nonintersecting(&t) {
                assert_eq!(lgv_involution(&t), Err(Error::Nonintersecting));
                continue;
            }
            let u = lgv_involution(&t).unwrap();
            assert_eq!(u.weight(), t.weight());
            assert_eq!(u.sign(), -t.sign());
            assert_eq!(u.first_intersection(), t.first_intersection());
            assert_eq!(lgv_involution(&u).unwrap(), t);
        }
    }

    #[test]
    fn gf_paths_examples() {
        let g = gf_paths(Point::new(-4, 5), Point::new(4, 13)).unwrap();
        assert_eq!(g, complete_homogeneous(8, 5, 13).unwrap());
        let m = Monomial::from_pairs([(Var::x(5), 1), (Var::x(6), 4), (Var::x(7), 1), (Var::x(9), 2)]);
        assert_eq!(g.coefficient(&m), BigInt::from(1));
        assert!(gf_paths(Point::new(3, 1), Point::new(2, 4)).unwrap().is_zero());
        assert!(gf_paths(Point::new(3, 2), Point::new(3, 2)).unwrap().is_one());
        for t in -3..=3 {
            assert_eq!(gf_paths(Point::new(-4 + t, 5), Point::new(4 + t, 13)).unwrap(), g);
        }
    }

    #[test]
    fn gf_matches_path_count() {
        let (v, w) = (Point::new(0, 1), Point::new(3, 3));
        let all = all_paths(v, w);
        assert_eq!(BigInt::from(all.len()), count_paths(v, w));
        let mut sum = MultiPoly::zero();
        for p in &all {
            sum.add_term(p.weight(), &BigInt::from(1));
        }
        assert_eq!(sum, gf_paths(v, w).unwrap());
    }
}
