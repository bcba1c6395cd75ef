#![allow(dead_code)]

use detpaths::{LatticePath, PathTuple, Point, Shape};

/// Partitions with at most `len` parts, each at most `max_part` (including the empty one).
pub fn partitions(len: usize, max_part: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        if cur.len() == len {
            return;
        }
        for p in 1..=cap {
            cur.push(p);
            go(len, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max_part, &mut Vec::new(), &mut out);
    out
}

/// Every `lambda/mu` with `lambda` inside the `len x max_part` box, `mu ⊆ lambda` and
/// at most `max_weight` cells.
pub fn skew_lattice(len: usize, max_part: i64, max_weight: i64) -> Vec<Shape> {
    let ps = partitions(len, max_part);
    let mut out = Vec::new();
    for lambda in &ps {
        for mu in &ps {
            if mu.len() > lambda.len() || mu.iter().zip(lambda).any(|(m, l)| m > l) {
                continue;
            }
            let w: i64 = lambda.iter().sum::<i64>() - mu.iter().sum::<i64>();
            if w <= max_weight {
                out.push(Shape::from_parts(lambda, mu).unwrap());
            }
        }
    }
    out
}

/// The intersecting quadruple drawn for lambda = (8,6,4,3), n = 7, shift 5. Paths are
/// listed from the right.
pub fn fig_lgt() -> PathTuple {
    let starts = [(4, "HHVHVHHVVVHHHV"), (3, "VHHHVVVHHHVV"), (2, "VVVVHHHHVV"), (1, "VVVVVVHHH")];
    let paths: Vec<LatticePath> = starts
        .iter()
        .map(|&(x, w)| LatticePath::from_word(Point::new(x, 1), w).unwrap())
        .collect();
    let lower = (1..=4).map(|x| Point::new(5 - x, 1)).collect();
    let upper = [12, 9, 6, 4].iter().map(|&x| Point::new(x, 7)).collect();
    PathTuple::new(paths, vec![0, 1, 2, 3], lower, upper, 7).unwrap()
}
