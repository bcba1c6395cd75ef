//! Overlays of a green and a red nonintersecting family, bicoloured trails, the
//! recolouring involution, and the bijective proof of Dodgson's condensation.
//!
//! Trails follow the "always switch" rule: at a point visited by both colours the
//! green in-slot is paired with the red in-slot and the green out-slot with the red
//! out-slot, so swapping colours along a trail keeps every point balanced for each
//! colour. A path start counts as an in-slot, a path end as an out-slot. Arcs used by
//! both colours pair up into closed two-cycles and are never recoloured.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{all_paths, tableau_to_paths, LatticePath, PathTuple, Point, Step};
use crate::poly::{Monomial, MultiPoly};
use crate::shapes::{Semipartition, Shape};
use crate::tableaux::{count_ssyt, enumerate_ssyt, skew_schur_bounded};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Green,
    Red,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Green => Colour::Red,
            Colour::Red => Colour::Green,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Green => "green",
            Colour::Red => "red",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndKind {
    Lower,
    Upper,
}

/// A path start (`Lower`) or end (`Upper`) of one colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub colour: Colour,
    pub point: Point,
    pub kind: EndKind,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            EndKind::Lower => "lower",
            EndKind::Upper => "upper",
        };
        write!(f, "{} {k} {}", self.colour, self.point)
    }
}

/// An arc `from -> from.step(step)` owned by `colour`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub colour: Colour,
    pub from: Point,
    pub step: Step,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BicolouredTrail {
    pub start: Endpoint,
    pub end: Endpoint,
    pub arcs: Vec<Arc>,
}

/// A green and a red nonintersecting family on the same levels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Overlay {
    green: PathTuple,
    red: PathTuple,
}

fn check_family(p: &PathTuple) -> Result<()> {
    if !p.is_identity() || p.first_intersection().is_some() {
        return Err(Error::NotNonintersecting);
    }
    Ok(())
}

impl Overlay {
    pub fn new(green: PathTuple, red: PathTuple) -> Result<Self> {
        check_family(&green)?;
        check_family(&red)?;
        if green.n() != red.n() {
            return Err(Error::DimensionMismatch(format!("levels {} and {}", green.n(), red.n())));
        }
        Ok(Overlay { green, red })
    }

    pub fn green(&self) -> &PathTuple {
        &self.green
    }

    pub fn red(&self) -> &PathTuple {
        &self.red
    }

    pub fn family(&self, c: Colour) -> &PathTuple {
        match c {
            Colour::Green => &self.green,
            Colour::Red => &self.red,
        }
    }

    pub fn n(&self) -> i64 {
        self.green.n()
    }

    pub fn weight(&self) -> Monomial {
        self.green.weight().mul(&self.red.weight())
    }

    /// Every endpoint of both colours.
    pub fn endpoints(&self) -> Vec<Endpoint> {
        let mut out = Vec::new();
        for c in [Colour::Green, Colour::Red] {
            let f = self.family(c);
            out.extend(f.lower().iter().map(|&point| Endpoint { colour: c, point, kind: EndKind::Lower }));
            out.extend(f.upper().iter().map(|&point| Endpoint { colour: c, point, kind: EndKind::Upper }));
        }
        out
    }

    /// Endpoints whose partner under the pairing rule is not an endpoint of the other colour.
    pub fn free_endpoints(&self) -> Vec<Endpoint> {
        let idx = Index::new(self);
        self.endpoints()
            .into_iter()
            .filter(|e| {
                let dir = Dir::of(e.kind);
                let (c, d) = idx.partner(e.point, e.colour, dir);
                !(c != e.colour && idx.slot(c, e.point, d).is_none_or_end())
            })
            .collect()
    }

    /// All arcs with their owners.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::new();
        for c in [Colour::Green, Colour::Red] {
            for p in self.family(c).paths() {
                out.extend(p.arcs().into_iter().map(|(from, step)| Arc { colour: c, from, step }));
            }
        }
        out
    }
}

impl fmt::Display for Overlay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "green:")?;
        write!(f, "{}", self.green)?;
        writeln!(f, "red:")?;
        write!(f, "{}", self.red)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    In,
    Out,
}

impl Dir {
    fn of(kind: EndKind) -> Dir {
        match kind {
            EndKind::Lower => Dir::In,
            EndKind::Upper => Dir::Out,
        }
    }

    fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    End(EndKind),
    Arc(Point, Step),
}

trait SlotExt {
    fn is_none_or_end(&self) -> bool;
}

impl SlotExt for Option<Slot> {
    fn is_none_or_end(&self) -> bool {
        !matches!(self, Some(Slot::Arc(..)))
    }
}

/// Where each colour visits each point: `(path index, position along the path)`.
struct Index<'a> {
    o: &'a Overlay,
    visits: [HashMap<Point, (usize, usize)>; 2],
}

fn ci(c: Colour) -> usize {
    match c {
        Colour::Green => 0,
        Colour::Red => 1,
    }
}

impl<'a> Index<'a> {
    fn new(o: &'a Overlay) -> Self {
        let build = |f: &PathTuple| {
            let mut m = HashMap::new();
            for (i, p) in f.paths().iter().enumerate() {
                for (k, q) in p.points().into_iter().enumerate() {
                    m.insert(q, (i, k));
                }
            }
            m
        };
        Index { o, visits: [build(&o.green), build(&o.red)] }
    }

    fn visits(&self, c: Colour, p: Point) -> bool {
        self.visits[ci(c)].contains_key(&p)
    }

    fn slot(&self, c: Colour, p: Point, d: Dir) -> Option<Slot> {
        let &(i, k) = self.visits[ci(c)].get(&p)?;
        let path: &LatticePath = &self.o.family(c).paths()[i];
        let steps = path.steps();
        Some(match d {
            Dir::In if k == 0 => Slot::End(EndKind::Lower),
            Dir::In => {
                let s = steps[k - 1];
                let from = match s {
                    Step::H => Point::new(p.x - 1, p.y),
                    Step::V => Point::new(p.x, p.y - 1),
                };
                Slot::Arc(from, s)
            }
            Dir::Out if k == steps.len() => Slot::End(EndKind::Upper),
            Dir::Out => Slot::Arc(p, steps[k]),
        })
    }

    fn partner(&self, p: Point, c: Colour, d: Dir) -> (Colour, Dir) {
        if self.visits(c.other(), p) {
            (c.other(), d)
        } else {
            (c, d.flip())
        }
    }
}

fn endpoint_of(o: &Overlay, p: Point) -> Option<Endpoint> {
    o.endpoints().into_iter().find(|e| e.point == p)
}

/// The maximal trail starting at the free endpoint at `p`. When both colours end at
/// `p` the point is not free.
pub fn trail_from(o: &Overlay, p: Point) -> Result<BicolouredTrail> {
    let start = endpoint_of(o, p).ok_or(Error::NotAnEndpoint(p))?;
    let idx = Index::new(o);
    let dir = Dir::of(start.kind);
    let (c0, d0) = idx.partner(p, start.colour, dir);
    if c0 != start.colour && idx.slot(c0, p, d0).is_none_or_end() {
        return Err(Error::NotAnEndpoint(p));
    }
    let mut arcs = Vec::new();
    let mut seen = HashSet::new();
    let (mut at, mut colour, mut arrived) = (p, start.colour, dir);
    loop {
        let (c, d) = idx.partner(at, colour, arrived);
        match idx.slot(c, at, d).expect("partner colour visits the point") {
            Slot::End(kind) => {
                let end = Endpoint { colour: c, point: at, kind };
                return Ok(BicolouredTrail { start, end, arcs });
            }
            Slot::Arc(from, step) => {
                let arc = Arc { colour: c, from, step };
                assert!(seen.insert(arc), "trail revisits the arc {arc:?}");
                arcs.push(arc);
                at = if d == Dir::In { from } else { from.step(step) };
                colour = c;
                arrived = d.flip();
            }
        }
    }
}

/// Swaps the colour of every arc and both end points of `t`.
pub fn recolour(o: &Overlay, t: &BicolouredTrail) -> Result<Overlay> {
    if trail_from(o, t.start.point).ok().as_ref() != Some(t) {
        return Err(Error::ForeignTrail);
    }
    let trail_arcs: HashSet<Arc> = t.arcs.iter().copied().collect();
    let mut out_arcs: [HashMap<Point, Step>; 2] = [HashMap::new(), HashMap::new()];
    for a in o.arcs() {
        let c = if trail_arcs.contains(&a) { a.colour.other() } else { a.colour };
        let prev = out_arcs[ci(c)].insert(a.from, a.step);
        assert!(prev.is_none(), "two {c} arcs leave {}", a.from);
    }
    let mut ends: [[Vec<Point>; 2]; 2] = Default::default();
    for e in o.endpoints() {
        let moved = e == t.start || e == t.end;
        let c = if moved { e.colour.other() } else { e.colour };
        let k = if e.kind == EndKind::Lower { 0 } else { 1 };
        ends[ci(c)][k].push(e.point);
    }
    let n = o.n();
    let mut fams = Vec::with_capacity(2);
    for c in [Colour::Green, Colour::Red] {
        let [lower, upper] = &mut ends[ci(c)];
        lower.sort_by(|a, b| b.cmp(a));
        upper.sort_by(|a, b| b.cmp(a));
        let mut by_end: HashMap<Point, LatticePath> = HashMap::new();
        let mut used = 0;
        for &s in lower.iter() {
            let mut steps = Vec::new();
            let mut q = s;
            while let Some(&st) = out_arcs[ci(c)].get(&q) {
                steps.push(st);
                q = q.step(st);
            }
            used += steps.len();
            by_end.insert(q, LatticePath::new(s, steps)?);
        }
        if used != out_arcs[ci(c)].len() {
            return Err(Error::NotNonintersecting);
        }
        let paths = upper
            .iter()
            .map(|q| by_end.remove(q).ok_or(Error::NotNonintersecting))
            .collect::<Result<Vec<_>>>()?;
        let perm: Vec<usize> = paths
            .iter()
            .map(|p| lower.iter().position(|&l| l == p.start()).expect("start is a lower point"))
            .collect();
        fams.push(PathTuple::new(paths, perm, lower.clone(), upper.clone(), n)?);
    }
    let red = fams.pop().expect("two families");
    let green = fams.pop().expect("two families");
    Overlay::new(green, red)
}

/// The trails from every free endpoint, each reported once as a pair of end points.
pub fn trail_structure(o: &Overlay) -> Vec<(Endpoint, Endpoint)> {
    let mut pairs: Vec<(Endpoint, Endpoint)> = o
        .free_endpoints()
        .into_iter()
        .map(|e| {
            let t = trail_from(o, e.point).expect("free endpoint");
            if t.start <= t.end {
                (t.start, t.end)
            } else {
                (t.end, t.start)
            }
        })
        .collect();
    pairs.sort();
    pairs.dedup();
    pairs
}

/// All nonintersecting families with path `i` from `lower[i]` to `upper[i]`.
pub fn nonintersecting_families(lower: &[Point], upper: &[Point], n: i64, budget: usize) -> Result<Vec<PathTuple>> {
    if lower.len() != upper.len() {
        return Err(Error::DimensionMismatch(format!("{} lower and {} upper points", lower.len(), upper.len())));
    }
    let choices: Vec<Vec<LatticePath>> = lower.iter().zip(upper).map(|(&v, &w)| all_paths(v, w)).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = HashSet::new();
    extend_families(&choices, &mut current, &mut used, &mut out, budget)?;
    let m = lower.len();
    out.into_iter()
        .map(|paths| PathTuple::new(paths, (0..m).collect(), lower.to_vec(), upper.to_vec(), n))
        .collect()
}

fn extend_families(
    choices: &[Vec<LatticePath>],
    current: &mut Vec<LatticePath>,
    used: &mut HashSet<Point>,
    out: &mut Vec<Vec<LatticePath>>,
    budget: usize,
) -> Result<()> {
    let i = current.len();
    if i == choices.len() {
        if out.len() >= budget {
            return Err(Error::BudgetExceeded { what: "overlay", limit: budget, flag: "max-overlays" });
        }
        out.push(current.clone());
        return Ok(());
    }
    for p in &choices[i] {
        let pts = p.points();
        if pts.iter().any(|q| used.contains(q)) {
            continue;
        }
        used.extend(pts.iter().copied());
        current.push(p.clone());
        extend_families(choices, current, used, out, budget)?;
        current.pop();
        for q in &pts {
            used.remove(q);
        }
    }
    Ok(())
}

/// A random nonintersecting family: the lowest family, shuffled by random corner flips.
/// Returns `None` when no family exists or `max_steps` candidate paths were tried.
pub fn random_family<R: Rng>(lower: &[Point], upper: &[Point], n: i64, rng: &mut R, max_steps: usize) -> Option<PathTuple> {
    // Start from the lowest family, then randomize by corner flips.
    let choices: Vec<Vec<LatticePath>> = lower.iter().zip(upper).map(|(&v, &w)| all_paths(v, w)).collect();
    let mut paths = Vec::new();
    let mut used = HashSet::new();
    let mut steps = 0;
    if !lowest_dfs(&choices, &mut paths, &mut used, &mut steps, max_steps) {
        return None;
    }
    let mut words: Vec<Vec<Step>> = paths.iter().map(|p| p.steps().to_vec()).collect();
    let total: usize = words.iter().map(|w| w.len()).sum();
    if total > 1 {
        for _ in 0..40 * total {
            let i = rng.gen_range(0..words.len());
            let len = words[i].len();
            if len < 2 {
                continue;
            }
            let j = rng.gen_range(0..len - 1);
            if words[i][j] == words[i][j + 1] {
                continue;
            }
            // Swapping steps j, j+1 moves exactly the point after step j.
            let before = paths[i].points()[j];
            let moved = before.step(words[i][j + 1]);
            if used.contains(&moved) {
                continue;
            }
            used.remove(&before.step(words[i][j]));
            used.insert(moved);
            words[i].swap(j, j + 1);
            paths[i] = LatticePath::new(paths[i].start(), words[i].clone()).ok()?;
        }
    }
    let m = paths.len();
    PathTuple::new(paths, (0..m).collect(), lower.to_vec(), upper.to_vec(), n).ok()
}

fn lowest_dfs(
    choices: &[Vec<LatticePath>],
    current: &mut Vec<LatticePath>,
    used: &mut HashSet<Point>,
    steps: &mut usize,
    max_steps: usize,
) -> bool {
    let i = current.len();
    if i == choices.len() {
        return true;
    }
    for p in &choices[i] {
        *steps += 1;
        if *steps > max_steps {
            return false;
        }
        let pts = p.points();
        if pts.iter().any(|q| used.contains(q)) {
            continue;
        }
        used.extend(pts.iter().copied());
        current.push(p.clone());
        if lowest_dfs(choices, current, used, steps, max_steps) {
            return true;
        }
        current.pop();
        for q in &pts {
            used.remove(q);
        }
    }
    false
}

/// All overlays of a green family for `sh1` (shift `t1`) and a red family for `sh2`
/// (shift `t2`), enumerated from tableaux.
pub fn enumerate_overlays(sh1: &Shape, t1: i64, sh2: &Shape, t2: i64, n: u32, budget: usize) -> Result<Vec<Overlay>> {
    let total = BigInt::from(count_ssyt(sh1, n)) * BigInt::from(count_ssyt(sh2, n));
    if total > BigInt::from(budget) {
        return Err(Error::BudgetExceeded { what: "overlay", limit: budget, flag: "max-overlays" });
    }
    let greens: Vec<PathTuple> = enumerate_ssyt(sh1, n).map(|t| tableau_to_paths(&t, t1)).collect();
    let reds: Vec<PathTuple> = enumerate_ssyt(sh2, n).map(|t| tableau_to_paths(&t, t2)).collect();
    let mut out = Vec::with_capacity(greens.len() * reds.len());
    for g in &greens {
        for r in &reds {
            out.push(Overlay::new(g.clone(), r.clone())?);
        }
    }
    Ok(out)
}

/// `sum weight(o)` over a set of overlays.
pub fn overlay_gf<'a>(overlays: impl IntoIterator<Item = &'a Overlay>) -> MultiPoly {
    let mut p = MultiPoly::zero();
    let one = BigInt::from(1);
    for o in overlays {
        p.add_term(o.weight(), &one);
    }
    p
}

/// The three overlay sets of the Schur form of Dodgson's condensation. With lower points
/// `s_i = (-i, 1)` and upper points `t_j = (lambda_j - j, n)`:
///
/// - `Full`: green `s_1..s_m -> t_1..t_m`, red `s_2..s_{m-1} -> t_2..t_{m-1}`;
/// - `Minors`: green `s_2..s_m -> t_2..t_m`, red `s_1..s_{m-1} -> t_1..t_{m-1}`;
/// - `Cross`: green `s_2..s_m -> t_1..t_{m-1}`, red `s_1..s_{m-1} -> t_2..t_m`.
///
/// `Full + Cross = Minors`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DodgsonTerm {
    Full,
    Minors,
    Cross,
}

impl DodgsonTerm {
    pub const ALL: [DodgsonTerm; 3] = [DodgsonTerm::Full, DodgsonTerm::Minors, DodgsonTerm::Cross];
}

/// Endpoint layout of the Dodgson overlays for a partition `lambda` of length `m >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DodgsonLayout {
    pub lambda: Semipartition,
    pub n: i64,
    pub s: Vec<Point>,
    pub t: Vec<Point>,
}

type Ends = (Vec<Point>, Vec<Point>, Vec<Point>, Vec<Point>);

impl DodgsonLayout {
    pub fn new(lambda: &Semipartition, n: u32) -> Result<Self> {
        let m = lambda.length();
        if !lambda.is_partition() || m < 2 {
            return Err(Error::InvalidParameters(format!("{lambda} needs to be a partition of length >= 2")));
        }
        if n == 0 {
            return Err(Error::InvalidParameters("n must be positive".into()));
        }
        let n = n as i64;
        let s = (1..=m).map(|i| Point::new(-(i as i64), 1)).collect();
        let t = (1..=m).map(|j| Point::new(lambda.part(j) - j as i64, n)).collect();
        Ok(DodgsonLayout { lambda: lambda.clone(), n, s, t })
    }

    pub fn m(&self) -> usize {
        self.s.len()
    }

    /// `(green lower, green upper, red lower, red upper)` for a term.
    pub fn ends(&self, term: DodgsonTerm) -> Ends {
        let m = self.m();
        let (s, t) = (&self.s, &self.t);
        match term {
            DodgsonTerm::Full => (s.clone(), t.clone(), s[1..m - 1].to_vec(), t[1..m - 1].to_vec()),
            DodgsonTerm::Minors => (s[1..].to_vec(), t[1..].to_vec(), s[..m - 1].to_vec(), t[..m - 1].to_vec()),
            DodgsonTerm::Cross => (s[1..].to_vec(), t[..m - 1].to_vec(), s[..m - 1].to_vec(), t[1..].to_vec()),
        }
    }

    /// Which term an overlay belongs to, by its endpoints.
    pub fn classify(&self, o: &Overlay) -> Option<DodgsonTerm> {
        let key = (o.green.lower().to_vec(), o.green.upper().to_vec(), o.red.lower().to_vec(), o.red.upper().to_vec());
        DodgsonTerm::ALL.into_iter().find(|&term| self.ends(term) == key)
    }

    /// The rightmost upper point `t_1`, where every recolouring trail starts.
    pub fn handle(&self) -> Point {
        self.t[0]
    }

    pub fn overlays(&self, term: DodgsonTerm, budget: usize) -> Result<Vec<Overlay>> {
        let (gl, gu, rl, ru) = self.ends(term);
        let greens = nonintersecting_families(&gl, &gu, self.n, budget)?;
        let reds = nonintersecting_families(&rl, &ru, self.n, budget)?;
        if greens.len().saturating_mul(reds.len()) > budget {
            return Err(Error::BudgetExceeded { what: "overlay", limit: budget, flag: "max-overlays" });
        }
        let mut out = Vec::with_capacity(greens.len() * reds.len());
        for g in &greens {
            for r in &reds {
                out.push(Overlay::new(g.clone(), r.clone())?);
            }
        }
        Ok(out)
    }

    /// A random overlay of a term, or `None` if sampling failed.
    pub fn random_overlay<R: Rng>(&self, term: DodgsonTerm, rng: &mut R) -> Option<Overlay> {
        let (gl, gu, rl, ru) = self.ends(term);
        let g = random_family(&gl, &gu, self.n, rng, 200_000)?;
        let r = random_family(&rl, &ru, self.n, rng, 200_000)?;
        Overlay::new(g, r).ok()
    }
}

/// Recolours the trail from the rightmost upper point.
pub fn dodgson_recolour(layout: &DodgsonLayout, o: &Overlay) -> Result<(BicolouredTrail, Overlay)> {
    let t = trail_from(o, layout.handle())?;
    let image = recolour(o, &t)?;
    Ok((t, image))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub lambda: Vec<i64>,
    pub n: u32,
    pub full: usize,
    pub minors: usize,
    pub cross: usize,
    /// `Minors` overlays sent to `Full` and to `Cross`.
    pub minors_to_full: usize,
    pub minors_to_cross: usize,
    pub multiset_equal: bool,
    pub schur_consistent: bool,
    pub wrong_term: usize,
    pub involution_violations: usize,
    pub weight_violations: usize,
    pub trail_violations: usize,
    pub not_injective: usize,
    pub status: String,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Default)]
struct Tally {
    wrong_term: usize,
    involution: usize,
    weight: usize,
    trail: usize,
    to_full: usize,
    to_cross: usize,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.wrong_term += o.wrong_term;
        self.involution += o.involution;
        self.weight += o.weight;
        self.trail += o.trail;
        self.to_full += o.to_full;
        self.to_cross += o.to_cross;
        self
    }
}

fn check_one(layout: &DodgsonLayout, term: DodgsonTerm, o: &Overlay) -> (Tally, Option<Overlay>) {
    let mut t = Tally::default();
    let handle = layout.handle();
    let Ok((trail, image)) = dodgson_recolour(layout, o) else {
        t.trail += 1;
        return (t, None);
    };
    let ok_end = match term {
        DodgsonTerm::Full => trail.end.point == layout.s[0],
        DodgsonTerm::Cross => trail.end.point == layout.t[layout.m() - 1],
        DodgsonTerm::Minors => trail.end.point == layout.s[0] || trail.end.point == layout.t[layout.m() - 1],
    };
    if !ok_end || trail.start.point != handle {
        t.trail += 1;
    }
    let target = layout.classify(&image);
    match (term, target) {
        (DodgsonTerm::Full | DodgsonTerm::Cross, Some(DodgsonTerm::Minors)) => {}
        (DodgsonTerm::Minors, Some(DodgsonTerm::Full)) => t.to_full += 1,
        (DodgsonTerm::Minors, Some(DodgsonTerm::Cross)) => t.to_cross += 1,
        _ => t.wrong_term += 1,
    }
    if image.weight() != o.weight() {
        t.weight += 1;
    }
    match dodgson_recolour(layout, &image) {
        Ok((_, back)) if back == *o => {}
        _ => t.involution += 1,
    }
    (t, Some(image))
}

/// Exhaustively checks that recolouring the trail from `t_1` is a weight-preserving
/// bijection `Full ⊔ Cross -> Minors` with inverse the same recolouring on `Minors`.
pub fn verify_dodgson_bijection(lambda: &Semipartition, n: u32, budget: usize) -> Result<BijectionReport> {
    let layout = DodgsonLayout::new(lambda, n)?;
    let sets: Vec<Vec<Overlay>> =
        DodgsonTerm::ALL.iter().map(|&term| layout.overlays(term, budget)).collect::<Result<_>>()?;
    let (full, minors, cross) = (&sets[0], &sets[1], &sets[2]);

    let run = |term: DodgsonTerm, set: &Vec<Overlay>| -> (Tally, Vec<Overlay>) {
        let results: Vec<(Tally, Option<Overlay>)> = set.par_iter().map(|o| check_one(&layout, term, o)).collect();
        let mut images = Vec::with_capacity(results.len());
        let mut tally = Tally::default();
        for (t, img) in results {
            tally = tally.merge(t);
            images.extend(img);
        }
        (tally, images)
    };
    let (t_full, img_full) = run(DodgsonTerm::Full, full);
    let (t_cross, img_cross) = run(DodgsonTerm::Cross, cross);
    let (t_minors, _) = run(DodgsonTerm::Minors, minors);
    let tally = t_full.merge(t_cross).merge(t_minors);

    let images: HashSet<&Overlay> = img_full.iter().chain(&img_cross).collect();
    let not_injective = img_full.len() + img_cross.len() - images.len();
    let onto = images.len() == minors.len() && minors.iter().all(|o| images.contains(o));

    let mut counts: HashMap<Monomial, i64> = HashMap::new();
    for o in full.iter().chain(cross) {
        *counts.entry(o.weight()).or_insert(0) += 1;
    }
    for o in minors {
        *counts.entry(o.weight()).or_insert(0) -= 1;
    }
    let multiset_equal = counts.values().all(|&c| c == 0);

    let schur = crate::identities::dodgson_schur_shapes(lambda)?
        .iter()
        .map(|sh| skew_schur_bounded(sh, n, budget))
        .collect::<Result<Vec<MultiPoly>>>()?;
    let schur_consistent = overlay_gf(full) == &schur[0] * &schur[1]
        && overlay_gf(minors) == &schur[2] * &schur[3]
        && overlay_gf(cross) == &schur[4] * &schur[5];

    let pass = multiset_equal
        && schur_consistent
        && onto
        && not_injective == 0
        && tally.wrong_term == 0
        && tally.involution == 0
        && tally.weight == 0
        && tally.trail == 0;
    Ok(BijectionReport {
        lambda: lambda.head().to_vec(),
        n,
        full: full.len(),
        minors: minors.len(),
        cross: cross.len(),
        minors_to_full: tally.to_full,
        minors_to_cross: tally.to_cross,
        multiset_equal,
        schur_consistent,
        wrong_term: tally.wrong_term,
        involution_violations: tally.involution,
        weight_violations: tally.weight,
        trail_violations: tally.trail,
        not_injective: not_injective + usize::from(!onto),
        status: if pass { "pass" } else { "fail" }.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::skew_schur;

    fn part(v: &[i64]) -> Semipartition {
        Semipartition::partition(v).unwrap()
    }

    fn family(lower: &[(i64, i64)], words: &[&str], upper: &[(i64, i64)], n: i64) -> PathTuple {
        let paths = lower
            .iter()
            .zip(words)
            .map(|(&(x, y), w)| LatticePath::from_word(Point::new(x, y), w).unwrap())
            .collect();
        let pts = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| Point::new(x, y)).collect::<Vec<_>>();
        PathTuple::new(paths, (0..lower.len()).collect(), pts(lower), pts(upper), n).unwrap()
    }

    #[test]
    fn interleaved_single_cells() {
        let one: Shape = "1".parse().unwrap();
        let os = enumerate_overlays(&one, 0, &one, 1, 2, 100).unwrap();
        assert_eq!(os.len(), 4);
        let x1x2 = skew_schur(&one, 2);
        assert_eq!(overlay_gf(&os), &x1x2 * &x1x2);
    }

    #[test]
    fn empty_red_family() {
        let sh: Shape = "2,1".parse().unwrap();
        let os = enumerate_overlays(&sh, 0, &Shape::empty(), 0, 2, 100).unwrap();
        assert_eq!(os.len(), 2);
        assert!(os.iter().all(|o| o.red().is_empty()));
    }

    #[test]
    fn disjoint_supports_give_monochrome_trails() {
        let g = family(&[(0, 1)], &["HV"], &[(1, 2)], 2);
        let r = family(&[(5, 1)], &["VH"], &[(6, 2)], 2);
        let o = Overlay::new(g, r).unwrap();
        let t = trail_from(&o, Point::new(1, 2)).unwrap();
        assert_eq!(t.end.point, Point::new(0, 1));
        assert!(t.arcs.iter().all(|a| a.colour == Colour::Green));
        assert_eq!(t.arcs.len(), 2);
        let back = recolour(&o, &t).unwrap();
        assert_eq!(back.red().len(), 2);
        assert!(back.green().is_empty());
        assert!(matches!(trail_from(&o, Point::new(3, 1)), Err(Error::NotAnEndpoint(_))));
    }

    #[test]
    fn crossing_trail_switches_colour() {
        let g = family(&[(0, 1)], &["HHV"], &[(2, 2)], 2);
        let r = family(&[(1, 1)], &["V"], &[(1, 2)], 2);
        let o = Overlay::new(g, r).unwrap();
        let t = trail_from(&o, Point::new(2, 2)).unwrap();
        assert_eq!(t.end, Endpoint { colour: Colour::Red, point: Point::new(1, 2), kind: EndKind::Upper });
        let img = recolour(&o, &t).unwrap();
        assert_eq!(img.weight(), o.weight());
        let t2 = trail_from(&img, Point::new(2, 2)).unwrap();
        assert_eq!(recolour(&img, &t2).unwrap(), o);
        assert!(recolour(&img, &t).is_err());
    }

    #[test]
    fn dodgson_layout_points() {
        let l = DodgsonLayout::new(&part(&[9, 7, 5, 3, 3, 1]), 3).unwrap();
        assert_eq!(l.handle(), Point::new(8, 3));
        assert_eq!(l.t[5], Point::new(-5, 3));
        assert_eq!(l.s[0], Point::new(-1, 1));
        assert!(DodgsonLayout::new(&part(&[3]), 2).is_err());
    }

    #[test]
    fn bijection_small() {
        for (l, n) in [(&[1, 1][..], 2), (&[2, 1], 2), (&[2, 2], 3), (&[3, 2, 1], 2)] {
            let r = verify_dodgson_bijection(&part(l), n, 100_000).unwrap();
            assert!(r.passed(), "{l:?}: {r:?}");
            assert_eq!(r.full + r.cross, r.minors);
        }
    }
}
