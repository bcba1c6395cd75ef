//! Verification of the determinantal and Schur function identities.
//!
//! Three routes: symbolic over matrices of independent variables, symbolic over Schur
//! polynomials computed from tableaux, and seeded integer fuzzing. In the fuzzing
//! route both sides are evaluated twice, once with Bareiss elimination and once with
//! the permutation expansion, and a trial only passes when all four values agree.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    generic_matrix, int_matrix_to_json, permutation_expansion_det, random_int_matrix, shuffle, sumset, trial_rng,
    IndexSet, Matrix, Ring,
};
use crate::poly::MultiPoly;
use crate::shapes::{Semipartition, Shape};
use crate::tableaux::skew_schur_bounded;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_RANGE: (i64, i64) = (-9, 9);
const GATE_SEED: u64 = 0x5EED_0148;
const GATE_TRIALS: u64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Dodgson,
    DodgsonSchur,
    CauchyBinet,
    Pluecker,
    PlueckerGeneral,
    LaplaceColumn,
    LaplaceGeneral,
    Muir148,
    Maybenew,
    MaybenewK4,
    /// Laplace column expansion with the sign of the last term flipped.
    MutantLaplace,
    /// Dodgson's condensation with `+` in place of `-`.
    MutantDodgson,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::Dodgson,
        Identity::DodgsonSchur,
        Identity::CauchyBinet,
        Identity::Pluecker,
        Identity::PlueckerGeneral,
        Identity::LaplaceColumn,
        Identity::LaplaceGeneral,
        Identity::Muir148,
        Identity::Maybenew,
        Identity::MaybenewK4,
        Identity::MutantLaplace,
        Identity::MutantDodgson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Dodgson => "dodgson",
            Identity::DodgsonSchur => "dodgson-schur",
            Identity::CauchyBinet => "cauchy-binet",
            Identity::Pluecker => "pluecker",
            Identity::PlueckerGeneral => "pluecker-general",
            Identity::LaplaceColumn => "laplace-column",
            Identity::LaplaceGeneral => "laplace-general",
            Identity::Muir148 => "muir148",
            Identity::Maybenew => "maybenew",
            Identity::MaybenewK4 => "maybenew-k4",
            Identity::MutantLaplace => "mutant-laplace",
            Identity::MutantDodgson => "mutant-dodgson",
        }
    }

    pub fn default_route(self) -> Route {
        match self {
            Identity::DodgsonSchur => Route::SchurSymbolic,
            _ => Route::IntegerFuzz,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Identity> {
        Identity::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    GenericSymbolic,
    SchurSymbolic,
    IntegerFuzz,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::GenericSymbolic => "generic-symbolic",
            Route::SchurSymbolic => "schur-symbolic",
            Route::IntegerFuzz => "integer-fuzz",
        })
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Route> {
        match s {
            "generic-symbolic" | "generic" => Ok(Route::GenericSymbolic),
            "schur-symbolic" | "schur" => Ok(Route::SchurSymbolic),
            "integer-fuzz" | "fuzz" => Ok(Route::IntegerFuzz),
            other => Err(Error::Parse(format!("unknown route `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Identity parameters. Unset fields take per-identity defaults; see [`Instance::resolve`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub r: Option<IndexSet>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<IndexSet>,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none")]
    pub i: Option<IndexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed: Option<IndexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub matrices: Vec<serde_json::Value>,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_rhs: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema_version: u32,
    pub identity: Identity,
    pub parameters: serde_json::Value,
    pub route: Route,
    pub trials: u64,
    pub status: Status,
    pub vacuous: bool,
    pub counterexample: Option<Counterexample>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts serialize")
    }
}

/// The two evaluated sides of an identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Sides<R> {
    pub lhs: R,
    pub rhs: R,
}

impl<R: Ring> Sides<R> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// How the right-hand side of Muir's §148 identity is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuirReading {
    /// `sum_J ± det(a[I,J]) det(a del I,J)`, signs from positions in `R` and `C`.
    Literal,
    /// `sum_J ± det(a del R\I, C\J) det(a del I, J)`, signs from positions in `R` and `C`.
    CommonMinor,
    /// As `CommonMinor`, signs from the absolute row and column indices.
    CommonMinorAbsolute,
}

impl MuirReading {
    pub const ALL: [MuirReading; 3] = [MuirReading::Literal, MuirReading::CommonMinor, MuirReading::CommonMinorAbsolute];

    fn name(self) -> &'static str {
        match self {
            MuirReading::Literal => "literal",
            MuirReading::CommonMinor => "common-minor",
            MuirReading::CommonMinorAbsolute => "common-minor-absolute",
        }
    }
}

/// Sign convention for the two sums of the generalized condensation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaybenewSigns {
    /// Every product enters with `+`, as displayed.
    SignFree,
    /// Each product carries `(-1)^{sumset(T,R) + sumset(S,C)}`, Laplace style.
    Laplace,
}

impl MaybenewSigns {
    pub const ALL: [MaybenewSigns; 2] = [MaybenewSigns::SignFree, MaybenewSigns::Laplace];

    fn name(self) -> &'static str {
        match self {
            MaybenewSigns::SignFree => "sign-free",
            MaybenewSigns::Laplace => "laplace-signs",
        }
    }
}

/// A fully resolved identity instance over matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Dodgson { m: usize, mutant: bool },
    CauchyBinet { m: usize, n: usize },
    Pluecker { m: usize, r: IndexSet },
    PlueckerGeneral { rows: usize, cols: usize, a: IndexSet, o: IndexSet, r: IndexSet },
    LaplaceColumn { m: usize, j: usize, mutant: bool },
    LaplaceGeneral { m: usize, i: IndexSet },
    Muir148 { size: usize, r: IndexSet, c: IndexSet, i: IndexSet, reading: MuirReading },
    Maybenew { size: usize, r: IndexSet, c: IndexSet, signs: MaybenewSigns },
    MaybenewK4,
}

fn check_subset(name: &str, s: &IndexSet, bound: usize) -> Result<()> {
    if s.iter().any(|x| x > bound) {
        return Err(Error::InvalidParameters(format!("{name}={s} is not within 1..={bound}")));
    }
    IndexSet::new(s.as_slice().to_vec())
        .map(|_| ())
        .map_err(|_| Error::InvalidParameters(format!("{name}={s} must be strictly increasing")))
}

fn check_size(name: &str, s: &IndexSet, size: usize) -> Result<()> {
    if s.len() != size {
        return Err(Error::InvalidParameters(format!("{name}={s} must have {size} elements")));
    }
    Ok(())
}

impl Instance {
    /// Applies defaults and validates. Identities with a sign or reading question are
    /// resolved through their oracle gates.
    pub fn resolve(id: Identity, p: &Params) -> Result<Instance> {
        let inst = match id {
            Identity::Dodgson | Identity::MutantDodgson => {
                let m = p.m.unwrap_or(3);
                if m < 2 {
                    return Err(Error::InvalidParameters("Dodgson's condensation needs m >= 2".into()));
                }
                Instance::Dodgson { m, mutant: id == Identity::MutantDodgson }
            }
            Identity::CauchyBinet => Instance::CauchyBinet { m: p.m.unwrap_or(2), n: p.n.unwrap_or(3) },
            Identity::Pluecker => {
                let m = p.m.unwrap_or(2);
                let r = p.r.clone().unwrap_or_else(|| IndexSet::range(m.min(1)));
                check_subset("R", &r, m)?;
                Instance::Pluecker { m, r }
            }
            Identity::PlueckerGeneral => {
                let m = p.m.unwrap_or(1);
                let k = p.k.unwrap_or(2);
                if k == 0 {
                    return Err(Error::InvalidParameters("k must be positive".into()));
                }
                let cols = m + 2 * k;
                let fixed = p.fixed.clone().unwrap_or_else(|| IndexSet::range(2 * k));
                check_subset("fixed", &fixed, cols)?;
                check_size("fixed", &fixed, 2 * k)?;
                let a = IndexSet::new(fixed.as_slice()[..k].to_vec())?;
                let o = IndexSet::new(fixed.as_slice()[k..].to_vec())?;
                let r = p.r.clone().unwrap_or_else(|| IndexSet::new(vec![a.as_slice()[0]]).expect("single index"));
                if !r.is_subset_of(&a) {
                    return Err(Error::InvalidParameters(format!("R={r} is not a subset of A={a}")));
                }
                check_subset("R", &r, cols)?;
                Instance::PlueckerGeneral { rows: m + k, cols, a, o, r }
            }
            Identity::LaplaceColumn | Identity::MutantLaplace => {
                let m = p.m.unwrap_or(4);
                let j = p.j.unwrap_or(1);
                if j < 1 || j > m {
                    return Err(Error::InvalidParameters(format!("column j={j} is not within 1..={m}")));
                }
                Instance::LaplaceColumn { m, j, mutant: id == Identity::MutantLaplace }
            }
            Identity::LaplaceGeneral => {
                let m = p.m.unwrap_or(4);
                let i = p.i.clone().unwrap_or_else(|| IndexSet::range(m.min(1)));
                check_subset("I", &i, m)?;
                Instance::LaplaceGeneral { m, i }
            }
            Identity::Muir148 => {
                let m = p.m.unwrap_or(3);
                let size = m + p.k.unwrap_or(2);
                let r = p.r.clone().unwrap_or_else(|| IndexSet::range(m));
                let c = p.c.clone().unwrap_or_else(|| IndexSet::range(m));
                check_subset("R", &r, size)?;
                check_subset("C", &c, size)?;
                check_size("R", &r, m)?;
                check_size("C", &c, m)?;
                let i = p.i.clone().unwrap_or_else(|| IndexSet::new(r.as_slice()[..m.min(1)].to_vec()).expect("prefix"));
                if !i.is_subset_of(&r) {
                    return Err(Error::InvalidParameters(format!("I={i} is not a subset of R={r}")));
                }
                check_subset("I", &i, size)?;
                let reading = muir148_gate()
                    .accepted_muir
                    .ok_or_else(|| Error::InvalidParameters("the muir148 oracle gate accepted no reading".into()))?;
                Instance::Muir148 { size, r, c, i, reading }
            }
            Identity::Maybenew => {
                let m = p.m.unwrap_or(0);
                let k = p.k.unwrap_or(2);
                if k < 2 {
                    return Err(Error::InvalidParameters("the generalized condensation needs k >= 2".into()));
                }
                let size = m + k;
                let r = p.r.clone().unwrap_or_else(|| IndexSet::range(k));
                let c = p.c.clone().unwrap_or_else(|| IndexSet::range(k));
                check_subset("R", &r, size)?;
                check_subset("C", &c, size)?;
                check_size("R", &r, k)?;
                check_size("C", &c, k)?;
                Instance::Maybenew { size, r, c, signs: MaybenewSigns::SignFree }
            }
            Identity::MaybenewK4 => {
                if p.m.unwrap_or(0) != 0 || p.k.unwrap_or(4) != 4 {
                    return Err(Error::InvalidParameters("the explicit expansion is the case k=4, m=0".into()));
                }
                Instance::MaybenewK4
            }
            Identity::DodgsonSchur => {
                return Err(Error::InvalidParameters("dodgson-schur is checked on Schur polynomials, not matrices".into()))
            }
        };
        Ok(inst)
    }

    /// Dimensions of the matrices the instance consumes.
    pub fn dims(&self) -> Vec<(usize, usize)> {
        match self {
            Instance::Dodgson { m, .. } | Instance::LaplaceColumn { m, .. } | Instance::LaplaceGeneral { m, .. } => {
                vec![(*m, *m)]
            }
            Instance::CauchyBinet { m, n } => vec![(*m, *n), (*n, *m)],
            Instance::Pluecker { m, .. } => vec![(*m, 2 * m)],
            Instance::PlueckerGeneral { rows, cols, .. } => vec![(*rows, *cols)],
            Instance::Muir148 { size, .. } | Instance::Maybenew { size, .. } => vec![(*size, *size)],
            Instance::MaybenewK4 => vec![(4, 4)],
        }
    }

    /// Evaluates both sides with the determinant function `d`.
    pub fn sides<R: Ring>(&self, mats: &[Matrix<R>], d: &(dyn Fn(&Matrix<R>) -> R + Sync)) -> Result<Sides<R>> {
        let dims = self.dims();
        if mats.len() != dims.len() || mats.iter().zip(&dims).any(|(a, &(r, c))| a.rows() != r || a.cols() != c) {
            return Err(Error::DimensionMismatch(format!("expected matrices of sizes {dims:?}")));
        }
        let ev = Eval { d };
        let a = &mats[0];
        let sides = match self {
            Instance::Dodgson { m, mutant } => {
                let m = *m;
                let lhs = ev.det(a).mul_ref(&ev.del(a, &[1, m], &[1, m])?);
                let p = ev.del(a, &[1], &[1])?.mul_ref(&ev.del(a, &[m], &[m])?);
                let q = ev.del(a, &[1], &[m])?.mul_ref(&ev.del(a, &[m], &[1])?);
                let rhs = if *mutant { p.add_ref(&q) } else { p.sub_ref(&q) };
                Sides { lhs, rhs }
            }
            Instance::CauchyBinet { m, n } => {
                let b = &mats[1];
                let lhs = ev.det(&a.mul(b)?);
                let rows = IndexSet::range(*m);
                let mut rhs = R::zero_elem();
                for s in IndexSet::range(*n).subsets(*m) {
                    let t = ev.sub(a, &rows, &s)?.mul_ref(&ev.sub(b, &s, &rows)?);
                    rhs = rhs.add_ref(&t);
                }
                Sides { lhs, rhs }
            }
            Instance::Pluecker { m, r } => {
                let m = *m;
                let rows = IndexSet::range(m);
                let left = IndexSet::range(m);
                let right = IndexSet::shifted_range(m, m);
                let lhs = ev.sub(a, &rows, &left)?.mul_ref(&ev.sub(a, &rows, &right)?);
                let mut rhs = R::zero_elem();
                for s in right.subsets(r.len()) {
                    let t = ev
                        .sub(a, &rows, &shuffle(&left, r, &s)?)?
                        .mul_ref(&ev.sub(a, &rows, &shuffle(&right, &s, r)?)?);
                    rhs = rhs.add_ref(&t);
                }
                Sides { lhs, rhs }
            }
            Instance::PlueckerGeneral { rows, cols, a: aa, o, r } => {
                let all_rows = IndexSet::range(*rows);
                let a_prime = aa.complement(*cols);
                let o_prime = o.complement(*cols);
                let lhs = ev.sub(a, &all_rows, &a_prime)?.mul_ref(&ev.sub(a, &all_rows, &o_prime)?);
                let mut rhs = R::zero_elem();
                for s in o.subsets(r.len()) {
                    let t = ev
                        .sub(a, &all_rows, &shuffle(&o_prime, r, &s)?)?
                        .mul_ref(&ev.sub(a, &all_rows, &shuffle(&a_prime, &s, r)?)?);
                    rhs = rhs.add_ref(&t);
                }
                Sides { lhs, rhs }
            }
            Instance::LaplaceColumn { m, j, mutant } => {
                let lhs = ev.det(a);
                let mut rhs = R::zero_elem();
                for i in 1..=*m {
                    let t = a.get(i, *j).mul_ref(&ev.del(a, &[i], &[*j])?);
                    let mut negative = (i + j) % 2 == 1;
                    if *mutant && i == *m {
                        negative = !negative;
                    }
                    rhs = if negative { rhs.sub_ref(&t) } else { rhs.add_ref(&t) };
                }
                Sides { lhs, rhs }
            }
            Instance::LaplaceGeneral { m, i } => {
                let all = IndexSet::range(*m);
                let lhs = ev.det(a);
                let si = sumset(i, &all)?;
                let mut rhs = R::zero_elem();
                for j in all.subsets(i.len()) {
                    let t = ev.cminors(a, i, &j)?;
                    rhs = signed_add(rhs, &t, (si + sumset(&j, &all)?) % 2 == 1);
                }
                Sides { lhs, rhs }
            }
            Instance::Muir148 { size, r, c, i, reading } => {
                let lhs = ev.det(a).mul_ref(&ev.del(a, r.as_slice(), c.as_slice())?);
                let all = IndexSet::range(*size);
                let mut rhs = R::zero_elem();
                for j in c.subsets(i.len()) {
                    let (t, odd) = match reading {
                        MuirReading::Literal => (ev.cminors(a, i, &j)?, (sumset(i, r)? + sumset(&j, c)?) % 2 == 1),
                        MuirReading::CommonMinor | MuirReading::CommonMinorAbsolute => {
                            let t = ev
                                .del(a, r.minus(i).as_slice(), c.minus(&j).as_slice())?
                                .mul_ref(&ev.del(a, i.as_slice(), j.as_slice())?);
                            let sign = if *reading == MuirReading::CommonMinor {
                                sumset(i, r)? + sumset(&j, c)?
                            } else {
                                sumset(i, &all)? + sumset(&j, &all)?
                            };
                            (t, sign % 2 == 1)
                        }
                    };
                    rhs = signed_add(rhs, &t, odd);
                }
                Sides { lhs, rhs }
            }
            Instance::Maybenew { r, c, signs, .. } => {
                let k = r.len();
                let even_cols = IndexSet::new(c.iter().skip(1).step_by(2).collect())?;
                let odd_rows = IndexSet::new(r.iter().step_by(2).collect())?;
                let j1 = IndexSet::new(vec![c.as_slice()[0]])?;
                let sign = |t: &IndexSet, s: &IndexSet| -> Result<bool> {
                    Ok(match signs {
                        MaybenewSigns::SignFree => false,
                        MaybenewSigns::Laplace => (sumset(t, r)? + sumset(s, c)?) % 2 == 1,
                    })
                };
                let mut lhs = R::zero_elem();
                let mut rhs = R::zero_elem();
                for t in odd_rows.all_subsets() {
                    for s in even_cols.all_subsets() {
                        if s.len() == t.len() {
                            let term = ev
                                .del(a, t.as_slice(), s.as_slice())?
                                .mul_ref(&ev.del(a, r.minus(&t).as_slice(), c.minus(&s).as_slice())?);
                            lhs = signed_add(lhs, &term, sign(&t, &s)?);
                        }
                        if s.len() + 1 == t.len() {
                            let s1 = s.union(&j1);
                            let term = ev
                                .del(a, t.as_slice(), s1.as_slice())?
                                .mul_ref(&ev.del(a, r.minus(&t).as_slice(), c.minus(&s1).as_slice())?);
                            rhs = signed_add(rhs, &term, sign(&t, &s1)?);
                        }
                    }
                }
                debug_assert!(k >= 2);
                Sides { lhs, rhs }
            }
            Instance::MaybenewK4 => {
                let set = |v: &[usize]| IndexSet::new(v.to_vec()).expect("literal index set");
                let positive = [(&[1][..], &[1][..]), (&[1, 3], &[1, 2]), (&[1, 3], &[1, 4]), (&[3], &[1])];
                let negative = [
                    (&[1][..], &[2][..]),
                    (&[1, 3], &[2, 4]),
                    (&[3], &[2]),
                    (&[1], &[4]),
                    (&[3], &[4]),
                ];
                let mut rhs = R::zero_elem();
                for (i, j) in positive {
                    rhs = rhs.add_ref(&ev.cminors(a, &set(i), &set(j))?);
                }
                for (i, j) in negative {
                    rhs = rhs.sub_ref(&ev.cminors(a, &set(i), &set(j))?);
                }
                Sides { lhs: ev.det(a), rhs }
            }
        };
        Ok(sides)
    }
}

fn signed_add<R: Ring>(acc: R, t: &R, negative: bool) -> R {
    if negative {
        acc.sub_ref(t)
    } else {
        acc.add_ref(t)
    }
}

struct Eval<'a, R> {
    d: &'a (dyn Fn(&Matrix<R>) -> R + Sync),
}

impl<R: Ring> Eval<'_, R> {
    fn det(&self, a: &Matrix<R>) -> R {
        assert!(a.is_square(), "determinant of a non-square matrix");
        (self.d)(a)
    }

    fn sub(&self, a: &Matrix<R>, rows: &IndexSet, cols: &IndexSet) -> Result<R> {
        Ok(self.det(&a.minor(rows.as_slice(), cols.as_slice())?))
    }

    fn del(&self, a: &Matrix<R>, rows: &[usize], cols: &[usize]) -> Result<R> {
        Ok(self.det(&a.delete_rowcols(rows, cols)?))
    }

    fn cminors(&self, a: &Matrix<R>, i: &IndexSet, j: &IndexSet) -> Result<R> {
        let inner = self.sub(a, i, j)?;
        if inner.is_zero_elem() {
            return Ok(inner);
        }
        Ok(inner.mul_ref(&self.del(a, i.as_slice(), j.as_slice())?))
    }
}

fn fast_det<R: Ring>(a: &Matrix<R>) -> R {
    R::det_square(a)
}

fn check_with<R: Ring>(inst: Instance, mats: &[Matrix<R>]) -> Result<Sides<R>> {
    inst.sides(mats, &fast_det)
}

/// `det(a) det(a del {1,m},{1,m}) = det(a del 1,1) det(a del m,m) - det(a del 1,m) det(a del m,1)`.
pub fn check_dodgson<R: Ring>(a: &Matrix<R>) -> Result<Sides<R>> {
    square(a)?;
    if a.rows() < 2 {
        return Err(Error::InvalidParameters("Dodgson's condensation needs m >= 2".into()));
    }
    check_with(Instance::Dodgson { m: a.rows(), mutant: false }, std::slice::from_ref(a))
}

/// `det(ab) = sum_S det(a[[m],S]) det(b[S,[m]])`.
pub fn check_cauchy_binet<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Result<Sides<R>> {
    if a.cols() != b.rows() || a.rows() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} and {}x{} are not conformable",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    check_with(Instance::CauchyBinet { m: a.rows(), n: a.cols() }, &[a.clone(), b.clone()])
}

/// The Plücker relation for an `m x 2m` matrix and `R ⊆ [m]`.
pub fn check_pluecker<R: Ring>(a: &Matrix<R>, r: &IndexSet) -> Result<Sides<R>> {
    let m = a.rows();
    if a.cols() != 2 * m {
        return Err(Error::DimensionMismatch(format!("expected an {m}x{} matrix", 2 * m)));
    }
    check_subset("R", r, m)?;
    check_with(Instance::Pluecker { m, r: r.clone() }, std::slice::from_ref(a))
}

/// The Plücker relation with `m` common columns, for an `(m+k) x (m+2k)` matrix.
pub fn check_pluecker_general<R: Ring>(a: &Matrix<R>, fixed: &IndexSet, r: &IndexSet) -> Result<Sides<R>> {
    if a.cols() < a.rows() || (a.cols() - a.rows()) == 0 {
        return Err(Error::DimensionMismatch(format!("{}x{} is not (m+k)x(m+2k)", a.rows(), a.cols())));
    }
    let k = a.cols() - a.rows();
    let m = a.rows() - k.min(a.rows());
    if a.rows() < k {
        return Err(Error::DimensionMismatch(format!("{}x{} is not (m+k)x(m+2k)", a.rows(), a.cols())));
    }
    let p = Params { m: Some(m), k: Some(k), fixed: Some(fixed.clone()), r: Some(r.clone()), ..Params::default() };
    check_with(Instance::resolve(Identity::PlueckerGeneral, &p)?, std::slice::from_ref(a))
}

/// Expansion of `det(a)` along column `j`.
pub fn check_laplace_column<R: Ring>(a: &Matrix<R>, j: usize) -> Result<Sides<R>> {
    square(a)?;
    let p = Params { m: Some(a.rows()), j: Some(j), ..Params::default() };
    check_with(Instance::resolve(Identity::LaplaceColumn, &p)?, std::slice::from_ref(a))
}

/// Laplace's theorem for the row set `I`.
pub fn check_laplace_general<R: Ring>(a: &Matrix<R>, i: &IndexSet) -> Result<Sides<R>> {
    square(a)?;
    check_subset("I", i, a.rows())?;
    check_with(Instance::LaplaceGeneral { m: a.rows(), i: i.clone() }, std::slice::from_ref(a))
}

/// Muir §148 under the reading accepted by [`muir148_gate`].
pub fn check_muir148<R: Ring>(a: &Matrix<R>, r: &IndexSet, c: &IndexSet, i: &IndexSet) -> Result<Sides<R>> {
    square(a)?;
    let m = r.len();
    if a.rows() < m {
        return Err(Error::InvalidParameters(format!("R={r} is larger than the matrix")));
    }
    let p = Params {
        m: Some(m),
        k: Some(a.rows() - m),
        r: Some(r.clone()),
        c: Some(c.clone()),
        i: Some(i.clone()),
        ..Params::default()
    };
    check_with(Instance::resolve(Identity::Muir148, &p)?, std::slice::from_ref(a))
}

/// The generalized condensation for fixed rows `R` and columns `C`, sign-free reading.
pub fn check_maybenew<R: Ring>(a: &Matrix<R>, r: &IndexSet, c: &IndexSet) -> Result<Sides<R>> {
    square(a)?;
    let k = r.len();
    if a.rows() < k {
        return Err(Error::InvalidParameters(format!("R={r} is larger than the matrix")));
    }
    let p = Params { m: Some(a.rows() - k), k: Some(k), r: Some(r.clone()), c: Some(c.clone()), ..Params::default() };
    check_with(Instance::resolve(Identity::Maybenew, &p)?, std::slice::from_ref(a))
}

/// The explicit nine-term expansion of a `4 x 4` determinant.
pub fn check_maybenew_k4<R: Ring>(a: &Matrix<R>) -> Result<Sides<R>> {
    check_with(Instance::MaybenewK4, std::slice::from_ref(a))
}

fn square<R: Ring>(a: &Matrix<R>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    Ok(())
}

/// The Schur factors of the condensation identity for `lambda` of length `m >= 2`:
/// `[lambda, (l2..l_{m-1}), (l2..lm), (l1..l_{m-1}), (l2-1..lm-1), (l1+1..l_{m-1}+1)]`.
pub fn dodgson_schur_shapes(lambda: &Semipartition) -> Result<[Shape; 6]> {
    let parts = lambda.head();
    let m = parts.len();
    if !lambda.is_partition() || m < 2 {
        return Err(Error::InvalidParameters(format!("{lambda} needs to be a partition of length >= 2")));
    }
    let sh = |v: Vec<i64>| -> Result<Shape> { Ok(Shape::straight(Semipartition::partition(&v)?)) };
    Ok([
        sh(parts.to_vec())?,
        sh(parts[1..m - 1].to_vec())?,
        sh(parts[1..].to_vec())?,
        sh(parts[..m - 1].to_vec())?,
        sh(parts[1..].iter().map(|p| p - 1).collect())?,
        sh(parts[..m - 1].iter().map(|p| p + 1).collect())?,
    ])
}

/// `s_l s_(l2..l_{m-1}) = s_(l2..lm) s_(l1..l_{m-1}) - s_(l2-1..lm-1) s_(l1+1..l_{m-1}+1)`
/// with every factor enumerated from tableaux.
pub fn check_dodgson_schur(lambda: &Semipartition, n: u32, budget: usize) -> Result<Verdict> {
    let shapes = dodgson_schur_shapes(lambda)?;
    let s = shapes
        .iter()
        .map(|sh| skew_schur_bounded(sh, n, budget))
        .collect::<Result<Vec<MultiPoly>>>()?;
    let lhs = &s[0] * &s[1];
    let rhs = &(&s[2] * &s[3]) - &(&s[4] * &s[5]);
    let params = Params { lambda: Some(lambda.head().to_vec()), n: Some(n as usize), ..Params::default() };
    Ok(symbolic_verdict(Identity::DodgsonSchur, &params, Route::SchurSymbolic, Sides { lhs, rhs }, vec![]))
}

fn symbolic_verdict(id: Identity, p: &Params, route: Route, sides: Sides<MultiPoly>, notes: Vec<String>) -> Verdict {
    let pass = sides.holds();
    Verdict {
        schema_version: SCHEMA_VERSION,
        identity: id,
        parameters: serde_json::to_value(p).expect("params serialize"),
        route,
        trials: 1,
        status: if pass { Status::Pass } else { Status::Fail },
        vacuous: false,
        counterexample: (!pass).then(|| Counterexample {
            trial: None,
            matrices: vec![],
            lhs: sides.lhs.to_string(),
            rhs: sides.rhs.to_string(),
            oracle_lhs: None,
            oracle_rhs: None,
        }),
        seed: None,
        notes,
    }
}

/// Random matrices for one fuzz trial.
pub fn trial_matrices(inst: &Instance, seed: u64, trial: u64, lo: i64, hi: i64) -> Vec<Matrix<BigInt>> {
    let mut rng = trial_rng(seed, trial);
    inst.dims().into_iter().map(|(r, c)| random_int_matrix(r, c, lo, hi, &mut rng)).collect()
}

/// Matrices of independent variables; later matrices get row labels past the earlier ones.
pub fn generic_matrices(inst: &Instance) -> Vec<Matrix<MultiPoly>> {
    let mut offset = 0u32;
    inst.dims()
        .into_iter()
        .map(|(r, c)| {
            let g = generic_matrix(r, c, offset);
            offset += r as u32;
            g
        })
        .collect()
}

/// Runs `trials` seeded trials in parallel. Returns the counterexample of the
/// smallest failing trial index, if any.
pub fn fuzz_instance(inst: &Instance, trials: u64, seed: u64, lo: i64, hi: i64) -> Result<Option<Counterexample>> {
    if lo > hi {
        return Err(Error::InvalidParameters(format!("empty entry range {lo}..={hi}")));
    }
    let zero: Vec<Matrix<BigInt>> = inst.dims().into_iter().map(|(r, c)| Matrix::from_fn(r, c, |_, _| BigInt::from(0))).collect();
    inst.sides(&zero, &fast_det)?;
    let failure = (0..trials).into_par_iter().find_map_first(|t| {
        let mats = trial_matrices(inst, seed, t, lo, hi);
        let fast = inst.sides(&mats, &fast_det).expect("validated instance");
        let oracle = inst.sides(&mats, &permutation_expansion_det).expect("validated instance");
        if fast.holds() && oracle.lhs == fast.lhs && oracle.rhs == fast.rhs {
            None
        } else {
            Some(Counterexample {
                trial: Some(t),
                matrices: mats.iter().map(int_matrix_to_json).collect(),
                lhs: fast.lhs.to_string(),
                rhs: fast.rhs.to_string(),
                oracle_lhs: Some(oracle.lhs.to_string()),
                oracle_rhs: Some(oracle.rhs.to_string()),
            })
        }
    });
    Ok(failure)
}

/// A verification request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub identity: Identity,
    pub params: Params,
    pub route: Option<Route>,
    pub trials: u64,
    pub seed: u64,
    pub range: (i64, i64),
    pub budget: usize,
}

impl Request {
    pub fn new(identity: Identity) -> Self {
        Request {
            identity,
            params: Params::default(),
            route: None,
            trials: 1000,
            seed: DEFAULT_SEED,
            range: DEFAULT_RANGE,
            budget: 1_000_000,
        }
    }
}

/// Runs a request on the chosen route (default: integer fuzzing, or the Schur route
/// for `dodgson-schur`).
pub fn verify(req: &Request) -> Result<Verdict> {
    let route = req.route.unwrap_or_else(|| req.identity.default_route());
    if req.identity == Identity::DodgsonSchur {
        if route != Route::SchurSymbolic {
            return Err(Error::InvalidParameters("dodgson-schur only runs on the schur-symbolic route".into()));
        }
        let lambda = Semipartition::partition(req.params.lambda.as_deref().unwrap_or(&[2, 1]))?;
        let n = req.params.n.unwrap_or(2);
        if n == 0 {
            return Err(Error::InvalidParameters("n must be positive".into()));
        }
        return check_dodgson_schur(&lambda, n as u32, req.budget);
    }
    let inst = Instance::resolve(req.identity, &req.params)?;
    let notes = gate_notes(&inst);
    match route {
        Route::SchurSymbolic => Err(Error::InvalidParameters(format!(
            "{} has no schur-symbolic route; use generic-symbolic or integer-fuzz",
            req.identity
        ))),
        Route::GenericSymbolic => {
            let sides = inst.sides(&generic_matrices(&inst), &fast_det)?;
            Ok(symbolic_verdict(req.identity, &req.params, route, sides, notes))
        }
        Route::IntegerFuzz => {
            let (lo, hi) = req.range;
            let failure = fuzz_instance(&inst, req.trials, req.seed, lo, hi)?;
            let mut notes = notes;
            notes.push(format!("entries uniform in [{lo},{hi}]; ChaCha8 seeded with `seed`, stream = trial index"));
            Ok(Verdict {
                schema_version: SCHEMA_VERSION,
                identity: req.identity,
                parameters: serde_json::to_value(&req.params).expect("params serialize"),
                route,
                trials: req.trials,
                status: if failure.is_some() { Status::Fail } else { Status::Pass },
                vacuous: req.trials == 0,
                counterexample: failure,
                seed: Some(req.seed),
                notes,
            })
        }
    }
}

/// `verify` on the fuzzing route.
pub fn fuzz(identity: Identity, params: &Params, trials: u64, seed: u64) -> Result<Verdict> {
    let req = Request { params: params.clone(), trials, seed, route: Some(Route::IntegerFuzz), ..Request::new(identity) };
    verify(&req)
}

fn gate_notes(inst: &Instance) -> Vec<String> {
    match inst {
        Instance::Muir148 { .. } => vec![muir148_gate().summary()],
        Instance::Maybenew { size, r, .. } => {
            let k = r.len();
            vec![maybenew_gate(size - k, k).summary()]
        }
        _ => vec![],
    }
}

/// Outcome of an oracle gate: every candidate reading with whether it survived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateFinding {
    pub identity: Identity,
    pub candidates: Vec<(String, bool)>,
    pub accepted: Option<String>,
    #[serde(skip)]
    accepted_muir: Option<MuirReading>,
    #[serde(skip)]
    accepted_signs: Option<MaybenewSigns>,
}

impl GateFinding {
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .candidates
            .iter()
            .map(|(name, ok)| format!("{name}: {}", if *ok { "holds" } else { "refuted" }))
            .collect();
        format!(
            "oracle gate for {} ({GATE_TRIALS} trials per candidate): {}; accepted: {}",
            self.identity,
            parts.join(", "),
            self.accepted.as_deref().unwrap_or("none")
        )
    }

    pub fn accepted_signs(&self) -> Option<MaybenewSigns> {
        self.accepted_signs
    }

    pub fn accepted_muir(&self) -> Option<MuirReading> {
        self.accepted_muir
    }
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> IndexSet {
    let mut v: Vec<usize> = sample(rng, n, k).into_iter().map(|x| x + 1).collect();
    v.sort_unstable();
    IndexSet::new(v).expect("distinct sample")
}

fn oracle_holds(inst: &Instance, rng: &mut ChaCha8Rng) -> bool {
    let mats: Vec<Matrix<BigInt>> = inst
        .dims()
        .into_iter()
        .map(|(r, c)| random_int_matrix(r, c, DEFAULT_RANGE.0, DEFAULT_RANGE.1, rng))
        .collect();
    inst.sides(&mats, &permutation_expansion_det).map(|s| s.holds()).unwrap_or(false)
}

/// Decides the reading of Muir's §148 identity by testing every candidate with the
/// permutation-expansion oracle on random `5 x 5` and `4 x 4` instances with random
/// `R`, `C`, `I`. A reading is accepted only if it is the unique survivor.
pub fn muir148_gate() -> &'static GateFinding {
    static GATE: OnceLock<GateFinding> = OnceLock::new();
    GATE.get_or_init(|| {
        let candidates: Vec<(MuirReading, bool)> = MuirReading::ALL
            .iter()
            .map(|&reading| {
                let mut rng = trial_rng(GATE_SEED, 148);
                let ok = (0..GATE_TRIALS).all(|t| {
                    let (size, m) = if t % 2 == 0 { (5, 3) } else { (4, 2) };
                    let r = random_subset(&mut rng, size, m);
                    let c = random_subset(&mut rng, size, m);
                    let li = rng.gen_range(0..=m);
                    let i = IndexSet::new(r.subsets(li).swap_remove(0).as_slice().to_vec()).expect("subset");
                    let inst = Instance::Muir148 { size, r, c, i, reading };
                    oracle_holds(&inst, &mut rng)
                });
                (reading, ok)
            })
            .collect();
        let survivors: Vec<MuirReading> = candidates.iter().filter(|(_, ok)| *ok).map(|(r, _)| *r).collect();
        let accepted = (survivors.len() == 1).then(|| survivors[0]);
        GateFinding {
            identity: Identity::Muir148,
            candidates: candidates.iter().map(|(r, ok)| (r.name().to_string(), *ok)).collect(),
            accepted: accepted.map(|r| r.name().to_string()),
            accepted_muir: accepted,
            accepted_signs: None,
        }
    })
}

/// Tests both sign conventions of the generalized condensation at size `(m, k)` with
/// random `R`, `C` against the permutation-expansion oracle.
pub fn maybenew_gate(m: usize, k: usize) -> GateFinding {
    let size = m + k;
    let candidates: Vec<(MaybenewSigns, bool)> = MaybenewSigns::ALL
        .iter()
        .map(|&signs| {
            let mut rng = trial_rng(GATE_SEED, (m * 100 + k) as u64);
            let ok = (0..GATE_TRIALS).all(|_| {
                let r = random_subset(&mut rng, size, k);
                let c = random_subset(&mut rng, size, k);
                oracle_holds(&Instance::Maybenew { size, r, c, signs }, &mut rng)
            });
            (signs, ok)
        })
        .collect();
    let survivors: Vec<MaybenewSigns> = candidates.iter().filter(|(_, ok)| *ok).map(|(s, _)| *s).collect();
    let accepted = (survivors.len() == 1).then(|| survivors[0]);
    GateFinding {
        identity: Identity::Maybenew,
        candidates: candidates.iter().map(|(s, ok)| (s.name().to_string(), *ok)).collect(),
        accepted: accepted.map(|s| s.name().to_string()),
        accepted_muir: None,
        accepted_signs: accepted,
    }
}

/// Result of running a sign-flipped checker through the fuzzer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationReport {
    pub mutant: Identity,
    pub detected: bool,
    pub first_failing_trial: Option<u64>,
}

/// Fuzzes both mutants for `trials` trials; each must fail.
pub fn mutation_self_test(trials: u64, seed: u64) -> Result<Vec<MutationReport>> {
    [Identity::MutantLaplace, Identity::MutantDodgson]
        .into_iter()
        .map(|mutant| {
            let params = Params { m: Some(4), ..Params::default() };
            let v = fuzz(mutant, &params, trials, seed)?;
            let first = v.counterexample.as_ref().and_then(|c| c.trial);
            Ok(MutationReport { mutant, detected: !v.passed(), first_failing_trial: first })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::generic_matrix;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert_eq!("nope".parse::<Identity>(), Err(Error::UnknownIdentity("nope".into())));
    }

    #[test]
    fn dodgson_two_by_two_is_the_determinant() {
        let s = check_dodgson(&generic_matrix(2, 2, 0)).unwrap();
        assert!(s.holds());
        assert_eq!(s.rhs.to_string(), "y1_1*y2_2 - y1_2*y2_1");
        assert!(check_dodgson(&generic_matrix(1, 1, 0)).is_err());
    }

    #[test]
    fn generic_symbolic_small_cases() {
        assert!(check_dodgson(&generic_matrix(3, 3, 0)).unwrap().holds());
        assert!(check_laplace_column(&generic_matrix(2, 2, 0), 1).unwrap().holds());
        assert!(check_pluecker(&generic_matrix(2, 4, 0), &set(&[1])).unwrap().holds());
        let (a, b) = (generic_matrix(2, 3, 0), generic_matrix(3, 2, 2));
        assert!(check_cauchy_binet(&a, &b).unwrap().holds());
    }

    #[test]
    fn cauchy_binet_degenerate_sizes() {
        let a = ints(&[&[1, 2], &[3, 4], &[5, 6]]);
        let b = ints(&[&[1, 0, 2], &[-1, 3, 1]]);
        let s = check_cauchy_binet(&a, &b).unwrap();
        assert!(s.holds());
        assert_eq!(s.rhs, BigInt::from(0));
    }

    #[test]
    fn pluecker_full_exchange_and_empty_r() {
        let a = ints(&[&[1, 4, -2, 0, 3, 1], &[2, 0, 1, 5, -1, 2], &[0, 3, 3, 1, 1, -4]]);
        assert!(check_pluecker(&a, &set(&[1, 2, 3])).unwrap().holds());
        assert!(check_pluecker(&a, &IndexSet::empty()).unwrap().holds());
    }

    #[test]
    fn maybenew_k4_matches_general_form() {
        let a = ints(&[&[2, -1, 0, 3], &[1, 4, -2, 0], &[0, 7, 5, 1], &[7, 1, 1, -3]]);
        assert!(check_maybenew_k4(&a).unwrap().holds());
        assert!(check_maybenew(&a, &set(&[1, 2, 3, 4]), &set(&[1, 2, 3, 4])).unwrap().holds());
    }

    #[test]
    fn dodgson_schur_small() {
        for l in [&[1, 1][..], &[2, 1], &[3, 2, 1]] {
            let v = check_dodgson_schur(&Semipartition::partition(l).unwrap(), if l.len() == 3 { 3 } else { 2 }, 100_000).unwrap();
            assert!(v.passed(), "{l:?}");
        }
    }

    #[test]
    fn zero_trials_is_vacuous() {
        let v = fuzz(Identity::Dodgson, &Params::default(), 0, 1).unwrap();
        assert!(v.passed() && v.vacuous);
    }

    #[test]
    fn fuzz_is_reproducible() {
        let p = Params { m: Some(4), ..Params::default() };
        let a = fuzz(Identity::MutantDodgson, &p, 20, 3).unwrap();
        let b = fuzz(Identity::MutantDodgson, &p, 20, 3).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.passed());
    }

    #[test]
    fn gates_decide() {
        assert_eq!(muir148_gate().accepted_muir(), Some(MuirReading::CommonMinor));
        assert_eq!(maybenew_gate(0, 2).accepted_signs(), Some(MaybenewSigns::SignFree));
    }
}
