//! Combinatorial classification of effective invariant non-special divisors
//! of degree `g`, and closed-form coefficient families.
//!
//! For `j` in `[1, m)` the bound is
//! `B(n0, j) = -1 + ceil((sum_i ((-j lambda_i) mod m) - n0 d_inf) / m)` and the
//! count set is `C(n0, j) = { i : n_i d_i >= (j lambda_i mod m) > 0 }`. A tuple
//! inside the box `n_i < m/d_i`, `n0 < m/d_inf` is non-special of degree `g`
//! exactly when `|C(n0, j)| = B(n0, j)` for every `j`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, floor_div, gcd};
use crate::curve::{make_abstract_curve, InvariantTuple, KummerCurve};
use crate::error::{Error, Result};

/// Default cap on the number of tuples an enumeration may visit.
pub const DEFAULT_MAX_SEARCH: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Degree `g` plus `|C| <= B` for every `j`.
    Cond2,
    /// `|C| = B` for every `j`; needs no genus.
    Cond3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NonspecialDegG,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JRow {
    #[serde(rename = "B")]
    pub bound: i64,
    #[serde(rename = "C")]
    pub count: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub mode: Mode,
    pub tuple: InvariantTuple,
    /// Per-`j` table keyed by `j`.
    pub rows: BTreeMap<u32, JRow>,
    pub bounds_ok: bool,
    pub degree: i64,
    pub genus: i64,
    pub verdict: Verdict,
}

impl CriterionReport {
    pub fn is_nonspecial(&self) -> bool {
        self.verdict == Verdict::NonspecialDegG
    }
}

/// Precomputed per-curve data for fast repeated checks.
#[derive(Clone, Debug)]
pub struct Criterion {
    m: i64,
    d: Vec<i64>,
    e: Vec<i64>,
    d_inf: i64,
    e_inf: i64,
    genus: i64,
    /// `res[j][i] = (j lambda_i) mod m`, for `j` in `1..m`.
    res: Vec<Vec<i64>>,
    /// `sum_i ((-j lambda_i) mod m)`.
    neg_sum: Vec<i64>,
}

impl Criterion {
    pub fn new(curve: &KummerCurve) -> Criterion {
        let m = curve.m() as i64;
        let ram = curve.ramification();
        let lambdas: Vec<i64> = curve.lambdas().iter().map(|&l| l as i64).collect();
        let mut res = vec![Vec::new()];
        let mut neg_sum = vec![0];
        for j in 1..m {
            res.push(lambdas.iter().map(|&l| (j * l).rem_euclid(m)).collect());
            neg_sum.push(lambdas.iter().map(|&l| (-j * l).rem_euclid(m)).sum());
        }
        Criterion {
            m,
            d: ram.d.iter().map(|&x| x as i64).collect(),
            e: ram.e.iter().map(|&x| x as i64).collect(),
            d_inf: ram.d_inf as i64,
            e_inf: ram.e_inf as i64,
            genus: ram.genus,
            res,
            neg_sum,
        }
    }

    pub fn bound(&self, n0: i64, j: usize) -> i64 {
        -1 + ceil_div(self.neg_sum[j] - n0 * self.d_inf, self.m)
    }

    pub fn count(&self, n: &[i64], j: usize) -> i64 {
        self.res[j]
            .iter()
            .zip(n.iter().zip(&self.d))
            .filter(|&(&res, (&ni, &di))| res > 0 && ni * di >= res)
            .count() as i64
    }

    pub fn in_box(&self, t: &InvariantTuple) -> bool {
        t.n0 >= 0
            && t.n0 < self.e_inf
            && t.n.iter().zip(&self.e).all(|(&c, &e)| c >= 0 && c < e)
    }

    pub fn degree(&self, t: &InvariantTuple) -> i64 {
        t.n0 * self.d_inf + t.n.iter().zip(&self.d).map(|(&c, &d)| c * d).sum::<i64>()
    }

    /// Condition (3) verdict without building a report.
    pub fn cond3(&self, t: &InvariantTuple) -> bool {
        self.in_box(t) && (1..self.m as usize).all(|j| self.count(&t.n, j) == self.bound(t.n0, j))
    }

    /// Condition (2) verdict without building a report.
    pub fn cond2(&self, t: &InvariantTuple) -> bool {
        self.in_box(t)
            && self.degree(t) == self.genus
            && (1..self.m as usize).all(|j| self.count(&t.n, j) <= self.bound(t.n0, j))
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn search_space(&self) -> u128 {
        self.e.iter().fold(self.e_inf as u128, |acc, &e| acc.saturating_mul(e as u128))
    }
}

pub fn bound_b(curve: &KummerCurve, n0: i64, j: u32) -> Result<i64> {
    let m = curve.m();
    if j == 0 || j >= m {
        return Err(Error::JOutOfRange { j, m });
    }
    Ok(Criterion::new(curve).bound(n0, j as usize))
}

pub fn criterion_check(curve: &KummerCurve, tuple: &InvariantTuple, mode: Mode) -> Result<CriterionReport> {
    curve.check_tuple(tuple)?;
    let crit = Criterion::new(curve);
    let mut rows = BTreeMap::new();
    for j in 1..curve.m() {
        let bound = crit.bound(tuple.n0, j as usize);
        let count = crit.count(&tuple.n, j as usize);
        let pass = match mode {
            Mode::Cond3 => count == bound,
            Mode::Cond2 => count <= bound,
        };
        rows.insert(j, JRow { bound, count, pass });
    }
    let bounds_ok = crit.in_box(tuple);
    let degree = crit.degree(tuple);
    let all_pass = rows.values().all(|r| r.pass);
    let ok = match mode {
        Mode::Cond3 => bounds_ok && all_pass,
        Mode::Cond2 => bounds_ok && all_pass && degree == crit.genus,
    };
    Ok(CriterionReport {
        mode,
        tuple: tuple.clone(),
        rows,
        bounds_ok,
        degree,
        genus: crit.genus,
        verdict: if ok { Verdict::NonspecialDegG } else { Verdict::Fails },
    })
}

/// Index groups of equal `lambda`, in order of first appearance.
fn lambda_groups(lambdas: &[u32]) -> Vec<usize> {
    // group id of each index; canonical form sorts within a group
    let mut ids = Vec::with_capacity(lambdas.len());
    let mut seen: Vec<u32> = Vec::new();
    for &l in lambdas {
        let id = seen.iter().position(|&x| x == l).unwrap_or_else(|| {
            seen.push(l);
            seen.len() - 1
        });
        ids.push(id);
    }
    ids
}

/// Canonical representative: coefficients sorted non-decreasingly inside each
/// group of equal `lambda`.
pub fn canonicalize(curve: &KummerCurve, t: &InvariantTuple) -> InvariantTuple {
    let ids = lambda_groups(curve.lambdas());
    let mut out = t.clone();
    let ngroups = ids.iter().max().map_or(0, |&g| g + 1);
    for g in 0..ngroups {
        let idx: Vec<usize> = (0..ids.len()).filter(|&i| ids[i] == g).collect();
        let mut vals: Vec<i64> = idx.iter().map(|&i| t.n[i]).collect();
        vals.sort_unstable();
        for (&i, v) in idx.iter().zip(vals) {
            out.n[i] = v;
        }
    }
    out
}

/// All tuples in the box satisfying condition (3), in lexicographic order.
pub fn enumerate_nonspecial(curve: &KummerCurve, dedup: bool) -> Result<Vec<InvariantTuple>> {
    enumerate_nonspecial_capped(curve, dedup, DEFAULT_MAX_SEARCH)
}

pub fn enumerate_nonspecial_capped(
    curve: &KummerCurve,
    dedup: bool,
    cap: u128,
) -> Result<Vec<InvariantTuple>> {
    let crit = Criterion::new(curve);
    let size = crit.search_space();
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    let r = curve.r();
    let ids = lambda_groups(curve.lambdas());
    // previous index in the same group, for the non-decreasing constraint
    let prev_same: Vec<Option<usize>> = (0..r)
        .map(|i| (0..i).rev().find(|&k| ids[k] == ids[i]))
        .collect();
    let e = crit.e.clone();
    let first_range = e[0];
    let jobs: Vec<(i64, i64)> = (0..crit.e_inf)
        .flat_map(|n0| (0..first_range).map(move |n1| (n0, n1)))
        .collect();

    let chunks: Vec<Vec<InvariantTuple>> = jobs
        .par_iter()
        .map(|&(n0, n1)| {
            let mut found = Vec::new();
            let mut t = InvariantTuple::new(n0, vec![0; r]);
            t.n[0] = n1;
            let bounds: Vec<i64> = (1..crit.m as usize).map(|j| crit.bound(n0, j)).collect();
            if bounds.iter().any(|&b| b < 0) {
                return found;
            }
            // odometer over indices 1..r
            loop {
                let canonical = !dedup
                    || (0..r).all(|i| prev_same[i].is_none_or(|k| t.n[k] <= t.n[i]));
                if canonical
                    && (1..crit.m as usize).all(|j| crit.count(&t.n, j) == bounds[j - 1])
                {
                    found.push(t.clone());
                }
                let mut i = r;
                loop {
                    if i == 1 {
                        return found;
                    }
                    i -= 1;
                    t.n[i] += 1;
                    if t.n[i] < e[i] {
                        break;
                    }
                    t.n[i] = 0;
                }
            }
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

fn check_generated(curve: &KummerCurve, t: InvariantTuple, family: &str) -> Result<InvariantTuple> {
    let report = criterion_check(curve, &t, Mode::Cond3)?;
    if report.is_nonspecial() {
        Ok(t)
    } else {
        Err(Error::FormulaMismatch {
            family: family.to_string(),
            report: Box::new(report),
        })
    }
}

/// `lambda = (1, ..., 1)`: `n_i = max(0, ceil(m(i-1)/r) - 1)`, `n0 = 0`.
pub fn coeffs_all_ones(m: u32, r: usize) -> Result<InvariantTuple> {
    if r == 0 {
        return Err(Error::RegimeViolation("r must be positive".into()));
    }
    let curve = make_abstract_curve(m, &vec![1; r])?;
    let crit = Criterion::new(&curve);
    // #{i : n_i = j} = B(0,j) - [j < m-1] B(0,j+1)
    let mut nonzero = 0i64;
    for j in 1..m as usize {
        let next = if j + 1 < m as usize { crit.bound(0, j + 1) } else { 0 };
        let cnt = crit.bound(0, j) - next;
        if cnt < 0 {
            return Err(Error::NoSolution(format!("negative multiplicity for value {j}")));
        }
        nonzero += cnt;
    }
    if nonzero > r as i64 {
        return Err(Error::NoSolution(format!("{nonzero} nonzero coefficients exceed r = {r}")));
    }
    let (m, ri) = (m as i64, r as i64);
    let n = (1..=ri).map(|i| (ceil_div(m * (i - 1), ri) - 1).max(0)).collect();
    check_generated(&curve, InvariantTuple::new(0, n), "all_ones")
}

fn half_lambda_curve(m: u32, ones: usize, halves: usize) -> Result<KummerCurve> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::RegimeViolation(format!("m = {m} must be even and at least 4")));
    }
    let mut lambdas = vec![1; ones];
    lambdas.extend(std::iter::repeat_n(m / 2, halves));
    make_abstract_curve(m, &lambdas)
}

/// `lambda = (1, ..., 1, m/2)` with `r - 1` ones and `N` in `{0, 1}`.
pub fn coeffs_half_single(m: u32, r: usize, big_n: u32) -> Result<InvariantTuple> {
    let half = (m / 2) as usize;
    let min_r = match big_n {
        0 => half - half % 2,
        1 => half + 2,
        _ => return Err(Error::RegimeViolation(format!("N = {big_n} not in {{0, 1}}"))),
    };
    if r < min_r.max(2) {
        return Err(Error::RegimeViolation(format!(
            "r = {r} below the minimum {} for N = {big_n}",
            min_r.max(2)
        )));
    }
    let curve = half_lambda_curve(m, r - 1, 1)?;
    let (m, rr, nn) = (m as i64, r as i64 - 1, big_n as i64);
    let mut n: Vec<i64> = (1..=rr)
        .map(|i| {
            let a = 2 * ceil_div(m * (i - 1), 2 * rr) - 2;
            // m(i - N - 1/2) - (r - 1), doubled to stay integral
            let b = 2 * ceil_div(m * (2 * i - 2 * nn - 1) - 2 * rr, 4 * rr) - 1;
            0.max(a).max(b)
        })
        .collect();
    n.push(nn);
    check_generated(&curve, InvariantTuple::new(0, n), "half_single")
}

/// `lambda = (1, ..., 1, m/2, m/2)` with `r - 2` ones and `N` in `{0, 1, 2}`.
pub fn coeffs_half_double(m: u32, r: usize, big_n: u32) -> Result<InvariantTuple> {
    let half = (m / 2) as usize;
    let min_r = match big_n {
        0 => m as usize + 1 - half % 2,
        1 => 3,
        2 => m as usize + 3,
        _ => return Err(Error::RegimeViolation(format!("N = {big_n} not in {{0, 1, 2}}"))),
    };
    if r < min_r {
        return Err(Error::RegimeViolation(format!(
            "r = {r} below the minimum {min_r} for N = {big_n}"
        )));
    }
    let curve = half_lambda_curve(m, r - 2, 2)?;
    let (m, rr, nn) = (m as i64, r as i64 - 2, big_n as i64);
    let mut n: Vec<i64> = (1..=rr)
        .map(|i| {
            let a = 2 * ceil_div(m * (i - 1), 2 * rr) - 2;
            let b = 2 * ceil_div(m * (i - nn) - rr, 2 * rr) - 1;
            0.max(a).max(b)
        })
        .collect();
    n.push((nn >= 1) as i64);
    n.push((nn >= 2) as i64);
    check_generated(&curve, InvariantTuple::new(0, n), "half_double")
}

/// `N_i = floor((m i - 1 - n0 gcd(m, Lambda)) / Lambda)` for the
/// `lambda = (1, ..., 1, 2)` family.
pub fn lambda_two_sequence(m: u32, r: usize, n0: i64, upto: i64) -> Vec<i64> {
    let big_lambda = r as i64 + 1;
    let d_inf = gcd(m as u64, big_lambda as u64) as i64;
    (0..=upto)
        .map(|i| floor_div(m as i64 * i - 1 - n0 * d_inf, big_lambda))
        .collect()
}

/// `lambda = (1, ..., 1, 2)` with `r - 1` ones.
pub fn coeffs_lambda_two(m: u32, r: usize, n0: i64, k: i64) -> Result<InvariantTuple> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::RegimeViolation(format!("m = {m} must be even")));
    }
    if r < 3 || (r - 1) % 2 != 0 {
        return Err(Error::RegimeViolation(format!("r - 1 = {} must be even and at least 2", r as i64 - 1)));
    }
    let big_lambda = r as i64 + 1;
    let d_inf = gcd(m as u64, big_lambda as u64) as i64;
    if n0 < 0 || n0 * d_inf >= big_lambda || big_lambda > m as i64 {
        return Err(Error::RegimeViolation(format!(
            "need 0 <= n0 gcd(m, Lambda) < Lambda <= m (n0 = {n0}, Lambda = {big_lambda}, m = {m})"
        )));
    }
    let half = big_lambda / 2;
    if k < 1 || k > half - 1 {
        return Err(Error::RegimeViolation(format!("k = {k} outside [1, {}]", half - 1)));
    }
    let mut lambdas = vec![1; r - 1];
    lambdas.push(2);
    let curve = make_abstract_curve(m, &lambdas)?;
    let seq = lambda_two_sequence(m, r, n0, r as i64 + 1);
    let nk = seq[k as usize];
    if nk <= 0 {
        return Err(Error::NkNotPositive { k: k as u32, value: nk });
    }
    let mut n: Vec<i64> = (1..r as i64)
        .map(|i| {
            if i <= k {
                seq[(i - 1) as usize].max(0)
            } else if i < k + half {
                seq[i as usize]
            } else {
                seq[(i + 1) as usize]
            }
        })
        .collect();
    n.push(nk);
    check_generated(&curve, InvariantTuple::new(n0, n), "lambda_two")
}

/// The simplified coefficient list stated for `N = 0` and
/// `m/2 - (m/2 mod 2) <= r <= m/2`: `n_i = 2 ceil((m(i - 1/2) - (r-1)) / (2(r-1))) - 1`.
pub fn half_single_window_coeffs(m: u32, r: usize) -> Option<Vec<i64>> {
    let half = (m / 2) as usize;
    if r < 2 || r < half - half % 2 || r > half {
        return None;
    }
    let (m, rr) = (m as i64, r as i64 - 1);
    Some(
        (1..=rr)
            .map(|i| 2 * ceil_div(m * (2 * i - 1) - 2 * rr, 4 * rr) - 1)
            .collect(),
    )
}
