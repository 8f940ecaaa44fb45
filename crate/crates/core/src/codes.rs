//! Riemann–Roch bases, AG codes `C_L(D, G)` and linear complementary pairs.
//!
//! Spaces are built for divisors of the shape `A - delta * Q_inf` with `A`
//! invariant and `delta` in `{0, 1}`. For `delta = 0` the decomposition
//! `L(A) = sum_t L(R(A + div(y^t))) y^t` gives a monomial basis directly. For
//! `delta = 1` we take the kernel of one linear functional: the leading
//! coefficient at `Q_inf`. Zero-valuation monomials at infinity are powers of
//! `w = y^{m/d_inf} x^{-Lambda/d_inf}`, so the functional has a closed form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, ext_gcd, floor_div};
use crate::curve::{Divisor, InvariantTuple, KummerCurve, Place, XFunction};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, Poly};
use crate::linalg::Matrix;
use crate::nonspecial::{
    coeffs_half_double, coeffs_half_single, coeffs_lambda_two, criterion_check, half_single_window_coeffs,
    Mode,
};

/// Default cap on `q^k` for exhaustive minimum-distance computation.
pub const DEFAULT_MAX_CODEWORDS: u128 = 1_000_000;

/// `coeff * x^{x_power} * prod (x - alpha_i)^{branch_exps[i]} * y^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialTerm {
    pub coeff: FieldElement,
    pub x_power: u32,
    pub branch_exps: Vec<i64>,
    pub t: u32,
}

/// A function given as a sum of monomial terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFunction {
    pub terms: Vec<MonomialTerm>,
}

impl BasisFunction {
    pub fn monomial(x_power: u32, branch_exps: Vec<i64>, t: u32) -> BasisFunction {
        BasisFunction {
            terms: vec![MonomialTerm {
                coeff: FieldElement::ONE,
                x_power,
                branch_exps,
                t,
            }],
        }
    }
}

fn term_valuation(curve: &KummerCurve, term: &MonomialTerm, place: &Place) -> Result<i64> {
    let x_is_zero = |a: FieldElement| a.is_zero();
    match *place {
        Place::Branch { i, .. } => {
            let mut ex = *term.branch_exps.get(i).unwrap_or(&0);
            if curve.alphas().get(i).is_some_and(|&al| x_is_zero(al)) {
                ex += term.x_power as i64;
            }
            curve.monomial_valuation(place, ex, term.t as i64)
        }
        Place::Infinity { .. } => {
            let ex = term.x_power as i64 + term.branch_exps.iter().sum::<i64>();
            curve.monomial_valuation(place, ex, term.t as i64)
        }
        Place::Split { a, .. } => {
            curve.check_place(place)?;
            Ok(if x_is_zero(a) { term.x_power as i64 } else { 0 })
        }
    }
}

struct InfinityNormalizer {
    e_inf: i64,
    b_unit: i64,
}

impl InfinityNormalizer {
    fn new(curve: &KummerCurve) -> Result<InfinityNormalizer> {
        let ram = curve.ramification();
        let e_inf = ram.e_inf as i64;
        let l = (ram.big_lambda / ram.d_inf as u64) as i64;
        let (g, _u, v) = ext_gcd(e_inf, l);
        if g != 1 {
            return Err(Error::BezoutFailure);
        }
        Ok(InfinityNormalizer { e_inf, b_unit: v })
    }

    /// Leading coefficient of `term` at a place at infinity with `w`-value
    /// `w`, relative to a pole of order `v_max`; zero if the pole is smaller.
    fn leading(
        &self,
        curve: &KummerCurve,
        term: &MonomialTerm,
        v_max: i64,
        w: FieldElement,
    ) -> Result<FieldElement> {
        let field = curve.require_field()?;
        let v = term_valuation(curve, term, &Place::Q_INF)?;
        if v > -v_max {
            return Ok(FieldElement::ZERO);
        }
        if v < -v_max {
            return Err(Error::UnsupportedShape(format!(
                "term has a pole of order {} > {v_max} at infinity",
                -v
            )));
        }
        // h0 = x^{a'} y^{b'} with v(h0) = v_max; b' = -v_max * v from Bezout
        let b_prime = -v_max * self.b_unit;
        let y_total = term.t as i64 + b_prime;
        if y_total % self.e_inf != 0 {
            return Err(Error::BezoutFailure);
        }
        let kappa = y_total / self.e_inf;
        Ok(field.mul(term.coeff, field.pow_signed(w, kappa)))
    }
}

/// Leading coefficient at `Q_inf` of a function in `L(A'')`, where `v_max` is
/// the coefficient of `A''` at `Q_inf`; it vanishes exactly on `L(A'' - Q_inf)`.
pub fn infinity_functional(curve: &KummerCurve, v_max: i64, f: &BasisFunction) -> Result<FieldElement> {
    let field = curve.require_field()?;
    let norm = InfinityNormalizer::new(curve)?;
    let omega = curve.omega()?;
    let mut acc = FieldElement::ZERO;
    for term in &f.terms {
        acc = field.add(acc, norm.leading(curve, term, v_max, omega)?);
    }
    Ok(acc)
}

/// Lower bound for `v_P(f)`; exact for single terms. At rational places at
/// infinity a cancelling leading part raises the bound by one.
pub fn valuation_lower_bound(curve: &KummerCurve, f: &BasisFunction, place: &Place) -> Result<i64> {
    let mut min = i64::MAX;
    for term in &f.terms {
        min = min.min(term_valuation(curve, term, place)?);
    }
    if min == i64::MAX || f.terms.len() < 2 {
        return Ok(min);
    }
    if let Place::Infinity { j } = *place {
        let labels = curve.infinity_labels()?;
        if let Some(&w) = labels.get(j as usize) {
            let field = curve.require_field()?;
            let norm = InfinityNormalizer::new(curve)?;
            let mut acc = FieldElement::ZERO;
            for term in &f.terms {
                acc = field.add(acc, norm.leading(curve, term, -min, w)?);
            }
            if acc.is_zero() {
                return Ok(min + 1);
            }
        }
    }
    Ok(min)
}

fn split_shape(curve: &KummerCurve, div: &Divisor) -> Result<(InvariantTuple, u32)> {
    if div.support().any(|p| matches!(p, Place::Split { .. })) {
        return Err(Error::UnsupportedShape("support meets affine split places".into()));
    }
    if let Some(t) = curve.as_invariant(div) {
        return Ok((t, 0));
    }
    let lifted = div.add(&Divisor::single(Place::Q_INF, 1));
    if let Some(t) = curve.as_invariant(&lifted) {
        return Ok((t, 1));
    }
    Err(Error::UnsupportedShape(
        "divisor is not an invariant divisor minus at most Q_inf".into(),
    ))
}

/// Basis of `L(D)` for `D = A' - delta Q_inf`.
pub fn rr_basis(curve: &KummerCurve, div: &Divisor) -> Result<Vec<BasisFunction>> {
    let (a, delta) = split_shape(curve, div)?;
    rr_basis_invariant(curve, &a, delta)
}

pub fn rr_basis_invariant(curve: &KummerCurve, a: &InvariantTuple, delta: u32) -> Result<Vec<BasisFunction>> {
    curve.check_tuple(a)?;
    let m = curve.m() as i64;
    let ram = curve.ramification();
    let mut basis = Vec::new();
    for t in 0..curve.m() {
        let exps: Vec<i64> = a
            .n
            .iter()
            .zip(&ram.d)
            .zip(curve.lambdas())
            .map(|((&c, &d), &l)| -floor_div(c * d as i64 + t as i64 * l as i64, m))
            .collect();
        let deg = curve.restricted_degree(a, t);
        for j in 0..=deg {
            basis.push(BasisFunction::monomial(j as u32, exps.clone(), t));
        }
    }
    let expected = curve.ell_invariant(a, None, true)?;
    if basis.len() as i64 != expected {
        return Err(Error::DimensionMismatch(format!(
            "{} monomials for a space of dimension {expected}",
            basis.len()
        )));
    }
    match delta {
        0 => Ok(basis),
        1 => kernel_at_infinity(curve, a.n0, basis),
        _ => Err(Error::UnsupportedShape(format!("delta = {delta}"))),
    }
}

fn kernel_at_infinity(curve: &KummerCurve, v_max: i64, basis: Vec<BasisFunction>) -> Result<Vec<BasisFunction>> {
    let field = curve.require_field()?.clone();
    let values: Vec<FieldElement> = basis
        .iter()
        .map(|f| infinity_functional(curve, v_max, f))
        .collect::<Result<_>>()?;
    let Some(pivot) = values.iter().position(|v| !v.is_zero()) else {
        return Ok(basis);
    };
    let pivot_fn = basis[pivot].clone();
    let pivot_inv = field.inv(values[pivot]).expect("nonzero pivot");
    Ok(basis
        .into_iter()
        .zip(values)
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, (mut f, v))| {
            if !v.is_zero() {
                let c = field.neg(field.mul(v, pivot_inv));
                f.terms.extend(pivot_fn.terms.iter().map(|t| MonomialTerm {
                    coeff: field.mul(c, t.coeff),
                    ..t.clone()
                }));
            }
            f
        })
        .collect())
}

/// Checks `v_P(f) + v_P(G) >= 0` at every place in `places` for every basis
/// function.
pub fn basis_is_valid(curve: &KummerCurve, basis: &[BasisFunction], g: &Divisor, places: &[Place]) -> Result<bool> {
    for f in basis {
        for p in places {
            if valuation_lower_bound(curve, f, p)? + g.get(p) < 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All branch and infinite place classes of the curve.
pub fn special_places(curve: &KummerCurve) -> Vec<Place> {
    let ram = curve.ramification();
    let mut out: Vec<Place> = (0..curve.r())
        .flat_map(|i| (0..ram.d[i]).map(move |j| Place::Branch { i, j }))
        .collect();
    out.extend((0..ram.d_inf).map(|j| Place::Infinity { j }));
    out
}

/// Evaluation matrix: entry `(i, j)` is `basis[i]` at `places[j]`.
pub fn eval_matrix(curve: &KummerCurve, basis: &[BasisFunction], places: &[Place]) -> Result<Matrix> {
    let field = curve.require_field()?;
    let alphas = curve.alphas();
    let columns: Vec<Vec<FieldElement>> = places
        .par_iter()
        .map(|place| {
            let Place::Split { a, y } = *place else {
                return Err(Error::PoleAtEvaluationPlace(place.to_string()));
            };
            curve.check_place(place)?;
            let diffs: Vec<FieldElement> = alphas.iter().map(|&al| field.sub(a, al)).collect();
            basis
                .iter()
                .map(|f| {
                    let mut acc = FieldElement::ZERO;
                    for term in &f.terms {
                        let mut v = field.mul(term.coeff, field.pow(a, term.x_power as u64));
                        for (&d, &e) in diffs.iter().zip(&term.branch_exps) {
                            if d.is_zero() && e < 0 {
                                return Err(Error::PoleAtEvaluationPlace(place.to_string()));
                            }
                            if e != 0 {
                                v = field.mul(v, field.pow_signed(d, e));
                            }
                        }
                        v = field.mul(v, field.pow(y, term.t as u64));
                        acc = field.add(acc, v);
                    }
                    Ok(acc)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut mat = Matrix::zeros(field, basis.len(), places.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            mat.set(i, j, v);
        }
    }
    Ok(mat)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub deg: i64,
    pub designed_distance: i64,
}

/// `C_L(D, G)` with its generator matrix and the basis it was evaluated from.
#[derive(Clone, Debug)]
pub struct LinearCode {
    pub n: usize,
    pub k: usize,
    pub gen: Matrix,
    pub divisor_g: Divisor,
    pub designed_distance: i64,
    pub basis: Vec<BasisFunction>,
}

impl LinearCode {
    pub fn params(&self) -> CodeParams {
        CodeParams {
            n: self.n,
            k: self.k,
            deg: self.divisor_g.degree(),
            designed_distance: self.designed_distance,
        }
    }
}

pub fn build_code(curve: &KummerCurve, g: &Divisor, d_places: &[Place]) -> Result<LinearCode> {
    if !g.disjoint_from(d_places) {
        return Err(Error::SupportOverlap);
    }
    let n = d_places.len();
    let genus = curve.genus();
    let deg = g.degree();
    if !(2 * genus - 2 < deg && deg < n as i64) {
        return Err(Error::DegreeOutOfRange {
            deg,
            lo: 2 * genus - 2,
            hi: n as i64,
        });
    }
    let basis = rr_basis(curve, g)?;
    if basis.len() as i64 != deg - genus + 1 {
        return Err(Error::DimensionMismatch(format!(
            "basis of size {} but deg - g + 1 = {}",
            basis.len(),
            deg - genus + 1
        )));
    }
    let gen = eval_matrix(curve, &basis, d_places)?;
    let rank = gen.rank();
    if rank != basis.len() {
        return Err(Error::DimensionMismatch(format!(
            "generator matrix has rank {rank}, expected {}",
            basis.len()
        )));
    }
    Ok(LinearCode {
        n,
        k: basis.len(),
        gen,
        divisor_g: g.clone(),
        designed_distance: n as i64 - deg,
        basis,
    })
}

/// `k_C + k_E = n` and the stacked generator matrix has full rank `n`.
pub fn lcp_verify(c: &LinearCode, e: &LinearCode) -> Result<bool> {
    if c.n != e.n {
        return Err(Error::LengthMismatch(c.n, e.n));
    }
    if c.gen.field() != e.gen.field() {
        return Err(Error::FieldMismatch);
    }
    if c.k + e.k != c.n {
        return Ok(false);
    }
    Ok(c.gen.stack(&e.gen).rank() == c.n)
}

/// Exact minimum distance by enumerating messages whose first nonzero
/// coordinate is 1; `None` for the zero code.
pub fn min_distance_exact(code: &LinearCode, cap: u128) -> Result<Option<u64>> {
    let field = code.gen.field().clone();
    let q = field.order() as u128;
    let k = code.gen.rows();
    let total = q.checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::TooLargeToEnumerate(total));
    }
    if k == 0 {
        return Ok(None);
    }
    let n = code.gen.cols();
    let elems: Vec<FieldElement> = field.elements().collect();
    let best = (0..k)
        .into_par_iter()
        .map(|lead| {
            // codeword = row[lead] + sum_{i > lead} msg[i] row[i]
            let mut word: Vec<FieldElement> = code.gen.row(lead).to_vec();
            let mut digits = vec![0usize; k];
            let weight = |w: &[FieldElement]| w.iter().filter(|x| !x.is_zero()).count() as u64;
            let mut best = weight(&word);
            loop {
                let mut i = k;
                loop {
                    if i == lead + 1 {
                        return best;
                    }
                    i -= 1;
                    let old = elems[digits[i]];
                    digits[i] = (digits[i] + 1) % elems.len();
                    let new = elems[digits[i]];
                    let delta = field.sub(new, old);
                    for (wj, &gj) in word.iter_mut().zip(code.gen.row(i)) {
                        *wj = field.add(*wj, field.mul(delta, gj));
                    }
                    if digits[i] != 0 {
                        break;
                    }
                }
                best = best.min(weight(&word));
                let _ = n;
            }
        })
        .min();
    Ok(best)
}

/// Inclusive range of admissible `s`: `(g-1)/(m|phi|) < s < (n-g+1)/(m|phi|)`, `s >= 1`.
pub fn s_range(genus: i64, m: u32, phi_len: usize, n: usize) -> Result<(i64, i64)> {
    let den = m as i64 * phi_len as i64;
    let lo_num = genus - 1;
    let hi_num = n as i64 - genus + 1;
    let lo = (floor_div(lo_num, den) + 1).max(1);
    let hi = ceil_div(hi_num, den) - 1;
    if lo > hi {
        return Err(Error::SRangeEmpty { lo_num, hi_num, den });
    }
    Ok((lo, hi))
}

/// Outcome of the divisor identities re-verified for a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    /// `gcd(G, H) = A - Q_inf` as tables.
    pub gcd_ok: bool,
    /// `lmd(G, H) - D - (A - Q_inf) = div(Phi^s / h)`.
    pub lmd_ok: bool,
    pub principal_degree: i64,
    /// `l(A - Q_inf) = 0`.
    pub base_nonspecial: bool,
}

#[derive(Clone, Debug)]
pub struct LcpPair {
    pub c: LinearCode,
    pub e: LinearCode,
    pub a: InvariantTuple,
    pub s: i64,
    pub phi: Vec<usize>,
    pub split_points: Vec<FieldElement>,
    pub d_places: Vec<Place>,
    pub identities: IdentityCheck,
    pub verified: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcpReport {
    #[serde(rename = "params_G")]
    pub params_g: CodeParams,
    #[serde(rename = "params_H")]
    pub params_h: CodeParams,
    pub s: i64,
    pub t: usize,
    pub verified: bool,
    pub designed_distances: [i64; 2],
    #[serde(rename = "A")]
    pub a: InvariantTuple,
    pub phi: Vec<usize>,
    pub identities: IdentityCheck,
    pub notes: Vec<String>,
}

impl LcpPair {
    pub fn report(&self) -> LcpReport {
        LcpReport {
            params_g: self.c.params(),
            params_h: self.e.params(),
            s: self.s,
            t: self.split_points.len(),
            verified: self.verified,
            designed_distances: [self.c.designed_distance, self.e.designed_distance],
            a: self.a.clone(),
            phi: self.phi.clone(),
            identities: self.identities.clone(),
            notes: self.notes.clone(),
        }
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::RampPreconditionViolated(msg.into())
}

/// Evaluation places above the given split points, sorted by `(a, y)`.
pub fn evaluation_places(curve: &KummerCurve, split_points: &[FieldElement]) -> Result<Vec<Place>> {
    let mut places = Vec::new();
    for &a in split_points {
        if curve.branch_index(a).is_some() {
            return Err(precondition(format!("{a} is a branch point")));
        }
        let above = curve.split_places_above(a)?;
        if above.len() != curve.m() as usize {
            return Err(precondition(format!("{a} does not split completely")));
        }
        places.extend(above);
    }
    places.sort();
    Ok(places)
}

/// Builds `G = A - Q_inf + div_inf(h) - div_inf(Phi^s)` and
/// `H = A - Q_inf + div_0(Phi^s)` with `Phi = prod_{i in phi} (x - alpha_i)`
/// and `h = prod (x - a_j)` over the split points, then both codes.
pub fn lcp_build_general(
    curve: &KummerCurve,
    a: &InvariantTuple,
    phi: &[usize],
    split_points: &[FieldElement],
    s: i64,
) -> Result<LcpPair> {
    let field = curve.require_field()?.clone();
    curve.check_tuple(a)?;
    let ram = curve.ramification().clone();
    let m = curve.m();
    let genus = curve.genus();

    let report = criterion_check(curve, a, Mode::Cond3)?;
    if !report.is_nonspecial() {
        return Err(Error::NotNonSpecial(format!("{a} fails the criterion")));
    }
    if a.n0 != 0 {
        return Err(precondition("A must have coefficient 0 at infinity"));
    }
    curve.omega()?;
    if !curve.infinity_places_rational()? {
        return Err(precondition("places at infinity are not all rational"));
    }
    let mut phi_sorted = phi.to_vec();
    phi_sorted.sort_unstable();
    phi_sorted.dedup();
    if phi.is_empty() || phi_sorted.len() != phi.len() {
        return Err(precondition("phi indices must be nonempty and distinct"));
    }
    for &i in phi {
        if i >= curve.r() || ram.d[i] != 1 {
            return Err(precondition(format!("branch {i} is not totally ramified")));
        }
    }
    for i in 0..curve.r() {
        if (a.n[i] != 0 || phi.contains(&i)) && !curve.branch_places_rational(i)? {
            return Err(precondition(format!("places above branch {i} are not rational")));
        }
    }
    let mut sorted_pts = split_points.to_vec();
    sorted_pts.sort();
    sorted_pts.dedup();
    if sorted_pts.len() != split_points.len() {
        return Err(precondition("split points must be distinct"));
    }
    let d_places = evaluation_places(curve, &sorted_pts)?;
    let t = sorted_pts.len() as i64;
    let n = d_places.len();

    if s < 1 {
        return Err(precondition("s must be a positive integer"));
    }
    let phi_len = phi.len() as i64;
    let span = s * m as i64 * phi_len;
    let (lo, hi) = s_range(genus, m, phi.len(), n)?;
    if s < lo {
        return Err(Error::DegreeOutOfRange {
            deg: genus - 1 + span,
            lo: 2 * genus - 2,
            hi: n as i64,
        });
    }
    if s > hi {
        return Err(Error::DegreeOutOfRange {
            deg: n as i64 - span + genus - 1,
            lo: 2 * genus - 2,
            hi: n as i64,
        });
    }
    if t < s * phi_len {
        return Err(precondition("div_inf(h) must dominate div_inf(Phi^s)"));
    }

    let q_inf = Divisor::single(Place::Q_INF, 1);
    let base = curve.invariant_divisor(a)?.sub(&q_inf);
    let mut g_tuple = a.clone();
    g_tuple.n0 += (t - s * phi_len) * ram.e_inf as i64;
    let mut h_tuple = a.clone();
    for &i in phi {
        h_tuple.n[i] += s * ram.e[i] as i64;
    }
    let g_div = curve.invariant_divisor(&g_tuple)?.sub(&q_inf);
    let h_div = curve.invariant_divisor(&h_tuple)?.sub(&q_inf);

    let c = build_code(curve, &g_div, &d_places)?;
    let e = build_code(curve, &h_div, &d_places)?;

    let d_div: Divisor = d_places.iter().map(|&p| (p, 1)).collect();
    let mut phi_exps = vec![0; curve.r()];
    for &i in phi {
        phi_exps[i] = s;
    }
    let h_poly = Poly::from_roots(&field, &sorted_pts);
    let quotient = XFunction {
        num: None,
        den: Some(h_poly),
        branch_exps: phi_exps,
    };
    let principal = curve.principal_divisor(&quotient, 0)?;
    let identities = IdentityCheck {
        gcd_ok: g_div.gcd(&h_div) == base,
        lmd_ok: g_div.lmd(&h_div).sub(&d_div).sub(&base) == principal,
        principal_degree: principal.degree(),
        base_nonspecial: rr_basis(curve, &base)?.is_empty(),
    };
    let verified = lcp_verify(&c, &e)?
        && identities.gcd_ok
        && identities.lmd_ok
        && identities.principal_degree == 0
        && identities.base_nonspecial;
    Ok(LcpPair {
        c,
        e,
        a: a.clone(),
        s,
        phi: phi.to_vec(),
        split_points: sorted_pts,
        d_places,
        identities,
        verified,
        notes: Vec::new(),
    })
}

/// The four specialized families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "regime")]
pub enum Regime {
    /// `lambda = (1, ..., 1, m/2)`, half-place coefficient `n` in `{0, 1}`.
    HalfSingle { n: u32 },
    /// `lambda = (1, ..., 1, m/2, m/2)` with `r = m/2 + 2`, one half-place used.
    HalfDoubleN1,
    /// `lambda = (1, ..., 1, m/2, m/2)` with `r = m + 3`, both half-places used.
    HalfDoubleN2,
    /// `lambda = (1, ..., 1, 2)`, `n0 = 0`.
    LambdaTwo { k: i64 },
}

fn ones_then(curve: &KummerCurve, tail: &[u32]) -> bool {
    let l = curve.lambdas();
    l.len() > tail.len()
        && l[..l.len() - tail.len()].iter().all(|&x| x == 1)
        && &l[l.len() - tail.len()..] == tail
}

fn sorted(v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Builds the pair for one of the specialized families. Uses the first `t`
/// split points in enc order (all when `None`) and the smallest admissible
/// `s` when `s` is `None`.
pub fn lcp_build_regime(
    curve: &KummerCurve,
    regime: Regime,
    t: Option<usize>,
    s: Option<i64>,
) -> Result<LcpPair> {
    let m = curve.m();
    let r = curve.r();
    let half = m / 2;
    let violation = |msg: String| Err(Error::RegimeViolation(msg));
    if m % 2 != 0 || m < 4 {
        return violation(format!("m = {m} must be even and at least 4"));
    }
    let mut notes = Vec::new();
    let (a, ones, closed_form_den): (InvariantTuple, usize, Option<i64>) = match regime {
        Regime::HalfSingle { n } => {
            if !ones_then(curve, &[half]) {
                return violation("branch exponents must be (1, ..., 1, m/2)".into());
            }
            let a = coeffs_half_single(m, r, n)?;
            if n == 0 {
                if let Some(c) = half_single_window_coeffs(m, r) {
                    let same = c == a.n[..r - 1];
                    notes.push(format!(
                        "window coefficients c_i = {c:?} {} the general formula",
                        if same { "agree with" } else { "DIFFER from" }
                    ));
                }
            }
            (a, r - 1, Some(m as i64 * (r as i64 - 1)))
        }
        Regime::HalfDoubleN1 => {
            if !ones_then(curve, &[half, half]) {
                return violation("branch exponents must be (1, ..., 1, m/2, m/2)".into());
            }
            if r != half as usize + 2 {
                return violation(format!(
                    "r = {r}; degree bookkeeping requires r = m/2 + 2 = {}",
                    half + 2
                ));
            }
            let a = coeffs_half_double(m, r, 1)?;
            let stated: Vec<i64> = (1..half as i64).map(|i| 2 * i - 1).collect();
            let nonzero: Vec<i64> = a.n[..r - 2].iter().copied().filter(|&c| c != 0).collect();
            notes.push(format!(
                "nonzero ones-part coefficients {:?} {} the stated (2i - 1) pattern",
                nonzero,
                if sorted(&nonzero) == stated { "match" } else { "DIFFER from" }
            ));
            // the stated s-window divides by m(m/2 - 1); the recipe divides by m(r - 2) = m * m/2
            (a, r - 2, Some(m as i64 * (half as i64 - 1)))
        }
        Regime::HalfDoubleN2 => {
            if !ones_then(curve, &[half, half]) {
                return violation("branch exponents must be (1, ..., 1, m/2, m/2)".into());
            }
            if r != m as usize + 3 {
                return violation(format!("r = {r}; this family requires r = m + 3 = {}", m + 3));
            }
            let a = coeffs_half_double(m, r, 2)?;
            let mut stated: Vec<i64> = vec![0; 3];
            for i in 1..half as i64 {
                stated.extend([2 * i, 2 * i]);
            }
            notes.push(format!(
                "ones-part coefficients {} the stated 2i (Q_(2i-1) + Q_(2i)) multiset",
                if sorted(&a.n[..r - 2]) == sorted(&stated) { "match" } else { "DIFFER from" }
            ));
            (a, r - 2, Some(m as i64 * (m as i64 + 1)))
        }
        Regime::LambdaTwo { k } => {
            if !ones_then(curve, &[2]) {
                return violation("branch exponents must be (1, ..., 1, 2)".into());
            }
            notes.push("n0 fixed to 0 so that A has no support at infinity".into());
            (coeffs_lambda_two(m, r, 0, k)?, r - 1, Some(m as i64 * (r as i64 - 1)))
        }
    };
    let phi: Vec<usize> = (0..ones).collect();
    let mut points = curve.split_points()?;
    if let Some(t) = t {
        if t > points.len() {
            return Err(precondition(format!(
                "requested t = {t} but only {} points split completely",
                points.len()
            )));
        }
        points.truncate(t);
    }
    let n = points.len() * m as usize;
    let genus = curve.genus();
    let (lo, hi) = s_range(genus, m, phi.len(), n)?;
    if let Some(den) = closed_form_den {
        let generic = m as i64 * phi.len() as i64;
        if den != generic {
            let stated_lo = (floor_div(genus - 1, den) + 1).max(1);
            let stated_hi = ceil_div(n as i64 - genus + 1, den) - 1;
            notes.push(format!(
                "stated s-window ({}/{den}, {}/{den}) = [{stated_lo}, {stated_hi}] differs from the recomputed [{lo}, {hi}]; recomputed window used",
                genus - 1,
                n as i64 - genus + 1
            ));
        }
    }
    let s = s.unwrap_or(lo);
    let mut pair = lcp_build_general(curve, &a, &phi, &points, s)?;
    pair.notes = notes;
    Ok(pair)
}
