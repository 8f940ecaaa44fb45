//! Dickson polynomials, the Dickson-based curve families and a catalog of
//! worked examples whose expected values are recomputed by the live pipeline.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{gcd, prime_power};
use crate::codes::{lcp_build_regime, rr_basis_invariant, s_range, Regime};
use crate::curve::{make_abstract_curve, make_curve, CurveSpec, InvariantTuple, KummerCurve};
use crate::error::{Error, Result};
use crate::ffield::{make_field, poly_analyze, Field, FieldElement, Poly};
use crate::nonspecial::{canonicalize, criterion_check, enumerate_nonspecial, Mode};

/// First-kind Dickson polynomial `phi_d` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicksonPoly {
    pub d: u32,
    pub poly: Poly,
}

/// `phi_0 = 2`, `phi_1 = x`, `phi_{d+1} = x phi_d - phi_{d-1}`.
pub fn dickson(d: u32, field: &Field) -> DicksonPoly {
    let x = Poly::monomial(field, 1);
    let (mut prev, mut cur) = (Poly::from_ints(field, &[2]), x.clone());
    if d == 0 {
        return DicksonPoly { d, poly: prev };
    }
    for _ in 1..d {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    DicksonPoly { d, poly: cur }
}

/// Integer coefficients of `phi_d`, constant term first.
pub fn dickson_integer(d: u32) -> Vec<i128> {
    let (mut prev, mut cur): (Vec<i128>, Vec<i128>) = (vec![2], vec![0, 1]);
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn field_of_square(q: u64) -> Result<Field> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::InvalidCurve(format!("q = {q} is not a prime power")))?;
    make_field(p, 2 * e)
}

/// Distinct simple roots of `f` in the field, in enc order; `expected` of them are required.
fn simple_roots(f: &Poly, expected: usize, forbidden: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let an = poly_analyze(f)?;
    let roots: Vec<FieldElement> = an.roots_in_field.iter().map(|&(r, _)| r).collect();
    let simple = an.roots_in_field.iter().all(|&(_, mult)| mult == 1);
    if !simple || roots.len() != expected || roots.iter().any(|r| forbidden.contains(r)) {
        return Err(Error::RootCountMismatch {
            expected,
            found: an
                .roots_in_field
                .iter()
                .filter(|(r, mult)| *mult == 1 && !forbidden.contains(r))
                .count(),
        });
    }
    Ok(roots)
}

/// `y^m = (x + 2)^{m/2} phi_{(m-2)/2}(x)` over `GF(q^2)`, for
/// `q = m - 1 (mod m(m-2))`.
pub fn dickson_curve_single(m: u32, q: u64) -> Result<KummerCurve> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::InvalidCurve(format!("m = {m} must be even and at least 4")));
    }
    let modulus = m as u64 * (m as u64 - 2);
    if q % modulus != (m as u64 - 1) % modulus {
        return Err(Error::CongruenceViolated(format!(
            "q = {q} is {} mod {modulus}, expected {}",
            q % modulus,
            m - 1
        )));
    }
    let field = field_of_square(q)?;
    let p = field.characteristic();
    if m % p == 0 {
        return Err(Error::CharDividesM { p, m });
    }
    let minus_two = field.from_int(-2);
    let phi = dickson((m - 2) / 2, &field);
    let roots = simple_roots(&phi.poly, (m as usize - 2) / 2, &[minus_two])?;
    let mut branches: Vec<(FieldElement, u32)> = roots.into_iter().map(|r| (r, 1)).collect();
    branches.push((minus_two, m / 2));
    make_curve(&field, m, &branches, field.one())
}

/// `y^m = (x^2 - 4)^{m/2} phi_{m+1}(x)` over `GF(q^2)`.
pub fn dickson_curve_double(m: u32, q: u64) -> Result<KummerCurve> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidCurve(format!("m = {m} must be even")));
    }
    let field = field_of_square(q)?;
    let p = field.characteristic();
    if (m as u64 * (m as u64 + 1)) % p as u64 == 0 {
        return Err(Error::InvalidCurve(format!(
            "characteristic {p} divides m(m+1) = {}",
            m * (m + 1)
        )));
    }
    let (two, minus_two) = (field.from_int(2), field.from_int(-2));
    let phi = dickson(m + 1, &field);
    let roots = simple_roots(&phi.poly, m as usize + 1, &[two, minus_two])?;
    let mut branches: Vec<(FieldElement, u32)> = roots.into_iter().map(|r| (r, 1)).collect();
    branches.push((two, m / 2));
    branches.push((minus_two, m / 2));
    make_curve(&field, m, &branches, field.one())
}

/// `y^8 = x^2 (x^4 + 1)` over `GF(49)`; the roots of `x^4 + 1` come first.
pub fn f49_curve() -> Result<KummerCurve> {
    let field = make_field(7, 2)?;
    let quartic = Poly::from_ints(&field, &[1, 0, 0, 0, 1]);
    let roots = simple_roots(&quartic, 4, &[field.zero()])?;
    let mut branches: Vec<(FieldElement, u32)> = roots.into_iter().map(|r| (r, 1)).collect();
    branches.push((field.zero(), 2));
    make_curve(&field, 8, &branches, field.one())
}

/// First curve (branch points taken as `r`-subsets in lexicographic enc
/// order, `a = 1`) accepted by `accept`.
pub fn first_curve_where(
    field: &Field,
    m: u32,
    lambdas: &[u32],
    max_tries: usize,
    accept: impl Fn(&KummerCurve) -> bool,
) -> Result<Option<KummerCurve>> {
    let q = field.order() as usize;
    let r = lambdas.len();
    if r > q {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..r).collect();
    for _ in 0..max_tries {
        let branches: Vec<(FieldElement, u32)> = idx
            .iter()
            .zip(lambdas)
            .map(|(&i, &l)| (field.element(i as u64).expect("in range"), l))
            .collect();
        let curve = make_curve(field, m, &branches, field.one())?;
        if accept(&curve) {
            return Ok(Some(curve));
        }
        // next combination
        let mut k = r;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            if idx[k] < q - r + k {
                idx[k] += 1;
                for l in k + 1..r {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
    Ok(None)
}

/// True when every branch place, every place at infinity is rational and
/// some `s` is admissible for `phi` = the `lambda = 1` indices.
pub fn regime_ready(curve: &KummerCurve) -> bool {
    let ok = (|| -> Result<bool> {
        if !curve.infinity_places_rational()? {
            return Ok(false);
        }
        for i in 0..curve.r() {
            if !curve.branch_places_rational(i)? {
                return Ok(false);
            }
        }
        let ones = curve.lambdas().iter().filter(|&&l| l == 1).count();
        let n = curve.split_points()?.len() * curve.m() as usize;
        Ok(ones > 0 && s_range(curve.genus(), curve.m(), ones, n).is_ok())
    })();
    ok.unwrap_or(false)
}

pub const CATALOG_IDS: [&str; 3] = ["ex37", "f49", "dickson_half_m8"];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub curve: CurveSpec,
    pub expected: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Reproduction {
    pub id: String,
    pub curve: CurveSpec,
    pub expected: BTreeMap<String, Value>,
    pub observed: BTreeMap<String, Value>,
    pub matches: bool,
    pub mismatches: Vec<String>,
}

fn t(n0: i64, n: &[i64]) -> InvariantTuple {
    InvariantTuple::new(n0, n.to_vec())
}

fn ex37_table() -> Vec<InvariantTuple> {
    let rows: [[i64; 6]; 24] = [
        [0, 0, 1, 3, 0, 5],
        [0, 0, 2, 4, 1, 0],
        [0, 1, 1, 3, 0, 4],
        [0, 1, 2, 3, 0, 3],
        [0, 1, 3, 3, 0, 2],
        [0, 1, 3, 4, 0, 1],
        [0, 1, 3, 5, 0, 0],
        [1, 0, 0, 3, 0, 5],
        [1, 0, 1, 3, 0, 4],
        [1, 0, 2, 3, 0, 3],
        [1, 0, 3, 3, 0, 2],
        [1, 0, 3, 4, 0, 1],
        [1, 0, 3, 5, 0, 0],
        [2, 0, 0, 4, 1, 0],
        [2, 0, 1, 3, 0, 3],
        [3, 0, 0, 1, 0, 5],
        [3, 0, 1, 1, 0, 4],
        [3, 0, 1, 2, 0, 3],
        [3, 0, 1, 3, 0, 2],
        [3, 0, 1, 4, 0, 1],
        [3, 0, 1, 5, 0, 0],
        [4, 0, 0, 2, 1, 0],
        [4, 0, 1, 3, 0, 1],
        [5, 0, 1, 3, 0, 0],
    ];
    rows.iter().map(|r| t(r[0], &r[1..])).collect()
}

/// Curve of a catalog entry.
pub fn catalog_curve(id: &str) -> Result<KummerCurve> {
    match id {
        "ex37" => make_abstract_curve(6, &[1, 1, 1, 3, 5]),
        "f49" => f49_curve(),
        "dickson_half_m8" => dickson_curve_single(8, 7),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

fn code_triple(n: i64, k: i64, d: i64) -> Value {
    json!([n, k, d])
}

pub fn catalog(id: &str) -> Result<CatalogEntry> {
    let curve = catalog_curve(id)?;
    let mut expected = BTreeMap::new();
    match id {
        "ex37" => {
            let curve_canon: Vec<InvariantTuple> =
                ex37_table().iter().map(|x| canonicalize(&curve, x)).collect();
            expected.insert("genus".into(), json!(9));
            expected.insert("count".into(), json!(24));
            expected.insert("tuples".into(), json!(sorted_tuples(curve_canon)));
        }
        "f49" => {
            expected.insert("genus".into(), json!(13));
            expected.insert("rational_places".into(), json!(232));
            expected.insert("maximal".into(), json!(true));
            expected.insert("t".into(), json!(28));
            expected.insert("n".into(), json!(224));
            expected.insert("A".into(), json!(t(0, &[0, 2, 3, 6, 1])));
            expected.insert("A_nonspecial".into(), json!(true));
            expected.insert("deg_A".into(), json!(13));
            expected.insert("s".into(), json!(2));
            expected.insert("deg_G".into(), json!(172));
            expected.insert("deg_H".into(), json!(76));
            expected.insert("code_G".into(), code_triple(224, 160, 52));
            expected.insert("code_H".into(), code_triple(224, 64, 148));
            expected.insert("stacked_rank".into(), json!(224));
            expected.insert("dim_L_G_t28".into(), json!(160));
            expected.insert("dim_L_H".into(), json!(64));
            expected.insert("lcp".into(), json!(true));
        }
        "dickson_half_m8" => {
            expected.insert("genus".into(), json!(9));
            expected.insert("dickson_roots".into(), json!(3));
            expected.insert("roots_avoid_minus_two".into(), json!(true));
            expected.insert("A".into(), json!(t(0, &[1, 3, 5, 0])));
            expected.insert("t".into(), json!(21));
            expected.insert("s_range".into(), json!([1, 6]));
            expected.insert("lcp_all_s".into(), json!(true));
        }
        _ => unreachable!(),
    }
    Ok(CatalogEntry {
        id: id.to_string(),
        curve: curve.to_spec(),
        expected,
    })
}

fn sorted_tuples(mut v: Vec<InvariantTuple>) -> Vec<InvariantTuple> {
    v.sort();
    v.dedup();
    v
}

fn observe(id: &str, curve: &KummerCurve) -> Result<BTreeMap<String, Value>> {
    let mut obs = BTreeMap::new();
    match id {
        "ex37" => {
            let found = sorted_tuples(enumerate_nonspecial(curve, true)?);
            obs.insert("genus".into(), json!(curve.genus()));
            obs.insert("count".into(), json!(found.len()));
            obs.insert("tuples".into(), json!(found));
        }
        "f49" => {
            let census = curve.census()?;
            let a = t(0, &[0, 2, 3, 6, 1]);
            let report = criterion_check(curve, &a, Mode::Cond3)?;
            let pair = lcp_build_regime(curve, Regime::LambdaTwo { k: 1 }, None, Some(2))?;
            let rank = pair.c.gen.stack(&pair.e.gen).rank();
            let triple = |c: &crate::codes::LinearCode| code_triple(c.n as i64, c.k as i64, c.designed_distance);
            obs.insert("genus".into(), json!(curve.genus()));
            obs.insert("rational_places".into(), json!(census.n));
            obs.insert("maximal".into(), json!(census.is_maximal));
            obs.insert("t".into(), json!(pair.split_points.len()));
            obs.insert("n".into(), json!(pair.c.n));
            obs.insert("A".into(), json!(pair.a));
            obs.insert("A_nonspecial".into(), json!(report.is_nonspecial()));
            obs.insert("deg_A".into(), json!(a.degree(curve.ramification())));
            obs.insert("s".into(), json!(pair.s));
            obs.insert("deg_G".into(), json!(pair.c.divisor_g.degree()));
            obs.insert("deg_H".into(), json!(pair.e.divisor_g.degree()));
            obs.insert("code_G".into(), triple(&pair.c));
            obs.insert("code_H".into(), triple(&pair.e));
            obs.insert("stacked_rank".into(), json!(rank));
            // spaces of the stated G (t = 28) and H need no evaluation places
            let mut g28 = a.clone();
            g28.n0 += (28 - 2 * 4) * curve.ramification().e_inf as i64;
            obs.insert("dim_L_G_t28".into(), json!(rr_basis_invariant(curve, &g28, 1)?.len()));
            obs.insert("dim_L_H".into(), json!(pair.e.k));
            obs.insert("lcp".into(), json!(pair.verified));
        }
        "dickson_half_m8" => {
            let field = curve.require_field()?;
            let phi = dickson(3, field);
            let an = poly_analyze(&phi.poly)?;
            let minus_two = field.from_int(-2);
            let n = curve.split_points()?.len() * curve.m() as usize;
            let ones = curve.lambdas().iter().filter(|&&l| l == 1).count();
            let (lo, hi) = s_range(curve.genus(), curve.m(), ones, n)?;
            let pairs: Vec<_> = (lo..=hi)
                .into_par_iter()
                .map(|s| lcp_build_regime(curve, Regime::HalfSingle { n: 0 }, None, Some(s)))
                .collect::<Result<_>>()?;
            obs.insert("genus".into(), json!(curve.genus()));
            obs.insert("dickson_roots".into(), json!(an.roots_in_field.len()));
            obs.insert(
                "roots_avoid_minus_two".into(),
                json!(an.roots_in_field.iter().all(|&(r, _)| r != minus_two)),
            );
            obs.insert("A".into(), json!(pairs[0].a));
            obs.insert("t".into(), json!(pairs[0].split_points.len()));
            obs.insert("s_range".into(), json!([lo, hi]));
            obs.insert("lcp_all_s".into(), json!(pairs.iter().all(|p| p.verified)));
        }
        _ => return Err(Error::UnknownId(id.to_string())),
    }
    Ok(obs)
}

/// Rebuilds a catalog entry and compares every expected key.
pub fn reproduce(id: &str) -> Result<Reproduction> {
    let entry = catalog(id)?;
    let curve = KummerCurve::from_spec(&entry.curve)?;
    let observed = observe(id, &curve)?;
    let mismatches: Vec<String> = entry
        .expected
        .iter()
        .filter(|(k, v)| observed.get(*k) != Some(v))
        .map(|(k, _)| k.clone())
        .collect();
    Ok(Reproduction {
        id: entry.id,
        curve: entry.curve,
        expected: entry.expected,
        observed,
        matches: mismatches.is_empty(),
        mismatches,
    })
}

/// `gcd(char, d) = 1`, used by separability checks.
pub fn coprime_to_char(field: &Field, d: u32) -> bool {
    gcd(field.characteristic() as u64, d as u64) == 1
}
