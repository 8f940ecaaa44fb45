//! Kummer curves `y^m = a * prod (x - alpha_i)^lambda_i`, their places,
//! divisors, the restriction map to the rational subfield and the
//! Riemann–Roch dimension of Galois-invariant divisors.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{floor_div, gcd, isqrt};
use crate::error::{Error, Result};
use crate::ffield::{make_field, nth_roots, poly_analyze, Field, FieldElement, Poly};

/// Derived ramification data of a Kummer curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationData {
    /// Number of places above each branch point, `gcd(m, lambda_i)`.
    pub d: Vec<u32>,
    /// Ramification index above each branch point, `m / d_i`.
    pub e: Vec<u32>,
    pub big_lambda: u64,
    pub d_inf: u32,
    pub e_inf: u32,
    pub genus: i64,
}

impl RamificationData {
    pub fn new(m: u32, lambdas: &[u32]) -> Result<RamificationData> {
        let d: Vec<u32> = lambdas.iter().map(|&l| gcd(m as u64, l as u64) as u32).collect();
        let e = d.iter().map(|&di| m / di).collect();
        let big_lambda: u64 = lambdas.iter().map(|&l| l as u64).sum();
        let d_inf = gcd(m as u64, big_lambda) as u32;
        let r = lambdas.len() as i64;
        let twice = (m as i64 - 1) * (r - 1)
            - d.iter().map(|&di| di as i64 - 1).sum::<i64>()
            - (d_inf as i64 - 1);
        if twice % 2 != 0 || twice < 0 {
            return Err(Error::InvalidCurve(format!(
                "genus numerator {twice} is not a non-negative even integer"
            )));
        }
        Ok(RamificationData {
            d,
            e,
            big_lambda,
            d_inf,
            e_inf: m / d_inf,
            genus: twice / 2,
        })
    }
}

/// A place of the curve, up to the labeling convention for conjugates.
///
/// `Branch { i, j }` is the `j`-th place above `alpha_i`, `Infinity { j }` the
/// `j`-th place above `x = infinity`, and `Split { a, y }` the rational place
/// with coordinates `(a, y)` above a non-branch point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Place {
    Branch { i: usize, j: u32 },
    Infinity { j: u32 },
    Split { a: FieldElement, y: FieldElement },
}

impl Place {
    /// The distinguished place at infinity.
    pub const Q_INF: Place = Place::Infinity { j: 0 };
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Branch { i, j } => write!(f, "P[{i},{j}]"),
            Place::Infinity { j } => write!(f, "Inf[{j}]"),
            Place::Split { a, y } => write!(f, "({a},{y})"),
        }
    }
}

/// Places of the rational function field that matter here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasePlace {
    Branch { i: usize },
    Infinity,
    Point { a: FieldElement },
}

impl BasePlace {
    pub fn below(place: &Place) -> BasePlace {
        match *place {
            Place::Branch { i, .. } => BasePlace::Branch { i },
            Place::Infinity { .. } => BasePlace::Infinity,
            Place::Split { a, .. } => BasePlace::Point { a },
        }
    }
}

/// A divisor as a finite table place -> coefficient; zero entries are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

#[derive(Serialize, Deserialize)]
struct DivisorEntry {
    place: Place,
    coeff: i64,
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<DivisorEntry> = self
            .coeffs
            .iter()
            .map(|(&place, &coeff)| DivisorEntry { place, coeff })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<DivisorEntry>::deserialize(d)?;
        let mut div = Divisor::new();
        for e in entries {
            div.add_at(e.place, e.coeff);
        }
        Ok(div)
    }
}

impl FromIterator<(Place, i64)> for Divisor {
    fn from_iter<I: IntoIterator<Item = (Place, i64)>>(iter: I) -> Self {
        let mut d = Divisor::new();
        for (p, c) in iter {
            d.add_at(p, c);
        }
        d
    }
}

impl Divisor {
    pub fn new() -> Divisor {
        Divisor::default()
    }

    pub fn single(place: Place, coeff: i64) -> Divisor {
        [(place, coeff)].into_iter().collect()
    }

    pub fn get(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, place: Place, coeff: i64) {
        let c = self.coeffs.entry(place).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coeffs.remove(&place);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of coefficients; every place used here has degree one.
    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (&p, &c) in &other.coeffs {
            out.add_at(p, c);
        }
        out
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        self.coeffs.iter().map(|(&p, &c)| (p, c * k)).collect()
    }

    fn merge(&self, other: &Divisor, pick: fn(i64, i64) -> i64) -> Divisor {
        let mut places: Vec<Place> = self.coeffs.keys().copied().collect();
        places.extend(other.coeffs.keys().copied());
        places
            .into_iter()
            .map(|p| (p, pick(self.get(&p), other.get(&p))))
            .collect::<BTreeMap<_, _>>()
            .into_iter()
            .collect()
    }

    /// Coefficient-wise minimum.
    pub fn gcd(&self, other: &Divisor) -> Divisor {
        self.merge(other, i64::min)
    }

    /// Coefficient-wise maximum (least multiple).
    pub fn lmd(&self, other: &Divisor) -> Divisor {
        self.merge(other, i64::max)
    }

    pub fn disjoint_from(&self, places: &[Place]) -> bool {
        places.iter().all(|p| !self.coeffs.contains_key(p))
    }
}

/// Divisor of the rational function field `GF(q)(x)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDivisor {
    pub coeffs: BTreeMap<BasePlace, i64>,
}

impl RationalDivisor {
    pub fn get(&self, place: &BasePlace) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Dimension of the Riemann–Roch space of a genus-0 divisor.
    pub fn ell(&self) -> i64 {
        (self.degree() + 1).max(0)
    }
}

/// Coefficient tuple `(n0; n_1..n_r)` of a Galois-invariant divisor: `n_i` on
/// each place above `alpha_i`, `n0` on each place at infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub n0: i64,
    pub n: Vec<i64>,
}

impl InvariantTuple {
    pub fn new(n0: i64, n: Vec<i64>) -> InvariantTuple {
        InvariantTuple { n0, n }
    }

    pub fn zero(r: usize) -> InvariantTuple {
        InvariantTuple::new(0, vec![0; r])
    }

    /// Parses `n0,n1,...,nr`.
    pub fn parse(s: &str) -> std::result::Result<InvariantTuple, String> {
        let vals: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        let vals = vals.map_err(|e| format!("bad tuple {s:?}: {e}"))?;
        match vals.split_first() {
            Some((&n0, rest)) => Ok(InvariantTuple::new(n0, rest.to_vec())),
            None => Err("empty tuple".into()),
        }
    }

    pub fn as_row(&self) -> Vec<i64> {
        std::iter::once(self.n0).chain(self.n.iter().copied()).collect()
    }

    pub fn is_effective(&self) -> bool {
        self.n0 >= 0 && self.n.iter().all(|&c| c >= 0)
    }

    pub fn degree(&self, ram: &RamificationData) -> i64 {
        self.n0 * ram.d_inf as i64
            + self
                .n
                .iter()
                .zip(&ram.d)
                .map(|(&c, &d)| c * d as i64)
                .sum::<i64>()
    }
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row: Vec<String> = self.as_row().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", row.join(","))
    }
}

/// `b(x) = num(x) / den(x) * prod (x - alpha_i)^{branch_exps[i]}`, up to a
/// nonzero constant. Abstract curves accept only the branch part.
#[derive(Clone, Debug, Default)]
pub struct XFunction {
    pub num: Option<Poly>,
    pub den: Option<Poly>,
    pub branch_exps: Vec<i64>,
}

impl XFunction {
    pub fn branch_power(r: usize, i: usize, e: i64) -> XFunction {
        let mut branch_exps = vec![0; r];
        branch_exps[i] = e;
        XFunction {
            branch_exps,
            ..Default::default()
        }
    }

    pub fn polynomial(p: Poly) -> XFunction {
        XFunction {
            num: Some(p),
            ..Default::default()
        }
    }
}

/// How a finite point of the projective line behaves in the extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingKind {
    Branch,
    Split,
    InertOrPartial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    pub kind: SplittingKind,
    /// Rational places above the point.
    pub places: Vec<Place>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    /// Number of rational places.
    pub n: u64,
    pub split_points: u64,
    pub split_places: u64,
    pub branch_places: u64,
    pub infinity_places: u64,
    /// `q + 1 + floor(2 g sqrt(q))`.
    pub hasse_weil_bound: u64,
    pub is_maximal: bool,
}

/// Field parameters as they appear in curve specs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    pub k: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSpec {
    pub alpha: u32,
    pub lambda: u32,
}

fn one() -> u32 {
    1
}

/// JSON description of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveSpec {
    Abstract {
        #[serde(rename = "abstract")]
        is_abstract: bool,
        m: u32,
        lambdas: Vec<u32>,
    },
    Concrete {
        field: FieldParams,
        m: u32,
        #[serde(default = "one")]
        a: u32,
        branches: Vec<BranchSpec>,
    },
}

/// A Kummer curve, over a concrete finite field or abstract (no field; only
/// the combinatorics of `m` and the `lambda_i`).
#[derive(Clone, Debug)]
pub struct KummerCurve {
    field: Option<Field>,
    m: u32,
    lambdas: Vec<u32>,
    alphas: Vec<FieldElement>,
    a: FieldElement,
    ram: RamificationData,
}

impl PartialEq for KummerCurve {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.m == other.m
            && self.lambdas == other.lambdas
            && self.alphas == other.alphas
            && self.a == other.a
    }
}

fn validate_lambdas(m: u32, lambdas: &[u32]) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidCurve(format!("m = {m} must be at least 2")));
    }
    if lambdas.is_empty() {
        return Err(Error::InvalidCurve("no branch points".into()));
    }
    if let Some(&lambda) = lambdas.iter().find(|&&l| l == 0 || l >= m) {
        return Err(Error::LambdaOutOfRange { lambda, m });
    }
    let g = lambdas.iter().fold(m as u64, |g, &l| gcd(g, l as u64));
    if g != 1 {
        return Err(Error::GcdViolation(g as u32));
    }
    Ok(())
}

/// Builds a curve over a concrete field.
pub fn make_curve(
    field: &Field,
    m: u32,
    branches: &[(FieldElement, u32)],
    a: FieldElement,
) -> Result<KummerCurve> {
    let lambdas: Vec<u32> = branches.iter().map(|&(_, l)| l).collect();
    validate_lambdas(m, &lambdas)?;
    let p = field.characteristic();
    if m % p == 0 {
        return Err(Error::CharDividesM { p, m });
    }
    if a.is_zero() {
        return Err(Error::InvalidCurve("leading coefficient a must be nonzero".into()));
    }
    for &(alpha, _) in branches {
        field.element(alpha.enc() as u64)?;
    }
    if field.element(a.enc() as u64).is_err() {
        return Err(Error::ElementOutOfRange {
            enc: a.enc() as u64,
            q: field.order(),
        });
    }
    let mut seen: Vec<FieldElement> = branches.iter().map(|&(x, _)| x).collect();
    seen.sort();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateBranch(w[0].enc()));
    }
    Ok(KummerCurve {
        field: Some(field.clone()),
        m,
        ram: RamificationData::new(m, &lambdas)?,
        lambdas,
        alphas: branches.iter().map(|&(x, _)| x).collect(),
        a,
    })
}

/// Builds a field-free curve keyed only on `m` and the `lambda_i`.
pub fn make_abstract_curve(m: u32, lambdas: &[u32]) -> Result<KummerCurve> {
    validate_lambdas(m, lambdas)?;
    Ok(KummerCurve {
        field: None,
        m,
        ram: RamificationData::new(m, lambdas)?,
        lambdas: lambdas.to_vec(),
        alphas: Vec::new(),
        a: FieldElement::ONE,
    })
}

impl KummerCurve {
    pub fn from_spec(spec: &CurveSpec) -> Result<KummerCurve> {
        match spec {
            CurveSpec::Abstract {
                is_abstract,
                m,
                lambdas,
            } => {
                if !is_abstract {
                    return Err(Error::InvalidCurve(
                        "field-free spec must set \"abstract\": true".into(),
                    ));
                }
                make_abstract_curve(*m, lambdas)
            }
            CurveSpec::Concrete {
                field,
                m,
                a,
                branches,
            } => {
                let f = make_field(field.p, field.k)?;
                let mut bs = Vec::with_capacity(branches.len());
                for b in branches {
                    bs.push((f.element(b.alpha as u64)?, b.lambda));
                }
                let a = f.element(*a as u64)?;
                make_curve(&f, *m, &bs, a)
            }
        }
    }

    pub fn to_spec(&self) -> CurveSpec {
        match &self.field {
            None => CurveSpec::Abstract {
                is_abstract: true,
                m: self.m,
                lambdas: self.lambdas.clone(),
            },
            Some(f) => CurveSpec::Concrete {
                field: FieldParams {
                    p: f.characteristic() as u64,
                    k: f.degree(),
                },
                m: self.m,
                a: self.a.enc(),
                branches: self
                    .alphas
                    .iter()
                    .zip(&self.lambdas)
                    .map(|(al, &l)| BranchSpec {
                        alpha: al.enc(),
                        lambda: l,
                    })
                    .collect(),
            },
        }
    }

    pub fn field(&self) -> Option<&Field> {
        self.field.as_ref()
    }

    pub fn require_field(&self) -> Result<&Field> {
        self.field.as_ref().ok_or(Error::AbstractField)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[u32] {
        &self.lambdas
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.a
    }

    pub fn ramification(&self) -> &RamificationData {
        &self.ram
    }

    pub fn genus(&self) -> i64 {
        self.ram.genus
    }

    /// The right-hand side `f(x)`.
    pub fn f_poly(&self) -> Result<Poly> {
        let field = self.require_field()?;
        let mut f = Poly::constant(field, self.a);
        for (&alpha, &l) in self.alphas.iter().zip(&self.lambdas) {
            f = f.mul(&Poly::linear(field, alpha).pow(l));
        }
        Ok(f)
    }

    pub fn f_eval(&self, x: FieldElement) -> Result<FieldElement> {
        let field = self.require_field()?;
        Ok(self
            .alphas
            .iter()
            .zip(&self.lambdas)
            .fold(self.a, |acc, (&alpha, &l)| {
                field.mul(acc, field.pow(field.sub(x, alpha), l as u64))
            }))
    }

    pub fn branch_index(&self, x: FieldElement) -> Option<usize> {
        self.alphas.iter().position(|&al| al == x)
    }

    /// `c_i = a * prod_{k != i} (alpha_i - alpha_k)^lambda_k`; the places above
    /// `alpha_i` are labeled by the `d_i`-th roots of `c_i`.
    pub fn branch_constant(&self, i: usize) -> Result<FieldElement> {
        let field = self.require_field()?;
        let ai = *self.alphas.get(i).ok_or_else(|| Error::InvalidPlace(format!("branch {i}")))?;
        Ok(self
            .alphas
            .iter()
            .zip(&self.lambdas)
            .enumerate()
            .filter(|&(k, _)| k != i)
            .fold(self.a, |acc, (_, (&ak, &l))| {
                field.mul(acc, field.pow(field.sub(ai, ak), l as u64))
            }))
    }

    /// Values of `w_i` at the rational places above `alpha_i`, in label order.
    pub fn branch_labels(&self, i: usize) -> Result<Vec<FieldElement>> {
        let field = self.require_field()?;
        let c = self.branch_constant(i)?;
        Ok(nth_roots(field, c, self.ram.d[i] as u64))
    }

    /// Values of `w = y^{m/d_inf} x^{-Lambda/d_inf}` at the rational places at
    /// infinity, in label order.
    pub fn infinity_labels(&self) -> Result<Vec<FieldElement>> {
        let field = self.require_field()?;
        Ok(nth_roots(field, self.a, self.ram.d_inf as u64))
    }

    /// `w(Q_inf)`, the least root of `W^{d_inf} = a`.
    pub fn omega(&self) -> Result<FieldElement> {
        self.infinity_labels()?
            .first()
            .copied()
            .ok_or(Error::InfinityNotRational)
    }

    pub fn branch_places_rational(&self, i: usize) -> Result<bool> {
        Ok(self.branch_labels(i)?.len() == self.ram.d[i] as usize)
    }

    pub fn infinity_places_rational(&self) -> Result<bool> {
        Ok(self.infinity_labels()?.len() == self.ram.d_inf as usize)
    }

    pub fn check_place(&self, place: &Place) -> Result<()> {
        let ok = match *place {
            Place::Branch { i, j } => i < self.r() && j < self.ram.d[i],
            Place::Infinity { j } => j < self.ram.d_inf,
            Place::Split { a, y } => {
                let field = self.require_field()?;
                let fa = self.f_eval(a)?;
                !fa.is_zero() && field.pow(y, self.m as u64) == fa
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPlace(place.to_string()))
        }
    }

    /// Ramification index of `place` over the place below it.
    pub fn ramification_index(&self, place: &Place) -> u32 {
        match *place {
            Place::Branch { i, .. } => self.ram.e[i],
            Place::Infinity { .. } => self.ram.e_inf,
            Place::Split { .. } => 1,
        }
    }

    /// Number of places (over the algebraic closure) above a base place.
    pub fn places_above_count(&self, base: &BasePlace) -> u32 {
        match *base {
            BasePlace::Branch { i } => self.ram.d[i],
            BasePlace::Infinity => self.ram.d_inf,
            BasePlace::Point { .. } => self.m,
        }
    }

    /// `v_P((x - x_P)^{e_x} y^{e_y})`, where `x - x_P` is `x - alpha_i` above a
    /// branch point, `x - a` above a split point and `x` itself at infinity.
    pub fn monomial_valuation(&self, place: &Place, e_x: i64, e_y: i64) -> Result<i64> {
        match *place {
            Place::Branch { i, j } if i < self.r() && j < self.ram.d[i] => {
                let lam_over_d = (self.lambdas[i] / self.ram.d[i]) as i64;
                Ok(e_x * self.ram.e[i] as i64 + e_y * lam_over_d)
            }
            Place::Infinity { j } if j < self.ram.d_inf => Ok(-e_x * self.ram.e_inf as i64
                - e_y * (self.ram.big_lambda / self.ram.d_inf as u64) as i64),
            Place::Split { .. } => {
                self.check_place(place)?;
                Ok(e_x)
            }
            _ => Err(Error::InvalidPlace(place.to_string())),
        }
    }

    /// All places above the points of `GF(q)` with `f(a)` a nonzero `m`-th power.
    pub fn split_places_above(&self, a: FieldElement) -> Result<Vec<Place>> {
        let field = self.require_field()?;
        let fa = self.f_eval(a)?;
        if fa.is_zero() {
            return Ok(Vec::new());
        }
        Ok(nth_roots(field, fa, self.m as u64)
            .into_iter()
            .map(|y| Place::Split { a, y })
            .collect())
    }

    /// `div(b(x) y^t)`.
    pub fn principal_divisor(&self, b: &XFunction, t: u32) -> Result<Divisor> {
        let r = self.r();
        let mut exps = vec![0i64; r];
        for (k, &e) in b.branch_exps.iter().enumerate() {
            if k >= r {
                return Err(Error::TupleLength {
                    expected: r,
                    got: b.branch_exps.len(),
                });
            }
            exps[k] = e;
        }
        let mut x_degree: i64 = exps.iter().sum();
        let mut split: BTreeMap<FieldElement, i64> = BTreeMap::new();
        for (poly, sign) in [(&b.num, 1i64), (&b.den, -1i64)] {
            let Some(poly) = poly else { continue };
            self.require_field()?;
            let analysis = poly_analyze(poly)?;
            let deg = poly.degree().unwrap_or(0);
            if !analysis.splits(deg) {
                return Err(Error::UnsupportedRoot(format!(
                    "{poly:?} has an irreducible factor of degree > 1"
                )));
            }
            x_degree += sign * deg as i64;
            for (root, mult) in analysis.roots_in_field {
                let mult = sign * mult as i64;
                if let Some(i) = self.branch_index(root) {
                    exps[i] += mult;
                } else if self.split_places_above(root)?.len() == self.m as usize {
                    *split.entry(root).or_insert(0) += mult;
                } else {
                    return Err(Error::UnsupportedRoot(root.to_string()));
                }
            }
        }
        let mut div = Divisor::new();
        for i in 0..r {
            let v = self.monomial_valuation(&Place::Branch { i, j: 0 }, exps[i], t as i64)?;
            for j in 0..self.ram.d[i] {
                div.add_at(Place::Branch { i, j }, v);
            }
        }
        let v_inf = self.monomial_valuation(&Place::Q_INF, x_degree, t as i64)?;
        for j in 0..self.ram.d_inf {
            div.add_at(Place::Infinity { j }, v_inf);
        }
        for (a, mult) in split {
            for p in self.split_places_above(a)? {
                div.add_at(p, mult);
            }
        }
        Ok(div)
    }

    /// `E_inf = div_inf(x)`.
    pub fn pole_divisor_x(&self) -> Divisor {
        (0..self.ram.d_inf)
            .map(|j| (Place::Infinity { j }, self.ram.e_inf as i64))
            .collect()
    }

    /// `div_0(x - alpha_i)`.
    pub fn zero_divisor_branch(&self, i: usize) -> Divisor {
        (0..self.ram.d[i])
            .map(|j| (Place::Branch { i, j }, self.ram.e[i] as i64))
            .collect()
    }

    /// Expands an invariant tuple into a divisor.
    pub fn invariant_divisor(&self, a: &InvariantTuple) -> Result<Divisor> {
        self.check_tuple(a)?;
        let mut div = Divisor::new();
        for j in 0..self.ram.d_inf {
            div.add_at(Place::Infinity { j }, a.n0);
        }
        for (i, &c) in a.n.iter().enumerate() {
            for j in 0..self.ram.d[i] {
                div.add_at(Place::Branch { i, j }, c);
            }
        }
        Ok(div)
    }

    /// Recovers the tuple of a divisor that is constant on every group of
    /// conjugate places and supported on branch and infinite places.
    pub fn as_invariant(&self, div: &Divisor) -> Option<InvariantTuple> {
        let mut t = InvariantTuple::zero(self.r());
        t.n0 = div.get(&Place::Q_INF);
        if (0..self.ram.d_inf).any(|j| div.get(&Place::Infinity { j }) != t.n0) {
            return None;
        }
        for i in 0..self.r() {
            t.n[i] = div.get(&Place::Branch { i, j: 0 });
            if (0..self.ram.d[i]).any(|j| div.get(&Place::Branch { i, j }) != t.n[i]) {
                return None;
            }
        }
        (self.invariant_divisor(&t).ok()? == *div).then_some(t)
    }

    pub fn check_tuple(&self, a: &InvariantTuple) -> Result<()> {
        if a.n.len() != self.r() {
            return Err(Error::TupleLength {
                expected: self.r(),
                got: a.n.len(),
            });
        }
        Ok(())
    }

    /// Restriction to the rational subfield: at each base place `Q` the
    /// coefficient is `min_{P|Q} floor(v_P(D) / e(P|Q))`.
    pub fn restrict(&self, div: &Divisor) -> RationalDivisor {
        let mut groups: BTreeMap<BasePlace, Vec<i64>> = BTreeMap::new();
        for (p, &c) in div.iter() {
            groups
                .entry(BasePlace::below(p))
                .or_default()
                .push(floor_div(c, self.ramification_index(p) as i64));
        }
        let coeffs = groups
            .into_iter()
            .map(|(base, vals)| {
                let mut min = *vals.iter().min().expect("nonempty group");
                if (vals.len() as u32) < self.places_above_count(&base) {
                    min = min.min(0);
                }
                (base, min)
            })
            .filter(|&(_, c)| c != 0)
            .collect();
        RationalDivisor { coeffs }
    }

    /// `deg R(A + div(y^t))` for an invariant tuple, in closed form.
    pub fn restricted_degree(&self, a: &InvariantTuple, t: u32) -> i64 {
        let m = self.m as i64;
        let t = t as i64;
        let finite: i64 = a
            .n
            .iter()
            .zip(&self.ram.d)
            .zip(&self.lambdas)
            .map(|((&c, &d), &l)| floor_div(c * d as i64 + t * l as i64, m))
            .sum();
        finite + floor_div(a.n0 * self.ram.d_inf as i64 - t * self.ram.big_lambda as i64, m)
    }

    /// Riemann–Roch dimension of an invariant divisor via the decomposition
    /// `L(A) = sum_t L(R(A + div(y^t))) y^t`. With `shift_t`, only that summand.
    pub fn ell_invariant(
        &self,
        a: &InvariantTuple,
        shift_t: Option<u32>,
        allow_negative: bool,
    ) -> Result<i64> {
        self.check_tuple(a)?;
        if !allow_negative && !a.is_effective() {
            return Err(Error::NegativeCoefficient);
        }
        let summand = |t: u32| (self.restricted_degree(a, t) + 1).max(0);
        match shift_t {
            Some(t) if t >= self.m => Err(Error::JOutOfRange { j: t, m: self.m }),
            Some(t) => Ok(summand(t)),
            None => Ok((0..self.m).map(summand).sum()),
        }
    }

    pub fn splitting_type(&self, a: FieldElement) -> Result<SplittingType> {
        self.require_field()?;
        if let Some(i) = self.branch_index(a) {
            let places = (0..self.branch_labels(i)?.len() as u32)
                .map(|j| Place::Branch { i, j })
                .collect();
            return Ok(SplittingType {
                kind: SplittingKind::Branch,
                places,
            });
        }
        let places = self.split_places_above(a)?;
        if places.len() == self.m as usize {
            Ok(SplittingType {
                kind: SplittingKind::Split,
                places,
            })
        } else {
            Ok(SplittingType {
                kind: SplittingKind::InertOrPartial,
                places: Vec::new(),
            })
        }
    }

    /// Points `a` of `GF(q)` whose place splits completely, in enc order.
    pub fn split_points(&self) -> Result<Vec<FieldElement>> {
        let field = self.require_field()?;
        let elems: Vec<FieldElement> = field.elements().collect();
        let flags: Vec<bool> = elems
            .par_iter()
            .map(|&a| {
                self.branch_index(a).is_none()
                    && self.split_places_above(a).map(|p| p.len()).unwrap_or(0) == self.m as usize
            })
            .collect();
        Ok(elems
            .into_iter()
            .zip(flags)
            .filter_map(|(a, ok)| ok.then_some(a))
            .collect())
    }

    /// Every rational place: branch places, places at infinity, then the
    /// remaining affine places sorted by `(a, y)`.
    pub fn rational_places(&self) -> Result<Vec<Place>> {
        let field = self.require_field()?;
        let mut out = Vec::new();
        for i in 0..self.r() {
            out.extend((0..self.branch_labels(i)?.len() as u32).map(|j| Place::Branch { i, j }));
        }
        out.extend((0..self.infinity_labels()?.len() as u32).map(|j| Place::Infinity { j }));
        let elems: Vec<FieldElement> = field.elements().collect();
        let affine: Vec<Vec<Place>> = elems
            .par_iter()
            .map(|&a| self.split_places_above(a).unwrap_or_default())
            .collect();
        out.extend(affine.into_iter().flatten());
        Ok(out)
    }

    /// Rational place count and the maximality flag.
    pub fn census(&self) -> Result<Census> {
        let field = self.require_field()?;
        let elems: Vec<FieldElement> = field.elements().collect();
        let per_point: Vec<usize> = elems
            .par_iter()
            .map(|&a| self.split_places_above(a).map(|p| p.len()).unwrap_or(0))
            .collect();
        let split_places: u64 = per_point.iter().map(|&c| c as u64).sum();
        let split_points = per_point.iter().filter(|&&c| c == self.m as usize).count() as u64;
        let mut branch_places = 0u64;
        for i in 0..self.r() {
            branch_places += self.branch_labels(i)?.len() as u64;
        }
        let infinity_places = self.infinity_labels()?.len() as u64;
        let n = split_places + branch_places + infinity_places;
        let q = field.order() as u128;
        let g = self.genus() as u128;
        let hasse_weil_bound = (q + 1 + isqrt(4 * g * g * q)) as u64;
        let sq = isqrt(q);
        let is_maximal = sq * sq == q && n as u128 == q + 1 + 2 * g * sq;
        Ok(Census {
            n,
            split_points,
            split_places,
            branch_places,
            infinity_places,
            hasse_weil_bound,
            is_maximal,
        })
    }
}
