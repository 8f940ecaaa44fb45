//! Exact arithmetic in GF(p^k) and univariate polynomials over it.
//!
//! Elements are stored by their canonical integer encoding
//! `enc(e) = sum coeffs[i] * p^i`, where `coeffs` are the coordinates of `e`
//! in the power basis of the field's defining modulus. Multiplication goes
//! through discrete log tables built once per field; addition works digit by
//! digit in base `p`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest field order accepted by [`make_field`].
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// Parameters of a finite field: characteristic, degree and defining modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Coefficients of the monic modulus, constant term first (`k + 1` entries).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }
}

/// A field element, identified by its canonical encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn enc(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldInner {
    spec: FieldSpec,
    q: u32,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled so products need no reduction.
    exp: Vec<u32>,
    /// `log[e]` for nonzero `e`; `log[0]` is unused.
    log: Vec<u32>,
    generator: FieldElement,
}

/// A constructed finite field. Cheap to clone; all clones share tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.spec.p, self.inner.spec.k)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.inner.spec.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(deserializer)?;
        let field = make_field(spec.p as u64, spec.k).map_err(serde::de::Error::custom)?;
        if field.spec().modulus != spec.modulus {
            return Err(serde::de::Error::custom(
                "modulus differs from the canonical modulus",
            ));
        }
        Ok(field)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial helpers over GF(p), coefficients constant term first.
// Only used while bootstrapping a field.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn prime_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    trim(&mut r);
    let dd = den.len() - 1;
    let lead_inv = inv_mod(den[dd], p) as u64;
    while r.len() > dd {
        let shift = r.len() - 1 - dd;
        let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
        for (i, &d) in den.iter().enumerate() {
            let sub = c * d as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

/// Coefficients (low first) of the monic polynomial of degree `deg` whose
/// lower coefficients have encoding `tail`.
fn monic_from_tail(tail: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg as usize + 1);
    let mut t = tail;
    for _ in 0..deg {
        v.push((t % p as u64) as u32);
        t /= p as u64;
    }
    v.push(1);
    v
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() as u32 - 1;
    for deg in 1..=k / 2 {
        let count = (p as u64).pow(deg);
        for tail in 0..count {
            let div = monic_from_tail(tail, deg, p);
            if prime_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Slow multiplication of encodings modulo the field modulus.
fn slow_mul(a: u32, b: u32, spec: &FieldSpec) -> u32 {
    let p = spec.p;
    let k = spec.k as usize;
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let mut prod = vec![0u64; 2 * k];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let r = prime_rem(&prod, &spec.modulus, p);
    undigits(&r, p)
}

fn digits(mut a: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_pow(mut base: u32, mut e: u64, spec: &FieldSpec) -> u32 {
    let mut result = 1;
    while e > 0 {
        if e & 1 == 1 {
            result = slow_mul(result, base, spec);
        }
        base = slow_mul(base, base, spec);
        e >>= 1;
    }
    result
}

/// Builds GF(p^k) with the canonical modulus, capped at [`DEFAULT_FIELD_CAP`].
pub fn make_field(p: u64, k: u32) -> Result<Field> {
    make_field_with_cap(p, k, DEFAULT_FIELD_CAP)
}

/// Builds GF(p^k) with the canonical modulus: the monic irreducible of degree
/// `k` whose lower coefficients have the least encoding.
pub fn make_field_with_cap(p: u64, k: u32, cap: u64) -> Result<Field> {
    if k == 0 {
        return Err(Error::DegreeZero);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if order > cap as u128 || order > u32::MAX as u128 {
        return Err(Error::FieldTooLarge {
            order: order.min(u64::MAX as u128) as u64,
            cap,
        });
    }
    let p = p as u32;
    let q = order as u32;
    let modulus = if k == 1 {
        vec![0, 1]
    } else {
        (0..q as u64)
            .map(|tail| monic_from_tail(tail, k, p))
            .find(|cand| is_irreducible(cand, p))
            .expect("an irreducible polynomial of every degree exists")
    };
    let spec = FieldSpec { p, k, modulus };

    let group = (q - 1) as u64;
    let factors = prime_factors(group);
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&l| slow_pow(g, group / l, &spec) != 1))
        .expect("multiplicative group is cyclic");

    let n = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..n {
        exp[i] = cur;
        log[cur as usize] = i as u32;
        cur = slow_mul(cur, generator, &spec);
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    if n == 0 {
        exp[0] = 1;
    }
    Ok(Field {
        inner: Arc::new(FieldInner {
            spec,
            q,
            exp,
            log,
            generator: FieldElement(generator),
        }),
    })
}

impl Field {
    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.spec.k
    }

    /// The primitive element used for the log tables (least encoding).
    pub fn generator(&self) -> FieldElement {
        self.inner.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, enc: u64) -> Result<FieldElement> {
        if enc >= self.inner.q as u64 {
            return Err(Error::ElementOutOfRange {
                enc,
                q: self.inner.q,
            });
        }
        Ok(FieldElement(enc as u32))
    }

    /// Image of an integer under Z -> GF(p) -> GF(q).
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.spec.p as i64) as u32)
    }

    /// Every element in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(FieldElement)
    }

    /// Power-basis coordinates of `e`.
    pub fn coeffs(&self, e: FieldElement) -> Vec<u32> {
        digits(e.0, self.inner.spec.p, self.inner.spec.k as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let p = self.inner.spec.p;
        if coeffs.len() > self.inner.spec.k as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::ElementOutOfRange {
                enc: u64::MAX,
                q: self.inner.q,
            });
        }
        Ok(FieldElement(undigits(coeffs, p)))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.spec.p;
        if self.inner.spec.k == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut res, mut pw) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            res += ((x % p + y % p) % p) * pw;
            x /= p;
            y /= p;
            pw = pw.wrapping_mul(p);
        }
        FieldElement(res)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.inner.spec.p;
        if self.inner.spec.k == 1 {
            return FieldElement((p - a.0) % p);
        }
        let (mut x, mut res, mut pw) = (a.0, 0u32, 1u32);
        while x > 0 {
            res += ((p - x % p) % p) * pw;
            x /= p;
            pw = pw.wrapping_mul(p);
        }
        FieldElement(res)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let i = self.inner.log[a.0 as usize] + self.inner.log[b.0 as usize];
        FieldElement(self.inner.exp[i as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let n = self.inner.q - 1;
        let l = self.inner.log[a.0 as usize];
        Some(FieldElement(self.inner.exp[((n - l) % n) as usize]))
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b).expect("division by zero in finite field"))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[a.0 as usize] as u64;
        FieldElement(self.inner.exp[((l * (e % n)) % n) as usize])
    }

    /// Signed power; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> FieldElement {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            let inv = self.inv(a).expect("negative power of zero");
            self.pow(inv, e.unsigned_abs())
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[a.0 as usize] as u64;
        Some(n / gcd_u64(n, l))
    }

    /// Power test: `c` is an `n`-th power in the field.
    pub fn is_nth_power(&self, c: FieldElement, n: u64) -> bool {
        if c.0 == 0 {
            return true;
        }
        let qm1 = (self.inner.q - 1) as u64;
        self.pow(c, qm1 / gcd_u64(n, qm1)) == FieldElement::ONE
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// All `y` with `y^n = c`, in increasing encoding order.
pub fn nth_roots(field: &Field, c: FieldElement, n: u64) -> Vec<FieldElement> {
    if c.is_zero() {
        return vec![FieldElement::ZERO];
    }
    if !field.is_nth_power(c, n) {
        return Vec::new();
    }
    field
        .elements()
        .skip(1)
        .filter(|&y| field.pow(y, n) == c)
        .collect()
}

/// Univariate polynomial over a finite field, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Polynomial with integer coefficients reduced mod p, constant term first.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: FieldElement) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, FieldElement::ONE)
    }

    /// `x^e`.
    pub fn monomial(field: &Field, e: usize) -> Poly {
        let mut c = vec![FieldElement::ZERO; e + 1];
        c[e] = FieldElement::ONE;
        Poly::new(field, c)
    }

    /// `x - root`.
    pub fn linear(field: &Field, root: FieldElement) -> Poly {
        Poly::new(field, vec![field.neg(root), FieldElement::ONE])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[FieldElement]) -> Poly {
        roots
            .iter()
            .fold(Poly::one(field), |acc, &r| acc.mul(&Poly::linear(field, r)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// Degree; `None` stands for the zero polynomial's minus infinity.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, c)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: FieldElement) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut c = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = f.inv(divisor.leading_coeff()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if nd < dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let c = f.mul(rem[shift + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, d));
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading_coeff()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.from_int(i as i64), a))
            .collect();
        Poly::new(f, c)
    }

    /// Multiplicity of `root` as a zero; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, root: FieldElement) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin = Poly::linear(&self.field, root);
        let mut cur = self.clone();
        let mut mult = 0;
        loop {
            let (q, r) = cur.div_rem(&lin).expect("linear divisor");
            if !r.is_zero() {
                return Some(mult);
            }
            mult += 1;
            cur = q;
        }
    }
}

/// Roots, separability and leading coefficient of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyAnalysis {
    pub roots_in_field: Vec<(FieldElement, usize)>,
    pub separable: bool,
    pub leading_coeff: FieldElement,
}

impl PolyAnalysis {
    /// True when the roots account for the full degree.
    pub fn splits(&self, degree: usize) -> bool {
        self.roots_in_field.iter().map(|(_, m)| m).sum::<usize>() == degree
    }
}

pub fn poly_analyze(f: &Poly) -> Result<PolyAnalysis> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let roots_in_field = field
        .elements()
        .filter(|&a| f.eval(a).is_zero())
        .map(|a| (a, f.root_multiplicity(a).expect("nonzero polynomial")))
        .collect();
    let separable = f.gcd(&f.derivative()).degree() == Some(0);
    Ok(PolyAnalysis {
        roots_in_field,
        separable,
        leading_coeff: f.leading_coeff(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64, k: u32) -> Field {
        make_field(p, k).unwrap()
    }

    #[test]
    fn prime_field_inverse_pair() {
        let f = gf(7, 1);
        let three = f.element(3).unwrap();
        let five = f.element(5).unwrap();
        assert_eq!(f.mul(three, five), f.one());
        assert_eq!(f.inv(three), Some(five));
    }

    #[test]
    fn gf49_has_element_of_order_8() {
        let f = gf(7, 2);
        assert_eq!(f.order(), 49);
        // exhaustive order scan
        let orders: Vec<u64> = f.elements().skip(1).map(|a| {
            let mut x = a;
            let mut o = 1;
            while x != f.one() {
                x = f.mul(x, a);
                o += 1;
            }
            o
        }).collect();
        assert!(orders.contains(&8));
        assert_eq!(orders.iter().copied().max(), Some(48));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(make_field(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(7, 0), Err(Error::DegreeZero)));
        assert!(matches!(make_field(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(make_field_with_cap(3, 3, 10).is_err());
    }

    #[test]
    fn canonical_moduli() {
        // x^2 + 1 is irreducible over GF(7) and has the least tail encoding.
        assert_eq!(gf(7, 2).spec().modulus, vec![1, 0, 1]);
        // over GF(2): x^2 + x + 1, x^3 + x + 1
        assert_eq!(gf(2, 2).spec().modulus, vec![1, 1, 1]);
        assert_eq!(gf(2, 3).spec().modulus, vec![1, 1, 0, 1]);
        // over GF(3): x^2 + 1
        assert_eq!(gf(3, 2).spec().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn nth_roots_examples() {
        let f = gf(7, 1);
        let e = |n| f.element(n).unwrap();
        assert_eq!(nth_roots(&f, e(1), 3), vec![e(1), e(2), e(4)]);
        assert_eq!(nth_roots(&f, e(6), 3), vec![e(3), e(5), e(6)]);
        assert_eq!(nth_roots(&f, e(0), 5), vec![e(0)]);
        assert_eq!(nth_roots(&f, e(3), 2), vec![]);
    }

    #[test]
    fn nth_root_counts_are_exhaustive() {
        for (p, k) in [(2, 5), (3, 4), (5, 2), (7, 2), (31, 1), (2, 10)] {
            let f = gf(p, k);
            let q = f.order() as u64;
            for n in [1u64, 2, 3, 4, 6, 8, 12] {
                let g = gcd_u64(n, q - 1) as usize;
                let mut total = 0;
                for c in f.elements() {
                    let roots = nth_roots(&f, c, n);
                    if !c.is_zero() {
                        assert!(roots.is_empty() || roots.len() == g);
                        assert_eq!(roots.is_empty(), !f.is_nth_power(c, n));
                    }
                    total += roots.len();
                }
                assert_eq!(total as u64, q);
            }
        }
    }

    #[test]
    fn fermat_exhaustive() {
        for (p, k) in [(2, 10), (3, 6), (5, 4), (7, 3), (31, 2), (1021, 1)] {
            let f = gf(p, k);
            let q = f.order() as u64;
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a);
            }
        }
    }

    #[test]
    fn analyze_examples() {
        let f49 = gf(7, 2);
        let a = poly_analyze(&Poly::from_ints(&f49, &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(a.roots_in_field.len(), 4);
        assert!(a.roots_in_field.iter().all(|&(_, m)| m == 1));
        assert!(a.separable);

        let f7 = gf(7, 1);
        let a = poly_analyze(&Poly::from_ints(&f7, &[0, 0, 1])).unwrap();
        assert_eq!(a.roots_in_field, vec![(f7.zero(), 2)]);
        assert!(!a.separable);

        let a = poly_analyze(&Poly::from_ints(&f7, &[1, 0, 1])).unwrap();
        assert!(a.roots_in_field.is_empty());
        assert!(a.separable);

        assert!(matches!(poly_analyze(&Poly::zero(&f7)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn division_identity() {
        let f = gf(5, 2);
        let a = Poly::from_ints(&f, &[1, 2, 3, 4, 0, 1]);
        let b = Poly::from_ints(&f, &[3, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
        assert!(a.div_rem(&Poly::zero(&f)).is_err());
    }

    #[test]
    fn serde_field_roundtrip() {
        let f = gf(7, 2);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":7,"k":2,"modulus":[1,0,1]}"#);
        let back: Field = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Field>(r#"{"p":7,"k":2,"modulus":[3,0,1]}"#).is_err());
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(gf(2, 8)),
            Just(gf(3, 5)),
            Just(gf(7, 2)),
            Just(gf(11, 2)),
            Just(gf(101, 1)),
            Just(gf(5, 3)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn field_axioms(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let q = f.order();
            let (a, b, c) = (FieldElement(a % q), FieldElement(b % q), FieldElement(c % q));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }

    proptest! {
        #[test]
        fn analyze_multiplicities(roots in prop::collection::vec(0u32..49, 1..6), extra in 0u32..3) {
            let f = gf(7, 2);
            let roots: Vec<FieldElement> = roots.into_iter().map(FieldElement).collect();
            let mut poly = Poly::from_roots(&f, &roots);
            // an irreducible quadratic factor keeps the polynomial from splitting
            for _ in 0..extra {
                poly = poly.mul(&Poly::from_ints(&f, &[3, 0, 1]).mul(&Poly::from_ints(&f, &[0, 1, 0, 1])).sub(&Poly::from_ints(&f, &[0, 0, 0, 0])));
            }
            let deg = poly.degree().unwrap();
            let an = poly_analyze(&poly).unwrap();
            let total: usize = an.roots_in_field.iter().map(|(_, m)| m).sum();
            prop_assert!(total <= deg);
            if an.splits(deg) {
                prop_assert_eq!(an.separable, an.roots_in_field.iter().all(|&(_, m)| m == 1));
            }
        }
    }
}
