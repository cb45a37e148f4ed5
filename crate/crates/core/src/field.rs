//! Exact scalars over ℚ, prime fields F_p and cyclotomic fields ℚ(ζ_ℓ).
//!
//! Every [`Scalar`] is kept in canonical form, so structural equality is
//! mathematical equality:
//! - rationals are GCD-reduced with positive denominator,
//! - residues lie in `[0, p)`,
//! - cyclotomic elements are coefficient vectors of length φ(ℓ) in the
//!   power basis `1, z, …, z^(φ(ℓ)-1)`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Requested field, before normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Cyclotomic(u32),
}

/// A normalized field. `Cyclotomic(ℓ)` always has ℓ ≥ 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
    Cyclotomic(u32),
}

/// Builds a canonical field descriptor.
pub fn field_make(kind: FieldKind) -> Result<FieldDescriptor> {
    match kind {
        FieldKind::Rationals => Ok(FieldDescriptor::Rationals),
        FieldKind::Prime(p) => {
            if is_prime(p) {
                Ok(FieldDescriptor::Prime(p))
            } else {
                Err(Error::NonPrimeModulus(p))
            }
        }
        FieldKind::Cyclotomic(0) => Err(Error::UnsupportedOrder(0)),
        FieldKind::Cyclotomic(1) | FieldKind::Cyclotomic(2) => Ok(FieldDescriptor::Rationals),
        FieldKind::Cyclotomic(l) => Ok(FieldDescriptor::Cyclotomic(l)),
    }
}

impl FieldDescriptor {
    /// Characteristic; 0 for ℚ and ℚ(ζ).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Prime(p) => *p,
            _ => 0,
        }
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        match self {
            FieldDescriptor::Cyclotomic(l) => euler_phi(*l as u64) as usize,
            _ => 1,
        }
    }

    /// Φ_ℓ as integer coefficients, lowest degree first (cyclotomic fields only).
    pub fn modulus(&self) -> Option<Vec<i64>> {
        match self {
            FieldDescriptor::Cyclotomic(l) => Some(cyclotomic_poly(*l).as_ref().clone()),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        Scalar::from_int(*self, n)
    }

    /// Human-readable name.
    pub fn pretty(&self) -> String {
        match self {
            FieldDescriptor::Rationals => "Q".to_string(),
            FieldDescriptor::Prime(p) => format!("F_{p}"),
            FieldDescriptor::Cyclotomic(l) => format!("Q(zeta_{l})"),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "rationals"),
            FieldDescriptor::Prime(p) => write!(f, "prime {p}"),
            FieldDescriptor::Cyclotomic(l) => write!(f, "cyclotomic {l}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |t: Option<&&str>| -> Result<u64> {
            t.ok_or_else(|| Error::Parse(format!("missing parameter in field '{s}'")))?
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("field '{s}': {e}")))
        };
        match parts.first().copied() {
            Some("rationals") if parts.len() == 1 => Ok(FieldDescriptor::Rationals),
            Some("prime") if parts.len() == 2 => field_make(FieldKind::Prime(num(parts.get(1))?)),
            Some("cyclotomic") if parts.len() == 2 => {
                let l = num(parts.get(1))?;
                let l = u32::try_from(l).map_err(|_| Error::UnsupportedOrder(u32::MAX))?;
                field_make(FieldKind::Cyclotomic(l))
            }
            _ => Err(Error::Parse(format!("unknown field '{s}'"))),
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime; `a` must be nonzero mod `p`.
#[inline]
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

thread_local! {
    static CYCLO_CACHE: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Φ_n with integer coefficients, lowest degree first.
///
/// Computed by dividing xⁿ − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_poly(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = CYCLO_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = exact_int_div(&num, &den);
        }
    }
    let rc = Rc::new(num);
    CYCLO_CACHE.with(|c| c.borrow_mut().insert(n, rc.clone()));
    rc
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (t, &dt) in den.iter().enumerate() {
                rem[k + t] -= c * dt;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Element of ℚ(ζ_ℓ) in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycElem {
    pub order: u32,
    pub coeffs: Vec<BigRational>,
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Box<BigRational>),
    Mod { value: u64, p: u64 },
    Cyc(Box<CycElem>),
}

/// Operation selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked arithmetic entry point; binary ops require `b`.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar> {
    let need_b = || b.ok_or_else(|| Error::DimensionMismatch("binary operation needs two operands".into()));
    match op {
        ArithOp::Add => a.try_add(need_b()?),
        ArithOp::Mul => a.try_mul(need_b()?),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}

/// A primitive root of unity of the requested order.
///
/// In ℚ(ζ_ℓ) any order dividing ℓ is available; in ℚ only orders 1 and 2;
/// in F_p any order dividing p − 1.
pub fn root_of_unity(field: FieldDescriptor, order: u32) -> Result<Scalar> {
    match (field, order) {
        (_, 0) => Err(Error::UnsupportedOrder(0)),
        (_, 1) => Ok(Scalar::one(field)),
        (FieldDescriptor::Rationals, 2) => Ok(Scalar::from_int(field, -1)),
        (FieldDescriptor::Rationals, o) => Err(Error::UnsupportedOrder(o)),
        (FieldDescriptor::Cyclotomic(l), o) => {
            if l % o != 0 {
                return Err(Error::UnsupportedOrder(o));
            }
            let z = Scalar::zeta(l);
            z.pow((l / o) as i64)
        }
        (FieldDescriptor::Prime(p), o) => {
            if (p - 1) % o as u64 != 0 {
                return Err(Error::UnsupportedOrder(o));
            }
            let o = o as u64;
            let factors = prime_factors(o);
            for g in 2..p {
                let cand = pow_mod(g, (p - 1) / o, p);
                if factors.iter().all(|&f| pow_mod(cand, o / f, p) != 1) {
                    return Ok(Scalar::Mod { value: cand, p });
                }
            }
            Err(Error::UnsupportedOrder(o as u32))
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

fn mismatch(a: &Scalar, b: &Scalar) -> Error {
    Error::FieldMismatch(a.field().to_string(), b.field().to_string())
}

impl Scalar {
    pub fn zero(field: FieldDescriptor) -> Scalar {
        match field {
            FieldDescriptor::Rationals => Scalar::Rat(Box::new(BigRational::zero())),
            FieldDescriptor::Prime(p) => Scalar::Mod { value: 0, p },
            FieldDescriptor::Cyclotomic(l) => Scalar::Cyc(Box::new(CycElem {
                order: l,
                coeffs: vec![BigRational::zero(); euler_phi(l as u64) as usize],
            })),
        }
    }

    pub fn one(field: FieldDescriptor) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: FieldDescriptor, n: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: FieldDescriptor, n: &BigInt) -> Scalar {
        Scalar::from_rational(field, &BigRational::from_integer(n.clone())).expect("integer embeds in every field")
    }

    /// Image of a rational number; fails in F_p when p divides the denominator.
    pub fn from_rational(field: FieldDescriptor, r: &BigRational) -> Result<Scalar> {
        match field {
            FieldDescriptor::Rationals => Ok(Scalar::Rat(Box::new(r.clone()))),
            FieldDescriptor::Prime(p) => {
                let pb = BigInt::from(p);
                let num = r.numer().mod_floor(&pb).to_u64().unwrap();
                let den = r.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Mod { value: mul_mod(num, inv_mod(den, p), p), p })
            }
            FieldDescriptor::Cyclotomic(l) => {
                let mut coeffs = vec![BigRational::zero(); euler_phi(l as u64) as usize];
                coeffs[0] = r.clone();
                Ok(Scalar::Cyc(Box::new(CycElem { order: l, coeffs })))
            }
        }
    }

    pub fn from_ratio(field: FieldDescriptor, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Scalar::from_rational(field, &BigRational::new(num.into(), den.into()))
    }

    /// The generator ζ_ℓ of ℚ(ζ_ℓ); ℓ ≥ 3.
    pub fn zeta(order: u32) -> Scalar {
        assert!(order >= 3, "zeta requires order >= 3");
        let phi = euler_phi(order as u64) as usize;
        let mut coeffs = vec![BigRational::zero(); phi];
        if phi == 1 {
            unreachable!("phi(l) >= 2 for l >= 3");
        }
        coeffs[1] = BigRational::one();
        Scalar::Cyc(Box::new(CycElem { order, coeffs }))
    }

    /// Cyclotomic element from rational coefficients of powers of ζ (any length).
    pub fn from_zeta_coeffs(order: u32, coeffs: &[BigRational]) -> Scalar {
        let field = field_make(FieldKind::Cyclotomic(order)).expect("order >= 1");
        match field {
            FieldDescriptor::Rationals => {
                let z = if order == 1 { BigRational::one() } else { -BigRational::one() };
                let mut acc = BigRational::zero();
                let mut pw = BigRational::one();
                for c in coeffs {
                    acc += c * &pw;
                    pw *= &z;
                }
                Scalar::Rat(Box::new(acc))
            }
            _ => Scalar::Cyc(Box::new(CycElem { order, coeffs: reduce_cyc(order, coeffs.to_vec()) })),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rat(_) => FieldDescriptor::Rationals,
            Scalar::Mod { p, .. } => FieldDescriptor::Prime(*p),
            Scalar::Cyc(c) => FieldDescriptor::Cyclotomic(c.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Cyc(c) => c.coeffs.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Cyc(c) => c.coeffs[0].is_one() && c.coeffs[1..].iter().all(|x| x.is_zero()),
        }
    }

    /// The rational value, if this element lies in ℚ (or its prime-field image is requested elsewhere).
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some((**r).clone()),
            Scalar::Cyc(c) if c.coeffs[1..].iter().all(|x| x.is_zero()) => Some(c.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(Box::new(&**a + &**b))),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                let s = a + b;
                Ok(Scalar::Mod { value: if s >= *p { s - p } else { s }, p: *p })
            }
            (Scalar::Cyc(a), Scalar::Cyc(b)) if a.order == b.order => {
                let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
                Ok(Scalar::Cyc(Box::new(CycElem { order: a.order, coeffs })))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(Box::new(&**a * &**b))),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Ok(Scalar::Mod { value: mul_mod(*a, *b, *p), p: *p })
            }
            (Scalar::Cyc(a), Scalar::Cyc(b)) if a.order == b.order => {
                let n = a.coeffs.len();
                let mut prod = vec![BigRational::zero(); 2 * n - 1];
                for (i, x) in a.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.coeffs.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                Ok(Scalar::Cyc(Box::new(CycElem { order: a.order, coeffs: reduce_cyc(a.order, prod) })))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(Box::new(r.recip()))),
            Scalar::Mod { value, p } => Ok(Scalar::Mod { value: inv_mod(*value, *p), p: *p }),
            Scalar::Cyc(c) => cyc_inverse(c),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one(self.field());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Multiplies by a machine integer.
    pub fn scale_int(&self, k: i64) -> Scalar {
        self * &Scalar::from_int(self.field(), k)
    }

    /// Canonical text form; see [`Scalar::parse`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the canonical text form in the given field.
    ///
    /// Accepted syntax: `a/b` or `a` (ℚ), `r mod p` (F_p), and
    /// `c0 + c1*z + c2*z^2` (ℚ(ζ)). Plain integers are accepted in every field.
    pub fn parse(field: FieldDescriptor, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = |why: &str| Error::Parse(format!("scalar '{s}' in {field}: {why}"));
        match field {
            FieldDescriptor::Rationals => {
                let r = BigRational::from_str(s).map_err(|e| bad(&e.to_string()))?;
                Ok(Scalar::Rat(Box::new(r)))
            }
            FieldDescriptor::Prime(p) => {
                if let Some((r, m)) = s.split_once(" mod ") {
                    let m: u64 = m.trim().parse().map_err(|_| bad("bad modulus"))?;
                    if m != p {
                        return Err(Error::FieldMismatch(format!("prime {m}"), field.to_string()));
                    }
                    let r = BigRational::from_str(r.trim()).map_err(|e| bad(&e.to_string()))?;
                    Scalar::from_rational(field, &r)
                } else {
                    let r = BigRational::from_str(s).map_err(|e| bad(&e.to_string()))?;
                    Scalar::from_rational(field, &r)
                }
            }
            FieldDescriptor::Cyclotomic(l) => {
                let mut coeffs: Vec<BigRational> = Vec::new();
                for term in s.split(" + ") {
                    let term = term.trim();
                    let (c, k) = parse_cyc_term(term).ok_or_else(|| bad("bad term"))?;
                    if coeffs.len() <= k {
                        coeffs.resize(k + 1, BigRational::zero());
                    }
                    coeffs[k] += c;
                }
                Ok(Scalar::from_zeta_coeffs(l, &coeffs))
            }
        }
    }

    /// Total order used for canonical sorting (not a field order).
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => a.cmp(b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => a.coeffs.cmp(&b.coeffs),
            _ => self.field().cmp(&other.field()),
        }
    }
}

fn parse_cyc_term(term: &str) -> Option<(BigRational, usize)> {
    if let Some(idx) = term.find('z') {
        let (head, tail) = term.split_at(idx);
        let k = match tail.strip_prefix("z")? {
            "" => 1,
            rest => rest.strip_prefix('^')?.parse().ok()?,
        };
        let head = head.trim();
        let c = match head.strip_suffix('*') {
            Some(c) => BigRational::from_str(c.trim()).ok()?,
            None if head.is_empty() => BigRational::one(),
            None if head == "-" => -BigRational::one(),
            None => return None,
        };
        Some((c, k))
    } else {
        Some((BigRational::from_str(term).ok()?, 0))
    }
}

/// Reduces a coefficient vector modulo Φ_ℓ to length φ(ℓ).
fn reduce_cyc(order: u32, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let phi_poly = cyclotomic_poly(order);
    let phi = phi_poly.len() - 1;
    if coeffs.len() > phi {
        for k in (phi..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[k], BigRational::zero());
            for (t, &pt) in phi_poly[..phi].iter().enumerate() {
                if pt != 0 {
                    coeffs[k - phi + t] -= &c * BigRational::from_integer(pt.into());
                }
            }
        }
    }
    coeffs.resize(phi, BigRational::zero());
    coeffs
}

/// Inverse in ℚ(ζ) by solving the φ×φ multiplication system a·b = 1.
// Gauss–Jordan updates read row `col` while writing row `r`.
#[allow(clippy::needless_range_loop)]
fn cyc_inverse(a: &CycElem) -> Result<Scalar> {
    let n = a.coeffs.len();
    // column j = a·z^j
    let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut cur = a.coeffs.clone();
    for _ in 0..n {
        cols.push(cur.clone());
        let mut shifted = vec![BigRational::zero(); n + 1];
        for (i, c) in cur.iter().enumerate() {
            shifted[i + 1] = c.clone();
        }
        cur = reduce_cyc(a.order, shifted);
    }
    // augmented rows: m[i] = [cols[0][i], ..., cols[n-1][i], rhs_i]
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    let coeffs = m.into_iter().map(|row| row[n].clone()).collect();
    Ok(Scalar::Cyc(Box::new(CycElem { order: a.order, coeffs })))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod { value, p } => write!(f, "{value} mod {p}"),
            Scalar::Cyc(c) => {
                let mut first = true;
                for (k, x) in c.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match k {
                        0 => write!(f, "{x}")?,
                        1 => write!(f, "{x}*z")?,
                        _ => write!(f, "{x}*z^{k}")?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(Box::new(-&**r)),
            Scalar::Mod { value, p } => Scalar::Mod { value: if *value == 0 { 0 } else { p - value }, p: *p },
            Scalar::Cyc(c) => {
                Scalar::Cyc(Box::new(CycElem { order: c.order, coeffs: c.coeffs.iter().map(|x| -x).collect() }))
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics on field mismatch; use the `try_*` methods for checked arithmetic.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_make_normalizes() {
        assert_eq!(field_make(FieldKind::Prime(5)).unwrap(), FieldDescriptor::Prime(5));
        assert_eq!(field_make(FieldKind::Prime(6)), Err(Error::NonPrimeModulus(6)));
        assert_eq!(field_make(FieldKind::Cyclotomic(2)).unwrap(), FieldDescriptor::Rationals);
        assert_eq!(field_make(FieldKind::Cyclotomic(1)).unwrap(), FieldDescriptor::Rationals);
        let f4 = field_make(FieldKind::Cyclotomic(4)).unwrap();
        assert_eq!(f4.modulus().unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn cyclotomic_polys_match_known() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40u32 {
            assert_eq!(cyclotomic_poly(n).len() - 1, euler_phi(n as u64) as usize);
        }
    }

    #[test]
    fn spec_arithmetic_examples() {
        let q = FieldDescriptor::Rationals;
        let a = Scalar::from_ratio(q, 1, 2).unwrap();
        let b = Scalar::from_ratio(q, 1, 3).unwrap();
        assert_eq!(&a + &b, Scalar::from_ratio(q, 5, 6).unwrap());
        let f5 = FieldDescriptor::Prime(5);
        assert_eq!(f5.from_int(2) * f5.from_int(3), f5.one());
        let z = Scalar::zeta(4);
        assert_eq!(&z * &z, Scalar::from_int(FieldDescriptor::Cyclotomic(4), -1));
        assert_eq!(Scalar::from_int(q, 0).inv(), Err(Error::DivisionByZero));
        assert!(matches!(a.try_add(&f5.one()), Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for l in 1..=12u32 {
            let f = field_make(FieldKind::Cyclotomic(l)).unwrap();
            let z = root_of_unity(f, l).unwrap();
            assert!(z.pow(l as i64).unwrap().is_one());
            for j in 1..l {
                assert!(!z.pow(j as i64).unwrap().is_one(), "l={l} j={j}");
            }
            if let FieldDescriptor::Cyclotomic(_) = f {
                // Φ_ℓ(ζ) = 0
                let phi = cyclotomic_poly(l);
                let mut acc = f.zero();
                for (k, &c) in phi.iter().enumerate() {
                    acc = acc + z.pow(k as i64).unwrap().scale_int(c);
                }
                assert!(acc.is_zero());
            }
        }
        assert_eq!(root_of_unity(FieldDescriptor::Rationals, 3), Err(Error::UnsupportedOrder(3)));
        let r = root_of_unity(FieldDescriptor::Prime(7), 3).unwrap();
        assert!(r.pow(3).unwrap().is_one() && !r.is_one());
    }

    #[test]
    fn text_round_trip() {
        let f = FieldDescriptor::Cyclotomic(5);
        let z = Scalar::zeta(5);
        let x = (&z * &z).scale_int(-3) + Scalar::from_ratio(f, 1, 7).unwrap() + &z;
        let s = x.to_text();
        assert_eq!(s, "1/7 + 1*z + -3*z^2");
        assert_eq!(Scalar::parse(f, &s).unwrap(), x);
        assert_eq!(Scalar::parse(f, "0").unwrap(), f.zero());
        let p = FieldDescriptor::Prime(7);
        assert_eq!(Scalar::parse(p, "3 mod 7").unwrap(), p.from_int(3));
        assert_eq!(p.from_int(-1).to_text(), "6 mod 7");
        let q = FieldDescriptor::Rationals;
        assert_eq!(Scalar::parse(q, "-4/6").unwrap().to_text(), "-2/3");
    }

    #[test]
    fn cyclotomic_inverse() {
        let f = FieldDescriptor::Cyclotomic(3);
        let x = Scalar::zeta(3) + f.from_int(2);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }
}
