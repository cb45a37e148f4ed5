//! Univariate polynomials over a [`Scalar`] field, minimal polynomials of
//! matrices, and root finding in the supported fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{euler_phi, FieldDescriptor, Scalar};
use crate::matrix::{vecops, ScalarMatrix, Subspace};

/// Coefficients lowest degree first; no trailing zeros (zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: FieldDescriptor,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldDescriptor, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Poly::new(field, vec![field.one()])
    }

    /// `x − c`
    pub fn linear(c: &Scalar) -> Self {
        let f = c.field();
        Poly::new(f, vec![-c, f.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero lead");
                Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(self.field, Vec::new());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly::new(self.field, out)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::new(self.field, Vec::new()), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (t, dt) in d.coeffs.iter().enumerate() {
                if !dt.is_zero() {
                    r[k + t] = &r[k + t] - &(&c * dt);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        let g = self.gcd(o);
        self.mul(o).divrem(&g).0.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale_int(k as i64)).collect();
        Poly::new(self.field, c)
    }

    /// Squarefree part (characteristic zero).
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// `p(A)` for a square matrix.
    pub fn eval_matrix(&self, a: &ScalarMatrix) -> ScalarMatrix {
        let n = a.rows();
        let mut acc = ScalarMatrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            for i in 0..n {
                let x = acc.get(i, i) + c;
                acc.set(i, i, x);
            }
        }
        acc
    }
}

/// Minimal polynomial of the vector `v` under `a` (monic).
fn krylov_poly(a: &ScalarMatrix, v: &[Scalar]) -> (Poly, Vec<Vec<Scalar>>) {
    let f = a.field();
    let n = a.rows();
    let mut sub = Subspace::tracking(f, n);
    let mut chain = vec![v.to_vec()];
    sub.insert(v);
    loop {
        let next = a.mul_vec(chain.last().unwrap());
        match sub.generator_coords(&next) {
            Some(c) => {
                // next = Σ c_i A^i v  ⇒  x^k − Σ c_i x^i
                let mut coeffs: Vec<Scalar> = c.iter().map(|x| -x).collect();
                coeffs.push(f.one());
                return (Poly::new(f, coeffs), chain);
            }
            None => {
                sub.insert(&next);
                chain.push(next);
            }
        }
    }
}

/// Minimal polynomial of a square matrix (monic).
///
/// Computed as the lcm of the Krylov polynomials of a set of seeds whose
/// cyclic subspaces cover the whole space.
pub fn min_poly(a: &ScalarMatrix) -> Poly {
    let f = a.field();
    let n = a.rows();
    let mut covered = Subspace::new(f, n);
    let mut acc = Poly::one(f);
    for i in 0..n {
        if covered.dim() == n {
            break;
        }
        let e = vecops::unit(f, n, i);
        if covered.contains(&e) {
            continue;
        }
        let (p, chain) = krylov_poly(a, &e);
        for v in &chain {
            covered.insert(v);
        }
        acc = acc.lcm(&p);
    }
    acc
}

/// Distinct roots of `p` found in its field.
///
/// Complete over F_p and ℚ. Over ℚ(ζ) the search combines the linear factor
/// of the squarefree part, rational roots, and small elements of ℤ[ζ]; a root
/// outside that set can be missed.
pub fn roots(p: &Poly) -> Vec<Scalar> {
    let f = p.field;
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out: Vec<Scalar> = Vec::new();
    let push = |out: &mut Vec<Scalar>, r: Scalar| {
        if !out.contains(&r) {
            out.push(r);
        }
    };
    match f {
        FieldDescriptor::Prime(q) => {
            assert!(q <= 1 << 22, "root search over F_p needs a small prime");
            for r in 0..q {
                let x = Scalar::Mod { value: r, p: q };
                if p.eval(&x).is_zero() {
                    out.push(x);
                }
            }
        }
        FieldDescriptor::Rationals => {
            let sf = p.squarefree();
            for r in rational_roots(&sf) {
                push(&mut out, Scalar::from_rational(f, &r).unwrap());
            }
        }
        FieldDescriptor::Cyclotomic(l) => {
            let sf = p.squarefree();
            if sf.degree() == Some(1) {
                push(&mut out, -&sf.coeffs[0]);
                return out;
            }
            let rat: Option<Vec<BigRational>> = sf.coeffs.iter().map(Scalar::to_rational).collect();
            if let Some(rc) = rat {
                let rp = Poly::new(
                    FieldDescriptor::Rationals,
                    rc.iter().map(|x| Scalar::from_rational(FieldDescriptor::Rationals, x).unwrap()).collect(),
                );
                for r in rational_roots(&rp) {
                    push(&mut out, Scalar::from_rational(f, &r).unwrap());
                }
            }
            let deg = sf.degree().unwrap();
            if out.len() < deg {
                for cand in small_cyclotomic_elements(l) {
                    if sf.eval(&cand).is_zero() {
                        push(&mut out, cand);
                        if out.len() == deg {
                            break;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Candidates Σ a_k ζ^k with small integer coefficients, ordered by size.
fn small_cyclotomic_elements(l: u32) -> Vec<Scalar> {
    let phi = euler_phi(l as u64) as usize;
    let bound: i64 = match phi {
        0..=2 => 6,
        3..=4 => 3,
        5..=6 => 2,
        _ => 1,
    };
    let width = (2 * bound + 1) as usize;
    let total = width.pow(phi as u32);
    let mut cands: Vec<(i64, Vec<i64>)> = (0..total)
        .map(|mut idx| {
            let mut v = Vec::with_capacity(phi);
            for _ in 0..phi {
                v.push((idx % width) as i64 - bound);
                idx /= width;
            }
            (v.iter().map(|x| x.abs()).sum(), v)
        })
        .collect();
    cands.sort();
    cands
        .into_iter()
        .map(|(_, v)| {
            let c: Vec<BigRational> = v.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
            Scalar::from_zeta_coeffs(l, &c)
        })
        .collect()
}

/// Rational roots of a polynomial over ℚ by the rational root theorem.
fn rational_roots(p: &Poly) -> Vec<BigRational> {
    let mut coeffs: Vec<BigRational> =
        p.coeffs.iter().map(|c| c.to_rational().expect("rational coefficient")).collect();
    let mut out = Vec::new();
    // strip factors of x
    while coeffs.first().is_some_and(|c| c.is_zero()) {
        coeffs.remove(0);
        if !out.contains(&BigRational::zero()) {
            out.push(BigRational::zero());
        }
    }
    if coeffs.len() <= 1 {
        return out;
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let (Some(d0), Some(dn)) = (divisors(&a0), divisors(&an)) else {
        return out;
    };
    let eval = |x: &BigRational| {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    };
    for num in &d0 {
        for den in &dn {
            for sign in [1i64, -1] {
                let r = BigRational::new(num * BigInt::from(sign), den.clone());
                if !out.contains(&r) && eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n == 0 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 2_000_000 {
            return None;
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_poly_of_nilpotent_plus_scalar() {
        let f = FieldDescriptor::Rationals;
        // J_2(3) ⊕ (5)
        let a = ScalarMatrix::from_ints(f, 3, 3, &[3, 1, 0, 0, 3, 0, 0, 0, 5]);
        let m = min_poly(&a);
        assert_eq!(m.degree(), Some(3));
        assert!(m.eval_matrix(&a).is_zero());
        let r = roots(&m);
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn roots_over_each_field() {
        let q = FieldDescriptor::Rationals;
        // (2x − 1)(x + 3)
        let p = Poly::new(q, vec![q.from_int(-3), q.from_int(5), q.from_int(2)]);
        let mut r: Vec<String> = roots(&p).iter().map(|x| x.to_string()).collect();
        r.sort();
        assert_eq!(r, vec!["-3", "1/2"]);
        let f5 = FieldDescriptor::Prime(5);
        let p = Poly::new(f5, vec![f5.from_int(1), f5.zero(), f5.one()]); // x² + 1
        assert_eq!(roots(&p).len(), 2);
        let c = FieldDescriptor::Cyclotomic(3);
        let z = Scalar::zeta(3);
        // (x − z)(x + 1)
        let p = Poly::linear(&z).mul(&Poly::linear(&c.from_int(-1)));
        let r = roots(&p);
        assert!(r.contains(&z) && r.contains(&c.from_int(-1)));
    }
}
