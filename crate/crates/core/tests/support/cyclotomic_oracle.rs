//! Integer polynomials modulo the ℓ-th cyclotomic polynomial, evaluated at
//! `x = q`; independent of the field arithmetic in the library.

pub type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact division by a monic polynomial; panics on a remainder.
fn div_exact(a: &Poly, d: &Poly) -> Poly {
    let mut r = a.clone();
    let dl = d.len();
    let mut q = vec![0; a.len().saturating_sub(dl) + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + dl - 1];
        q[i] = c;
        for (j, y) in d.iter().enumerate() {
            r[i + j] -= c * y;
        }
    }
    assert!(r.iter().all(|&x| x == 0));
    trim(q)
}

pub fn cyclotomic(l: usize) -> Poly {
    let mut p = vec![0; l + 1];
    p[0] = -1;
    p[l] = 1;
    for d in 1..l {
        if l.is_multiple_of(d) {
            p = div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

pub fn reduce(a: &Poly, m: &Poly) -> Poly {
    let mut r = a.clone();
    let ml = m.len();
    while r.len() >= ml {
        let c = *r.last().unwrap();
        let shift = r.len() - ml;
        for (j, y) in m.iter().enumerate() {
            r[shift + j] -= c * y;
        }
        r.pop();
    }
    r
}

/// `x^e` modulo Φ_ℓ for any integer `e` (using `x^ℓ = 1`).
pub fn power(l: usize, e: i64) -> Poly {
    let e = e.rem_euclid(l as i64) as usize;
    let mut p = vec![0; e + 1];
    p[e] = 1;
    reduce(&p, &cyclotomic(l))
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect())
}

pub fn is_zero(l: usize, a: &Poly) -> bool {
    reduce(a, &cyclotomic(l)).iter().all(|&x| x == 0)
}

pub fn g(l: usize, n: usize) -> Poly {
    let mut acc = vec![2];
    for i in 1..n as i64 {
        acc = reduce(&mul(&acc, &add(&vec![1], &power(l, i))), &cyclotomic(l));
    }
    acc
}

pub fn f(l: usize, n: usize, big_q: &Poly) -> Poly {
    let mut acc = vec![1];
    for i in (1 - n as i64)..n as i64 {
        acc = reduce(&mul(&acc, &add(big_q, &power(l, i))), &cyclotomic(l));
    }
    acc
}
