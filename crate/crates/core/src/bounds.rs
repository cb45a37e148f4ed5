//! Closed-form representation-dimension bounds and the type-A
//! representation-type classification.
//!
//! Throughout, `n = ℓm + a` with `0 ≤ a < ℓ`, and `ℓ = None` stands for a
//! parameter that is not a root of unity (the semisimple case).

use serde::Serialize;

use crate::auslander::hecke_root_of_unity;
use crate::error::{Error, Result};
use crate::field::{is_prime, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Family {
    HeckeA,
    HeckeB,
    HeckeD,
    ArikiKoike,
    SymmetricGroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Semisimple,
    Finite,
    Tame,
    Wild,
}

/// A claim in a report together with the published result it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub claim: String,
    pub source: String,
}

fn cite(claim: &str, source: &str) -> Citation {
    Citation { claim: claim.into(), source: source.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub family: Family,
    pub n: usize,
    pub ell: Option<usize>,
    pub m: usize,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    /// Why no upper bound is attached, when it is absent.
    pub upper_absent_reason: Option<String>,
    /// Only type A and group algebras are classified.
    pub class: Option<RepType>,
    /// Known exact value, kept apart from the bounds.
    pub known_exact: Option<usize>,
    /// `(name, value)` of each evaluated condition.
    pub conditions: Vec<(String, String)>,
    pub citations: Vec<Citation>,
}

impl BoundReport {
    fn new(family: Family, n: usize, ell: Option<usize>) -> Self {
        BoundReport {
            family,
            n,
            ell,
            m: ell.map_or(0, |l| n / l),
            lower: None,
            upper: None,
            upper_absent_reason: None,
            class: None,
            known_exact: None,
            conditions: Vec::new(),
            citations: Vec::new(),
        }
    }

    fn semisimple(mut self) -> Self {
        self.lower = Some(0);
        self.upper = Some(0);
        self.class = Some(RepType::Semisimple);
        self.citations.push(cite("semisimple, so every module is projective", "semisimplicity criterion"));
        self
    }

    pub fn consistent(&self) -> bool {
        match (self.lower, self.upper) {
            (Some(l), Some(u)) => l <= u,
            _ => true,
        }
    }
}

const CITE_LOWER: &str = "Rouquier-dimension lower bound ⌊n/ℓ⌋ + 1";
const CITE_UPPER_A: &str = "induced generator from the maximal ℓ-parabolic, upper bound 2⌊n/ℓ⌋";
const CITE_UPPER_G: &str = "induced generator from a Sylow p-subgroup, upper bound 2⌊n/p⌋";
const CITE_CLASS: &str = "representation type of type-A Hecke algebras";

fn check_ell(ell: Option<usize>) -> Result<()> {
    match ell {
        Some(l) if l < 2 => Err(Error::InvalidParameter(format!("ℓ must be at least 2, got {l}"))),
        _ => Ok(()),
    }
}

/// Semisimple iff `ℓ = ∞` or `m = 0`; finite iff `m = 1`; tame iff `ℓ = 2`
/// and `n ∈ {4, 5}`; wild otherwise.
pub fn classify_type_a(n: usize, ell: Option<usize>) -> RepType {
    match ell {
        None => RepType::Semisimple,
        Some(l) => match n / l {
            0 => RepType::Semisimple,
            1 => RepType::Finite,
            _ if l == 2 && (n == 4 || n == 5) => RepType::Tame,
            _ => RepType::Wild,
        },
    }
}

/// `(m + 1, 2m)` outside the semisimple case.
pub fn bounds_type_a(n: usize, ell: Option<usize>) -> Result<BoundReport> {
    check_ell(ell)?;
    let mut r = BoundReport::new(Family::HeckeA, n, ell);
    let class = classify_type_a(n, ell);
    if class == RepType::Semisimple {
        return Ok(r.semisimple());
    }
    let m = r.m;
    r.lower = Some(m + 1);
    r.upper = Some(2 * m);
    r.class = Some(class);
    r.citations.push(cite("lower bound", CITE_LOWER));
    r.citations.push(cite("upper bound", CITE_UPPER_A));
    r.citations.push(cite("representation type", CITE_CLASS));
    match class {
        RepType::Finite => {
            r.known_exact = Some(2);
            r.citations.push(cite("exact value 2", "finite type has representation dimension 2"));
        }
        RepType::Tame => {
            r.known_exact = Some(3);
            r.citations.push(cite("exact value 3", "tame type-A Hecke algebras have representation dimension 3"));
        }
        _ => {}
    }
    Ok(r)
}

/// `kS_n` over a field of characteristic `p` with `n < p²`.
pub fn bounds_group(n: usize, p: usize) -> Result<BoundReport> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrimeModulus(p as u64));
    }
    if n >= p * p {
        return Err(Error::RankTooLarge { n, p_squared: p * p });
    }
    let mut r = BoundReport::new(Family::SymmetricGroup, n, Some(p));
    if n < p {
        return Ok(r.semisimple());
    }
    let m = r.m;
    r.lower = Some(m + 1);
    r.upper = Some(2 * m);
    r.citations.push(cite("lower bound", CITE_LOWER));
    r.citations.push(cite("upper bound", CITE_UPPER_G));
    if m == 1 {
        r.class = Some(RepType::Finite);
        r.known_exact = Some(2);
        r.citations.push(cite("exact value 2", "cyclic Sylow subgroup gives finite type"));
    }
    Ok(r)
}

/// `f_n(Q, q) = ∏_{i=1−n}^{n−1} (Q + q^i)`.
pub fn f_poly(n: usize, big_q: &Scalar, q: &Scalar) -> Result<Scalar> {
    let f = q.field();
    if big_q.field() != f {
        return Err(Error::FieldMismatch(big_q.field().to_string(), f.to_string()));
    }
    let n = n as i64;
    let mut acc = f.one();
    for i in (1 - n)..n {
        acc = &acc * &(big_q + &q.pow(i)?);
    }
    Ok(acc)
}

/// `g_n(q) = 2 ∏_{i=1}^{n−1} (1 + q^i)`.
pub fn g_poly(n: usize, q: &Scalar) -> Result<Scalar> {
    let f = q.field();
    let mut acc = f.from_int(2);
    for i in 1..n as i64 {
        acc = &acc * &(&f.one() + &q.pow(i)?);
    }
    Ok(acc)
}

fn lower_only(r: &mut BoundReport) -> bool {
    if r.m == 0 {
        r.upper_absent_reason = Some("⌊n/ℓ⌋ = 0".into());
        r.conditions.push(("m".into(), "0".into()));
        return false;
    }
    r.lower = Some(r.m + 1);
    r.citations.push(cite("lower bound", CITE_LOWER));
    true
}

/// Type `B_n` with parameters `(Q, q)`, `q` a primitive ℓ-th root of unity in
/// the field of `Q`; the upper bound needs `f_n(Q, q) ≠ 0`.
pub fn bounds_type_b(n: usize, ell: usize, big_q: &Scalar) -> Result<BoundReport> {
    check_ell(Some(ell))?;
    let (f, q) = hecke_root_of_unity(ell)?;
    if big_q.field() != f {
        return Err(Error::FieldMismatch(big_q.field().to_string(), f.to_string()));
    }
    let mut r = BoundReport::new(Family::HeckeB, n, Some(ell));
    let fv = f_poly(n, big_q, &q)?;
    r.conditions.push(("Q".into(), big_q.to_text()));
    r.conditions.push(("f_n(Q,q)".into(), fv.to_text()));
    if !lower_only(&mut r) {
        return Ok(r);
    }
    if fv.is_zero() {
        r.upper_absent_reason = Some("f_n(Q,q) = 0".into());
    } else {
        r.upper = Some(2 * r.m);
        r.citations.push(cite("upper bound", "Morita reduction to type A when f_n(Q,q) ≠ 0"));
    }
    Ok(r)
}

/// Type `D_n`; the upper bound needs `n` odd and `g_n(q) ≠ 0`.
pub fn bounds_type_d(n: usize, ell: usize) -> Result<BoundReport> {
    check_ell(Some(ell))?;
    let (_, q) = hecke_root_of_unity(ell)?;
    let mut r = BoundReport::new(Family::HeckeD, n, Some(ell));
    let gv = g_poly(n, &q)?;
    r.conditions.push(("g_n(q)".into(), gv.to_text()));
    r.conditions.push(("n parity".into(), if n % 2 == 1 { "odd" } else { "even" }.into()));
    if !lower_only(&mut r) {
        return Ok(r);
    }
    if n.is_multiple_of(2) {
        r.upper_absent_reason = Some("n even".into());
    } else if gv.is_zero() {
        r.upper_absent_reason = Some("g_n(q) = 0".into());
    } else {
        r.upper = Some(2 * r.m);
        r.citations.push(cite("upper bound", "Morita reduction to type A for odd n when g_n(q) ≠ 0"));
    }
    Ok(r)
}

/// Ariki–Koike algebras: lower bound only.
pub fn bounds_ariki_koike(n: usize, ell: usize, params: &[Scalar]) -> Result<BoundReport> {
    check_ell(Some(ell))?;
    if params.is_empty() {
        return Err(Error::InvalidParameter("at least one cyclotomic parameter is required".into()));
    }
    let mut r = BoundReport::new(Family::ArikiKoike, n, Some(ell));
    r.conditions.push(("parameters".into(), params.iter().map(Scalar::to_text).collect::<Vec<_>>().join(", ")));
    if lower_only(&mut r) {
        r.upper_absent_reason = Some("no upper bound is known for this family".into());
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoritaType {
    B,
    D,
}

/// Index pairs `(j, n − j)` of the factors `H(A_{j−1}) ⊗ H(A_{n−j−1})`.
pub fn morita_factors(t: MoritaType, n: usize) -> Result<Vec<(usize, usize)>> {
    let start = match t {
        MoritaType::B => 0,
        MoritaType::D if n % 2 == 1 => n.div_ceil(2),
        MoritaType::D => return Err(Error::EvenRankUnsupported(n)),
    };
    Ok((start..=n).map(|j| (j, n - j)).collect())
}

/// `(m − 1, m + 1)`: a lower bound on the dimension of the stable module
/// category and the resulting lower bound on the representation dimension.
pub fn rouquier_chain(n: usize, ell: usize) -> Result<(usize, usize)> {
    check_ell(Some(ell))?;
    let m = n / ell;
    if m == 0 {
        return Err(Error::InvalidParameter(format!("⌊n/ℓ⌋ = 0 for n = {n}, ℓ = {ell}")));
    }
    Ok((m - 1, m + 1))
}
