//! Jacobson radical and Wedderburn data.

use std::sync::Arc;

use super::Algebra;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::fitting::{decompose_by_endomorphisms, LocalSummand};
use crate::matrix::{vecops, ScalarMatrix, Subspace};

/// Above this dimension the p-power trace method is replaced by the Peirce
/// computation, whose cost does not grow with the exponent `p^i`.
const RONYAI_MAX_DIM: usize = 32;

/// Seed for the random elements used when splitting the regular module.
const WEDDERBURN_SEED: u64 = 0x5eed;

/// Radical, blocks and a complete set of primitive orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct WedderburnData {
    pub radical: Vec<Vec<Scalar>>,
    /// `d_i` per isomorphism class of simple modules.
    pub block_dims: Vec<usize>,
    pub idempotents: Vec<Vec<Scalar>>,
    /// Class of the simple top of `A·e_t`.
    pub pim_class: Vec<usize>,
    /// `A·e_t` as summands of the regular module.
    pub pims: Vec<LocalSummand>,
}

impl WedderburnData {
    pub fn num_simples(&self) -> usize {
        self.block_dims.len()
    }

    /// The first idempotent of each class.
    pub fn class_representatives(&self) -> Vec<usize> {
        (0..self.num_simples())
            .map(|c| self.pim_class.iter().position(|&x| x == c).expect("class is inhabited"))
            .collect()
    }
}

/// Trace of left multiplication by each basis element.
fn regular_traces(a: &Algebra) -> Vec<Scalar> {
    (0..a.dim())
        .map(|k| {
            let mut t = a.field().zero();
            for j in 0..a.dim() {
                for (x, c) in a.basis_product(k, j) {
                    if *x == j {
                        t = &t + c;
                    }
                }
            }
            t
        })
        .collect()
}

/// `{x : Tr(L_{xy}) = 0 for all y}`; the radical in characteristic zero.
pub fn radical_dickson(a: &Algebra) -> Vec<Vec<Scalar>> {
    let d = a.dim();
    let f = a.field();
    let t = regular_traces(a);
    // column i of gt holds Tr(L_{b_i b_j}) over j
    let mut gt = ScalarMatrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut g = f.zero();
            for (k, c) in a.basis_product(i, j) {
                g = &g + &(c * &t[*k]);
            }
            gt.set(j, i, g);
        }
    }
    Subspace::spanned_by(f, d, &gt.kernel()).basis().to_vec()
}

fn lift(m: &ScalarMatrix) -> Vec<u64> {
    m.data().iter().map(|x| x.residue().expect("prime field entry")).collect()
}

fn mat_mul_mod(a: &[u64], b: &[u64], n: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % m;
            }
        }
    }
    out
}

/// `(Tr(L̃^{p^i}) mod p^{i+1}) / p^i` for an integer lift `L̃` of `L_z`.
fn ronyai_g(a: &Algebra, z: &[Scalar], p: u64, i: u32) -> Result<u64> {
    let n = a.dim();
    let m = p.pow(i + 1);
    let mut base = lift(&a.left_mul_matrix(z));
    let mut acc: Option<Vec<u64>> = None;
    let mut e = p.pow(i);
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(x) => mat_mul_mod(&x, &base, n, m),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_mod(&base, &base, n, m);
        }
    }
    let pw = acc.expect("exponent is positive");
    let tr = (0..n).fold(0u64, |s, k| (s + pw[k * n + k]) % m);
    let pi = p.pow(i);
    if tr % pi != 0 {
        return Err(Error::AlgorithmFailure(format!("trace of a p^{i}-th power is not divisible by p^{i}")));
    }
    Ok((tr / pi) % p)
}

/// The radical over F_p by the iterated p-power trace criterion:
/// `I_i = {x ∈ I_{i−1} : g_i(xy) = 0 ∀y}` for `p^i ≤ dim A`.
pub fn radical_ronyai(a: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    let f = a.field();
    let FieldDescriptor::Prime(p) = f else {
        return Err(Error::InvalidParameter("the p-power trace method needs a prime field".into()));
    };
    let d = a.dim();
    let mut ideal = radical_dickson(a);
    let mut i: u32 = 1;
    while p.checked_pow(i).is_some_and(|pi| pi as usize <= d) && !ideal.is_empty() {
        let mut m = ScalarMatrix::zeros(f, d, ideal.len());
        for (s, x) in ideal.iter().enumerate() {
            for t in 0..d {
                let g = ronyai_g(a, &a.mul(x, &a.basis_element(t)), p, i)?;
                m.set(t, s, Scalar::Mod { value: g, p });
            }
        }
        let next: Vec<Vec<Scalar>> = m.kernel().iter().map(|c| vecops::combine(f, d, c, &ideal)).collect();
        ideal = Subspace::spanned_by(f, d, &next).basis().to_vec();
        i += 1;
    }
    Ok(ideal)
}

/// Checks that a subspace is a two-sided nilpotent ideal.
pub fn check_nilpotent_ideal(a: &Algebra, basis: &[Vec<Scalar>]) -> Result<()> {
    let f = a.field();
    let d = a.dim();
    let span = Subspace::spanned_by(f, d, basis);
    for r in basis {
        for k in 0..d {
            let b = a.basis_element(k);
            if !span.contains(&a.mul(&b, r)) || !span.contains(&a.mul(r, &b)) {
                return Err(Error::AlgorithmFailure("radical candidate is not a two-sided ideal".into()));
            }
        }
    }
    let mut power = span.basis().to_vec();
    for _ in 0..=d {
        if power.is_empty() {
            return Ok(());
        }
        let mut next = Subspace::new(f, d);
        for x in &power {
            for r in basis {
                next.insert(&a.mul(x, r));
            }
        }
        power = next.basis().to_vec();
    }
    Err(Error::AlgorithmFailure("radical candidate is not nilpotent".into()))
}

/// Basis of the Jacobson radical.
pub fn radical(a: &Arc<Algebra>) -> Result<Vec<Vec<Scalar>>> {
    Ok(a.wedderburn()?.radical.clone())
}

pub fn wedderburn(a: &Arc<Algebra>) -> Result<Arc<WedderburnData>> {
    a.wedderburn()
}

/// `e·A·e'` as a subspace of A.
fn corner(a: &Algebra, e: &[Scalar], e2: &[Scalar]) -> Subspace {
    let d = a.dim();
    let mut s = Subspace::new(a.field(), d);
    for k in 0..d {
        s.insert(&a.mul(&a.mul(e, &a.basis_element(k)), e2));
    }
    s
}

/// The eigenvalue map of the local ring `e_s A e_s`, as values on an
/// echelon basis.
struct CornerChi {
    space: Subspace,
    values: Vec<Scalar>,
}

impl CornerChi {
    fn new(a: &Algebra, e: &[Scalar], pim: &LocalSummand) -> Result<CornerChi> {
        let space = corner(a, e, e);
        let values =
            space.basis().iter().map(|w| pim.chi(&pim.restrict(&a.right_mul_matrix(w)))).collect::<Result<_>>()?;
        Ok(CornerChi { space, values })
    }

    fn eval(&self, w: &[Scalar]) -> Result<Scalar> {
        let c = self
            .space
            .echelon_coords(w)
            .ok_or_else(|| Error::AlgorithmFailure("element is outside the corner ring".into()))?;
        Ok(c.iter().zip(&self.values).fold(w[0].field().zero(), |acc, (x, v)| &acc + &(x * v)))
    }
}

/// The pairing matrix `χ_s(y·z)` for `y ∈ e_sAe_t`, `z ∈ e_tAe_s`.
fn pairing(a: &Algebra, chi_s: &CornerChi, st: &Subspace, ts: &Subspace) -> Result<ScalarMatrix> {
    let mut m = ScalarMatrix::zeros(a.field(), ts.dim(), st.dim());
    for (j, y) in st.basis().iter().enumerate() {
        for (i, z) in ts.basis().iter().enumerate() {
            m.set(i, j, chi_s.eval(&a.mul(y, z))?);
        }
    }
    Ok(m)
}

pub(super) fn compute_wedderburn(a: &Arc<Algebra>) -> Result<WedderburnData> {
    let f = a.field();
    let d = a.dim();
    let endos: Vec<ScalarMatrix> = (0..d).map(|k| a.right_mul_matrix(&a.basis_element(k))).collect();
    let pims = decompose_by_endomorphisms(f, d, &endos, WEDDERBURN_SEED)?;
    let idempotents: Vec<Vec<Scalar>> =
        pims.iter().map(|p| p.inclusion.mul_vec(&p.projection.mul_vec(a.unit()))).collect();
    let chis: Vec<CornerChi> =
        idempotents.iter().zip(&pims).map(|(e, p)| CornerChi::new(a, e, p)).collect::<Result<_>>()?;
    let r = pims.len();
    let corners: Vec<Vec<Subspace>> =
        (0..r).map(|s| (0..r).map(|t| corner(a, &idempotents[s], &idempotents[t])).collect()).collect();
    // isomorphism classes of the A·e_t
    let mut class_of: Vec<Option<usize>> = vec![None; r];
    let mut nclasses = 0;
    for s in 0..r {
        if class_of[s].is_some() {
            continue;
        }
        class_of[s] = Some(nclasses);
        for t in s + 1..r {
            if class_of[t].is_none() && pims[s].dim() == pims[t].dim() {
                let m = pairing(a, &chis[s], &corners[s][t], &corners[t][s])?;
                if !m.is_zero() {
                    class_of[t] = Some(nclasses);
                }
            }
        }
        nclasses += 1;
    }
    let class_of: Vec<usize> = class_of.into_iter().map(Option::unwrap).collect();
    let radical = match f {
        FieldDescriptor::Prime(_) if d <= RONYAI_MAX_DIM => radical_ronyai(a)?,
        FieldDescriptor::Prime(_) => peirce_radical(a, &chis, &corners, &class_of)?,
        _ => radical_dickson(a),
    };
    check_nilpotent_ideal(a, &radical)?;
    let mut counts = vec![0usize; nclasses];
    for &c in &class_of {
        counts[c] += 1;
    }
    let semisimple_dim: usize = counts.iter().map(|c| c * c).sum();
    if semisimple_dim != d - radical.len() {
        return Err(Error::SplitError(format!(
            "{}: block dimensions {:?} give {} but A/rad has dimension {}",
            a.name(),
            counts,
            semisimple_dim,
            d - radical.len()
        )));
    }
    // order classes by (block dimension, PIM dimension, first appearance)
    let first: Vec<usize> = (0..nclasses).map(|c| class_of.iter().position(|&x| x == c).unwrap()).collect();
    let mut order: Vec<usize> = (0..nclasses).collect();
    order.sort_by_key(|&c| (counts[c], pims[first[c]].dim(), first[c]));
    let mut rank = vec![0; nclasses];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    Ok(WedderburnData {
        radical,
        block_dims: order.iter().map(|&c| counts[c]).collect(),
        idempotents,
        pim_class: class_of.iter().map(|&c| rank[c]).collect(),
        pims,
    })
}

/// `rad A = ⊕_{s,t} e_s J e_t` where `e_s J e_t` is all of `e_s A e_t` for
/// non-isomorphic PIMs and otherwise the kernel of `y ↦ (χ_s(y z))_z`.
fn peirce_radical(
    a: &Algebra,
    chis: &[CornerChi],
    corners: &[Vec<Subspace>],
    class_of: &[usize],
) -> Result<Vec<Vec<Scalar>>> {
    let f = a.field();
    let d = a.dim();
    let r = chis.len();
    let mut out = Subspace::new(f, d);
    for s in 0..r {
        for t in 0..r {
            let st = &corners[s][t];
            if class_of[s] != class_of[t] {
                for y in st.basis() {
                    out.insert(y);
                }
                continue;
            }
            let m = pairing(a, &chis[s], st, &corners[t][s])?;
            for c in m.kernel() {
                out.insert(&vecops::combine(f, d, &c, st.basis()));
            }
        }
    }
    Ok(out.basis().to_vec())
}

/// Refines an idempotent modulo a nilpotent ideal by `e ↦ 3e² − 2e³` until
/// it is exactly idempotent.
pub fn lift_idempotent(a: &Algebra, e: &[Scalar]) -> Result<Vec<Scalar>> {
    let f = a.field();
    let mut e = e.to_vec();
    for _ in 0..=a.dim().max(1) * 2 {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = vecops::sub(&vecops::scale(&e2, &f.from_int(3)), &vecops::scale(&e3, &f.from_int(2)));
    }
    Err(Error::AlgorithmFailure("idempotent refinement did not converge".into()))
}
