//! `Hom_A(M, N)` as a basis of `dim N × dim M` matrices.
//!
//! Generic modules use a spin of `M`: a homomorphism is fixed by its values
//! on module generators of `M`, and every relation met while spinning gives
//! linear constraints on those values. Regular and induced sources use the
//! isomorphisms `Hom(A, N) ≅ N` and `Hom_Λ(Λ ⊗_Γ M, N) ≅ Hom_Γ(M, N)`.

use std::sync::Arc;

use super::{induce, same_algebra, Origin, Representation};
use crate::algebra::SubalgebraEmbedding;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{vecops, ScalarMatrix, Subspace};

/// A verified module homomorphism `M → N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleHom {
    matrix: ScalarMatrix,
}

impl ModuleHom {
    pub fn new(m: &Representation, n: &Representation, matrix: ScalarMatrix) -> Result<Self> {
        if matrix.rows() != n.dim() || matrix.cols() != m.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                n.dim(),
                m.dim()
            )));
        }
        if !is_homomorphism(m, n, &matrix) {
            return Err(Error::LinearityFailure(format!("{} → {}", m.label(), n.label())));
        }
        Ok(ModuleHom { matrix })
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// `ρ_N(g) f = f ρ_M(g)` for every generator.
pub fn is_homomorphism(m: &Representation, n: &Representation, f: &ScalarMatrix) -> bool {
    f.rows() == n.dim()
        && f.cols() == m.dim()
        && m.actions().iter().zip(n.actions()).all(|(am, an)| an.mul(f) == f.mul(am))
}

/// A basis of `Hom_A(M, N)`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<ScalarMatrix>> {
    same_algebra(m, n)?;
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    match m.origin() {
        Origin::Regular => Ok(hom_from_regular(m, n)),
        Origin::Induced { emb, base } => hom_from_induced(emb, base, n),
        Origin::Generic => Ok(spin_hom(m, n)),
    }
}

/// `f ↦ (b_k ↦ ρ_N(b_k) f(1))`; one basis map per unit vector of `N`.
fn hom_from_regular(m: &Representation, n: &Representation) -> Vec<ScalarMatrix> {
    let a = m.algebra();
    let f = m.field();
    // column k of F_i is ρ_N(b_k)·e_i
    let actions: Vec<&ScalarMatrix> = (0..a.dim()).map(|k| n.basis_action(k)).collect();
    (0..n.dim())
        .map(|i| {
            let mut out = ScalarMatrix::zeros(f, n.dim(), a.dim());
            for (k, act) in actions.iter().enumerate() {
                for r in 0..n.dim() {
                    let c = act.get(r, i);
                    if !c.is_zero() {
                        out.set(r, k, c.clone());
                    }
                }
            }
            out
        })
        .collect()
}

/// `Hom_Λ(Λ ⊗_Γ M, N)` from `Hom_Γ(M, res N)`: `F(a_j ⊗ m) = ρ_N(a_j) f(m)`.
pub fn hom_from_induced(
    emb: &Arc<SubalgebraEmbedding>,
    base: &Representation,
    n: &Representation,
) -> Result<Vec<ScalarMatrix>> {
    let res = induce::restrict(n, emb)?;
    let small = hom_space(base, &res)?;
    let fld = n.field();
    let dm = base.dim();
    let r = emb.rank();
    let a_actions: Vec<ScalarMatrix> = emb.free_basis().iter().map(|a| n.act(a)).collect();
    Ok(small
        .iter()
        .map(|f| {
            let mut out = ScalarMatrix::zeros(fld, n.dim(), r * dm);
            for (j, aj) in a_actions.iter().enumerate() {
                let block = aj.mul(f);
                for row in 0..n.dim() {
                    for k in 0..dm {
                        let c = block.get(row, k);
                        if !c.is_zero() {
                            out.set(row, j * dm + k, c.clone());
                        }
                    }
                }
            }
            out
        })
        .collect())
}

struct Spin {
    /// Spun vectors in order; they form a basis of `M`.
    vecs: Vec<Vec<Scalar>>,
    /// `None` for a seed, `Some((parent, g))` for `ρ(g)·vecs[parent]`.
    source: Vec<Option<(usize, usize)>>,
    /// `ρ(g)·vecs[t] = Σ c_u vecs[u]` with the coefficients over earlier vectors.
    relations: Vec<(usize, usize, Vec<Scalar>)>,
}

fn spin(m: &Representation) -> Spin {
    let f = m.field();
    let d = m.dim();
    let mut span = Subspace::tracking(f, d);
    let mut vecs: Vec<Vec<Scalar>> = Vec::new();
    let mut source = Vec::new();
    let mut relations = Vec::new();
    let mut q = 0;
    let mut next_unit = 0;
    while vecs.len() < d || q < vecs.len() {
        if q == vecs.len() {
            while span.contains(&vecops::unit(f, d, next_unit)) {
                next_unit += 1;
            }
            let e = vecops::unit(f, d, next_unit);
            span.insert(&e);
            vecs.push(e);
            source.push(None);
        }
        for (g, a) in m.actions().iter().enumerate() {
            let w = a.mul_vec(&vecs[q]);
            match span.generator_coords(&w) {
                Some(c) => relations.push((q, g, c)),
                None => {
                    span.insert(&w);
                    vecs.push(w);
                    source.push(Some((q, g)));
                }
            }
        }
        q += 1;
    }
    Spin { vecs, source, relations }
}

/// Kernel of the stacked constraint rows, as a `K × K'` matrix.
fn constraint_kernel(field: crate::field::FieldDescriptor, k: usize, rows: &[Vec<Scalar>]) -> ScalarMatrix {
    if rows.is_empty() {
        return ScalarMatrix::identity(field, k);
    }
    let ker = ScalarMatrix::from_rows(field, k, rows).kernel();
    ScalarMatrix::from_cols(field, k, &ker)
}

fn spin_hom(m: &Representation, n: &Representation) -> Vec<ScalarMatrix> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let sp = spin(m);
    let seeds = sp.source.iter().filter(|s| s.is_none()).count();
    let mut k = seeds * dn;
    // images[t] = F(vecs[t]) as a dn × k matrix of linear forms in the parameters
    let mut images: Vec<ScalarMatrix> = Vec::with_capacity(dm);
    let mut seed_no = 0;
    let mut rel_iter = sp.relations.iter().peekable();
    let mut pending: Vec<Vec<Scalar>> = Vec::new();
    let cut = |images: &mut Vec<ScalarMatrix>, pending: &mut Vec<Vec<Scalar>>, k: &mut usize| {
        let basis = constraint_kernel(f, *k, pending);
        for im in images.iter_mut() {
            *im = im.mul(&basis);
        }
        *k = basis.cols();
        pending.clear();
    };
    for t in 0..dm {
        let img = match sp.source[t] {
            None => {
                let mut b = ScalarMatrix::zeros(f, dn, k);
                // seeds keep their original parameter block until the first cut
                for i in 0..dn {
                    b.set(i, seed_no * dn + i, f.one());
                }
                seed_no += 1;
                b
            }
            Some((parent, g)) => n.generator_action(g).mul(&images[parent]),
        };
        images.push(img);
        // relations whose right side only involves vectors up to t
        while let Some((src, g, coeffs)) = rel_iter.peek() {
            if coeffs.len() > images.len() || *src > t {
                break;
            }
            let mut lhs = n.generator_action(*g).mul(&images[*src]);
            for (u, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    lhs.axpy(&-c, &images[u]);
                }
            }
            for i in 0..dn {
                if lhs.row(i).iter().any(|x| !x.is_zero()) {
                    pending.push(lhs.row(i).to_vec());
                }
            }
            rel_iter.next();
        }
        if pending.len() >= 2 * k.max(1) && seed_no == seeds {
            cut(&mut images, &mut pending, &mut k);
            if k == 0 {
                return Vec::new();
            }
        }
    }
    debug_assert!(rel_iter.peek().is_none());
    if seed_no != seeds {
        // unreachable: all seeds are created before the loop ends
        return Vec::new();
    }
    cut(&mut images, &mut pending, &mut k);
    if k == 0 {
        return Vec::new();
    }
    let vinv = ScalarMatrix::from_cols(f, dm, &sp.vecs).inverse().expect("spun vectors form a basis");
    (0..k)
        .map(|p| {
            let cols: Vec<Vec<Scalar>> = images.iter().map(|im| im.col(p)).collect();
            ScalarMatrix::from_cols(f, dn, &cols).mul(&vinv)
        })
        .collect()
}
