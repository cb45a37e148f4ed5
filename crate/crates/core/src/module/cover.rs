//! Radical layers, projective covers and the homological invariants built
//! from them. All of these need the Wedderburn data of the algebra, so they
//! are meant for algebras small enough to split directly.

use std::sync::Arc;

use super::{direct_sum, hom_space, quotient_module, submodule, zero_module, Representation};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::fitting::matrix_span;
use crate::matrix::{vecops, ScalarMatrix, Subspace};

fn radical_actions(m: &Representation) -> Result<Vec<ScalarMatrix>> {
    let w = m.algebra().wedderburn()?;
    Ok(w.radical.iter().map(|r| m.act(r)).collect())
}

fn apply_all(
    field: crate::field::FieldDescriptor,
    dim: usize,
    ops: &[ScalarMatrix],
    vs: &[Vec<crate::field::Scalar>],
) -> Subspace {
    let mut s = Subspace::new(field, dim);
    for op in ops {
        for v in vs {
            s.insert(&op.mul_vec(v));
        }
    }
    s
}

/// `J·M` for the Jacobson radical `J`.
pub fn radical_submodule(m: &Representation) -> Result<Subspace> {
    let ops = radical_actions(m)?;
    let units: Vec<Vec<_>> = (0..m.dim()).map(|i| vecops::unit(m.field(), m.dim(), i)).collect();
    Ok(apply_all(m.field(), m.dim(), &ops, &units))
}

/// `M ⊇ JM ⊇ J²M ⊇ ⋯ ⊇ 0`, ending with the zero subspace.
pub(crate) fn radical_chain(m: &Representation) -> Result<Vec<Subspace>> {
    let ops = radical_actions(m)?;
    let units: Vec<Vec<_>> = (0..m.dim()).map(|i| vecops::unit(m.field(), m.dim(), i)).collect();
    let mut chain = vec![Subspace::spanned_by(m.field(), m.dim(), &units)];
    while let Some(cur) = chain.last().filter(|c| c.dim() > 0) {
        let next = apply_all(m.field(), m.dim(), &ops, cur.basis());
        if next.dim() == cur.dim() {
            return Err(Error::AlgorithmFailure("radical powers do not terminate".into()));
        }
        chain.push(next);
    }
    Ok(chain)
}

/// `[dim M, dim JM, dim J²M, …, 0]`.
pub fn radical_series(m: &Representation) -> Result<Vec<usize>> {
    Ok(radical_chain(m)?.iter().map(Subspace::dim).collect())
}

/// Multiplicity of each simple module (in class order) in `M / JM`.
pub fn top_multiplicities(m: &Representation) -> Result<Vec<usize>> {
    let w = m.algebra().wedderburn()?;
    let jm = radical_submodule(m)?;
    Ok(w.class_representatives()
        .into_iter()
        .map(|t| {
            let e = m.act(&w.idempotents[t]);
            let em = e.rank();
            let ejm = apply_all(m.field(), m.dim(), &[e], jm.basis()).dim();
            em - ejm
        })
        .collect())
}

/// `A·e_t` as a module, with its inclusion into the regular module.
pub fn pim_module(a: &Arc<Algebra>, t: usize) -> Result<(Representation, ScalarMatrix)> {
    let w = a.wedderburn()?;
    let u = w.pims.get(t).ok_or_else(|| Error::InvalidParameter(format!("no idempotent {t}")))?;
    let actions = a.generators().iter().map(|g| u.projection.mul(&a.left_mul_matrix(g)).mul(&u.inclusion)).collect();
    let m = Representation::from_trusted(
        a.clone(),
        u.dim(),
        actions,
        format!("P{}", w.pim_class[t]),
        super::Origin::Generic,
    );
    Ok((m, u.inclusion.clone()))
}

/// The simple modules in class order, as tops of the class representatives.
pub fn simple_modules(a: &Arc<Algebra>) -> Result<Vec<Representation>> {
    let w = a.wedderburn()?;
    w.class_representatives()
        .into_iter()
        .enumerate()
        .map(|(c, t)| {
            let (p, _) = pim_module(a, t)?;
            let jp = radical_submodule(&p)?;
            Ok(quotient_module(&p, &jp)?.0.with_label(format!("S{c}")))
        })
        .collect()
}

/// `P(M) → M → 0` with kernel `Ω M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub cover: Representation,
    /// `dim M × dim P`.
    pub map: ScalarMatrix,
    pub kernel: Representation,
    /// `dim P × dim ΩM`.
    pub kernel_inclusion: ScalarMatrix,
    /// Idempotent index of each indecomposable summand of the cover.
    pub summands: Vec<usize>,
}

/// The minimal projective cover: one copy of `A e_c` per vector of `e_c M`
/// that is independent modulo `JM`.
pub fn projective_cover(m: &Representation) -> Result<ProjectiveCover> {
    let a = m.algebra().clone();
    let f = m.field();
    let w = a.wedderburn()?;
    if m.dim() == 0 {
        let z = zero_module(&a);
        return Ok(ProjectiveCover {
            cover: z.clone(),
            map: ScalarMatrix::zeros(f, 0, 0),
            kernel: z,
            kernel_inclusion: ScalarMatrix::zeros(f, 0, 0),
            summands: Vec::new(),
        });
    }
    let mut span = radical_submodule(m)?;
    let mut pims = Vec::new();
    let mut cols: Vec<Vec<_>> = Vec::new();
    let mut summands = Vec::new();
    for t in w.class_representatives() {
        let e = m.act(&w.idempotents[t]);
        let (p, incl) = pim_module(&a, t)?;
        for v in e.columns() {
            if !span.insert(&v) {
                continue;
            }
            // a·e_t ↦ a·v is well defined because v = e_t v
            for u in incl.columns() {
                cols.push(m.apply(&u, &v));
            }
            pims.push(p.clone());
            summands.push(t);
        }
    }
    let refs: Vec<&Representation> = pims.iter().collect();
    let cover = direct_sum(&refs)?.with_label(format!("P({})", m.label()));
    let map = ScalarMatrix::from_cols(f, m.dim(), &cols);
    if map.rank() != m.dim() {
        return Err(Error::AlgorithmFailure(format!("cover of {} is not surjective", m.label())));
    }
    let ker = Subspace::spanned_by(f, cover.dim(), &map.kernel());
    let (kernel, kernel_inclusion) = submodule(&cover, &ker)?;
    Ok(ProjectiveCover {
        cover,
        map,
        kernel: kernel.with_label(format!("Ω({})", m.label())),
        kernel_inclusion,
        summands,
    })
}

pub fn syzygy(m: &Representation) -> Result<Representation> {
    Ok(projective_cover(m)?.kernel)
}

/// `dim Ext^i(M, N)` as the cokernel of `Hom(P_{i−1}, N) → Hom(Ω^i M, N)`
/// along a minimal projective resolution. Fails with `CapExceeded` when
/// `i > cap`.
pub fn ext_group(m: &Representation, n: &Representation, i: usize, cap: usize) -> Result<usize> {
    if i > cap {
        return Err(Error::CapExceeded(format!("Ext degree {i} exceeds resolution cap {cap}")));
    }
    if i == 0 {
        return Ok(hom_space(m, n)?.len());
    }
    let mut cur = m.clone();
    for step in 1..=i {
        let pc = projective_cover(&cur)?;
        if pc.kernel.dim() == 0 {
            return Ok(0);
        }
        if step == i {
            let on_omega = hom_space(&pc.kernel, n)?;
            let on_cover = hom_space(&pc.cover, n)?;
            let restricted: Vec<ScalarMatrix> = on_cover.iter().map(|h| h.mul(&pc.kernel_inclusion)).collect();
            let image = matrix_span(n.field(), n.dim(), pc.kernel.dim(), &restricted).len();
            return Ok(on_omega.len() - image);
        }
        cur = pc.kernel;
    }
    unreachable!("loop returns at step i")
}

/// `dim Hom(M, N)` modulo maps factoring through a projective module, which
/// are exactly those factoring through the cover of `N`.
pub fn stable_hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let all = hom_space(m, n)?;
    let pc = projective_cover(n)?;
    let through = hom_space(m, &pc.cover)?;
    let composed: Vec<ScalarMatrix> = through.iter().map(|h| pc.map.mul(h)).collect();
    Ok(all.len() - matrix_span(n.field(), n.dim(), m.dim(), &composed).len())
}

/// Length of the minimal projective resolution, or `CapExceeded`.
pub fn projective_dimension(m: &Representation, cap: usize) -> Result<usize> {
    let mut cur = m.clone();
    for d in 0..=cap {
        let pc = projective_cover(&cur)?;
        if pc.kernel.dim() == 0 {
            return Ok(d);
        }
        cur = pc.kernel;
    }
    Err(Error::CapExceeded(format!("projective dimension of {} exceeds {cap}", m.label())))
}

/// The largest projective dimension of a simple module.
pub fn global_dimension(a: &Arc<Algebra>, cap: usize) -> Result<usize> {
    let mut best = 0;
    for s in simple_modules(a)? {
        best = best.max(projective_dimension(&s, cap)?);
    }
    Ok(best)
}
