//! Restriction, induction along a free subalgebra, outer tensor products and
//! transport along generator-preserving isomorphisms.

use std::sync::Arc;

use super::{Origin, Representation};
use crate::algebra::{tensor_algebra, Algebra, SubalgebraEmbedding};
use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;

/// `res^Λ_Γ N`: Γ acts through the inclusion.
pub fn restrict(n: &Representation, emb: &SubalgebraEmbedding) -> Result<Representation> {
    if !super::same_arc(n.algebra(), &emb.ambient) {
        return Err(Error::InvalidParameter(format!(
            "module is over {}, embedding ambient is {}",
            n.algebra().name(),
            emb.ambient.name()
        )));
    }
    let actions = emb.sub.generators().iter().map(|g| n.act(&emb.include(g))).collect();
    Ok(Representation::from_trusted(emb.sub.clone(), n.dim(), actions, format!("res({})", n.label()), Origin::Generic))
}

/// `Λ ⊗_Γ M` on the basis `a_j ⊗ m_k ↦ j·dim M + k`.
///
/// A generator `x` acts by the blocks `ρ_M(γ_ij)` where `x·a_j = Σ_i a_i γ_ij`.
pub fn induce(emb: &Arc<SubalgebraEmbedding>, m: &Representation) -> Result<Representation> {
    if !super::same_arc(m.algebra(), &emb.sub) {
        return Err(Error::InvalidParameter(format!(
            "module is over {}, embedding subalgebra is {}",
            m.algebra().name(),
            emb.sub.name()
        )));
    }
    let f = m.field();
    let (r, d) = (emb.rank(), m.dim());
    let mut actions = Vec::with_capacity(emb.ambient.num_generators());
    for x in emb.ambient.generators() {
        let blocks = emb.action_blocks(x);
        let mut big = ScalarMatrix::zeros(f, r * d, r * d);
        for (i, row) in blocks.iter().enumerate() {
            for (j, gamma) in row.iter().enumerate() {
                if gamma.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let blk = m.act(gamma);
                for a in 0..d {
                    for b in 0..d {
                        let c = blk.get(a, b);
                        if !c.is_zero() {
                            big.set(i * d + a, j * d + b, c.clone());
                        }
                    }
                }
            }
        }
        actions.push(big);
    }
    Ok(Representation::from_trusted(
        emb.ambient.clone(),
        r * d,
        actions,
        format!("Ind({})", m.label()),
        Origin::Induced { emb: emb.clone(), base: Arc::new(m.clone()) },
    ))
}

/// `M_1 ⊠ ⋯ ⊠ M_r` over `A_1 ⊗ ⋯ ⊗ A_r` (folded from the left), with
/// Kronecker-product actions.
pub fn outer_tensor(mods: &[&Representation]) -> Result<(Arc<Algebra>, Representation)> {
    let first = mods.first().ok_or_else(|| Error::InvalidParameter("empty tensor product".into()))?;
    let mut alg = first.algebra().clone();
    let mut acc: Representation = (*first).clone();
    for m in &mods[1..] {
        let t = Arc::new(tensor_algebra(&alg, m.algebra())?);
        let f = acc.field();
        let (da, db) = (acc.dim(), m.dim());
        let mut actions: Vec<ScalarMatrix> =
            acc.actions().iter().map(|a| a.kron(&ScalarMatrix::identity(f, db))).collect();
        actions.extend(m.actions().iter().map(|b| ScalarMatrix::identity(f, da).kron(b)));
        let label = format!("{} ⊠ {}", acc.label(), m.label());
        acc = Representation::from_trusted(t.clone(), da * db, actions, label, Origin::Generic);
        alg = t;
    }
    Ok((alg, acc))
}

/// The same generator matrices regarded over `target`, whose generators must
/// correspond to those of the module's algebra. The module axioms are
/// re-verified over `target`.
pub fn transport(m: &Representation, target: Arc<Algebra>) -> Result<Representation> {
    if target.field() != m.field() {
        return Err(Error::FieldMismatch(target.field().to_string(), m.field().to_string()));
    }
    let t = Representation::new(target, m.dim(), m.actions().to_vec(), m.label())?;
    t.verify()?;
    Ok(t)
}
