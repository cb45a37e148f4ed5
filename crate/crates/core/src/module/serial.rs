//! Indecomposable modules of a serial (Nakayama) algebra.
//!
//! When every left and right projective indecomposable is uniserial, the
//! indecomposables are exactly the quotients `P_c / J^j P_c`, `1 ≤ j ≤ L(P_c)`,
//! and two of them are isomorphic only if `c` and `j` agree.

use std::sync::Arc;

use super::cover::radical_chain;
use super::{pim_module, quotient_module, Representation};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::{ScalarMatrix, Subspace};

#[derive(Clone, Debug)]
pub struct SerialData {
    pub modules: Vec<Representation>,
    /// `(class of the top, Loewy length)` per module.
    pub kinds: Vec<(usize, usize)>,
    /// Loewy length of the projective cover of each simple.
    pub loewy_lengths: Vec<usize>,
}

fn rank_of_images(ops: &ScalarMatrix, s: &Subspace) -> usize {
    Subspace::spanned_by(s.field(), s.ambient(), &s.basis().iter().map(|v| ops.mul_vec(v)).collect::<Vec<_>>()).dim()
}

/// Number of simple composition factors in `S_i / S_{i+1}` counted through
/// `dim e_c S`, valid because `dim e_c T = 1` for the simple `T` of class `c`.
fn layer_lengths(chain: &[Subspace], idem_ops: &[ScalarMatrix]) -> Vec<usize> {
    chain
        .windows(2)
        .map(|w| idem_ops.iter().map(|e| rank_of_images(e, &w[0]) - rank_of_images(e, &w[1])).sum())
        .collect()
}

/// The right radical chain `eA ⊇ eAJ ⊇ ⋯` inside the regular representation.
fn right_chain(a: &Algebra, e: &[crate::field::Scalar], radical: &[Vec<crate::field::Scalar>]) -> Vec<Subspace> {
    let f = a.field();
    let top: Vec<_> = (0..a.dim()).map(|k| a.mul(e, &a.basis_element(k))).collect();
    let mut chain = vec![Subspace::spanned_by(f, a.dim(), &top)];
    while let Some(cur) = chain.last().filter(|c| c.dim() > 0) {
        let mut next = Subspace::new(f, a.dim());
        for v in cur.basis() {
            for r in radical {
                next.insert(&a.mul(v, r));
            }
        }
        chain.push(next);
    }
    chain
}

/// All indecomposable modules, or `SerialityError` when some projective
/// indecomposable (left or right) is not uniserial.
pub fn serial_indecomposables(a: &Arc<Algebra>) -> Result<SerialData> {
    let w = a.wedderburn()?;
    let reps = w.class_representatives();
    let mut modules = Vec::new();
    let mut kinds = Vec::new();
    let mut loewy_lengths = Vec::new();
    for (c, &t) in reps.iter().enumerate() {
        let (p, _) = pim_module(a, t)?;
        let chain = radical_chain(&p)?;
        let idem_ops: Vec<ScalarMatrix> = reps.iter().map(|&s| p.act(&w.idempotents[s])).collect();
        if layer_lengths(&chain, &idem_ops).iter().any(|&l| l != 1) {
            return Err(Error::SerialityError(format!("left projective P{c} is not uniserial")));
        }
        // right side: layers of e_t A measured by right multiplication with e_s
        let rchain = right_chain(a, &w.idempotents[t], &w.radical);
        let right_ops: Vec<ScalarMatrix> = reps.iter().map(|&s| a.right_mul_matrix(&w.idempotents[s])).collect();
        if layer_lengths(&rchain, &right_ops).iter().any(|&l| l != 1) {
            return Err(Error::SerialityError(format!("right projective e{c}A is not uniserial")));
        }
        let len = chain.len() - 1;
        loewy_lengths.push(len);
        for (j, sub) in chain.iter().enumerate().skip(1) {
            let (q, _) = quotient_module(&p, sub)?;
            modules.push(q.with_label(format!("P{c}/J^{j}")));
            kinds.push((c, j));
        }
    }
    Ok(SerialData { modules, kinds, loewy_lengths })
}
