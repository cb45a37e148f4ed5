//! Mackey decomposition check for `P ⊆ S_n`, `P` a Sylow p-subgroup with
//! `n < p²`: `res_P Ind_P^{S_n} M ≅ ⊕_{PxP} Ind_{P ∩ xPx⁻¹}^P (ˣM)`, where
//! `q ∈ P ∩ xPx⁻¹` acts on `ˣM` as `x⁻¹qx` acts on `M`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{
    add_member, decompose, direct_sum, hom_space, induce, isomorphic_summands, restrict, same_arc, Origin,
    Representation,
};
use crate::algebra::{group_algebra, group_algebra_symmetric, group_subalgebra, group_subalgebra_in, AlgebraKind};
use crate::coxeter::{
    conjugate_intersection, double_cosets, enumerate_group, sylow_symmetric, CoxeterType, SignedPerm, SubgroupData,
};
use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyReport {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub double_cosets: usize,
    /// Jordan-block counts (index `s − 1` for blocks of size `s`) when `P`
    /// is cyclic; otherwise the decomposition signature flattened.
    pub lhs_type: Vec<usize>,
    pub rhs_type: Vec<usize>,
    /// Both sides have the same indecomposable summands with multiplicity.
    pub agree: bool,
    /// Every summand of the left side lies in `add M`.
    pub in_add_m: bool,
}

/// Jordan type of the generator of a cyclic p-group acting unipotently:
/// `counts[s − 1]` blocks of size `s`.
pub fn cyclic_jordan_type(m: &Representation) -> Result<Vec<usize>> {
    if m.actions().len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "{} is not over a cyclic group algebra with one generator",
            m.algebra().name()
        )));
    }
    let f = m.field();
    let d = m.dim();
    let nil = m.actions()[0].sub(&ScalarMatrix::identity(f, d));
    let mut ranks = vec![d];
    let mut pow = ScalarMatrix::identity(f, d);
    while *ranks.last().expect("nonempty") > 0 {
        pow = pow.mul(&nil);
        let r = pow.rank();
        if r == *ranks.last().expect("nonempty") {
            return Err(Error::InvalidParameter("generator does not act unipotently".into()));
        }
        ranks.push(r);
    }
    ranks.push(0);
    Ok((1..ranks.len() - 1).map(|s| ranks[s - 1] + ranks[s + 1] - 2 * ranks[s]).collect())
}

/// A subgroup with a small generating set: cyclic factors when available,
/// otherwise a greedy choice from the element list.
fn with_generators(
    label: String,
    n: usize,
    elements: &[SignedPerm],
    factors: Option<Vec<SignedPerm>>,
) -> Result<SubgroupData> {
    if let Some(gens) = factors {
        let sub = SubgroupData::generated(label.clone(), n, gens)?;
        if sub.order() == elements.len() {
            return Ok(sub);
        }
    }
    let mut gens: Vec<SignedPerm> = Vec::new();
    let mut cur = SubgroupData::generated(label.clone(), n, Vec::new())?;
    for e in elements {
        if !cur.contains(e) {
            gens.push(e.clone());
            cur = SubgroupData::generated(label.clone(), n, gens.clone())?;
        }
    }
    Ok(cur)
}

/// Whether two modules have the same indecomposable summands with
/// multiplicities.
fn same_decomposition(x: &Representation, y: &Representation) -> Result<bool> {
    if x.dim() != y.dim() {
        return Ok(false);
    }
    let dx = decompose(x, 0)?;
    let dy = decompose(y, 0)?;
    if dx.signature() != dy.signature() {
        return Ok(false);
    }
    let hxy = hom_space(x, y)?;
    let hyx = hom_space(y, x)?;
    let mut used = vec![false; dy.num_classes()];
    for (cx, &ix) in dx.class_representatives.iter().enumerate() {
        let mut hit = false;
        for (cy, &iy) in dy.class_representatives.iter().enumerate() {
            if used[cy] || dx.multiplicities[cx] != dy.multiplicities[cy] {
                continue;
            }
            if isomorphic_summands(&dx.summands[ix], &dy.summands[iy], &hxy, &hyx)? {
                used[cy] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn mackey_check(n: usize, p: usize, m: &Representation) -> Result<MackeyReport> {
    let f = m.field();
    if f.characteristic() != p as u64 {
        return Err(Error::InvalidParameter(format!("field {f} does not have characteristic {p}")));
    }
    let pdata = sylow_symmetric(n, p)?;
    let kp = m.algebra().clone();
    if !matches!(kp.kind(), AlgebraKind::Group { .. }) || !same_arc(&kp, &Arc::new(group_algebra(&pdata, f)?)) {
        return Err(Error::InvalidParameter(format!("{} is not the group algebra of {}", kp.name(), pdata.label)));
    }
    let kg = Arc::new(group_algebra_symmetric(n, f)?);
    let emb = Arc::new(group_subalgebra(kg, &pdata)?);
    let lhs = restrict(&induce(&emb, m)?, &emb)?;

    let g = enumerate_group(CoxeterType::A, n)?;
    let index: HashMap<&SignedPerm, usize> = pdata.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let cosets = double_cosets(&g.elements, &pdata, &pdata)?;
    let mut parts = Vec::with_capacity(cosets.len());
    for (k, (x, _)) in cosets.iter().enumerate() {
        let ci = conjugate_intersection(&pdata, x)?;
        let factors = ci.factors.map(|fs| fs.into_iter().map(|c| c.generator).collect());
        let q = with_generators(format!("Q{k}"), n, &ci.subgroup.elements, factors)?;
        let emb_q = Arc::new(group_subalgebra_in(kp.clone(), &pdata, &q)?);
        let xinv = x.inverse();
        let actions = q
            .generators
            .iter()
            .map(|h| {
                let c = xinv.compose(h).compose(x);
                let i = index.get(&c).ok_or_else(|| Error::AlgorithmFailure("conjugate leaves P".into()))?;
                Ok(m.basis_action(*i).clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let xm = Representation::from_trusted(emb_q.sub.clone(), m.dim(), actions, format!("{x}·M"), Origin::Generic);
        parts.push(induce(&emb_q, &xm)?.as_generic());
    }
    let refs: Vec<&Representation> = parts.iter().collect();
    let rhs = direct_sum(&refs)?;

    let (lhs_type, rhs_type, agree, in_add_m) = if pdata.generators.len() == 1 {
        let lt = cyclic_jordan_type(&lhs)?;
        let rt = cyclic_jordan_type(&rhs)?;
        let mt = cyclic_jordan_type(m)?;
        let in_add = lt.iter().enumerate().all(|(s, &c)| c == 0 || mt.get(s).is_some_and(|&x| x > 0));
        let agree = lt == rt;
        (lt, rt, agree, in_add)
    } else {
        let flat = |r: &Representation| -> Result<Vec<usize>> {
            Ok(decompose(r, 0)?.signature().into_iter().flat_map(|(a, b, c)| [a, b, c]).collect())
        };
        let agree = same_decomposition(&lhs, &rhs)?;
        (flat(&lhs)?, flat(&rhs)?, agree, add_member(&lhs, m)?.member)
    };
    Ok(MackeyReport {
        lhs_dim: lhs.dim(),
        rhs_dim: rhs.dim(),
        double_cosets: cosets.len(),
        lhs_type,
        rhs_type,
        agree: agree && lhs.dim() == rhs.dim(),
        in_add_m,
    })
}
