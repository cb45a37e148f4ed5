//! Krull–Schmidt decomposition, isomorphism of summands and membership in
//! `add M`.

use super::{hom_space, same_algebra, summand_module, Representation};
use crate::error::{Error, Result};
use crate::fitting::{decompose_by_endomorphisms, isomorphic_by_pairing, matrix_span, LocalSummand};
use crate::matrix::ScalarMatrix;

/// Seed used when the caller does not choose one.
pub const DEFAULT_SEED: u64 = 0;

/// Above this many scalar operations `add_member` compares summands instead
/// of solving for the identity in the trace ideal.
const TRACE_BUDGET: usize = 20_000_000;

/// One indecomposable summand `U ⊆ X`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    /// `dim X × dim U`.
    pub inclusion: ScalarMatrix,
    /// `dim U × dim X` with `projection · inclusion = 1`.
    pub projection: ScalarMatrix,
    /// Index into [`DecompositionReport::multiplicities`].
    pub class: usize,
    pub(crate) local: LocalSummand,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn end_dim(&self) -> usize {
        self.local.end_dim()
    }

    pub fn local(&self) -> &LocalSummand {
        &self.local
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    /// Sorted by `(dim, dim End)`, isomorphic summands grouped.
    pub summands: Vec<Summand>,
    /// Summand index of the first member of each class.
    pub class_representatives: Vec<usize>,
    pub multiplicities: Vec<usize>,
    /// `[ι_1 | ⋯ | ι_r]`; conjugating the action by it gives the block-diagonal sum.
    pub witness: ScalarMatrix,
}

impl DecompositionReport {
    pub fn num_classes(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    /// `(dim, dim End, multiplicity)` per class; independent of the seed.
    pub fn signature(&self) -> Vec<(usize, usize, usize)> {
        let mut sig: Vec<_> = self
            .class_representatives
            .iter()
            .zip(&self.multiplicities)
            .map(|(&i, &m)| (self.summands[i].dim(), self.summands[i].end_dim(), m))
            .collect();
        sig.sort();
        sig
    }

    /// Checks that the witness is invertible and splits the action into the
    /// summand actions.
    pub fn verify(&self, x: &Representation) -> Result<()> {
        let inv =
            self.witness.inverse().map_err(|_| Error::AlgorithmFailure("decomposition witness is singular".into()))?;
        for (g, a) in x.actions().iter().enumerate() {
            let conj = inv.mul(a).mul(&self.witness);
            let mut expected = ScalarMatrix::zeros(x.field(), 0, 0);
            for s in &self.summands {
                expected = expected.direct_sum(s.module.generator_action(g));
            }
            if conj != expected {
                return Err(Error::AlgorithmFailure(format!("witness does not split generator {g}")));
            }
        }
        Ok(())
    }
}

/// Decomposition with `End(M)` computed by [`hom_space`].
pub fn decompose(m: &Representation, seed: u64) -> Result<DecompositionReport> {
    let endos = hom_space(m, m)?;
    decompose_with_endomorphisms(m, &endos, seed)
}

fn restricted(a: &LocalSummand, b: &LocalSummand, maps: &[ScalarMatrix]) -> Vec<ScalarMatrix> {
    maps.iter().map(|f| b.projection.mul(f).mul(&a.inclusion)).collect()
}

/// Decomposition given a spanning set of `End(M)`.
pub fn decompose_with_endomorphisms(
    m: &Representation,
    endos: &[ScalarMatrix],
    seed: u64,
) -> Result<DecompositionReport> {
    let f = m.field();
    if m.dim() == 0 {
        return Ok(DecompositionReport {
            summands: Vec::new(),
            class_representatives: Vec::new(),
            multiplicities: Vec::new(),
            witness: ScalarMatrix::zeros(f, 0, 0),
        });
    }
    let mut parts = decompose_by_endomorphisms(f, m.dim(), endos, seed)?;
    parts.sort_by_key(|p| (p.dim(), p.end_dim()));
    // class of each part, in order of first appearance
    let mut class_of: Vec<usize> = Vec::with_capacity(parts.len());
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..parts.len() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            let (a, b) = (&parts[r], &parts[i]);
            if (a.dim(), a.end_dim()) != (b.dim(), b.end_dim()) {
                continue;
            }
            if isomorphic_by_pairing(a, &restricted(a, b, endos), &restricted(b, a, endos))? {
                found = Some(c);
                break;
            }
        }
        match found {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(i);
            }
        }
    }
    // group by class, keeping the (dim, End) order of representatives
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&i| (class_of[i], i));
    let mut multiplicities = vec![0; reps.len()];
    let mut class_representatives = vec![usize::MAX; reps.len()];
    let mut summands = Vec::with_capacity(parts.len());
    for (pos, &i) in order.iter().enumerate() {
        let c = class_of[i];
        multiplicities[c] += 1;
        if class_representatives[c] == usize::MAX {
            class_representatives[c] = pos;
        }
        let p = &parts[i];
        let module = summand_module(m, &p.inclusion, &p.projection).with_label(format!("U{c}"));
        summands.push(Summand {
            module,
            inclusion: p.inclusion.clone(),
            projection: p.projection.clone(),
            class: c,
            local: p.clone(),
        });
    }
    let mut witness = ScalarMatrix::zeros(f, m.dim(), 0);
    for s in &summands {
        witness = witness.hstack(&s.inclusion);
    }
    Ok(DecompositionReport { summands, class_representatives, multiplicities, witness })
}

/// Whether summand `a ⊆ X` is isomorphic to summand `b ⊆ Y`, given bases of
/// `Hom(X, Y)` and `Hom(Y, X)`.
pub fn isomorphic_summands(a: &Summand, b: &Summand, hom_xy: &[ScalarMatrix], hom_yx: &[ScalarMatrix]) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    isomorphic_by_pairing(&a.local, &restricted(&a.local, &b.local, hom_xy), &restricted(&b.local, &a.local, hom_yx))
}

#[derive(Clone, Debug)]
pub enum AddWitness {
    /// Maps `f_i: X → M` and `g_i: M → X` with `Σ g_i f_i = 1_X`.
    Trace { f: Vec<ScalarMatrix>, g: Vec<ScalarMatrix> },
    /// For each summand of `X`, the index of an isomorphic summand of `M`.
    Summands { matches: Vec<usize> },
    /// A summand of `X` with no isomorphic summand in `M`.
    Missing { summand: usize },
    /// The trace ideal is proper.
    ProperTraceIdeal,
}

#[derive(Clone, Debug)]
pub struct AddMembership {
    pub member: bool,
    pub witness: AddWitness,
}

/// `X ∈ add M`, choosing the method by size.
pub fn add_member(x: &Representation, m: &Representation) -> Result<AddMembership> {
    same_algebra(x, m)?;
    let xm = hom_space(x, m)?;
    let mx = hom_space(m, x)?;
    let cost = xm.len() * mx.len() * x.dim() * x.dim() * m.dim().max(1);
    if cost <= TRACE_BUDGET {
        trace_method(x, &xm, &mx)
    } else {
        summand_method(x, m, &xm, &mx)
    }
}

/// `X ∈ add M` iff `1_X` lies in the span of the composites `g∘f`.
pub fn add_member_by_trace(x: &Representation, m: &Representation) -> Result<AddMembership> {
    same_algebra(x, m)?;
    trace_method(x, &hom_space(x, m)?, &hom_space(m, x)?)
}

/// `X ∈ add M` iff every indecomposable summand of `X` occurs in `M`.
pub fn add_member_by_summands(x: &Representation, m: &Representation) -> Result<AddMembership> {
    same_algebra(x, m)?;
    summand_method(x, m, &hom_space(x, m)?, &hom_space(m, x)?)
}

fn trace_method(x: &Representation, xm: &[ScalarMatrix], mx: &[ScalarMatrix]) -> Result<AddMembership> {
    let fld = x.field();
    let d = x.dim();
    if d == 0 {
        return Ok(AddMembership { member: true, witness: AddWitness::Trace { f: Vec::new(), g: Vec::new() } });
    }
    // columns: flatten(g_j f_i) at index i·|mx| + j
    let mut cols = Vec::with_capacity(xm.len() * mx.len());
    for fi in xm {
        for gj in mx {
            cols.push(gj.mul(fi).data().to_vec());
        }
    }
    if cols.is_empty() {
        return Ok(AddMembership { member: false, witness: AddWitness::ProperTraceIdeal });
    }
    let a = ScalarMatrix::from_cols(fld, d * d, &cols);
    let id = ScalarMatrix::identity(fld, d);
    let rhs = ScalarMatrix::from_cols(fld, d * d, &[id.data().to_vec()]);
    let Some(sol) = a.solve(&rhs)? else {
        return Ok(AddMembership { member: false, witness: AddWitness::ProperTraceIdeal });
    };
    let (mut fs, mut gs) = (Vec::new(), Vec::new());
    for (i, fi) in xm.iter().enumerate() {
        let mut g = ScalarMatrix::zeros(fld, d, fi.rows());
        for (j, gj) in mx.iter().enumerate() {
            let c = sol.get(i * mx.len() + j, 0);
            if !c.is_zero() {
                g.axpy(c, gj);
            }
        }
        if !g.is_zero() {
            fs.push(fi.clone());
            gs.push(g);
        }
    }
    let mut total = ScalarMatrix::zeros(fld, d, d);
    for (fi, gi) in fs.iter().zip(&gs) {
        total = total.add(&gi.mul(fi));
    }
    if !total.is_identity() {
        return Err(Error::AlgorithmFailure("trace-ideal witness does not sum to the identity".into()));
    }
    Ok(AddMembership { member: true, witness: AddWitness::Trace { f: fs, g: gs } })
}

fn summand_method(
    x: &Representation,
    m: &Representation,
    xm: &[ScalarMatrix],
    mx: &[ScalarMatrix],
) -> Result<AddMembership> {
    let dx = decompose(x, DEFAULT_SEED)?;
    let dm = decompose(m, DEFAULT_SEED)?;
    let mut matches = Vec::with_capacity(dx.num_summands());
    for (i, a) in dx.summands.iter().enumerate() {
        let mut hit = None;
        for (j, b) in dm.summands.iter().enumerate() {
            if isomorphic_summands(a, b, xm, mx)? {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => matches.push(j),
            None => return Ok(AddMembership { member: false, witness: AddWitness::Missing { summand: i } }),
        }
    }
    Ok(AddMembership { member: true, witness: AddWitness::Summands { matches } })
}

/// `dim` of the span of `{g∘f}` inside `End(X)`.
pub fn trace_ideal_dim(x: &Representation, m: &Representation) -> Result<usize> {
    let xm = hom_space(x, m)?;
    let mx = hom_space(m, x)?;
    let prods: Vec<ScalarMatrix> = xm.iter().flat_map(|f| mx.iter().map(move |g| g.mul(f))).collect();
    Ok(matrix_span(x.field(), x.dim(), x.dim(), &prods).len())
}
