//! Endomorphism algebras, global dimension, and the induced-generator
//! pipelines that witness representation-dimension upper bounds.
//!
//! Large endomorphism rings are never built as structure-constant tables.
//! Instead a [`SummandFamily`] keeps one representative `Y_a` per
//! isomorphism class of indecomposable summands together with bases of
//! `Hom(Y_a, Y_b)`, and [`BasicEndomorphismAlgebra`] resolves simple modules
//! of the basic algebra `E = End(⊕ Y_a)` vertex by vertex. `End(X)` is Morita
//! equivalent to `E`, so both have the same global dimension.
//!
//! `E` acts on `P_a = ⊕_b Hom(Y_a, Y_b)` by post-composition. Its radical is
//! every map between distinct vertices plus the non-invertible
//! endomorphisms of each `Y_a`.

use std::sync::Arc;

use crate::algebra::{
    dense_to_sparse, group_algebra, group_algebra_symmetric, group_subalgebra, hecke_algebra, max_ell_parabolic,
    Algebra, AlgebraKind, AlgebraParts, SubalgebraEmbedding,
};
use crate::coxeter::{sylow_symmetric, CoxeterType};
use crate::error::{Error, Result};
use crate::field::{field_make, root_of_unity, FieldDescriptor, FieldKind, Scalar};
use crate::fitting::{flatten, isomorphic_by_pairing, matrix_span};
use crate::matrix::{vecops, ScalarMatrix, Subspace};
use crate::module::{
    add_member, decompose_with_endomorphisms, direct_sum, hom_space, induce, isomorphic_summands, mackey_check,
    outer_tensor, projective_cover, regular_module, restrict, serial_indecomposables, simple_modules, transport,
    MackeyReport, Representation, Summand,
};
use crate::symform::{casimir, parabolic_certify, standard_form, tensor_coords, SymmetrizingForm};

/// `End(M)` with basis `hom_space(M, M)` and product `f·g = f∘g`.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub module: Representation,
    pub algebra: Arc<Algebra>,
    pub basis: Vec<ScalarMatrix>,
}

pub fn end_algebra(m: &Representation) -> Result<EndomorphismAlgebra> {
    let basis = hom_space(m, m)?;
    if basis.is_empty() {
        return Err(Error::InvalidParameter("the zero module has no endomorphism algebra".into()));
    }
    let f = m.field();
    let d = basis.len();
    let mut span = Subspace::tracking(f, m.dim() * m.dim());
    for b in &basis {
        span.insert(&flatten(b));
    }
    let coords = |x: &ScalarMatrix| {
        span.generator_coords(&flatten(x))
            .ok_or_else(|| Error::AlgorithmFailure("composition leaves the hom space".into()))
    };
    let mut table = Vec::with_capacity(d * d);
    for x in &basis {
        for y in &basis {
            table.push(dense_to_sparse(&coords(&x.mul(y))?));
        }
    }
    let unit = coords(&ScalarMatrix::identity(f, m.dim()))?;
    let algebra = Algebra::from_parts(AlgebraParts {
        field: f,
        name: format!("End({})", m.label()),
        labels: (0..d).map(|i| format!("f{i}")).collect(),
        table,
        unit,
        generators: None,
        kind: AlgebraKind::Endomorphism,
        group_basis: None,
    })?;
    Ok(EndomorphismAlgebra { module: m.clone(), algebra: Arc::new(algebra), basis })
}

/// Projective dimensions of the simple modules. `None` marks a resolution
/// that reached the cap, read as "≥ cap".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalDimReport {
    pub algebra: String,
    pub per_simple: Vec<Option<usize>>,
    pub gldim: Option<usize>,
    pub cap: usize,
    /// Dimensions of `Ω¹ S, Ω² S, …` for each simple `S`.
    pub traces: Vec<Vec<usize>>,
}

impl GlobalDimReport {
    fn assemble(algebra: String, cap: usize, results: Vec<(Option<usize>, Vec<usize>)>) -> Self {
        let per_simple: Vec<Option<usize>> = results.iter().map(|r| r.0).collect();
        let gldim = per_simple.iter().try_fold(0, |acc, p| p.map(|v| acc.max(v)));
        let traces = results.into_iter().map(|r| r.1).collect();
        GlobalDimReport { algebra, per_simple, gldim, cap, traces }
    }

    pub fn reached_cap(&self) -> bool {
        self.gldim.is_none()
    }
}

/// Minimal resolutions of the simples of `a`; the cap defaults to `2·dim a`.
pub fn global_dimension(a: &Arc<Algebra>, cap: Option<usize>) -> Result<GlobalDimReport> {
    let cap = cap.unwrap_or(2 * a.dim());
    let mut results = Vec::new();
    for s in simple_modules(a)? {
        let mut trace = Vec::new();
        let mut cur = s;
        let mut pd = None;
        for d in 0..=cap {
            let pc = projective_cover(&cur)?;
            if pc.kernel.dim() == 0 {
                pd = Some(d);
                break;
            }
            trace.push(pc.kernel.dim());
            cur = pc.kernel;
        }
        results.push((pd, trace));
    }
    Ok(GlobalDimReport::assemble(a.name().to_string(), cap, results))
}

/// The basic algebra `E = ⊕_{a,b} Hom(Y_a, Y_b)` of pairwise non-isomorphic
/// indecomposables with split local endomorphism rings.
#[derive(Clone, Debug)]
pub struct BasicEndomorphismAlgebra {
    field: FieldDescriptor,
    hom_dims: Vec<Vec<usize>>,
    /// `comp[a][b][c][k]`: the action of basis map `k` of `Hom(Y_b, Y_c)`
    /// as a matrix `Hom(Y_a, Y_b) → Hom(Y_a, Y_c)` in coordinates.
    comp: Vec<Vec<Vec<Vec<ScalarMatrix>>>>,
    /// Radical of `Hom(Y_b, Y_c)` in coordinates.
    radical: Vec<Vec<Vec<Vec<Scalar>>>>,
    /// `rad_ops[a][b][c]`: the actions of the radical basis of `Hom(Y_b, Y_c)`.
    rad_ops: Vec<Vec<Vec<Vec<ScalarMatrix>>>>,
}

/// A submodule `U ⊆ ⊕_i P_{tops[i]}`, stored vertex by vertex.
struct GradedSubmodule {
    tops: Vec<usize>,
    parts: Vec<Subspace>,
}

impl BasicEndomorphismAlgebra {
    /// `homs[a][b]` is a basis of `Hom(Y_a, Y_b)` (matrices `dim Y_b × dim Y_a`);
    /// `end_radical[a]` is the radical of `End(Y_a)` in coordinates of `homs[a][a]`.
    pub fn new(
        field: FieldDescriptor,
        homs: &[Vec<Vec<ScalarMatrix>>],
        end_radical: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let n = homs.len();
        let hom_dims: Vec<Vec<usize>> = homs.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
        let mut spans = Vec::with_capacity(n);
        for (a, row) in homs.iter().enumerate() {
            let mut r = Vec::with_capacity(n);
            for hs in row {
                let len = hs.first().map_or(0, |h| h.rows() * h.cols());
                let mut s = Subspace::tracking(field, len);
                for h in hs {
                    if !s.insert(&flatten(h)) {
                        return Err(Error::InvalidParameter("hom basis is linearly dependent".into()));
                    }
                }
                r.push(s);
            }
            if end_radical[a].len() + 1 != hom_dims[a][a] {
                return Err(Error::InvalidParameter(format!("End of vertex {a} is not split local")));
            }
            spans.push(r);
        }
        let mut comp = vec![vec![vec![Vec::new(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut per_k = Vec::with_capacity(hom_dims[b][c]);
                    for phi in &homs[b][c] {
                        let mut cols = Vec::with_capacity(hom_dims[a][b]);
                        for u in &homs[a][b] {
                            let prod = phi.mul(u);
                            let coords = if hom_dims[a][c] == 0 {
                                if !prod.is_zero() {
                                    return Err(Error::AlgorithmFailure("composition leaves a zero hom space".into()));
                                }
                                Vec::new()
                            } else {
                                spans[a][c].generator_coords(&flatten(&prod)).ok_or_else(|| {
                                    Error::AlgorithmFailure(format!("composition {a}→{b}→{c} leaves the hom space"))
                                })?
                            };
                            cols.push(coords);
                        }
                        per_k.push(ScalarMatrix::from_cols(field, hom_dims[a][c], &cols));
                    }
                    comp[a][b][c] = per_k;
                }
            }
        }
        let radical: Vec<Vec<Vec<Vec<Scalar>>>> = (0..n)
            .map(|b| {
                (0..n)
                    .map(|c| {
                        if b == c {
                            end_radical[b].clone()
                        } else {
                            (0..hom_dims[b][c]).map(|k| vecops::unit(field, hom_dims[b][c], k)).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        let rad_ops = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (0..n)
                            .map(|c| {
                                radical[b][c]
                                    .iter()
                                    .map(|r| {
                                        let mut acc = ScalarMatrix::zeros(field, hom_dims[a][c], hom_dims[a][b]);
                                        for (x, m) in r.iter().zip(&comp[a][b][c]) {
                                            if !x.is_zero() {
                                                acc.axpy(x, m);
                                            }
                                        }
                                        acc
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(BasicEndomorphismAlgebra { field, hom_dims, comp, radical, rad_ops })
    }

    pub fn num_vertices(&self) -> usize {
        self.hom_dims.len()
    }

    pub fn dim(&self) -> usize {
        self.hom_dims.iter().flatten().sum()
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom_dims[a][b]
    }

    fn offsets(&self, tops: &[usize], c: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(tops.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &t in tops {
            acc += self.hom_dims[t][c];
            out.push(acc);
        }
        out
    }

    /// Applies a vertex-`b`-to-`c` operator blockwise to `u ∈ ⊕_i Hom(Y_{t_i}, Y_b)`.
    fn apply<'s>(
        &self,
        tops: &[usize],
        b: usize,
        c: usize,
        op: impl Fn(usize) -> &'s ScalarMatrix,
        u: &[Scalar],
    ) -> Vec<Scalar> {
        let src = self.offsets(tops, b);
        let mut out = Vec::with_capacity(*self.offsets(tops, c).last().expect("nonempty"));
        for (i, &t) in tops.iter().enumerate() {
            out.extend(op(t).mul_vec(&u[src[i]..src[i + 1]]));
        }
        out
    }

    fn radical_of_projective(&self, a: usize) -> GradedSubmodule {
        let n = self.num_vertices();
        let parts =
            (0..n).map(|c| Subspace::spanned_by(self.field, self.hom_dims[a][c], &self.radical[a][c])).collect();
        GradedSubmodule { tops: vec![a], parts }
    }

    /// `Ω U` from the minimal projective cover of `U`.
    fn syzygy(&self, u: &GradedSubmodule) -> Result<GradedSubmodule> {
        let n = self.num_vertices();
        let f = self.field;
        let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for b in 0..n {
            let len = *self.offsets(&u.tops, b).last().expect("nonempty");
            let mut ju = Subspace::new(f, len);
            for a in 0..n {
                for v in u.parts[a].basis() {
                    for r in 0..self.radical[a][b].len() {
                        ju.insert(&self.apply(&u.tops, a, b, |t| &self.rad_ops[t][a][b][r], v));
                    }
                }
            }
            for v in u.parts[b].basis() {
                if ju.insert(v) {
                    gens.push((b, v.clone()));
                }
            }
        }
        let tops: Vec<usize> = gens.iter().map(|g| g.0).collect();
        let mut parts = Vec::with_capacity(n);
        for c in 0..n {
            let target = *self.offsets(&u.tops, c).last().expect("nonempty");
            let mut cols = Vec::new();
            for (b, v) in &gens {
                for k in 0..self.hom_dims[*b][c] {
                    cols.push(self.apply(&u.tops, *b, c, |t| &self.comp[t][*b][c][k], v));
                }
            }
            let map = ScalarMatrix::from_cols(f, target, &cols);
            if map.rank() != u.parts[c].dim() {
                return Err(Error::AlgorithmFailure(format!("cover is not onto at vertex {c}")));
            }
            let src = *self.offsets(&tops, c).last().expect("nonempty");
            let ker = if src == 0 { Vec::new() } else { map.kernel() };
            parts.push(Subspace::spanned_by(f, src, &ker));
        }
        Ok(GradedSubmodule { tops, parts })
    }

    /// Projective dimension of the simple top of `P_a`, or `None` at the cap.
    pub fn simple_projective_dimension(&self, a: usize, cap: usize) -> Result<(Option<usize>, Vec<usize>)> {
        let mut u = self.radical_of_projective(a);
        let mut trace = Vec::new();
        for d in 0..=cap {
            let size: usize = u.parts.iter().map(Subspace::dim).sum();
            if size == 0 {
                return Ok((Some(d), trace));
            }
            trace.push(size);
            if d == cap {
                break;
            }
            u = self.syzygy(&u)?;
        }
        Ok((None, trace))
    }

    /// The cap defaults to `2·dim E`.
    pub fn global_dimension(&self, cap: Option<usize>) -> Result<GlobalDimReport> {
        let cap = cap.unwrap_or(2 * self.dim());
        let results =
            (0..self.num_vertices()).map(|a| self.simple_projective_dimension(a, cap)).collect::<Result<Vec<_>>>()?;
        Ok(GlobalDimReport::assemble(format!("basic End ({} vertices)", self.num_vertices()), cap, results))
    }
}

/// One class of indecomposable summands across a list of modules.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub piece: usize,
    pub summand: Summand,
    /// Total multiplicity over all pieces.
    pub multiplicity: usize,
}

/// Isomorphism classes of indecomposable summands of `X = ⊕ pieces`.
#[derive(Clone, Debug)]
pub struct SummandFamily {
    pub pieces: Vec<Representation>,
    pub members: Vec<FamilyMember>,
    piece_homs: Vec<Vec<Vec<ScalarMatrix>>>,
    homs: Vec<Vec<Vec<ScalarMatrix>>>,
}

impl SummandFamily {
    pub fn from_pieces(pieces: &[Representation], seed: u64) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidParameter("no modules given".into()));
        }
        let t = pieces.len();
        let mut piece_homs = vec![vec![Vec::new(); t]; t];
        for i in 0..t {
            for j in 0..t {
                piece_homs[i][j] = hom_space(&pieces[i], &pieces[j])?;
            }
        }
        let mut members: Vec<FamilyMember> = Vec::new();
        for (i, x) in pieces.iter().enumerate() {
            if x.dim() == 0 {
                continue;
            }
            let dec = decompose_with_endomorphisms(x, &piece_homs[i][i], seed)?;
            for (c, &rep) in dec.class_representatives.iter().enumerate() {
                let s = &dec.summands[rep];
                let mut found = None;
                for (a, m) in members.iter().enumerate() {
                    if m.summand.dim() != s.dim() || m.summand.end_dim() != s.end_dim() {
                        continue;
                    }
                    if isomorphic_summands(&m.summand, s, &piece_homs[m.piece][i], &piece_homs[i][m.piece])? {
                        found = Some(a);
                        break;
                    }
                }
                match found {
                    Some(a) => members[a].multiplicity += dec.multiplicities[c],
                    None => {
                        members.push(FamilyMember { piece: i, summand: s.clone(), multiplicity: dec.multiplicities[c] })
                    }
                }
            }
        }
        let n = members.len();
        let mut raw: Vec<Vec<Vec<ScalarMatrix>>> = vec![vec![Vec::new(); n]; n];
        for (b, mb) in members.iter().enumerate() {
            for (a, ma) in members.iter().enumerate() {
                for f in &piece_homs[ma.piece][mb.piece] {
                    raw[a][b].push(mb.summand.projection.mul(f).mul(&ma.summand.inclusion));
                }
            }
        }
        let field = pieces[0].field();
        let homs = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| matrix_span(field, members[b].summand.dim(), members[a].summand.dim(), &raw[a][b]))
                    .collect()
            })
            .collect();
        Ok(SummandFamily { pieces: pieces.to_vec(), members, piece_homs, homs })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Basis of `Hom(Y_a, Y_b)`.
    pub fn homs(&self, a: usize, b: usize) -> &[ScalarMatrix] {
        &self.homs[a][b]
    }

    /// Basis of `Hom(X_i, X_j)` between pieces.
    pub fn piece_homs(&self, i: usize, j: usize) -> &[ScalarMatrix] {
        &self.piece_homs[i][j]
    }

    pub fn member_module(&self, a: usize) -> &Representation {
        &self.members[a].summand.module
    }

    /// `dim End(⊕ pieces)`.
    pub fn end_dim(&self) -> usize {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.members[a].multiplicity * self.members[b].multiplicity * self.homs[a][b].len())
            .sum()
    }

    pub fn basic_algebra(&self) -> Result<BasicEndomorphismAlgebra> {
        let field = self.pieces[0].field();
        let mut end_radical = Vec::with_capacity(self.len());
        for (a, m) in self.members.iter().enumerate() {
            let hs = &self.homs[a][a];
            let row = hs.iter().map(|h| m.summand.local().chi(h)).collect::<Result<Vec<_>>>()?;
            end_radical.push(ScalarMatrix::from_rows(field, hs.len(), &[row]).kernel());
        }
        BasicEndomorphismAlgebra::new(field, &self.homs, end_radical)
    }

    pub fn global_dimension(&self, cap: Option<usize>) -> Result<GlobalDimReport> {
        self.basic_algebra()?.global_dimension(cap)
    }

    /// Whether every projective indecomposable of the algebra occurs among
    /// the members.
    pub fn contains_all_projectives(&self) -> Result<bool> {
        let a = self.pieces[0].algebra().clone();
        let w = a.wedderburn()?;
        let reg = regular_module(&a);
        let mut to_piece: Vec<Option<(Vec<ScalarMatrix>, Vec<ScalarMatrix>)>> = vec![None; self.pieces.len()];
        for t in w.class_representatives() {
            let u = &w.pims[t];
            let mut hit = false;
            for m in &self.members {
                if m.summand.dim() != u.dim() {
                    continue;
                }
                if to_piece[m.piece].is_none() {
                    to_piece[m.piece] =
                        Some((hom_space(&reg, &self.pieces[m.piece])?, hom_space(&self.pieces[m.piece], &reg)?));
                }
                let (into, out) = to_piece[m.piece].as_ref().expect("filled above");
                let ab: Vec<ScalarMatrix> =
                    into.iter().map(|f| m.summand.projection.mul(f).mul(&u.inclusion)).collect();
                let ba: Vec<ScalarMatrix> = out.iter().map(|g| u.projection.mul(g).mul(&m.summand.inclusion)).collect();
                if isomorphic_by_pairing(u, &ab, &ba)? {
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
}

/// `gldim End(⊕ all indecomposables)` for a serial algebra: 2 for
/// non-semisimple algebras, 0 for semisimple ones.
#[derive(Clone, Debug)]
pub struct FiniteTypeReport {
    pub indecomposables: usize,
    pub gldim: GlobalDimReport,
    pub value: Option<usize>,
}

pub fn repdim_finite_type(a: &Arc<Algebra>, seed: u64) -> Result<FiniteTypeReport> {
    let serial = serial_indecomposables(a)?;
    let family = SummandFamily::from_pieces(&serial.modules, seed)?;
    let gldim = family.global_dimension(None)?;
    Ok(FiniteTypeReport { indecomposables: family.len(), value: gldim.gldim, gldim })
}

fn stage(name: &str, detail: impl Into<String>) -> Error {
    Error::StageFailure { stage: name.into(), detail: detail.into() }
}

fn staged<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ (Error::StageFailure { .. } | Error::CapExceeded(_)) => e,
        e => stage(name, e.to_string()),
    })
}

/// Whether the Λ-Λ-bimodule Λ is a summand of `Λ ⊗_Γ Λ`.
///
/// Bimodule maps `Λ → Λ ⊗_Γ Λ` are the Λ-central tensors `t` and maps back
/// are `a ⊗ b ↦ a z b` with `z` centralizing Γ, so Λ is a summand exactly
/// when `1 = Σ x_j z y_j` is reachable. An invertible relative Casimir
/// element gives `t = c·μ⁻¹`, `z = 1` directly; otherwise the spaces are
/// solved for, up to `limit` unknowns.
pub fn separable_division_check(emb: &Arc<SubalgebraEmbedding>, s: &SymmetrizingForm, limit: usize) -> Result<bool> {
    if emb.rank() == 1 {
        return Ok(true);
    }
    if parabolic_certify(emb, s).is_ok() {
        let c = casimir(emb, s)?;
        if c.mu_invertible() && c.is_central() {
            return Ok(true);
        }
    }
    let lam = &emb.ambient;
    let f = lam.field();
    let (r, d) = (emb.rank(), lam.dim());
    if r * d > limit {
        return Err(Error::CapExceeded(format!("bimodule test needs {} unknowns, limit {limit}", r * d)));
    }
    let fb = emb.free_basis();
    let mut central = ScalarMatrix::zeros(f, 0, r * d);
    for x in lam.generators() {
        let mut cols = Vec::with_capacity(r * d);
        for a in fb {
            for k in 0..d {
                let b = lam.basis_element(k);
                let left = tensor_coords(emb, &lam.mul(x, a), &b);
                let right = tensor_coords(emb, a, &lam.mul(&b, x));
                cols.push(vecops::sub(&left, &right));
            }
        }
        central = central.vstack(&ScalarMatrix::from_cols(f, r * d, &cols));
    }
    let ts = central.kernel();
    let mut centralizer = ScalarMatrix::zeros(f, 0, d);
    for g in emb.sub.generators() {
        let gi = emb.include(g);
        centralizer = centralizer.vstack(&lam.left_mul_matrix(&gi).sub(&lam.right_mul_matrix(&gi)));
    }
    let zs = centralizer.kernel();
    let mut reach = Subspace::new(f, d);
    for t in &ts {
        for z in &zs {
            let mut acc = lam.zero_element();
            for (j, a) in fb.iter().enumerate() {
                acc = vecops::add(&acc, &lam.mul(&lam.mul(a, z), &t[j * d..(j + 1) * d]));
            }
            reach.insert(&acc);
        }
    }
    Ok(reach.contains(lam.unit()))
}

/// Unknown-count limit for the general bimodule test inside the pipelines.
pub const BIMODULE_TEST_LIMIT: usize = 4096;

/// Outcome of an induced-generator pipeline.
#[derive(Clone, Debug)]
pub struct UpperBoundWitness {
    pub family: String,
    pub n: usize,
    /// `ℓ` for Hecke algebras, `p` for group algebras.
    pub ell: usize,
    pub m: usize,
    pub ambient: Arc<Algebra>,
    pub sub: Arc<Algebra>,
    /// The pieces of `M` over the subalgebra.
    pub module_pieces: Vec<Representation>,
    /// `Λ ⊗ N` for each piece `N` of `M`.
    pub induced_pieces: Vec<Representation>,
    pub module_dim: usize,
    pub induced_dim: usize,
    pub certificate: bool,
    pub mu_invertible: bool,
    pub separable_division: Option<bool>,
    /// Restriction of the induced module lies in `add M`.
    pub add_membership: bool,
    pub mackey: Option<MackeyReport>,
    pub generator: bool,
    pub distinct_summands: usize,
    pub end_dim: usize,
    pub basic_end_dim: usize,
    pub gldim: GlobalDimReport,
    /// `2m`.
    pub target_bound: usize,
    pub family_members: SummandFamily,
}

impl UpperBoundWitness {
    /// The concluded upper bound on the representation dimension.
    pub fn concluded_bound(&self) -> Option<usize> {
        self.gldim.gldim
    }

    /// Serialized intermediate objects, for regression diffing.
    pub fn artifacts(&self) -> Result<Vec<(String, String)>> {
        let mut out =
            vec![("ambient.alg".to_string(), self.ambient.to_text()), ("sub.alg".to_string(), self.sub.to_text())];
        let m: Vec<&Representation> = self.module_pieces.iter().collect();
        out.push(("module.mod".into(), direct_sum(&m)?.to_text()));
        let x: Vec<&Representation> = self.induced_pieces.iter().collect();
        out.push(("induced.mod".into(), direct_sum(&x)?.as_generic().to_text()));
        Ok(out)
    }
}

/// Field and parameter used for `H_q(A_{n−1})` with `q` a primitive ℓ-th root
/// of unity: `ℚ` with `q = −1` for ℓ = 2, `ℚ(ζ_ℓ)` otherwise.
pub fn hecke_root_of_unity(ell: usize) -> Result<(FieldDescriptor, Scalar)> {
    match ell {
        0 | 1 => Err(Error::InvalidParameter(format!("ℓ must be at least 2, got {ell}"))),
        2 => Ok((FieldDescriptor::Rationals, FieldDescriptor::Rationals.from_int(-1))),
        _ => {
            let f = FieldDescriptor::Cyclotomic(ell as u32);
            Ok((f, root_of_unity(f, ell as u32)?))
        }
    }
}

/// Outer tensor products of one module per factor, for every choice,
/// transported onto `target`.
fn tensor_pieces(lists: &[Vec<Representation>], target: &Arc<Algebra>) -> Result<Vec<Representation>> {
    let mut choice = vec![0usize; lists.len()];
    let mut out = Vec::new();
    loop {
        let mods: Vec<&Representation> = choice.iter().zip(lists).map(|(&c, l)| &l[c]).collect();
        let (_, t) = outer_tensor(&mods)?;
        out.push(transport(&t, target.clone())?.with_label(t.label().to_string()));
        let mut k = lists.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < lists[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Steps shared by both pipelines once `M` is fixed.
struct InducedGenerator {
    induced: Vec<Representation>,
    family: SummandFamily,
    generator: bool,
    gldim: GlobalDimReport,
    basic_end_dim: usize,
}

fn induced_generator(
    emb: &Arc<SubalgebraEmbedding>,
    pieces: &[Representation],
    seed: u64,
    cap: Option<usize>,
) -> Result<InducedGenerator> {
    let induced = staged("induce", pieces.iter().map(|p| induce(emb, p)).collect::<Result<Vec<_>>>())?;
    let family = staged("decompose", SummandFamily::from_pieces(&induced, seed))?;
    let generator = staged("generator", family.contains_all_projectives())?;
    if !generator {
        return Err(stage("generator", "some projective indecomposable is not a summand"));
    }
    let basic = staged("gldim", family.basic_algebra())?;
    let gldim = staged("gldim", basic.global_dimension(cap))?;
    Ok(InducedGenerator { induced, family, generator, gldim, basic_end_dim: basic.dim() })
}

/// The subalgebra embedding and the pieces of `M` a witness pipeline induces from.
#[derive(Clone, Debug)]
pub struct InductionSetup {
    pub emb: Arc<SubalgebraEmbedding>,
    pub pieces: Vec<Representation>,
}

/// `H_q(A_{n−1}) ⊇ 𝓑`, the maximal ℓ-parabolic, with `M` the outer tensor
/// powers of all indecomposables of `H_q(A_{ℓ−1})`.
pub fn hecke_setup(n: usize, ell: usize) -> Result<InductionSetup> {
    let m = n / ell.max(1);
    if ell < 2 || m == 0 {
        return Err(Error::InvalidParameter(format!("need ℓ ≥ 2 and ⌊n/ℓ⌋ ≥ 1, got n = {n}, ℓ = {ell}")));
    }
    let (f, q) = hecke_root_of_unity(ell)?;
    let lam = Arc::new(staged("build", hecke_algebra(CoxeterType::A, n, f, &q, None))?);
    let emb = Arc::new(staged("build", max_ell_parabolic(lam, ell))?);
    let factor = Arc::new(staged("build", hecke_algebra(CoxeterType::A, ell, f, &q, None))?);
    let indecs = staged("factor", serial_indecomposables(&factor))?.modules;
    let pieces = staged("module", tensor_pieces(&vec![indecs; m], &emb.sub))?;
    Ok(InductionSetup { emb, pieces })
}

/// `kS_n ⊇ kP` over `F_p`, `P` a Sylow p-subgroup, with `M` the outer
/// tensor powers of the Jordan blocks `J_1, …, J_p` of `kC_p`.
pub fn group_setup(n: usize, p: usize) -> Result<InductionSetup> {
    if p < 2 || n < p || n >= p * p {
        return Err(Error::InvalidParameter(format!("need p ≤ n < p², got n = {n}, p = {p}")));
    }
    let f = field_make(FieldKind::Prime(p as u64))?;
    let kg = Arc::new(staged("build", group_algebra_symmetric(n, f))?);
    let pdata = staged("build", sylow_symmetric(n, p))?;
    let emb = Arc::new(staged("build", group_subalgebra(kg, &pdata))?);
    let kc = Arc::new(group_algebra(&sylow_symmetric(p, p)?, f)?);
    let blocks = (1..=p).map(|s| jordan_block(&kc, s)).collect::<Result<Vec<_>>>()?;
    let pieces = staged("module", tensor_pieces(&vec![blocks; n / p], &emb.sub))?;
    Ok(InductionSetup { emb, pieces })
}

/// Builds `H_q(A_{n−1})` at a primitive ℓ-th root of unity, the maximal
/// ℓ-parabolic `𝓑 ≅ H_q(A_{ℓ−1})^{⊗m}`, the module `M = ⊗_i (⊕ indecomposables)`,
/// and bounds `gldim End(Λ ⊗_𝓑 M)` by `2m`.
pub fn witness_upper_hecke(n: usize, ell: usize, seed: u64) -> Result<UpperBoundWitness> {
    witness_upper_hecke_capped(n, ell, seed, None)
}

/// As [`witness_upper_hecke`] with an explicit syzygy-depth cap (default
/// `2·dim` of the basic endomorphism algebra).
pub fn witness_upper_hecke_capped(n: usize, ell: usize, seed: u64, cap: Option<usize>) -> Result<UpperBoundWitness> {
    let m = n / ell.max(1);
    if ell < 2 || m == 0 {
        return Err(Error::InvalidParameter(format!("need ℓ ≥ 2 and ⌊n/ℓ⌋ ≥ 1, got n = {n}, ℓ = {ell}")));
    }
    let InductionSetup { emb, pieces } = hecke_setup(n, ell)?;
    let lam = emb.ambient.clone();
    let form = staged("certificate", standard_form(&lam))?;
    staged("certificate", parabolic_certify(&emb, &form))?;
    let c = staged("mu", casimir(&emb, &form))?;
    if !c.mu_invertible() {
        return Err(stage("mu", "the relative Casimir element is not invertible"));
    }
    let module_dim = pieces.iter().map(Representation::dim).sum();
    let mr: Vec<&Representation> = pieces.iter().collect();
    let big_m = direct_sum(&mr)?;
    let ig = induced_generator(&emb, &pieces, seed, cap)?;
    for x in &ig.induced {
        let res = staged("add-membership", restrict(x, &emb))?;
        if !staged("add-membership", add_member(&res, &big_m))?.member {
            return Err(stage("add-membership", format!("restriction of {} is not in add M", x.label())));
        }
    }
    finish("heckeA", n, ell, m, lam, emb, pieces, module_dim, ig, None, None)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    family: &str,
    n: usize,
    ell: usize,
    m: usize,
    lam: Arc<Algebra>,
    emb: Arc<SubalgebraEmbedding>,
    pieces: Vec<Representation>,
    module_dim: usize,
    ig: InducedGenerator,
    separable_division: Option<bool>,
    mackey: Option<MackeyReport>,
) -> Result<UpperBoundWitness> {
    let bound = 2 * m;
    match ig.gldim.gldim {
        Some(g) if g <= bound => {}
        Some(g) => return Err(stage("gldim", format!("global dimension {g} exceeds {bound}"))),
        None => return Err(Error::CapExceeded(format!("resolutions reached the cap {}", ig.gldim.cap))),
    }
    Ok(UpperBoundWitness {
        family: family.into(),
        n,
        ell,
        m,
        ambient: lam,
        sub: emb.sub.clone(),
        induced_dim: ig.induced.iter().map(Representation::dim).sum(),
        module_pieces: pieces,
        induced_pieces: ig.induced,
        module_dim,
        certificate: true,
        mu_invertible: true,
        separable_division,
        add_membership: true,
        mackey,
        generator: ig.generator,
        distinct_summands: ig.family.len(),
        end_dim: ig.family.end_dim(),
        basic_end_dim: ig.basic_end_dim,
        gldim: ig.gldim,
        target_bound: bound,
        family_members: ig.family,
    })
}

/// Unipotent Jordan block of size `s` over a one-generator algebra.
pub fn jordan_block(a: &Arc<Algebra>, s: usize) -> Result<Representation> {
    let f = a.field();
    let mut j = ScalarMatrix::identity(f, s);
    for i in 0..s.saturating_sub(1) {
        j.set(i, i + 1, f.one());
    }
    Representation::new(a.clone(), s, vec![j], format!("J{s}"))
}

/// `kS_n ⊇ kP` over `F_p` with `M = ⊠_i (J_1 ⊕ ⋯ ⊕ J_p)`; bounds
/// `gldim End(kS_n ⊗_{kP} M)` by `2⌊n/p⌋`.
pub fn witness_upper_group(n: usize, p: usize, seed: u64) -> Result<UpperBoundWitness> {
    witness_upper_group_capped(n, p, seed, None)
}

/// As [`witness_upper_group`] with an explicit syzygy-depth cap.
pub fn witness_upper_group_capped(n: usize, p: usize, seed: u64, cap: Option<usize>) -> Result<UpperBoundWitness> {
    if p < 2 || n < p || n >= p * p {
        return Err(Error::InvalidParameter(format!("need p ≤ n < p², got n = {n}, p = {p}")));
    }
    let m = n / p;
    let InductionSetup { emb, pieces } = group_setup(n, p)?;
    let kg = emb.ambient.clone();
    let form = staged("certificate", standard_form(&kg))?;
    staged("certificate", parabolic_certify(&emb, &form))?;
    let c = staged("mu", casimir(&emb, &form))?;
    let mu_ok = c.mu_invertible();
    let sep = staged("separable-division", separable_division_check(&emb, &form, BIMODULE_TEST_LIMIT))?;
    if !sep {
        return Err(stage("separable-division", "kS_n does not separably divide kP"));
    }
    let module_dim = pieces.iter().map(Representation::dim).sum();
    let mr: Vec<&Representation> = pieces.iter().collect();
    let big_m = direct_sum(&mr)?;
    let mackey = staged("mackey", mackey_check(n, p, &big_m))?;
    if !mackey.agree || !mackey.in_add_m {
        return Err(stage("mackey", format!("{mackey:?}")));
    }
    let ig = induced_generator(&emb, &pieces, seed, cap)?;
    let mut w = finish("group", n, p, m, kg, emb, pieces, module_dim, ig, Some(sep), Some(mackey))?;
    w.mu_invertible = mu_ok;
    Ok(w)
}

/// Both sides of `gldim End_Λ(Λ ⊗_Γ M) ≤ gldim End_Γ(M)`.
#[derive(Clone, Debug)]
pub struct GldimComparison {
    pub induced: GlobalDimReport,
    pub base: GlobalDimReport,
    pub holds: bool,
}

pub fn verify_gldim_comparison(
    emb: &Arc<SubalgebraEmbedding>,
    pieces: &[Representation],
    seed: u64,
) -> Result<GldimComparison> {
    let base = SummandFamily::from_pieces(pieces, seed)?.global_dimension(None)?;
    let induced_pieces = pieces.iter().map(|p| induce(emb, p)).collect::<Result<Vec<_>>>()?;
    let induced = SummandFamily::from_pieces(&induced_pieces, seed)?.global_dimension(None)?;
    let holds = matches!((induced.gldim, base.gldim), (Some(a), Some(b)) if a <= b);
    Ok(GldimComparison { induced, base, holds })
}

/// `gldim End(M_1 ⊠ M_2)` against `gldim End(M_1) + gldim End(M_2)`.
#[derive(Clone, Debug)]
pub struct XiReport {
    pub factors: Vec<GlobalDimReport>,
    pub product: GlobalDimReport,
    pub holds: bool,
}

/// Each factor is given by the pieces of its module.
pub fn verify_xi_additivity(m1: &[Representation], m2: &[Representation], seed: u64) -> Result<XiReport> {
    let (a1, a2) = match (m1.first(), m2.first()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::InvalidParameter("each factor needs a module".into())),
    };
    if a1.field() != a2.field() {
        return Err(Error::FieldMismatch(a1.field().to_string(), a2.field().to_string()));
    }
    let (target, _) = outer_tensor(&[a1, a2])?;
    let pieces = tensor_pieces(&[m1.to_vec(), m2.to_vec()], &target)?;
    let g1 = SummandFamily::from_pieces(m1, seed)?.global_dimension(None)?;
    let g2 = SummandFamily::from_pieces(m2, seed)?.global_dimension(None)?;
    let product = SummandFamily::from_pieces(&pieces, seed)?.global_dimension(None)?;
    let holds = match (g1.gldim, g2.gldim, product.gldim) {
        (Some(x), Some(y), Some(z)) => x + y == z,
        _ => false,
    };
    Ok(XiReport { factors: vec![g1, g2], product, holds })
}
