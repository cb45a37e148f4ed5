//! Symmetrizing forms, relative Casimir elements and trace maps for a
//! subalgebra `Γ ⊆ Λ` of a symmetric algebra.
//!
//! `Λ ⊗_Γ Λ` is realized on the basis `a_j ⊗ b_k` (free right-Γ basis times
//! the Λ-basis): `u ⊗ v` with `u = Σ a_j γ_j` has block `j` equal to `γ_j v`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{scalar_subalgebra, Algebra, SubalgebraEmbedding};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::{vecops, ScalarMatrix, Subspace};
use crate::module::{hom_space, is_homomorphism, projective_cover, restrict, Representation};

/// A linear functional `s` with `s(xy) = s(yx)` and invertible Gram matrix.
#[derive(Clone, Debug)]
pub struct SymmetrizingForm {
    pub algebra: Arc<Algebra>,
    coords: Vec<Scalar>,
    gram: ScalarMatrix,
}

impl SymmetrizingForm {
    pub fn new(algebra: Arc<Algebra>, coords: Vec<Scalar>) -> Result<Self> {
        let d = algebra.dim();
        if coords.len() != d {
            return Err(Error::DimensionMismatch(format!("form has {} coordinates, algebra dim {d}", coords.len())));
        }
        let f = algebra.field();
        let mut gram = ScalarMatrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = f.zero();
                for (k, c) in algebra.basis_product(i, j) {
                    acc = &acc + &(c * &coords[*k]);
                }
                gram.set(i, j, acc);
            }
        }
        if gram != gram.transpose() {
            return Err(Error::NotSymmetricWithThisForm(format!("s(xy) ≠ s(yx) on {}", algebra.name())));
        }
        if !gram.is_invertible() {
            return Err(Error::NotSymmetricWithThisForm(format!("form on {} is degenerate", algebra.name())));
        }
        Ok(SymmetrizingForm { algebra, coords, gram })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// `G_ij = s(b_i b_j)`.
    pub fn gram(&self) -> &ScalarMatrix {
        &self.gram
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        vecops::dot(&self.coords, x)
    }

    /// The restriction `s ∘ ι` to the subalgebra.
    pub fn restrict_to(&self, emb: &SubalgebraEmbedding) -> Result<SymmetrizingForm> {
        let coords = (0..emb.sub.dim()).map(|k| self.eval(&emb.include(&emb.sub.basis_element(k)))).collect();
        SymmetrizingForm::new(emb.sub.clone(), coords)
    }
}

/// `s(b) = 1` on the unit basis element and `0` elsewhere; for Hecke and
/// group algebras this is `s(T_w) = δ_{w,1}` and `s(g) = δ_{g,1}`.
pub fn standard_form(a: &Arc<Algebra>) -> Result<SymmetrizingForm> {
    let unit = a.unit();
    let support: Vec<usize> = (0..a.dim()).filter(|&k| !unit[k].is_zero()).collect();
    if support.len() != 1 || !unit[support[0]].is_one() {
        return Err(Error::NotSymmetricWithThisForm(format!("the unit of {} is not a basis element", a.name())));
    }
    SymmetrizingForm::new(a.clone(), unit.to_vec())
}

/// `b_j^*` with `s(b_i b_j^*) = δ_ij`.
pub fn dual_basis(s: &SymmetrizingForm) -> Vec<Vec<Scalar>> {
    s.gram.inverse().expect("Gram matrix is invertible").columns()
}

/// Outcome of the four parabolic conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicCertificate {
    pub gamma_symmetric: bool,
    pub restricted_form_symmetrizing: bool,
    pub projective_over_gamma: bool,
    pub complement_in_kernel: bool,
    pub complement_dim: usize,
}

fn cert_fail(clause: &str, detail: impl Into<String>) -> Error {
    Error::CertificationFailure { clause: clause.into(), detail: detail.into() }
}

/// Checks that `Γ` is symmetric with the restricted form, that `Λ` is free
/// over `Γ`, and that `Λ = Γ ⊕ B` with `B` a Γ-bimodule inside `Ker s`.
pub fn parabolic_certify(emb: &SubalgebraEmbedding, s: &SymmetrizingForm) -> Result<ParabolicCertificate> {
    let lam = &emb.ambient;
    let f = lam.field();
    s.restrict_to(emb).map_err(|e| cert_fail("restricted form", e.to_string()))?;
    // freeness: every basis element is reconstructed from its rewriting
    for k in 0..lam.dim() {
        let b = lam.basis_element(k);
        let parts = emb.rewrite(&b);
        let mut acc = lam.zero_element();
        for (j, g) in parts.iter().enumerate() {
            acc = vecops::add(&acc, &emb.free_times(j, g));
        }
        if acc != b {
            return Err(cert_fail("projective", format!("rewriting of {} fails", lam.labels()[k])));
        }
    }
    // complement B
    let images = emb.inclusion().matrix().columns();
    let unit_columns: Option<Vec<usize>> = images
        .iter()
        .map(|c| {
            let nz: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
            (nz.len() == 1 && c[nz[0]].is_one()).then_some(nz[0])
        })
        .collect();
    let b_basis: Vec<Vec<Scalar>> = match unit_columns {
        Some(cols) => (0..lam.dim()).filter(|k| !cols.contains(k)).map(|k| lam.basis_element(k)).collect(),
        None => {
            let row = ScalarMatrix::from_rows(f, lam.dim(), &[s.coords().to_vec()]);
            row.kernel()
        }
    };
    let mut span = Subspace::spanned_by(f, lam.dim(), &images);
    for b in &b_basis {
        if !span.insert(b) {
            return Err(cert_fail("complement", "Γ and B are not independent"));
        }
    }
    if span.dim() != lam.dim() {
        return Err(cert_fail("complement", "Γ + B is not all of Λ"));
    }
    if b_basis.iter().any(|b| !s.eval(b).is_zero()) {
        return Err(cert_fail("complement", "B is not contained in Ker s"));
    }
    let b_space = Subspace::spanned_by(f, lam.dim(), &b_basis);
    for g in emb.sub.generators() {
        let gi = emb.include(g);
        for b in &b_basis {
            if !b_space.contains(&lam.mul(&gi, b)) || !b_space.contains(&lam.mul(b, &gi)) {
                return Err(cert_fail("complement", "B is not a Γ-bimodule"));
            }
        }
    }
    Ok(ParabolicCertificate {
        gamma_symmetric: true,
        restricted_form_symmetrizing: true,
        projective_over_gamma: true,
        complement_in_kernel: true,
        complement_dim: b_basis.len(),
    })
}

/// Coordinates of `u ⊗ v` in `Λ ⊗_Γ Λ`.
pub fn tensor_coords(emb: &SubalgebraEmbedding, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let lam = &emb.ambient;
    let mut out = Vec::with_capacity(emb.rank() * lam.dim());
    for g in emb.rewrite(u) {
        out.extend(lam.mul(&emb.include(&g), v));
    }
    out
}

/// `Σ x_i ⊗ y_i` with `μ = Σ x_i y_i`.
#[derive(Clone, Debug)]
pub struct CasimirElement {
    pub emb: Arc<SubalgebraEmbedding>,
    pub pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    pub mu: Vec<Scalar>,
}

impl CasimirElement {
    fn from_pairs(emb: Arc<SubalgebraEmbedding>, pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>) -> Self {
        let lam = &emb.ambient;
        let mut mu = lam.zero_element();
        for (x, y) in &pairs {
            mu = vecops::add(&mu, &lam.mul(x, y));
        }
        CasimirElement { emb, pairs, mu }
    }

    /// Coordinates of the element in `Λ ⊗_Γ Λ`.
    pub fn coords(&self) -> Vec<Scalar> {
        let lam = &self.emb.ambient;
        let mut acc = vecops::zeros(lam.field(), self.emb.rank() * lam.dim());
        for (x, y) in &self.pairs {
            acc = vecops::add(&acc, &tensor_coords(&self.emb, x, y));
        }
        acc
    }

    /// `(x ⊗ 1)·c = c·(1 ⊗ x)` for every generator `x`, hence for all of Λ.
    pub fn is_central(&self) -> bool {
        let lam = &self.emb.ambient;
        lam.generators().iter().all(|x| {
            let mut left = vecops::zeros(lam.field(), self.emb.rank() * lam.dim());
            let mut right = left.clone();
            for (a, b) in &self.pairs {
                left = vecops::add(&left, &tensor_coords(&self.emb, &lam.mul(x, a), b));
                right = vecops::add(&right, &tensor_coords(&self.emb, a, &lam.mul(b, x)));
            }
            left == right
        })
    }

    pub fn mu_is_central(&self) -> bool {
        let lam = &self.emb.ambient;
        lam.generators().iter().all(|g| lam.mul(g, &self.mu) == lam.mul(&self.mu, g))
    }

    pub fn mu_invertible(&self) -> bool {
        self.emb.ambient.left_mul_matrix(&self.mu).is_invertible()
    }

    pub fn mu_inverse(&self) -> Option<Vec<Scalar>> {
        let lam = &self.emb.ambient;
        let inv = lam.left_mul_matrix(&self.mu).inverse().ok()?;
        Some(inv.mul_vec(lam.unit()))
    }
}

/// The Γ-component of `x` along `Λ = Γ ⊕ B`, computed from the form:
/// `π(x) = Σ_k s(x·γ_k^*) γ_k`.
fn form_projection(
    emb: &SubalgebraEmbedding,
    s: &SymmetrizingForm,
    gamma_duals: &[Vec<Scalar>],
    x: &[Scalar],
) -> Vec<Scalar> {
    gamma_duals.iter().map(|d| s.eval(&emb.ambient.mul(x, d))).collect()
}

/// Solves `π(y_j·a_i) = δ_ij·1_Γ` for the partners `y_j` of the free basis.
fn casimir_with_projection(
    emb: &Arc<SubalgebraEmbedding>,
    proj: impl Fn(&[Scalar]) -> Vec<Scalar>,
) -> Result<CasimirElement> {
    let lam = &emb.ambient;
    let f = lam.field();
    let (r, dg, dl) = (emb.rank(), emb.sub.dim(), lam.dim());
    let mut cols = Vec::with_capacity(dl);
    for k in 0..dl {
        let b = lam.basis_element(k);
        let mut col = Vec::with_capacity(r * dg);
        for a in emb.free_basis() {
            col.extend(proj(&lam.mul(&b, a)));
        }
        cols.push(col);
    }
    let l = ScalarMatrix::from_cols(f, r * dg, &cols);
    let mut rhs = ScalarMatrix::zeros(f, r * dg, r);
    for j in 0..r {
        for (t, c) in emb.sub.unit().iter().enumerate() {
            rhs.set(j * dg + t, j, c.clone());
        }
    }
    let sol = l
        .solve(&rhs)?
        .ok_or_else(|| Error::AlgorithmFailure("no dual free basis: the projection is degenerate".into()))?;
    let pairs = emb.free_basis().iter().cloned().zip(sol.columns()).collect();
    Ok(CasimirElement::from_pairs(emb.clone(), pairs))
}

/// The relative Casimir element of `Γ ⊆ Λ` for the form `s`.
pub fn casimir(emb: &Arc<SubalgebraEmbedding>, s: &SymmetrizingForm) -> Result<CasimirElement> {
    let restricted = s.restrict_to(emb)?;
    let duals: Vec<Vec<Scalar>> = dual_basis(&restricted).iter().map(|d| emb.include(d)).collect();
    casimir_with_projection(emb, |x| form_projection(emb, s, &duals, x))
}

/// The same element computed with the projection onto the `a_0 = 1`
/// component of the free decomposition; agrees with [`casimir`] whenever
/// `B = ⊕_{j>0} a_j Γ`.
pub fn casimir_by_rewriting(emb: &Arc<SubalgebraEmbedding>) -> Result<CasimirElement> {
    casimir_with_projection(emb, |x| emb.rewrite(x).swap_remove(0))
}

pub fn mu_invertible(c: &CasimirElement) -> bool {
    c.mu_invertible()
}

/// `Σ ρ_N(x_i) f ρ_M(y_i)` for pairs in the algebra `m` and `n` are over.
fn apply_pairs(
    pairs: &[(Vec<Scalar>, Vec<Scalar>)],
    m: &Representation,
    n: &Representation,
    f: &ScalarMatrix,
) -> ScalarMatrix {
    let mut acc = ScalarMatrix::zeros(m.field(), n.dim(), m.dim());
    for (x, y) in pairs {
        acc = acc.add(&n.act(x).mul(f).mul(&m.act(y)));
    }
    acc
}

/// `tr(f)(m) = Σ x_i f(y_i m)`, checked to be Λ-linear.
pub fn trace_map(c: &CasimirElement, m: &Representation, n: &Representation, f: &ScalarMatrix) -> Result<ScalarMatrix> {
    let t = apply_pairs(&c.pairs, m, n, f);
    if !is_homomorphism(m, n, &t) {
        return Err(Error::LinearityFailure(format!("trace of a map {} → {}", m.label(), n.label())));
    }
    Ok(t)
}

pub(crate) fn random_scalar(rng: &mut ChaCha8Rng, f: FieldDescriptor) -> Scalar {
    match f {
        FieldDescriptor::Prime(p) => f.from_int(rng.gen_range(0..p as i64)),
        _ => f.from_int(rng.gen_range(-3..=3)),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, f: FieldDescriptor, r: usize, c: usize) -> ScalarMatrix {
    let data = (0..r * c).map(|_| random_scalar(rng, f)).collect();
    ScalarMatrix::new(f, r, c, data).expect("shape matches")
}

/// A chain `k ⊆ Γ ⊆ Λ` with the Casimir elements of every step.
#[derive(Clone, Debug)]
pub struct TraceChain {
    pub top: CasimirElement,
    pub lower: CasimirElement,
    pub absolute: CasimirElement,
}

impl TraceChain {
    /// Certifies `Γ ⊆ Λ` and both scalar embeddings, then builds the Casimirs.
    pub fn new(emb: &Arc<SubalgebraEmbedding>, s: &SymmetrizingForm) -> Result<Self> {
        parabolic_certify(emb, s)?;
        let sg = s.restrict_to(emb)?;
        let low = Arc::new(scalar_subalgebra(emb.sub.clone())?);
        let abs = Arc::new(scalar_subalgebra(emb.ambient.clone())?);
        parabolic_certify(&low, &sg)?;
        parabolic_certify(&abs, s)?;
        Ok(TraceChain { top: casimir(emb, s)?, lower: casimir(&low, &sg)?, absolute: casimir(&abs, s)? })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceReport {
    pub samples: usize,
    /// Samples where `tr(res f) ≠ μ·f`.
    pub restriction_failures: usize,
    /// Samples where `tr_Γ^Λ ∘ tr_k^Γ ≠ tr_k^Λ`.
    pub transitivity_failures: usize,
    pub seed: u64,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.restriction_failures == 0 && self.transitivity_failures == 0
    }
}

/// Runs both trace identities on `samples` seeded random maps between the
/// given Λ-modules (pairs are cycled through).
pub fn verify_trace_identities(
    chain: &TraceChain,
    modules: &[Representation],
    samples: usize,
    seed: u64,
) -> Result<TraceReport> {
    if modules.is_empty() {
        return Err(Error::InvalidParameter("no sample modules".into()));
    }
    let emb = &chain.top.emb;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TraceReport { samples, seed, ..Default::default() };
    let pairs: Vec<(usize, usize)> = (0..modules.len()).flat_map(|i| (0..modules.len()).map(move |j| (i, j))).collect();
    let homs: Vec<Vec<ScalarMatrix>> =
        pairs.iter().map(|&(i, j)| hom_space(&modules[i], &modules[j])).collect::<Result<_>>()?;
    let lower_pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> =
        chain.lower.pairs.iter().map(|(x, y)| (emb.include(x), emb.include(y))).collect();
    for t in 0..samples {
        let (i, j) = pairs[t % pairs.len()];
        let (m, n) = (&modules[i], &modules[j]);
        let f = m.field();
        let mut lin = ScalarMatrix::zeros(f, n.dim(), m.dim());
        for h in &homs[t % pairs.len()] {
            lin.axpy(&random_scalar(&mut rng, f), h);
        }
        let lhs = trace_map(&chain.top, m, n, &lin)?;
        if lhs != n.act(&chain.top.mu).mul(&lin) {
            report.restriction_failures += 1;
        }
        let g = random_matrix(&mut rng, f, n.dim(), m.dim());
        let inner = apply_pairs(&lower_pairs, m, n, &g);
        let two_step = trace_map(&chain.top, m, n, &inner)?;
        let direct = trace_map(&chain.absolute, m, n, &g)?;
        if two_step != direct {
            report.transitivity_failures += 1;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRestriction {
    pub degree: usize,
    pub ext_ambient: usize,
    pub ext_sub: usize,
    pub kernel: usize,
}

fn flat_span(field: FieldDescriptor, len: usize, ms: &[ScalarMatrix]) -> Subspace {
    let mut s = Subspace::new(field, len);
    for m in ms {
        s.insert(m.data());
    }
    s
}

/// The restriction `Ext^i_Λ(M, N) → Ext^i_Γ(M, N)` and its kernel.
///
/// Both groups are read off the same Λ-resolution `0 → Ω^i → P_{i−1}`: it
/// stays projective over Γ, so `Ext^i` is `Hom(Ω^i, N)` modulo the maps that
/// extend to `P_{i−1}`, over Λ and over Γ respectively.
pub fn ext_restriction_injective(
    emb: &SubalgebraEmbedding,
    m: &Representation,
    n: &Representation,
    i: usize,
    cap: usize,
) -> Result<ExtRestriction> {
    if i == 0 || i > cap {
        return Err(Error::CapExceeded(format!("Ext degree {i} outside 1..={cap}")));
    }
    let f = m.field();
    let mut cur = m.clone();
    let mut last = None;
    for _ in 0..i {
        let pc = projective_cover(&cur)?;
        cur = pc.kernel.clone();
        last = Some(pc);
    }
    let pc = last.expect("i ≥ 1");
    let omega = &pc.kernel;
    let len = n.dim() * omega.dim();
    if len == 0 {
        return Ok(ExtRestriction { degree: i, ext_ambient: 0, ext_sub: 0, kernel: 0 });
    }
    let h_lam = flat_span(f, len, &hom_space(omega, n)?);
    let ext_lam_maps: Vec<ScalarMatrix> =
        hom_space(&pc.cover, n)?.iter().map(|h| h.mul(&pc.kernel_inclusion)).collect();
    let e_lam = flat_span(f, len, &ext_lam_maps);
    let (res_omega, res_cover, res_n) = (restrict(omega, emb)?, restrict(&pc.cover, emb)?, restrict(n, emb)?);
    let h_gam = flat_span(f, len, &hom_space(&res_omega, &res_n)?);
    let ext_gam_maps: Vec<ScalarMatrix> =
        hom_space(&res_cover, &res_n)?.iter().map(|h| h.mul(&pc.kernel_inclusion)).collect();
    let e_gam = flat_span(f, len, &ext_gam_maps);
    let killed = h_lam.intersect(&e_gam);
    Ok(ExtRestriction {
        degree: i,
        ext_ambient: h_lam.dim() - e_lam.dim(),
        ext_sub: h_gam.dim() - e_gam.dim(),
        kernel: killed.dim() - e_lam.dim(),
    })
}
