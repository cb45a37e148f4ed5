//! Decomposition of a vector space into indecomposable summands, given a
//! spanning set of its full endomorphism algebra.
//!
//! A summand `U` is split by an element `h ∈ End(U)` with an eigenvalue `c`
//! whose generalized eigenspace is proper: `U = ker (h−c)^e ⊕ im (h−c)^e`.
//! A summand is accepted as indecomposable once `End(U)` is shown local: a
//! basis `b_t` with single eigenvalues `c_t` such that the `b_t − c_t`
//! generate a nilpotent algebra. The eigenvalue map `χ: End(U) → k` is kept
//! for isomorphism and radical computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::{vecops, ScalarMatrix, Subspace};
use crate::poly::{min_poly, roots, Poly};

/// Random candidates tried after the basis before giving up on a summand.
const RANDOM_ATTEMPTS: usize = 300;

pub fn flatten(m: &ScalarMatrix) -> Vec<Scalar> {
    m.data().to_vec()
}

pub fn unflatten(field: FieldDescriptor, rows: usize, cols: usize, v: &[Scalar]) -> ScalarMatrix {
    debug_assert_eq!(v.len(), rows * cols);
    ScalarMatrix::from_data_unchecked(field, rows, cols, v.to_vec())
}

/// An indecomposable summand `U ⊆ X` with `projection · inclusion = 1_U`.
#[derive(Clone, Debug)]
pub struct LocalSummand {
    pub inclusion: ScalarMatrix,
    pub projection: ScalarMatrix,
    end_space: Subspace,
    chi_values: Vec<Scalar>,
}

impl LocalSummand {
    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    pub fn end_dim(&self) -> usize {
        self.end_space.dim()
    }

    pub fn end_basis(&self) -> Vec<ScalarMatrix> {
        let u = self.dim();
        self.end_space.basis().iter().map(|v| unflatten(self.end_space.field(), u, u, v)).collect()
    }

    /// `π f ι` for an endomorphism `f` of the ambient space.
    pub fn restrict(&self, f: &ScalarMatrix) -> ScalarMatrix {
        self.projection.mul(f).mul(&self.inclusion)
    }

    /// The eigenvalue of `f ∈ End(U)`.
    pub fn chi(&self, f: &ScalarMatrix) -> Result<Scalar> {
        let coords = self
            .end_space
            .echelon_coords(&flatten(f))
            .ok_or_else(|| Error::AlgorithmFailure("matrix is not an endomorphism of the summand".into()))?;
        let mut acc = self.end_space.field().zero();
        for (c, v) in coords.iter().zip(&self.chi_values) {
            if !c.is_zero() {
                acc = &acc + &(c * v);
            }
        }
        Ok(acc)
    }
}

enum Class {
    Split(Scalar),
    Single(Scalar),
    NoRoot,
}

fn classify(h: &ScalarMatrix) -> (Class, Poly) {
    let m = min_poly(h);
    let rts = roots(&m);
    let Some(c) = rts.first().cloned() else { return (Class::NoRoot, m) };
    if rts.len() == 1 && multiplicity(&m, &c) == m.degree().unwrap_or(0) {
        (Class::Single(c), m)
    } else {
        (Class::Split(c), m)
    }
}

fn multiplicity(m: &Poly, c: &Scalar) -> usize {
    let lin = Poly::linear(c);
    let mut m = m.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.divrem(&lin);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

fn shifted(h: &ScalarMatrix, c: &Scalar) -> ScalarMatrix {
    h.sub(&ScalarMatrix::scalar(h.field(), h.rows(), c))
}

/// True when the algebra generated by `ns` is nilpotent.
pub fn generates_nilpotent(field: FieldDescriptor, u: usize, ns: &[ScalarMatrix]) -> bool {
    let mut w: Vec<Vec<Scalar>> = (0..u).map(|i| vecops::unit(field, u, i)).collect();
    loop {
        if w.is_empty() {
            return true;
        }
        let mut next = Subspace::new(field, u);
        for n in ns {
            for v in &w {
                next.insert(&n.mul_vec(v));
            }
        }
        if next.dim() >= w.len() {
            return false;
        }
        w = next.basis().to_vec();
    }
}

fn random_scalar(field: FieldDescriptor, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldDescriptor::Prime(p) => Scalar::Mod { value: rng.gen_range(0..p), p },
        _ => field.from_int(rng.gen_range(-3..=3)),
    }
}

fn random_combination(field: FieldDescriptor, u: usize, basis: &[ScalarMatrix], rng: &mut ChaCha8Rng) -> ScalarMatrix {
    let mut acc = ScalarMatrix::zeros(field, u, u);
    for b in basis {
        let c = random_scalar(field, rng);
        if !c.is_zero() {
            acc.axpy(&c, b);
        }
    }
    acc
}

enum Analysis {
    Split(ScalarMatrix, Scalar, Poly),
    Local(Vec<Scalar>),
}

fn analyze(field: FieldDescriptor, u: usize, basis: &[ScalarMatrix], rng: &mut ChaCha8Rng) -> Result<Analysis> {
    let mut eig = Vec::with_capacity(basis.len());
    let mut unsplit = false;
    for b in basis {
        match classify(b) {
            (Class::Split(c), m) => return Ok(Analysis::Split(b.clone(), c, m)),
            (Class::Single(c), _) => eig.push(Some(c)),
            (Class::NoRoot, _) => {
                unsplit = true;
                eig.push(None);
            }
        }
    }
    let mut nils = Vec::new();
    if eig.iter().all(Option::is_some) {
        let eig: Vec<Scalar> = eig.into_iter().map(Option::unwrap).collect();
        nils = basis.iter().zip(&eig).map(|(b, c)| shifted(b, c)).collect();
        if generates_nilpotent(field, u, &nils) {
            return Ok(Analysis::Local(eig));
        }
    }
    for attempt in 0..RANDOM_ATTEMPTS {
        let h = if attempt % 3 == 2 && !nils.is_empty() {
            let a = random_combination(field, u, &nils, rng);
            let b = random_combination(field, u, &nils, rng);
            a.mul(&b).add(&random_combination(field, u, basis, rng))
        } else {
            random_combination(field, u, basis, rng)
        };
        match classify(&h) {
            (Class::Split(c), m) => return Ok(Analysis::Split(h, c, m)),
            (Class::NoRoot, _) => unsplit = true,
            (Class::Single(_), _) => {}
        }
    }
    if unsplit {
        Err(Error::SplitError(format!(
            "an endomorphism algebra of a {u}-dimensional summand is not split over {}",
            field.pretty()
        )))
    } else {
        Err(Error::AlgorithmFailure(format!(
            "no splitting element found for a {u}-dimensional summand after {RANDOM_ATTEMPTS} attempts"
        )))
    }
}

struct Piece {
    inclusion: ScalarMatrix,
    projection: ScalarMatrix,
    space: Subspace,
}

impl Piece {
    fn new(field: FieldDescriptor, inclusion: ScalarMatrix, projection: ScalarMatrix, gens: &[ScalarMatrix]) -> Piece {
        let u = inclusion.cols();
        let mut space = Subspace::new(field, u * u);
        space.insert(&flatten(&ScalarMatrix::identity(field, u)));
        for g in gens {
            space.insert(&flatten(g));
        }
        Piece { inclusion, projection, space }
    }
}

/// Splits `k^dim` into indecomposable summands for the algebra spanned by
/// `endos`, which must be closed under composition and span the full
/// endomorphism algebra of the module being decomposed.
pub fn decompose_by_endomorphisms(
    field: FieldDescriptor,
    dim: usize,
    endos: &[ScalarMatrix],
    seed: u64,
) -> Result<Vec<LocalSummand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if dim == 0 {
        return Ok(out);
    }
    let mut stack =
        vec![Piece::new(field, ScalarMatrix::identity(field, dim), ScalarMatrix::identity(field, dim), endos)];
    while let Some(piece) = stack.pop() {
        let u = piece.inclusion.cols();
        let basis: Vec<ScalarMatrix> = piece.space.basis().iter().map(|v| unflatten(field, u, u, v)).collect();
        match analyze(field, u, &basis, &mut rng)? {
            Analysis::Local(chi_values) => out.push(LocalSummand {
                inclusion: piece.inclusion,
                projection: piece.projection,
                end_space: piece.space,
                chi_values,
            }),
            Analysis::Split(h, c, m) => {
                let e = multiplicity(&m, &c);
                let n = shifted(&h, &c).pow(e as u64);
                let ker = n.kernel();
                let img = Subspace::spanned_by(field, u, &n.columns());
                let k = ker.len();
                debug_assert!(k > 0 && img.dim() > 0 && k + img.dim() == u);
                let mut cols = ker;
                cols.extend(img.basis().iter().cloned());
                let s = ScalarMatrix::from_cols(field, u, &cols);
                let sinv = s.inverse()?;
                let all: Vec<usize> = (0..u).collect();
                let parts = [(0..k).collect::<Vec<_>>(), (k..u).collect::<Vec<_>>()];
                // push the image first so the kernel is processed next
                for rows in parts.iter().rev() {
                    let incl_local = s.select(&all, rows);
                    let proj_local = sinv.select(rows, &all);
                    let gens: Vec<ScalarMatrix> = basis.iter().map(|b| proj_local.mul(b).mul(&incl_local)).collect();
                    stack.push(Piece::new(
                        field,
                        piece.inclusion.mul(&incl_local),
                        proj_local.mul(&piece.projection),
                        &gens,
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Whether two indecomposables are isomorphic, given spanning sets of
/// `Hom(U_a, U_b)` and `Hom(U_b, U_a)`: some `g∘f` must be invertible.
pub fn isomorphic_by_pairing(a: &LocalSummand, ab: &[ScalarMatrix], ba: &[ScalarMatrix]) -> Result<bool> {
    for f in ab {
        if f.is_zero() {
            continue;
        }
        for g in ba {
            if g.is_zero() {
                continue;
            }
            if !a.chi(&g.mul(f))?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The radical maps inside `Hom(U_a, U_b)`: those `f` with `χ_a(g∘f) = 0`
/// for every `g ∈ Hom(U_b, U_a)`. Returns a basis.
pub fn radical_maps(
    field: FieldDescriptor,
    a: &LocalSummand,
    ab: &[ScalarMatrix],
    ba: &[ScalarMatrix],
) -> Result<Vec<ScalarMatrix>> {
    if ab.is_empty() {
        return Ok(Vec::new());
    }
    if ba.is_empty() {
        return Ok(ab.to_vec());
    }
    // rows: g index; cols: f index
    let mut m = ScalarMatrix::zeros(field, ba.len(), ab.len());
    for (j, f) in ab.iter().enumerate() {
        for (i, g) in ba.iter().enumerate() {
            m.set(i, j, a.chi(&g.mul(f))?);
        }
    }
    let (r, c) = (ab[0].rows(), ab[0].cols());
    Ok(m.kernel()
        .into_iter()
        .map(|coeffs| {
            let mut acc = ScalarMatrix::zeros(field, r, c);
            for (x, f) in coeffs.iter().zip(ab) {
                if !x.is_zero() {
                    acc.axpy(x, f);
                }
            }
            acc
        })
        .collect())
}

/// Echelon basis of the span of some matrices of equal shape.
pub fn matrix_span(field: FieldDescriptor, rows: usize, cols: usize, ms: &[ScalarMatrix]) -> Vec<ScalarMatrix> {
    let mut s = Subspace::new(field, rows * cols);
    for m in ms {
        s.insert(&flatten(m));
    }
    s.basis().iter().map(|v| unflatten(field, rows, cols, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_plus_block(f: FieldDescriptor) -> (usize, Vec<ScalarMatrix>) {
        // module k ⊕ k[x]/(x²) over k[x]/(x²): End has dim 1 + 2 + 1 + 1 = 5
        let x = ScalarMatrix::from_ints(f, 3, 3, &[0, 0, 0, 0, 0, 0, 0, 1, 0]);
        let mut endos = vec![ScalarMatrix::identity(f, 3), x];
        let e1 = ScalarMatrix::from_ints(f, 3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let to_soc = ScalarMatrix::from_ints(f, 3, 3, &[0, 0, 0, 0, 0, 0, 1, 0, 0]);
        let from_top = ScalarMatrix::from_ints(f, 3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 0]);
        endos.extend([e1, to_soc, from_top]);
        (3, endos)
    }

    #[test]
    fn splits_into_local_pieces() {
        for f in [FieldDescriptor::Rationals, FieldDescriptor::Prime(2)] {
            let (d, endos) = diag_plus_block(f);
            let parts = decompose_by_endomorphisms(f, d, &endos, 0).unwrap();
            let mut dims: Vec<usize> = parts.iter().map(LocalSummand::dim).collect();
            dims.sort();
            assert_eq!(dims, vec![1, 2]);
            for p in &parts {
                assert!(p.projection.mul(&p.inclusion).is_identity());
            }
        }
    }

    #[test]
    fn nilpotency_detection() {
        let f = FieldDescriptor::Rationals;
        let n = ScalarMatrix::from_ints(f, 2, 2, &[0, 1, 0, 0]);
        assert!(generates_nilpotent(f, 2, std::slice::from_ref(&n)));
        assert!(!generates_nilpotent(f, 2, &[n.clone(), n.transpose()]));
    }

    #[test]
    fn unsplit_endomorphisms_report_split_error() {
        // rotation by 90 degrees spans ℚ(i) inside M_2(ℚ)
        let f = FieldDescriptor::Rationals;
        let r = ScalarMatrix::from_ints(f, 2, 2, &[0, -1, 1, 0]);
        let err = decompose_by_endomorphisms(f, 2, &[r], 0).unwrap_err();
        assert!(matches!(err, Error::SplitError(_)));
    }
}
