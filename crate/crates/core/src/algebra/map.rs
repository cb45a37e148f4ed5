//! Unital algebra homomorphisms, including the inclusion of the type-A Hecke
//! algebra into types B and D and the projection back.

use std::sync::Arc;

use super::{Algebra, AlgebraKind};
use crate::coxeter::CoxeterType;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::ScalarMatrix;

/// A unital homomorphism; `matrix` is `dim target × dim source`.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    matrix: ScalarMatrix,
}

impl AlgebraMap {
    /// Wraps a linear map after checking unit and all basis products.
    pub fn from_matrix(source: Arc<Algebra>, target: Arc<Algebra>, matrix: ScalarMatrix) -> Result<AlgebraMap> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field().to_string(), target.field().to_string()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let map = AlgebraMap { source, target, matrix };
        map.verify()?;
        Ok(map)
    }

    fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.unit()) != t.unit() {
            return Err(Error::RelationViolation(format!("{} → {} does not preserve the unit", s.name(), t.name())));
        }
        let images = self.matrix.columns();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(&super::sparse_to_dense(s.field(), s.dim(), s.basis_product(i, j)));
                let rhs = t.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::RelationViolation(format!(
                        "{} → {} is not multiplicative on ({}, {})",
                        s.name(),
                        t.name(),
                        s.labels()[i],
                        s.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AlgebraMap) -> Result<AlgebraMap> {
        if !Arc::ptr_eq(&inner.target, &self.source) && *inner.target != *self.source {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        Ok(AlgebraMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// The unital map sending generator `g` of `source` to `images[g]`.
///
/// Basis elements are mapped along their generator words; the result is
/// checked to be multiplicative, which certifies that the images satisfy
/// the defining relations of `source`.
pub fn algebra_map(source: Arc<Algebra>, target: Arc<Algebra>, images: &[Vec<Scalar>]) -> Result<AlgebraMap> {
    if images.len() != source.num_generators() {
        return Err(Error::DimensionMismatch(format!(
            "{} generator images given, {} needed",
            images.len(),
            source.num_generators()
        )));
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(source.dim());
    for k in 0..source.dim() {
        let col = match (source.word_parent(k), source.words()[k].as_slice()) {
            (Some((prefix, g)), _) if prefix < k => target.mul(&cols[prefix], &images[g]),
            (_, word) => {
                let mut acc = target.unit().to_vec();
                for &g in word {
                    acc = target.mul(&acc, &images[g]);
                }
                acc
            }
        };
        cols.push(col);
    }
    let matrix = ScalarMatrix::from_cols(source.field(), target.dim(), &cols);
    AlgebraMap::from_matrix(source, target, matrix)
}

/// Image of `T_0` under the projection from type B or D onto type A.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ProjectionChoice {
    /// `T_0 ↦ Q·1` in type B and `T_0 ↦ T_1` in type D.
    #[default]
    Standard,
    /// `T_0 ↦` the given element of the type-A algebra.
    CustomT0(Vec<Scalar>),
}

fn hecke_params(a: &Algebra) -> Result<(CoxeterType, usize, Scalar, Option<Scalar>)> {
    match a.kind() {
        AlgebraKind::Hecke { ctype, n, q, big_q } => Ok((*ctype, *n, q.clone(), big_q.clone())),
        _ => Err(Error::InvalidParameter(format!("{} is not a Hecke algebra", a.name()))),
    }
}

fn check_pair(ha: &Algebra, hx: &Algebra) -> Result<()> {
    let (ta, na, qa, _) = hecke_params(ha)?;
    let (tx, nx, qx, _) = hecke_params(hx)?;
    if ta != CoxeterType::A || tx == CoxeterType::A || na != nx || qa != qx {
        return Err(Error::InvalidParameter(format!(
            "expected H(A_{{n-1}}) and H of type B/D on the same n and q, got {} and {}",
            ha.name(),
            hx.name()
        )));
    }
    Ok(())
}

/// `i: H(A_{n−1}) → H(B_n)` or `H(D_n)`, `T_i ↦ T_i`.
pub fn hecke_inclusion_a_into(ha: Arc<Algebra>, hx: Arc<Algebra>) -> Result<AlgebraMap> {
    check_pair(&ha, &hx)?;
    let images: Vec<Vec<Scalar>> = hx.generators()[1..].to_vec();
    algebra_map(ha, hx, &images)
}

/// `π: H(B_n)` or `H(D_n) → H(A_{n−1})`, `T_i ↦ T_i` for `i ≥ 1`.
pub fn hecke_projection_onto_a(hx: Arc<Algebra>, ha: Arc<Algebra>, choice: &ProjectionChoice) -> Result<AlgebraMap> {
    check_pair(&ha, &hx)?;
    let (tx, _, _, big_q) = hecke_params(&hx)?;
    let t0 = match choice {
        ProjectionChoice::CustomT0(v) => v.clone(),
        ProjectionChoice::Standard => match tx {
            CoxeterType::B => {
                let bq = big_q.expect("type B carries Q");
                ha.unit().iter().map(|c| c * &bq).collect()
            }
            _ => match ha.generators().first() {
                Some(t1) => t1.clone(),
                None => return Err(Error::UnsupportedRank("type D projection needs n ≥ 2".into())),
            },
        },
    };
    let mut images = vec![t0];
    images.extend(ha.generators().iter().cloned());
    algebra_map(hx, ha, &images)
}
