//! Subalgebras `Γ ⊆ Λ` with a free right-Γ basis of `Λ`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::{build, Algebra, AlgebraKind, AlgebraMap, AlgebraParts, GroupBasis, Sparse};
use crate::coxeter::{enumerate_group, CoxeterType, SignedPerm, SubgroupData};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{vecops, ScalarMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingKind {
    Parabolic { lambda: Vec<usize> },
    GroupSubgroup,
    Scalar,
    Identity,
}

/// `Γ ⊆ Λ` together with `a_0 = 1, a_1, …, a_{r−1}` such that the products
/// `a_j·γ_k` form a basis of `Λ`.
#[derive(Clone, Debug)]
pub struct SubalgebraEmbedding {
    pub ambient: Arc<Algebra>,
    pub sub: Arc<Algebra>,
    pub kind: EmbeddingKind,
    inclusion: AlgebraMap,
    free_basis: Vec<Vec<Scalar>>,
    /// Inverse of the matrix whose column `j·dim Γ + k` is `a_j·γ_k`.
    rewrite: ScalarMatrix,
}

impl SubalgebraEmbedding {
    /// Checks freeness and precomputes the rewriting matrix.
    pub fn new(inclusion: AlgebraMap, free_basis: Vec<Vec<Scalar>>, kind: EmbeddingKind) -> Result<Self> {
        let ambient = inclusion.target.clone();
        let sub = inclusion.source.clone();
        let (dl, dg) = (ambient.dim(), sub.dim());
        if free_basis.first().map(|a| a.as_slice()) != Some(ambient.unit()) {
            return Err(Error::FreenessFailure("first free-basis element must be 1".into()));
        }
        if free_basis.len() * dg != dl {
            return Err(Error::FreenessFailure(format!(
                "{} free generators over a subalgebra of dimension {dg} cannot span dimension {dl}",
                free_basis.len()
            )));
        }
        let gamma_images = inclusion.matrix().columns();
        let mut cols = Vec::with_capacity(dl);
        for a in &free_basis {
            for g in &gamma_images {
                cols.push(ambient.mul(a, g));
            }
        }
        let phi = ScalarMatrix::from_cols(ambient.field(), dl, &cols);
        let rewrite = phi
            .inverse()
            .map_err(|_| Error::FreenessFailure(format!("the products a_j·γ_k do not span {}", ambient.name())))?;
        Ok(SubalgebraEmbedding { ambient, sub, kind, inclusion, free_basis, rewrite })
    }

    pub fn inclusion(&self) -> &AlgebraMap {
        &self.inclusion
    }

    /// Number of free generators (the index `dim Λ / dim Γ`).
    pub fn rank(&self) -> usize {
        self.free_basis.len()
    }

    pub fn free_basis(&self) -> &[Vec<Scalar>] {
        &self.free_basis
    }

    pub fn include(&self, gamma: &[Scalar]) -> Vec<Scalar> {
        self.inclusion.apply(gamma)
    }

    /// The `γ_j` with `x = Σ_j a_j·γ_j`.
    pub fn rewrite(&self, x: &[Scalar]) -> Vec<Vec<Scalar>> {
        let c = self.rewrite.mul_vec(x);
        c.chunks(self.sub.dim()).map(|ch| ch.to_vec()).collect()
    }

    /// `blocks[i][j] = γ_ij` with `x·a_j = Σ_i a_i·γ_ij`.
    pub fn action_blocks(&self, x: &[Scalar]) -> Vec<Vec<Vec<Scalar>>> {
        let r = self.rank();
        let mut blocks = vec![Vec::with_capacity(r); r];
        for a in &self.free_basis {
            let parts = self.rewrite(&self.ambient.mul(x, a));
            for (i, p) in parts.into_iter().enumerate() {
                blocks[i].push(p);
            }
        }
        blocks
    }

    /// `a_j·γ` as an element of Λ.
    pub fn free_times(&self, j: usize, gamma: &[Scalar]) -> Vec<Scalar> {
        self.ambient.mul(&self.free_basis[j], &self.include(gamma))
    }

    /// For a parabolic subalgebra, checks that Γ is isomorphic to the tensor
    /// product of the type-A Hecke algebras of the composition parts by
    /// matching structure constants under the product-of-blocks bijection.
    pub fn verify_tensor_factorization(&self) -> Result<()> {
        let EmbeddingKind::Parabolic { lambda } = &self.kind else {
            return Err(Error::InvalidParameter("not a parabolic embedding".into()));
        };
        let AlgebraKind::ParabolicHecke { q, .. } = self.sub.kind() else {
            return Err(Error::InvalidParameter("subalgebra is not parabolic Hecke".into()));
        };
        let f = self.sub.field();
        let mut acc: Option<Algebra> = None;
        for &part in lambda {
            let h = build::hecke_algebra(CoxeterType::A, part, f, q, None)?;
            acc = Some(match acc {
                None => h,
                Some(a) => build::tensor_algebra(&a, &h)?,
            });
        }
        let t = acc.expect("compositions are nonempty");
        if t.dim() != self.sub.dim() || t.num_generators() != self.sub.num_generators() {
            return Err(Error::RelationViolation("tensor factorization has the wrong size".into()));
        }
        let d = t.dim();
        let mut perm = Vec::with_capacity(d);
        for k in 0..d {
            let v = self.sub.word_element(&t.words()[k]);
            let idx = v.iter().position(|c| !c.is_zero());
            match idx {
                Some(i) if v[i].is_one() && v.iter().filter(|c| !c.is_zero()).count() == 1 => perm.push(i),
                _ => return Err(Error::RelationViolation("tensor basis does not map to the T_w basis".into())),
            }
        }
        for i in 0..d {
            for j in 0..d {
                let mut mapped: Sparse = t.basis_product(i, j).iter().map(|(k, c)| (perm[*k], c.clone())).collect();
                mapped.sort_by_key(|(k, _)| *k);
                if &mapped != self.sub.basis_product(perm[i], perm[j]) {
                    return Err(Error::RelationViolation(format!(
                        "structure constants differ on ({}, {})",
                        t.labels()[i],
                        t.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

fn parabolic_sub(
    h: &Algebra,
    elements: &[usize],
    gens: &[usize],
    words: &[Vec<usize>],
    lambda: &[usize],
    q: &Scalar,
) -> Result<Algebra> {
    let f = h.field();
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(t, &w)| (w, t)).collect();
    let gpos: HashMap<usize, usize> = gens.iter().enumerate().map(|(t, &s)| (s, t)).collect();
    let d = elements.len();
    let mut table = Vec::with_capacity(d * d);
    for &u in elements {
        for &w in elements {
            let mut row = Vec::new();
            for (k, c) in h.basis_product(u, w) {
                let t = pos.get(k).ok_or_else(|| {
                    Error::RelationViolation("parabolic span is not closed under multiplication".into())
                })?;
                row.push((*t, c.clone()));
            }
            row.sort_by_key(|(t, _)| *t);
            table.push(row);
        }
    }
    let sub_words: Vec<Vec<usize>> = elements.iter().map(|&w| words[w].iter().map(|s| gpos[s]).collect()).collect();
    let gb = h.group_basis().expect("Hecke algebras carry a group basis");
    let group_basis = GroupBasis {
        identity: pos[&gb.identity],
        inverse: elements.iter().map(|w| pos[&gb.inverse[*w]]).collect(),
        lengths: elements.iter().map(|w| gb.lengths[*w]).collect(),
    };
    let gen_vecs =
        gens.iter().map(|s| vecops::unit(f, d, pos[&h.words().iter().position(|w| w == &vec![*s]).unwrap()])).collect();
    Algebra::from_parts(AlgebraParts {
        field: f,
        name: format!("H{lambda:?}"),
        labels: elements.iter().map(|&w| h.labels()[w].clone()).collect(),
        table,
        unit: vecops::unit(f, d, pos[&gb.identity]),
        generators: Some((gen_vecs, sub_words)),
        kind: AlgebraKind::ParabolicHecke { lambda: lambda.to_vec(), q: q.clone() },
        group_basis: Some(group_basis),
    })
}

fn basis_inclusion(sub: Arc<Algebra>, ambient: Arc<Algebra>, targets: &[usize]) -> Result<AlgebraMap> {
    let f = ambient.field();
    let cols: Vec<Vec<Scalar>> = targets.iter().map(|&k| vecops::unit(f, ambient.dim(), k)).collect();
    AlgebraMap::from_matrix(sub, ambient.clone(), ScalarMatrix::from_cols(f, ambient.dim(), &cols))
}

/// The Young-type subalgebra `span{T_w : w ∈ S_λ}` of `H(A_{n−1})`, free
/// over the minimal left coset representatives `d` via `a_d = T_d`.
pub fn parabolic_subalgebra(h: Arc<Algebra>, lambda: &[usize]) -> Result<SubalgebraEmbedding> {
    let (n, q) = match h.kind() {
        AlgebraKind::Hecke { ctype: CoxeterType::A, n, q, .. } => (*n, q.clone()),
        _ => return Err(Error::InvalidParameter(format!("{} is not a type-A Hecke algebra", h.name()))),
    };
    let g = enumerate_group(CoxeterType::A, n)?;
    let gens = g.young_generator_positions(lambda)?;
    let elements = g.parabolic_elements(&gens);
    let sub = Arc::new(parabolic_sub(&h, &elements, &gens, &g.words, lambda, &q)?);
    let inclusion = basis_inclusion(sub, h.clone(), &elements)?;
    let f = h.field();
    let free_basis = g.min_left_coset_reps_for(&gens).into_iter().map(|d| vecops::unit(f, h.dim(), d)).collect();
    SubalgebraEmbedding::new(inclusion, free_basis, EmbeddingKind::Parabolic { lambda: lambda.to_vec() })
}

/// The parabolic subalgebra for the composition `(ℓ^m, 1^a)`, `n = ℓm + a`.
pub fn max_ell_parabolic(h: Arc<Algebra>, ell: usize) -> Result<SubalgebraEmbedding> {
    if ell < 2 {
        return Err(Error::InvalidParameter(format!("ℓ must be at least 2, got {ell}")));
    }
    let n = match h.kind() {
        AlgebraKind::Hecke { ctype: CoxeterType::A, n, .. } => *n,
        _ => return Err(Error::InvalidParameter(format!("{} is not a type-A Hecke algebra", h.name()))),
    };
    parabolic_subalgebra(h, &ell_composition(n, ell))
}

/// `(ℓ^m, 1^a)` with `n = ℓm + a`, `0 ≤ a < ℓ`.
pub fn ell_composition(n: usize, ell: usize) -> Vec<usize> {
    let mut lambda = vec![ell; n / ell];
    lambda.extend(std::iter::repeat_n(1, n % ell));
    lambda
}

/// `kP ⊆ kS_n` for a subgroup `P`, free over a Schreier transversal of the
/// left cosets `xP` grown by left multiplication with simple transpositions.
pub fn group_subalgebra(kg: Arc<Algebra>, p: &SubgroupData) -> Result<SubalgebraEmbedding> {
    let n = p.n;
    if !matches!(kg.kind(), AlgebraKind::Group { .. })
        || kg.dim() as u128 != crate::coxeter::group_order(CoxeterType::A, n)
    {
        return Err(Error::InvalidParameter(format!("{} is not the group algebra of S_{n}", kg.name())));
    }
    let g = enumerate_group(CoxeterType::A, n)?;
    transversal_embedding(kg, &g.elements, &g.generators, p)
}

/// `kH ⊆ kG` where `kg` was built by [`build::group_algebra`] from `g`, so
/// its basis follows `g.elements`.
pub fn group_subalgebra_in(kg: Arc<Algebra>, g: &SubgroupData, h: &SubgroupData) -> Result<SubalgebraEmbedding> {
    if kg.dim() != g.order() || !matches!(kg.kind(), AlgebraKind::Group { .. }) {
        return Err(Error::InvalidParameter(format!("{} is not the group algebra of {}", kg.name(), g.label)));
    }
    transversal_embedding(kg, &g.elements, &g.generators, h)
}

fn transversal_embedding(
    kg: Arc<Algebra>,
    elements: &[SignedPerm],
    generators: &[SignedPerm],
    p: &SubgroupData,
) -> Result<SubalgebraEmbedding> {
    let f = kg.field();
    let index: HashMap<&SignedPerm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let sub = Arc::new(build::group_algebra(p, f)?);
    let targets: Vec<usize> = p
        .elements
        .iter()
        .map(|x| {
            index.get(x).copied().ok_or_else(|| Error::InvalidParameter("subgroup is not inside the group".into()))
        })
        .collect::<Result<_>>()?;
    let inclusion = basis_inclusion(sub, kg.clone(), &targets)?;
    let coset_key = |x: &SignedPerm| p.elements.iter().map(|h| x.compose(h)).min().expect("subgroup is nonempty");
    let mut seen: HashSet<SignedPerm> = HashSet::new();
    let id = SignedPerm::identity(p.n);
    seen.insert(coset_key(&id));
    let mut reps = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in generators {
            let y = s.compose(&reps[i]);
            if seen.insert(coset_key(&y)) {
                reps.push(y);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    let free_basis = reps.iter().map(|r| vecops::unit(f, kg.dim(), index[r])).collect();
    SubalgebraEmbedding::new(inclusion, free_basis, EmbeddingKind::GroupSubgroup)
}

/// `k·1 ⊆ Λ`, free over a basis of Λ that starts with the unit.
pub fn scalar_subalgebra(lambda: Arc<Algebra>) -> Result<SubalgebraEmbedding> {
    let f = lambda.field();
    let k = Arc::new(build::truncated_poly(f, 1)?);
    let inclusion = AlgebraMap::from_matrix(
        k,
        lambda.clone(),
        ScalarMatrix::from_cols(f, lambda.dim(), &[lambda.unit().to_vec()]),
    )?;
    let mut span = Subspace::new(f, lambda.dim());
    span.insert(lambda.unit());
    let mut free_basis = vec![lambda.unit().to_vec()];
    for k in 0..lambda.dim() {
        let b = lambda.basis_element(k);
        if span.insert(&b) {
            free_basis.push(b);
        }
    }
    SubalgebraEmbedding::new(inclusion, free_basis, EmbeddingKind::Scalar)
}

/// `Λ ⊆ Λ` with the single free generator 1.
pub fn identity_subalgebra(lambda: Arc<Algebra>) -> Result<SubalgebraEmbedding> {
    let f = lambda.field();
    let inclusion = AlgebraMap::from_matrix(lambda.clone(), lambda.clone(), ScalarMatrix::identity(f, lambda.dim()))?;
    SubalgebraEmbedding::new(inclusion, vec![lambda.unit().to_vec()], EmbeddingKind::Identity)
}
