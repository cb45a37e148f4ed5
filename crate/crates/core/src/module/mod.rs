//! Finite-dimensional left modules given by matrices for the algebra
//! generators, and the constructions on them.
//!
//! Action matrices act on column vectors. The action of an arbitrary basis
//! element is derived lazily from the generator words and cached per module.

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Algebra, SubalgebraEmbedding};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::{vecops, ScalarMatrix, Subspace};

mod cover;
mod decompose;
mod hom;
mod induce;
mod mackey;
mod serial;

pub use cover::{
    ext_group, global_dimension, pim_module, projective_cover, projective_dimension, radical_series, radical_submodule,
    simple_modules, stable_hom_dim, syzygy, top_multiplicities, ProjectiveCover,
};
pub use decompose::{
    add_member, add_member_by_summands, add_member_by_trace, decompose, decompose_with_endomorphisms,
    isomorphic_summands, trace_ideal_dim, AddMembership, AddWitness, DecompositionReport, Summand, DEFAULT_SEED,
};
pub use hom::{hom_from_induced, hom_space, is_homomorphism, ModuleHom};
pub use induce::{induce, outer_tensor, restrict, transport};
pub use mackey::{cyclic_jordan_type, mackey_check, MackeyReport};
pub use serial::{serial_indecomposables, SerialData};

/// How a module was built; enables structural shortcuts for `Hom`.
#[derive(Clone, Debug)]
pub enum Origin {
    Generic,
    /// The left regular module on the algebra basis.
    Regular,
    /// `Λ ⊗_Γ base` on the basis `a_j ⊗ m_k ↦ j·dim base + k`.
    Induced {
        emb: Arc<SubalgebraEmbedding>,
        base: Arc<Representation>,
    },
}

#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<Algebra>,
    dim: usize,
    actions: Vec<ScalarMatrix>,
    label: String,
    origin: Origin,
    cache: Arc<Vec<OnceLock<ScalarMatrix>>>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.actions == other.actions && same_arc(&self.algebra, &other.algebra)
    }
}

impl Representation {
    /// Wraps generator matrices; shapes and fields are checked, relations are
    /// not (see [`Representation::verify`]).
    pub fn new(
        algebra: Arc<Algebra>,
        dim: usize,
        actions: Vec<ScalarMatrix>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if actions.len() != algebra.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} generators",
                actions.len(),
                algebra.num_generators()
            )));
        }
        for m in &actions {
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(m.field().to_string(), algebra.field().to_string()));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix is {}x{}, module has dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self::from_trusted(algebra, dim, actions, label.into(), Origin::Generic))
    }

    pub(crate) fn from_trusted(
        algebra: Arc<Algebra>,
        dim: usize,
        actions: Vec<ScalarMatrix>,
        label: String,
        origin: Origin,
    ) -> Self {
        let cache = Arc::new((0..algebra.dim()).map(|_| OnceLock::new()).collect());
        Representation { algebra, dim, actions, label, origin, cache }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldDescriptor {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Forgets the construction history.
    pub fn as_generic(&self) -> Self {
        Self::from_trusted(self.algebra.clone(), self.dim, self.actions.clone(), self.label.clone(), Origin::Generic)
    }

    pub fn actions(&self) -> &[ScalarMatrix] {
        &self.actions
    }

    pub fn generator_action(&self, g: usize) -> &ScalarMatrix {
        &self.actions[g]
    }

    /// `ρ(b_k)`, built from `ρ(b_{k'})·ρ(gen)` along the word prefixes.
    pub fn basis_action(&self, k: usize) -> &ScalarMatrix {
        if let Some(m) = self.cache[k].get() {
            return m;
        }
        let word = &self.algebra.words()[k];
        let m = match (self.algebra.word_parent(k), word.len()) {
            (_, 0) => ScalarMatrix::identity(self.field(), self.dim),
            (_, 1) => self.actions[word[0]].clone(),
            (Some((prefix, g)), _) if prefix != k => self.basis_action(prefix).mul(&self.actions[g]),
            _ => {
                let mut acc = ScalarMatrix::identity(self.field(), self.dim);
                for &g in word {
                    acc = acc.mul(&self.actions[g]);
                }
                acc
            }
        };
        let _ = self.cache[k].set(m);
        self.cache[k].get().expect("just set")
    }

    /// `ρ(x)` for an arbitrary algebra element.
    pub fn act(&self, x: &[Scalar]) -> ScalarMatrix {
        let mut acc = ScalarMatrix::zeros(self.field(), self.dim, self.dim);
        for (k, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc.axpy(c, self.basis_action(k));
            }
        }
        acc
    }

    /// `x·v`.
    pub fn apply(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vecops::zeros(self.field(), self.dim);
        for (k, c) in x.iter().enumerate() {
            if !c.is_zero() {
                vecops::axpy(&mut acc, c, &self.basis_action(k).mul_vec(v));
            }
        }
        acc
    }

    /// Checks `ρ(1) = 1` and `ρ(b_i)ρ(b_j) = ρ(b_i b_j)` for all basis pairs.
    pub fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        if !self.act(a.unit()).is_identity() {
            return Err(Error::RelationViolation(format!("{}: the unit does not act as the identity", self.label)));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.basis_action(i).mul(self.basis_action(j));
                let mut rhs = ScalarMatrix::zeros(self.field(), self.dim, self.dim);
                for (k, c) in a.basis_product(i, j) {
                    rhs.axpy(c, self.basis_action(*k));
                }
                if lhs != rhs {
                    return Err(Error::RelationViolation(format!(
                        "{}: action is not multiplicative on ({}, {})",
                        self.label,
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Text form: a header followed by the nonzero entries `g i j scalar`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "repdim-module v1");
        let _ = writeln!(out, "algebra {}", self.algebra.name());
        let _ = writeln!(out, "field {}", self.field());
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "label {}", self.label);
        let _ = writeln!(out, "generators {}", self.actions.len());
        for (g, m) in self.actions.iter().enumerate() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let c = m.get(i, j);
                    if !c.is_zero() {
                        let _ = writeln!(out, "{g} {i} {j} {c}");
                    }
                }
            }
        }
        out.push_str("end\n");
        out
    }

    /// Parses [`Representation::to_text`] over `algebra` and verifies the
    /// module axioms.
    pub fn from_text(text: &str, algebra: Arc<Algebra>) -> Result<Self> {
        let bad = |why: String| Error::Parse(format!("module text: {why}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some("repdim-module v1") {
            return Err(bad("missing header".into()));
        }
        let mut field_seen = None;
        let mut dim = None;
        let mut label = String::new();
        let mut ngens = None;
        let mut actions: Vec<ScalarMatrix> = Vec::new();
        for line in lines.by_ref() {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            match key {
                "algebra" => {
                    if rest != algebra.name() {
                        return Err(bad(format!("module is over '{rest}', not '{}'", algebra.name())));
                    }
                }
                "field" => field_seen = Some(rest.parse::<FieldDescriptor>()?),
                "dim" => dim = Some(rest.parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "label" => label = rest.to_string(),
                "generators" => {
                    let g = rest.parse::<usize>().map_err(|e| bad(e.to_string()))?;
                    let d = dim.ok_or_else(|| bad("dim must precede generators".into()))?;
                    actions = vec![ScalarMatrix::zeros(algebra.field(), d, d); g];
                    ngens = Some(g);
                    break;
                }
                _ => return Err(bad(format!("unexpected line '{line}'"))),
            }
        }
        if field_seen != Some(algebra.field()) {
            return Err(Error::FieldMismatch(
                field_seen.map(|f| f.to_string()).unwrap_or_default(),
                algebra.field().to_string(),
            ));
        }
        let (dim, _) = dim.zip(ngens).ok_or_else(|| bad("missing dim or generators".into()))?;
        let mut ended = false;
        for line in lines {
            if line == "end" {
                ended = true;
                break;
            }
            let mut parts = line.splitn(4, ' ');
            let mut idx = || -> Result<usize> {
                parts.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad(format!("bad entry '{line}'")))
            };
            let (g, i, j) = (idx()?, idx()?, idx()?);
            let c = Scalar::parse(algebra.field(), parts.next().ok_or_else(|| bad(format!("bad entry '{line}'")))?)?;
            if g >= actions.len() || i >= dim || j >= dim {
                return Err(bad(format!("entry out of range '{line}'")));
            }
            actions[g].set(i, j, c);
        }
        if !ended {
            return Err(bad("missing end marker".into()));
        }
        let m = Representation::new(algebra, dim, actions, label)?;
        m.verify()?;
        Ok(m)
    }
}

pub(crate) fn same_arc(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn same_algebra(a: &Representation, b: &Representation) -> Result<()> {
    if same_arc(a.algebra(), b.algebra()) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "modules over different algebras: {} and {}",
            a.algebra().name(),
            b.algebra().name()
        )))
    }
}

/// The left regular module `A` on its own basis.
pub fn regular_module(a: &Arc<Algebra>) -> Representation {
    let actions = a.generators().iter().map(|g| a.left_mul_matrix(g)).collect();
    Representation::from_trusted(a.clone(), a.dim(), actions, format!("{} (regular)", a.name()), Origin::Regular)
}

/// The zero module.
pub fn zero_module(a: &Arc<Algebra>) -> Representation {
    let f = a.field();
    let actions = (0..a.num_generators()).map(|_| ScalarMatrix::zeros(f, 0, 0)).collect();
    Representation::from_trusted(a.clone(), 0, actions, "0".into(), Origin::Generic)
}

/// `M_1 ⊕ ⋯ ⊕ M_r` with block-diagonal actions.
pub fn direct_sum(mods: &[&Representation]) -> Result<Representation> {
    let first = mods.first().ok_or_else(|| Error::InvalidParameter("empty direct sum".into()))?;
    for m in &mods[1..] {
        same_algebra(first, m)?;
    }
    let a = first.algebra().clone();
    let dim = mods.iter().map(|m| m.dim()).sum();
    let actions = (0..a.num_generators())
        .map(|g| {
            let mut acc = ScalarMatrix::zeros(a.field(), 0, 0);
            for m in mods {
                acc = acc.direct_sum(m.generator_action(g));
            }
            acc
        })
        .collect();
    let label = mods.iter().map(|m| m.label().to_string()).collect::<Vec<_>>().join(" ⊕ ");
    Ok(Representation::from_trusted(a, dim, actions, label, Origin::Generic))
}

/// The smallest submodule containing `seeds`, as an echelon basis.
pub fn generated_submodule(m: &Representation, seeds: &[Vec<Scalar>]) -> Subspace {
    let mut span = Subspace::new(m.field(), m.dim());
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for s in seeds {
        if span.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for a in m.actions() {
            let w = a.mul_vec(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span
}

/// The submodule on an invariant subspace, with its inclusion matrix whose
/// columns are the subspace's echelon basis.
pub fn submodule(m: &Representation, sub: &Subspace) -> Result<(Representation, ScalarMatrix)> {
    let f = m.field();
    let basis = sub.basis();
    let mut actions = Vec::with_capacity(m.actions().len());
    for a in m.actions() {
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|v| {
                sub.echelon_coords(&a.mul_vec(v))
                    .ok_or_else(|| Error::InvalidParameter("subspace is not a submodule".into()))
            })
            .collect::<Result<_>>()?;
        actions.push(ScalarMatrix::from_cols(f, basis.len(), &cols));
    }
    let incl = ScalarMatrix::from_cols(f, m.dim(), basis);
    let label = format!("sub({})", m.label());
    Ok((Representation::from_trusted(m.algebra().clone(), basis.len(), actions, label, Origin::Generic), incl))
}

/// `M / S` on the complement of the pivot coordinates of `S`, with the
/// projection matrix `M → M/S`.
pub fn quotient_module(m: &Representation, sub: &Subspace) -> Result<(Representation, ScalarMatrix)> {
    let f = m.field();
    let free = sub.complement_units();
    let q = free.len();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let (_, res) = sub.reduce(v);
        free.iter().map(|&i| res[i].clone()).collect()
    };
    let mut actions = Vec::with_capacity(m.actions().len());
    for a in m.actions() {
        for b in sub.basis() {
            if !sub.contains(&a.mul_vec(b)) {
                return Err(Error::InvalidParameter("subspace is not a submodule".into()));
            }
        }
        let cols: Vec<Vec<Scalar>> = free.iter().map(|&i| project(&a.col(i))).collect();
        actions.push(ScalarMatrix::from_cols(f, q, &cols));
    }
    let cols: Vec<Vec<Scalar>> = (0..m.dim()).map(|i| project(&vecops::unit(f, m.dim(), i))).collect();
    let proj = ScalarMatrix::from_cols(f, q, &cols);
    let label = format!("{}/sub", m.label());
    Ok((Representation::from_trusted(m.algebra().clone(), q, actions, label, Origin::Generic), proj))
}

/// The submodule `image(ι)` of `m` carried to its own basis via `π`, for a
/// split summand with `π ι = 1`.
pub fn summand_module(m: &Representation, inclusion: &ScalarMatrix, projection: &ScalarMatrix) -> Representation {
    let actions = m.actions().iter().map(|a| projection.mul(a).mul(inclusion)).collect();
    Representation::from_trusted(
        m.algebra().clone(),
        inclusion.cols(),
        actions,
        format!("summand({})", m.label()),
        Origin::Generic,
    )
}
