//! Finite-dimensional algebras given by a labeled basis and sparse
//! structure constants.
//!
//! Every algebra carries a designated generating set together with a word
//! for each basis element: basis element `k` equals the ordered product of
//! the generators listed in `words[k]` (the empty word is the unit). Module
//! actions are stored only for the generators and extended along these words.

mod build;
mod embed;
mod map;
mod structure;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

pub use build::{
    group_algebra, group_algebra_symmetric, hecke_algebra, matrix_algebra, tensor_algebra, truncated_poly,
    upper_triangular_algebra,
};
pub use embed::{
    ell_composition, group_subalgebra, group_subalgebra_in, identity_subalgebra, max_ell_parabolic,
    parabolic_subalgebra, scalar_subalgebra, EmbeddingKind, SubalgebraEmbedding,
};
pub use map::{algebra_map, hecke_inclusion_a_into, hecke_projection_onto_a, AlgebraMap, ProjectionChoice};
pub use structure::{
    check_nilpotent_ideal, lift_idempotent, radical, radical_dickson, radical_ronyai, wedderburn, WedderburnData,
};

use crate::coxeter::CoxeterType;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::{vecops, ScalarMatrix};

/// Sparse algebra element or product: `(basis index, coefficient)` pairs.
pub type Sparse = Vec<(usize, Scalar)>;

/// What an algebra was built as; used by forms and reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Hecke { ctype: CoxeterType, n: usize, q: Scalar, big_q: Option<Scalar> },
    ParabolicHecke { lambda: Vec<usize>, q: Scalar },
    Group { label: String },
    Tensor,
    TruncatedPoly { n: usize },
    Endomorphism,
    Generic,
}

/// Basis indexed by a finite group (or Coxeter group, for Hecke algebras).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupBasis {
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub lengths: Vec<usize>,
}

#[derive(Debug)]
pub struct Algebra {
    field: FieldDescriptor,
    dim: usize,
    name: String,
    labels: Vec<String>,
    table: Vec<Sparse>,
    unit: Vec<Scalar>,
    generators: Vec<Vec<Scalar>>,
    words: Vec<Vec<usize>>,
    kind: AlgebraKind,
    group_basis: Option<GroupBasis>,
    /// `word_parent[k] = Some((k', g))` when `b_k = b_k' · gen_g`.
    word_parent: Vec<Option<(usize, usize)>>,
    wedderburn_cache: OnceLock<std::result::Result<Arc<WedderburnData>, Error>>,
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.dim == o.dim
            && self.name == o.name
            && self.labels == o.labels
            && self.table == o.table
            && self.unit == o.unit
            && self.generators == o.generators
            && self.words == o.words
            && self.kind == o.kind
            && self.group_basis == o.group_basis
    }
}

/// Raw parts for [`Algebra::from_parts`].
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub field: FieldDescriptor,
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Sparse>,
    pub unit: Vec<Scalar>,
    /// `None` marks the full basis as the generating set.
    pub generators: Option<GeneratorWords>,
    pub kind: AlgebraKind,
    pub group_basis: Option<GroupBasis>,
}

/// Generator coordinates and, for each basis element, a word in them.
pub type GeneratorWords = (Vec<Vec<Scalar>>, Vec<Vec<usize>>);

impl Algebra {
    /// Assembles an algebra and checks that generator words reproduce the basis.
    pub fn from_parts(parts: AlgebraParts) -> Result<Algebra> {
        let dim = parts.labels.len();
        if parts.table.len() != dim * dim || parts.unit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "table has {} entries and unit {} for dimension {dim}",
                parts.table.len(),
                parts.unit.len()
            )));
        }
        let (generators, words) = match parts.generators {
            Some(gw) => gw,
            None => {
                let gens = (0..dim).map(|k| vecops::unit(parts.field, dim, k)).collect();
                let words = (0..dim).map(|k| vec![k]).collect();
                (gens, words)
            }
        };
        if words.len() != dim {
            return Err(Error::DimensionMismatch("one word per basis element required".into()));
        }
        let mut by_word: HashMap<&[usize], usize> = HashMap::new();
        for (k, w) in words.iter().enumerate() {
            by_word.insert(w.as_slice(), k);
        }
        let word_parent = words
            .iter()
            .map(|w| match w.split_last() {
                Some((&g, rest)) if !rest.is_empty() => by_word.get(rest).map(|&k| (k, g)),
                _ => None,
            })
            .collect();
        let alg = Algebra {
            field: parts.field,
            dim,
            name: parts.name,
            labels: parts.labels,
            table: parts.table,
            unit: parts.unit,
            generators,
            words,
            kind: parts.kind,
            group_basis: parts.group_basis,
            word_parent,
            wedderburn_cache: OnceLock::new(),
        };
        alg.check_words()?;
        Ok(alg)
    }

    fn check_words(&self) -> Result<()> {
        for k in 0..self.dim {
            let v = self.word_element(&self.words[k]);
            if v != vecops::unit(self.field, self.dim, k) {
                return Err(Error::RelationViolation(format!(
                    "word {:?} does not evaluate to basis element {}",
                    self.words[k], self.labels[k]
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn group_basis(&self) -> Option<&GroupBasis> {
        self.group_basis.as_ref()
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn word_parent(&self, k: usize) -> Option<(usize, usize)> {
        self.word_parent[k]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vecops::zeros(self.field, self.dim)
    }

    pub fn basis_element(&self, k: usize) -> Vec<Scalar> {
        vecops::unit(self.field, self.dim, k)
    }

    /// Sparse product `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product(i, j)
            .iter()
            .find(|(t, _)| *t == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_element();
        let bnz: Vec<(usize, &Scalar)> = b.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &bnz {
                let xy = x * y;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    /// Product of generators along a word.
    pub fn word_element(&self, word: &[usize]) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for &g in word {
            acc = self.mul(&acc, &self.generators[g]);
        }
        acc
    }

    /// Matrix of `v ↦ x·v` in the basis.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> ScalarMatrix {
        let d = self.dim;
        let mut m = ScalarMatrix::zeros(self.field, d, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.basis_product(i, j) {
                    let v = m.get(*k, j) + &(xi * c);
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    /// Matrix of `v ↦ v·x` in the basis.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> ScalarMatrix {
        let d = self.dim;
        let mut m = ScalarMatrix::zeros(self.field, d, d);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..d {
                for (k, c) in self.basis_product(i, j) {
                    let v = m.get(*k, i) + &(xj * c);
                    m.set(*k, i, v);
                }
            }
        }
        m
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on every basis triple.
    pub fn check_associativity(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = sparse_to_dense(self.field, d, self.basis_product(i, j));
                for k in 0..d {
                    let lhs = self.mul(&ij, &self.basis_element(k));
                    let jk = sparse_to_dense(self.field, d, self.basis_product(j, k));
                    let rhs = self.mul(&self.basis_element(i), &jk);
                    if lhs != rhs {
                        return Err(Error::RelationViolation(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that the unit is a two-sided identity on the basis.
    pub fn check_unit(&self) -> Result<()> {
        for k in 0..self.dim {
            let b = self.basis_element(k);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::RelationViolation(format!("unit fails on {}", self.labels[k])));
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Cached Wedderburn data.
    pub fn wedderburn(self: &Arc<Self>) -> Result<Arc<WedderburnData>> {
        self.wedderburn_cache.get_or_init(|| structure::compute_wedderburn(self).map(Arc::new)).clone()
    }

    /// Serialization: a text header followed by sparse `i j k scalar` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "repdim-algebra v1").unwrap();
        writeln!(s, "name {}", self.name).unwrap();
        writeln!(s, "field {}", self.field).unwrap();
        writeln!(s, "dim {}", self.dim).unwrap();
        for (k, l) in self.labels.iter().enumerate() {
            writeln!(s, "label {k} {l}").unwrap();
        }
        write_kind(&mut s, &self.kind);
        if let Some(gb) = &self.group_basis {
            writeln!(s, "group-identity {}", gb.identity).unwrap();
            writeln!(s, "group-inverse {}", join(&gb.inverse)).unwrap();
            writeln!(s, "group-lengths {}", join(&gb.lengths)).unwrap();
        }
        for (k, c) in self.unit.iter().enumerate() {
            if !c.is_zero() {
                writeln!(s, "unit {k} {c}").unwrap();
            }
        }
        writeln!(s, "generators {}", self.generators.len()).unwrap();
        for (g, v) in self.generators.iter().enumerate() {
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    writeln!(s, "gen {g} {k} {c}").unwrap();
                }
            }
        }
        for (k, w) in self.words.iter().enumerate() {
            writeln!(s, "word {k} {}", join(w)).unwrap();
        }
        writeln!(s, "table").unwrap();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    writeln!(s, "{i} {j} {k} {c}").unwrap();
                }
            }
        }
        writeln!(s, "end").unwrap();
        s
    }

    pub fn from_text(text: &str) -> Result<Algebra> {
        let bad = |why: String| Error::Parse(format!("algebra file: {why}"));
        let mut lines = text.lines();
        if lines.next() != Some("repdim-algebra v1") {
            return Err(bad("missing header".into()));
        }
        let mut name = String::new();
        let mut field = None;
        let mut dim = 0usize;
        let mut labels: Vec<String> = Vec::new();
        let mut kind_lines: Vec<String> = Vec::new();
        let mut gb: (Option<usize>, Vec<usize>, Vec<usize>) = (None, Vec::new(), Vec::new());
        let mut unit = Vec::new();
        let mut ngens = 0usize;
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut table: Vec<Sparse> = Vec::new();
        let mut in_table = false;
        for line in lines {
            let f = || field.ok_or_else(|| bad("field must precede data".into()));
            if in_table {
                if line == "end" {
                    break;
                }
                let mut it = line.splitn(4, ' ');
                let mut idx = || -> Result<usize> {
                    it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad(format!("bad table line '{line}'")))
                };
                let (i, j, k) = (idx()?, idx()?, idx()?);
                let c = Scalar::parse(f()?, it.next().ok_or_else(|| bad(format!("bad table line '{line}'")))?)?;
                if i >= dim || j >= dim || k >= dim {
                    return Err(bad(format!("index out of range in '{line}'")));
                }
                table[i * dim + j].push((k, c));
                continue;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            match key {
                "name" => name = rest.to_string(),
                "field" => field = Some(rest.parse::<FieldDescriptor>()?),
                "dim" => {
                    dim = rest.parse().map_err(|_| bad("bad dim".into()))?;
                    labels = vec![String::new(); dim];
                    unit = vecops::zeros(f()?, dim);
                    words = vec![Vec::new(); dim];
                    table = vec![Vec::new(); dim * dim];
                }
                "label" => {
                    let (k, l) = rest.split_once(' ').unwrap_or((rest, ""));
                    let k: usize = k.parse().map_err(|_| bad("bad label index".into()))?;
                    *labels.get_mut(k).ok_or_else(|| bad("label index out of range".into()))? = l.to_string();
                }
                "kind" | "kind-param" => kind_lines.push(line.to_string()),
                "group-identity" => gb.0 = Some(rest.parse().map_err(|_| bad("bad identity".into()))?),
                "group-inverse" => gb.1 = parse_list(rest)?,
                "group-lengths" => gb.2 = parse_list(rest)?,
                "unit" => {
                    let (k, c) = rest.split_once(' ').ok_or_else(|| bad("bad unit line".into()))?;
                    let k: usize = k.parse().map_err(|_| bad("bad unit index".into()))?;
                    unit[k] = Scalar::parse(f()?, c)?;
                }
                "generators" => {
                    ngens = rest.parse().map_err(|_| bad("bad generator count".into()))?;
                    gens = vec![vecops::zeros(f()?, dim); ngens];
                }
                "gen" => {
                    let mut it = rest.splitn(3, ' ');
                    let g: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad gen".into()))?;
                    let k: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad gen".into()))?;
                    let c = Scalar::parse(f()?, it.next().unwrap_or(""))?;
                    if g >= ngens || k >= dim {
                        return Err(bad("generator index out of range".into()));
                    }
                    gens[g][k] = c;
                }
                "word" => {
                    let (k, w) = rest.split_once(' ').unwrap_or((rest, ""));
                    let k: usize = k.parse().map_err(|_| bad("bad word index".into()))?;
                    words[k] = parse_list(w)?;
                }
                "table" => in_table = true,
                _ => return Err(bad(format!("unknown line '{line}'"))),
            }
        }
        let field = field.ok_or_else(|| bad("missing field".into()))?;
        let kind = read_kind(field, &kind_lines)?;
        let group_basis = gb.0.map(|identity| GroupBasis { identity, inverse: gb.1, lengths: gb.2 });
        Algebra::from_parts(AlgebraParts {
            field,
            name,
            labels,
            table,
            unit,
            generators: Some((gens, words)),
            kind,
            group_basis,
        })
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer '{t}'")))).collect()
}

fn write_kind(s: &mut String, kind: &AlgebraKind) {
    match kind {
        AlgebraKind::Hecke { ctype, n, q, big_q } => {
            writeln!(s, "kind hecke {ctype} {n}").unwrap();
            writeln!(s, "kind-param q {q}").unwrap();
            if let Some(bq) = big_q {
                writeln!(s, "kind-param Q {bq}").unwrap();
            }
        }
        AlgebraKind::ParabolicHecke { lambda, q } => {
            writeln!(s, "kind parabolic {}", join(lambda)).unwrap();
            writeln!(s, "kind-param q {q}").unwrap();
        }
        AlgebraKind::Group { label } => writeln!(s, "kind group {label}").unwrap(),
        AlgebraKind::Tensor => writeln!(s, "kind tensor").unwrap(),
        AlgebraKind::TruncatedPoly { n } => writeln!(s, "kind truncated {n}").unwrap(),
        AlgebraKind::Endomorphism => writeln!(s, "kind endomorphism").unwrap(),
        AlgebraKind::Generic => writeln!(s, "kind generic").unwrap(),
    }
}

fn read_kind(field: FieldDescriptor, lines: &[String]) -> Result<AlgebraKind> {
    let bad = |why: &str| Error::Parse(format!("algebra kind: {why}"));
    let Some(first) = lines.first() else { return Ok(AlgebraKind::Generic) };
    let parts: Vec<&str> = first.split(' ').collect();
    let mut params: HashMap<&str, Scalar> = HashMap::new();
    for l in &lines[1..] {
        let rest = l.strip_prefix("kind-param ").ok_or_else(|| bad("bad parameter line"))?;
        let (k, v) = rest.split_once(' ').ok_or_else(|| bad("bad parameter line"))?;
        params.insert(k, Scalar::parse(field, v)?);
    }
    Ok(match parts.get(1).copied() {
        Some("hecke") => {
            let ctype = match parts.get(2).copied() {
                Some("A") => CoxeterType::A,
                Some("B") => CoxeterType::B,
                Some("D") => CoxeterType::D,
                _ => return Err(bad("bad Coxeter type")),
            };
            let n = parts.get(3).and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad rank"))?;
            let q = params.remove("q").ok_or_else(|| bad("missing q"))?;
            AlgebraKind::Hecke { ctype, n, q, big_q: params.remove("Q") }
        }
        Some("parabolic") => AlgebraKind::ParabolicHecke {
            lambda: parts[2..].iter().map(|t| t.parse().map_err(|_| bad("bad part"))).collect::<Result<_>>()?,
            q: params.remove("q").ok_or_else(|| bad("missing q"))?,
        },
        Some("group") => AlgebraKind::Group { label: parts[2..].join(" ") },
        Some("tensor") => AlgebraKind::Tensor,
        Some("truncated") => {
            AlgebraKind::TruncatedPoly { n: parts.get(2).and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad n"))? }
        }
        Some("endomorphism") => AlgebraKind::Endomorphism,
        Some("generic") => AlgebraKind::Generic,
        _ => return Err(bad("unknown kind")),
    })
}

pub fn sparse_to_dense(field: FieldDescriptor, dim: usize, s: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vecops::zeros(field, dim);
    for (k, c) in s {
        v[*k] = &v[*k] + c;
    }
    v
}

pub fn dense_to_sparse(v: &[Scalar]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}
