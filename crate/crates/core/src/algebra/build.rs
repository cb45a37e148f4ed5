//! Constructors: Hecke algebras, group algebras, tensor products and a few
//! small test algebras.

use std::collections::{BTreeMap, HashMap};

use super::{Algebra, AlgebraKind, AlgebraParts, GroupBasis, Sparse};
use crate::coxeter::{enumerate_group, generator_labels, CoxeterType, SignedPerm, SubgroupData};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::vecops;

fn accumulate(acc: &mut BTreeMap<usize, Scalar>, k: usize, c: Scalar) {
    let e = acc.entry(k).or_insert_with(|| c.field().zero());
    *e = &*e + &c;
}

fn finish(acc: BTreeMap<usize, Scalar>) -> Sparse {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Iwahori–Hecke algebra of type A, B or D with basis `T_w`.
///
/// `n` is the number of points: type A gives the Hecke algebra of `S_n`.
/// Type B needs the second parameter `Q` for the generator `T_0`.
pub fn hecke_algebra(
    ctype: CoxeterType,
    n: usize,
    field: FieldDescriptor,
    q: &Scalar,
    big_q: Option<&Scalar>,
) -> Result<Algebra> {
    if q.field() != field {
        return Err(Error::FieldMismatch(q.field().to_string(), field.to_string()));
    }
    if q.is_zero() {
        return Err(Error::InvalidParameter("q must be nonzero".into()));
    }
    let big_q = match (ctype, big_q) {
        (CoxeterType::B, None) => return Err(Error::InvalidParameter("type B needs the parameter Q".into())),
        (CoxeterType::B, Some(bq)) => {
            if bq.field() != field {
                return Err(Error::FieldMismatch(bq.field().to_string(), field.to_string()));
            }
            if bq.is_zero() {
                return Err(Error::InvalidParameter("Q must be nonzero".into()));
            }
            Some(bq.clone())
        }
        _ => None,
    };
    let g = enumerate_group(ctype, n)?;
    let d = g.order();
    let ngen = g.generators.len();
    let qs: Vec<Scalar> = (0..ngen)
        .map(|s| match (&big_q, s) {
            (Some(bq), 0) => bq.clone(),
            _ => q.clone(),
        })
        .collect();
    let qs_minus_one: Vec<Scalar> = qs.iter().map(|x| x - &field.one()).collect();
    // T_s · T_v
    let gen_times = |s: usize, v: usize| -> Vec<(usize, Scalar)> {
        let sv = g.left_mul_gen(s, v);
        if g.lengths[sv] > g.lengths[v] {
            vec![(sv, field.one())]
        } else {
            vec![(sv, qs[s].clone()), (v, qs_minus_one[s].clone())]
        }
    };
    let mut table: Vec<Sparse> = Vec::with_capacity(d * d);
    for w in 0..d {
        table.push(vec![(w, field.one())]);
    }
    // elements come in length order, so the row of s·u is ready before u
    for u in 1..d {
        let s = g.words[u][0];
        let rest = g.left_mul_gen(s, u);
        debug_assert!(g.lengths[rest] + 1 == g.lengths[u]);
        for w in 0..d {
            let mut acc = BTreeMap::new();
            for (v, c) in &table[rest * d + w] {
                for (x, e) in gen_times(s, *v) {
                    accumulate(&mut acc, x, c * &e);
                }
            }
            table.push(finish(acc));
        }
    }
    let glabels = generator_labels(ctype, n);
    let labels = g
        .words
        .iter()
        .map(|w| {
            let parts: Vec<String> = w.iter().map(|&s| glabels[s].to_string()).collect();
            format!("T[{}]", parts.join(","))
        })
        .collect();
    let gen_vecs: Vec<Vec<Scalar>> = (0..ngen).map(|s| vecops::unit(field, d, g.left_mul_gen(s, 0))).collect();
    let group_basis =
        GroupBasis { identity: 0, inverse: (0..d).map(|w| g.inverse(w)).collect(), lengths: g.lengths.clone() };
    let name = match ctype {
        CoxeterType::B => format!("H(B_{n})"),
        CoxeterType::D => format!("H(D_{n})"),
        CoxeterType::A => format!("H(A_{})", n - 1),
    };
    let alg = Algebra::from_parts(AlgebraParts {
        field,
        name,
        labels,
        table,
        unit: vecops::unit(field, d, 0),
        generators: Some((gen_vecs, g.words.clone())),
        kind: AlgebraKind::Hecke { ctype, n, q: q.clone(), big_q },
        group_basis: Some(group_basis),
    })?;
    check_hecke_relations(&alg, &g.generators, &qs)?;
    Ok(alg)
}

/// Quadratic relations `(T_s + 1)(T_s − q_s) = 0` and braid relations of
/// length `m_st` = order of `g_s g_t`.
fn check_hecke_relations(alg: &Algebra, gens: &[SignedPerm], qs: &[Scalar]) -> Result<()> {
    let one = alg.unit().to_vec();
    for (s, t_s) in alg.generators().iter().enumerate() {
        let a = vecops::add(t_s, &one);
        let b = vecops::sub(t_s, &vecops::scale(&one, &qs[s]));
        if !vecops::is_zero(&alg.mul(&a, &b)) {
            return Err(Error::RelationViolation(format!("quadratic relation fails for generator {s}")));
        }
    }
    for s in 0..gens.len() {
        for t in s + 1..gens.len() {
            let m = gens[s].compose(&gens[t]).order();
            let alternating = |first: usize, second: usize| {
                let mut acc = one.clone();
                for k in 0..m {
                    let g = if k % 2 == 0 { first } else { second };
                    acc = alg.mul(&acc, &alg.generators()[g]);
                }
                acc
            };
            if alternating(s, t) != alternating(t, s) {
                return Err(Error::RelationViolation(format!("braid relation fails for generators {s}, {t}")));
            }
        }
    }
    Ok(())
}

fn group_table(field: FieldDescriptor, elements: &[SignedPerm]) -> Vec<Sparse> {
    let index: HashMap<&SignedPerm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut table = Vec::with_capacity(elements.len() * elements.len());
    for a in elements {
        for b in elements {
            table.push(vec![(index[&a.compose(b)], field.one())]);
        }
    }
    table
}

fn group_basis_of(elements: &[SignedPerm], lengths: Vec<usize>) -> GroupBasis {
    let index: HashMap<&SignedPerm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    GroupBasis {
        identity: index[&SignedPerm::identity(elements[0].degree())],
        inverse: elements.iter().map(|e| index[&e.inverse()]).collect(),
        lengths,
    }
}

/// Group algebra of `S_n`, basis in Coxeter enumeration order and
/// generated by the simple transpositions.
pub fn group_algebra_symmetric(n: usize, field: FieldDescriptor) -> Result<Algebra> {
    let g = enumerate_group(CoxeterType::A, n)?;
    let d = g.order();
    let gens = (0..g.generators.len()).map(|s| vecops::unit(field, d, g.left_mul_gen(s, 0))).collect();
    Algebra::from_parts(AlgebraParts {
        field,
        name: format!("kS_{n}"),
        labels: g.elements.iter().map(|e| e.to_string()).collect(),
        table: group_table(field, &g.elements),
        unit: vecops::unit(field, d, 0),
        generators: Some((gens, g.words.clone())),
        kind: AlgebraKind::Group { label: format!("S_{n}") },
        group_basis: Some(group_basis_of(&g.elements, g.lengths.clone())),
    })
}

/// Group algebra of a generated subgroup, basis in its closure order.
pub fn group_algebra(sub: &SubgroupData, field: FieldDescriptor) -> Result<Algebra> {
    let elements = &sub.elements;
    let d = elements.len();
    let index: HashMap<&SignedPerm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    // replay the closure to recover prefix-closed words
    let mut words: Vec<Option<Vec<usize>>> = vec![None; d];
    words[0] = Some(Vec::new());
    for i in 0..d {
        let w = words[i].clone().expect("closure order is breadth-first");
        for (gi, g) in sub.generators.iter().enumerate() {
            let j = index[&elements[i].compose(g)];
            if words[j].is_none() {
                let mut nw = w.clone();
                nw.push(gi);
                words[j] = Some(nw);
            }
        }
    }
    let words: Vec<Vec<usize>> = words.into_iter().map(|w| w.expect("closure is generated")).collect();
    let lengths = words.iter().map(Vec::len).collect();
    let gens = sub.generators.iter().map(|g| vecops::unit(field, d, index[g])).collect();
    Algebra::from_parts(AlgebraParts {
        field,
        name: format!("k[{}]", sub.label),
        labels: elements.iter().map(|e| e.to_string()).collect(),
        table: group_table(field, elements),
        unit: vecops::unit(field, d, index[&SignedPerm::identity(sub.n)]),
        generators: Some((gens, words)),
        kind: AlgebraKind::Group { label: sub.label.clone() },
        group_basis: Some(group_basis_of(elements, lengths)),
    })
}

/// `A ⊗ B` on the basis of pairs `(i, j) ↦ i·dim B + j`.
///
/// Generators are those of `A` (as `g ⊗ 1`) followed by those of `B`.
pub fn tensor_algebra(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    let field = a.field();
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let mut table = Vec::with_capacity(d * d);
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let mut acc = BTreeMap::new();
                    for (x, c) in a.basis_product(i, k) {
                        for (y, e) in b.basis_product(j, l) {
                            accumulate(&mut acc, x * db + y, c * e);
                        }
                    }
                    table.push(finish(acc));
                }
            }
        }
    }
    let pair = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let mut v = vecops::zeros(field, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    v[i * db + j] = xi * yj;
                }
            }
        }
        v
    };
    let mut gens: Vec<Vec<Scalar>> = a.generators().iter().map(|g| pair(g, b.unit())).collect();
    gens.extend(b.generators().iter().map(|h| pair(a.unit(), h)));
    let na = a.num_generators();
    let mut words = Vec::with_capacity(d);
    let mut labels = Vec::with_capacity(d);
    for i in 0..da {
        for j in 0..db {
            let mut w = a.words()[i].clone();
            w.extend(b.words()[j].iter().map(|g| g + na));
            words.push(w);
            labels.push(format!("{}⊗{}", a.labels()[i], b.labels()[j]));
        }
    }
    let group_basis = match (a.group_basis(), b.group_basis()) {
        (Some(ga), Some(gb)) => Some(GroupBasis {
            identity: ga.identity * db + gb.identity,
            inverse: (0..d).map(|k| ga.inverse[k / db] * db + gb.inverse[k % db]).collect(),
            lengths: (0..d).map(|k| ga.lengths[k / db] + gb.lengths[k % db]).collect(),
        }),
        _ => None,
    };
    Algebra::from_parts(AlgebraParts {
        field,
        name: format!("{} ⊗ {}", a.name(), b.name()),
        labels,
        table,
        unit: pair(a.unit(), b.unit()),
        generators: Some((gens, words)),
        kind: AlgebraKind::Tensor,
        group_basis,
    })
}

/// `k[x]/(xⁿ)` with basis `1, x, …, x^{n−1}`.
pub fn truncated_poly(field: FieldDescriptor, n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidParameter("k[x]/(x^0) is the zero ring".into()));
    }
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(if i + j < n { vec![(i + j, field.one())] } else { Vec::new() });
        }
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let gens = if n >= 2 { vec![vecops::unit(field, n, 1)] } else { Vec::new() };
    let words = (0..n).map(|i| vec![0; i]).collect();
    Algebra::from_parts(AlgebraParts {
        field,
        name: format!("k[x]/(x^{n})"),
        labels,
        table,
        unit: vecops::unit(field, n, 0),
        generators: Some((gens, words)),
        kind: AlgebraKind::TruncatedPoly { n },
        group_basis: None,
    })
}

/// Full matrix algebra `M_n(k)` on matrix units `E_ij` (index `i·n + j`).
pub fn matrix_algebra(field: FieldDescriptor, n: usize) -> Result<Algebra> {
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    matrix_unit_algebra(field, &units, format!("M_{n}(k)"))
}

/// Upper triangular `n × n` matrices on the matrix units `E_ij`, `i ≤ j`.
pub fn upper_triangular_algebra(field: FieldDescriptor, n: usize) -> Result<Algebra> {
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    matrix_unit_algebra(field, &units, format!("T_{n}(k)"))
}

fn matrix_unit_algebra(field: FieldDescriptor, units: &[(usize, usize)], name: String) -> Result<Algebra> {
    let d = units.len();
    let index: HashMap<(usize, usize), usize> = units.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let mut table = Vec::with_capacity(d * d);
    for &(i, j) in units {
        for &(k, l) in units {
            table.push(if j == k { vec![(index[&(i, l)], field.one())] } else { Vec::new() });
        }
    }
    let mut unit = vecops::zeros(field, d);
    for (&(i, j), &k) in &index {
        if i == j {
            unit[k] = field.one();
        }
    }
    Algebra::from_parts(AlgebraParts {
        field,
        name,
        labels: units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect(),
        table,
        unit,
        generators: None,
        kind: AlgebraKind::Generic,
        group_basis: None,
    })
}
