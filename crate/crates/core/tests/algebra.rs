use std::sync::Arc;

use repdim::algebra::{
    algebra_map, ell_composition, group_algebra, group_algebra_symmetric, group_subalgebra, hecke_algebra,
    hecke_inclusion_a_into, hecke_projection_onto_a, identity_subalgebra, lift_idempotent, matrix_algebra,
    max_ell_parabolic, parabolic_subalgebra, radical_dickson, radical_ronyai, scalar_subalgebra, tensor_algebra,
    truncated_poly, upper_triangular_algebra, Algebra, ProjectionChoice,
};
use repdim::coxeter::{sylow_symmetric, CoxeterType, SignedPerm, SubgroupData};
use repdim::matrix::{vecops, Subspace};
use repdim::{FieldDescriptor, Scalar};

const Q: FieldDescriptor = FieldDescriptor::Rationals;
const F2: FieldDescriptor = FieldDescriptor::Prime(2);
const F3: FieldDescriptor = FieldDescriptor::Prime(3);

fn hecke_a(n: usize, f: FieldDescriptor, q: &Scalar) -> Arc<Algebra> {
    Arc::new(hecke_algebra(CoxeterType::A, n, f, q, None).unwrap())
}

#[test]
fn hecke_quadratic_relation_at_minus_one() {
    let h = hecke_a(2, Q, &Q.from_int(-1));
    assert_eq!(h.dim(), 2);
    let t = &h.generators()[0];
    let t2 = h.mul(t, t);
    // T² = (q−1)T + q with q = −1
    let expected = vecops::sub(&vecops::scale(t, &Q.from_int(-2)), h.unit());
    assert_eq!(t2, expected);
}

#[test]
fn hecke_dimensions_and_associativity() {
    let z3 = Scalar::zeta(3);
    let c3 = FieldDescriptor::Cyclotomic(3);
    let h = hecke_algebra(CoxeterType::A, 3, c3, &z3, None).unwrap();
    assert_eq!(h.dim(), 6);
    h.check_associativity().unwrap();
    h.check_unit().unwrap();
    let b2 = hecke_algebra(CoxeterType::B, 2, Q, &Q.from_int(-1), Some(&Q.from_int(2))).unwrap();
    assert_eq!(b2.dim(), 8);
    b2.check_associativity().unwrap();
    let b3 = hecke_algebra(CoxeterType::B, 3, Q, &Q.from_int(3), Some(&Q.from_int(-2))).unwrap();
    assert_eq!(b3.dim(), 48);
    let d3 = hecke_algebra(CoxeterType::D, 3, F3, &F3.from_int(2), None).unwrap();
    assert_eq!(d3.dim(), 24);
    d3.check_associativity().unwrap();
    let d4 = hecke_algebra(CoxeterType::D, 4, Q, &Q.from_int(-1), None).unwrap();
    assert_eq!(d4.dim(), 192);
    assert!(hecke_algebra(CoxeterType::B, 2, Q, &Q.one(), None).is_err());
}

#[test]
fn generic_parameter_b3_associativity() {
    let b3 = hecke_algebra(CoxeterType::B, 3, Q, &Q.from_int(3), Some(&Q.from_int(-2))).unwrap();
    b3.check_associativity().unwrap();
}

#[test]
fn group_algebra_sum_squares_to_zero_mod_two() {
    let a = group_algebra_symmetric(3, F2).unwrap();
    assert_eq!(a.dim(), 6);
    let sum: Vec<Scalar> = vec![F2.one(); 6];
    assert!(vecops::is_zero(&a.mul(&sum, &sum)));
    a.check_associativity().unwrap();
}

#[test]
fn cyclic_two_is_truncated_polynomial() {
    let c2 = SubgroupData::generated("C2", 2, vec![SignedPerm::transposition(2, 1, 2)]).unwrap();
    let a = group_algebra(&c2, F2).unwrap();
    let x = vecops::sub(&a.generators()[0], a.unit());
    assert!(vecops::is_zero(&a.mul(&x, &x)));
    assert!(!vecops::is_zero(&x));
    // the map F_2[x]/(x²) → F_2C_2, x ↦ g − 1, is an isomorphism
    let t = Arc::new(truncated_poly(F2, 2).unwrap());
    let m = algebra_map(t, Arc::new(a), &[x]).unwrap();
    assert!(m.matrix().is_invertible());
}

#[test]
fn tensor_of_cyclic_groups_matches_product_group() {
    let c3 = SubgroupData::generated("C3", 3, vec![SignedPerm::cycle(3, &[1, 2, 3])]).unwrap();
    let a = group_algebra(&c3, Q).unwrap();
    let t = tensor_algebra(&a, &a).unwrap();
    assert_eq!(t.dim(), 9);
    t.check_associativity().unwrap();
    assert_eq!(t.unit(), &vecops::unit(Q, 9, 0)[..]);
    // C3 × C3 acting on 6 points, basis (g^i, g^j) ↦ g^i × g^j
    let g1 = SignedPerm::cycle(6, &[1, 2, 3]);
    let g2 = SignedPerm::cycle(6, &[4, 5, 6]);
    let prod = SubgroupData::generated("C3xC3", 6, vec![g1.clone(), g2.clone()]).unwrap();
    let b = group_algebra(&prod, Q).unwrap();
    let pow = |g: &SignedPerm, k: usize| (0..k).fold(SignedPerm::identity(6), |acc, _| acc.compose(g));
    let c3_pow: Vec<usize> = c3
        .elements
        .iter()
        .map(|e| {
            (0..3)
                .find(|&k| (0..k).fold(SignedPerm::identity(3), |acc, _| acc.compose(&c3.generators[0])) == *e)
                .unwrap()
        })
        .collect();
    let to_b = |i: usize, j: usize| {
        let e = pow(&g1, c3_pow[i]).compose(&pow(&g2, c3_pow[j]));
        prod.elements.iter().position(|x| *x == e).unwrap()
    };
    for i in 0..9 {
        for j in 0..9 {
            let lhs: Vec<(usize, Scalar)> =
                t.basis_product(i, j).iter().map(|(k, c)| (to_b(k / 3, k % 3), c.clone())).collect();
            assert_eq!(&lhs, b.basis_product(to_b(i / 3, i % 3), to_b(j / 3, j % 3)));
        }
    }
}

#[test]
fn tensor_dims_multiply() {
    let a = truncated_poly(Q, 2).unwrap();
    let t = tensor_algebra(&a, &a).unwrap();
    assert_eq!(t.dim(), 4);
    assert!(tensor_algebra(&a, &truncated_poly(F2, 2).unwrap()).is_err());
}

#[test]
fn parabolic_subalgebras() {
    let h4 = hecke_a(4, Q, &Q.from_int(-1));
    let e = parabolic_subalgebra(h4.clone(), &[2, 2]).unwrap();
    assert_eq!(e.sub.dim(), 4);
    assert_eq!(e.rank(), 6);
    e.verify_tensor_factorization().unwrap();
    let whole = parabolic_subalgebra(h4.clone(), &[4]).unwrap();
    assert_eq!(whole.sub.dim(), 24);
    assert_eq!(whole.rank(), 1);
    let h5 = hecke_a(5, Q, &Q.from_int(-1));
    let e5 = parabolic_subalgebra(h5, &[2, 2, 1]).unwrap();
    assert_eq!(e5.sub.dim(), 4);
    e5.verify_tensor_factorization().unwrap();
    assert!(parabolic_subalgebra(h4, &[3, 2]).is_err());
}

#[test]
fn maximal_ell_parabolic_compositions() {
    assert_eq!(ell_composition(4, 2), vec![2, 2]);
    assert_eq!(ell_composition(3, 3), vec![3]);
    assert_eq!(ell_composition(7, 3), vec![3, 3, 1]);
    let h4 = hecke_a(4, Q, &Q.from_int(-1));
    let e = max_ell_parabolic(h4, 2).unwrap();
    assert_eq!(e.sub.dim(), 4);
    let z3 = Scalar::zeta(3);
    let h3 = hecke_a(3, FieldDescriptor::Cyclotomic(3), &z3);
    let e3 = max_ell_parabolic(h3.clone(), 3).unwrap();
    assert_eq!(e3.rank(), 1);
    assert_eq!(*e3.sub.as_ref().labels(), *h3.labels());
}

#[test]
fn rewriting_reconstructs_elements() {
    let h4 = hecke_a(4, Q, &Q.from_int(2));
    let e = parabolic_subalgebra(h4.clone(), &[2, 1, 1]).unwrap();
    for k in [0, 5, 17, 23] {
        let x = h4.basis_element(k);
        let parts = e.rewrite(&x);
        let mut acc = h4.zero_element();
        for (j, g) in parts.iter().enumerate() {
            acc = vecops::add(&acc, &e.free_times(j, g));
        }
        assert_eq!(acc, x);
    }
    let s4 = Arc::new(group_algebra_symmetric(4, F2).unwrap());
    let p = sylow_symmetric(3, 2).unwrap();
    assert!(group_subalgebra(s4.clone(), &p).is_err());
    let p4 = SubgroupData::generated("C2", 4, vec![SignedPerm::transposition(4, 1, 2)]).unwrap();
    let g = group_subalgebra(s4.clone(), &p4).unwrap();
    assert_eq!(g.rank(), 12);
    assert_eq!(scalar_subalgebra(s4.clone()).unwrap().rank(), 24);
    assert_eq!(identity_subalgebra(s4).unwrap().rank(), 1);
}

/// Radical by brute force over a tiny field: `x ∈ J` iff `y·x` is nilpotent
/// for every `y`.
fn brute_force_radical(a: &Algebra) -> Subspace {
    let FieldDescriptor::Prime(p) = a.field() else { panic!("prime field only") };
    let d = a.dim();
    let all: Vec<Vec<Scalar>> = (0..(p as usize).pow(d as u32))
        .map(|mut idx| {
            (0..d)
                .map(|_| {
                    let v = (idx % p as usize) as u64;
                    idx /= p as usize;
                    Scalar::Mod { value: v, p }
                })
                .collect()
        })
        .collect();
    let nilpotent = |z: &Vec<Scalar>| {
        let mut w = z.clone();
        for _ in 0..d {
            w = a.mul(&w, z);
        }
        vecops::is_zero(&w)
    };
    let mut out = Subspace::new(a.field(), d);
    for x in &all {
        if all.iter().all(|y| nilpotent(&a.mul(y, x))) {
            out.insert(x);
        }
    }
    out
}

#[test]
fn radicals_against_oracles() {
    let s3 = Arc::new(group_algebra_symmetric(3, F2).unwrap());
    let j = radical_ronyai(&s3).unwrap();
    assert_eq!(j.len(), 1);
    assert!(j[0].iter().all(|c| c.is_one()));
    let oracle = brute_force_radical(&s3);
    assert_eq!(oracle.dim(), 1);
    assert!(oracle.contains(&j[0]));
    let s3f3 = group_algebra_symmetric(3, F3).unwrap();
    let j3 = radical_ronyai(&s3f3).unwrap();
    let oracle3 = brute_force_radical(&s3f3);
    assert_eq!(j3.len(), oracle3.dim());
    assert!(j3.iter().all(|v| oracle3.contains(v)));
    let t = truncated_poly(Q, 2).unwrap();
    assert_eq!(radical_dickson(&t), vec![vec![Q.zero(), Q.one()]]);
    let qs3 = group_algebra_symmetric(3, Q).unwrap();
    assert!(radical_dickson(&qs3).is_empty());
}

#[test]
fn wedderburn_of_small_algebras() {
    let s3 = Arc::new(group_algebra_symmetric(3, F2).unwrap());
    let w = s3.wedderburn().unwrap();
    assert_eq!(w.block_dims, vec![1, 2]);
    assert_eq!(w.idempotents.len(), 3);
    check_idempotents(&s3, &w.idempotents);
    let t = Arc::new(truncated_poly(Q, 2).unwrap());
    let wt = t.wedderburn().unwrap();
    assert_eq!(wt.block_dims, vec![1]);
    assert_eq!(wt.idempotents, vec![t.unit().to_vec()]);
    let m2 = Arc::new(matrix_algebra(Q, 2).unwrap());
    assert_eq!(m2.wedderburn().unwrap().block_dims, vec![2]);
    let ut = Arc::new(upper_triangular_algebra(F3, 3).unwrap());
    let wu = ut.wedderburn().unwrap();
    assert_eq!(wu.block_dims, vec![1, 1, 1]);
    assert_eq!(wu.radical.len(), 3);
    let h = hecke_a(4, Q, &Q.from_int(-1));
    let wh = h.wedderburn().unwrap();
    assert_eq!(wh.radical.len(), 19);
    assert_eq!(wh.block_dims, vec![1, 2]);
    check_idempotents(&h, &wh.idempotents);
}

#[test]
fn peirce_and_trace_radicals_agree() {
    // dimension 24 over F_2 and F_3 is below the Peirce threshold, so compare directly
    for f in [F2, F3] {
        let a = Arc::new(group_algebra_symmetric(4, f).unwrap());
        let ronyai = Subspace::spanned_by(f, 24, &radical_ronyai(&a).unwrap());
        let w = a.wedderburn().unwrap();
        assert_eq!(ronyai.dim(), w.radical.len());
        let sum: usize = w.block_dims.iter().map(|d| d * d).sum();
        assert_eq!(sum + ronyai.dim(), 24);
    }
    let a = Arc::new(group_algebra_symmetric(5, F3).unwrap());
    let w = a.wedderburn().unwrap();
    let sum: usize = w.block_dims.iter().map(|d| d * d).sum();
    assert_eq!(sum + w.radical.len(), 120);
}

fn check_idempotents(a: &Algebra, es: &[Vec<Scalar>]) {
    let mut total = a.zero_element();
    for (i, e) in es.iter().enumerate() {
        for (j, f) in es.iter().enumerate() {
            let p = a.mul(e, f);
            if i == j {
                assert_eq!(&p, e);
            } else {
                assert!(vecops::is_zero(&p));
            }
        }
        total = vecops::add(&total, e);
    }
    assert_eq!(total, a.unit());
}

#[test]
fn idempotent_refinement_is_stable_on_idempotents() {
    let s3 = Arc::new(group_algebra_symmetric(3, F3).unwrap());
    let w = s3.wedderburn().unwrap();
    for e in &w.idempotents {
        assert_eq!(&lift_idempotent(&s3, e).unwrap(), e);
    }
    // e + n with n in the radical of an upper triangular algebra refines to an idempotent
    let ut = upper_triangular_algebra(Q, 2).unwrap();
    let x = vec![Q.one(), Q.from_int(5), Q.zero()];
    let e = lift_idempotent(&ut, &x).unwrap();
    assert_eq!(ut.mul(&e, &e), e);
}

#[test]
fn inclusion_and_projection_for_types_b_and_d() {
    for n in [2, 3] {
        let q = Q.from_int(-1);
        let ha = hecke_a(n, Q, &q);
        let hb = Arc::new(hecke_algebra(CoxeterType::B, n, Q, &q, Some(&Q.from_int(2))).unwrap());
        let i = hecke_inclusion_a_into(ha.clone(), hb.clone()).unwrap();
        let p = hecke_projection_onto_a(hb, ha.clone(), &ProjectionChoice::Standard).unwrap();
        assert!(p.compose(&i).unwrap().is_identity());
        let hd = Arc::new(hecke_algebra(CoxeterType::D, n, Q, &q, None).unwrap());
        let i = hecke_inclusion_a_into(ha.clone(), hd.clone()).unwrap();
        let p = hecke_projection_onto_a(hd, ha, &ProjectionChoice::Standard).unwrap();
        assert!(p.compose(&i).unwrap().is_identity());
    }
    // T_0 ↦ 0 violates the quadratic relation
    let q = Q.from_int(-1);
    let ha = hecke_a(2, Q, &q);
    let hb = Arc::new(hecke_algebra(CoxeterType::B, 2, Q, &q, Some(&Q.from_int(2))).unwrap());
    let bad = hecke_projection_onto_a(hb, ha.clone(), &ProjectionChoice::CustomT0(ha.zero_element()));
    assert!(bad.is_err());
}

#[test]
fn serialization_round_trip() {
    let z5 = Scalar::zeta(5);
    let c5 = FieldDescriptor::Cyclotomic(5);
    let algebras = vec![
        hecke_algebra(CoxeterType::A, 3, c5, &z5, None).unwrap(),
        hecke_algebra(CoxeterType::B, 2, Q, &Scalar::from_ratio(Q, -1, 3).unwrap(), Some(&Q.from_int(2))).unwrap(),
        group_algebra_symmetric(3, F3).unwrap(),
        tensor_algebra(&truncated_poly(F2, 2).unwrap(), &truncated_poly(F2, 3).unwrap()).unwrap(),
        matrix_algebra(Q, 2).unwrap(),
    ];
    for a in algebras {
        let text = a.to_text();
        let b = Algebra::from_text(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_text(), text);
    }
}
