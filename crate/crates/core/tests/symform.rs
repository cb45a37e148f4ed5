use std::sync::Arc;

use repdim::algebra::{
    group_algebra_symmetric, group_subalgebra, hecke_algebra, identity_subalgebra, parabolic_subalgebra,
    scalar_subalgebra, truncated_poly, upper_triangular_algebra, Algebra, SubalgebraEmbedding,
};
use repdim::coxeter::{sylow_symmetric, CoxeterType};
use repdim::module::{regular_module, simple_modules, Representation};
use repdim::symform::*;
use repdim::{Error, FieldDescriptor, Scalar};

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::Prime(p)
}

fn ks(n: usize, p: u64) -> Arc<Algebra> {
    Arc::new(group_algebra_symmetric(n, fp(p)).unwrap())
}

fn hecke_a(n: usize, q: i64) -> Arc<Algebra> {
    let f = FieldDescriptor::Rationals;
    Arc::new(hecke_algebra(CoxeterType::A, n, f, &f.from_int(q), None).unwrap())
}

fn sylow_emb(n: usize, p: u64) -> Arc<SubalgebraEmbedding> {
    Arc::new(group_subalgebra(ks(n, p), &sylow_symmetric(n, p as usize).unwrap()).unwrap())
}

fn scalar_multiple_of_unit(a: &Algebra, x: &[Scalar]) -> Option<Scalar> {
    let c = x.iter().zip(a.unit()).find(|(_, u)| !u.is_zero()).map(|(v, _)| v.clone())?;
    let expect: Vec<Scalar> = a.unit().iter().map(|u| &c * u).collect();
    (expect == x).then_some(c)
}

#[test]
fn group_dual_basis_is_inverse() {
    let a = ks(3, 5);
    let s = standard_form(&a).unwrap();
    let gb = a.group_basis().unwrap();
    for (j, d) in dual_basis(&s).iter().enumerate() {
        assert_eq!(*d, a.basis_element(gb.inverse[j]));
    }
}

#[test]
fn hecke_dual_basis_scales_inverse_by_q_power() {
    let q = 3;
    let a = hecke_a(3, q);
    let s = standard_form(&a).unwrap();
    let gb = a.group_basis().unwrap();
    let f = a.field();
    for (j, d) in dual_basis(&s).iter().enumerate() {
        let scale = f.from_int(q).pow(-(gb.lengths[j] as i64)).unwrap();
        let expect: Vec<Scalar> = a.basis_element(gb.inverse[j]).iter().map(|c| c * &scale).collect();
        assert_eq!(*d, expect, "dual of basis element {j}");
    }
}

#[test]
fn standard_form_rejects_unsuitable_algebras() {
    let f = FieldDescriptor::Rationals;
    let dual = Arc::new(truncated_poly(f, 2).unwrap());
    assert!(matches!(standard_form(&dual), Err(Error::NotSymmetricWithThisForm(_))));
    let t2 = Arc::new(upper_triangular_algebra(f, 2).unwrap());
    assert!(matches!(standard_form(&t2), Err(Error::NotSymmetricWithThisForm(_))));
    // s(x) = 1 on k[x]/x² is symmetrizing
    assert!(SymmetrizingForm::new(dual.clone(), vec![f.zero(), f.one()]).is_ok());
}

#[test]
fn certificates_for_standard_embeddings() {
    let h = hecke_a(3, -1);
    let s = standard_form(&h).unwrap();
    let par = parabolic_subalgebra(h.clone(), &[2, 1]).unwrap();
    let cert = parabolic_certify(&par, &s).unwrap();
    assert_eq!(cert.complement_dim, 4);

    let emb = sylow_emb(3, 2);
    let s = standard_form(&emb.ambient).unwrap();
    assert_eq!(parabolic_certify(&emb, &s).unwrap().complement_dim, 4);
    let sc = scalar_subalgebra(emb.ambient.clone()).unwrap();
    assert_eq!(parabolic_certify(&sc, &s).unwrap().complement_dim, 5);
    let id = identity_subalgebra(emb.ambient.clone()).unwrap();
    assert_eq!(parabolic_certify(&id, &s).unwrap().complement_dim, 0);
}

#[test]
fn certificate_fails_when_complement_meets_the_form() {
    // 1 on the identity and on transpositions degenerates on the Sylow C_2
    {
        let a = ks(3, 5);
        let gb = a.group_basis().unwrap();
        let f = a.field();
        let coords: Vec<Scalar> =
            (0..a.dim()).map(|k| if k == gb.identity || gb.lengths[k] % 2 == 1 { f.one() } else { f.zero() }).collect();
        let s = SymmetrizingForm::new(a.clone(), coords).unwrap();
        let emb = group_subalgebra(a, &sylow_symmetric(3, 2).unwrap()).unwrap();
        assert!(matches!(parabolic_certify(&emb, &s),
            Err(Error::CertificationFailure { ref clause, .. }) if clause == "restricted form"));
    }
    // class function: 1 on the identity, 2 on transpositions, 3 on 3-cycles
    let a = ks(3, 5);
    let gb = a.group_basis().unwrap();
    let f = a.field();
    let coords: Vec<Scalar> = (0..a.dim())
        .map(|k| {
            f.from_int(if k == gb.identity {
                1
            } else if gb.lengths[k] % 2 == 1 {
                2
            } else {
                3
            })
        })
        .collect();
    let s = SymmetrizingForm::new(a.clone(), coords).unwrap();
    let emb = group_subalgebra(a, &sylow_symmetric(3, 2).unwrap()).unwrap();
    match parabolic_certify(&emb, &s) {
        Err(Error::CertificationFailure { clause, .. }) => assert_eq!(clause, "complement"),
        other => panic!("expected a complement failure, got {other:?}"),
    }
}

#[test]
fn casimir_mu_values() {
    // Γ = Λ
    let a = ks(3, 2);
    let s = standard_form(&a).unwrap();
    let id = Arc::new(identity_subalgebra(a.clone()).unwrap());
    let c = casimir(&id, &s).unwrap();
    assert_eq!(c.mu, a.unit());
    // Γ = k inside kS_3: μ = |G| = 6 = 0 in F_2
    let sc = Arc::new(scalar_subalgebra(a.clone()).unwrap());
    let c = casimir(&sc, &s).unwrap();
    assert_eq!(scalar_multiple_of_unit(&a, &c.mu), Some(fp(2).zero()));
    assert!(!c.mu_invertible());
    // Γ = k inside F_5 S_3: μ = 6 = 1
    let a5 = ks(3, 5);
    let sc5 = Arc::new(scalar_subalgebra(a5.clone()).unwrap());
    let c = casimir(&sc5, &standard_form(&a5).unwrap()).unwrap();
    assert_eq!(scalar_multiple_of_unit(&a5, &c.mu), Some(fp(5).from_int(6)));
    // Γ = kP, index 3 = 1 in F_2
    let emb = sylow_emb(3, 2);
    let c = casimir(&emb, &standard_form(&emb.ambient).unwrap()).unwrap();
    assert_eq!(scalar_multiple_of_unit(&emb.ambient, &c.mu), Some(fp(2).one()));
    assert!(mu_invertible(&c));
}

#[test]
fn casimir_is_central_and_matches_rewriting_route() {
    let h = hecke_a(3, -1);
    let s = standard_form(&h).unwrap();
    let embs = [
        Arc::new(parabolic_subalgebra(h.clone(), &[2, 1]).unwrap()),
        Arc::new(scalar_subalgebra(h.clone()).unwrap()),
        sylow_emb(3, 2),
        sylow_emb(4, 3),
    ];
    for emb in &embs {
        let s = if Arc::ptr_eq(&emb.ambient, &h) { s.clone() } else { standard_form(&emb.ambient).unwrap() };
        let c = casimir(emb, &s).unwrap();
        assert!(c.is_central(), "{}", emb.ambient.name());
        assert!(c.mu_is_central());
        assert_eq!(c.coords(), casimir_by_rewriting(emb).unwrap().coords());
    }
}

#[test]
fn hecke_mu_invertible_for_maximal_parabolic() {
    let h = hecke_a(3, -1);
    let s = standard_form(&h).unwrap();
    let par = Arc::new(parabolic_subalgebra(h.clone(), &[2, 1]).unwrap());
    assert!(casimir(&par, &s).unwrap().mu_invertible());
    // Γ = ℚ in H_{-1}(A_1): μ = T_1·T_1^* + 1 = q⁻¹T_1² + 1 = 0 at q = −1
    let h2 = hecke_a(2, -1);
    let sc = Arc::new(scalar_subalgebra(h2.clone()).unwrap());
    assert!(!casimir(&sc, &standard_form(&h2).unwrap()).unwrap().mu_invertible());
}

#[test]
fn casimir_independent_of_free_basis_order() {
    let emb = sylow_emb(4, 3);
    let s = standard_form(&emb.ambient).unwrap();
    let c = casimir(&emb, &s).unwrap();
    let mut fb = emb.free_basis().to_vec();
    fb[1..].reverse();
    let swapped = Arc::new(SubalgebraEmbedding::new(emb.inclusion().clone(), fb, emb.kind.clone()).unwrap());
    let c2 = casimir(&swapped, &s).unwrap();
    let lam = &emb.ambient;
    let mut acc = vec![lam.field().zero(); emb.rank() * lam.dim()];
    for (x, y) in &c2.pairs {
        for (a, b) in acc.iter_mut().zip(tensor_coords(&emb, x, y)) {
            *a = &*a + &b;
        }
    }
    assert_eq!(acc, c.coords());
    assert_eq!(c.mu, c2.mu);
}

fn test_modules(a: &Arc<Algebra>) -> Vec<Representation> {
    let mut ms = simple_modules(a).unwrap();
    ms.push(regular_module(a));
    ms
}

#[test]
fn trace_identities_group_chain() {
    let emb = sylow_emb(3, 2);
    let s = standard_form(&emb.ambient).unwrap();
    let chain = TraceChain::new(&emb, &s).unwrap();
    let r = verify_trace_identities(&chain, &test_modules(&emb.ambient), 20, 0).unwrap();
    assert_eq!(r.samples, 20);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn trace_identities_hecke_chain() {
    let h = hecke_a(3, -1);
    let s = standard_form(&h).unwrap();
    let par = Arc::new(parabolic_subalgebra(h.clone(), &[2, 1]).unwrap());
    let chain = TraceChain::new(&par, &s).unwrap();
    let r = verify_trace_identities(&chain, &test_modules(&h), 24, 7).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn trace_of_non_linear_map_is_rejected_only_when_not_linear() {
    let emb = sylow_emb(3, 2);
    let s = standard_form(&emb.ambient).unwrap();
    let c = casimir(&emb, &s).unwrap();
    let reg = regular_module(&emb.ambient);
    let f = reg.field();
    // any linear map becomes Λ-linear under the absolute trace
    let abs = casimir(&Arc::new(scalar_subalgebra(emb.ambient.clone()).unwrap()), &s).unwrap();
    let mut g = repdim::ScalarMatrix::zeros(f, 6, 6);
    g.set(0, 3, f.one());
    assert!(trace_map(&abs, &reg, &reg, &g).is_ok());
    // a map that is not Γ-linear need not have a Λ-linear trace
    let mut saw_failure = false;
    for i in 0..6 {
        for j in 0..6 {
            let mut e = repdim::ScalarMatrix::zeros(f, 6, 6);
            e.set(i, j, f.one());
            if matches!(trace_map(&c, &reg, &reg, &e), Err(Error::LinearityFailure(_))) {
                saw_failure = true;
            }
        }
    }
    assert!(saw_failure);
}

#[test]
fn ext_restriction_injective_for_sylow() {
    let emb = sylow_emb(3, 2);
    let simples = simple_modules(&emb.ambient).unwrap();
    for m in &simples {
        for n in &simples {
            for i in 1..=2 {
                let r = ext_restriction_injective(&emb, m, n, i, 4).unwrap();
                assert_eq!(r.kernel, 0, "{} {} {i}", m.label(), n.label());
                assert!(r.ext_sub >= r.ext_ambient);
            }
        }
    }
}

#[test]
fn ext_restriction_to_scalars_kills_everything() {
    let a = Arc::new(truncated_poly(FieldDescriptor::Rationals, 2).unwrap());
    let sc = scalar_subalgebra(a.clone()).unwrap();
    let k = simple_modules(&a).unwrap().remove(0);
    let r = ext_restriction_injective(&sc, &k, &k, 1, 3).unwrap();
    assert_eq!((r.ext_ambient, r.ext_sub, r.kernel), (1, 0, 1));
    assert!(matches!(ext_restriction_injective(&sc, &k, &k, 4, 3), Err(Error::CapExceeded(_))));
}
