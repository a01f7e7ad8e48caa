//! DG-category operations on both instances: Hom complexes, shifts,
//! twists, cones, totalizations, null-homotopy solving, Z⁰ operations.

use std::sync::Arc;

use exact_dg::cdg::g_plus;
use exact_dg::dg::*;
use exact_dg::fixtures::*;
use exact_dg::graded::{GradedMap, GradedModule};
use exact_dg::grading::Degree;
use exact_dg::randgen::Gen;
use exact_dg::scalar::Rat;
use num_traits::{One, Zero};

fn ke_obj(seed: u64) -> (Arc<exact_dg::cdg::CdgRing<Rat>>, DgObject<Rat>, Gen<Rat>) {
    let ring = ke_dg_ring::<Rat>(-6, 6);
    let mut g = Gen::<Rat>::new(seed, ());
    let x = g.cdg_module(&ring, Instance::CdgMod);
    (ring, x, g)
}

/// A small complex of vector spaces: k --id--> k in degrees 0, 1.
fn two_term_complex() -> (Arc<exact_dg::cdg::CdgRing<Rat>>, DgObject<Rat>) {
    let ring = complexes_over_field::<Rat>(-6, 6);
    let base = Arc::new(GradedModule::free(&ring.base, &[Degree(0), Degree(1)]).unwrap());
    let mut d = std::collections::BTreeMap::new();
    d.insert(
        Degree(0),
        exact_dg::matrix::Matrix::from_int_rows(&[&[1]]),
    );
    let m = exact_dg::cdg::CdgModule::new(ring.clone(), base, d);
    (ring.clone(), DgObject::complex(m))
}

/// One-dimensional complex in degree 0 with zero differential.
fn point_complex() -> (Arc<exact_dg::cdg::CdgRing<Rat>>, DgObject<Rat>) {
    let ring = complexes_over_field::<Rat>(-6, 6);
    let base = Arc::new(GradedModule::free(&ring.base, &[Degree(0)]).unwrap());
    let m = exact_dg::cdg::CdgModule::new(ring.clone(), base, std::collections::BTreeMap::new());
    (ring, DgObject::complex(m))
}

#[test]
fn random_objects_satisfy_axioms() {
    for seed in 0..12u64 {
        let (_, x, _) = ke_obj(seed);
        assert!(x.check().is_ok(), "seed {}", seed);
    }
}

#[test]
fn h0_of_point_contains_identity() {
    let (_, x) = point_complex();
    assert!(is_contractible(&x).is_none());
    assert!(h0_dim(&x, &x) >= 1);
}

#[test]
fn contractible_source_has_zero_cohomology() {
    // cone(id) is contractible; Hom from it has vanishing cohomology
    let (_, x) = two_term_complex();
    let id = GradedMap::identity(x.base().clone());
    let c = cone(&x, &x, &id).unwrap();
    let witness = is_contractible(&c.object).expect("cone(id) is contractible");
    let d_witness = hom_diff(&c.object, &c.object, &witness);
    assert!(d_witness.equal(&GradedMap::identity(c.object.base().clone())));
    let (_, z) = point_complex();
    let hc = hom_complex(&c.object, &z);
    for (&n, _) in &hc.levels {
        assert_eq!(
            hc.cohomology_dim(n, z.ring().datum()),
            0,
            "cohomology in degree {n}"
        );
    }
}

#[test]
fn composition_satisfies_leibniz() {
    let (_, x, mut g) = ke_obj(3);
    let y = g.cdg_module(&x.module.ring, Instance::CdgMod);
    let z = g.cdg_module(&x.module.ring, Instance::CdgMod);
    let datum = x.ring().datum().clone();
    for fd in [-1i64, 0, 1] {
        for gd in [-1i64, 0, 1] {
            let f = g.hom_map(x.base(), y.base(), Degree(fd));
            let gg = g.hom_map(y.base(), z.base(), Degree(gd));
            let lhs = hom_diff(&x, &z, &GradedMap::compose(&gg, &f));
            let sign: Rat = datum.sign_scalar(x.ring().one(), Degree(gd));
            let rhs = GradedMap::compose(&hom_diff(&y, &z, &gg), &f)
                .add(&GradedMap::compose(&gg, &hom_diff(&x, &y, &f)).scale(&sign));
            assert!(lhs.equal(&rhs), "Leibniz for degrees ({fd}, {gd})");
        }
    }
}

#[test]
fn shift_round_trips() {
    let (_, x, _) = ke_obj(5);
    let x0 = x.shift(0).unwrap();
    assert_eq!(x0.base().dims(), x.base().dims());
    let x1 = x.shift(1).unwrap();
    let back = x1.shift(-1).unwrap();
    assert_eq!(back.base().dims(), x.base().dims());
    assert!(back.module.d.equal(&x.module.d));
    // dims of X[1] are those of X reindexed
    for (&d, &n) in x.base().dims() {
        assert_eq!(x1.base().dim_at(Degree(d.0 - 1)), n);
    }
    // canonical shift morphisms compose to the identity
    let s = shift_iso(&x, &x1, 1);
    assert!(is_closed(&x1, &x, &s));
    assert!(s.is_injective() && s.is_surjective());
}

#[test]
fn twist_examples() {
    let (_, x, mut g) = ke_obj(7);
    let zero = GradedMap::zero(x.base().clone(), x.base().clone(), Degree(1));
    assert!(mc_check(&x, &zero));
    let same = twist(&x, &zero).unwrap();
    assert!(same.module.d.equal(&x.module.d));
    // the cone cochain a_f satisfies d(a) = 0 = a²  (checked inside cone);
    // twisting back by −a recovers the original differential
    let y = g.cdg_module(&x.module.ring, Instance::CdgMod);
    if let Some(f) = g.closed_map(&x, &y) {
        let c = cone(&x, &y, &f).unwrap();
        c.verify(&x, &y).unwrap();
        let a = c
            .object
            .module
            .d
            .sub(&y.direct_sum(&x.shift(1).unwrap()).module.d);
        assert!(GradedMap::compose(&a, &a).is_zero_map());
        let untwisted = twist(&c.object, &a.neg()).unwrap();
        assert!(untwisted
            .module
            .d
            .equal(&y.direct_sum(&x.shift(1).unwrap()).module.d));
    }
    // hunt a non-Maurer–Cartan cochain and watch it get rejected
    let mut rejected = false;
    for _ in 0..20 {
        let a = g.hom_map(x.base(), x.base(), Degree(1));
        if !mc_check(&x, &a) {
            assert!(twist(&x, &a).is_err());
            rejected = true;
            break;
        }
    }
    assert!(rejected || x.base().total_dim() <= 2);
}

#[test]
fn cone_of_zero_is_direct_sum() {
    let (_, x) = two_term_complex();
    let (_, y) = point_complex();
    let zero = GradedMap::zero(x.base().clone(), y.base().clone(), Degree(0));
    let c = cone(&x, &y, &zero).unwrap();
    c.verify(&x, &y).unwrap();
    let sum = y.direct_sum(&x.shift(1).unwrap());
    assert_eq!(c.object.base().dims(), sum.base().dims());
    assert!(c.object.module.d.equal(&sum.module.d));
}

#[test]
fn cone_of_identity_contracts_via_sigma() {
    let (_, x, _) = ke_obj(9);
    let id = GradedMap::identity(x.base().clone());
    let c = cone(&x, &x, &id).unwrap();
    c.verify(&x, &x).unwrap();
    // σ = ι′ ∘ s⁻¹-free recipe: here the contracting homotopy ι′π′ composed
    // through the canonical degree bookkeeping is found by the solver and
    // the explicit candidate σ = ι′∘(shift of π′) is accepted
    let witness = is_contractible(&c.object).expect("cone of identity is contractible");
    assert!(hom_diff(&c.object, &c.object, &witness)
        .equal(&GradedMap::identity(c.object.base().clone())));
}

#[test]
fn cone_of_isomorphism_is_contractible() {
    let (_, x) = two_term_complex();
    let id = GradedMap::identity(x.base().clone());
    let two = id.scale(&Rat::from_integer(2.into()));
    let c = cone(&x, &x, &two).unwrap();
    assert!(is_contractible(&c.object).is_some());
}

#[test]
fn tot_of_single_object_is_the_object() {
    let (_, x, _) = ke_obj(11);
    let t = tot(&[x.clone()], &[], 0).unwrap();
    assert_eq!(t.object.base().dims(), x.base().dims());
    assert!(t.object.module.d.equal(&x.module.d));
}

#[test]
fn tot_of_identity_complex_is_contractible() {
    let (_, x, _) = ke_obj(13);
    let id = GradedMap::identity(x.base().clone());
    let t = tot(&[x.clone(), x.clone()], &[id], 0).unwrap();
    assert!(is_contractible(&t.object).is_some());
}

#[test]
fn two_term_tot_is_cone_up_to_closed_isomorphism() {
    let (_, x, mut g) = ke_obj(15);
    let y = g.cdg_module(&x.module.ring, Instance::CdgMod);
    let Some(f) = g.closed_map(&x, &y) else { return };
    // cone(f) is the totalization of the two-term complex placed at −1, 0,
    // up to the closed isomorphism swapping the two slots
    let c = cone(&x, &y, &f).unwrap();
    let t = tot(&[x.clone(), y.clone()], &[f], -1).unwrap();
    assert_eq!(
        c.object.base().dims(),
        t.object.base().dims(),
        "same graded shape"
    );
    // swap: T = X[1] ⊕ Y → C = Y ⊕ X[1]
    let swap = GradedMap::compose(&c.iota, &t.project[1])
        .add(&GradedMap::compose(&c.iota_prime, &t.project[0]));
    assert!(swap.is_injective() && swap.is_surjective());
    assert!(is_closed(&t.object, &c.object, &swap));
}

#[test]
fn tot_rejects_noncomplexes() {
    let (_, x, _) = ke_obj(17);
    let id = GradedMap::identity(x.base().clone());
    assert!(tot(&[x.clone(), x.clone(), x.clone()], &[id.clone(), id], 0).is_err());
}

#[test]
fn null_homotopy_of_zero_and_of_rigid_identity() {
    let (_, x) = point_complex();
    let zero = GradedMap::zero(x.base().clone(), x.base().clone(), Degree(0));
    let t = is_null_homotopic(&x, &x, &zero).unwrap();
    assert!(t.is_zero_map());
    // the identity of a one-dimensional complex with zero differential is
    // not null-homotopic: the linear system is 1 = 0
    let id = GradedMap::identity(x.base().clone());
    assert!(is_null_homotopic(&x, &x, &id).is_none());
}

#[test]
fn z0_kernel_cokernel_and_ses() {
    let (ring, x, mut g) = ke_obj(19);
    let id = GradedMap::identity(x.base().clone());
    let (k, _) = z0_kernel(&x, &x, &id);
    assert!(k.is_zero());

    // SES built from a random closed morphism: 0 → ker f → X → im f → 0
    let y = g.cdg_module(&ring, Instance::CdgMod);
    if let Some(f) = g.closed_map(&x, &y) {
        let (ker, incl) = z0_kernel(&x, &y, &f);
        let (im, _, cores) = z0_image(&x, &y, &f);
        assert!(ker.check().is_ok());
        assert!(im.check().is_ok());
        assert!(z0_ses_check(&ker, &x, &im, &incl, &cores));
    }

    // cokernel of 0 → M is M itself
    let z = x.zero_like();
    let zmap = GradedMap::zero(z.base().clone(), x.base().clone(), Degree(0));
    let (q, proj) = z0_cokernel(&z, &x, &zmap);
    assert_eq!(q.base().dims(), x.base().dims());
    assert!(proj.is_surjective());
    assert!(q.check().is_ok());
}

#[test]
fn canonical_xi_sequence_is_z0_exact() {
    // 0 → A[−1] → cone(id_{A[−1]}) → A → 0
    let (_, a, _) = ke_obj(21);
    let am1 = a.shift(-1).unwrap();
    let id = GradedMap::identity(am1.base().clone());
    let c = cone(&am1, &am1, &id).unwrap();
    // ι: A[−1] → C and s∘π: C → A[−1][1] ≅ A
    let shifted = &c.shifted_source; // A[−1][1]
    let s = shift_iso(&a, shifted, 0); // identity components A[−1][1] → A
    assert!(z0_ses_check(&am1, &c.object, &a, &c.iota, &GradedMap::compose(&s, &c.pi)));
}

#[test]
fn hom_into_cone_has_cone_dimensions() {
    let (ring, z, mut g) = ke_obj(23);
    let x = g.cdg_module(&ring, Instance::CdgMod);
    let y = g.cdg_module(&ring, Instance::CdgMod);
    let Some(f) = g.closed_map(&x, &y) else { return };
    let c = cone(&x, &y, &f).unwrap();
    let datum = ring.datum();
    for n in -2..=2 {
        let lhs = exact_dg::graded::hom_graded_dim(z.base(), c.object.base(), Degree(n));
        let rhs = exact_dg::graded::hom_graded_dim(z.base(), y.base(), Degree(n))
            + exact_dg::graded::hom_graded_dim(
                z.base(),
                x.base(),
                datum.add(Degree(n), Degree(1)),
            );
        assert_eq!(lhs, rhs, "graded pieces of Hom(Z, cone) at {n}");
    }
}

#[test]
fn homotopy_equivalence_solver_on_easy_pairs() {
    let (_, x, _) = ke_obj(25);
    // X ≃ X
    let eq = find_homotopy_equivalence(&x, &x).expect("identity equivalence");
    eq.verify(&x, &x).unwrap();
    // X ≃ X ⊕ cone(id_Y)
    let (_, y, _) = ke_obj(26);
    let c = cone(&y, &y, &GradedMap::identity(y.base().clone())).unwrap();
    let padded = x.direct_sum(&c.object);
    let eq2 = find_homotopy_equivalence(&x, &padded).expect("padding by contractibles");
    eq2.verify(&x, &padded).unwrap();
    // k and k[1] are not homotopy equivalent
    let (_, p) = point_complex();
    let p1 = p.shift(1).unwrap();
    assert!(find_homotopy_equivalence(&p, &p1).is_none());
}
