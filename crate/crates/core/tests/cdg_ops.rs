//! CDG axioms, the delta extension with its perfect pairing, G± with the
//! canonical sequences, adjunction transport, twists, and the
//! matrix-factorization encoding.

use std::collections::BTreeMap;
use std::sync::Arc;

use exact_dg::cdg::*;
use exact_dg::fixtures::*;
use exact_dg::graded::{hom_graded, GradedMap, GradedModule};
use exact_dg::grading::Degree;
use exact_dg::matrix::Matrix;
use exact_dg::scalar::Rat;
use num_traits::{One, Zero};

#[test]
fn fixture_rings_satisfy_axioms() {
    assert!(ke_dg_ring::<Rat>(-5, 5).check().is_ok());
    assert!(ke_zero_d_ring::<Rat>(-5, 5).check().is_ok());
    assert!(curved_point::<Rat>().check().is_ok());
    assert!(kex_dg_ring::<Rat>(-5, 5).check().is_ok());
    assert!(mf_kx2::<Rat>().check().is_ok());
    assert!(mf_point::<Rat>(Rat::one()).check().is_ok());
    assert!(complexes_over_field::<Rat>(-4, 4).check().is_ok());
}

#[test]
fn dg_rings_are_cdg_with_zero_curvature() {
    let ke = ke_dg_ring::<Rat>(-5, 5);
    assert!(ke.is_dg());
    let cp = curved_point::<Rat>();
    assert!(!cp.is_dg());
}

#[test]
fn broken_leibniz_is_reported() {
    // KE with d(ε) = 1 but also a wrong block d(1) = 1 placed at degree 0
    let base = ke_algebra::<Rat>(-5, 5);
    let mut d = BTreeMap::new();
    d.insert(Degree(-1), Matrix::from_int_rows(&[&[1]]));
    d.insert(Degree(0), Matrix::zero(0, 1));
    let ring = CdgRing::new(base.clone(), d, Vec::new());
    assert!(ring.check().is_ok());
    // a genuinely broken ring: KEX with d(ε) = 1 instead of x
    let kex = kex_algebra::<Rat>(-5, 5);
    let mut d3 = BTreeMap::new();
    d3.insert(Degree(-1), Matrix::from_int_rows(&[&[1, 0], &[0, 0]]));
    let bad = CdgRing::new(kex, d3, Vec::new());
    let report = bad.check();
    assert!(report.messages().iter().any(|m| m.contains("Leibniz")));
}

#[test]
fn change_of_connection_composes_to_identity() {
    // over KE: a = c·(nothing in degree 1)… use KEX which has no degree-1
    // part either; the curved point has R¹ = 0 as well. Exercise the rule
    // with a = 0 where it is still the composition law, and with the
    // delta extension ring which has a degree-1 component.
    let ke = ke_dg_ring::<Rat>(-5, 5);
    let ext = delta_extension(&ke).unwrap();
    let rdelta = Arc::new(CdgRing::new(ext.ring.clone(), BTreeMap::new(), {
        let two = ext.ring.datum.add(Degree(1), Degree(1));
        vec![Rat::zero(); ext.ring.dim_at(two)]
    }));
    // a = δ ∈ (R[δ])¹
    let (_, a) = ext.delta_coords();
    let (m1, target) = CdgRingMorphism::identity_with_connection(&rdelta, a.clone());
    assert!(m1.check().is_ok());
    let neg_a: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
    let (m2, _target2) = CdgRingMorphism::identity_with_connection(&target, neg_a);
    assert!(m2.check().is_ok());
    let comp = CdgRingMorphism::compose(&m1, &m2);
    assert!(comp.a.iter().all(|x| x.is_zero()));
    assert!(comp.check().is_ok());
    // the double transport lands back on the original differential
    for &d in rdelta.base.dims().keys() {
        assert_eq!(comp.source.d.block_at(d), rdelta.d.block_at(d));
    }
    assert_eq!(comp.source.h, rdelta.h);
}

#[test]
fn delta_extension_of_trivial_ring() {
    let datum = exact_dg::GradingDatum::standard_z(-3, 3);
    let k = trivial_cdg::<Rat>(datum);
    let ext = delta_extension(&k).unwrap();
    assert!(ext.ring.check().is_ok());
    assert_eq!(ext.ring.dim_at(Degree(0)), 1);
    assert_eq!(ext.ring.dim_at(Degree(1)), 1);
    // ∂(δ) = 1, ∂² = 0, δ² = h = 0
    let (dd, dv) = ext.delta_coords();
    let (pd, pv) = ext.partial(dd, &dv);
    assert_eq!(pd, Degree(0));
    assert_eq!(pv, vec![Rat::one()]);
    let dd2 = ext.ring.product(dd, &dv, dd, &dv);
    assert!(dd2.iter().all(|x| x.is_zero()));
}

#[test]
fn delta_extension_ke_product_formula() {
    // δ·ε = 1 − εδ over KE with d(ε) = 1
    let ke = ke_dg_ring::<Rat>(-5, 5);
    let ext = delta_extension(&ke).unwrap();
    assert!(ext.ring.check().is_ok());
    let (dd, dv) = ext.delta_coords();
    // ε as an element of R[δ]^{-1}: r-part = ε, s-part ∈ R^{-2} = 0
    let mut eps = vec![Rat::zero(); ext.dim_at(Degree(-1))];
    eps[0] = Rat::one();
    let prod = ext.ring.product(dd, &dv, Degree(-1), &eps);
    // degree 0 coordinates: (r-part over R⁰ = 1-dim, s-part over R^{-1} = 1-dim)
    assert_eq!(prod.len(), 2);
    assert_eq!(prod[0], Rat::one(), "r-part is 1");
    assert_eq!(prod[1], -Rat::one(), "δ-part is −ε");
}

#[test]
fn delta_extension_curved_point_delta_squared_is_h() {
    let cp = curved_point::<Rat>();
    let ext = delta_extension(&cp).unwrap();
    assert!(ext.ring.check().is_ok());
    let (dd, dv) = ext.delta_coords();
    let sq = ext.ring.product(dd, &dv, dd, &dv);
    // degree 2 = 0 mod 2: r-part is R⁰ = k: h = 1
    assert_eq!(sq[0], Rat::one());
}

#[test]
fn partial_squares_to_zero_and_kernel_equals_image() {
    for ring in [
        ke_dg_ring::<Rat>(-4, 4),
        curved_point::<Rat>(),
        kex_dg_ring::<Rat>(-4, 4),
        mf_kx2::<Rat>(),
    ] {
        let ext = delta_extension(&ring).unwrap();
        let reg = Arc::new(GradedModule::regular(&ext.ring));
        for &n in &reg.support() {
            let dim = reg.dim_at(n);
            let prev = ring.datum().sub(n, ring.one());
            let mut mat = Matrix::<Rat>::zero(ext.dim_at(prev), dim);
            for c in 0..dim {
                let x = reg.basis_vector(n, c);
                let (_, px) = ext.partial(n, &x);
                for (r, v) in px.into_iter().enumerate() {
                    mat[(r, c)] = v;
                }
            }
            // ∂² = 0 via rank bookkeeping: rank ∂_n = dim R^{n−1},
            // kernel dim = dim R^n (so ker ∂ = im ∂ = R* degreewise)
            let r_dim = ring.base.dim_at(ring.datum().sub(n, ring.one()));
            assert_eq!(mat.rank(), r_dim);
            assert_eq!(dim - mat.rank(), ring.base.dim_at(n));
            // and ∂∘∂ literally vanishes
            for c in 0..dim {
                let x = reg.basis_vector(n, c);
                let (pd, px) = ext.partial(n, &x);
                let (_, ppx) = ext.partial(pd, &px);
                assert!(ppx.iter().all(|v| v.is_zero()));
            }
        }
    }
}

#[test]
fn pairing_is_perfect_on_fixture_rings() {
    for ring in [
        trivial_cdg::<Rat>(exact_dg::GradingDatum::standard_z(-3, 3)),
        ke_dg_ring::<Rat>(-4, 4),
        curved_point::<Rat>(),
        kex_dg_ring::<Rat>(-4, 4),
        mf_kx2::<Rat>(),
    ] {
        let ext = delta_extension(&ring).unwrap();
        let ranks = pairing_rank(&ext).unwrap();
        for (&n, &r) in &ranks {
            assert_eq!(r, ext.dim_at(n));
        }
    }
    // zero ring: vacuously perfect
    let datum = exact_dg::GradingDatum::standard_z(-2, 2);
    let zero = Arc::new(CdgRing::new(
        Arc::new(exact_dg::graded::GradedAlgebra::<Rat>::zero_algebra(datum)),
        BTreeMap::new(),
        Vec::new(),
    ));
    let ext = delta_extension(&zero).unwrap();
    assert!(pairing_rank(&ext).unwrap().is_empty());
}

#[test]
fn g_plus_of_zero_and_of_simple_over_ke() {
    let ke = ke_dg_ring::<Rat>(-5, 5);
    let z = Arc::new(GradedModule::zero_module(ke.base.clone()));
    let gz = g_plus(&ke, &z).unwrap();
    assert!(gz.module.is_zero());

    // G⁺(k) over KE is graded-free of rank one generated in degree 1
    let k = ke_simple(&ke.base);
    let gk = g_plus(&ke, &k).unwrap();
    assert!(gk.module.check().is_ok());
    assert_eq!(gk.module.base.dim_at(Degree(1)), 1);
    assert_eq!(gk.module.base.dim_at(Degree(0)), 1);
    assert_eq!(gk.module.total_dim(), 2);
    assert!(exact_dg::graded::is_projective(&gk.module.base).unwrap());
    // ε·(δm′) = m′ term: the action of ε on the degree-1 part is onto
    let eps = ke.base.basis_vector(Degree(-1), 0);
    let act = gk.module.base.act_matrix(Degree(-1), &eps, Degree(1));
    assert_eq!(act.rank(), 1);
}

#[test]
fn g_plus_curved_point_squares_to_curvature() {
    let cp = curved_point::<Rat>();
    let k = ke_simple(&cp.base);
    let g = g_plus(&cp, &k).unwrap();
    assert!(g.module.check().is_ok(), "d² = h·id is part of the axioms");
    assert_eq!(g.module.total_dim(), 2);
    // explicitly: squaring the differential gives the identity (h = 1)
    for &n in g.module.base.dims().keys() {
        let d1 = g.module.d.block_at(n);
        let d2 = g
            .module
            .d
            .block_at(cp.datum().add(n, Degree(1)));
        let sq = d2.mul(&d1);
        assert_eq!(sq, Matrix::identity(g.module.base.dim_at(n)));
    }
}

#[test]
fn g_plus_canonical_sequence_is_exact() {
    let ke = ke_dg_ring::<Rat>(-5, 5);
    for m in [ke_simple(&ke.base), Arc::new(GradedModule::regular(&ke.base))] {
        let g = g_plus(&ke, &m).unwrap();
        assert!(g.incl.check().is_ok());
        assert!(g.proj.check().is_ok());
        assert!(g.incl.is_injective());
        assert!(g.proj.is_surjective());
        assert!(GradedMap::compose(&g.proj, &g.incl).is_zero_map());
        for &d in g.module.base.dims().keys() {
            let rank_incl = g.incl.block_at(d).rank();
            let ker_proj = g.proj.block_at(d).kernel_basis().cols();
            assert_eq!(rank_incl, ker_proj);
        }
        // σ axioms: σ² = 0 and dσ + σd = id
        let sig = &g.sigma;
        assert!(sig.check().is_ok());
        assert!(GradedMap::compose(sig, sig).is_zero_map());
        let dsig = GradedMap::compose(&g.module.d, sig).add(&GradedMap::compose(sig, &g.module.d));
        assert!(dsig.equal(&GradedMap::identity(g.module.base.clone())));
    }
}

#[test]
fn g_minus_is_shifted_g_plus() {
    let ke = ke_dg_ring::<Rat>(-5, 5);
    for m in [ke_simple(&ke.base), Arc::new(GradedModule::regular(&ke.base))] {
        let (minus, plus_shift, iso) = g_minus_to_g_plus_shift(&ke, &m).unwrap();
        assert!(minus.module.check().is_ok());
        assert!(iso.check().is_ok());
        assert!(iso.is_injective() && iso.is_surjective());
        // iso commutes with the differentials
        for &n in minus.module.base.dims().keys() {
            let lhs = plus_shift.d.block_at(n).mul(&iso.block_at(n));
            let rhs = iso
                .block_at(ke.datum().add(n, Degree(1)))
                .mul(&minus.module.d.block_at(n));
            assert_eq!(lhs, rhs);
        }
        // exactness of 0 → M[1] → G⁻(M) → M → 0
        assert!(minus.incl.is_injective());
        assert!(minus.proj.is_surjective());
        assert!(GradedMap::compose(&minus.proj, &minus.incl).is_zero_map());
        // the isomorphism carries the G⁻ sequence into the shifted G⁺ one:
        // iso ∘ incl₋ lands in the δ-part, which is the shifted M-inclusion
        let carried = GradedMap::compose(&iso, &minus.incl);
        assert!(carried.is_injective());
    }
}

#[test]
fn adjunction_round_trips() {
    let ke = ke_dg_ring::<Rat>(-5, 5);
    let k = ke_simple(&ke.base);
    let gk = g_plus(&ke, &k).unwrap();
    // f = 0 transports to 0
    let zero = GradedMap::zero(k.clone(), gk.module.base.clone(), Degree(0));
    let g0 = adjunction_transport_gplus(&gk, &gk.module, &zero);
    assert!(g0.is_zero_map());
    // round trip both ways on the full hom basis
    for f in hom_graded(&k, &gk.module.base, Degree(0)) {
        let g = adjunction_transport_gplus(&gk, &gk.module, &f);
        // g is closed: d∘g = g∘d_{G⁺}
        let lhs = GradedMap::compose(&gk.module.d, &g);
        let rhs = GradedMap::compose(&g, &gk.module.d);
        assert!(lhs.equal(&rhs));
        let back = adjunction_restrict_gplus(&gk, &g);
        assert!(back.equal(&f));
    }
    // counit: transport of id on the underlying module is surjective
    let under = &gk.module.base;
    let counit = adjunction_transport_gplus(
        &g_plus(&ke, under).unwrap(),
        &gk.module,
        &GradedMap::identity(under.clone()),
    );
    assert!(counit.is_surjective());
    // transport of the canonical map k → U(G⁺(k)) is an isomorphism
    let mut found = false;
    for f in hom_graded(&k, &gk.module.base, Degree(0)) {
        if f.is_zero_map() {
            continue;
        }
        let g = adjunction_transport_gplus(&gk, &gk.module, &f);
        if g.is_injective() && g.is_surjective() {
            found = true;
        }
    }
    assert!(found, "no isomorphism transport found");
}

#[test]
fn twist_by_zero_and_non_mc_rejection() {
    let ke = ke_dg_ring::<Rat>(-5, 5);
    let k = ke_simple(&ke.base);
    let g = g_plus(&ke, &k).unwrap();
    let zero = GradedMap::zero(g.module.base.clone(), g.module.base.clone(), Degree(1));
    let same = twist_cdg(&g.module, &zero).unwrap();
    assert!(same.d.equal(&g.module.d));

    // hunt for a non-Maurer–Cartan degree-1 endomorphism on a curved fixture
    let cp = curved_point::<Rat>();
    let kc = ke_simple(&cp.base);
    let gc = g_plus(&cp, &kc).unwrap();
    let basis = hom_graded(&gc.module.base, &gc.module.base, Degree(1));
    assert!(!basis.is_empty());
    let mut rejected = false;
    for a in &basis {
        if twist_cdg(&gc.module, a).is_err() {
            rejected = true;
        }
    }
    assert!(rejected, "some degree-1 cochain must fail Maurer–Cartan");
}

#[test]
fn matrix_factorizations_as_cdg_modules() {
    // (k, w = 0): 2-periodic complexes
    let dg_point = mf_point::<Rat>(Rat::zero());
    let free = Arc::new(GradedModule::free(&dg_point.base, &[Degree(0), Degree(1)]).unwrap());
    let mut d_blocks = BTreeMap::new();
    d_blocks.insert(Degree(0), Matrix::from_int_rows(&[&[0]]));
    d_blocks.insert(Degree(1), Matrix::from_int_rows(&[&[0]]));
    let m = CdgModule::new(dg_point.clone(), free, d_blocks);
    assert!(m.check().is_ok());

    // (k[x]/(x²), w = x): the rank-(1|1) factorization d = (x·, 1·)
    let mf = mf_kx2::<Rat>();
    let base = Arc::new(GradedModule::free(&mf.base, &[Degree(0), Degree(1)]).unwrap());
    assert_eq!(base.dim_at(Degree(0)), 2);
    assert_eq!(base.dim_at(Degree(1)), 2);
    let mut d_blocks = BTreeMap::new();
    // degree 0 block: multiply by x into the degree-1 copy
    d_blocks.insert(Degree(0), Matrix::from_int_rows(&[&[0, 0], &[1, 0]]));
    // degree 1 block: identity back into the degree-0 copy
    d_blocks.insert(Degree(1), Matrix::from_int_rows(&[&[1, 0], &[0, 1]]));
    let fact = CdgModule::new(mf.clone(), base, d_blocks);
    assert!(fact.check().is_ok(), "d² = x·id is the factorization law");

    // (k, w = 1): no module concentrated in even degree exists
    let unit_point = mf_point::<Rat>(Rat::one());
    let even = ke_simple(&unit_point.base);
    let bad = CdgModule::new(unit_point, even, BTreeMap::new());
    let report = bad.check();
    assert!(report.messages().iter().any(|m| m.contains("d² ≠ h·")));
}

#[test]
fn delta_module_round_trip() {
    let ke = ke_dg_ring::<Rat>(-5, 5);
    let ext = delta_extension(&ke).unwrap();
    let k = ke_simple(&ke.base);
    let g = g_plus(&ke, &k).unwrap();
    let delta_mod = to_delta_module(&ext, &g.module);
    assert!(delta_mod.check().is_ok(), "R[δ]-module axioms hold");
    let back = from_delta_module(&ext, &ke, &delta_mod);
    assert_eq!(back.base.dims(), g.module.base.dims());
    assert!(back.d.equal(&g.module.d));
    assert!(back.check().is_ok());
    for &a in &ke.base.support() {
        for &m in &back.base.support() {
            for i in 0..ke.base.dim_at(a) {
                let r = ke.base.basis_vector(a, i);
                assert_eq!(
                    back.base.act_matrix(a, &r, m),
                    g.module.base.act_matrix(a, &r, m)
                );
            }
        }
    }
}
