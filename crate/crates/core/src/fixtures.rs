//! Shared desk-scale fixtures: the trivial field algebra, the exterior
//! algebra k[ε]/(ε²) with deg ε = −1, its curved and two-variable
//! variants, and small modules over them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::graded::{GradedAlgebra, GradedModule, Tensor3};
use crate::grading::{Degree, GradingDatum};
use crate::scalar::Scalar;


/// Build an algebra from a basis-level product closure. Products landing
/// outside the window or in a zero component must be zero.
pub fn build_algebra<S: Scalar>(
    datum: GradingDatum,
    dims: &[(i64, usize)],
    unit: Vec<S>,
    prod: impl Fn(i64, usize, i64, usize) -> Vec<S>,
) -> Arc<GradedAlgebra<S>> {
    let dim_map: BTreeMap<Degree, usize> = dims.iter().map(|&(d, n)| (Degree(d), n)).collect();
    let mut mult = BTreeMap::new();
    for &(a, da) in dims {
        for &(b, db) in dims {
            let c = datum.add(Degree(a), Degree(b));
            let dc = dim_map.get(&c).copied().unwrap_or(0);
            if !datum.component_ok(c) || dc == 0 {
                continue;
            }
            let mut t = Tensor3::zero(da, db, dc);
            let mut nonzero = false;
            for i in 0..da {
                for j in 0..db {
                    let v = prod(a, i, b, j);
                    assert_eq!(v.len(), dc, "product length at ({a},{b})");
                    for (k, x) in v.into_iter().enumerate() {
                        if !x.is_zero() {
                            nonzero = true;
                        }
                        t.set(i, j, k, x);
                    }
                }
            }
            if nonzero {
                mult.insert((Degree(a), Degree(b)), t);
            }
        }
    }
    Arc::new(GradedAlgebra::new(datum, dim_map, mult, unit))
}

/// The base field as a graded algebra concentrated in degree 0.
pub fn trivial_algebra<S: Scalar>(datum: GradingDatum) -> Arc<GradedAlgebra<S>> {
    build_algebra(datum, &[(0, 1)], vec![S::one()], |_, _, _, _| vec![S::one()])
}

/// k[ε]/(ε²) with deg ε = −1 over a ℤ-window.
pub fn ke_algebra<S: Scalar>(lo: i64, hi: i64) -> Arc<GradedAlgebra<S>> {
    let datum = GradingDatum::standard_z(lo, hi);
    build_algebra(
        datum,
        &[(0, 1), (-1, 1)],
        vec![S::one()],
        |a, _, b, _| match (a, b) {
            (0, 0) => vec![S::one()],
            (0, -1) | (-1, 0) => vec![S::one()],
            _ => vec![S::zero(); 0],
        },
    )
}

/// k[ε,x]/(ε², x², εx−xε) with deg ε = −1, deg x = 0.
/// Degree-0 basis {1, x}; degree-(−1) basis {ε, εx}.
pub fn kex_algebra<S: Scalar>(lo: i64, hi: i64) -> Arc<GradedAlgebra<S>> {
    let datum = GradingDatum::standard_z(lo, hi);
    let zero2 = || vec![S::zero(), S::zero()];
    build_algebra(
        datum,
        &[(0, 2), (-1, 2)],
        vec![S::one(), S::zero()],
        move |a, i, b, j| match (a, b) {
            (0, 0) => match (i, j) {
                (0, 0) => vec![S::one(), S::zero()],
                (0, 1) | (1, 0) => vec![S::zero(), S::one()],
                _ => zero2(),
            },
            (0, -1) => match (i, j) {
                // 1·ε, 1·εx, x·ε = εx, x·εx = 0
                (0, 0) => vec![S::one(), S::zero()],
                (0, 1) => vec![S::zero(), S::one()],
                (1, 0) => vec![S::zero(), S::one()],
                _ => zero2(),
            },
            (-1, 0) => match (i, j) {
                (0, 0) => vec![S::one(), S::zero()],
                (1, 0) => vec![S::zero(), S::one()],
                (0, 1) => vec![S::zero(), S::one()],
                _ => zero2(),
            },
            _ => Vec::new(),
        },
    )
}

/// Path algebra of the quiver 1 → 2 → 3 with the composite relation
/// b·a = 0, concentrated in degree 0. Basis {e1, e2, e3, a, b}; its module
/// category has homological dimension exactly 2.
pub fn a3_quiver_algebra<S: Scalar>(lo: i64, hi: i64) -> Arc<GradedAlgebra<S>> {
    let datum = GradingDatum::standard_z(lo, hi);
    // indices: 0 = e1, 1 = e2, 2 = e3, 3 = a (e2·a·e1), 4 = b (e3·b·e2)
    let prod = move |_a: i64, i: usize, _b: i64, j: usize| -> Vec<S> {
        let mut v = vec![S::zero(); 5];
        let hit = |k: usize, v: &mut Vec<S>| v[k] = S::one();
        match (i, j) {
            (0, 0) => hit(0, &mut v),
            (1, 1) => hit(1, &mut v),
            (2, 2) => hit(2, &mut v),
            (3, 0) => hit(3, &mut v), // a·e1 = a
            (1, 3) => hit(3, &mut v), // e2·a = a
            (4, 1) => hit(4, &mut v), // b·e2 = b
            (2, 4) => hit(4, &mut v), // e3·b = b
            // b·a = 0 by the relation; all other pairs vanish
            _ => {}
        }
        v
    };
    build_algebra(
        datum,
        &[(0, 5)],
        vec![S::one(), S::one(), S::one(), S::zero(), S::zero()],
        prod,
    )
}

/// The simple module at vertex 1 of the A3 quiver (projective dimension 2).
pub fn a3_simple_one<S: Scalar>(alg: &Arc<GradedAlgebra<S>>) -> Arc<GradedModule<S>> {
    let mut dims = BTreeMap::new();
    dims.insert(Degree(0), 1usize);
    let mut t = Tensor3::zero(5, 1, 1);
    t.set(0, 0, 0, S::one()); // e1 acts as identity, everything else kills it
    let mut action = BTreeMap::new();
    action.insert((Degree(0), Degree(0)), t);
    Arc::new(GradedModule::new(alg.clone(), dims, action))
}

/// Ungraded k[x]/(x²) as structure-constant data (dim, table, unit).
pub fn kx2_data<S: Scalar>() -> (usize, Tensor3<S>, Vec<S>) {
    let mut t = Tensor3::zero(2, 2, 2);
    t.set(0, 0, 0, S::one());
    t.set(0, 1, 1, S::one());
    t.set(1, 0, 1, S::one());
    (2, t, vec![S::one(), S::zero()])
}

/// The simple module k = R/εR in degree 0 over KE-like algebras (ε acts
/// by zero, the degree-0 part acts through its augmentation).
pub fn ke_simple<S: Scalar>(alg: &Arc<GradedAlgebra<S>>) -> Arc<GradedModule<S>> {
    let mut dims = BTreeMap::new();
    dims.insert(Degree(0), 1usize);
    let mut action = BTreeMap::new();
    let mut t = Tensor3::zero(1, 1, 1);
    t.set(0, 0, 0, S::one());
    action.insert((Degree(0), Degree(0)), t);
    Arc::new(GradedModule::new(alg.clone(), dims, action))
}

/// M = R/Rε over KEX: 2-dimensional in degree 0, basis {1̄, x̄},
/// with x acting nonzero and ε acting by zero.
pub fn kex_x_module<S: Scalar>(alg: &Arc<GradedAlgebra<S>>) -> Arc<GradedModule<S>> {
    let mut dims = BTreeMap::new();
    dims.insert(Degree(0), 2usize);
    let mut action = BTreeMap::new();
    let mut t = Tensor3::zero(2, 2, 2);
    // 1 acts as identity, x shifts 1̄ ↦ x̄ ↦ 0
    t.set(0, 0, 0, S::one());
    t.set(0, 1, 1, S::one());
    t.set(1, 0, 1, S::one());
    action.insert((Degree(0), Degree(0)), t);
    Arc::new(GradedModule::new(alg.clone(), dims, action))
}

/// Same underlying shape but with x also acting by zero (the variant that
/// does admit the zero differential).
pub fn kex_x_zero_module<S: Scalar>(alg: &Arc<GradedAlgebra<S>>) -> Arc<GradedModule<S>> {
    let mut dims = BTreeMap::new();
    dims.insert(Degree(0), 2usize);
    let mut action = BTreeMap::new();
    let mut t = Tensor3::zero(2, 2, 2);
    t.set(0, 0, 0, S::one());
    t.set(0, 1, 1, S::one());
    action.insert((Degree(0), Degree(0)), t);
    Arc::new(GradedModule::new(alg.clone(), dims, action))
}

use crate::cdg::{matrix_factorization_ring, CdgRing};
use crate::matrix::Matrix;

/// The exterior algebra k[ε]/(ε²) with d(ε) = 1, h = 0 — an acyclic
/// DG-algebra. Called KE throughout.
pub fn ke_dg_ring<S: Scalar>(lo: i64, hi: i64) -> Arc<CdgRing<S>> {
    let base = ke_algebra::<S>(lo, hi);
    let mut d = BTreeMap::new();
    d.insert(Degree(-1), Matrix::from_int_rows(&[&[1]]));
    Arc::new(CdgRing::new(base, d, Vec::new()))
}

/// KE with the zero differential (plain exterior algebra as a DG-ring).
pub fn ke_zero_d_ring<S: Scalar>(lo: i64, hi: i64) -> Arc<CdgRing<S>> {
    let base = ke_algebra::<S>(lo, hi);
    Arc::new(CdgRing::new(base, BTreeMap::new(), Vec::new()))
}

/// The curved point: Γ = ℤ/2, R = k in even degree, d = 0, h = 1.
pub fn curved_point<S: Scalar>() -> Arc<CdgRing<S>> {
    let datum = GradingDatum::standard_mod(1);
    let base = trivial_algebra::<S>(datum);
    Arc::new(CdgRing::new(base, BTreeMap::new(), vec![S::one()]))
}

/// The trivial DG-point over any datum: k, d = 0, h = 0.
pub fn trivial_cdg<S: Scalar>(datum: GradingDatum) -> Arc<CdgRing<S>> {
    let base = trivial_algebra::<S>(datum);
    let h_dim = base.dim_at(datum_two(&base));
    Arc::new(CdgRing::new(base, BTreeMap::new(), vec![S::zero(); h_dim]))
}

fn datum_two<S: Scalar>(base: &Arc<crate::graded::GradedAlgebra<S>>) -> Degree {
    let one = base.datum.one_degree();
    base.datum.add(one, one)
}

/// KEX as a DG-ring: d(ε) = x, d(x) = 0, h = 0.
pub fn kex_dg_ring<S: Scalar>(lo: i64, hi: i64) -> Arc<CdgRing<S>> {
    let base = kex_algebra::<S>(lo, hi);
    let mut d = BTreeMap::new();
    // degree −1 basis {ε, εx} ↦ degree 0 basis {1, x}: ε ↦ x, εx ↦ 0
    d.insert(Degree(-1), Matrix::from_int_rows(&[&[0, 0], &[1, 0]]));
    Arc::new(CdgRing::new(base, d, Vec::new()))
}

/// Matrix-factorization CDG-ring of (k[x]/(x²), w = x).
pub fn mf_kx2<S: Scalar>() -> Arc<CdgRing<S>> {
    let (dim, table, unit) = kx2_data::<S>();
    matrix_factorization_ring(dim, table, unit, vec![S::zero(), S::one()]).unwrap()
}

/// Matrix-factorization CDG-ring of (k, w), for w ∈ {0, 1}.
pub fn mf_point<S: Scalar>(w: S) -> Arc<CdgRing<S>> {
    let mut table = Tensor3::zero(1, 1, 1);
    table.set(0, 0, 0, S::one());
    matrix_factorization_ring(1, table, vec![S::one()], vec![w]).unwrap()
}

/// An ungraded algebra placed in degree 0, as a curvature-free CDG-ring
/// over a ℤ-window: the carrier for the complexes instance.
pub fn complexes_ring<S: Scalar>(
    dim: usize,
    table: Tensor3<S>,
    unit: Vec<S>,
    lo: i64,
    hi: i64,
) -> Arc<CdgRing<S>> {
    let datum = GradingDatum::standard_z(lo, hi);
    let base = Arc::new(crate::graded::GradedAlgebra::ungraded(datum, dim, table, unit));
    Arc::new(CdgRing::new(base, BTreeMap::new(), Vec::new()))
}

/// The field itself as the complexes-instance base.
pub fn complexes_over_field<S: Scalar>(lo: i64, hi: i64) -> Arc<CdgRing<S>> {
    let mut table = Tensor3::zero(1, 1, 1);
    table.set(0, 0, 0, S::one());
    complexes_ring(1, table, vec![S::one()], lo, hi)
}
