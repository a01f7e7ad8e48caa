//! Free covers, projective resolutions, the Ext oracle, and injective
//! covers via vector-space duality.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::hom::{hom_graded, map_coordinates};
use super::map::{kernel, GradedMap};
use super::module::GradedModule;
use crate::grading::{Degree, GroupKind};
use crate::matrix::Matrix;
use crate::scalar::Scalar;


/// Deterministic degree order for generator selection. Algebras in this
/// artifact live in nonpositive degrees (ε has degree −1), so generation
/// flows downward: pick top degrees first in the ℤ case.
fn cover_order(module: &GradedModule<impl Scalar>) -> Vec<Degree> {
    match module.algebra.datum.kind {
        GroupKind::IntWindow { .. } => {
            let mut degs = module.support();
            degs.reverse();
            degs
        }
        GroupKind::Mod2p { .. } => module.support(),
    }
}

/// Span (as independent columns) of R·v inside each degree, for all chosen
/// generators.
fn generated_span<S: Scalar>(
    module: &GradedModule<S>,
    gens: &[(Degree, Vec<S>)],
    at: Degree,
) -> Matrix<S> {
    let datum = &module.algebra.datum;
    let mut cols: Vec<Vec<S>> = Vec::new();
    for (e, v) in gens {
        for &a in &module.algebra.support() {
            if datum.add(a, *e) != datum.normalize(at) {
                continue;
            }
            for i in 0..module.algebra.dim_at(a) {
                let r = module.algebra.basis_vector(a, i);
                cols.push(module.act(a, &r, *e, v));
            }
        }
    }
    let n = module.dim_at(at);
    let mut m = Matrix::zero(n, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            m[(r, c)] = x.clone();
        }
    }
    m.image_basis()
}

/// Free cover: a free module on homogeneous generators together with a
/// surjective degree-0 map onto M. Deterministic generator choice.
pub fn free_cover<S: Scalar>(
    module: &Arc<GradedModule<S>>,
) -> Result<(Arc<GradedModule<S>>, GradedMap<S>, Vec<Degree>), String> {
    free_cover_impl(module, false)
}

/// Same contract, but the generator complement is picked from the reversed
/// standard basis. Used to cross-check resolution independence.
pub fn free_cover_rev<S: Scalar>(
    module: &Arc<GradedModule<S>>,
) -> Result<(Arc<GradedModule<S>>, GradedMap<S>, Vec<Degree>), String> {
    free_cover_impl(module, true)
}

fn free_cover_impl<S: Scalar>(
    module: &Arc<GradedModule<S>>,
    rev: bool,
) -> Result<(Arc<GradedModule<S>>, GradedMap<S>, Vec<Degree>), String> {
    let datum = module.algebra.datum.clone();
    let mut gens: Vec<(Degree, Vec<S>)> = Vec::new();
    for d in cover_order(module) {
        let n = module.dim_at(d);
        // add one generator at a time: each one enlarges the span
        loop {
            let span = generated_span(module, &gens, d);
            if span.cols() == n {
                break;
            }
            let mut ext = Matrix::identity(n);
            if rev {
                let order: Vec<usize> = (0..n).rev().collect();
                ext = ext.submatrix_cols(&order);
            }
            let aug = span.hstack(&ext);
            let (_, pivots) = aug.rref();
            let p = *pivots
                .iter()
                .find(|&&p| p >= span.cols())
                .expect("some standard vector extends a proper span");
            let idx = if rev {
                n - 1 - (p - span.cols())
            } else {
                p - span.cols()
            };
            let mut v = vec![S::zero(); n];
            v[idx] = S::one();
            gens.push((d, v));
        }
    }
    let gen_degrees: Vec<Degree> = gens.iter().map(|(d, _)| *d).collect();
    let free = Arc::new(GradedModule::free(&module.algebra, &gen_degrees)?);
    // the covering map sends r·(generator i) to r·v_i
    let mut blocks = BTreeMap::new();
    for &m in free.dims().keys() {
        let rows = module.dim_at(m);
        let mut cols: Vec<Vec<S>> = Vec::new();
        for (e, v) in &gens {
            let a = datum.sub(m, *e);
            if !datum.component_ok(a) {
                continue;
            }
            for i in 0..module.algebra.dim_at(a) {
                let r = module.algebra.basis_vector(a, i);
                cols.push(module.act(a, &r, *e, v));
            }
        }
        let mut b = Matrix::zero(rows, free.dim_at(m));
        debug_assert_eq!(cols.len(), free.dim_at(m));
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                b[(r, c)] = x.clone();
            }
        }
        blocks.insert(m, b);
    }
    let epi = GradedMap::new(free.clone(), module.clone(), Degree(0), blocks);
    Ok((free, epi, gen_degrees))
}

/// A length-ℓ complex of free modules F_ℓ → … → F_0 ↠ M with the kernel at
/// the final stage.
pub struct ProjResolution<S: Scalar> {
    pub modules: Vec<Arc<GradedModule<S>>>,
    /// maps[i]: F_{i+1} → F_i
    pub maps: Vec<GradedMap<S>>,
    pub augmentation: GradedMap<S>,
    pub tail_kernel: (Arc<GradedModule<S>>, GradedMap<S>),
}

impl<S: Scalar> ProjResolution<S> {
    /// Rank identities: augmentation epi, composites zero, exactness at
    /// every stage.
    pub fn verify_exact(&self) -> Result<(), String> {
        if !self.augmentation.is_surjective() {
            return Err("augmentation is not surjective".into());
        }
        let mut incoming = self.augmentation.clone();
        for (i, d) in self.maps.iter().enumerate() {
            let comp = GradedMap::compose(&incoming, d);
            if !comp.is_zero_map() {
                return Err(format!("composite at stage {} is nonzero", i));
            }
            // exactness: rank d = dim ker incoming, per degree
            for &deg in d.source.dims().keys() {
                let r = d.block_at(deg).rank();
                let inc_block = incoming.block_at(deg);
                let k = inc_block.cols() - inc_block.rank();
                if r != k {
                    return Err(format!(
                        "not exact at stage {} degree {}: rank {} vs kernel {}",
                        i, deg, r, k
                    ));
                }
            }
            incoming = d.clone();
        }
        let (_, incl) = &self.tail_kernel;
        for &deg in incl.source.dims().keys() {
            let inc_block = incoming.block_at(deg);
            let k = inc_block.cols() - inc_block.rank();
            if incl.block_at(deg).rank() != k {
                return Err(format!("tail kernel wrong at degree {}", deg));
            }
        }
        Ok(())
    }
}

pub fn proj_resolution<S: Scalar>(
    module: &Arc<GradedModule<S>>,
    length: usize,
) -> Result<ProjResolution<S>, String> {
    proj_resolution_impl(module, length, false)
}

fn proj_resolution_impl<S: Scalar>(
    module: &Arc<GradedModule<S>>,
    length: usize,
    rev: bool,
) -> Result<ProjResolution<S>, String> {
    let (f0, aug, _) = free_cover_impl(module, rev)?;
    let mut modules = vec![f0];
    let mut maps = Vec::new();
    let (mut ker, mut incl) = kernel(&aug);
    for _ in 0..length {
        let (fi, epi, _) = free_cover_impl(&ker, rev)?;
        let d = GradedMap::compose(&incl, &epi);
        modules.push(fi);
        maps.push(d.clone());
        let (k2, i2) = kernel(&d);
        ker = k2;
        incl = i2;
    }
    Ok(ProjResolution {
        modules,
        maps,
        augmentation: aug,
        tail_kernel: (ker, incl),
    })
}

/// Submodule generated by the given homogeneous seed vectors, with its
/// inclusion map.
pub fn generated_submodule<S: Scalar>(
    module: &Arc<GradedModule<S>>,
    seeds: &[(Degree, Vec<S>)],
) -> (Arc<GradedModule<S>>, GradedMap<S>) {
    let mut basis = std::collections::BTreeMap::new();
    for &d in module.dims().keys() {
        basis.insert(d, generated_span(module, seeds, d));
    }
    let sub = Arc::new(
        module
            .submodule(&basis)
            .expect("generated span is action-stable"),
    );
    let incl = GradedMap::new(sub.clone(), module.clone(), Degree(0), basis);
    (sub, incl)
}

/// dim Ext^n(M, N) in the category of graded modules, computed as the
/// cohomology of Hom⁰(F_•, N) for a free resolution F_• → M.
pub fn ext_dim<S: Scalar>(
    m: &Arc<GradedModule<S>>,
    n: &Arc<GradedModule<S>>,
    degree: usize,
) -> Result<usize, String> {
    ext_dim_impl(m, n, degree, false)
}

/// Ext computed through the reversed-complement covers; must agree with
/// [`ext_dim`] (resolution independence).
pub fn ext_dim_alt<S: Scalar>(
    m: &Arc<GradedModule<S>>,
    n: &Arc<GradedModule<S>>,
    degree: usize,
) -> Result<usize, String> {
    ext_dim_impl(m, n, degree, true)
}

fn ext_dim_impl<S: Scalar>(
    m: &Arc<GradedModule<S>>,
    n: &Arc<GradedModule<S>>,
    degree: usize,
    rev: bool,
) -> Result<usize, String> {
    if degree == 0 {
        return Ok(hom_graded(m, n, Degree(0)).len());
    }
    let res = proj_resolution_impl(m, degree + 1, rev)?;
    let bases: Vec<Vec<GradedMap<S>>> = res
        .modules
        .iter()
        .map(|f| hom_graded(f, n, Degree(0)))
        .collect();
    // differential D^i: Hom(F_i, N) → Hom(F_{i+1}, N), φ ↦ φ∘d_{i+1}
    let matrix_of = |i: usize| -> Matrix<S> {
        let src = &bases[i];
        let tgt = &bases[i + 1];
        let mut mat = Matrix::zero(tgt.len(), src.len());
        for (c, phi) in src.iter().enumerate() {
            let comp = GradedMap::compose(phi, &res.maps[i]);
            let coords = map_coordinates(tgt, &comp)
                .expect("composite lies in the hom basis span");
            for (r, v) in coords.into_iter().enumerate() {
                mat[(r, c)] = v;
            }
        }
        mat
    };
    let d_prev = matrix_of(degree - 1);
    let d_here = matrix_of(degree);
    let ker_dim = d_here.cols() - d_here.rank();
    Ok(ker_dim - d_prev.rank())
}

/// Exact projectivity test: M is projective iff its free cover splits,
/// decided by one linear solve over the degree-0 hom basis.
pub fn is_projective<S: Scalar>(module: &Arc<GradedModule<S>>) -> Result<bool, String> {
    if module.is_zero() {
        return Ok(true);
    }
    let (f, epi, _) = free_cover(module)?;
    let basis = hom_graded(module, &f, Degree(0));
    if basis.is_empty() {
        return Ok(false);
    }
    // solve epi ∘ (Σ c_i σ_i) = id blockwise
    let id = super::map::GradedMap::identity(module.clone());
    let composed: Vec<super::map::GradedMap<S>> = basis
        .iter()
        .map(|sigma| super::map::GradedMap::compose(&epi, sigma))
        .collect();
    let target_basis = hom_graded(module, module, Degree(0));
    let mut sys = crate::matrix::LinSys::new(basis.len());
    let id_coords = map_coordinates(&target_basis, &id).expect("identity is a hom");
    // coordinates of each composite in the endo hom basis
    let comp_coords: Vec<Vec<S>> = composed
        .iter()
        .map(|c| map_coordinates(&target_basis, c).expect("composite is a hom"))
        .collect();
    for row in 0..target_basis.len() {
        let coeffs: Vec<(usize, S)> = comp_coords
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v[row].clone()))
            .collect();
        sys.push(coeffs, id_coords[row].clone());
    }
    Ok(sys.solve().is_some())
}

/// Dual of a degree-0 map (blockwise transpose at the opposite degree).
pub fn dual_map<S: Scalar>(
    f: &GradedMap<S>,
    dual_source: &Arc<GradedModule<S>>,
    dual_target: &Arc<GradedModule<S>>,
) -> GradedMap<S> {
    let datum = &f.source.algebra.datum;
    let mut blocks = BTreeMap::new();
    for &n in dual_source.dims().keys() {
        let b = f.block_at(datum.neg(n));
        blocks.insert(n, b.transpose());
    }
    GradedMap::new(dual_source.clone(), dual_target.clone(), Degree(0), blocks)
}

/// Injective cover: an admissible monomorphism M ↪ J with J the dual of a
/// free module over the opposite algebra.
pub fn injective_cover<S: Scalar>(
    module: &Arc<GradedModule<S>>,
) -> Result<(Arc<GradedModule<S>>, GradedMap<S>), String> {
    let alg = &module.algebra;
    let op = alg.opposite();
    let d_m = Arc::new(module.dual(&op)?);
    let (f, epi, _) = free_cover(&d_m)?;
    let j = Arc::new(f.dual(alg)?);
    let dd_m = Arc::new(d_m.dual(alg)?);
    // the double dual is literally the module again in these coordinates
    if dd_m.dims() != module.dims() {
        return Err("double dual dimension mismatch".into());
    }
    let raw = dual_map(&epi, &dd_m, &j);
    let mono = GradedMap::new(module.clone(), j.clone(), Degree(0), raw.blocks().clone());
    debug_assert!(mono.is_injective());
    Ok((j, mono))
}
