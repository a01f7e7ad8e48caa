//! The uniform DG-category surface over the two instances (complexes over
//! an ungraded algebra, CDG-modules over a CDG-ring): Hom complexes,
//! shifts, twists, cones, finite totalizations, null-homotopy solving and
//! the abelian Z⁰ operations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cdg::{twist_cdg, CdgModule, CdgRing};
use crate::graded::{
    cokernel_with_section, hom_graded, map_coordinates, map_vec, GradedMap, GradedModule,
};
use crate::grading::Degree;
use crate::matrix::{LinSys, Matrix};
use crate::scalar::Scalar;


#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instance {
    Complex,
    CdgMod,
}

/// An object of one of the two concrete DG-categories. A complex is the
/// special case of a CDG-module over an ungraded curvature-free ring.
#[derive(Clone, Debug)]
pub struct DgObject<S: Scalar> {
    pub instance: Instance,
    pub module: CdgModule<S>,
}

impl<S: Scalar> DgObject<S> {
    pub fn cdg(module: CdgModule<S>) -> Self {
        DgObject {
            instance: Instance::CdgMod,
            module,
        }
    }

    /// Tag a module as an object of the complexes instance; the ring must
    /// be an ungraded algebra in degree 0 with d = 0 and h = 0.
    pub fn complex(module: CdgModule<S>) -> Self {
        let ring = &module.ring;
        assert!(ring.is_dg() && ring.d.is_zero_map(), "complex base must be ungraded");
        assert!(
            ring.base.support().iter().all(|&d| d == Degree(0)),
            "complex base must be concentrated in degree 0"
        );
        DgObject {
            instance: Instance::Complex,
            module,
        }
    }

    pub fn ring(&self) -> &Arc<CdgRing<S>> {
        &self.module.ring
    }

    pub fn base(&self) -> &Arc<GradedModule<S>> {
        &self.module.base
    }

    pub fn zero_like(&self) -> Self {
        DgObject {
            instance: self.instance,
            module: CdgModule::zero(self.module.ring.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn shift(&self, n: i64) -> Result<Self, String> {
        Ok(DgObject {
            instance: self.instance,
            module: self.module.shift(n)?,
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.instance, other.instance);
        DgObject {
            instance: self.instance,
            module: self.module.direct_sum(&other.module),
        }
    }

    pub fn check(&self) -> crate::report::CheckReport {
        self.module.check()
    }
}

/// d(f) = d_Y ∘ f − (−1)^{σ(𝟏,|f|)} f ∘ d_X on a Hom element.
pub fn hom_diff<S: Scalar>(x: &DgObject<S>, y: &DgObject<S>, f: &GradedMap<S>) -> GradedMap<S> {
    let datum = x.ring().datum();
    let sign: S = datum.sign_scalar(x.ring().one(), f.degree);
    GradedMap::compose(&y.module.d, f).sub(&GradedMap::compose(f, &x.module.d).scale(&sign))
}

pub fn is_closed<S: Scalar>(x: &DgObject<S>, y: &DgObject<S>, f: &GradedMap<S>) -> bool {
    hom_diff(x, y, f).is_zero_map()
}

/// One graded level of a Hom complex: a basis and the differential matrix
/// into the next level.
pub struct HomLevel<S: Scalar> {
    pub basis: Vec<GradedMap<S>>,
    pub diff: Matrix<S>,
}

pub struct HomComplex<S: Scalar> {
    pub levels: BTreeMap<Degree, HomLevel<S>>,
}

impl<S: Scalar> HomComplex<S> {
    pub fn dim_at(&self, n: Degree) -> usize {
        self.levels.get(&n).map(|l| l.basis.len()).unwrap_or(0)
    }

    pub fn cohomology_dim(&self, n: Degree, datum: &crate::grading::GradingDatum) -> usize {
        let (ker, im) = self.cocycle_data(n, datum);
        ker - im
    }

    fn cocycle_data(&self, n: Degree, datum: &crate::grading::GradingDatum) -> (usize, usize) {
        let ker = match self.levels.get(&n) {
            Some(l) => l.diff.cols() - l.diff.rank(),
            None => 0,
        };
        let prev = datum.sub(n, datum.one_degree());
        let im = match self.levels.get(&prev) {
            Some(l) => l.diff.rank(),
            None => 0,
        };
        (ker, im)
    }
}

/// Candidate Hom degrees between two objects (differences of supports,
/// padded by one in each direction so differentials have somewhere to go).
fn hom_degrees<S: Scalar>(x: &DgObject<S>, y: &DgObject<S>) -> Vec<Degree> {
    let datum = x.ring().datum();
    let mut degs = Vec::new();
    for &s in &x.base().support() {
        for &t in &y.base().support() {
            let base = datum.sub(t, s);
            degs.push(base);
            degs.push(datum.add(base, datum.one_degree()));
            degs.push(datum.sub(base, datum.one_degree()));
        }
    }
    degs.sort();
    degs.dedup();
    degs
}

/// The full Hom complex with bases and differential matrices; d² = 0 is
/// asserted during construction.
pub fn hom_complex<S: Scalar>(x: &DgObject<S>, y: &DgObject<S>) -> HomComplex<S> {
    assert_eq!(x.instance, y.instance, "instance mismatch");
    let datum = x.ring().datum().clone();
    let one = datum.one_degree();
    let degs = hom_degrees(x, y);
    let bases: BTreeMap<Degree, Vec<GradedMap<S>>> = degs
        .iter()
        .map(|&n| (n, hom_graded(x.base(), y.base(), n)))
        .collect();
    let mut levels = BTreeMap::new();
    for &n in &degs {
        let basis = bases[&n].clone();
        let next = datum.add(n, one);
        let next_basis = bases.get(&next).cloned().unwrap_or_default();
        let mut diff = Matrix::zero(next_basis.len(), basis.len());
        for (c, f) in basis.iter().enumerate() {
            let df = hom_diff(x, y, f);
            if df.is_zero_map() {
                continue;
            }
            let coords = map_coordinates(&next_basis, &df)
                .expect("differential of a hom lies in the hom basis");
            for (r, v) in coords.into_iter().enumerate() {
                diff[(r, c)] = v;
            }
        }
        levels.insert(n, HomLevel { basis, diff });
    }
    // d² = 0 exactly
    for &n in &degs {
        let next = datum.add(n, one);
        if let (Some(a), Some(b)) = (levels.get(&n), levels.get(&next)) {
            if b.diff.cols() == a.diff.rows() {
                assert!(
                    b.diff.mul(&a.diff).is_zero_matrix(),
                    "hom differential squares to zero"
                );
            }
        }
    }
    HomComplex { levels }
}

/// Basis of closed morphisms of the given degree.
pub fn closed_hom_basis<S: Scalar>(
    x: &DgObject<S>,
    y: &DgObject<S>,
    n: Degree,
) -> Vec<GradedMap<S>> {
    let basis = hom_graded(x.base(), y.base(), n);
    if basis.is_empty() {
        return Vec::new();
    }
    let len = crate::graded::map_vec_len(x.base(), y.base(), x.ring().datum().add(n, x.ring().one()));
    let mut mat = Matrix::zero(len, basis.len());
    for (c, f) in basis.iter().enumerate() {
        let df = hom_diff(x, y, f);
        for (r, v) in map_vec(&df).into_iter().enumerate() {
            mat[(r, c)] = v;
        }
    }
    let ker = mat.kernel_basis();
    (0..ker.cols())
        .map(|c| {
            let coeffs = ker.col(c);
            let mut acc = GradedMap::zero(x.base().clone(), y.base().clone(), n);
            for (f, coef) in basis.iter().zip(coeffs) {
                acc = acc.add(&f.scale(&coef));
            }
            acc
        })
        .collect()
}

pub fn h0_dim<S: Scalar>(x: &DgObject<S>, y: &DgObject<S>) -> usize {
    hom_complex(x, y).cohomology_dim(Degree(0), x.ring().datum())
}

/// A null-homotopy witness t with d(t) = f, or definitive absence.
pub fn is_null_homotopic<S: Scalar>(
    x: &DgObject<S>,
    y: &DgObject<S>,
    f: &GradedMap<S>,
) -> Option<GradedMap<S>> {
    debug_assert!(is_closed(x, y, f), "null-homotopy asks a closed morphism");
    let datum = x.ring().datum();
    let down = datum.sub(f.degree, x.ring().one());
    let candidates = hom_graded(x.base(), y.base(), down);
    if candidates.is_empty() {
        return if f.is_zero_map() {
            Some(GradedMap::zero(x.base().clone(), y.base().clone(), down))
        } else {
            None
        };
    }
    let images: Vec<GradedMap<S>> = candidates.iter().map(|t| hom_diff(x, y, t)).collect();
    let coords = map_coordinates(&images, f)?;
    let mut t = GradedMap::zero(x.base().clone(), y.base().clone(), down);
    for (cand, c) in candidates.iter().zip(coords) {
        t = t.add(&cand.scale(&c));
    }
    Some(t)
}

pub fn is_contractible<S: Scalar>(x: &DgObject<S>) -> Option<GradedMap<S>> {
    is_null_homotopic(x, x, &GradedMap::identity(x.base().clone()))
}

/// Closed degree-n isomorphism X[n] → X, identity on components.
pub fn shift_iso<S: Scalar>(x: &DgObject<S>, shifted: &DgObject<S>, n: i64) -> GradedMap<S> {
    let datum = x.ring().datum().clone();
    let mut blocks = BTreeMap::new();
    for (&d, &k) in shifted.base().dims() {
        let _ = datum.add(d, Degree(n));
        blocks.insert(d, Matrix::identity(k));
    }
    GradedMap::new(shifted.base().clone(), x.base().clone(), Degree(n), blocks)
}

pub fn mc_check<S: Scalar>(x: &DgObject<S>, a: &GradedMap<S>) -> bool {
    let da = hom_diff(x, x, a);
    let aa = GradedMap::compose(a, a);
    da.add(&aa).is_zero_map()
}

pub fn twist<S: Scalar>(x: &DgObject<S>, a: &GradedMap<S>) -> Result<DgObject<S>, String> {
    Ok(DgObject {
        instance: x.instance,
        module: twist_cdg(&x.module, a)?,
    })
}

/// Cone of a closed degree-0 morphism, built as the Maurer–Cartan twist
/// of Y ⊕ X[1], with the four structural morphisms.
pub struct ConeData<S: Scalar> {
    pub object: DgObject<S>,
    pub shifted_source: DgObject<S>,
    /// Y → C, closed
    pub iota: GradedMap<S>,
    /// C → X[1], closed
    pub pi: GradedMap<S>,
    /// X[1] → C, with d(ι′) = ι ∘ f̂
    pub iota_prime: GradedMap<S>,
    /// C → Y, with d(π′) = −f̂ ∘ π
    pub pi_prime: GradedMap<S>,
    /// the degree-𝟏 map X[1] → Y induced by f
    pub fhat: GradedMap<S>,
}

pub fn cone<S: Scalar>(
    x: &DgObject<S>,
    y: &DgObject<S>,
    f: &GradedMap<S>,
) -> Result<ConeData<S>, String> {
    assert_eq!(x.instance, y.instance);
    if f.degree != Degree(0) || !is_closed(x, y, f) {
        return Err("cone expects a closed morphism of degree 0".into());
    }
    let datum = x.ring().datum().clone();
    let one = x.ring().one();
    let x1 = x.shift(1)?;
    let sum = y.direct_sum(&x1);
    // f̂: X[1] → Y of degree 𝟏, same blocks as f reindexed
    let mut fhat_blocks = BTreeMap::new();
    for &d in x1.base().dims().keys() {
        fhat_blocks.insert(d, f.block_at(datum.add(d, Degree(1))));
    }
    let fhat = GradedMap::new(x1.base().clone(), y.base().clone(), one, fhat_blocks);
    // the twisting cochain: X[1]-slot → Y-slot through f̂
    let mut a_blocks = BTreeMap::new();
    for &d in sum.base().dims().keys() {
        let up = datum.add(d, one);
        let mut blk = Matrix::zero(sum.base().dim_at(up), sum.base().dim_at(d));
        let fb = fhat.block_at(d);
        let y_dim = y.base().dim_at(d);
        for c in 0..x1.base().dim_at(d) {
            for r in 0..y.base().dim_at(up) {
                blk[(r, y_dim + c)] = fb[(r, c)].clone();
            }
        }
        a_blocks.insert(d, blk);
    }
    let a = GradedMap::new(
        sum.base().clone(),
        sum.base().clone(),
        one,
        a_blocks,
    );
    let object = twist(&sum, &a).map_err(|e| format!("cone twist: {}", e))?;
    // structural block maps
    let mut iota_b = BTreeMap::new();
    let mut pi_b = BTreeMap::new();
    let mut iotap_b = BTreeMap::new();
    let mut pip_b = BTreeMap::new();
    for &d in object.base().dims().keys() {
        let ny = y.base().dim_at(d);
        let nx = x1.base().dim_at(d);
        let mut i1 = Matrix::zero(ny + nx, ny);
        let mut p1 = Matrix::zero(nx, ny + nx);
        let mut i2 = Matrix::zero(ny + nx, nx);
        let mut p2 = Matrix::zero(ny, ny + nx);
        for j in 0..ny {
            i1[(j, j)] = S::one();
            p2[(j, j)] = S::one();
        }
        for j in 0..nx {
            i2[(ny + j, j)] = S::one();
            p1[(j, ny + j)] = S::one();
        }
        iota_b.insert(d, i1);
        pi_b.insert(d, p1);
        iotap_b.insert(d, i2);
        pip_b.insert(d, p2);
    }
    let c_base = object.base().clone();
    Ok(ConeData {
        iota: GradedMap::new(y.base().clone(), c_base.clone(), Degree(0), iota_b),
        pi: GradedMap::new(c_base.clone(), x1.base().clone(), Degree(0), pi_b),
        iota_prime: GradedMap::new(x1.base().clone(), c_base.clone(), Degree(0), iotap_b),
        pi_prime: GradedMap::new(c_base, y.base().clone(), Degree(0), pip_b),
        fhat,
        shifted_source: x1,
        object,
    })
}

impl<S: Scalar> ConeData<S> {
    /// Verify the structural identities of the cone data exactly.
    pub fn verify(&self, x: &DgObject<S>, y: &DgObject<S>) -> Result<(), String> {
        let c = &self.object;
        let ok = |b: bool, msg: &str| if b { Ok(()) } else { Err(msg.to_string()) };
        ok(
            GradedMap::compose(&self.pi_prime, &self.iota_prime).is_zero_map(),
            "π′ι′ ≠ 0",
        )?;
        ok(GradedMap::compose(&self.pi, &self.iota).is_zero_map(), "πι ≠ 0")?;
        ok(
            GradedMap::compose(&self.pi_prime, &self.iota)
                .equal(&GradedMap::identity(y.base().clone())),
            "π′ι ≠ id",
        )?;
        ok(
            GradedMap::compose(&self.pi, &self.iota_prime)
                .equal(&GradedMap::identity(self.shifted_source.base().clone())),
            "πι′ ≠ id",
        )?;
        let recomposed = GradedMap::compose(&self.iota, &self.pi_prime)
            .add(&GradedMap::compose(&self.iota_prime, &self.pi));
        ok(
            recomposed.equal(&GradedMap::identity(c.base().clone())),
            "ιπ′ + ι′π ≠ id",
        )?;
        ok(is_closed(y, c, &self.iota), "ι not closed")?;
        ok(is_closed(c, &self.shifted_source, &self.pi), "π not closed")?;
        let d_iotap = hom_diff(&self.shifted_source, c, &self.iota_prime);
        ok(
            d_iotap.equal(&GradedMap::compose(&self.iota, &self.fhat)),
            "d(ι′) ≠ ι∘f̂",
        )?;
        let d_pip = hom_diff(c, y, &self.pi_prime);
        ok(
            d_pip.equal(&GradedMap::compose(&self.fhat, &self.pi).neg()),
            "d(π′) ≠ −f̂∘π",
        )?;
        // split-exactness of 0 → Y → C → X[1] → 0 at the graded level
        ok(self.iota.is_injective(), "ι not injective")?;
        ok(self.pi.is_surjective(), "π not surjective")?;
        let _ = x;
        Ok(())
    }
}

/// Finite totalization of a Z⁰-complex X_0 → X_1 → … → X_k placed at
/// positions start..start+k: the twist of ⊕ X_i[−(start+i)].
pub struct TotData<S: Scalar> {
    pub object: DgObject<S>,
    pub shifted: Vec<DgObject<S>>,
    /// graded block inclusions (not closed in general)
    pub inject: Vec<GradedMap<S>>,
    /// graded block projections
    pub project: Vec<GradedMap<S>>,
    pub positions: Vec<i64>,
}

pub fn tot<S: Scalar>(
    objects: &[DgObject<S>],
    maps: &[GradedMap<S>],
    start: i64,
) -> Result<TotData<S>, String> {
    assert!(!objects.is_empty());
    assert_eq!(maps.len() + 1, objects.len());
    for (i, f) in maps.iter().enumerate() {
        if f.degree != Degree(0) || !is_closed(&objects[i], &objects[i + 1], f) {
            return Err(format!("differential {} is not closed of degree 0", i));
        }
    }
    for i in 1..maps.len() {
        if !GradedMap::compose(&maps[i], &maps[i - 1]).is_zero_map() {
            return Err(format!("composite {}∘{} is nonzero", i, i - 1));
        }
    }
    let datum = objects[0].ring().datum().clone();
    let one = objects[0].ring().one();
    let positions: Vec<i64> = (0..objects.len()).map(|i| start + i as i64).collect();
    let mut shifted = Vec::new();
    for (obj, &p) in objects.iter().zip(&positions) {
        shifted.push(obj.shift(-p)?);
    }
    let mut sum = shifted[0].clone();
    for s in &shifted[1..] {
        sum = sum.direct_sum(s);
    }
    // block offsets per degree
    let offset = |slot: usize, d: Degree| -> usize {
        shifted[..slot].iter().map(|s| s.base().dim_at(d)).sum()
    };
    // twisting cochain from the differentials
    let mut a_blocks = BTreeMap::new();
    for &d in sum.base().dims().keys() {
        let up = datum.add(d, one);
        let mut blk = Matrix::zero(sum.base().dim_at(up), sum.base().dim_at(d));
        for (i, f) in maps.iter().enumerate() {
            // X_i[−p_i]^d = X_i^{d−p_i} → X_{i+1}^{d−p_i} = X_{i+1}[−p_{i+1}]^{d+1}
            let inner = datum.sub(d, Degree(positions[i]));
            let fb = f.block_at(inner);
            let src_off = offset(i, d);
            let tgt_off = offset(i + 1, up);
            for r in 0..fb.rows() {
                for c in 0..fb.cols() {
                    blk[(tgt_off + r, src_off + c)] = fb[(r, c)].clone();
                }
            }
        }
        a_blocks.insert(d, blk);
    }
    let a = GradedMap::new(sum.base().clone(), sum.base().clone(), one, a_blocks);
    let object = twist(&sum, &a).map_err(|e| format!("totalization twist: {}", e))?;
    let mut inject = Vec::new();
    let mut project = Vec::new();
    for i in 0..shifted.len() {
        let mut inj = BTreeMap::new();
        let mut prj = BTreeMap::new();
        for &d in object.base().dims().keys() {
            let ni = shifted[i].base().dim_at(d);
            let total = object.base().dim_at(d);
            let off = offset(i, d);
            let mut im = Matrix::zero(total, ni);
            let mut pm = Matrix::zero(ni, total);
            for j in 0..ni {
                im[(off + j, j)] = S::one();
                pm[(j, off + j)] = S::one();
            }
            inj.insert(d, im);
            prj.insert(d, pm);
        }
        inject.push(GradedMap::new(
            shifted[i].base().clone(),
            object.base().clone(),
            Degree(0),
            inj,
        ));
        project.push(GradedMap::new(
            object.base().clone(),
            shifted[i].base().clone(),
            Degree(0),
            prj,
        ));
    }
    Ok(TotData {
        object,
        shifted,
        inject,
        project,
        positions,
    })
}

/// Kernel of a closed degree-0 morphism in the abelian category Z⁰.
pub fn z0_kernel<S: Scalar>(
    x: &DgObject<S>,
    y: &DgObject<S>,
    f: &GradedMap<S>,
) -> (DgObject<S>, GradedMap<S>) {
    assert!(f.degree == Degree(0) && is_closed(x, y, f));
    let datum = x.ring().datum().clone();
    let one = x.ring().one();
    let mut basis = BTreeMap::new();
    for &d in x.base().dims().keys() {
        basis.insert(d, f.block_at(d).kernel_basis());
    }
    let sub = Arc::new(x.base().submodule(&basis).expect("kernel is a submodule"));
    let incl = GradedMap::new(sub.clone(), x.base().clone(), Degree(0), basis);
    // induced differential: solve incl∘d_K = d_X∘incl
    let mut d_blocks = BTreeMap::new();
    for &d in sub.dims().keys() {
        let up = datum.add(d, one);
        let rhs = x.module.d.block_at(d).mul(&incl.block_at(d));
        let blk = incl
            .block_at(up)
            .solve_matrix(&rhs)
            .expect("differential preserves the kernel");
        d_blocks.insert(d, blk);
    }
    let module = CdgModule::new(x.ring().clone(), sub, d_blocks);
    (
        DgObject {
            instance: x.instance,
            module,
        },
        incl,
    )
}

/// Cokernel of a closed degree-0 morphism in Z⁰.
pub fn z0_cokernel<S: Scalar>(
    x: &DgObject<S>,
    y: &DgObject<S>,
    f: &GradedMap<S>,
) -> (DgObject<S>, GradedMap<S>) {
    assert!(f.degree == Degree(0) && is_closed(x, y, f));
    let datum = y.ring().datum().clone();
    let one = y.ring().one();
    let (q, proj, section) = cokernel_with_section(f);
    let mut d_blocks = BTreeMap::new();
    for &d in q.dims().keys() {
        let up = datum.add(d, one);
        let sec = section
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(y.base().dim_at(d), 0));
        let blk = proj.block_at(up).mul(&y.module.d.block_at(d)).mul(&sec);
        d_blocks.insert(d, blk);
    }
    let module = CdgModule::new(y.ring().clone(), q, d_blocks);
    (
        DgObject {
            instance: y.instance,
            module,
        },
        proj,
    )
}

/// Image of a closed degree-0 morphism as a Z⁰-subobject of the target,
/// with its inclusion and the corestriction X → im(f).
pub fn z0_image<S: Scalar>(
    x: &DgObject<S>,
    y: &DgObject<S>,
    f: &GradedMap<S>,
) -> (DgObject<S>, GradedMap<S>, GradedMap<S>) {
    assert!(f.degree == Degree(0) && is_closed(x, y, f));
    let datum = y.ring().datum().clone();
    let one = y.ring().one();
    let mut basis = BTreeMap::new();
    for &d in y.base().dims().keys() {
        basis.insert(d, f.block_at(d).image_basis());
    }
    let sub = Arc::new(y.base().submodule(&basis).expect("image is a submodule"));
    let incl = GradedMap::new(sub.clone(), y.base().clone(), Degree(0), basis);
    let mut d_blocks = BTreeMap::new();
    for &d in sub.dims().keys() {
        let up = datum.add(d, one);
        let rhs = y.module.d.block_at(d).mul(&incl.block_at(d));
        let blk = incl
            .block_at(up)
            .solve_matrix(&rhs)
            .expect("differential preserves the image");
        d_blocks.insert(d, blk);
    }
    let module = CdgModule::new(y.ring().clone(), sub, d_blocks);
    let image = DgObject {
        instance: y.instance,
        module,
    };
    // corestriction: solve incl ∘ g = f blockwise
    let mut g_blocks = BTreeMap::new();
    for &d in x.base().dims().keys() {
        let blk = incl
            .block_at(d)
            .solve_matrix(&f.block_at(d))
            .expect("f factors through its image");
        g_blocks.insert(d, blk);
    }
    let coreduction = GradedMap::new(x.base().clone(), image.base().clone(), Degree(0), g_blocks);
    (image, incl, coreduction)
}

/// Rank verification that A → B → C is an admissible short exact sequence
/// in Z⁰ (degreewise exactness of the underlying graded components).
pub fn z0_ses_check<S: Scalar>(
    a: &DgObject<S>,
    b: &DgObject<S>,
    c: &DgObject<S>,
    f: &GradedMap<S>,
    g: &GradedMap<S>,
) -> bool {
    if f.degree != Degree(0) || g.degree != Degree(0) {
        return false;
    }
    if !is_closed(a, b, f) || !is_closed(b, c, g) {
        return false;
    }
    if !GradedMap::compose(g, f).is_zero_map() {
        return false;
    }
    if !f.is_injective() || !g.is_surjective() {
        return false;
    }
    b.base().dims().keys().all(|&d| {
        let rank_f = f.block_at(d).rank();
        let gb = g.block_at(d);
        rank_f == gb.cols() - gb.rank()
    })
}

/// A solved homotopy equivalence: closed u, v with explicit homotopies
/// d(h1) = id − v∘u and d(h2) = id − u∘v.
pub struct HomotopyEquivalence<S: Scalar> {
    pub u: GradedMap<S>,
    pub v: GradedMap<S>,
    pub h1: GradedMap<S>,
    pub h2: GradedMap<S>,
}

impl<S: Scalar> HomotopyEquivalence<S> {
    pub fn verify(&self, a: &DgObject<S>, b: &DgObject<S>) -> Result<(), String> {
        if !is_closed(a, b, &self.u) || !is_closed(b, a, &self.v) {
            return Err("equivalence maps not closed".into());
        }
        let want1 = GradedMap::identity(a.base().clone())
            .sub(&GradedMap::compose(&self.v, &self.u));
        if !hom_diff(a, a, &self.h1).equal(&want1) {
            return Err("d(h1) ≠ id − vu".into());
        }
        let want2 = GradedMap::identity(b.base().clone())
            .sub(&GradedMap::compose(&self.u, &self.v));
        if !hom_diff(b, b, &self.h2).equal(&want2) {
            return Err("d(h2) ≠ id − uv".into());
        }
        Ok(())
    }
}

/// Given closed u: A → B, look for (v, h1, h2) completing it to a homotopy
/// equivalence; one joint linear solve.
pub fn complete_equivalence<S: Scalar>(
    a: &DgObject<S>,
    b: &DgObject<S>,
    u: &GradedMap<S>,
) -> Option<HomotopyEquivalence<S>> {
    let datum = a.ring().datum().clone();
    let neg_one = datum.neg(a.ring().one());
    let v_basis = closed_hom_basis(b, a, Degree(0));
    let h1_basis = hom_graded(a.base(), a.base(), neg_one);
    let h2_basis = hom_graded(b.base(), b.base(), neg_one);
    let vec_a = map_vec(&GradedMap::identity(a.base().clone()));
    let vec_b = map_vec(&GradedMap::identity(b.base().clone()));
    let total = v_basis.len() + h1_basis.len() + h2_basis.len();
    let mut sys = LinSys::new(total);
    // block 1: d(h1) + v u = id_A
    for (row, want) in vec_a.iter().enumerate() {
        let mut coeffs: Vec<(usize, S)> = Vec::new();
        for (i, v) in v_basis.iter().enumerate() {
            let vu = map_vec(&GradedMap::compose(v, u));
            if !vu[row].is_zero() {
                coeffs.push((i, vu[row].clone()));
            }
        }
        for (j, h) in h1_basis.iter().enumerate() {
            let dh = map_vec(&hom_diff(a, a, h));
            if !dh[row].is_zero() {
                coeffs.push((v_basis.len() + j, dh[row].clone()));
            }
        }
        sys.push(coeffs, want.clone());
    }
    // block 2: d(h2) + u v = id_B
    for (row, want) in vec_b.iter().enumerate() {
        let mut coeffs: Vec<(usize, S)> = Vec::new();
        for (i, v) in v_basis.iter().enumerate() {
            let uv = map_vec(&GradedMap::compose(u, v));
            if !uv[row].is_zero() {
                coeffs.push((i, uv[row].clone()));
            }
        }
        for (j, h) in h2_basis.iter().enumerate() {
            let dh = map_vec(&hom_diff(b, b, h));
            if !dh[row].is_zero() {
                coeffs.push((v_basis.len() + h1_basis.len() + j, dh[row].clone()));
            }
        }
        sys.push(coeffs, want.clone());
    }
    let sol = sys.solve()?;
    let mut v = GradedMap::zero(b.base().clone(), a.base().clone(), Degree(0));
    for (i, vb) in v_basis.iter().enumerate() {
        v = v.add(&vb.scale(&sol[i]));
    }
    let mut h1 = GradedMap::zero(a.base().clone(), a.base().clone(), neg_one);
    for (j, hb) in h1_basis.iter().enumerate() {
        h1 = h1.add(&hb.scale(&sol[v_basis.len() + j]));
    }
    let mut h2 = GradedMap::zero(b.base().clone(), b.base().clone(), neg_one);
    for (j, hb) in h2_basis.iter().enumerate() {
        h2 = h2.add(&hb.scale(&sol[v_basis.len() + h1_basis.len() + j]));
    }
    Some(HomotopyEquivalence {
        u: u.clone(),
        v,
        h1,
        h2,
    })
}

/// Search for a homotopy equivalence A ≃ B: fix u from a deterministic
/// candidate sequence over the closed degree-0 morphisms, then solve
/// linearly for the rest.
pub fn find_homotopy_equivalence<S: Scalar>(
    a: &DgObject<S>,
    b: &DgObject<S>,
) -> Option<HomotopyEquivalence<S>> {
    let u_basis = closed_hom_basis(a, b, Degree(0));
    if u_basis.is_empty() {
        if a.is_zero() && b.is_zero() {
            let u = GradedMap::zero(a.base().clone(), b.base().clone(), Degree(0));
            return complete_equivalence(a, b, &u);
        }
        return None;
    }
    let mut candidates: Vec<GradedMap<S>> = Vec::new();
    // sum of all basis elements first, then single elements, then seeded
    // small combinations
    let mut sum = GradedMap::zero(a.base().clone(), b.base().clone(), Degree(0));
    for f in &u_basis {
        sum = sum.add(f);
    }
    candidates.push(sum);
    candidates.extend(u_basis.iter().cloned());
    let mut state: u64 = 0x9e3779b97f4a7c15;
    for _ in 0..24 {
        let mut acc = GradedMap::zero(a.base().clone(), b.base().clone(), Degree(0));
        for f in &u_basis {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let c = ((state >> 33) % 5) as i64 - 2;
            if c != 0 {
                acc = acc.add(&f.scale(&S::from_integer(c)));
            }
        }
        candidates.push(acc);
    }
    for u in candidates {
        if let Some(eq) = complete_equivalence(a, b, &u) {
            return Some(eq);
        }
    }
    None
}
