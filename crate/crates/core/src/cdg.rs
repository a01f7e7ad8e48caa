//! CDG-rings and CDG-modules: curvature axioms, the delta-extension
//! R*[δ] with its perfect pairing, the adjoint functors G±, twists, and
//! the matrix-factorization encoding.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::graded::{GradedAlgebra, GradedMap, GradedModule, Tensor3};
use crate::grading::{Degree, GradingDatum};
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalar::Scalar;


/// (R*, d, h): a graded algebra with an odd degree-𝟏 derivation and a
/// curvature element h ∈ R^{2𝟏}. The derivation is stored as raw blocks
/// (it is not a module map).
#[derive(Clone, Debug)]
pub struct CdgRing<S: Scalar> {
    pub base: Arc<GradedAlgebra<S>>,
    /// The algebra as a left module over itself; blocks of d live on it.
    pub reg: Arc<GradedModule<S>>,
    pub d: GradedMap<S>,
    pub h: Vec<S>,
}

impl<S: Scalar> CdgRing<S> {
    pub fn new(
        base: Arc<GradedAlgebra<S>>,
        d_blocks: BTreeMap<Degree, Matrix<S>>,
        h: Vec<S>,
    ) -> Self {
        let reg = Arc::new(GradedModule::regular(&base));
        let one = base.datum.one_degree();
        let d = GradedMap::new(reg.clone(), reg.clone(), one, d_blocks);
        assert_eq!(
            h.len(),
            base.dim_at(base.datum.add(one, one)),
            "curvature must live in R^(2·𝟏)"
        );
        CdgRing { base, reg, d, h }
    }

    /// The DG-ring (R*, d, 0) when the curvature vanishes.
    pub fn is_dg(&self) -> bool {
        self.h.iter().all(|x| x.is_zero())
    }

    pub fn datum(&self) -> &GradingDatum {
        &self.base.datum
    }

    pub fn one(&self) -> Degree {
        self.base.datum.one_degree()
    }

    pub fn h_degree(&self) -> Degree {
        self.base.datum.add(self.one(), self.one())
    }

    pub fn d_of(&self, deg: Degree, coords: &[S]) -> (Degree, Vec<S>) {
        self.d.apply(deg, coords)
    }

    /// [x, y] = xy − (−1)^{σ(|x|,|y|)} yx in R.
    pub fn commutator(&self, a: Degree, x: &[S], b: Degree, y: &[S]) -> Vec<S> {
        let alg = &self.base;
        let xy = alg.product(a, x, b, y);
        let yx = alg.product(b, y, a, x);
        let sign: S = alg.datum.sign_scalar(a, b);
        xy.iter()
            .zip(yx.iter())
            .map(|(p, q)| p.clone() - sign.clone() * q.clone())
            .collect()
    }

    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("cdg-ring");
        report.merge(self.base.check());
        let datum = self.datum().clone();
        let one = self.one();
        // Leibniz: d(rs) = d(r)s + (−1)^{|r|} r d(s)
        for &a in &self.base.support() {
            let sign: S = datum.sign_scalar(one, a);
            for &b in &self.base.support() {
                for i in 0..self.base.dim_at(a) {
                    let r = self.base.basis_vector(a, i);
                    let (da_deg, dr) = self.d_of(a, &r);
                    for j in 0..self.base.dim_at(b) {
                        let s = self.base.basis_vector(b, j);
                        let rs = self.base.product(a, &r, b, &s);
                        let (_, d_rs) = self.d_of(datum.add(a, b), &rs);
                        let (_, ds) = self.d_of(b, &s);
                        let term1 = self.base.product(da_deg, &dr, b, &s);
                        let term2 = self.base.product(a, &r, datum.add(b, one), &ds);
                        let rhs: Vec<S> = term1
                            .iter()
                            .zip(term2.iter())
                            .map(|(x, y)| x.clone() + sign.clone() * y.clone())
                            .collect();
                        if d_rs != rhs {
                            report.violation(format!(
                                "Leibniz fails on basis pair ({},{})·({},{})",
                                a, i, b, j
                            ));
                        }
                    }
                }
            }
        }
        // axiom (i): d²(r) = [h, r]
        for &a in &self.base.support() {
            for i in 0..self.base.dim_at(a) {
                let r = self.base.basis_vector(a, i);
                let (d1, dr) = self.d_of(a, &r);
                let (_, ddr) = self.d_of(d1, &dr);
                let comm = self.commutator(self.h_degree(), &self.h, a, &r);
                if ddr != comm {
                    report.violation(format!("d² ≠ [h,−] on basis ({},{})", a, i));
                }
            }
        }
        // axiom (ii): d(h) = 0
        let (_, dh) = self.d_of(self.h_degree(), &self.h);
        if dh.iter().any(|x| !x.is_zero()) {
            report.violation("d(h) ≠ 0".into());
        }
        report
    }
}

/// A left CDG-module (M*, d_M) over a CDG-ring.
#[derive(Clone, Debug)]
pub struct CdgModule<S: Scalar> {
    pub ring: Arc<CdgRing<S>>,
    pub base: Arc<GradedModule<S>>,
    pub d: GradedMap<S>,
}

impl<S: Scalar> CdgModule<S> {
    pub fn new(
        ring: Arc<CdgRing<S>>,
        base: Arc<GradedModule<S>>,
        d_blocks: BTreeMap<Degree, Matrix<S>>,
    ) -> Self {
        let one = ring.one();
        let d = GradedMap::new(base.clone(), base.clone(), one, d_blocks);
        CdgModule { ring, base, d }
    }

    pub fn zero(ring: Arc<CdgRing<S>>) -> Self {
        let base = Arc::new(GradedModule::zero_module(ring.base.clone()));
        let d = GradedMap::zero(base.clone(), base.clone(), ring.one());
        CdgModule { ring, base, d }
    }

    pub fn dims(&self) -> &BTreeMap<Degree, usize> {
        self.base.dims()
    }

    pub fn total_dim(&self) -> usize {
        self.base.total_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    /// Concrete shift M[n]: twisted action on the base, d multiplied by
    /// (−1)^{σ(𝟏,n)}.
    pub fn shift(&self, n: i64) -> Result<Self, String> {
        let datum = self.ring.datum().clone();
        let base = Arc::new(self.base.shift(n)?);
        let sign: S = datum.sign_scalar(self.ring.one(), Degree(n));
        let mut blocks = BTreeMap::new();
        for (&d, b) in self.d.blocks() {
            blocks.insert(datum.sub(d, Degree(n)), b.scale(&sign));
        }
        Ok(CdgModule {
            ring: self.ring.clone(),
            base: base.clone(),
            d: GradedMap::new(base.clone(), base, self.ring.one(), blocks),
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let base = Arc::new(self.base.direct_sum(&other.base));
        let datum = self.ring.datum().clone();
        let mut blocks = BTreeMap::new();
        for &m in base.dims().keys() {
            let out = datum.add(m, self.ring.one());
            let a = self.d.block_at(m);
            let b = other.d.block_at(m);
            let mut blk = Matrix::zero(base.dim_at(out), base.dim_at(m));
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    blk[(r, c)] = a[(r, c)].clone();
                }
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    blk[(self.base.dim_at(out) + r, self.base.dim_at(m) + c)] = b[(r, c)].clone();
                }
            }
            blocks.insert(m, blk);
        }
        CdgModule::new(self.ring.clone(), base, blocks)
    }

    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("cdg-module");
        report.merge(self.base.check());
        let datum = self.ring.datum().clone();
        let one = self.ring.one();
        // Leibniz: d_M(rx) = d(r)x + (−1)^{|r|} r d_M(x)
        for &a in &self.ring.base.support() {
            let sign: S = datum.sign_scalar(one, a);
            for &m in &self.base.support() {
                for i in 0..self.ring.base.dim_at(a) {
                    let r = self.ring.base.basis_vector(a, i);
                    let (dr_deg, dr) = self.ring.d_of(a, &r);
                    for j in 0..self.base.dim_at(m) {
                        let x = self.base.basis_vector(m, j);
                        let rx = self.base.act(a, &r, m, &x);
                        let (_, d_rx) = self.d.apply(datum.add(a, m), &rx);
                        let (dx_deg, dx) = self.d.apply(m, &x);
                        let t1 = self.base.act(dr_deg, &dr, m, &x);
                        let t2 = self.base.act(a, &r, dx_deg, &dx);
                        let rhs: Vec<S> = t1
                            .iter()
                            .zip(t2.iter())
                            .map(|(p, q)| p.clone() + sign.clone() * q.clone())
                            .collect();
                        if d_rx != rhs {
                            report.violation(format!(
                                "module Leibniz fails on (r:{},{}; x:{},{})",
                                a, i, m, j
                            ));
                        }
                    }
                }
            }
        }
        // axiom (iii): d² = h·(−)
        for &m in &self.base.support() {
            for j in 0..self.base.dim_at(m) {
                let x = self.base.basis_vector(m, j);
                let (d1, dx) = self.d.apply(m, &x);
                let (_, ddx) = self.d.apply(d1, &dx);
                let hx = self.base.act(self.ring.h_degree(), &self.ring.h, m, &x);
                if ddx != hx {
                    report.violation(format!("d² ≠ h· on basis ({},{})", m, j));
                }
            }
        }
        report
    }
}

/// A morphism of CDG-rings (f, a): (R,d_R,h_R) → (S,d_S,h_S).
#[derive(Clone, Debug)]
pub struct CdgRingMorphism<S: Scalar> {
    pub source: Arc<CdgRing<S>>,
    pub target: Arc<CdgRing<S>>,
    /// Degree-0 multiplicative map, stored blockwise on the regular modules.
    pub f: GradedMap<S>,
    /// Change-of-connection element a ∈ S^𝟏.
    pub a: Vec<S>,
}

impl<S: Scalar> CdgRingMorphism<S> {
    pub fn new(
        source: Arc<CdgRing<S>>,
        target: Arc<CdgRing<S>>,
        f_blocks: BTreeMap<Degree, Matrix<S>>,
        a: Vec<S>,
    ) -> Self {
        let f = GradedMap::new(
            source.reg.clone(),
            target.reg.clone(),
            Degree(0),
            f_blocks,
        );
        assert_eq!(a.len(), target.base.dim_at(target.one()));
        CdgRingMorphism {
            source,
            target,
            f,
            a,
        }
    }

    /// Build the change-of-connection source (R, d + [a,−], h + d(a) + a²)
    /// and the isomorphism (id, a) from it onto the given ring.
    pub fn identity_with_connection(ring: &Arc<CdgRing<S>>, a: Vec<S>) -> (Self, Arc<CdgRing<S>>) {
        let one = ring.one();
        let mut d_blocks = BTreeMap::new();
        for &m in &ring.base.support() {
            let mut blk = ring.d.block_at(m);
            for j in 0..ring.base.dim_at(m) {
                let r = ring.base.basis_vector(m, j);
                let comm = ring.commutator(one, &a, m, &r);
                for (i, v) in comm.iter().enumerate() {
                    blk[(i, j)] = blk[(i, j)].clone() + v.clone();
                }
            }
            d_blocks.insert(m, blk);
        }
        let mut h = ring.h.clone();
        // h_src = h + d(a) + a², with d the target differential
        let (_, da) = ring.d_of(one, &a);
        let aa = ring.base.product(one, &a, one, &a);
        for i in 0..h.len() {
            h[i] = h[i].clone() + da[i].clone() + aa[i].clone();
        }
        let source = Arc::new(CdgRing::new(ring.base.clone(), d_blocks, h));
        let mut id_blocks = BTreeMap::new();
        for (&d, &n) in ring.base.dims() {
            id_blocks.insert(d, Matrix::identity(n));
        }
        (
            CdgRingMorphism::new(source.clone(), ring.clone(), id_blocks, a),
            source,
        )
    }

    pub fn compose(g: &Self, f: &Self) -> Self {
        // (g, b)∘(f, a) = (g∘f, b + g(a))
        assert_eq!(f.target.base.dims(), g.source.base.dims());
        let gf = GradedMap::compose(&g.f, &f.f);
        let (_, ga) = g.f.apply(f.source.one(), &f.a);
        let b_plus_ga: Vec<S> = g
            .a
            .iter()
            .zip(ga.iter())
            .map(|(x, y)| x.clone() + y.clone())
            .collect();
        CdgRingMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            f: gf,
            a: b_plus_ga,
        }
    }

    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("cdg-morphism");
        let src = &self.source;
        let tgt = &self.target;
        let datum = src.datum().clone();
        let one = src.one();
        // multiplicativity and unit preservation
        let (_, f_unit) = self.f.apply(Degree(0), &src.base.unit().to_vec());
        if f_unit != tgt.base.unit().to_vec() {
            report.violation("f(1) ≠ 1".into());
        }
        for &a in &src.base.support() {
            for &b in &src.base.support() {
                for i in 0..src.base.dim_at(a) {
                    let r = src.base.basis_vector(a, i);
                    let (_, fr) = self.f.apply(a, &r);
                    for j in 0..src.base.dim_at(b) {
                        let s = src.base.basis_vector(b, j);
                        let (_, fs) = self.f.apply(b, &s);
                        let rs = src.base.product(a, &r, b, &s);
                        let (_, f_rs) = self.f.apply(datum.add(a, b), &rs);
                        let fr_fs = tgt.base.product(a, &fr, b, &fs);
                        if f_rs != fr_fs {
                            report.violation(format!(
                                "f not multiplicative on ({},{})·({},{})",
                                a, i, b, j
                            ));
                        }
                    }
                }
            }
        }
        // axiom (v): f(d_R(r)) = d_S(f(r)) + [a, f(r)]
        for &m in &src.base.support() {
            for i in 0..src.base.dim_at(m) {
                let r = src.base.basis_vector(m, i);
                let (dd, dr) = src.d_of(m, &r);
                let (_, f_dr) = self.f.apply(dd, &dr);
                let (_, fr) = self.f.apply(m, &r);
                let (_, ds_fr) = tgt.d_of(m, &fr);
                let comm = tgt.commutator(one, &self.a, m, &fr);
                let rhs: Vec<S> = ds_fr
                    .iter()
                    .zip(comm.iter())
                    .map(|(x, y)| x.clone() + y.clone())
                    .collect();
                if f_dr != rhs {
                    report.violation(format!("axiom (v) fails on ({},{})", m, i));
                }
            }
        }
        // axiom (vi): f(h_R) = h_S + d_S(a) + a²
        let (_, f_h) = self.f.apply(src.h_degree(), &src.h);
        let (_, ds_a) = tgt.d_of(one, &self.a);
        let aa = tgt.base.product(one, &self.a, one, &self.a);
        let rhs: Vec<S> = tgt
            .h
            .iter()
            .zip(ds_a.iter())
            .zip(aa.iter())
            .map(|((x, y), z)| x.clone() + y.clone() + z.clone())
            .collect();
        if f_h != rhs {
            report.violation("axiom (vi) fails".into());
        }
        report
    }
}

/// The graded ring R*[δ] with ∂ = ∂/∂δ and ρ. Elements of degree n are
/// pairs (r, s) standing for r + sδ with r ∈ R^n, s ∈ R^{n−𝟏}.
#[derive(Clone, Debug)]
pub struct DeltaExtension<S: Scalar> {
    pub source: Arc<CdgRing<S>>,
    pub ring: Arc<GradedAlgebra<S>>,
}

impl<S: Scalar> DeltaExtension<S> {
    fn r_part_dim(src: &CdgRing<S>, n: Degree) -> usize {
        src.base.dim_at(n)
    }

    fn s_part_dim(src: &CdgRing<S>, n: Degree) -> usize {
        let prev = src.datum().sub(n, src.one());
        if src.datum().component_ok(prev) {
            src.base.dim_at(prev)
        } else {
            0
        }
    }

    pub fn dim_at(&self, n: Degree) -> usize {
        Self::r_part_dim(&self.source, n) + Self::s_part_dim(&self.source, n)
    }

    /// δ as an element (degree 𝟏): zero r-part, unit s-part.
    pub fn delta_coords(&self) -> (Degree, Vec<S>) {
        let one = self.source.one();
        let mut v = vec![S::zero(); self.dim_at(one)];
        let off = Self::r_part_dim(&self.source, one);
        for (k, u) in self.source.base.unit().iter().enumerate() {
            v[off + k] = u.clone();
        }
        (one, v)
    }

    /// The unit 1 ∈ R[δ]^0 (r-part is the unit of R).
    pub fn one_coords(&self) -> (Degree, Vec<S>) {
        let mut v = vec![S::zero(); self.dim_at(Degree(0))];
        for (k, u) in self.source.base.unit().iter().enumerate() {
            v[k] = u.clone();
        }
        (Degree(0), v)
    }

    /// ∂(r + sδ) = (−1)^{|s|} s, landing in the r-part one degree down.
    pub fn partial(&self, n: Degree, x: &[S]) -> (Degree, Vec<S>) {
        let src = &self.source;
        let datum = src.datum();
        let prev = datum.sub(n, src.one());
        let mut out = vec![S::zero(); self.dim_at(prev)];
        let s_off = Self::r_part_dim(src, n);
        let s_deg = prev;
        let sign: S = datum.sign_scalar(src.one(), s_deg); // (−1)^{|s|} via σ(1,|s|)
        for k in 0..Self::s_part_dim(src, n) {
            out[k] = sign.clone() * x[s_off + k].clone();
        }
        (prev, out)
    }

    /// ρ(r + sδ) = (−1)^{|s|} s as an element of R^{n−𝟏}.
    pub fn rho(&self, n: Degree, x: &[S]) -> (Degree, Vec<S>) {
        let src = &self.source;
        let datum = src.datum();
        let prev = datum.sub(n, src.one());
        let s_off = Self::r_part_dim(src, n);
        let sign: S = datum.sign_scalar(src.one(), prev);
        let out: Vec<S> = (0..Self::s_part_dim(src, n))
            .map(|k| sign.clone() * x[s_off + k].clone())
            .collect();
        (prev, out)
    }
}

/// Build R*[δ] as an honest graded algebra with the displayed product
/// formula. Errors when the window cannot hold degree +𝟏 growth.
pub fn delta_extension<S: Scalar>(
    source: &Arc<CdgRing<S>>,
) -> Result<DeltaExtension<S>, String> {
    let src = source;
    let datum = src.datum().clone();
    let one = src.one();
    for &n in &src.base.support() {
        let up = datum.add(n, one);
        if !datum.component_ok(up) {
            return Err(format!(
                "delta extension needs degree {} + 𝟏 inside the window",
                n
            ));
        }
    }
    let mut dims = BTreeMap::new();
    let mut degs: Vec<Degree> = Vec::new();
    for &n in &src.base.support() {
        degs.push(n);
        degs.push(datum.add(n, one));
    }
    degs.sort();
    degs.dedup();
    for &n in &degs {
        let d = DeltaExtension::<S> {
            source: src.clone(),
            ring: Arc::new(GradedAlgebra::zero_algebra(datum.clone())),
        }
        .dim_at(n);
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let r_dim = |n: Degree| DeltaExtension::r_part_dim(src, n);
    let s_dim = |n: Degree| DeltaExtension::s_part_dim(src, n);
    // product formula:
    // (r+sδ)(u+vδ) = (ru + s d(u) + (−1)^{|v|} s v h) + (rv + (−1)^{|u|} su + s d(v))δ
    let mut mult = BTreeMap::new();
    let all: Vec<Degree> = dims.keys().cloned().collect();
    for &m in &all {
        for &n in &all {
            let out = datum.add(m, n);
            let dm = dims[&m];
            let dn = dims[&n];
            let dout = dims.get(&out).copied().unwrap_or(0);
            if dout == 0 || !datum.component_ok(out) {
                continue;
            }
            let mut t = Tensor3::zero(dm, dn, dout);
            for i in 0..dm {
                // x = (r, s) basis vector i
                let mut r = vec![S::zero(); r_dim(m)];
                let mut s_vec = vec![S::zero(); s_dim(m)];
                if i < r_dim(m) {
                    r[i] = S::one();
                } else {
                    s_vec[i - r_dim(m)] = S::one();
                }
                let s_deg = datum.sub(m, one);
                for j in 0..dn {
                    let mut u = vec![S::zero(); r_dim(n)];
                    let mut v = vec![S::zero(); s_dim(n)];
                    if j < r_dim(n) {
                        u[j] = S::one();
                    } else {
                        v[j - r_dim(n)] = S::one();
                    }
                    let u_deg = n;
                    let v_deg = datum.sub(n, one);
                    // r-part of the product (degree m+n)
                    let mut r_out = vec![S::zero(); r_dim(out)];
                    let add_into = |acc: &mut Vec<S>, term: Vec<S>| {
                        for (k, x) in term.into_iter().enumerate() {
                            acc[k] = acc[k].clone() + x;
                        }
                    };
                    if r_dim(out) > 0 {
                        add_into(&mut r_out, src.base.product(m, &r, u_deg, &u));
                        let (du_deg, du) = src.d_of(u_deg, &u);
                        add_into(&mut r_out, src.base.product(s_deg, &s_vec, du_deg, &du));
                        let sign_v: S = datum.sign_scalar(one, v_deg);
                        let sv = src.base.product(s_deg, &s_vec, v_deg, &v);
                        let svh = src
                            .base
                            .product(datum.add(s_deg, v_deg), &sv, src.h_degree(), &src.h);
                        add_into(
                            &mut r_out,
                            svh.into_iter().map(|x| sign_v.clone() * x).collect(),
                        );
                    }
                    // δ-part of the product (degree m+n−𝟏)
                    let mut s_out = vec![S::zero(); s_dim(out)];
                    if s_dim(out) > 0 {
                        add_into(&mut s_out, src.base.product(m, &r, v_deg, &v));
                        let sign_u: S = datum.sign_scalar(one, u_deg);
                        let su = src.base.product(s_deg, &s_vec, u_deg, &u);
                        add_into(
                            &mut s_out,
                            su.into_iter().map(|x| sign_u.clone() * x).collect(),
                        );
                        let (dv_deg, dv) = src.d_of(v_deg, &v);
                        add_into(&mut s_out, src.base.product(s_deg, &s_vec, dv_deg, &dv));
                    }
                    for (k, x) in r_out.into_iter().enumerate() {
                        t.set(i, j, k, x);
                    }
                    for (k, x) in s_out.into_iter().enumerate() {
                        t.set(i, j, r_dim(out) + k, x);
                    }
                }
            }
            mult.insert((m, n), t);
        }
    }
    let mut unit = vec![S::zero(); dims.get(&Degree(0)).copied().unwrap_or(0)];
    for (k, u) in src.base.unit().iter().enumerate() {
        unit[k] = u.clone();
    }
    let ring = Arc::new(GradedAlgebra::new(datum, dims, mult, unit));
    Ok(DeltaExtension {
        source: src.clone(),
        ring,
    })
}

/// Per-degree verification that the pairing (x, y) ↦ ρ(xy) is perfect:
/// both induced maps into the free-coordinate Homs are bijective.
pub fn pairing_rank<S: Scalar>(ext: &DeltaExtension<S>) -> Result<BTreeMap<Degree, usize>, String> {
    let src = &ext.source;
    let datum = src.datum().clone();
    let reg = Arc::new(GradedModule::regular(&ext.ring));
    let mut out = BTreeMap::new();
    let (one_deg, one_v) = ext.one_coords();
    let (delta_deg, delta_v) = ext.delta_coords();
    for &n in &reg.support() {
        let dim = reg.dim_at(n);
        // left functional: x ↦ (ρ(1·x), ρ(δ·x)) ∈ R^{n−1} ⊕ R^{n}
        // right functional: x ↦ (ρ(x·1), ρ(x·δ))
        let prev = datum.sub(n, src.one());
        let rows = src.base.dim_at(prev) + src.base.dim_at(n);
        if rows != dim {
            return Err(format!("pairing dimension mismatch at {}", n));
        }
        let mut left = Matrix::zero(rows, dim);
        let mut right = Matrix::zero(rows, dim);
        for c in 0..dim {
            let x = reg.basis_vector(n, c);
            let ox = ext.ring.product(one_deg, &one_v, n, &x);
            let dx = ext.ring.product(delta_deg, &delta_v, n, &x);
            let xo = ext.ring.product(n, &x, one_deg, &one_v);
            let xd = ext.ring.product(n, &x, delta_deg, &delta_v);
            let (_, l1) = ext.rho(n, &ox);
            let (_, l2) = ext.rho(datum.add(n, src.one()), &dx);
            let (_, r1) = ext.rho(n, &xo);
            let (_, r2) = ext.rho(datum.add(n, src.one()), &xd);
            for (r_, v) in l1.iter().chain(l2.iter()).enumerate() {
                left[(r_, c)] = v.clone();
            }
            for (r_, v) in r1.iter().chain(r2.iter()).enumerate() {
                right[(r_, c)] = v.clone();
            }
        }
        if left.rank() != dim {
            return Err(format!("left pairing not perfect at degree {}", n));
        }
        if right.rank() != dim {
            return Err(format!("right pairing not perfect at degree {}", n));
        }
        out.insert(n, dim);
    }
    Ok(out)
}

/// View a CDG-module as a graded module over R*[δ] (δ acts as d_M).
pub fn to_delta_module<S: Scalar>(
    ext: &DeltaExtension<S>,
    m: &CdgModule<S>,
) -> GradedModule<S> {
    let src = &ext.source;
    let datum = src.datum().clone();
    let mut action = BTreeMap::new();
    for &a in &ext.ring.support() {
        let r_dim = DeltaExtension::r_part_dim(src, a);
        let s_dim = DeltaExtension::s_part_dim(src, a);
        let s_deg = datum.sub(a, src.one());
        for &mm in &m.base.support() {
            let out = datum.add(a, mm);
            if m.base.dim_at(out) == 0 || !datum.component_ok(out) {
                continue;
            }
            let mut t = Tensor3::zero(r_dim + s_dim, m.base.dim_at(mm), m.base.dim_at(out));
            for i in 0..r_dim + s_dim {
                for j in 0..m.base.dim_at(mm) {
                    let x = m.base.basis_vector(mm, j);
                    let res = if i < r_dim {
                        let r = src.base.basis_vector(a, i);
                        m.base.act(a, &r, mm, &x)
                    } else {
                        // (sδ)x = s·d_M(x)
                        let s = src.base.basis_vector(s_deg, i - r_dim);
                        let (dxd, dx) = m.d.apply(mm, &x);
                        m.base.act(s_deg, &s, dxd, &dx)
                    };
                    for (k, v) in res.into_iter().enumerate() {
                        t.set(i, j, k, v);
                    }
                }
            }
            action.insert((a, mm), t);
        }
    }
    GradedModule::new(ext.ring.clone(), m.base.dims().clone(), action)
}

/// Recover a CDG-module from a graded R*[δ]-module (d := action of δ).
pub fn from_delta_module<S: Scalar>(
    ext: &DeltaExtension<S>,
    ring: &Arc<CdgRing<S>>,
    n: &GradedModule<S>,
) -> CdgModule<S> {
    let src = &ext.source;
    let datum = src.datum().clone();
    let mut action = BTreeMap::new();
    for &a in &src.base.support() {
        for &mm in &n.support() {
            let out = datum.add(a, mm);
            if n.dim_at(out) == 0 || !datum.component_ok(out) {
                continue;
            }
            let mut t = Tensor3::zero(src.base.dim_at(a), n.dim_at(mm), n.dim_at(out));
            for i in 0..src.base.dim_at(a) {
                // embed the basis vector of R^a into R[δ]^a
                let r = src.base.basis_vector(a, i);
                let mut xr = vec![S::zero(); ext.dim_at(a)];
                for (k, v) in r.iter().enumerate() {
                    xr[k] = v.clone();
                }
                for j in 0..n.dim_at(mm) {
                    let x = n.basis_vector(mm, j);
                    let res = n.act(a, &xr, mm, &x);
                    for (k, v) in res.into_iter().enumerate() {
                        t.set(i, j, k, v);
                    }
                }
            }
            action.insert((a, mm), t);
        }
    }
    let base = Arc::new(GradedModule::new(
        ring.base.clone(),
        n.dims().clone(),
        action,
    ));
    let (dd, dv) = ext.delta_coords();
    let mut d_blocks = BTreeMap::new();
    for &mm in &n.support() {
        let out = datum.add(mm, dd);
        let mut blk = Matrix::zero(n.dim_at(out), n.dim_at(mm));
        for j in 0..n.dim_at(mm) {
            let x = n.basis_vector(mm, j);
            let res = n.act(dd, &dv, mm, &x);
            for (k, v) in res.into_iter().enumerate() {
                blk[(k, j)] = v.clone();
            }
        }
        d_blocks.insert(mm, blk);
    }
    CdgModule::new(ring.clone(), base, d_blocks)
}

/// G⁺(M): underlying components M^n ⊕ M^{n−𝟏} written m + δm′, action
/// r(m + δm′) = rm − (−1)^{|r|}d(r)m′ + (−1)^{|r|}δ(rm′), differential
/// d(m + δm′) = hm′ + δm. Returned with its canonical short exact
/// sequence of graded modules 0 → M → G⁺(M) → M[−1] → 0.
pub struct GPlusData<S: Scalar> {
    pub module: CdgModule<S>,
    /// m ↦ m + δ0
    pub incl: GradedMap<S>,
    /// m + δm′ ↦ m′ ∈ M[−1]
    pub proj: GradedMap<S>,
    /// the contracting σ(m + δm′) = m′ as a degree-(−𝟏) endomorphism
    pub sigma: GradedMap<S>,
}

pub fn g_plus<S: Scalar>(
    ring: &Arc<CdgRing<S>>,
    m: &Arc<GradedModule<S>>,
) -> Result<GPlusData<S>, String> {
    let datum = ring.datum().clone();
    let one = ring.one();
    for &d in m.dims().keys() {
        if !datum.component_ok(datum.add(d, one)) {
            return Err(format!(
                "G⁺ needs component {} + 𝟏 inside the window",
                d
            ));
        }
    }
    let m_dim = |d: Degree| m.dim_at(d);
    let low_dim = |d: Degree| m.dim_at(datum.sub(d, one));
    let mut dims = BTreeMap::new();
    let mut degs: Vec<Degree> = Vec::new();
    for &d in m.dims().keys() {
        degs.push(d);
        degs.push(datum.add(d, one));
    }
    degs.sort();
    degs.dedup();
    for &d in &degs {
        let n = m_dim(d) + low_dim(d);
        if n > 0 {
            dims.insert(d, n);
        }
    }
    let mut action = BTreeMap::new();
    for &a in &ring.base.support() {
        let sign: S = datum.sign_scalar(one, a); // (−1)^{|r|}
        for &n in &degs {
            let out = datum.add(a, n);
            let dn = m_dim(n) + low_dim(n);
            let dout = dims.get(&out).copied().unwrap_or(0);
            if dn == 0 || dout == 0 || !datum.component_ok(out) {
                continue;
            }
            let mut t = Tensor3::zero(ring.base.dim_at(a), dn, dout);
            let prev_n = datum.sub(n, one);
            for i in 0..ring.base.dim_at(a) {
                let r = ring.base.basis_vector(a, i);
                let (drd, dr) = ring.d_of(a, &r);
                // on the m-part: r·m (target m-part)
                let act_m = m.act_matrix(a, &r, n);
                for j in 0..m_dim(n) {
                    for k in 0..m.dim_at(out) {
                        t.set(i, j, k, act_m[(k, j)].clone());
                    }
                }
                // on the δm′-part: −(−1)^{|r|} d(r)m′ into m-part,
                // (−1)^{|r|} δ(r m′) into δ-part
                let act_dr = m.act_matrix(drd, &dr, prev_n);
                let act_r_low = m.act_matrix(a, &r, prev_n);
                for j in 0..low_dim(n) {
                    for k in 0..m.dim_at(out) {
                        t.set(
                            i,
                            m_dim(n) + j,
                            k,
                            -(sign.clone() * act_dr[(k, j)].clone()),
                        );
                    }
                    for k in 0..m.dim_at(datum.sub(out, one)) {
                        t.set(
                            i,
                            m_dim(n) + j,
                            m.dim_at(out) + k,
                            sign.clone() * act_r_low[(k, j)].clone(),
                        );
                    }
                }
            }
            action.insert((a, n), t);
        }
    }
    let base = Arc::new(GradedModule::new(ring.base.clone(), dims, action));
    // differential: d(m + δm′) = h m′ + δ m
    let mut d_blocks = BTreeMap::new();
    for &n in &degs {
        let out = datum.add(n, one);
        let dn = base.dim_at(n);
        let dout = base.dim_at(out);
        if dn == 0 || dout == 0 {
            continue;
        }
        let mut blk = Matrix::zero(dout, dn);
        let prev_n = datum.sub(n, one);
        // h·m′ into the m-part of degree n+1
        let act_h = m.act_matrix(ring.h_degree(), &ring.h, prev_n);
        for j in 0..low_dim(n) {
            for k in 0..m.dim_at(out) {
                blk[(k, m_dim(n) + j)] = act_h[(k, j)].clone();
            }
        }
        // δ·m into the δ-part of degree n+1 (which is a copy of M^n)
        for j in 0..m_dim(n) {
            blk[(m.dim_at(out) + j, j)] = S::one();
        }
        d_blocks.insert(n, blk);
    }
    let module = CdgModule::new(ring.clone(), base.clone(), d_blocks);
    // inclusion and projection of the canonical sequence
    let mut incl_blocks = BTreeMap::new();
    for &d in m.dims().keys() {
        let mut blk = Matrix::zero(base.dim_at(d), m.dim_at(d));
        for j in 0..m.dim_at(d) {
            blk[(j, j)] = S::one();
        }
        incl_blocks.insert(d, blk);
    }
    let incl = GradedMap::new(m.clone(), base.clone(), Degree(0), incl_blocks);
    let m_down = Arc::new(m.shift(-1)?);
    let mut proj_blocks = BTreeMap::new();
    for &n in base.dims().keys() {
        let mut blk = Matrix::zero(low_dim(n), base.dim_at(n));
        for j in 0..low_dim(n) {
            blk[(j, m_dim(n) + j)] = S::one();
        }
        proj_blocks.insert(n, blk);
    }
    let proj = GradedMap::new(base.clone(), m_down, Degree(0), proj_blocks);
    // σ(m + δm′) = m′ + δ0, a degree-(−𝟏) module endomorphism
    let neg_one = Degree(-one.0);
    let mut sig_blocks = BTreeMap::new();
    for &n in base.dims().keys() {
        let down = datum.add(n, neg_one);
        let mut blk = Matrix::zero(base.dim_at(down), base.dim_at(n));
        for j in 0..low_dim(n) {
            blk[(j, m_dim(n) + j)] = S::one();
        }
        sig_blocks.insert(n, blk);
    }
    let sigma = GradedMap::new(base.clone(), base, neg_one, sig_blocks);
    Ok(GPlusData {
        module,
        incl,
        proj,
        sigma,
    })
}

/// G⁻(M): components M^n ⊕ M^{n+𝟏} written (x, y), action
/// r(x, y) = (rx, (−1)^{|r|}ry − d(r)x), differential d(x, y) = (−y, −hx),
/// with 0 → M[1] → G⁻(M) → M → 0.
pub struct GMinusData<S: Scalar> {
    pub module: CdgModule<S>,
    pub incl: GradedMap<S>,
    pub proj: GradedMap<S>,
}

pub fn g_minus<S: Scalar>(
    ring: &Arc<CdgRing<S>>,
    m: &Arc<GradedModule<S>>,
) -> Result<GMinusData<S>, String> {
    let datum = ring.datum().clone();
    let one = ring.one();
    for &d in m.dims().keys() {
        if !datum.component_ok(datum.sub(d, one)) {
            return Err(format!(
                "G⁻ needs component {} − 𝟏 inside the window",
                d
            ));
        }
    }
    let x_dim = |d: Degree| m.dim_at(d);
    let y_dim = |d: Degree| m.dim_at(datum.add(d, one));
    let mut degs: Vec<Degree> = Vec::new();
    for &d in m.dims().keys() {
        degs.push(d);
        degs.push(datum.sub(d, one));
    }
    degs.sort();
    degs.dedup();
    let mut dims = BTreeMap::new();
    for &d in &degs {
        let n = x_dim(d) + y_dim(d);
        if n > 0 {
            dims.insert(d, n);
        }
    }
    let mut action = BTreeMap::new();
    for &a in &ring.base.support() {
        let sign: S = datum.sign_scalar(one, a);
        for &n in &degs {
            let out = datum.add(a, n);
            let dn = x_dim(n) + y_dim(n);
            let dout = dims.get(&out).copied().unwrap_or(0);
            if dn == 0 || dout == 0 || !datum.component_ok(out) {
                continue;
            }
            let mut t = Tensor3::zero(ring.base.dim_at(a), dn, dout);
            let up_n = datum.add(n, one);
            for i in 0..ring.base.dim_at(a) {
                let r = ring.base.basis_vector(a, i);
                let (drd, dr) = ring.d_of(a, &r);
                let act_x = m.act_matrix(a, &r, n); // x ↦ rx
                for j in 0..x_dim(n) {
                    for k in 0..m.dim_at(out) {
                        t.set(i, j, k, act_x[(k, j)].clone());
                    }
                }
                // y-part: (−1)^{|r|} r y into y-part; x feeds −d(r)x into y-part
                let act_y = m.act_matrix(a, &r, up_n);
                for j in 0..y_dim(n) {
                    for k in 0..m.dim_at(datum.add(out, one)) {
                        t.set(
                            i,
                            x_dim(n) + j,
                            x_dim(out) + k,
                            sign.clone() * act_y[(k, j)].clone(),
                        );
                    }
                }
                let act_drx = m.act_matrix(drd, &dr, n); // x ↦ d(r)x ∈ M^{out+1}
                for j in 0..x_dim(n) {
                    for k in 0..m.dim_at(datum.add(out, one)) {
                        t.set(i, j, x_dim(out) + k, -act_drx[(k, j)].clone());
                    }
                }
            }
            action.insert((a, n), t);
        }
    }
    let base = Arc::new(GradedModule::new(ring.base.clone(), dims, action));
    // d(x, y) = (−y, −hx)
    let mut d_blocks = BTreeMap::new();
    for &n in &degs {
        let out = datum.add(n, one);
        let dn = base.dim_at(n);
        let dout = base.dim_at(out);
        if dn == 0 || dout == 0 {
            continue;
        }
        let mut blk = Matrix::zero(dout, dn);
        for j in 0..y_dim(n) {
            // y ∈ M^{n+1} goes to −y in the x-part of degree n+1
            blk[(j, x_dim(n) + j)] = -S::one();
        }
        let act_h = m.act_matrix(ring.h_degree(), &ring.h, n); // x ↦ hx ∈ M^{n+2}
        for j in 0..x_dim(n) {
            for k in 0..m.dim_at(datum.add(out, one)) {
                blk[(x_dim(out) + k, j)] = -act_h[(k, j)].clone();
            }
        }
        d_blocks.insert(n, blk);
    }
    let module = CdgModule::new(ring.clone(), base.clone(), d_blocks);
    let m_up = Arc::new(m.shift(1)?);
    let mut incl_blocks = BTreeMap::new();
    for &n in base.dims().keys() {
        let mut blk = Matrix::zero(base.dim_at(n), y_dim(n));
        for j in 0..y_dim(n) {
            blk[(x_dim(n) + j, j)] = S::one();
        }
        incl_blocks.insert(n, blk);
    }
    let incl = GradedMap::new(m_up, base.clone(), Degree(0), incl_blocks);
    let mut proj_blocks = BTreeMap::new();
    for &n in base.dims().keys() {
        let mut blk = Matrix::zero(x_dim(n), base.dim_at(n));
        for j in 0..x_dim(n) {
            blk[(j, j)] = S::one();
        }
        proj_blocks.insert(n, blk);
    }
    let proj = GradedMap::new(base, m.clone(), Degree(0), proj_blocks);
    Ok(GMinusData { module, incl, proj })
}

/// The explicit closed degree-0 isomorphism G⁻(M) → G⁺(M)[1]:
/// (x, y) ↦ y + δx, i.e. the coordinate swap.
pub fn g_minus_to_g_plus_shift<S: Scalar>(
    ring: &Arc<CdgRing<S>>,
    m: &Arc<GradedModule<S>>,
) -> Result<(GMinusData<S>, CdgModule<S>, GradedMap<S>), String> {
    let minus = g_minus(ring, m)?;
    let plus = g_plus(ring, m)?;
    let plus_shift = plus.module.shift(1)?;
    let datum = ring.datum().clone();
    let one = ring.one();
    let mut blocks = BTreeMap::new();
    for &n in minus.module.base.dims().keys() {
        let x_dim = m.dim_at(n);
        let y_dim = m.dim_at(datum.add(n, one));
        // target G⁺(M)[1]^n = G⁺(M)^{n+1} = M^{n+1} ⊕ M^{n}
        let rows = plus_shift.base.dim_at(n);
        let mut blk = Matrix::zero(rows, x_dim + y_dim);
        for j in 0..y_dim {
            blk[(j, x_dim + j)] = S::one(); // y into the m-part
        }
        for j in 0..x_dim {
            blk[(y_dim + j, j)] = S::one(); // x into the δ-part
        }
        blocks.insert(n, blk);
    }
    let iso = GradedMap::new(
        minus.module.base.clone(),
        plus_shift.base.clone(),
        Degree(0),
        blocks,
    );
    Ok((minus, plus_shift, iso))
}

/// Transport a degree-0 graded map f: M → N.base to the closed morphism
/// G⁺(M) → N, g(m + δm′) = f(m) + d_N(f(m′)).
pub fn adjunction_transport_gplus<S: Scalar>(
    gp: &GPlusData<S>,
    n: &CdgModule<S>,
    f: &GradedMap<S>,
) -> GradedMap<S> {
    assert_eq!(f.degree, Degree(0));
    let datum = n.ring.datum().clone();
    let one = n.ring.one();
    let base = &gp.module.base;
    let m = &f.source;
    let mut blocks = BTreeMap::new();
    for &deg in base.dims().keys() {
        let m_dim = m.dim_at(deg);
        let low_dim = m.dim_at(datum.sub(deg, one));
        let rows = n.base.dim_at(deg);
        let mut blk = Matrix::zero(rows, m_dim + low_dim);
        let fm = f.block_at(deg);
        for j in 0..m_dim {
            for k in 0..rows {
                blk[(k, j)] = fm[(k, j)].clone();
            }
        }
        let f_low = f.block_at(datum.sub(deg, one));
        let dn = n.d.block_at(datum.sub(deg, one));
        let comp = dn.mul(&f_low);
        for j in 0..low_dim {
            for k in 0..rows {
                blk[(k, m_dim + j)] = comp[(k, j)].clone();
            }
        }
        blocks.insert(deg, blk);
    }
    GradedMap::new(base.clone(), n.base.clone(), Degree(0), blocks)
}

/// Inverse transport: restrict a closed morphism G⁺(M) → N to M.
pub fn adjunction_restrict_gplus<S: Scalar>(
    gp: &GPlusData<S>,
    g: &GradedMap<S>,
) -> GradedMap<S> {
    GradedMap::compose(g, &gp.incl)
}

/// Twist of a CDG-module by a Maurer–Cartan endomorphism a of degree 𝟏:
/// d′ = d + a. Errors when a fails d(a) + a² = 0.
pub fn twist_cdg<S: Scalar>(m: &CdgModule<S>, a: &GradedMap<S>) -> Result<CdgModule<S>, String> {
    let one = m.ring.one();
    assert_eq!(a.degree, one, "twist cochain must have degree 𝟏");
    // d(a) = d∘a + a∘d for |a| = 𝟏 odd, then MC: d(a) + a² = 0
    let da = GradedMap::compose(&m.d, a).add(&GradedMap::compose(a, &m.d));
    let aa = GradedMap::compose(a, a);
    if !da.add(&aa).is_zero_map() {
        return Err("not Maurer–Cartan".into());
    }
    let d_new = m.d.add(a);
    Ok(CdgModule {
        ring: m.ring.clone(),
        base: m.base.clone(),
        d: d_new,
    })
}

/// The 2-periodic CDG-ring of a potential: R^even = A, R^odd = 0, d = 0,
/// h = w. Modules over it are matrix factorizations of w.
pub fn matrix_factorization_ring<S: Scalar>(
    dim: usize,
    table: Tensor3<S>,
    unit: Vec<S>,
    w: Vec<S>,
) -> Result<Arc<CdgRing<S>>, String> {
    let datum = GradingDatum::standard_mod(1);
    let base = GradedAlgebra::ungraded(datum, dim, table, unit);
    // commutativity guarantees w is central
    for a in 0..dim {
        let ea = base.basis_vector(Degree(0), a);
        for b in 0..dim {
            let eb = base.basis_vector(Degree(0), b);
            if base.product(Degree(0), &ea, Degree(0), &eb)
                != base.product(Degree(0), &eb, Degree(0), &ea)
            {
                return Err("potential ring must be commutative".into());
            }
        }
    }
    assert_eq!(w.len(), dim);
    Ok(Arc::new(CdgRing::new(
        Arc::new(base),
        BTreeMap::new(),
        w,
    )))
}
