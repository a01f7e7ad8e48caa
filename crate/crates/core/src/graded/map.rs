//! Homogeneous module maps with the left-module sign rule, and the
//! abelian-category operations on strict degree-0 maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::GradedModule;
use crate::grading::Degree;
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalar::Scalar;


/// A homogeneous map f: L → M of some degree n, satisfying
/// f(r x) = (−1)^{σ(n,|r|)} r f(x). Blocks are stored per source degree.
#[derive(Clone, Debug)]
pub struct GradedMap<S: Scalar> {
    pub source: Arc<GradedModule<S>>,
    pub target: Arc<GradedModule<S>>,
    pub degree: Degree,
    blocks: BTreeMap<Degree, Matrix<S>>,
}

impl<S: Scalar> GradedMap<S> {
    pub fn new(
        source: Arc<GradedModule<S>>,
        target: Arc<GradedModule<S>>,
        degree: Degree,
        blocks: BTreeMap<Degree, Matrix<S>>,
    ) -> Self {
        let datum = &source.algebra.datum;
        let degree = datum.normalize(degree);
        let mut clean = BTreeMap::new();
        for (&d, b) in &blocks {
            let d = datum.normalize(d);
            let out = datum.add(d, degree);
            assert_eq!(b.rows(), target.dim_at(out), "block rows at {}", d);
            assert_eq!(b.cols(), source.dim_at(d), "block cols at {}", d);
            if b.rows() > 0 && b.cols() > 0 {
                clean.insert(d, b.clone());
            }
        }
        GradedMap {
            source,
            target,
            degree,
            blocks: clean,
        }
    }

    pub fn zero(
        source: Arc<GradedModule<S>>,
        target: Arc<GradedModule<S>>,
        degree: Degree,
    ) -> Self {
        GradedMap {
            source,
            target,
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(module: Arc<GradedModule<S>>) -> Self {
        let mut blocks = BTreeMap::new();
        for (&d, &n) in module.dims() {
            blocks.insert(d, Matrix::identity(n));
        }
        GradedMap {
            source: module.clone(),
            target: module,
            degree: Degree(0),
            blocks,
        }
    }

    pub fn block_at(&self, d: Degree) -> Matrix<S> {
        let datum = &self.source.algebra.datum;
        let d = datum.normalize(d);
        let out = datum.add(d, self.degree);
        match self.blocks.get(&d) {
            Some(b) => b.clone(),
            None => Matrix::zero(self.target.dim_at(out), self.source.dim_at(d)),
        }
    }

    pub fn blocks(&self) -> &BTreeMap<Degree, Matrix<S>> {
        &self.blocks
    }

    pub fn is_zero_map(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero_matrix())
    }

    pub fn apply(&self, d: Degree, coords: &[S]) -> (Degree, Vec<S>) {
        let out = self.source.algebra.datum.add(d, self.degree);
        let b = self.block_at(d);
        let v = b.mul(&Matrix::column(coords.to_vec()));
        (out, v.col(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut blocks = self.blocks.clone();
        for (&d, b) in &other.blocks {
            let cur = self.block_at(d);
            blocks.insert(d, cur.add(b));
        }
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            blocks,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let blocks = self.blocks.iter().map(|(&d, b)| (d, b.neg())).collect();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            blocks,
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        let blocks = self.blocks.iter().map(|(&d, b)| (d, b.scale(s))).collect();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            blocks,
        }
    }

    /// g ∘ f, degrees add.
    pub fn compose(g: &Self, f: &Self) -> Self {
        let datum = &f.source.algebra.datum;
        assert_eq!(
            f.target.dims(),
            g.source.dims(),
            "composition target/source mismatch"
        );
        let degree = datum.add(g.degree, f.degree);
        let mut blocks = BTreeMap::new();
        for &d in f.source.dims().keys() {
            let mid = datum.add(d, f.degree);
            let b = g.block_at(mid).mul(&f.block_at(d));
            if b.rows() > 0 && b.cols() > 0 {
                blocks.insert(d, b);
            }
        }
        GradedMap {
            source: f.source.clone(),
            target: g.target.clone(),
            degree,
            blocks,
        }
    }

    pub fn equal(&self, other: &Self) -> bool {
        if self.degree != other.degree {
            return false;
        }
        self.source
            .dims()
            .keys()
            .all(|&d| self.block_at(d) == other.block_at(d))
    }

    /// Per-degree rank of the blocks.
    pub fn rank(&self) -> usize {
        self.blocks.values().map(|b| b.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.source
            .dims()
            .iter()
            .all(|(&d, &n)| self.block_at(d).rank() == n)
    }

    pub fn is_surjective(&self) -> bool {
        let datum = &self.source.algebra.datum;
        self.target.dims().iter().all(|(&e, &n)| {
            let d = datum.sub(e, self.degree);
            self.block_at(d).rank() == n
        })
    }

    /// Verify the sign rule f(r x) = (−1)^{σ(n,|r|)} r f(x) on all basis
    /// pairs, plus block shape sanity.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("map");
        let datum = &self.source.algebra.datum;
        let n = self.degree;
        for &a in &self.source.algebra.support() {
            let sign: S = datum.sign_scalar(n, a);
            for &m in &self.source.support() {
                for i in 0..self.source.algebra.dim_at(a) {
                    let r = self.source.algebra.basis_vector(a, i);
                    for j in 0..self.source.dim_at(m) {
                        let x = self.source.basis_vector(m, j);
                        let rx = self.source.act(a, &r, m, &x);
                        let (_, f_rx) = self.apply(datum.add(a, m), &rx);
                        let (fm, fx) = self.apply(m, &x);
                        let r_fx = self.target.act(a, &r, fm, &fx);
                        let rhs: Vec<S> =
                            r_fx.into_iter().map(|v| sign.clone() * v).collect();
                        if f_rx != rhs {
                            report.violation(format!(
                                "sign rule violated on (r:{},{}; x:{},{})",
                                a, i, m, j
                            ));
                        }
                    }
                }
            }
        }
        report
    }
}

/// Kernel of a homogeneous module map, with its inclusion.
pub fn kernel<S: Scalar>(f: &GradedMap<S>) -> (Arc<GradedModule<S>>, GradedMap<S>) {
    let mut basis = BTreeMap::new();
    for &d in f.source.dims().keys() {
        basis.insert(d, f.block_at(d).kernel_basis());
    }
    let sub = Arc::new(
        f.source
            .submodule(&basis)
            .expect("kernel is action-stable"),
    );
    let incl = GradedMap::new(sub.clone(), f.source.clone(), Degree(0), basis);
    (sub, incl)
}

/// Image of a homogeneous module map, as a submodule of the target.
pub fn image<S: Scalar>(f: &GradedMap<S>) -> (Arc<GradedModule<S>>, GradedMap<S>) {
    let datum = &f.source.algebra.datum;
    let mut basis = BTreeMap::new();
    for &e in f.target.dims().keys() {
        let d = datum.sub(e, f.degree);
        basis.insert(e, f.block_at(d).image_basis());
    }
    let sub = Arc::new(
        f.target
            .submodule(&basis)
            .expect("image is action-stable"),
    );
    let incl = GradedMap::new(sub.clone(), f.target.clone(), Degree(0), basis);
    (sub, incl)
}

/// Cokernel of a degree-0 map: the quotient, the canonical projection,
/// and the chosen k-linear section (standard-vector lifts; not a module
/// map in general). The complement basis is deterministic.
pub fn cokernel_with_section<S: Scalar>(
    f: &GradedMap<S>,
) -> (Arc<GradedModule<S>>, GradedMap<S>, BTreeMap<Degree, Matrix<S>>) {
    assert_eq!(f.degree, Degree(0), "cokernel expects a degree-0 map");
    let target = &f.target;
    let mut proj_blocks = BTreeMap::new();
    let mut chosen: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for (&e, &n) in target.dims() {
        let img = f.block_at(e).image_basis();
        // extend img by standard vectors, deterministically
        let aug = img.hstack(&Matrix::identity(n));
        let (_, pivots) = aug.rref();
        let extra: Vec<usize> = pivots
            .iter()
            .filter(|&&c| c >= img.cols())
            .map(|&c| c - img.cols())
            .collect();
        let mut full = img.clone();
        for &idx in &extra {
            let mut col = vec![S::zero(); n];
            col[idx] = S::one();
            full = full.hstack(&Matrix::column(col));
        }
        // coordinates in the extended basis; keep the complement rows
        let inv = full
            .solve_matrix(&Matrix::identity(n))
            .expect("extended basis is invertible");
        let mut proj = Matrix::zero(extra.len(), n);
        for (row, _) in extra.iter().enumerate() {
            for j in 0..n {
                proj[(row, j)] = inv[(img.cols() + row, j)].clone();
            }
        }
        proj_blocks.insert(e, proj);
        chosen.insert(e, extra);
    }
    // quotient module structure: act on the chosen lifts, then project
    let datum = &target.algebra.datum;
    let mut dims = BTreeMap::new();
    for (&e, lift) in &chosen {
        if !lift.is_empty() {
            dims.insert(e, lift.len());
        }
    }
    let mut action = BTreeMap::new();
    for &a in &target.algebra.support() {
        for (&m, lifts) in &chosen {
            if lifts.is_empty() {
                continue;
            }
            let out = datum.add(a, m);
            let dout = dims.get(&out).copied().unwrap_or(0);
            if !datum.component_ok(out) || dout == 0 {
                // projection of the action must vanish; verified by proj
                continue;
            }
            let mut t = super::algebra::Tensor3::zero(
                target.algebra.dim_at(a),
                lifts.len(),
                dout,
            );
            let proj_out = &proj_blocks[&out];
            for i in 0..target.algebra.dim_at(a) {
                let r = target.algebra.basis_vector(a, i);
                let act = target.act_matrix(a, &r, m);
                for (j, &lift_idx) in lifts.iter().enumerate() {
                    let col: Vec<S> = (0..act.rows()).map(|k| act[(k, lift_idx)].clone()).collect();
                    let q = proj_out.mul(&Matrix::column(col));
                    for k in 0..dout {
                        t.set(i, j, k, q[(k, 0)].clone());
                    }
                }
            }
            action.insert((a, m), t);
        }
    }
    let quot = Arc::new(GradedModule::new(target.algebra.clone(), dims, action));
    let mut section = BTreeMap::new();
    for (&e, lifts) in &chosen {
        let n = target.dim_at(e);
        let mut sec = Matrix::zero(n, lifts.len());
        for (c, &idx) in lifts.iter().enumerate() {
            sec[(idx, c)] = S::one();
        }
        section.insert(e, sec);
    }
    let proj = GradedMap::new(target.clone(), quot.clone(), Degree(0), proj_blocks);
    (quot, proj, section)
}

/// Cokernel of a degree-0 map, with the canonical projection.
pub fn cokernel<S: Scalar>(f: &GradedMap<S>) -> (Arc<GradedModule<S>>, GradedMap<S>) {
    let (q, p, _) = cokernel_with_section(f);
    (q, p)
}

/// Pullback of degree-0 maps f: A → C ← B :g, with its two projections.
pub fn pullback<S: Scalar>(
    f: &GradedMap<S>,
    g: &GradedMap<S>,
) -> (Arc<GradedModule<S>>, GradedMap<S>, GradedMap<S>) {
    assert_eq!(f.degree, Degree(0));
    assert_eq!(g.degree, Degree(0));
    assert_eq!(f.target.dims(), g.target.dims(), "pullback targets differ");
    let a = &f.source;
    let b = &g.source;
    let sum = Arc::new(a.direct_sum(b));
    // kernel of [f, -g]: A ⊕ B → C
    let mut basis = BTreeMap::new();
    for &d in sum.dims().keys() {
        let fa = f.block_at(d);
        let gb = g.block_at(d).neg();
        let rows = fa.rows().max(gb.rows());
        let fa = if fa.rows() == rows {
            fa
        } else {
            Matrix::zero(rows, fa.cols())
        };
        let gb = if gb.rows() == rows {
            gb
        } else {
            Matrix::zero(rows, gb.cols())
        };
        basis.insert(d, fa.hstack(&gb).kernel_basis());
    }
    let p = Arc::new(sum.submodule(&basis).expect("pullback is action-stable"));
    let mut pa_blocks = BTreeMap::new();
    let mut pb_blocks = BTreeMap::new();
    for (&d, bmat) in &basis {
        let na = a.dim_at(d);
        let nb = b.dim_at(d);
        let mut pa = Matrix::zero(na, bmat.cols());
        let mut pb = Matrix::zero(nb, bmat.cols());
        for c in 0..bmat.cols() {
            for i in 0..na {
                pa[(i, c)] = bmat[(i, c)].clone();
            }
            for i in 0..nb {
                pb[(i, c)] = bmat[(na + i, c)].clone();
            }
        }
        pa_blocks.insert(d, pa);
        pb_blocks.insert(d, pb);
    }
    let pa = GradedMap::new(p.clone(), a.clone(), Degree(0), pa_blocks);
    let pb = GradedMap::new(p.clone(), b.clone(), Degree(0), pb_blocks);
    (p, pa, pb)
}

/// Pushout of degree-0 maps A ← C → B, with its two inclusions.
pub fn pushout<S: Scalar>(
    f: &GradedMap<S>,
    g: &GradedMap<S>,
) -> (Arc<GradedModule<S>>, GradedMap<S>, GradedMap<S>) {
    assert_eq!(f.degree, Degree(0));
    assert_eq!(g.degree, Degree(0));
    assert_eq!(f.source.dims(), g.source.dims(), "pushout sources differ");
    let a = &f.target;
    let b = &g.target;
    let sum = Arc::new(a.direct_sum(b));
    // cokernel of (f, -g): C → A ⊕ B
    let mut blocks = BTreeMap::new();
    for &d in f.source.dims().keys() {
        let top = f.block_at(d);
        let bot = g.block_at(d).neg();
        blocks.insert(d, top.vstack(&bot));
    }
    let c_to_sum = GradedMap::new(f.source.clone(), sum.clone(), Degree(0), blocks);
    let (q, proj) = cokernel(&c_to_sum);
    let mut ia_blocks = BTreeMap::new();
    let mut ib_blocks = BTreeMap::new();
    for (&d, &_) in sum.dims() {
        let na = a.dim_at(d);
        let nb = b.dim_at(d);
        let pb = proj.block_at(d);
        let mut ia = Matrix::zero(pb.rows(), na);
        let mut ib = Matrix::zero(pb.rows(), nb);
        for r in 0..pb.rows() {
            for j in 0..na {
                ia[(r, j)] = pb[(r, j)].clone();
            }
            for j in 0..nb {
                ib[(r, j)] = pb[(r, na + j)].clone();
            }
        }
        ia_blocks.insert(d, ia);
        ib_blocks.insert(d, ib);
    }
    let ia = GradedMap::new(a.clone(), q.clone(), Degree(0), ia_blocks);
    let ib = GradedMap::new(b.clone(), q.clone(), Degree(0), ib_blocks);
    (q, ia, ib)
}
