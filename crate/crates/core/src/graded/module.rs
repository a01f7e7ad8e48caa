//! Graded left modules over a graded algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{GradedAlgebra, Tensor3};
use crate::grading::Degree;
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalar::Scalar;


#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule<S: Scalar> {
    pub algebra: Arc<GradedAlgebra<S>>,
    dims: BTreeMap<Degree, usize>,
    /// Action tables keyed by (algebra degree, module degree).
    action: BTreeMap<(Degree, Degree), Tensor3<S>>,
}

impl<S: Scalar> GradedModule<S> {
    pub fn new(
        algebra: Arc<GradedAlgebra<S>>,
        dims: BTreeMap<Degree, usize>,
        action: BTreeMap<(Degree, Degree), Tensor3<S>>,
    ) -> Self {
        let datum = &algebra.datum;
        let dims: BTreeMap<Degree, usize> = dims
            .into_iter()
            .filter(|&(_, n)| n > 0)
            .map(|(d, n)| (datum.normalize(d), n))
            .collect();
        let action = action
            .into_iter()
            .map(|((a, m), t)| ((datum.normalize(a), datum.normalize(m)), t))
            .collect();
        GradedModule {
            algebra,
            dims,
            action,
        }
    }

    pub fn zero_module(algebra: Arc<GradedAlgebra<S>>) -> Self {
        GradedModule {
            algebra,
            dims: BTreeMap::new(),
            action: BTreeMap::new(),
        }
    }

    pub fn dims(&self) -> &BTreeMap<Degree, usize> {
        &self.dims
    }

    pub fn dim_at(&self, d: Degree) -> usize {
        *self
            .dims
            .get(&self.algebra.datum.normalize(d))
            .unwrap_or(&0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn support(&self) -> Vec<Degree> {
        self.dims.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn basis_vector(&self, d: Degree, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim_at(d)];
        v[i] = S::one();
        v
    }

    /// Coordinates of r·x for homogeneous r and x.
    pub fn act(&self, a: Degree, r: &[S], m: Degree, x: &[S]) -> Vec<S> {
        let out = self.algebra.datum.add(a, m);
        match self
            .action
            .get(&(self.algebra.datum.normalize(a), self.algebra.datum.normalize(m)))
        {
            Some(t) => t.pair(r, x),
            None => vec![S::zero(); self.dim_at(out)],
        }
    }

    /// Matrix of x ↦ r·x on the component M^m.
    pub fn act_matrix(&self, a: Degree, r: &[S], m: Degree) -> Matrix<S> {
        let out = self.algebra.datum.add(a, m);
        match self
            .action
            .get(&(self.algebra.datum.normalize(a), self.algebra.datum.normalize(m)))
        {
            Some(t) => t.left_matrix(r),
            None => Matrix::zero(self.dim_at(out), self.dim_at(m)),
        }
    }

    /// The algebra as a left module over itself.
    pub fn regular(algebra: &Arc<GradedAlgebra<S>>) -> Self {
        let dims = algebra.dims().clone();
        let mut action = BTreeMap::new();
        for &a in &algebra.support() {
            for &m in &algebra.support() {
                let c = algebra.datum.add(a, m);
                if !algebra.datum.component_ok(c) || algebra.dim_at(c) == 0 {
                    continue;
                }
                let mut t = Tensor3::zero(algebra.dim_at(a), algebra.dim_at(m), algebra.dim_at(c));
                for i in 0..algebra.dim_at(a) {
                    let ea = algebra.basis_vector(a, i);
                    for j in 0..algebra.dim_at(m) {
                        let em = algebra.basis_vector(m, j);
                        let prod = algebra.product(a, &ea, m, &em);
                        for (k, v) in prod.into_iter().enumerate() {
                            t.set(i, j, k, v);
                        }
                    }
                }
                action.insert((a, m), t);
            }
        }
        GradedModule::new(algebra.clone(), dims, action)
    }

    /// Free module on homogeneous generators: ⊕ R[−d_g]. Errors when a
    /// shifted copy of the algebra would stick out of the window.
    pub fn free(
        algebra: &Arc<GradedAlgebra<S>>,
        generators: &[Degree],
    ) -> Result<Self, String> {
        let datum = &algebra.datum;
        for &g in generators {
            for &a in &algebra.support() {
                let d = datum.add(a, g);
                if !datum.component_ok(d) {
                    return Err(format!(
                        "free generator in degree {} pushes the algebra component {} outside the window",
                        g, a
                    ));
                }
            }
        }
        // component M^d has one block of R^{d-g} per generator g
        let mut dims: BTreeMap<Degree, usize> = BTreeMap::new();
        for &g in generators {
            for &a in &algebra.support() {
                let d = datum.add(a, g);
                *dims.entry(d).or_insert(0) += algebra.dim_at(a);
            }
        }
        // offsets[(g_idx, d)] = starting coordinate of generator block in M^d
        let offset = |gen_idx: usize, d: Degree| -> usize {
            let mut off = 0;
            for (i, &g) in generators.iter().enumerate() {
                let a = datum.sub(d, g);
                let block = if datum.component_ok(a) { algebra.dim_at(a) } else { 0 };
                if i == gen_idx {
                    return off;
                }
                off += block;
            }
            off
        };
        let mut action = BTreeMap::new();
        let degrees: Vec<Degree> = dims.keys().cloned().collect();
        for &a in &algebra.support() {
            for &m in &degrees {
                let out = datum.add(a, m);
                let (dm, dout) = (dims.get(&m).copied().unwrap_or(0), dims.get(&out).copied().unwrap_or(0));
                if dm == 0 || dout == 0 || !datum.component_ok(out) {
                    continue;
                }
                let mut t = Tensor3::zero(algebra.dim_at(a), dm, dout);
                for (gi, &g) in generators.iter().enumerate() {
                    let b = datum.sub(m, g); // algebra degree inside this generator block
                    if !datum.component_ok(b) || algebra.dim_at(b) == 0 {
                        continue;
                    }
                    let src_off = offset(gi, m);
                    let tgt_deg = datum.add(a, b);
                    if !datum.component_ok(tgt_deg) || algebra.dim_at(tgt_deg) == 0 {
                        continue;
                    }
                    let tgt_off = offset(gi, out);
                    for i in 0..algebra.dim_at(a) {
                        let ea = algebra.basis_vector(a, i);
                        for j in 0..algebra.dim_at(b) {
                            let eb = algebra.basis_vector(b, j);
                            let prod = algebra.product(a, &ea, b, &eb);
                            for (k, v) in prod.into_iter().enumerate() {
                                t.set(i, src_off + j, tgt_off + k, v);
                            }
                        }
                    }
                }
                action.insert((a, m), t);
            }
        }
        Ok(GradedModule::new(algebra.clone(), dims, action))
    }

    /// Coordinates of the generator `gen_idx` (of degree g) inside the free
    /// module built by [`GradedModule::free`].
    pub fn free_generator(
        algebra: &Arc<GradedAlgebra<S>>,
        generators: &[Degree],
        module: &GradedModule<S>,
        gen_idx: usize,
    ) -> (Degree, Vec<S>) {
        let datum = &algebra.datum;
        let g = generators[gen_idx];
        let mut v = vec![S::zero(); module.dim_at(g)];
        let mut off = 0;
        for (i, &gg) in generators.iter().enumerate() {
            let a = datum.sub(g, gg);
            let block = if datum.component_ok(a) { algebra.dim_at(a) } else { 0 };
            if i == gen_idx {
                // the unit of the algebra sits at the start of this block
                for (k, u) in algebra.unit().iter().enumerate() {
                    v[off + k] = u.clone();
                }
                return (g, v);
            }
            off += block;
        }
        unreachable!()
    }

    /// Shift M[n] with the Koszul-twisted action. Errors when a nonzero
    /// component would leave the window.
    pub fn shift(&self, n: i64) -> Result<Self, String> {
        let datum = &self.algebra.datum;
        let nd = Degree(n);
        let mut dims = BTreeMap::new();
        for (&d, &k) in &self.dims {
            let nd2 = datum.sub(d, nd);
            if !datum.component_ok(nd2) {
                return Err(format!(
                    "shift by {} pushes component {} outside the window",
                    n, d
                ));
            }
            dims.insert(nd2, k);
        }
        let mut action = BTreeMap::new();
        for (&(a, m), t) in &self.action {
            let sign: S = datum.sign_scalar(a, nd);
            let mut nt = t.clone();
            if sign != S::one() {
                let mut scaled = Tensor3::zero(t.d0, t.d1, t.d2);
                for i in 0..t.d0 {
                    for j in 0..t.d1 {
                        for k in 0..t.d2 {
                            scaled.set(i, j, k, sign.clone() * t.get(i, j, k).clone());
                        }
                    }
                }
                nt = scaled;
            }
            action.insert((a, datum.sub(m, nd)), nt);
        }
        Ok(GradedModule {
            algebra: self.algebra.clone(),
            dims,
            action,
        })
    }

    /// Direct sum; coordinates of `self` come first in every degree.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let datum = &self.algebra.datum;
        let mut dims = self.dims.clone();
        for (&d, &k) in &other.dims {
            *dims.entry(d).or_insert(0) += k;
        }
        let mut action = BTreeMap::new();
        let adegs = self.algebra.support();
        for &a in &adegs {
            for (&m, _) in &dims {
                let out = datum.add(a, m);
                let dm = dims.get(&m).copied().unwrap_or(0);
                let dout = dims.get(&out).copied().unwrap_or(0);
                if dm == 0 || dout == 0 || !datum.component_ok(out) {
                    continue;
                }
                let mut t = Tensor3::zero(self.algebra.dim_at(a), dm, dout);
                let (s_m, s_out) = (self.dim_at(m), self.dim_at(out));
                for i in 0..self.algebra.dim_at(a) {
                    let ea = self.algebra.basis_vector(a, i);
                    let left = self.act_matrix(a, &ea, m);
                    for j in 0..s_m {
                        for k in 0..s_out {
                            t.set(i, j, k, left[(k, j)].clone());
                        }
                    }
                    let right = other.act_matrix(a, &ea, m);
                    for j in 0..other.dim_at(m) {
                        for k in 0..other.dim_at(out) {
                            t.set(i, s_m + j, s_out + k, right[(k, j)].clone());
                        }
                    }
                }
                action.insert((a, m), t);
            }
        }
        GradedModule {
            algebra: self.algebra.clone(),
            dims,
            action,
        }
    }

    /// Submodule spanned by the given independent columns per degree;
    /// errors when the span is not closed under the action.
    pub fn submodule(&self, basis: &BTreeMap<Degree, Matrix<S>>) -> Result<Self, String> {
        let datum = &self.algebra.datum;
        let mut dims = BTreeMap::new();
        for (&d, b) in basis {
            assert_eq!(b.rows(), self.dim_at(d), "basis rows mismatch at {}", d);
            if b.cols() > 0 {
                dims.insert(d, b.cols());
            }
        }
        let mut action = BTreeMap::new();
        for &a in &self.algebra.support() {
            for (&m, &dm) in &dims {
                let out = datum.add(a, m);
                let dout = dims.get(&out).copied().unwrap_or(0);
                if !datum.component_ok(out) {
                    continue;
                }
                let incl_m = &basis[&m];
                let mut t = Tensor3::zero(self.algebra.dim_at(a), dm, dout);
                for i in 0..self.algebra.dim_at(a) {
                    let ea = self.algebra.basis_vector(a, i);
                    let amb = self.act_matrix(a, &ea, m).mul(incl_m);
                    if dout == 0 {
                        if !amb.is_zero_matrix() {
                            return Err(format!(
                                "span not action-stable: degree {} acts out of the span at {}",
                                a, m
                            ));
                        }
                        continue;
                    }
                    let incl_out = &basis[&out];
                    let coords = incl_out
                        .solve_matrix(&amb)
                        .ok_or_else(|| format!("span not action-stable at ({}, {})", a, m))?;
                    for j in 0..dm {
                        for k in 0..dout {
                            t.set(i, j, k, coords[(k, j)].clone());
                        }
                    }
                }
                if dm > 0 && dout > 0 {
                    action.insert((a, m), t);
                }
            }
        }
        Ok(GradedModule {
            algebra: self.algebra.clone(),
            dims,
            action,
        })
    }

    /// The dual graded module over the opposite algebra:
    /// D(M)^n = (M^{-n})^* with (r ∘ φ)(m) = ±φ(r·m).
    pub fn dual(&self, opposite: &Arc<GradedAlgebra<S>>) -> Result<GradedModule<S>, String> {
        let datum = &self.algebra.datum;
        let mut dims = BTreeMap::new();
        for (&d, &k) in &self.dims {
            let nd = datum.neg(d);
            if !datum.component_ok(nd) {
                return Err(format!("dual component {} outside the window", nd));
            }
            dims.insert(nd, k);
        }
        let mut action = BTreeMap::new();
        for &a in &self.algebra.support() {
            for (&n, &dn) in &dims {
                let out = datum.add(a, n);
                let dout = dims.get(&out).copied().unwrap_or(0);
                if dout == 0 || !datum.component_ok(out) {
                    continue;
                }
                // φ basis dual to M^{-n}; (r·φ_j)(m_i) = sign(|r|,|φ|)·φ_j(r m_i)
                let m_deg = datum.neg(out); // argument degree of the output functional
                let sign: S = datum.sign_scalar(a, n);
                let mut t = Tensor3::zero(self.algebra.dim_at(a), dn, dout);
                for i in 0..self.algebra.dim_at(a) {
                    let ea = self.algebra.basis_vector(a, i);
                    let act = self.act_matrix(a, &ea, m_deg); // M^{-out} -> M^{-n}
                    for j in 0..dn {
                        for k in 0..dout {
                            t.set(i, j, k, sign.clone() * act[(j, k)].clone());
                        }
                    }
                }
                action.insert((a, n), t);
            }
        }
        Ok(GradedModule {
            algebra: opposite.clone(),
            dims,
            action,
        })
    }

    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("module");
        let datum = &self.algebra.datum;
        for (&d, _) in &self.dims {
            if !datum.component_ok(d) {
                report.violation(format!("component in unrepresentable degree {}", d));
            }
        }
        if self.algebra.is_zero_algebra() && !self.is_zero() {
            report.violation("nonzero module over the zero algebra".into());
            return report;
        }
        // unitality
        for &m in &self.support() {
            for j in 0..self.dim_at(m) {
                let x = self.basis_vector(m, j);
                let ux = self.act(Degree(0), self.algebra.unit(), m, &x);
                if ux != x {
                    report.violation(format!("unitality violated at degree {} index {}", m, j));
                }
            }
        }
        // associativity r(s x) = (rs) x on all basis triples
        for &a in &self.algebra.support() {
            for &b in &self.algebra.support() {
                for &m in &self.support() {
                    for i in 0..self.algebra.dim_at(a) {
                        let r = self.algebra.basis_vector(a, i);
                        for j in 0..self.algebra.dim_at(b) {
                            let s = self.algebra.basis_vector(b, j);
                            let rs = self.algebra.product(a, &r, b, &s);
                            for k in 0..self.dim_at(m) {
                                let x = self.basis_vector(m, k);
                                let sx = self.act(b, &s, m, &x);
                                let lhs = self.act(a, &r, datum.add(b, m), &sx);
                                let rhs = self.act(datum.add(a, b), &rs, m, &x);
                                if lhs != rhs {
                                    report.violation(format!(
                                        "associativity fails on (r:{},{}; s:{},{}; x:{},{})",
                                        a, i, b, j, m, k
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }
}
