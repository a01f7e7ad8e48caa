//! Graded algebras given by structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::grading::{Degree, GradingDatum};
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalar::Scalar;


/// A dense order-3 tensor: `T[i][j][k]` is the k-th output coordinate of
/// the pairing applied to basis elements i and j.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<S> {
    pub d0: usize,
    pub d1: usize,
    pub d2: usize,
    data: Vec<S>,
}

impl<S: Scalar> Tensor3<S> {
    pub fn zero(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 {
            d0,
            d1,
            d2,
            data: vec![S::zero(); d0 * d1 * d2],
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        self.data[(i * self.d1 + j) * self.d2 + k] = v;
    }

    /// Contract with coordinate vectors on both inputs.
    pub fn pair(&self, x: &[S], y: &[S]) -> Vec<S> {
        debug_assert_eq!(x.len(), self.d0);
        debug_assert_eq!(y.len(), self.d1);
        let mut out = vec![S::zero(); self.d2];
        for i in 0..self.d0 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.d1 {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + c.clone() * self.get(i, j, k).clone();
                }
            }
        }
        out
    }

    /// Matrix of `x ⊗ −` (the second slot varies): d1 → d2.
    pub fn left_matrix(&self, x: &[S]) -> Matrix<S> {
        let mut m = Matrix::zero(self.d2, self.d1);
        for j in 0..self.d1 {
            for k in 0..self.d2 {
                let mut acc = S::zero();
                for i in 0..self.d0 {
                    acc = acc + x[i].clone() * self.get(i, j, k).clone();
                }
                m[(k, j)] = acc;
            }
        }
        m
    }
}

/// A finite-dimensional Γ-graded algebra with explicit structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra<S: Scalar> {
    pub datum: GradingDatum,
    dims: BTreeMap<Degree, usize>,
    /// Multiplication tables keyed by (deg a, deg b); present only when all
    /// three component dimensions are nonzero and a+b is representable.
    mult: BTreeMap<(Degree, Degree), Tensor3<S>>,
    unit: Vec<S>,
}

impl<S: Scalar> GradedAlgebra<S> {
    pub fn new(
        datum: GradingDatum,
        dims: BTreeMap<Degree, usize>,
        mult: BTreeMap<(Degree, Degree), Tensor3<S>>,
        unit: Vec<S>,
    ) -> Self {
        let dims: BTreeMap<Degree, usize> = dims
            .into_iter()
            .filter(|&(_, n)| n > 0)
            .map(|(d, n)| (datum.normalize(d), n))
            .collect();
        let mult = mult
            .into_iter()
            .map(|((a, b), t)| ((datum.normalize(a), datum.normalize(b)), t))
            .collect();
        GradedAlgebra {
            datum,
            dims,
            mult,
            unit,
        }
    }

    /// The zero algebra is legal.
    pub fn zero_algebra(datum: GradingDatum) -> Self {
        GradedAlgebra {
            datum,
            dims: BTreeMap::new(),
            mult: BTreeMap::new(),
            unit: Vec::new(),
        }
    }

    /// An ungraded algebra placed in degree 0.
    pub fn ungraded(datum: GradingDatum, dim: usize, table: Tensor3<S>, unit: Vec<S>) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(Degree(0), dim);
        let mut mult = BTreeMap::new();
        if dim > 0 {
            mult.insert((Degree(0), Degree(0)), table);
        }
        Self::new(datum, dims, mult, unit)
    }

    pub fn dims(&self) -> &BTreeMap<Degree, usize> {
        &self.dims
    }

    pub fn dim_at(&self, d: Degree) -> usize {
        *self.dims.get(&self.datum.normalize(d)).unwrap_or(&0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn support(&self) -> Vec<Degree> {
        self.dims.keys().cloned().collect()
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.dims.is_empty()
    }

    /// Product of homogeneous coordinate vectors; returns the coordinates
    /// in degree a+b (empty when the target component is zero).
    pub fn product(&self, a: Degree, x: &[S], b: Degree, y: &[S]) -> Vec<S> {
        let c = self.datum.add(a, b);
        let dc = self.dim_at(c);
        match self.mult.get(&(self.datum.normalize(a), self.datum.normalize(b))) {
            Some(t) => t.pair(x, y),
            None => vec![S::zero(); dc],
        }
    }

    /// Matrix of left multiplication by x ∈ R^a on the component R^b.
    pub fn left_mult(&self, a: Degree, x: &[S], b: Degree) -> Matrix<S> {
        let c = self.datum.add(a, b);
        match self.mult.get(&(self.datum.normalize(a), self.datum.normalize(b))) {
            Some(t) => t.left_matrix(x),
            None => Matrix::zero(self.dim_at(c), self.dim_at(b)),
        }
    }

    pub fn basis_vector(&self, d: Degree, i: usize) -> Vec<S> {
        let n = self.dim_at(d);
        let mut v = vec![S::zero(); n];
        v[i] = num_traits::One::one();
        v
    }

    /// The opposite algebra with the Koszul sign: r ∘op s = ±(s r).
    pub fn opposite(self: &Arc<Self>) -> Arc<GradedAlgebra<S>> {
        let mut mult = BTreeMap::new();
        for (&(a, b), t) in &self.mult {
            // the (b, a)-table of the opposite comes from this one
            let sign: S = self.datum.sign_scalar(a, b);
            let mut nt = Tensor3::zero(t.d1, t.d0, t.d2);
            for i in 0..t.d0 {
                for j in 0..t.d1 {
                    for k in 0..t.d2 {
                        nt.set(j, i, k, sign.clone() * t.get(i, j, k).clone());
                    }
                }
            }
            mult.insert((b, a), nt);
        }
        Arc::new(GradedAlgebra {
            datum: self.datum.clone(),
            dims: self.dims.clone(),
            mult,
            unit: self.unit.clone(),
        })
    }

    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("algebra");
        report.merge(self.datum.validate());
        for (&d, &n) in &self.dims {
            if !self.datum.component_ok(d) {
                report.violation(format!("component in unrepresentable degree {}", d));
            }
            if n == 0 {
                report.violation(format!("explicit zero dimension at {}", d));
            }
        }
        if self.is_zero_algebra() {
            if !self.unit.is_empty() {
                report.violation("zero algebra with nonempty unit".into());
            }
            return report;
        }
        if self.unit.len() != self.dim_at(Degree(0)) {
            report.violation(format!(
                "unit lives in component 0 of dimension {}, got a vector of length {}",
                self.dim_at(Degree(0)),
                self.unit.len()
            ));
            return report;
        }
        let degrees = self.support();
        // products must land in the right component or be declared zero
        for &(a, b) in self.mult.keys() {
            let c = self.datum.add(a, b);
            if !self.datum.component_ok(c) || self.dim_at(c) == 0 {
                report.violation(format!(
                    "multiplication table for ({}, {}) targets a zero component",
                    a, b
                ));
            }
        }
        // unitality on every basis vector
        for &d in &degrees {
            for i in 0..self.dim_at(d) {
                let e = self.basis_vector(d, i);
                let left = self.product(Degree(0), &self.unit, d, &e);
                let right = self.product(d, &e, Degree(0), &self.unit);
                if left != e {
                    report.violation(format!("1·e ≠ e at degree {} index {}", d, i));
                }
                if right != e {
                    report.violation(format!("e·1 ≠ e at degree {} index {}", d, i));
                }
            }
        }
        // associativity on all basis triples
        for &a in &degrees {
            for &b in &degrees {
                for &c in &degrees {
                    for i in 0..self.dim_at(a) {
                        let ea = self.basis_vector(a, i);
                        for j in 0..self.dim_at(b) {
                            let eb = self.basis_vector(b, j);
                            let ab = self.product(a, &ea, b, &eb);
                            for k in 0..self.dim_at(c) {
                                let ec = self.basis_vector(c, k);
                                let lhs = self.product(self.datum.add(a, b), &ab, c, &ec);
                                let bc = self.product(b, &eb, c, &ec);
                                let rhs = self.product(a, &ea, self.datum.add(b, c), &bc);
                                if lhs != rhs {
                                    report.violation(format!(
                                        "associativity fails on basis triple ({},{})({},{})({},{})",
                                        a, i, b, j, c, k
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
