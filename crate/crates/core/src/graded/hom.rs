//! Bases of homogeneous module maps of a fixed degree: the solution space
//! of the sign-rule linear system.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::map::GradedMap;
use super::module::GradedModule;
use crate::grading::Degree;
use crate::matrix::{LinSys, Matrix};
use crate::scalar::Scalar;


/// Variable layout for the entries of a degree-n block map L → M.
pub(crate) struct MapVars {
    pub degree: Degree,
    /// (source degree, rows, cols, offset)
    pub layout: Vec<(Degree, usize, usize, usize)>,
    pub total: usize,
}

impl MapVars {
    pub fn new<S: Scalar>(l: &GradedModule<S>, m: &GradedModule<S>, degree: Degree) -> Self {
        let datum = &l.algebra.datum;
        let mut layout = Vec::new();
        let mut total = 0;
        for &d in l.dims().keys() {
            let out = datum.add(d, degree);
            let rows = m.dim_at(out);
            let cols = l.dim_at(d);
            if rows > 0 && cols > 0 {
                layout.push((d, rows, cols, total));
                total += rows * cols;
            }
        }
        MapVars {
            degree,
            layout,
            total,
        }
    }

    pub fn var(&self, d: Degree, row: usize, col: usize) -> Option<usize> {
        self.layout
            .iter()
            .find(|&&(dd, _, _, _)| dd == d)
            .map(|&(_, _, cols, off)| off + row * cols + col)
    }

    pub fn to_map<S: Scalar>(
        &self,
        l: &Arc<GradedModule<S>>,
        m: &Arc<GradedModule<S>>,
        values: &[S],
    ) -> GradedMap<S> {
        let mut blocks = BTreeMap::new();
        for &(d, rows, cols, off) in &self.layout {
            let mut b = Matrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    b[(r, c)] = values[off + r * cols + c].clone();
                }
            }
            blocks.insert(d, b);
        }
        GradedMap::new(l.clone(), m.clone(), self.degree, blocks)
    }

    pub fn to_vec<S: Scalar>(&self, f: &GradedMap<S>) -> Vec<S> {
        let mut v = vec![S::zero(); self.total];
        for &(d, rows, cols, off) in &self.layout {
            let b = f.block_at(d);
            for r in 0..rows {
                for c in 0..cols {
                    v[off + r * cols + c] = b[(r, c)].clone();
                }
            }
        }
        v
    }
}

/// Push constraints expressing the sign rule into the system.
fn sign_rule_system<S: Scalar>(
    l: &GradedModule<S>,
    m: &GradedModule<S>,
    vars: &MapVars,
) -> LinSys<S> {
    let datum = &l.algebra.datum;
    let n = vars.degree;
    let mut sys = LinSys::new(vars.total);
    for &a in &l.algebra.support() {
        let sign: S = datum.sign_scalar(n, a);
        for &md in &l.support() {
            let mid = datum.add(a, md); // degree of r·x in L
            let out = datum.add(mid, n); // output component in M
            if m.dim_at(out) == 0 {
                // f(r x) is forced zero; the rule still constrains r·f(x)
            }
            for i in 0..l.algebra.dim_at(a) {
                let r = l.algebra.basis_vector(a, i);
                let act_m = m.act_matrix(a, &r, datum.add(md, n)); // M^{md+n} -> M^{out}
                for j in 0..l.dim_at(md) {
                    let x = l.basis_vector(md, j);
                    let rx = l.act(a, &r, md, &x);
                    for k in 0..m.dim_at(out) {
                        let mut coeffs: Vec<(usize, S)> = Vec::new();
                        // LHS: f(rx)_k = Σ_c rx_c · F[mid][k, c]
                        for (c, v) in rx.iter().enumerate() {
                            if v.is_zero() {
                                continue;
                            }
                            if let Some(idx) = vars.var(mid, k, c) {
                                coeffs.push((idx, v.clone()));
                            }
                        }
                        // RHS: sign · Σ_t act[k, t] · F[md][t, j]
                        for t in 0..m.dim_at(datum.add(md, n)) {
                            let c = act_m[(k, t)].clone();
                            if c.is_zero() {
                                continue;
                            }
                            if let Some(idx) = vars.var(md, t, j) {
                                coeffs.push((idx, -(sign.clone() * c)));
                            }
                        }
                        if !coeffs.is_empty() {
                            sys.push(coeffs, S::zero());
                        }
                    }
                }
            }
        }
    }
    sys
}

/// Basis of homogeneous maps L → M of the given degree.
pub fn hom_graded<S: Scalar>(
    l: &Arc<GradedModule<S>>,
    m: &Arc<GradedModule<S>>,
    degree: Degree,
) -> Vec<GradedMap<S>> {
    let vars = MapVars::new(l, m, degree);
    if vars.total == 0 {
        return Vec::new();
    }
    let sys = sign_rule_system(l, m, &vars);
    let kernel = sys.kernel();
    (0..kernel.cols())
        .map(|c| vars.to_map(l, m, &kernel.col(c)))
        .collect()
}

pub fn hom_graded_dim<S: Scalar>(
    l: &Arc<GradedModule<S>>,
    m: &Arc<GradedModule<S>>,
    degree: Degree,
) -> usize {
    hom_graded(l, m, degree).len()
}

/// Vectorize a map in the canonical block layout of its (source, target,
/// degree) triple.
pub fn map_vec<S: Scalar>(f: &GradedMap<S>) -> Vec<S> {
    MapVars::new(&f.source, &f.target, f.degree).to_vec(f)
}

/// Total number of block entries for maps of this signature.
pub fn map_vec_len<S: Scalar>(
    l: &GradedModule<S>,
    m: &GradedModule<S>,
    degree: Degree,
) -> usize {
    MapVars::new(l, m, degree).total
}

/// Rebuild a map from its canonical vectorization.
pub fn map_from_vec<S: Scalar>(
    l: &Arc<GradedModule<S>>,
    m: &Arc<GradedModule<S>>,
    degree: Degree,
    values: &[S],
) -> GradedMap<S> {
    MapVars::new(l, m, degree).to_map(l, m, values)
}

/// Coordinates of a map in a given hom basis, when it lies in the span.
pub fn map_coordinates<S: Scalar>(
    basis: &[GradedMap<S>],
    f: &GradedMap<S>,
) -> Option<Vec<S>> {
    if basis.is_empty() {
        return if f.is_zero_map() { Some(Vec::new()) } else { None };
    }
    let vars = MapVars::new(&f.source, &f.target, f.degree);
    let cols: Vec<Vec<S>> = basis.iter().map(|b| vars.to_vec(b)).collect();
    let mut mat = Matrix::zero(vars.total, basis.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            mat[(r, c)] = v.clone();
        }
    }
    mat.solve(&Matrix::column(vars.to_vec(f))).map(|x| x.col(0))
}
