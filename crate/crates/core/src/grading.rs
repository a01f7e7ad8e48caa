//! Grading group datum: the triple (Γ, σ, 𝟏) with Koszul sign computation.
//!
//! Γ is either ℤ restricted to a finite window of component degrees, or
//! ℤ/2p. Degrees of *components* must stay representable; degrees of
//! *maps* are free (they are differences and may leave the window).

use crate::report::CheckReport;
use crate::scalar::Scalar;


#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Degree(pub i64);

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Γ = ℤ with nonzero components confined to `lo ..= hi`.
    IntWindow { lo: i64, hi: i64 },
    /// Γ = ℤ/2p for p ≥ 1.
    Mod2p { p: i64 },
}

/// The symmetric bilinear form σ: Γ×Γ → ℤ/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaForm {
    /// σ(a, b) = a·b·t mod 2. The canonical choice is t = 1.
    Product { t: u8 },
    /// Explicit residue table for ℤ/2p (size 2p × 2p, entries 0/1),
    /// extended bilinearly through the residue representatives.
    Table(Vec<Vec<u8>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradingDatum {
    pub kind: GroupKind,
    pub sigma: SigmaForm,
    pub one: Degree,
}

impl GradingDatum {
    /// Standard ℤ datum: σ(a,b) = ab mod 2, 𝟏 = 1.
    pub fn standard_z(lo: i64, hi: i64) -> Self {
        GradingDatum {
            kind: GroupKind::IntWindow { lo, hi },
            sigma: SigmaForm::Product { t: 1 },
            one: Degree(1),
        }
    }

    /// Standard ℤ/2p datum with σ(a,b) = ab mod 2 and 𝟏 = 1.
    pub fn standard_mod(p: i64) -> Self {
        GradingDatum {
            kind: GroupKind::Mod2p { p },
            sigma: SigmaForm::Product { t: 1 },
            one: Degree(1),
        }
    }

    pub fn normalize(&self, d: Degree) -> Degree {
        match self.kind {
            GroupKind::IntWindow { .. } => d,
            GroupKind::Mod2p { p } => Degree(d.0.rem_euclid(2 * p)),
        }
    }

    /// Group operation on degrees. Never fails: map degrees are allowed to
    /// leave a ℤ-window; only *components* are window-checked.
    pub fn add(&self, a: Degree, b: Degree) -> Degree {
        self.normalize(Degree(a.0 + b.0))
    }

    pub fn sub(&self, a: Degree, b: Degree) -> Degree {
        self.normalize(Degree(a.0 - b.0))
    }

    pub fn neg(&self, a: Degree) -> Degree {
        self.normalize(Degree(-a.0))
    }

    pub fn one_degree(&self) -> Degree {
        self.one
    }

    /// Whether a nonzero component may live in this degree.
    pub fn component_ok(&self, d: Degree) -> bool {
        match self.kind {
            GroupKind::IntWindow { lo, hi } => lo <= d.0 && d.0 <= hi,
            GroupKind::Mod2p { p } => 0 <= d.0 && d.0 < 2 * p,
        }
    }

    /// Every degree in which a component may be nonzero, in order.
    pub fn all_degrees(&self) -> Vec<Degree> {
        match self.kind {
            GroupKind::IntWindow { lo, hi } => (lo..=hi).map(Degree).collect(),
            GroupKind::Mod2p { p } => (0..2 * p).map(Degree).collect(),
        }
    }

    pub fn sigma(&self, a: Degree, b: Degree) -> u8 {
        match &self.sigma {
            SigmaForm::Product { t } => ((a.0 * b.0 * (*t as i64)).rem_euclid(2)) as u8,
            SigmaForm::Table(table) => {
                let n = table.len() as i64;
                let i = a.0.rem_euclid(n) as usize;
                let j = b.0.rem_euclid(n) as usize;
                table[i][j] % 2
            }
        }
    }

    /// The sign (−1)^{σ(a,b)}.
    pub fn koszul_sign(&self, a: Degree, b: Degree) -> i8 {
        if self.sigma(a, b) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn sign_scalar<S: Scalar>(&self, a: Degree, b: Degree) -> S {
        if self.sigma(a, b) == 0 {
            S::one()
        } else {
            -S::one()
        }
    }

    /// List every violated invariant; an empty report means the datum is
    /// valid.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new("grading-datum");
        match self.kind {
            GroupKind::IntWindow { lo, hi } => {
                if !(lo <= 0 && 0 <= hi) {
                    report.violation(format!("window [{}, {}] must contain 0", lo, hi));
                }
                if self.one != Degree(1) {
                    report.violation(format!("for Z-grading the unit degree must be 1, got {}", self.one));
                }
                if let SigmaForm::Table(_) = self.sigma {
                    report.violation("Z-grading uses the product form for σ, not a table".to_string());
                }
            }
            GroupKind::Mod2p { p } => {
                if p < 1 {
                    report.violation(format!("p must be at least 1, got {}", p));
                }
                if let SigmaForm::Table(table) = &self.sigma {
                    let n = (2 * p.max(1)) as usize;
                    if table.len() != n || table.iter().any(|row| row.len() != n) {
                        report.violation(format!("σ table must be {n}×{n}"));
                    }
                }
            }
        }
        let degrees = self.all_degrees();
        for &a in &degrees {
            for &b in &degrees {
                if self.sigma(a, b) != self.sigma(b, a) {
                    report.violation(format!("σ not symmetric at ({}, {})", a, b));
                }
            }
        }
        // bilinearity on representable sums
        for &a in &degrees {
            for &b in &degrees {
                for &c in &degrees {
                    let ab = self.add(a, b);
                    if !self.component_ok(ab) {
                        continue;
                    }
                    if self.sigma(ab, c) != (self.sigma(a, c) + self.sigma(b, c)) % 2 {
                        report.violation(format!(
                            "σ not bilinear at ({} + {}, {})",
                            a, b, c
                        ));
                    }
                }
            }
        }
        if self.sigma(self.one, self.one) != 1 {
            report.violation("σ(𝟏,𝟏) ≠ 1".to_string());
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn koszul_sign_examples() {
        let z = GradingDatum::standard_z(-4, 4);
        assert_eq!(z.koszul_sign(Degree(1), Degree(1)), -1);
        for b in -4..=4 {
            assert_eq!(z.koszul_sign(Degree(0), Degree(b)), 1);
        }
        assert_eq!(z.koszul_sign(Degree(2), Degree(3)), 1);
    }

    #[test]
    fn standard_data_validate() {
        assert!(GradingDatum::standard_z(-3, 3).validate().is_ok());
        assert!(GradingDatum::standard_mod(1).validate().is_ok());
        assert!(GradingDatum::standard_mod(2).validate().is_ok());
    }

    #[test]
    fn sigma_one_one_violation_detected() {
        let bad = GradingDatum {
            kind: GroupKind::Mod2p { p: 1 },
            sigma: SigmaForm::Product { t: 0 },
            one: Degree(1),
        };
        let report = bad.validate();
        assert!(report.messages().iter().any(|m| m.contains("σ(𝟏,𝟏)")));
    }

    #[test]
    fn asymmetric_table_detected() {
        let mut table = vec![vec![0u8; 4]; 4];
        table[1][1] = 1;
        table[1][3] = 1; // asymmetric corner
        let bad = GradingDatum {
            kind: GroupKind::Mod2p { p: 2 },
            sigma: SigmaForm::Table(table),
            one: Degree(1),
        };
        let report = bad.validate();
        assert!(report.messages().iter().any(|m| m.contains("symmetric")));
    }

    proptest! {
        #[test]
        fn koszul_bilinear_and_symmetric(a in -5i64..=5, b in -5i64..=5, c in -5i64..=5) {
            let z = GradingDatum::standard_z(-10, 10);
            let (a, b, c) = (Degree(a), Degree(b), Degree(c));
            prop_assert_eq!(z.koszul_sign(a, b), z.koszul_sign(b, a));
            prop_assert_eq!(
                z.koszul_sign(z.add(a, b), c) as i32,
                (z.koszul_sign(a, c) as i32) * (z.koszul_sign(b, c) as i32)
            );
        }
    }
}
