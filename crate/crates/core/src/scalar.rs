//! Exact scalar arithmetic: prime fields and arbitrary-precision rationals.
//!
//! Everything downstream is generic over [`Scalar`]; no floating point
//! anywhere.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact field element. Implementations must satisfy the field axioms
/// exactly; `inv` returns `None` only for zero.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Context needed to parse a scalar from text (the modulus for `Fp`).
    type Ctx: Clone + Send + Sync;

    fn inv(&self) -> Option<Self>;

    fn from_integer(n: i64) -> Self;

    /// Parse a token like `-3` or `2/5` (rationals only) in the given context.
    fn parse_token(tok: &str, ctx: &Self::Ctx) -> Result<Self, String>;

    /// Canonical text form, stable across runs.
    fn render(&self) -> String {
        format!("{}", self)
    }
}

/// Prime field element with a runtime modulus.
///
/// A modulus of `0` marks a "bare integer" produced by `zero`/`one`/
/// `from_integer`; it unifies with any concrete modulus on first contact.
/// Values with a concrete modulus are kept reduced to `0..p`.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: i64,
    modulus: i64,
}

impl Fp {
    pub fn new(value: i64, modulus: i64) -> Self {
        assert!(modulus > 1, "modulus must be at least 2");
        Fp {
            value: value.rem_euclid(modulus),
            modulus,
        }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    fn join(a: i64, b: i64) -> i64 {
        match (a, b) {
            (0, m) => m,
            (m, 0) => m,
            (m, n) => {
                debug_assert_eq!(m, n, "mixed moduli {} and {}", m, n);
                m
            }
        }
    }

    fn reduced(value: i64, modulus: i64) -> Fp {
        if modulus == 0 {
            Fp { value, modulus: 0 }
        } else {
            Fp {
                value: value.rem_euclid(modulus),
                modulus,
            }
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let m = Self::join(self.modulus, other.modulus);
        if m == 0 {
            self.value == other.value
        } else {
            self.value.rem_euclid(m) == other.value.rem_euclid(m)
        }
    }
}

impl Eq for Fp {}

impl Display for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = Self::join(self.modulus, rhs.modulus);
        Self::reduced(self.value + rhs.value, m)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = Self::join(self.modulus, rhs.modulus);
        Self::reduced(self.value - rhs.value, m)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = Self::join(self.modulus, rhs.modulus);
        // values are reduced below 2^31, so the product fits in i64
        Self::reduced(self.value * rhs.value, m)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Self::reduced(-self.value, self.modulus)
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in Fp")
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
    fn is_one(&self) -> bool {
        if self.modulus == 0 {
            self.value == 1
        } else {
            self.value.rem_euclid(self.modulus) == 1
        }
    }
}

/// Extended Euclid; returns x with a*x = 1 mod m.
fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

impl Scalar for Fp {
    type Ctx = i64;

    fn inv(&self) -> Option<Self> {
        if self.modulus == 0 {
            match self.value {
                1 => Some(*self),
                -1 => Some(*self),
                0 => None,
                v => panic!("cannot invert bare integer {} without a modulus", v),
            }
        } else {
            if self.value == 0 {
                return None;
            }
            mod_inverse(self.value, self.modulus).map(|v| Fp {
                value: v,
                modulus: self.modulus,
            })
        }
    }

    fn from_integer(n: i64) -> Self {
        Fp {
            value: n,
            modulus: 0,
        }
    }

    fn parse_token(tok: &str, ctx: &i64) -> Result<Self, String> {
        let v: i64 = tok
            .parse()
            .map_err(|_| format!("invalid prime-field scalar `{}`", tok))?;
        Ok(Fp::new(v, *ctx))
    }

    fn render(&self) -> String {
        format!("{}", self.value)
    }
}

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

impl Scalar for Rat {
    type Ctx = ();

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat::one() / self.clone())
        }
    }

    fn from_integer(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn parse_token(tok: &str, _ctx: &()) -> Result<Self, String> {
        if let Some((num, den)) = tok.split_once('/') {
            let n: BigInt = num
                .parse()
                .map_err(|_| format!("invalid rational `{}`", tok))?;
            let d: BigInt = den
                .parse()
                .map_err(|_| format!("invalid rational `{}`", tok))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{}`", tok));
            }
            Ok(Rat::new(n, d))
        } else {
            let n: BigInt = tok
                .parse()
                .map_err(|_| format!("invalid rational `{}`", tok))?;
            Ok(Rat::from_integer(n))
        }
    }
}
