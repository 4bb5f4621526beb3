//! Exact arithmetic on algebraic integers `(p + q√D)/2` of a quadratic order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// The value `(p + q√D)/2`.
///
/// Invariant: `p ≡ q·D (mod 2)`, which (with `D ≡ 0, 1 mod 4`) keeps the set closed
/// under `+`, `−`, `×` and conjugation. All values in one computation must share `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdValue {
    p: BigInt,
    q: BigInt,
    d: i64,
}

fn sign_of(x: &BigInt) -> Ordering {
    x.cmp(&BigInt::zero())
}

impl SurdValue {
    /// Returns `None` when the parity invariant fails.
    pub fn new(p: BigInt, q: BigInt, d: i64) -> Option<Self> {
        let rhs = &q * d;
        if (&p - rhs).is_even() {
            Some(SurdValue { p, q, d })
        } else {
            None
        }
    }

    pub fn from_int(n: impl Into<BigInt>, d: i64) -> Self {
        SurdValue { p: n.into() * 2, q: BigInt::zero(), d }
    }

    pub fn zero(d: i64) -> Self {
        Self::from_int(0, d)
    }

    pub fn one(d: i64) -> Self {
        Self::from_int(1, d)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn conj(&self) -> Self {
        SurdValue { p: self.p.clone(), q: -&self.q, d: self.d }
    }

    /// `(p² − q²D)/4`, always an integer under the parity invariant.
    pub fn norm(&self) -> BigInt {
        let n = &self.p * &self.p - &self.q * &self.q * self.d;
        debug_assert!((&n % 4u32).is_zero());
        n / 4
    }

    /// Integer value when `q = 0` (or when `√D` is rational and the value is an integer).
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.q.is_zero() {
            return Some(&self.p / 2);
        }
        let root = isqrt_exact(self.d)?;
        let twice = &self.p + &self.q * root;
        if twice.is_even() {
            Some(twice / 2)
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = SurdValue::one(self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        SurdValue { p: &self.p * &k, q: &self.q * &k, d: self.d }
    }

    /// Sign of a real value (`D > 0`), decided with integer arithmetic only.
    ///
    /// Panics for `D < 0` unless the value is rational.
    pub fn signum_real(&self) -> Ordering {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == Ordering::Equal || self.d == 0 {
            return sp;
        }
        assert!(self.d > 0, "sign of a non-real surd requested");
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * self.d;
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// `|x|` for a real value.
    pub fn abs_real(&self) -> Self {
        if self.signum_real() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison of `|x|` with `|y|`.
    ///
    /// For `D > 0` this is the sign of `(x − y)(x + y)`; for `D < 0` the squared
    /// moduli are the norms.
    pub fn cmp_abs(x: &SurdValue, y: &SurdValue) -> Ordering {
        assert_eq!(x.d, y.d, "surds from different fields");
        if x.d > 0 {
            let s1 = (x - y).signum_real();
            let s2 = (x + y).signum_real();
            match (s1, s2) {
                (Ordering::Equal, _) | (_, Ordering::Equal) => Ordering::Equal,
                (a, b) if a == b => Ordering::Greater,
                _ => Ordering::Less,
            }
        } else {
            x.norm().cmp(&y.norm())
        }
    }

    /// Exact comparison of two real values.
    pub fn cmp_real(x: &SurdValue, y: &SurdValue) -> Ordering {
        (x - y).signum_real()
    }

    /// Approximate value (real part, imaginary part), for diagnostics and tests only.
    pub fn to_f64_parts(&self) -> (f64, f64) {
        let p = self.p.to_f64().unwrap_or(f64::NAN) / 2.0;
        let q = self.q.to_f64().unwrap_or(f64::NAN) / 2.0;
        if self.d >= 0 {
            (p + q * (self.d as f64).sqrt(), 0.0)
        } else {
            (p, q * ((-self.d) as f64).sqrt())
        }
    }

    fn check_field(&self, other: &SurdValue) {
        assert_eq!(self.d, other.d, "surds from different fields");
    }
}

/// `√n` when `n` is a perfect square.
pub fn isqrt_exact(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(2)..=r + 2).find(|&c| c >= 0 && c * c == n)
}

/// `D = s² r` with `r` squarefree (sign kept on `r`).
fn split_square(d: i64) -> (i64, i64) {
    let mut s = 1i64;
    let mut r = d;
    let mut f = 2i64;
    while f * f <= r.abs() {
        while r % (f * f) == 0 {
            r /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, r)
}

fn fmt_half(n: &BigInt) -> String {
    if n.is_even() {
        (n / 2u32).to_string()
    } else {
        format!("{n}/2")
    }
}

impl fmt::Display for SurdValue {
    /// Renders in reduced radical form, e.g. `(8 + 3√8)/2` prints as `4+3√2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, r) = split_square(self.d);
        if r == 1 || self.q.is_zero() {
            let twice = &self.p + &self.q * s;
            return f.write_str(&fmt_half(&twice));
        }
        let coeff = &self.q * s;
        let radical = if r == -1 { "i".to_string() } else { format!("√{r}") };
        let mut out = String::new();
        if !self.p.is_zero() {
            out.push_str(&fmt_half(&self.p));
            out.push(if coeff.is_negative() { '-' } else { '+' });
        } else if coeff.is_negative() {
            out.push('-');
        }
        let mag = coeff.abs();
        if mag != BigInt::from(2) {
            let c = fmt_half(&mag);
            if c.contains('/') {
                let (num, _) = c.split_once('/').unwrap();
                if num != "1" {
                    out.push_str(num);
                }
                out.push_str(&radical);
                out.push_str("/2");
                return f.write_str(&out);
            }
            out.push_str(&c);
        }
        out.push_str(&radical);
        f.write_str(&out)
    }
}

impl Add for &SurdValue {
    type Output = SurdValue;
    fn add(self, rhs: &SurdValue) -> SurdValue {
        self.check_field(rhs);
        SurdValue { p: &self.p + &rhs.p, q: &self.q + &rhs.q, d: self.d }
    }
}

impl Sub for &SurdValue {
    type Output = SurdValue;
    fn sub(self, rhs: &SurdValue) -> SurdValue {
        self.check_field(rhs);
        SurdValue { p: &self.p - &rhs.p, q: &self.q - &rhs.q, d: self.d }
    }
}

impl Mul for &SurdValue {
    type Output = SurdValue;
    fn mul(self, rhs: &SurdValue) -> SurdValue {
        self.check_field(rhs);
        let p = &self.p * &rhs.p + &self.q * &rhs.q * self.d;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        debug_assert!(p.is_even() && q.is_even());
        SurdValue { p: p / 2, q: q / 2, d: self.d }
    }
}

impl Neg for &SurdValue {
    type Output = SurdValue;
    fn neg(self) -> SurdValue {
        SurdValue { p: -&self.p, q: -&self.q, d: self.d }
    }
}

impl Neg for SurdValue {
    type Output = SurdValue;
    fn neg(self) -> SurdValue {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SurdValue {
            type Output = SurdValue;
            fn $m(self, rhs: SurdValue) -> SurdValue {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&SurdValue> for SurdValue {
            type Output = SurdValue;
            fn $m(self, rhs: &SurdValue) -> SurdValue {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl SurdValue {
    pub fn is_one(&self) -> bool {
        self.q.is_zero() && self.p == BigInt::from(2)
    }

    pub fn is_minus_one(&self) -> bool {
        self.q.is_zero() && self.p == BigInt::from(-2)
    }
}
