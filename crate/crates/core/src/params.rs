//! Validated sequence parameters and their classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::surd::SurdValue;

/// Largest accepted `|A|` and `|B|`; keeps `A² + 4B` and the engine's
/// intermediate integer arithmetic inside `i64`.
pub const COEFF_LIMIT: i64 = 1 << 28;

/// Which Lucas sequence of the pair is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `u_0 = 0, u_1 = 1`.
    First,
    /// `v_0 = 2, v_1 = A`.
    Second,
}

impl Kind {
    pub const BOTH: [Kind; 2] = [Kind::First, Kind::Second];

    pub fn initial_values(self, a: i64) -> (i64, i64) {
        match self {
            Kind::First => (0, 1),
            Kind::Second => (2, a),
        }
    }

    /// Sign `ε` in `F(α) = ε F(β)` for a trinomial `F` with coefficient sum zero.
    pub fn side_sign(self) -> i32 {
        match self {
            Kind::First => 1,
            Kind::Second => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::First => "first",
            Kind::Second => "second",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "first" | "u" | "1" => Ok(Kind::First),
            "second" | "v" | "2" => Ok(Kind::Second),
            other => Err(format!("unknown kind `{other}` (expected first or second)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Classification {
    Degenerate { order: u32 },
    RealDominant,
    ComplexConjugate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Degenerate { order } => write!(f, "degenerate({order})"),
            Classification::RealDominant => f.write_str("real_dominant"),
            Classification::ComplexConjugate => f.write_str("complex_conjugate"),
        }
    }
}

/// A non-degenerate pair `(A, B)` with `D = A² + 4B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SeqParams {
    a: i64,
    b: i64,
    d: i64,
}

/// Order of `α/β` as a root of unity, if it is one.
///
/// `α/β + β/α = (A² + 2B)/(−B)`, which lies in `{−2, −1, 0, 1, 2}` exactly when the
/// ratio is a root of unity of order 2, 3, 4, 6 or 1.
pub fn degeneracy_order(a: i64, b: i64) -> Option<u32> {
    let a2 = a * a;
    if a2 == -b {
        Some(3)
    } else if a2 == -2 * b {
        Some(4)
    } else if a2 == -3 * b {
        Some(6)
    } else if a2 == -4 * b {
        Some(1)
    } else if a == 0 {
        // A² + 2B = 2B: ratio −1. Unreachable through `new`, kept for completeness.
        Some(2)
    } else {
        None
    }
}

impl SeqParams {
    pub fn new(a: i64, b: i64) -> Result<Self, ParamError> {
        if a == 0 || b == 0 {
            return Err(ParamError::ZeroCoefficient { a, b });
        }
        if a.abs() > COEFF_LIMIT || b.abs() > COEFF_LIMIT {
            return Err(ParamError::OutOfRange { limit: COEFF_LIMIT });
        }
        if let Some(order) = degeneracy_order(a, b) {
            return Err(ParamError::Degenerate { order });
        }
        Ok(SeqParams { a, b, d: a * a + 4 * b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Discriminant `A² + 4B` of the companion polynomial `X² − AX − B`.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn classify(&self) -> Classification {
        // D = 0 means A² = −4B, which the constructor rejects.
        debug_assert_ne!(self.d, 0);
        if self.d > 0 {
            Classification::RealDominant
        } else {
            Classification::ComplexConjugate
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.d > 0
    }

    /// Roots of `X² − AX − B`: `α = (A + √D)/2`, `β = (A − √D)/2`.
    pub fn alpha_beta(&self) -> (SurdValue, SurdValue) {
        let alpha = SurdValue::new(self.a.into(), 1.into(), self.d)
            .expect("A ≡ D (mod 2) always holds");
        let beta = alpha.conj();
        (alpha, beta)
    }

    /// The roots ordered as `(dominant, other)` by absolute value. For complex pairs
    /// the order is `(α, β)`.
    pub fn dominant_roots(&self) -> (SurdValue, SurdValue) {
        let (alpha, beta) = self.alpha_beta();
        if SurdValue::cmp_abs(&alpha, &beta) == std::cmp::Ordering::Less {
            (beta, alpha)
        } else {
            (alpha, beta)
        }
    }
}

impl fmt::Display for SeqParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Constructor and classifier in one call.
pub fn new_params(a: i64, b: i64) -> Result<SeqParams, ParamError> {
    SeqParams::new(a, b)
}

pub fn classify(params: &SeqParams) -> Classification {
    params.classify()
}

/// Like [`SeqParams::classify`] but total over all non-zero pairs.
pub fn classify_pair(a: i64, b: i64) -> Result<Classification, ParamError> {
    match SeqParams::new(a, b) {
        Ok(p) => Ok(p.classify()),
        Err(ParamError::Degenerate { order }) => Ok(Classification::Degenerate { order }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_pair() {
        let p = SeqParams::new(1, 1).unwrap();
        assert_eq!(p.d(), 5);
        assert_eq!(p.classify(), Classification::RealDominant);
    }

    #[test]
    fn rejections() {
        assert_eq!(SeqParams::new(1, -1), Err(ParamError::Degenerate { order: 3 }));
        assert_eq!(SeqParams::new(2, -2), Err(ParamError::Degenerate { order: 4 }));
        assert_eq!(SeqParams::new(3, -3), Err(ParamError::Degenerate { order: 6 }));
        assert_eq!(SeqParams::new(2, -1), Err(ParamError::Degenerate { order: 1 }));
        assert!(matches!(SeqParams::new(0, 5), Err(ParamError::ZeroCoefficient { .. })));
        assert!(matches!(SeqParams::new(3, 0), Err(ParamError::ZeroCoefficient { .. })));
    }

    #[test]
    fn complex_pair() {
        let p = SeqParams::new(-1, -2).unwrap();
        assert_eq!(p.classify(), Classification::ComplexConjugate);
        assert_eq!(p.d(), -7);
    }

    #[test]
    fn roots_sum_and_product() {
        for (a, b) in [(1, 1), (2, 1), (-1, -2), (6, -2), (-3, -1)] {
            let p = SeqParams::new(a, b).unwrap();
            let (al, be) = p.alpha_beta();
            assert_eq!(&al + &be, SurdValue::from_int(a, p.d()));
            assert_eq!(&al * &be, SurdValue::from_int(-b, p.d()));
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("first".parse::<Kind>(), Ok(Kind::First));
        assert_eq!("Second".parse::<Kind>(), Ok(Kind::Second));
        assert!("third".parse::<Kind>().is_err());
    }
}
