use serde::Serialize;

use super::FuzzyError;
use crate::scalar::Scalar;

/// Triangular membership function with feet `a`, `c` and peak `b`.
///
/// `a == b` (or `b == c`) gives a shoulder: full membership on the flat side
/// of the peak instead of the undefined 0/0 slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangularMF<F> {
    a: F,
    b: F,
    c: F,
}

impl<F: Scalar> TriangularMF<F> {
    pub fn new(a: F, b: F, c: F) -> Result<Self, FuzzyError> {
        let finite = a.is_finite() && b.is_finite() && c.is_finite();
        if !finite || a > b || b > c || a == c {
            return Err(FuzzyError::InvalidMembership {
                a: a.to_f64().unwrap_or(f64::NAN),
                b: b.to_f64().unwrap_or(f64::NAN),
                c: c.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(TriangularMF { a, b, c })
    }

    pub fn a(&self) -> F {
        self.a
    }

    pub fn b(&self) -> F {
        self.b
    }

    pub fn c(&self) -> F {
        self.c
    }

    /// Membership degree of `x`, in `[0, 1]`.
    pub fn eval(&self, x: F) -> F {
        let TriangularMF { a, b, c } = *self;
        if x < a || x > c || x.is_nan() {
            F::zero()
        } else if x <= b {
            if a == b {
                F::one()
            } else {
                (x - a) / (b - a)
            }
        } else if b == c {
            F::one()
        } else {
            (c - x) / (c - b)
        }
    }

    /// Bounds of the set where membership is positive, with closedness flags
    /// `(start, start_closed, end, end_closed)`.
    pub(crate) fn positive_support(&self) -> (F, bool, F, bool) {
        (self.a, self.a == self.b, self.c, self.b == self.c)
    }
}
