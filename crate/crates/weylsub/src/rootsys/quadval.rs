//! Exact values of the form `q·√r` with `q` a nonnegative rational and `r` a
//! squarefree positive integer. These carry alcove volumes, where the square
//! root of a lattice determinant is unavoidable but the square of the value is
//! always rational.

use crate::linalg::Rat;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadVal {
    q: Rat,
    r: BigInt,
}

impl QuadVal {
    /// Build `q·√r`, normalising `r` to its squarefree part.
    pub fn new(q: Rat, r: BigInt) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::invalid("QuadVal requires q >= 0"));
        }
        if !r.is_positive() {
            return Err(Error::invalid("QuadVal requires r >= 1"));
        }
        if q.is_zero() {
            return Ok(QuadVal {
                q,
                r: BigInt::one(),
            });
        }
        let (square, free) = split_square(&r);
        Ok(QuadVal {
            q: q * Rat::from(square),
            r: free,
        })
    }

    pub fn zero() -> Self {
        QuadVal {
            q: Rat::zero(),
            r: BigInt::one(),
        }
    }

    pub fn from_rational(q: Rat) -> Result<Self> {
        Self::new(q, BigInt::one())
    }

    /// Exact square root of a nonnegative rational: `√(a/b) = √(ab) / b`.
    pub fn sqrt_of_rational(x: &Rat) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::invalid("cannot take sqrt of a negative rational"));
        }
        if x.is_zero() {
            return Ok(QuadVal::zero());
        }
        let inside = x.numer() * x.denom();
        let (square, free) = split_square(&inside);
        Ok(QuadVal {
            q: Rat::new(square, x.denom().clone()),
            r: free,
        })
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// The rational square `q²·r` of the value.
    pub fn square(&self) -> Rat {
        &self.q * &self.q * Rat::from(self.r.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn mul(&self, other: &QuadVal) -> QuadVal {
        if self.is_zero() || other.is_zero() {
            return QuadVal::zero();
        }
        let (square, free) = split_square(&(&self.r * &other.r));
        QuadVal {
            q: &self.q * &other.q * Rat::from(square),
            r: free,
        }
    }

    pub fn div(&self, other: &QuadVal) -> Result<QuadVal> {
        if other.is_zero() {
            return Err(Error::invalid("division of QuadVal by zero"));
        }
        if self.is_zero() {
            return Ok(QuadVal::zero());
        }
        // q1√r1 / (q2√r2) = q1/(q2 r2) · √(r1 r2)
        let (square, free) = split_square(&(&self.r * &other.r));
        Ok(QuadVal {
            q: &self.q / (&other.q * Rat::from(other.r.clone())) * Rat::from(square),
            r: free,
        })
    }

    /// The value as a plain rational, when `r = 1`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.r.is_one() {
            Some(self.q.clone())
        } else {
            None
        }
    }
}

impl fmt::Display for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*sqrt({})", crate::jsonio::rat_string(&self.q), self.r)
    }
}

/// Split `n ≥ 1` as `s²·free` with `free` squarefree; returns `(s, free)`.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest = &rest / &p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += 1;
    }
    // rest is now 1 or a prime.
    if !rest.is_one() {
        free *= rest;
    }
    (s, free)
}
