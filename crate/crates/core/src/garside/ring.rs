//! Exact coefficient rings ℤ[x]/(x² − p·x − q) for the reflection
//! representation: ℤ itself, ℤ[√2] (x² = 2) and ℤ[φ] (x² = x + 1).

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct RingElem {
    pub a: i32,
    pub b: i32,
}

impl RingElem {
    pub const ZERO: RingElem = RingElem { a: 0, b: 0 };
    pub const ONE: RingElem = RingElem { a: 1, b: 0 };

    pub fn int(a: i32) -> RingElem {
        RingElem { a, b: 0 }
    }
}

/// Quadratic integer ring with generator x satisfying x² = p·x + q.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuadRing {
    pub p: i32,
    pub q: i32,
}

impl QuadRing {
    pub const INTEGERS: QuadRing = QuadRing { p: 0, q: 0 };
    pub const SQRT2: QuadRing = QuadRing { p: 0, q: 2 };
    pub const GOLDEN: QuadRing = QuadRing { p: 1, q: 1 };

    #[inline]
    pub fn add(self, x: RingElem, y: RingElem) -> RingElem {
        RingElem {
            a: x.a + y.a,
            b: x.b + y.b,
        }
    }

    #[inline]
    pub fn mul(self, x: RingElem, y: RingElem) -> RingElem {
        let bd = x.b * y.b;
        RingElem {
            a: x.a * y.a + bd * self.q,
            b: x.a * y.b + x.b * y.a + bd * self.p,
        }
    }

    #[inline]
    pub fn neg(self, x: RingElem) -> RingElem {
        RingElem { a: -x.a, b: -x.b }
    }

    /// 2·cos(π/m) as a ring element, for the labels this ring supports.
    pub fn two_cos_pi_over(self, m: u32) -> Result<RingElem> {
        match (m, self) {
            (1, _) => Ok(RingElem::int(-2)),
            (2, _) => Ok(RingElem::ZERO),
            (3, _) => Ok(RingElem::ONE),
            (4, r) if r == QuadRing::SQRT2 => Ok(RingElem { a: 0, b: 1 }),
            (5, r) if r == QuadRing::GOLDEN => Ok(RingElem { a: 0, b: 1 }),
            _ => Err(Error::InvalidParameter(format!(
                "label {m} is not representable over {self:?}"
            ))),
        }
    }

    /// The smallest supported ring containing every 2cos(π/m) of the matrix.
    pub fn for_labels(labels: impl IntoIterator<Item = u32>) -> Result<QuadRing> {
        let mut ring = QuadRing::INTEGERS;
        for m in labels {
            let need = match m {
                1..=3 => QuadRing::INTEGERS,
                4 => QuadRing::SQRT2,
                5 => QuadRing::GOLDEN,
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "label {m} needs the dihedral engine"
                    )))
                }
            };
            if need != QuadRing::INTEGERS {
                if ring != QuadRing::INTEGERS && ring != need {
                    return Err(Error::InvalidParameter(
                        "labels 4 and 5 together are not spherical".into(),
                    ));
                }
                ring = need;
            }
        }
        Ok(ring)
    }
}
