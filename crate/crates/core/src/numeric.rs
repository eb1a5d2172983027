//! Small numerical building blocks: compensated summation and double-double
//! phase reduction.

use std::f64::consts::TAU;

/// Neumaier (improved Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator of floats.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

// plain methods rather than operator traits keep the arithmetic explicit
#[allow(clippy::should_implement_trait)]
impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }

    pub fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        self.mul(Self::from_f64(b))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// 2π to roughly 32 significant digits.
const TAU_DD: DoubleDouble = DoubleDouble::new(std::f64::consts::TAU, 2.449_293_598_294_706_4e-16);

/// Reduces `x` modulo 2π into `[-π, π)`, carrying the double-double error
/// through the subtraction of the integer multiple.
pub fn reduce_mod_tau(x: DoubleDouble) -> f64 {
    let k = (x.hi / TAU).round();
    let r = x.sub(TAU_DD.mul_f64(k));
    let mut v = r.to_f64();
    // one correction step; `k` may be off by one near the boundary
    if v >= std::f64::consts::PI {
        v -= TAU;
    } else if v < -std::f64::consts::PI {
        v += TAU;
    }
    v
}

/// Phase `(a + k·b)·c mod 2π` for doubles `a`, `b`, `c` and integer `k`,
/// evaluated in double-double so that the result is accurate to a few ulps
/// of π even when the unreduced argument is of size 10^12.
pub fn grid_phase(a: f64, b: f64, k: u64, c: f64) -> f64 {
    let kb = DoubleDouble::from_f64(b).mul_f64(k as f64);
    let t = DoubleDouble::from_f64(a).add(kb);
    reduce_mod_tau(t.mul_f64(c))
}
