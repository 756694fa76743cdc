//! Double-double arithmetic: unevaluated sums `hi + lo` of two `f64`s giving
//! roughly 106 bits of mantissa. Used for the logarithmic dimension
//! accumulators, where ~10^6 additions of step-ratio logarithms must leave the
//! normalized dimension accurate to well below 1e-9.
//!
//! The algorithms are the classical error-free transformations (Dekker,
//! Knuth) plus the usual Newton/Taylor schemes for `ln` and `exp`.

use num_bigint::BigUint;

/// `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
/// ln 2 to double-double precision.
pub const LN2: Dd = Dd {
    hi: 0.693_147_180_559_945_3,
    lo: 2.319_046_813_846_299_6e-17,
};

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

// Dekker split; no fma dependence.
#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion; u64 values above 2^53 keep their low bits in `lo`.
    #[inline]
    pub fn from_u64(v: u64) -> Self {
        let hi = v as f64;
        let lo = (v as i128 - hi as i128) as f64;
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Self {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }

    #[inline]
    pub fn add_f64(self, other: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, other);
        let (s1, s2) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi: s1, lo: s2 }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Self {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Self {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, other);
        let (s, e) = quick_two_sum(p1, p2 + self.lo * other);
        Dd { hi: s, lo: e }
    }

    /// Exact when `p` is a power of two.
    #[inline]
    pub fn mul_pow2(self, p: f64) -> Self {
        Dd { hi: self.hi * p, lo: self.lo * p }
    }

    pub fn div(self, other: Dd) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, other: f64) -> Self {
        self.div(Dd::from_f64(other))
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return ZERO;
        }
        debug_assert!(self.hi > 0.0);
        // One Newton correction on top of the f64 square root.
        let x = 1.0 / self.hi.sqrt();
        let ax = Dd::from_f64(self.hi * x);
        let diff = self.sub(ax.mul(ax));
        ax.add(diff.mul_f64(x * 0.5))
    }

    /// exp for moderate arguments (|x| <~ 700).
    pub fn exp(self) -> Self {
        let k = (self.hi / LN2.hi).round();
        let r = self.sub(LN2.mul_f64(k));
        // r in [-ln2/2, ln2/2]; scale down by 2^9 so the Taylor tail dies fast.
        let r = r.mul_pow2(1.0 / 512.0);
        let mut term = r;
        let mut sum = r;
        for i in 2..=12u32 {
            term = term.mul(r).div_f64(f64::from(i));
            sum = sum.add(term);
        }
        // Undo the scaling: (1+s)^2 - 1 = 2s + s^2, nine times.
        for _ in 0..9 {
            sum = sum.mul_pow2(2.0).add(sum.mul(sum));
        }
        sum.add_f64(1.0).mul_pow2(2f64.powi(k as i32))
    }

    /// Natural log; requires a positive, normal argument.
    pub fn ln(self) -> Self {
        assert!(self.hi > 0.0 && self.hi.is_finite(), "ln of non-positive value");
        // Pull the binary exponent out so the Newton step runs near 1.
        let e2 = ((self.hi.to_bits() >> 52) & 0x7ff) as i64 - 1023;
        let m = self.mul_pow2(2f64.powi(-e2 as i32));
        let y0 = m.hi.ln();
        // One Newton step for exp(y) = m doubles the f64 seed's precision.
        let y = Dd::from_f64(y0).add(m.mul(Dd::from_f64(-y0).exp()).add_f64(-1.0));
        y.add(LN2.mul_f64(e2 as f64))
    }
}

/// ln of a u64 to double-double precision.
#[inline]
pub fn ln_u64(v: u64) -> Dd {
    debug_assert!(v > 0);
    Dd::from_u64(v).ln()
}

/// ln of an arbitrary-precision integer: keep the top 106 bits exactly and
/// account for the shifted-away magnitude via `shift * ln 2`.
pub fn ln_biguint(x: &BigUint) -> Dd {
    let bits = x.bits();
    assert!(bits > 0, "ln of zero");
    if bits <= 64 {
        let mut v = 0u64;
        for (i, d) in x.iter_u64_digits().enumerate() {
            debug_assert!(i == 0);
            v = d;
        }
        return ln_u64(v);
    }
    let shift = bits.saturating_sub(106);
    let top: BigUint = x >> shift;
    let mut t: u128 = 0;
    for (i, d) in top.iter_u64_digits().enumerate() {
        t |= u128::from(d) << (64 * i);
    }
    let hi = ((t >> 53) as f64) * 9_007_199_254_740_992.0; // 2^53
    let lo = (t & ((1u128 << 53) - 1)) as f64;
    let (s, e) = two_sum(hi, lo);
    Dd { hi: s, lo: e }.ln().add(LN2.mul_f64(shift as f64))
}
