//! Software IEEE-754 binary16 and binary128 storage types.
//!
//! Both keep their exact bit pattern. Conversions to `f64` are provided for
//! display and arithmetic; conversions back are exact (quad) or strict
//! round-to-nearest-even that refuses to overflow (half).

use core::fmt;

/// IEEE-754 binary16, stored as raw bits.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct F16(pub u16);

/// IEEE-754 binary128, stored as raw bits.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct F128(pub u128);

/// Largest finite binary16 value.
pub const F16_MAX: f64 = 65504.0;

impl F16 {
    pub const fn from_bits(bits: u16) -> Self {
        F16(bits)
    }

    pub const fn to_bits(self) -> u16 {
        self.0
    }

    pub fn is_nan(self) -> bool {
        self.0 & 0x7c00 == 0x7c00 && self.0 & 0x03ff != 0
    }

    /// Exact widening conversion. NaN payloads are carried in the top
    /// mantissa bits.
    pub fn to_f64(self) -> f64 {
        let sign = ((self.0 >> 15) as u64) << 63;
        let exp = ((self.0 >> 10) & 0x1f) as u64;
        let mant = (self.0 & 0x3ff) as u64;
        let bits = match exp {
            0 if mant == 0 => sign,
            0 => {
                // Subnormal: mant * 2^-24, renormalize.
                let shift = mant.leading_zeros() - 53; // bring the leading 1 to bit 10
                let m = (mant << shift) & 0x3ff;
                let e = 1023 - 14 - shift as u64;
                sign | (e << 52) | (m << 42)
            }
            0x1f => sign | (0x7ff << 52) | (mant << 42),
            _ => sign | ((exp + 1023 - 15) << 52) | (mant << 42),
        };
        f64::from_bits(bits)
    }

    pub fn to_f32(self) -> f32 {
        // Every binary16 value is exactly representable in binary32.
        self.to_f64() as f32
    }

    /// Round-to-nearest-even narrowing. Returns `None` when a finite input
    /// would round to infinity. Infinities and NaN pass through (NaN keeps
    /// the top 10 bits of its payload, forced quiet if they are all zero).
    pub fn from_f64_strict(value: f64) -> Option<Self> {
        let bits = value.to_bits();
        let sign = ((bits >> 63) as u16) << 15;
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let mant = bits & ((1u64 << 52) - 1);

        if exp == 0x7ff {
            if mant == 0 {
                return Some(F16(sign | 0x7c00));
            }
            let payload = (mant >> 42) as u16;
            let payload = if payload == 0 { 0x200 } else { payload };
            return Some(F16(sign | 0x7c00 | payload));
        }
        if exp == 0 {
            // Zero or f64 subnormal, both far below half resolution.
            return Some(F16(sign));
        }

        let unbiased = exp - 1023;
        if unbiased > 15 {
            return None;
        }
        if unbiased >= -14 {
            let mut half_exp = (unbiased + 15) as u64;
            let mut m = round_shift(mant, 42);
            if m == 1 << 10 {
                m = 0;
                half_exp += 1;
            }
            if half_exp >= 0x1f {
                return None;
            }
            return Some(F16(sign | ((half_exp as u16) << 10) | m as u16));
        }

        // Subnormal result: count units of 2^-24.
        let sig = (1u64 << 52) | mant;
        let shift = (28 - unbiased) as u32; // >= 43
        let count = if shift > 54 { 0 } else { round_shift(sig, shift) };
        // count may reach 0x400, which is exactly the smallest normal.
        Some(F16(sign | count as u16))
    }

    pub fn from_f32_strict(value: f32) -> Option<Self> {
        Self::from_f64_strict(value as f64)
    }
}

/// `value >> shift` rounded to nearest, ties to even.
fn round_shift(value: u64, shift: u32) -> u64 {
    let kept = value >> shift;
    let rem = value & ((1u64 << shift) - 1);
    let half = 1u64 << (shift - 1);
    if rem > half || (rem == half && kept & 1 == 1) {
        kept + 1
    } else {
        kept
    }
}

impl fmt::Debug for F16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F16({:#06x} = {})", self.0, self.to_f64())
    }
}

impl F128 {
    pub const fn from_bits(bits: u128) -> Self {
        F128(bits)
    }

    pub const fn to_bits(self) -> u128 {
        self.0
    }

    pub fn is_nan(self) -> bool {
        let exp = (self.0 >> 112) & 0x7fff;
        exp == 0x7fff && self.0 & ((1u128 << 112) - 1) != 0
    }

    /// Exact widening conversion.
    pub fn from_f64(value: f64) -> Self {
        let bits = value.to_bits();
        let sign = ((bits >> 63) as u128) << 127;
        let exp = ((bits >> 52) & 0x7ff) as u128;
        let mant = (bits & ((1u64 << 52) - 1)) as u128;
        let out = match exp {
            0 if mant == 0 => sign,
            0 => {
                // f64 subnormal: mant * 2^-1074, normal in binary128.
                let lz = mant.leading_zeros() - (128 - 53);
                let shift = lz; // leading 1 moves to bit 52
                let m = (mant << shift) & ((1u128 << 52) - 1);
                let e = 16383 - 1022 - shift as u128;
                sign | (e << 112) | (m << 60)
            }
            0x7ff => sign | (0x7fffu128 << 112) | (mant << 60),
            _ => sign | ((exp + 16383 - 1023) << 112) | (mant << 60),
        };
        F128(out)
    }

    /// Round-to-nearest-even narrowing to `f64`. Overflows to infinity and
    /// underflows gradually through the f64 subnormals. Display only: the
    /// stored bits remain the exact value.
    pub fn to_f64(self) -> f64 {
        let sign = ((self.0 >> 127) as u64) << 63;
        let exp = ((self.0 >> 112) & 0x7fff) as i64;
        let mant = self.0 & ((1u128 << 112) - 1);

        if exp == 0x7fff {
            if mant == 0 {
                return f64::from_bits(sign | (0x7ff << 52));
            }
            let payload = (mant >> 60) as u64;
            let payload = if payload == 0 { 1 << 51 } else { payload };
            return f64::from_bits(sign | (0x7ff << 52) | payload);
        }
        if exp == 0 {
            // binary128 subnormals are below 2^-16382.
            return f64::from_bits(sign);
        }

        let unbiased = exp - 16383;
        if unbiased > 1023 {
            return f64::from_bits(sign | (0x7ff << 52));
        }
        if unbiased >= -1022 {
            let mut e = (unbiased + 1023) as u64;
            let mut m = round_shift_u128(mant, 60) as u64;
            if m == 1 << 52 {
                m = 0;
                e += 1;
            }
            if e >= 0x7ff {
                return f64::from_bits(sign | (0x7ff << 52));
            }
            return f64::from_bits(sign | (e << 52) | m);
        }
        // f64 subnormal result: count units of 2^-1074, where the value is
        // sig * 2^(unbiased - 112).
        let sig = (1u128 << 112) | mant;
        let shift = (-962 - unbiased) as u32; // > 60
        let count = if shift > 114 { 0 } else { round_shift_u128(sig, shift) as u64 };
        f64::from_bits(sign | count)
    }
}

fn round_shift_u128(value: u128, shift: u32) -> u128 {
    let kept = value >> shift;
    let rem = value & ((1u128 << shift) - 1);
    let half = 1u128 << (shift - 1);
    if rem > half || (rem == half && kept & 1 == 1) {
        kept + 1
    } else {
        kept
    }
}

impl fmt::Debug for F128 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F128({:#034x} ~ {})", self.0, self.to_f64())
    }
}
