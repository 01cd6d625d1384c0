//! Minimal complex arithmetic on top of `rug::Float`.
//!
//! The MPC library is not linked, so the two extended-precision series
//! engines carry complex values as explicit re/im pairs. Only the
//! handful of operations the series drivers need is provided.

use num_complex::Complex64;
use rug::Float;

#[derive(Debug, Clone)]
pub(crate) struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl CFloat {
    pub fn zero(prec: u32) -> Self {
        CFloat {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn from_c64(prec: u32, z: Complex64) -> Self {
        CFloat {
            re: Float::with_val(prec, z.re),
            im: Float::with_val(prec, z.im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// self * rhs (complex multiply).
    pub fn mul(&self, rhs: &CFloat) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &rhs.re) - Float::with_val(p, &self.im * &rhs.im);
        let im = Float::with_val(p, &self.re * &rhs.im) + Float::with_val(p, &self.im * &rhs.re);
        CFloat { re, im }
    }

    /// self * r for real r.
    pub fn scale(&self, r: &Float) -> Self {
        let p = self.prec();
        CFloat {
            re: Float::with_val(p, &self.re * r),
            im: Float::with_val(p, &self.im * r),
        }
    }

    pub fn add_assign(&mut self, rhs: &CFloat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }

    /// |self| as a Float (exact hypot at working precision).
    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().hypot(&self.im))
    }

    /// Round to double precision. The caller decides how to treat
    /// out-of-range magnitudes; `to_f64` saturates to ±∞ like MPFR.
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_matches_double_precision() {
        let a = CFloat::from_c64(128, Complex64::new(1.25, -0.5));
        let b = CFloat::from_c64(128, Complex64::new(-2.0, 3.0));
        let c = a.mul(&b).to_c64();
        let expect = Complex64::new(1.25, -0.5) * Complex64::new(-2.0, 3.0);
        assert!((c - expect).norm() < 1e-14);
    }

    #[test]
    fn abs_is_hypot() {
        let a = CFloat::from_c64(96, Complex64::new(3.0, 4.0));
        assert!((a.abs().to_f64() - 5.0).abs() < 1e-15);
    }
}
