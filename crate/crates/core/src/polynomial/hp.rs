//! Configurable-precision real and complex scalars backed by `astro-float`.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Mantissa bits used for high-precision arithmetic. Never below 64.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 64;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::PrecisionTooLow(bits));
        }
        Ok(Precision(bits))
    }

    /// Default working precision for products of `degree` linear factors
    /// whose coefficient magnitudes stay below `4^degree`: `2*degree + 64`.
    pub fn for_degree(degree: usize) -> Self {
        Precision(2 * degree as u32 + 64)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub(crate) fn p(self) -> usize {
        self.0 as usize
    }

    /// Adds guard bits.
    pub fn with_extra(self, bits: u32) -> Self {
        Precision(self.0 + bits)
    }

    pub fn doubled(self) -> Self {
        Precision(self.0 * 2)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// Absolute rounding tolerance used by the pipelines: a value that must be
/// an integer is accepted when it lies within `2^-32` of one.
pub const PIPELINE_TOLERANCE: f64 = 1.0 / 4_294_967_296.0;

/// Retries `attempt` with doubled precision after numeric failures, at
/// most `MAX_RETRIES` times.
pub fn with_escalation<T>(
    start: Precision,
    mut attempt: impl FnMut(Precision) -> Result<T>,
) -> Result<T> {
    const MAX_RETRIES: usize = 3;
    let mut prec = start;
    let mut retries = 0;
    loop {
        match attempt(prec) {
            Err(e) if e.is_numeric() && retries < MAX_RETRIES => {
                retries += 1;
                prec = prec.doubled();
            }
            other => return other,
        }
    }
}

pub(crate) fn bigint_to_float(v: &BigInt, p: usize) -> BigFloat {
    if v.is_zero() {
        return BigFloat::from_u64(0, p);
    }
    let (sign, mag) = v.to_u64_digits();
    let s = if sign == num_bigint::Sign::Minus {
        Sign::Neg
    } else {
        Sign::Pos
    };
    let e = (mag.len() * 64) as astro_float::Exponent;
    let mut f = BigFloat::from_words(&mag, s, e);
    f.set_precision(p, RM).expect("valid precision");
    f
}

/// Nearest integer to `x` together with the absolute residual `|x - n|`.
pub(crate) fn nearest_integer(x: &BigFloat) -> (BigInt, BigFloat) {
    let p = x.precision().unwrap_or(64).max(64);
    let r = x.round(0, RM);
    let residual = x.sub(&r, p, RM).abs();
    (float_int_to_bigint(&r), residual)
}

fn float_int_to_bigint(r: &BigFloat) -> BigInt {
    let Some((words, _bits, sign, exp, _)) = r.as_raw_parts() else {
        panic!("non-finite value in high-precision arithmetic");
    };
    if r.is_zero() {
        return BigInt::zero();
    }
    let mant = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    let shift = exp as i64 - 64 * words.len() as i64;
    let mag = if shift >= 0 {
        mant << shift as usize
    } else {
        mant >> (-shift) as usize
    };
    let v = BigInt::from(mag);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Lossy conversion for diagnostics.
pub(crate) fn float_to_f64(x: &BigFloat) -> f64 {
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if x.is_zero() {
        return 0.0;
    }
    let top = *words.last().unwrap() as f64;
    let v = top * 2f64.powi(exp - 64);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// A real number at working precision.
#[derive(Debug)]
pub struct HpReal(pub(crate) BigFloat);

impl Clone for HpReal {
    fn clone(&self) -> Self {
        HpReal(self.0.clone())
    }
}

/// A complex number at working precision.
#[derive(Debug)]
pub struct HpComplex {
    pub(crate) re: BigFloat,
    pub(crate) im: BigFloat,
}

impl Clone for HpComplex {
    fn clone(&self) -> Self {
        HpComplex {
            re: self.re.clone(),
            im: self.im.clone(),
        }
    }
}

/// Coefficient kinds usable in [`HpPoly`](super::HpPoly).
pub trait HpScalar: Clone + Send + Sync + fmt::Debug {
    fn zero(prec: Precision) -> Self;
    fn from_bigint(v: &BigInt, prec: Precision) -> Self;
    fn add(&self, rhs: &Self, prec: Precision) -> Self;
    fn sub(&self, rhs: &Self, prec: Precision) -> Self;
    fn mul(&self, rhs: &Self, prec: Precision) -> Self;
    fn neg(&self) -> Self;
    fn is_exact_zero(&self) -> bool;
    fn real(&self) -> &BigFloat;
    fn imag(&self) -> Option<&BigFloat>;
}

impl HpReal {
    pub fn from_f64(v: f64, prec: Precision) -> Self {
        HpReal(BigFloat::from_f64(v, prec.p()))
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        HpReal(BigFloat::from_i64(v, prec.p()))
    }

    pub fn to_f64(&self) -> f64 {
        float_to_f64(&self.0)
    }

    pub fn abs(&self) -> Self {
        HpReal(self.0.abs())
    }

    pub fn div_int(&self, d: i64, prec: Precision) -> Self {
        HpReal(self.0.div(&BigFloat::from_i64(d, prec.p()), prec.p(), RM))
    }

    pub fn cmp_f64(&self, v: f64) -> Ordering {
        let other = BigFloat::from_f64(v, 64);
        match self.0.cmp(&other) {
            Some(x) if x < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl HpScalar for HpReal {
    fn zero(prec: Precision) -> Self {
        HpReal(BigFloat::from_u64(0, prec.p()))
    }

    fn from_bigint(v: &BigInt, prec: Precision) -> Self {
        HpReal(bigint_to_float(v, prec.p()))
    }

    fn add(&self, rhs: &Self, prec: Precision) -> Self {
        HpReal(self.0.add(&rhs.0, prec.p(), RM))
    }

    fn sub(&self, rhs: &Self, prec: Precision) -> Self {
        HpReal(self.0.sub(&rhs.0, prec.p(), RM))
    }

    fn mul(&self, rhs: &Self, prec: Precision) -> Self {
        HpReal(self.0.mul(&rhs.0, prec.p(), RM))
    }

    fn neg(&self) -> Self {
        HpReal(self.0.neg())
    }

    fn is_exact_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn real(&self) -> &BigFloat {
        &self.0
    }

    fn imag(&self) -> Option<&BigFloat> {
        None
    }
}

impl HpComplex {
    pub fn new(re: HpReal, im: HpReal) -> Self {
        HpComplex { re: re.0, im: im.0 }
    }

    pub fn one(prec: Precision) -> Self {
        HpComplex {
            re: BigFloat::from_u64(1, prec.p()),
            im: BigFloat::from_u64(0, prec.p()),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: Precision) -> Self {
        HpComplex {
            re: BigFloat::from_f64(re, prec.p()),
            im: BigFloat::from_f64(im, prec.p()),
        }
    }

    pub fn re(&self) -> HpReal {
        HpReal(self.re.clone())
    }

    pub fn im(&self) -> HpReal {
        HpReal(self.im.clone())
    }

    pub fn conj(&self) -> Self {
        HpComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn scale_real(&self, s: &HpReal, prec: Precision) -> Self {
        HpComplex {
            re: self.re.mul(&s.0, prec.p(), RM),
            im: self.im.mul(&s.0, prec.p(), RM),
        }
    }

    /// Integer power; negative exponents use the inverse `conj(z) / |z|^2`.
    pub fn powi(&self, exp: i64, prec: Precision) -> Self {
        let base = if exp < 0 {
            let p = prec.p();
            let norm = self
                .re
                .mul(&self.re, p, RM)
                .add(&self.im.mul(&self.im, p, RM), p, RM);
            HpComplex {
                re: self.re.div(&norm, p, RM),
                im: self.im.neg().div(&norm, p, RM),
            }
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut b = base;
        let mut acc = HpComplex::one(prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, prec);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, prec);
            }
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (float_to_f64(&self.re), float_to_f64(&self.im))
    }

    /// `max(|re - target|, |im|)`, used for "is this value close to a real integer" checks.
    pub fn distance_to_real(&self, target: i64, prec: Precision) -> HpReal {
        let p = prec.p();
        let dr = self.re.sub(&BigFloat::from_i64(target, p), p, RM).abs();
        let di = self.im.abs();
        HpReal(if dr.cmp(&di).unwrap_or(1) >= 0 {
            dr
        } else {
            di
        })
    }
}

impl HpScalar for HpComplex {
    fn zero(prec: Precision) -> Self {
        HpComplex {
            re: BigFloat::from_u64(0, prec.p()),
            im: BigFloat::from_u64(0, prec.p()),
        }
    }

    fn from_bigint(v: &BigInt, prec: Precision) -> Self {
        HpComplex {
            re: bigint_to_float(v, prec.p()),
            im: BigFloat::from_u64(0, prec.p()),
        }
    }

    fn add(&self, rhs: &Self, prec: Precision) -> Self {
        let p = prec.p();
        HpComplex {
            re: self.re.add(&rhs.re, p, RM),
            im: self.im.add(&rhs.im, p, RM),
        }
    }

    fn sub(&self, rhs: &Self, prec: Precision) -> Self {
        let p = prec.p();
        HpComplex {
            re: self.re.sub(&rhs.re, p, RM),
            im: self.im.sub(&rhs.im, p, RM),
        }
    }

    fn mul(&self, rhs: &Self, prec: Precision) -> Self {
        let p = prec.p();
        if self.im.is_zero() && rhs.im.is_zero() {
            return HpComplex {
                re: self.re.mul(&rhs.re, p, RM),
                im: BigFloat::from_u64(0, p),
            };
        }
        let rr = self.re.mul(&rhs.re, p, RM);
        let ii = self.im.mul(&rhs.im, p, RM);
        let ri = self.re.mul(&rhs.im, p, RM);
        let ir = self.im.mul(&rhs.re, p, RM);
        HpComplex {
            re: rr.sub(&ii, p, RM),
            im: ri.add(&ir, p, RM),
        }
    }

    fn neg(&self) -> Self {
        HpComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn real(&self) -> &BigFloat {
        &self.re
    }

    fn imag(&self) -> Option<&BigFloat> {
        Some(&self.im)
    }
}

/// The values `e(k/m) = exp(2 pi i k / m)` for `k` in `0..m`.
///
/// Built from a single evaluation of `cos`/`sin(2 pi / m)` and repeated
/// multiplication up to `m/2`; the upper half is filled with conjugates
/// so that `e((m-k)/m) = conj(e(k/m))` holds bit for bit. The points
/// `1`, `-1`, `i`, `-i` are stored exactly.
#[derive(Clone, Debug)]
pub struct RootTable {
    modulus: u64,
    prec: Precision,
    values: Vec<HpComplex>,
}

impl RootTable {
    pub fn new(modulus: u64, prec: Precision) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let m = modulus as usize;
        let p = prec.p();
        let mut values = vec![HpComplex::zero(prec); m];
        values[0] = HpComplex::one(prec);
        if m > 1 {
            let guard = p + 32;
            let mut cc = Consts::new().expect("constant cache");
            let pi = cc.pi(guard, RM);
            let angle = pi.mul(&BigFloat::from_u64(2, guard), guard, RM).div(
                &BigFloat::from_u64(modulus, guard),
                guard,
                RM,
            );
            let mut c = angle.cos(guard, RM, &mut cc);
            let mut s = angle.sin(guard, RM, &mut cc);
            c.set_precision(p, RM).expect("precision");
            s.set_precision(p, RM).expect("precision");
            let step = HpComplex { re: c, im: s };
            for k in 1..=m / 2 {
                values[k] = values[k - 1].mul(&step, prec);
            }
            let exact = |re: i64, im: i64| HpComplex {
                re: BigFloat::from_i64(re, p),
                im: BigFloat::from_i64(im, p),
            };
            if m.is_multiple_of(2) {
                values[m / 2] = exact(-1, 0);
            }
            if m.is_multiple_of(4) {
                values[m / 4] = exact(0, 1);
            }
            for k in m / 2 + 1..m {
                values[k] = values[m - k].conj();
            }
        }
        RootTable {
            modulus,
            prec,
            values,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// `e(k/m)` for any integer `k`.
    pub fn get(&self, k: i64) -> &HpComplex {
        &self.values[k.rem_euclid(self.modulus as i64) as usize]
    }

    /// `e(k/m)` for an arbitrary-precision exponent.
    pub fn get_big(&self, k: &BigInt) -> &HpComplex {
        let m = BigInt::from(self.modulus);
        let r = ((k % &m) + &m) % &m;
        let idx: u64 = r.try_into().expect("reduced index fits");
        &self.values[idx as usize]
    }

    /// `cos(2 pi k / m)`.
    pub fn cos(&self, k: i64) -> HpReal {
        self.get(k).re()
    }
}
