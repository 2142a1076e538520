use astro_float::BigFloat;

use super::hp::{
    bigint_to_float, float_to_f64, nearest_integer, HpComplex, HpReal, HpScalar, Precision, RM,
};
use super::IntPoly;
use crate::error::{Error, Result};

/// Dense polynomial with high-precision coefficients, all carried at the
/// same working precision.
#[derive(Clone, Debug)]
pub struct HpPoly<S: HpScalar> {
    coeffs: Vec<S>,
    prec: Precision,
}

/// Result of [`HpPoly::round_to_int_poly`].
#[derive(Clone, Debug)]
pub struct RoundedPoly {
    pub poly: IntPoly,
    /// Largest `|coefficient - nearest integer|` seen (including any
    /// imaginary part), as a lossy `f64`.
    pub max_residual: f64,
}

impl<S: HpScalar> HpPoly<S> {
    pub fn zero(prec: Precision) -> Self {
        HpPoly {
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(c: S, prec: Precision) -> Self {
        Self::from_coeffs(vec![c], prec)
    }

    pub fn from_coeffs(mut coeffs: Vec<S>, prec: Precision) -> Self {
        while coeffs.last().is_some_and(HpScalar::is_exact_zero) {
            coeffs.pop();
        }
        HpPoly { coeffs, prec }
    }

    /// Exact embedding of an integer polynomial (exact whenever the
    /// coefficients fit in the mantissa).
    pub fn from_int_poly(p: &IntPoly, prec: Precision) -> Self {
        Self::from_coeffs(
            p.coeffs().iter().map(|c| S::from_bigint(c, prec)).collect(),
            prec,
        )
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.prec != rhs.prec {
            return Err(Error::PrecisionMismatch(self.prec.bits(), rhs.prec.bits()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let p = self.prec;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b, p),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::from_coeffs(coeffs, p))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let p = self.prec;
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Ok(Self::zero(p));
        }
        let mut out = vec![S::zero(p); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b, p), p);
            }
        }
        Ok(Self::from_coeffs(out, p))
    }

    /// Multiplies by the linear factor `c0 + c1 z` in place of a full
    /// product; the inner loop of every factored form here.
    pub fn mul_linear(&self, c0: &S, c1: &S) -> Self {
        let p = self.prec;
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.coeffs[0].mul(c0, p));
        for i in 1..n {
            out.push(
                self.coeffs[i]
                    .mul(c0, p)
                    .add(&self.coeffs[i - 1].mul(c1, p), p),
            );
        }
        out.push(self.coeffs[n - 1].mul(c1, p));
        Self::from_coeffs(out, p)
    }

    pub fn scale(&self, s: &S) -> Self {
        let p = self.prec;
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(s, p)).collect(), p)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let p = self.prec;
        let mut acc = Self::constant(S::from_bigint(&1.into(), p), p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same precision");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same precision");
            }
        }
        acc
    }

    pub fn eval(&self, x: &S) -> S {
        let p = self.prec;
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(p), |acc, c| acc.mul(x, p).add(c, p))
    }

    /// Rounds every coefficient to the nearest integer. Fails when any
    /// real part is farther than `tolerance` from an integer or any
    /// imaginary part exceeds `tolerance` in magnitude.
    pub fn round_to_int_poly(&self, tolerance: f64) -> Result<RoundedPoly> {
        let tol = BigFloat::from_f64(tolerance, 64);
        let mut worst = BigFloat::from_u64(0, 64);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (n, res) = nearest_integer(c.real());
            if res.cmp(&worst).unwrap_or(1) > 0 {
                worst = res;
            }
            if let Some(im) = c.imag() {
                let a = im.abs();
                if a.cmp(&worst).unwrap_or(1) > 0 {
                    worst = a;
                }
            }
            coeffs.push(n);
        }
        let max_residual = float_to_f64(&worst);
        if worst.cmp(&tol).unwrap_or(1) > 0 {
            return Err(Error::Rounding {
                residual: max_residual,
                tolerance,
                bits: self.prec.bits(),
            });
        }
        Ok(RoundedPoly {
            poly: IntPoly::from_coeffs(coeffs),
            max_residual,
        })
    }
}

impl HpPoly<HpComplex> {
    pub fn conj(&self) -> Self {
        HpPoly {
            coeffs: self.coeffs.iter().map(HpComplex::conj).collect(),
            prec: self.prec,
        }
    }

    pub fn real_part(&self) -> HpPoly<HpReal> {
        HpPoly::from_coeffs(self.coeffs.iter().map(HpComplex::re).collect(), self.prec)
    }

    /// Evaluation at a real point.
    pub fn eval_real(&self, x: &HpReal) -> HpComplex {
        let p = self.prec;
        let xc = HpComplex::new(x.clone(), HpReal::zero(p));
        self.eval(&xc)
    }
}

impl HpPoly<HpReal> {
    /// Multiplies by an integer polynomial without leaving high precision.
    pub fn mul_int(&self, rhs: &IntPoly) -> Self {
        let p = self.prec;
        let embedded: HpPoly<HpReal> = HpPoly::from_coeffs(
            rhs.coeffs()
                .iter()
                .map(|c| HpReal(bigint_to_float(c, p.p())))
                .collect(),
            p,
        );
        self.mul(&embedded).expect("same precision")
    }

    /// Multiplies every coefficient by `2^k` (exact).
    pub fn scale_pow2(&self, k: u32) -> Self {
        let p = self.prec;
        let f = HpReal(BigFloat::from_u64(2, p.p()).powi(k as usize, p.p(), RM));
        self.scale(&f)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.0.is_zero())
    }
}

impl<S: HpScalar> PartialEq<IntPoly> for HpPoly<S> {
    /// True when every coefficient equals the integer exactly.
    fn eq(&self, other: &IntPoly) -> bool {
        self.coeffs.len() == other.coeffs().len()
            && self.coeffs.iter().zip(other.coeffs()).all(|(a, b)| {
                let (n, res) = nearest_integer(a.real());
                n == *b && res.is_zero() && a.imag().is_none_or(BigFloat::is_zero)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::RootTable;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn prec(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn rounding_accepts_integral_values() {
        let p = prec(128);
        let poly = HpPoly::from_coeffs(
            vec![
                HpComplex::from_f64(1.0, 0.0, p),
                HpComplex::from_f64(2.0, -1e-30, p),
            ],
            p,
        );
        let r = poly.round_to_int_poly(1e-20).unwrap();
        assert_eq!(r.poly, IntPoly::from_i64s(&[1, 2]));
        assert!(r.max_residual <= 1e-29);
    }

    #[test]
    fn rounding_rejects_ambiguous_values() {
        let p = prec(128);
        let poly = HpPoly::constant(HpReal::from_f64(0.4999, p), p);
        match poly.round_to_int_poly(1e-6) {
            Err(Error::Rounding { residual, .. }) => assert!((residual - 0.4999).abs() < 1e-3),
            other => panic!("expected rounding failure, got {other:?}"),
        }
    }

    #[test]
    fn mixed_precision_is_rejected() {
        let a: HpPoly<HpReal> = HpPoly::from_int_poly(&IntPoly::one(), prec(64));
        let b = HpPoly::from_int_poly(&IntPoly::one(), prec(128));
        assert!(matches!(a.mul(&b), Err(Error::PrecisionMismatch(64, 128))));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn b_2_1_1_by_direct_product() {
        // prod over i = 1, 2 of (1 + e(i) + 2 e(i/2) z)
        let p = prec(128);
        let t = RootTable::new(2, p);
        let mut acc = HpPoly::constant(HpComplex::one(p), p);
        for i in 1..=2i64 {
            let c0 = HpComplex::one(p).add(t.get(2 * i), p);
            let c1 = t.get(i).add(t.get(i), p);
            acc = acc.mul_linear(&c0, &c1);
        }
        let r = acc.round_to_int_poly(1e-30).unwrap();
        assert_eq!(r.poly, IntPoly::from_i64s(&[4, 0, -4]));
    }

    #[test]
    fn complex_helpers() {
        let p = prec(96);
        let poly = HpPoly::from_coeffs(
            vec![
                HpComplex::from_f64(1.0, 2.0, p),
                HpComplex::from_f64(0.0, -1.0, p),
            ],
            p,
        );
        let c = poly.conj();
        assert_eq!(c.coeffs()[0].to_f64(), (1.0, -2.0));
        // (1 + 2i) + (-i) * 2 = 1
        let v = poly.eval_real(&HpReal::from_i64(2, p));
        assert_eq!(v.to_f64(), (1.0, 0.0));
        assert_eq!(poly.real_part().coeffs().len(), 1);
    }

    proptest! {
        #[test]
        fn rounding_inverts_embedding(c in prop::collection::vec(any::<i64>(), 0..10), extra in 0u32..64) {
            let q = IntPoly::from_i64s(&c);
            let p = prec(64 + extra);
            let real: HpPoly<HpReal> = HpPoly::from_int_poly(&q, p);
            let cplx: HpPoly<HpComplex> = HpPoly::from_int_poly(&q, p);
            prop_assert_eq!(&real.round_to_int_poly(0.0).unwrap().poly, &q);
            prop_assert_eq!(&cplx.round_to_int_poly(0.0).unwrap().poly, &q);
            prop_assert!(real == q);
        }

        #[test]
        fn high_precision_product_matches_exact(a in prop::collection::vec(-50i64..50, 1..8), b in prop::collection::vec(-50i64..50, 1..8)) {
            let (pa, pb) = (IntPoly::from_i64s(&a), IntPoly::from_i64s(&b));
            let p = prec(128);
            let ha: HpPoly<HpReal> = HpPoly::from_int_poly(&pa, p);
            let hb = HpPoly::from_int_poly(&pb, p);
            let prod = ha.mul(&hb).unwrap().round_to_int_poly(0.0).unwrap().poly;
            prop_assert_eq!(prod, &pa * &pb);
            let x = BigInt::from(3);
            let hv = ha.eval(&HpReal::from_i64(3, p));
            prop_assert_eq!(nearest_integer(&hv.0).0, pa.eval(&x));
        }
    }
}
