use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial over the integers. `coeffs[i]` is the
/// coefficient of `z^i`; there is never a trailing zero, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients `0..len`, padded with zeros.
    pub fn padded(&self, len: usize) -> Vec<BigInt> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `z^bound * p(1/z)`: coefficient `i` of the result is coefficient
    /// `bound - i` of `self`.
    pub fn reciprocal(&self, bound: usize) -> Result<Self> {
        match self.degree() {
            Some(d) if d > bound => Err(Error::DegreeBound { degree: d, bound }),
            _ => Ok(Self::from_coeffs(
                (0..=bound).map(|i| self.coeff(bound - i)).collect(),
            )),
        }
    }

    /// Exact quotient by `2z + 2`: synthetic division at the root `-1`,
    /// then halving. Any remainder or odd coefficient is an error.
    pub fn div_by_two_z_plus_two(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let n = self.coeffs.len();
        if n == 1 {
            return Err(Error::InexactDivision(format!(
                "nonzero constant {} is not divisible",
                self.coeffs[0]
            )));
        }
        // p(z) = (z + 1) q(z) + rem, working from the top coefficient down.
        let mut quotient = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] - carry;
            quotient[i - 1] = carry.clone();
        }
        let remainder = &self.coeffs[0] - carry;
        if !remainder.is_zero() {
            return Err(Error::InexactDivision(format!("remainder {remainder}")));
        }
        let two = BigInt::from(2);
        for (i, q) in quotient.iter_mut().enumerate() {
            let (half, rem) = q.div_rem(&two);
            if !rem.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "odd coefficient {q} at z^{i} of p/(z+1)"
                )));
            }
            *q = half;
        }
        Ok(Self::from_coeffs(quotient))
    }

    /// Exact division of every coefficient by a nonzero integer.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "coefficient {c} of z^{i} is not a multiple of {d}"
                )));
            }
            out.push(q);
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs(
            (0..len)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $f(self, rhs: IntPoly) -> IntPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(&p(&[3, -2, 7]) * &IntPoly::zero(), IntPoly::zero());
        // (2 - z)^2 (2 + 2z) = (4 - 4z + z^2)(2 + 2z) = 8 + 0z - 6z^2 + 2z^3
        assert_eq!(p(&[2, -1]).pow(2) * p(&[2, 2]), p(&[8, 0, -6, 2]));
        assert_eq!(p(&[1, 1]).pow(0), IntPoly::one());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 1]) - p(&[1, 1]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(&[1, 2]).reciprocal(1).unwrap(), p(&[2, 1]));
        assert_eq!(p(&[1]).reciprocal(3).unwrap(), p(&[0, 0, 0, 1]));
        assert_eq!(p(&[4, 0, -1]).reciprocal(2).unwrap(), p(&[-1, 0, 4]));
        assert!(matches!(
            p(&[1, 1, 1]).reciprocal(1),
            Err(Error::DegreeBound {
                degree: 2,
                bound: 1
            })
        ));
    }

    #[test]
    fn division_by_two_z_plus_two() {
        assert_eq!(p(&[2, 2]).div_by_two_z_plus_two().unwrap(), IntPoly::one());
        assert_eq!(p(&[2, 4, 2]).div_by_two_z_plus_two().unwrap(), p(&[1, 1]));
        let six = p(&[1, 1]).pow(6).scale(&BigInt::from(64));
        let five = p(&[1, 1]).pow(5).scale(&BigInt::from(32));
        assert_eq!(six.div_by_two_z_plus_two().unwrap(), five);
    }

    #[test]
    fn division_rejects_remainders() {
        // p(-1) != 0
        assert!(p(&[1, 2]).div_by_two_z_plus_two().is_err());
        // (z + 1)(1 + z) / 2 has odd coefficients
        assert!(p(&[1, 2, 1]).div_by_two_z_plus_two().is_err());
        assert!(p(&[5]).div_by_two_z_plus_two().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[6, 0, 8, 16, 6]).to_string(), "6 + 8z^2 + 16z^3 + 6z^4");
        assert_eq!(p(&[0, -1, 1]).to_string(), "-z + z^2");
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-1000i64..1000, 0..max_len).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn reciprocal_is_an_involution(q in arb_poly(12), extra in 0usize..5) {
            let bound = q.degree().unwrap_or(0) + extra;
            let r = q.reciprocal(bound).unwrap();
            prop_assert_eq!(r.reciprocal(bound).unwrap(), q);
        }

        #[test]
        fn division_inverts_multiplication(q in arb_poly(51)) {
            let prod = &p(&[2, 2]) * &q;
            prop_assert_eq!(prod.div_by_two_z_plus_two().unwrap(), q);
        }

        #[test]
        fn multiplication_is_evaluation_homomorphism(a in arb_poly(8), b in arb_poly(8), x in -20i64..20) {
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }
}
