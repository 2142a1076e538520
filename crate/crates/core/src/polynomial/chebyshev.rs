//! Chebyshev polynomials of the second (`U`) and third (`V`) kind.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::hp::{HpReal, HpScalar, Precision, RootTable};
use super::IntPoly;

/// `U_k` by the three-term recurrence `U_k = 2x U_{k-1} - U_{k-2}`,
/// `U_0 = 1`, `U_1 = 2x`.
pub fn cheb_u(k: usize) -> IntPoly {
    recurrence(k, IntPoly::from_i64s(&[0, 2]))
}

/// `V_k` by the same recurrence with `V_1 = 2x - 1`.
pub fn cheb_v(k: usize) -> IntPoly {
    recurrence(k, IntPoly::from_i64s(&[-1, 2]))
}

fn recurrence(k: usize, first: IntPoly) -> IntPoly {
    let two_x = IntPoly::from_i64s(&[0, 2]);
    let mut prev = IntPoly::one();
    if k == 0 {
        return prev;
    }
    let mut cur = first;
    for _ in 1..k {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `U_k` from the alternating binomial sum
/// `sum_{i <= k/2} (-1)^i C(k-i, i) (2x)^(k-2i)`.
pub fn cheb_u_explicit(k: usize) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); k + 1];
    for i in 0..=k / 2 {
        let c = binomial(k - i, i) << (k - 2 * i);
        coeffs[k - 2 * i] = if i % 2 == 0 { c } else { -c };
    }
    IntPoly::from_coeffs(coeffs)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `U_k(x) = 2^k prod_{i=1..k} (x - cos(pi i / (k+1)))`, evaluated at
/// precision `prec` without going through coefficients.
pub fn cheb_u_product_value(k: usize, x: &HpReal, prec: Precision) -> HpReal {
    let table = RootTable::new(2 * (k as u64 + 1), prec);
    product_value(k, x, prec, |i| table.cos(i as i64))
}

/// `V_k(x) = 2^k prod_{i=1..k} (x + cos(2 pi i / (2k+1)))`.
pub fn cheb_v_product_value(k: usize, x: &HpReal, prec: Precision) -> HpReal {
    let table = RootTable::new(2 * k as u64 + 1, prec);
    product_value(k, x, prec, |i| table.cos(i as i64).neg())
}

fn product_value(k: usize, x: &HpReal, prec: Precision, root: impl Fn(usize) -> HpReal) -> HpReal {
    let two = HpReal::from_i64(2, prec);
    (1..=k).fold(HpReal::from_i64(1, prec), |acc, i| {
        acc.mul(&two, prec).mul(&x.sub(&root(i), prec), prec)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::HpPoly;

    #[test]
    fn small_u() {
        assert_eq!(cheb_u(0), IntPoly::one());
        assert_eq!(cheb_u(1), IntPoly::from_i64s(&[0, 2]));
        assert_eq!(cheb_u(2), IntPoly::from_i64s(&[-1, 0, 4]));
        assert_eq!(cheb_u_explicit(1), IntPoly::from_i64s(&[0, 2]));
        assert_eq!(cheb_u_explicit(2), IntPoly::from_i64s(&[-1, 0, 4]));
    }

    #[test]
    fn small_v() {
        assert_eq!(cheb_v(0), IntPoly::one());
        assert_eq!(cheb_v(1), IntPoly::from_i64s(&[-1, 2]));
        assert_eq!(cheb_v(2), IntPoly::from_i64s(&[-1, -2, 4]));
    }

    #[test]
    fn explicit_sum_matches_recurrence() {
        for k in 0..=64 {
            assert_eq!(cheb_u_explicit(k), cheb_u(k), "k = {k}");
        }
    }

    #[test]
    fn v_matches_product_form() {
        let prec = Precision::new(128).unwrap();
        let tol = 2f64.powi(-64);
        for k in 0..=32 {
            let poly: HpPoly<HpReal> = HpPoly::from_int_poly(&cheb_v(k), prec);
            for x in [-1.0, -0.73, -0.1, 0.0, 0.31, 0.5, 0.99, 1.0] {
                let x = HpReal::from_f64(x, prec);
                let diff = poly.eval(&x).sub(&cheb_v_product_value(k, &x, prec), prec);
                assert!(diff.abs().to_f64() <= tol, "k = {k}");
            }
        }
    }

    #[test]
    fn u_matches_product_form() {
        let prec = Precision::new(128).unwrap();
        for k in 0..=20 {
            let poly: HpPoly<HpReal> = HpPoly::from_int_poly(&cheb_u(k), prec);
            let x = HpReal::from_f64(0.37, prec);
            let diff = poly.eval(&x).sub(&cheb_u_product_value(k, &x, prec), prec);
            assert!(diff.abs().to_f64() <= 1e-25);
        }
    }
}
