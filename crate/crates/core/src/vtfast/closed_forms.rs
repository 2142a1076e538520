//! Closed forms for `B_{m,j,k}(z) = prod_{i=1}^m (1 + e(i(j+k)/m) + (e(ij/m) + e(ik/m)) z)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{
    cheb_u, cheb_v, HpComplex, HpPoly, HpReal, HpScalar, IntPoly, Precision, RootTable,
    PIPELINE_TOLERANCE,
};

/// How a table entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Direct,
    Boundary,
    Diag,
    Antidiag,
    Cosine,
    Symmetry,
    Scaling,
    Power,
}

impl Provenance {
    pub const ALL: [Provenance; 8] = [
        Provenance::Direct,
        Provenance::Boundary,
        Provenance::Diag,
        Provenance::Antidiag,
        Provenance::Cosine,
        Provenance::Symmetry,
        Provenance::Scaling,
        Provenance::Power,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::Direct => "direct",
            Provenance::Boundary => "boundary",
            Provenance::Diag => "diag",
            Provenance::Antidiag => "antidiag",
            Provenance::Cosine => "cosine",
            Provenance::Symmetry => "symmetry",
            Provenance::Scaling => "scaling",
            Provenance::Power => "power",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Provenance::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown provenance {s:?}")))
    }
}

/// One table cell: the polynomial, how it was produced, and the largest
/// rounding residual met on the way (zero for exact closed forms).
#[derive(Clone, Debug, PartialEq)]
pub struct BEntry {
    pub poly: IntPoly,
    pub provenance: Provenance,
    pub residual: f64,
}

impl BEntry {
    fn exact(poly: IntPoly, provenance: Provenance) -> Self {
        BEntry {
            poly,
            provenance,
            residual: 0.0,
        }
    }
}

fn check_indices(m: u64, idx: &[u64]) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    if let Some(&bad) = idx.iter().find(|&&i| i >= m) {
        return Err(Error::Precondition(format!("index {bad} outside [0, {m})")));
    }
    Ok(())
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// The defining product at precision `prec`, rounded. Reference only.
pub fn b_direct(m: u64, j: u64, k: u64, prec: Precision) -> Result<IntPoly> {
    Ok(b_direct_entry(m, j, k, prec)?.poly)
}

pub(crate) fn b_direct_entry(m: u64, j: u64, k: u64, prec: Precision) -> Result<BEntry> {
    check_indices(m, &[j, k])?;
    let table = RootTable::new(m, prec);
    let one = HpComplex::one(prec);
    let mut acc = HpPoly::constant(one.clone(), prec);
    for i in 1..=m as i64 {
        let (j, k) = (j as i64, k as i64);
        let c0 = one.add(table.get(i * (j + k)), prec);
        let c1 = table.get(i * j).add(table.get(i * k), prec);
        acc = acc.mul_linear(&c0, &c1);
    }
    let r = acc.round_to_int_poly(PIPELINE_TOLERANCE)?;
    Ok(BEntry {
        poly: r.poly,
        provenance: Provenance::Direct,
        residual: r.max_residual,
    })
}

/// `B_{m,j,0} = B_{m,0,j} = 2^d (1+z)^m [m/d odd]` with `d = gcd(m, j)`.
pub fn b_boundary(m: u64, j: u64) -> Result<IntPoly> {
    check_indices(m, &[j])?;
    let d = m.gcd(&j);
    if (m / d).is_multiple_of(2) {
        return Ok(IntPoly::zero());
    }
    Ok(IntPoly::from_i64s(&[1, 1]).pow(m as u32).scale(&pow2(d)))
}

struct Reduced {
    d: u32,
    even: bool,
    mbar: usize,
}

fn reduce(m: u64, j: u64) -> Reduced {
    let d = m.gcd(&j);
    let mp = m / d;
    Reduced {
        d: d as u32,
        even: mp.is_multiple_of(2),
        mbar: ((mp - 1) / 2) as usize,
    }
}

/// The diagonal `B_{m,j,j}` for `1 <= j < m` from Chebyshev polynomials.
pub fn b_diag(m: u64, j: u64) -> Result<IntPoly> {
    check_indices(m, &[j])?;
    if j == 0 {
        return Err(Error::Precondition("diagonal form needs j >= 1".into()));
    }
    let r = reduce(m, j);
    let d = r.d;
    Ok(if r.even {
        let sign = if j.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        IntPoly::from_i64s(&[-1, 0, 1]).pow(d)
            * cheb_u(r.mbar)
                .pow(2 * d)
                .scale(&(sign * pow2(2 * d as u64)))
    } else {
        IntPoly::from_i64s(&[1, 1]).pow(d) * cheb_v(r.mbar).pow(2 * d).scale(&pow2(d as u64))
    })
}

/// The antidiagonal `B_{m,j,m-j}` for `1 <= j < m`. In the even case the
/// leading sign is `(-1)^d`, i.e. the factor is `(1 - z^2)^d`.
pub fn b_antidiag(m: u64, j: u64) -> Result<IntPoly> {
    check_indices(m, &[j])?;
    if j == 0 {
        return Err(Error::Precondition("antidiagonal form needs j >= 1".into()));
    }
    let r = reduce(m, j);
    let d = r.d;
    Ok(if r.even {
        let u = cheb_u(r.mbar).reciprocal(r.mbar)?;
        IntPoly::from_i64s(&[1, 0, -1]).pow(d) * u.pow(2 * d).scale(&pow2(2 * d as u64))
    } else {
        let v = cheb_v(r.mbar).reciprocal(r.mbar)?;
        IntPoly::from_i64s(&[1, 1]).pow(d) * v.pow(2 * d).scale(&pow2(d as u64))
    })
}

/// The squared cosine product for `gcd(m, j, k) = 1`:
/// `2^m (1+z) prod_{i <= (m-1)/2} (cos(pi i (j+k)/m) + z cos(pi i (j-k)/m))^2` for odd `m`,
/// `2^m (1-z^2) [j odd][k odd] prod_{i < m/2} (...)^2` for even `m`.
pub fn b_cosine(m: u64, j: u64, k: u64, prec: Precision) -> Result<IntPoly> {
    Ok(b_cosine_entry(m, j, k, prec)?.poly)
}

pub(crate) fn b_cosine_entry(m: u64, j: u64, k: u64, prec: Precision) -> Result<BEntry> {
    check_indices(m, &[j, k])?;
    if m.gcd(&j).gcd(&k) != 1 {
        return Err(Error::Precondition(format!("gcd({m}, {j}, {k}) != 1")));
    }
    let (outer, terms) = if m % 2 == 1 {
        (IntPoly::from_i64s(&[1, 1]), (m - 1) / 2)
    } else {
        if j.is_multiple_of(2) || k.is_multiple_of(2) {
            return Ok(BEntry::exact(IntPoly::zero(), Provenance::Cosine));
        }
        (IntPoly::from_i64s(&[1, 0, -1]), m / 2 - 1)
    };
    // cos(pi x / m) = Re e(x / 2m)
    let table = RootTable::new(2 * m, prec);
    let (s, t) = ((j + k) as i64, j as i64 - k as i64);
    let mut half = HpPoly::constant(HpReal::from_i64(1, prec), prec);
    for i in 1..=terms as i64 {
        half = half.mul_linear(&table.cos(i * s), &table.cos(i * t));
    }
    // 2^m P^2 has integer coefficients; round it before the exact outer factor
    let inner = half
        .mul(&half)?
        .scale_pow2(m as u32)
        .round_to_int_poly(PIPELINE_TOLERANCE)?;
    Ok(BEntry {
        poly: outer * inner.poly,
        provenance: Provenance::Cosine,
        residual: inner.max_residual,
    })
}

/// Dispatch: boundary, diagonal, antidiagonal, else the cosine form of the
/// gcd-reduced triple raised to the power `d`.
pub fn b_general(m: u64, j: u64, k: u64, prec: Precision) -> Result<BEntry> {
    check_indices(m, &[j, k])?;
    if j == 0 || k == 0 {
        return Ok(BEntry::exact(
            b_boundary(m, j.max(k))?,
            Provenance::Boundary,
        ));
    }
    if j == k {
        return Ok(BEntry::exact(b_diag(m, j)?, Provenance::Diag));
    }
    if j + k == m {
        return Ok(BEntry::exact(b_antidiag(m, j)?, Provenance::Antidiag));
    }
    let d = m.gcd(&j).gcd(&k);
    let base = b_cosine_entry(m / d, j / d, k / d, prec)?;
    if d == 1 {
        return Ok(base);
    }
    Ok(BEntry {
        poly: base.poly.pow(d as u32),
        provenance: Provenance::Power,
        residual: base.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec(m: u64) -> Precision {
        Precision::for_degree(m as usize)
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn direct_examples() {
        assert_eq!(b_direct(2, 1, 1, prec(2)).unwrap(), p(&[4, 0, -4]));
        assert_eq!(b_direct(3, 1, 0, prec(3)).unwrap(), p(&[2, 6, 6, 2]));
        for m in 1..=8 {
            let want = p(&[1, 1]).pow(m as u32).scale(&pow2(m));
            assert_eq!(b_direct(m, 0, 0, prec(m)).unwrap(), want);
        }
        assert!(b_direct(3, 3, 0, prec(3)).is_err());
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(b_boundary(3, 1).unwrap(), p(&[2, 6, 6, 2]));
        assert!(b_boundary(4, 2).unwrap().is_zero());
        assert_eq!(
            b_boundary(6, 0).unwrap(),
            p(&[1, 1]).pow(6).scale(&64.into())
        );
    }

    #[test]
    fn diag_examples() {
        assert_eq!(b_diag(2, 1).unwrap(), p(&[4, 0, -4]));
        // 2(z+1)(2z-1)^2
        assert_eq!(b_diag(3, 1).unwrap(), p(&[2, 2]) * p(&[-1, 2]).pow(2));
        // -2^6 (z^2-1)^3
        assert_eq!(
            b_diag(6, 3).unwrap(),
            p(&[-1, 0, 1]).pow(3).scale(&(-64).into())
        );
    }

    #[test]
    fn antidiag_examples() {
        // 2(z+1)(2-z)^2
        assert_eq!(b_antidiag(3, 1).unwrap(), p(&[2, 2]) * p(&[2, -1]).pow(2));
        // 4(1-z^2)(4-z^2)^2
        let want = p(&[4, 0, -4]) * p(&[4, 0, -1]).pow(2);
        assert_eq!(b_antidiag(6, 1).unwrap(), want);
        assert_eq!(b_direct(6, 1, 5, prec(6)).unwrap(), want);
        assert_eq!(b_antidiag(2, 1).unwrap(), b_diag(2, 1).unwrap());
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(
            b_cosine(3, 1, 2, prec(3)).unwrap(),
            b_antidiag(3, 1).unwrap()
        );
        assert!(b_cosine(4, 1, 2, prec(4)).unwrap().is_zero());
        assert_eq!(
            b_cosine(5, 1, 2, prec(5)).unwrap(),
            b_direct(5, 1, 2, prec(5)).unwrap()
        );
        assert_eq!(b_cosine(1, 0, 0, prec(1)).unwrap(), p(&[2, 2]));
        assert!(matches!(
            b_cosine(6, 2, 4, prec(6)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn general_examples() {
        let b = b_general(6, 2, 4, prec(6)).unwrap();
        assert_eq!(b.poly, p(&[2, 2]).pow(2) * p(&[2, -1]).pow(4));
        assert_eq!(b.provenance, Provenance::Antidiag);
        let b = b_general(6, 2, 5, prec(6)).unwrap();
        assert_eq!(b.provenance, Provenance::Cosine);
        let b = b_general(12, 2, 6, prec(12)).unwrap();
        assert_eq!(b.provenance, Provenance::Power);
        assert_eq!(b.poly, b_direct(12, 2, 6, prec(12)).unwrap());
        assert_eq!(
            b_general(6, 3, 3, prec(6)).unwrap().provenance,
            Provenance::Diag
        );
        assert_eq!(
            b_general(16, 1, 3, prec(16)).unwrap().poly,
            b_direct(16, 1, 3, prec(16)).unwrap()
        );
    }

    #[test]
    fn every_form_matches_direct_product() {
        for m in 1..=14u64 {
            let pr = prec(m);
            for j in 0..m {
                for k in 0..m {
                    let direct = b_direct(m, j, k, pr).unwrap();
                    let e = b_general(m, j, k, pr).unwrap();
                    assert_eq!(e.poly, direct, "m={m} j={j} k={k} via {}", e.provenance);
                    assert!(e.poly.degree().is_none_or(|d| d <= m as usize));
                    if j >= 1 && j == k {
                        assert_eq!(b_diag(m, j).unwrap(), direct);
                    }
                    if j >= 1 && j + k == m {
                        assert_eq!(b_antidiag(m, j).unwrap(), direct);
                    }
                    if m.gcd(&j).gcd(&k) == 1 {
                        assert_eq!(b_cosine(m, j, k, pr).unwrap(), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn provenance_names_round_trip() {
        for p in Provenance::ALL {
            assert_eq!(p.name().parse::<Provenance>().unwrap(), p);
        }
        assert!("guess".parse::<Provenance>().is_err());
    }
}
