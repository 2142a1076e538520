//! The polynomial-time Hamming enumerator of `VT_a(n)`:
//!
//! ```text
//! D(VT_a(n); z) = m^-2 sum_j e(-aj/m) F_{m,j}(z),   m = n + 1
//! ```
//!
//! with `F` built from the `B` table. Since `F_{m,j} = F_{m,-j}` the sum is
//! real and is carried as `sum_j cos(2 pi a j / m) F_{m,j}`.

mod btable;
mod closed_forms;

pub use btable::{
    build_btable, f_vector, property_violations, units_mod, BTable, FVector, Strategy,
    BTABLE_SCHEMA_VERSION,
};
pub use closed_forms::{
    b_antidiag, b_boundary, b_cosine, b_diag, b_direct, b_general, BEntry, Provenance,
};

use num_bigint::BigInt;

use crate::codes::{CodeSpec, VtSpec};
use crate::distances::DistanceKind;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::oracle::{Enumerator, Method};
use crate::polynomial::{
    with_escalation, HpPoly, HpReal, Precision, RootTable, PIPELINE_TOLERANCE,
};

#[derive(Clone, Copy, Debug, Default)]
pub struct FastOptions {
    /// Working precision; `None` means `2m + 64`.
    pub precision: Option<Precision>,
    pub strategy: Strategy,
    pub exec: Execution,
}

/// `D(VT_a(n); z)` for one residue.
pub fn vt_fast_enumerator(n: usize, a: u64, opts: FastOptions) -> Result<Enumerator> {
    let mut out = vt_fast_enumerators(n, &[a], opts)?;
    Ok(out.remove(0))
}

/// Enumerators for several residues sharing one table.
pub fn vt_fast_enumerators(
    n: usize,
    residues: &[u64],
    opts: FastOptions,
) -> Result<Vec<Enumerator>> {
    let specs = residues
        .iter()
        .map(|&a| VtSpec::new(n, a))
        .collect::<Result<Vec<_>>>()?;
    let m = n as u64 + 1;
    let start = opts
        .precision
        .unwrap_or_else(|| Precision::for_degree(m as usize));
    with_escalation(start, |prec| {
        let table = build_btable(m, prec, opts.strategy, opts.exec)?;
        assemble(&table, &specs, opts.exec)
    })
}

/// Enumerators from an existing table, e.g. one loaded from a cache.
pub fn vt_fast_from_table(
    table: &BTable,
    residues: &[u64],
    exec: Execution,
) -> Result<Vec<Enumerator>> {
    let n = table.m() as usize - 1;
    if n == 0 {
        return Err(Error::Precondition(
            "a table for m = 1 has no VT code".into(),
        ));
    }
    let specs = residues
        .iter()
        .map(|&a| VtSpec::new(n, a))
        .collect::<Result<Vec<_>>>()?;
    assemble(table, &specs, exec)
}

fn assemble(table: &BTable, specs: &[VtSpec], exec: Execution) -> Result<Vec<Enumerator>> {
    let m = table.m();
    let prec = table.precision();
    let f = f_vector(table, exec)?;
    let roots = RootTable::new(m, prec);
    let embedded: Vec<HpPoly<HpReal>> = f
        .polys
        .iter()
        .map(|p| HpPoly::from_int_poly(p, prec))
        .collect();
    let m2 = BigInt::from(m * m);
    exec.try_map(specs.len(), |s| {
        let spec = specs[s];
        let a = spec.a as i64;
        let mut sum = HpPoly::<HpReal>::zero(prec);
        for (j, fj) in embedded.iter().enumerate() {
            sum = sum.add(&fj.scale(&roots.cos(a * j as i64)))?;
        }
        let poly = sum
            .round_to_int_poly(PIPELINE_TOLERANCE)?
            .poly
            .div_exact(&m2)?;
        Ok(Enumerator {
            poly,
            code: CodeSpec::Vt(spec),
            distance: DistanceKind::Hamming,
            method: Method::Fast,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_enumerator, BruteOptions};
    use crate::polynomial::IntPoly;

    #[test]
    fn example_vt_0_5() {
        let e = vt_fast_enumerator(5, 0, FastOptions::default()).unwrap();
        assert_eq!(e.poly, IntPoly::from_i64s(&[6, 0, 8, 16, 6]));
        assert_eq!(e.method, Method::Fast);
    }

    #[test]
    fn table_one_column_d16() {
        let e = vt_fast_enumerator(15, 0, FastOptions::default()).unwrap();
        let want: [i64; 15] = [
            2048, 0, 7184, 64496, 183488, 375616, 633152, 831168, 828352, 635968, 382528, 176576,
            58384, 13296, 2048,
        ];
        assert_eq!(e.poly, IntPoly::from_i64s(&want));
    }

    #[test]
    fn matches_brute_force_small() {
        for n in 1..=9 {
            let all: Vec<u64> = (0..=n as u64).collect();
            let fast = vt_fast_enumerators(n, &all, FastOptions::default()).unwrap();
            for (a, e) in all.iter().zip(fast) {
                let code = CodeSpec::Vt(VtSpec::new(n, *a).unwrap());
                let brute = brute_enumerator(&code, DistanceKind::Hamming, BruteOptions::default())
                    .unwrap();
                assert_eq!(e.poly, brute.poly, "n={n} a={a}");
                assert_eq!(e.poly.coeff(1), BigInt::from(0));
            }
        }
    }

    #[test]
    fn strategies_and_cached_table_agree() {
        let opts = |strategy| FastOptions {
            strategy,
            ..Default::default()
        };
        let base = vt_fast_enumerator(11, 3, opts(Strategy::Optimized))
            .unwrap()
            .poly;
        assert_eq!(
            vt_fast_enumerator(11, 3, opts(Strategy::Naive))
                .unwrap()
                .poly,
            base
        );
        let table = build_btable(
            12,
            Precision::for_degree(12),
            Strategy::Optimized,
            Execution::default(),
        )
        .unwrap();
        let cached = BTable::from_json(&table.to_json().unwrap(), Some(12)).unwrap();
        let e = vt_fast_from_table(&cached, &[3], Execution::default()).unwrap();
        assert_eq!(e[0].poly, base);
    }

    #[test]
    fn invalid_residue() {
        assert!(matches!(
            vt_fast_enumerator(5, 6, FastOptions::default()),
            Err(Error::InvalidSpec(_))
        ));
    }
}
