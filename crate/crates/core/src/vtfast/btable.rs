//! The `m x m` table of `B_{m,j,k}` and the `F_{m,j}` sums built from it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::closed_forms::{b_boundary, b_direct_entry, b_general, BEntry, Provenance};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::polynomial::{IntPoly, Precision};

/// Version of the table cache layout.
pub const BTABLE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Every cell through [`b_general`].
    Naive,
    /// Half a quadrant per unit orbit, the rest by symmetry.
    #[default]
    Optimized,
    /// Every cell through the defining product; a reference, not a schedule.
    Direct,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Naive => "naive",
            Strategy::Optimized => "optimized",
            Strategy::Direct => "direct",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "optimized" => Ok(Strategy::Optimized),
            "direct" => Ok(Strategy::Direct),
            other => Err(Error::InvalidSpec(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BTable {
    m: u64,
    precision: Precision,
    entries: Vec<BEntry>,
}

impl BTable {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    fn index(&self, j: i64, k: i64) -> usize {
        let m = self.m as i64;
        (j.rem_euclid(m) * m + k.rem_euclid(m)) as usize
    }

    /// Entry `(j, k)` with both indices reduced mod `m`.
    pub fn entry(&self, j: i64, k: i64) -> &BEntry {
        &self.entries[self.index(j, k)]
    }

    pub fn get(&self, j: i64, k: i64) -> &IntPoly {
        &self.entry(j, k).poly
    }

    pub fn entries(&self) -> &[BEntry] {
        &self.entries
    }

    /// Largest rounding residual over all cells.
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    /// Cell count per provenance tag.
    pub fn provenance_counts(&self) -> Vec<(Provenance, usize)> {
        Provenance::ALL
            .into_iter()
            .map(|p| (p, self.entries.iter().filter(|e| e.provenance == p).count()))
            .filter(|&(_, c)| c > 0)
            .collect()
    }

    /// True when the polynomials agree cell for cell (provenance ignored).
    pub fn same_polys(&self, other: &BTable) -> bool {
        self.m == other.m
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.poly == b.poly)
    }

    pub fn to_json(&self) -> Result<String> {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(idx, e)| BEntryJson {
                j: idx as u64 / self.m,
                k: idx as u64 % self.m,
                coeffs: e.poly.coeffs().iter().map(ToString::to_string).collect(),
                provenance: e.provenance,
                residual: e.residual,
            })
            .collect();
        Ok(serde_json::to_string(&BTableJson {
            schema_version: BTABLE_SCHEMA_VERSION,
            m: self.m,
            precision_bits: self.precision.bits(),
            entries,
        })?)
    }

    /// Parses a cache file, checking the version, the modulus when one is
    /// expected, and that every cell is present exactly once.
    pub fn from_json(s: &str, expected_m: Option<u64>) -> Result<Self> {
        let raw: BTableJson = serde_json::from_str(s)?;
        if raw.schema_version != BTABLE_SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "B-table schema version {} (expected {BTABLE_SCHEMA_VERSION})",
                raw.schema_version
            )));
        }
        let m = raw.m;
        if let Some(want) = expected_m {
            if want != m {
                return Err(Error::Format(format!(
                    "cached table has m = {m}, expected {want}"
                )));
            }
        }
        if m == 0 || raw.entries.len() as u64 != m * m {
            return Err(Error::Format(format!(
                "{} entries for m = {m}",
                raw.entries.len()
            )));
        }
        let mut slots: Vec<Option<BEntry>> = vec![None; (m * m) as usize];
        for e in raw.entries {
            if e.j >= m || e.k >= m {
                return Err(Error::Format(format!(
                    "cell ({}, {}) outside the table",
                    e.j, e.k
                )));
            }
            let coeffs = e
                .coeffs
                .iter()
                .map(|c| {
                    c.parse::<BigInt>()
                        .map_err(|err| Error::Format(format!("coefficient {c:?}: {err}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let poly = IntPoly::from_coeffs(coeffs);
            if poly.degree().is_some_and(|d| d as u64 > m) {
                return Err(Error::Format(format!(
                    "cell ({}, {}) has degree above {m}",
                    e.j, e.k
                )));
            }
            let slot = &mut slots[(e.j * m + e.k) as usize];
            if slot.is_some() {
                return Err(Error::Format(format!("cell ({}, {}) repeated", e.j, e.k)));
            }
            *slot = Some(BEntry {
                poly,
                provenance: e.provenance,
                residual: e.residual,
            });
        }
        Ok(BTable {
            m,
            precision: Precision::new(raw.precision_bits)?,
            entries: slots
                .into_iter()
                .map(|s| s.expect("all cells counted"))
                .collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct BTableJson {
    schema_version: u32,
    m: u64,
    precision_bits: u32,
    entries: Vec<BEntryJson>,
}

#[derive(Serialize, Deserialize)]
struct BEntryJson {
    j: u64,
    k: u64,
    coeffs: Vec<String>,
    provenance: Provenance,
    residual: f64,
}

/// Builds the full table for modulus `m` at precision `prec`.
pub fn build_btable(
    m: u64,
    prec: Precision,
    strategy: Strategy,
    exec: Execution,
) -> Result<BTable> {
    if m == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let cells = (m * m) as usize;
    let entries = match strategy {
        Strategy::Naive => {
            exec.try_map(cells, |c| b_general(m, c as u64 / m, c as u64 % m, prec))?
        }
        Strategy::Direct => exec.try_map(cells, |c| {
            b_direct_entry(m, c as u64 / m, c as u64 % m, prec)
        })?,
        Strategy::Optimized => optimized(m, prec, exec)?,
    };
    Ok(BTable {
        m,
        precision: prec,
        entries,
    })
}

/// Canonical representative of `{(tj, tk), (tk, tj) : gcd(t, m) = 1}`.
fn orbit_key(m: u64, units: &[u64], j: u64, k: u64) -> (u64, u64) {
    units
        .iter()
        .map(|&t| {
            let (a, b) = (t * j % m, t * k % m);
            (a.min(b), a.max(b))
        })
        .min()
        .expect("1 is a unit")
}

fn optimized(m: u64, prec: Precision, exec: Execution) -> Result<Vec<BEntry>> {
    let half = m / 2;
    let units = units_mod(m);

    // phase 1: 1 <= j <= k <= m/2, one evaluation per unit orbit
    let region: Vec<(u64, u64)> = (1..=half)
        .flat_map(|j| (j..=half).map(move |k| (j, k)))
        .collect();
    let mut reps: Vec<(u64, u64)> = Vec::new();
    let mut rep_of: HashMap<(u64, u64), usize> = HashMap::new();
    let mut cell_rep = Vec::with_capacity(region.len());
    for &(j, k) in &region {
        let key = orbit_key(m, &units, j, k);
        let r = *rep_of.entry(key).or_insert_with(|| {
            reps.push((j, k));
            reps.len() - 1
        });
        cell_rep.push(r);
    }
    let computed = exec.try_map(reps.len(), |r| b_general(m, reps[r].0, reps[r].1, prec))?;
    let mut quad: HashMap<(u64, u64), BEntry> = HashMap::with_capacity(region.len());
    for (&(j, k), &r) in region.iter().zip(&cell_rep) {
        let mut e = computed[r].clone();
        if reps[r] != (j, k) {
            e.provenance = Provenance::Scaling;
        }
        quad.insert((j, k), e);
    }

    // phase 2: every cell from the boundary form or the quadrant
    let boundary = exec.try_map(m as usize, |j| b_boundary(m, j as u64))?;
    exec.try_map((m * m) as usize, |c| {
        let (j, k) = (c as u64 / m, c as u64 % m);
        if j == 0 || k == 0 {
            return Ok(BEntry {
                poly: boundary[j.max(k) as usize].clone(),
                provenance: Provenance::Boundary,
                residual: 0.0,
            });
        }
        let (fj, fk) = (j > half, k > half);
        let (jr, kr) = (if fj { m - j } else { j }, if fk { m - k } else { k });
        let src = &quad[&(jr.min(kr), jr.max(kr))];
        if !fj && !fk && jr <= kr {
            return Ok(src.clone());
        }
        // B_{j,k} = (-1)^{j(m+1)} z^m B_{m-j,k}(1/z), and the same in k
        let odd_sign = |i: u64| i % 2 == 1 && m.is_multiple_of(2);
        let poly = match (fj, fk) {
            (false, false) => src.poly.clone(),
            (true, true) => {
                if odd_sign(j + k) {
                    -&src.poly
                } else {
                    src.poly.clone()
                }
            }
            (true, false) | (false, true) => {
                let i = if fj { j } else { k };
                let r = src.poly.reciprocal(m as usize)?;
                if odd_sign(i) {
                    -r
                } else {
                    r
                }
            }
        };
        Ok(BEntry {
            poly,
            provenance: Provenance::Symmetry,
            residual: src.residual,
        })
    })
}

/// `F_{m,j} = (2z + 2)^{-1} sum_k B_{m,k,j-k}` for every `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FVector {
    pub m: u64,
    pub polys: Vec<IntPoly>,
}

pub fn f_vector(bt: &BTable, exec: Execution) -> Result<FVector> {
    let m = bt.m as i64;
    let polys = exec.try_map(bt.m as usize, |j| {
        let j = j as i64;
        let sum: IntPoly = (0..m)
            .map(|k| bt.get(k, j - k))
            .fold(IntPoly::zero(), |acc, b| &acc + b);
        sum.div_by_two_z_plus_two()
    })?;
    Ok(FVector { m: bt.m, polys })
}

/// The units of `Z_m`, as residues in `[0, m)`.
pub fn units_mod(m: u64) -> Vec<u64> {
    (1..=m).filter(|t| t.gcd(&m) == 1).map(|t| t % m).collect()
}

/// Full property check of the tables for modulus `m` at `2m + 64` bits.
///
/// Builds the optimized, naive and direct schedules and reports every
/// failed property: schedule agreement, swap and reflection symmetries,
/// unit scaling, and recorded residuals at most `2^-(p/2)`. Empty means
/// all hold.
pub fn property_violations(m: u64, exec: Execution) -> Result<Vec<String>> {
    let prec = Precision::for_degree(m as usize);
    let opt = build_btable(m, prec, Strategy::Optimized, exec)?;
    let naive = build_btable(m, prec, Strategy::Naive, exec)?;
    let direct = build_btable(m, prec, Strategy::Direct, exec)?;
    let mut out = Vec::new();
    if !opt.same_polys(&naive) {
        out.push(format!("m={m}: optimized and naive tables differ"));
    }
    if !naive.same_polys(&direct) {
        out.push(format!("m={m}: naive and direct tables differ"));
    }
    let bound = (-(prec.bits() as f64) / 2.0).exp2();
    for t in [&opt, &naive, &direct] {
        if t.max_residual() > bound {
            out.push(format!(
                "m={m}: residual {:e} above 2^-{}",
                t.max_residual(),
                prec.bits() / 2
            ));
        }
    }
    let mi = m as i64;
    let units = units_mod(m);
    let sign = |i: i64| -> BigInt { if (i * (mi + 1)) % 2 == 0 { 1 } else { -1 }.into() };
    for j in 0..mi {
        for k in 0..mi {
            let b = opt.get(j, k);
            if b != opt.get(k, j) {
                out.push(format!("m={m}: B[{j},{k}] != B[{k},{j}]"));
            }
            if *b != opt.get(mi - j, k).reciprocal(m as usize)?.scale(&sign(j)) {
                out.push(format!("m={m}: vertical reflection fails at ({j},{k})"));
            }
            if *b != opt.get(j, mi - k).reciprocal(m as usize)?.scale(&sign(k)) {
                out.push(format!("m={m}: horizontal reflection fails at ({j},{k})"));
            }
            if let Some(t) = units
                .iter()
                .find(|&&t| opt.get(t as i64 * j, t as i64 * k) != b)
            {
                out.push(format!("m={m}: scaling by {t} fails at ({j},{k})"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert_eq, proptest, ProptestConfig};

    #[test]
    fn property_check_is_clean() {
        for m in [1, 2, 7, 12] {
            assert_eq!(
                property_violations(m, Execution::default()).unwrap(),
                Vec::<String>::new()
            );
        }
    }

    fn table(m: u64, s: Strategy) -> BTable {
        build_btable(
            m,
            Precision::for_degree(m as usize),
            s,
            Execution::default(),
        )
        .unwrap()
    }

    #[test]
    fn modulus_one() {
        let t = table(1, Strategy::Optimized);
        assert_eq!(t.entries().len(), 1);
        assert_eq!(*t.get(0, 0), IntPoly::from_i64s(&[2, 2]));
    }

    #[test]
    fn m6_antidiagonal_cell() {
        let want = IntPoly::from_i64s(&[4, 0, -4]) * IntPoly::from_i64s(&[4, 0, -1]).pow(2);
        for s in [Strategy::Naive, Strategy::Optimized, Strategy::Direct] {
            assert_eq!(*table(6, s).get(1, 5), want);
        }
    }

    #[test]
    fn strategies_agree() {
        for m in 1..=16 {
            let naive = table(m, Strategy::Naive);
            let opt = table(m, Strategy::Optimized);
            let direct = table(m, Strategy::Direct);
            assert!(opt.same_polys(&naive), "m = {m}");
            assert!(naive.same_polys(&direct), "m = {m}");
        }
    }

    #[test]
    fn execution_modes_give_identical_tables() {
        let prec = Precision::for_degree(18);
        let a = build_btable(18, prec, Strategy::Optimized, Execution::Sequential).unwrap();
        let b = build_btable(18, prec, Strategy::Optimized, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn f_vector_examples() {
        let f = f_vector(&table(1, Strategy::Optimized), Execution::default()).unwrap();
        assert_eq!(f.polys, vec![IntPoly::one()]);
        let f = f_vector(&table(6, Strategy::Optimized), Execution::default()).unwrap();
        // every B_{6,k,-k}(0) is 2^6, so F_{6,0}(0) = 6 * 64 / 2
        assert_eq!(f.polys[0].coeff(0), 192.into());
        let total: BigInt = f.polys.iter().map(|p| p.coeff(0)).sum();
        assert_eq!(total, BigInt::from(6 * 36));
        assert!(f.polys.iter().all(|p| p.degree().is_none_or(|d| d <= 5)));
    }

    #[test]
    fn json_round_trip() {
        let t = table(9, Strategy::Optimized);
        let s = t.to_json().unwrap();
        assert!(s.starts_with(r#"{"schema_version":1,"m":9,"#));
        let back = BTable::from_json(&s, Some(9)).unwrap();
        assert_eq!(back, t);
        assert!(matches!(
            BTable::from_json(&s, Some(10)),
            Err(Error::Format(_))
        ));
        let bad = s.replace(r#""schema_version":1"#, r#""schema_version":2"#);
        assert!(matches!(
            BTable::from_json(&bad, None),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn optimized_uses_the_cheap_tags() {
        let t = table(20, Strategy::Optimized);
        let counts: HashMap<_, _> = t.provenance_counts().into_iter().collect();
        assert_eq!(counts[&Provenance::Boundary], 39);
        assert!(
            counts[&Provenance::Symmetry] > counts.get(&Provenance::Cosine).copied().unwrap_or(0)
        );
        assert!(counts.contains_key(&Provenance::Scaling));
        assert!(!counts.contains_key(&Provenance::Direct));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn symmetries(m in 1u64..=24, j in 0u64..24, k in 0u64..24) {
            let (j, k) = (j % m, k % m);
            let t = table(m, Strategy::Optimized);
            let (ji, ki, mi) = (j as i64, k as i64, m as i64);
            prop_assert_eq!(t.get(ji, ki), t.get(ki, ji));
            let sign = |i: i64| if (i * (mi + 1)) % 2 == 0 { 1 } else { -1 };
            let vert = t.get(mi - ji, ki).reciprocal(m as usize).unwrap().scale(&sign(ji).into());
            prop_assert_eq!(t.get(ji, ki), &vert);
            let hori = t.get(ji, mi - ki).reciprocal(m as usize).unwrap().scale(&sign(ki).into());
            prop_assert_eq!(t.get(ji, ki), &hori);
            for u in units_mod(m) {
                let u = u as i64;
                prop_assert_eq!(t.get(u * ji, u * ki), t.get(ji, ki));
            }
            prop_assert_eq!(t.get(ji + 3 * mi, ki - 2 * mi), t.get(ji, ki));
        }
    }
}
