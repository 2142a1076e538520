//! Brute-force distance enumerators: the ground truth for the other routes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::{enumerate_codewords, CodeSpec, CodeSpecJson, EnumerationGuard, Word};
use crate::distances::{distance, DistanceKind};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::polynomial::IntPoly;

/// Version of the enumerator JSON layout.
pub const ENUMERATOR_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Spectral,
    Fast,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Spectral => "spectral",
            Method::Fast => "fast",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "spectral" => Ok(Method::Spectral),
            "fast" => Ok(Method::Fast),
            other => Err(Error::InvalidSpec(format!("unknown method {other:?}"))),
        }
    }
}

/// A distance enumerator: coefficient `i` of `poly` is the number of
/// ordered codeword pairs at distance `i`.
#[derive(Clone, Debug)]
pub struct Enumerator {
    pub poly: IntPoly,
    pub code: CodeSpec,
    pub distance: DistanceKind,
    pub method: Method,
}

impl Enumerator {
    /// `D_0`, which equals `|C|`.
    pub fn cardinality(&self) -> BigInt {
        self.poly.coeff(0)
    }

    /// Violated structural identities, empty when all hold: `D_i >= 0`,
    /// `sum D_i = D_0^2`, `D_i` even for `i >= 1`, and `D_0 = |C|` when
    /// the cardinality is supplied.
    pub fn invariant_violations(&self, cardinality: Option<&BigInt>) -> Vec<String> {
        let mut out = Vec::new();
        let d0 = self.cardinality();
        if let Some(c) = cardinality {
            if *c != d0 {
                out.push(format!("D_0 = {d0} but |C| = {c}"));
            }
        }
        let total: BigInt = self.poly.coeffs().iter().sum();
        if total != &d0 * &d0 {
            out.push(format!("sum D_i = {total} but D_0^2 = {}", &d0 * &d0));
        }
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            if c < &BigInt::zero() {
                out.push(format!("D_{i} = {c} is negative"));
            }
            if i >= 1 && c.bit(0) {
                out.push(format!("D_{i} = {c} is odd"));
            }
        }
        out
    }

    /// Coefficients `D_0..=D_len-1` as decimal strings, zero padded.
    pub fn padded_coeffs(&self, len: usize) -> Vec<BigInt> {
        self.poly.padded(len)
    }

    pub fn with_code(mut self, code: CodeSpec) -> Self {
        self.code = code;
        self
    }

    pub fn to_json_value(&self) -> Result<EnumeratorJson> {
        Ok(EnumeratorJson {
            schema_version: ENUMERATOR_SCHEMA_VERSION,
            coeffs: self.poly.coeffs().iter().map(ToString::to_string).collect(),
            code: self.code.to_json_value()?,
            distance: self.distance.name().to_string(),
            method: self.method.name().to_string(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json_value()?)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: EnumeratorJson = serde_json::from_str(s)?;
        if v.schema_version != ENUMERATOR_SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "enumerator schema version {} (expected {ENUMERATOR_SCHEMA_VERSION})",
                v.schema_version
            )));
        }
        let code = CodeSpec::from_json_value(v.code)?;
        let coeffs = v
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|e| Error::Format(format!("coefficient {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Enumerator {
            poly: IntPoly::from_coeffs(coeffs),
            distance: DistanceKind::parse(&v.distance, code.r())?,
            method: v.method.parse()?,
            code,
        })
    }
}

/// On-disk form of an [`Enumerator`]. Coefficients are decimal strings
/// because they outgrow 64 bits quickly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorJson {
    pub schema_version: u32,
    pub coeffs: Vec<String>,
    pub code: CodeSpecJson,
    pub distance: String,
    pub method: String,
}

#[derive(Clone, Copy, Debug)]
pub struct BruteOptions {
    pub guard: EnumerationGuard,
    /// Visit each unordered pair once and double it. Off reproduces the
    /// plain all-ordered-pairs loop (same output, twice the work).
    pub symmetric: bool,
    pub exec: Execution,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions {
            guard: EnumerationGuard::default(),
            symmetric: true,
            exec: Execution::default(),
        }
    }
}

fn collect_codewords(code: &CodeSpec, guard: EnumerationGuard) -> Result<Vec<Word>> {
    let sc = code.to_sc();
    let words = enumerate_codewords(&sc, guard)?.collect();
    Ok(words)
}

/// Distance function specialised for the pair loop.
enum PairDistance {
    /// Binary words packed into `u64`; Hamming is a popcount.
    PackedHamming(Vec<u64>),
    General(DistanceKind, Vec<Word>),
}

impl PairDistance {
    fn new(kind: DistanceKind, words: Vec<Word>, r: u32, n: usize) -> Result<Self> {
        if kind == DistanceKind::Hamming && r == 2 && n <= 64 {
            let packed = words
                .iter()
                .map(|w| w.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
                .collect();
            return Ok(PairDistance::PackedHamming(packed));
        }
        if let (DistanceKind::Lee(q), Some(w)) = (kind, words.first()) {
            // validate once so the pair loop cannot fail
            distance(DistanceKind::Lee(q), w, w)?;
            if q < r {
                return Err(Error::InvalidSpec(format!(
                    "Lee alphabet {q} smaller than code alphabet {r}"
                )));
            }
        }
        Ok(PairDistance::General(kind, words))
    }

    fn len(&self) -> usize {
        match self {
            PairDistance::PackedHamming(w) => w.len(),
            PairDistance::General(_, w) => w.len(),
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> usize {
        match self {
            PairDistance::PackedHamming(w) => (w[i] ^ w[j]).count_ones() as usize,
            PairDistance::General(k, w) => distance(*k, &w[i], &w[j]).expect("validated words"),
        }
    }
}

/// Counts ordered codeword pairs by distance.
pub fn brute_enumerator(
    code: &CodeSpec,
    kind: DistanceKind,
    opts: BruteOptions,
) -> Result<Enumerator> {
    let words = collect_codewords(code, opts.guard)?;
    let bins = kind.max_value(code.n()) + 1;
    let pairs = PairDistance::new(kind, words, code.r(), code.n())?;
    let u = pairs.len();
    let counts = opts.exec.fold(
        u,
        || vec![0u128; bins],
        |mut acc, i| {
            if opts.symmetric {
                acc[0] += 1;
                for j in i + 1..u {
                    acc[pairs.get(i, j)] += 2;
                }
            } else {
                for j in 0..u {
                    acc[pairs.get(i, j)] += 1;
                }
            }
            acc
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(Enumerator {
        poly: IntPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect()),
        code: code.clone(),
        distance: kind,
        method: Method::Brute,
    })
}

/// Key of the extended enumerator: distance plus the residue-map values
/// of both words (one entry per congruence).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtKey {
    pub distance: usize,
    pub x_rho: Vec<BigInt>,
    pub y_rho: Vec<BigInt>,
}

/// Sparse extended distance enumerator: the coefficient of
/// `z^d prod u_i^{rho_i(x)} v_i^{rho_i(y)}` for every key that occurs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtEnum {
    pub counts: BTreeMap<ExtKey, BigUint>,
}

impl ExtEnum {
    pub fn get(&self, distance: usize, x_rho: &[i64], y_rho: &[i64]) -> BigUint {
        let key = ExtKey {
            distance,
            x_rho: x_rho.iter().map(|&v| v.into()).collect(),
            y_rho: y_rho.iter().map(|&v| v.into()).collect(),
        };
        self.counts.get(&key).cloned().unwrap_or_default()
    }

    pub fn total_mass(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Sets `u = v = 1`, leaving the plain distance enumerator.
    pub fn specialize(&self) -> IntPoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (k, c) in &self.counts {
            if coeffs.len() <= k.distance {
                coeffs.resize(k.distance + 1, BigInt::zero());
            }
            coeffs[k.distance] += BigInt::from(c.clone());
        }
        IntPoly::from_coeffs(coeffs)
    }
}

pub fn brute_extended_enumerator(
    code: &CodeSpec,
    kind: DistanceKind,
    opts: BruteOptions,
) -> Result<ExtEnum> {
    let sc = code.to_sc();
    let words = collect_codewords(code, opts.guard)?;
    let rhos = words
        .iter()
        .map(|w| {
            sc.rho()
                .iter()
                .map(|f| f.evaluate(w))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = words.first() {
        distance(kind, w, w)?;
    }
    let u = words.len();
    let counts = opts.exec.fold(
        u,
        BTreeMap::<ExtKey, BigUint>::new,
        |mut acc, i| {
            for j in 0..u {
                let key = ExtKey {
                    distance: distance(kind, &words[i], &words[j]).expect("validated words"),
                    x_rho: rhos[i].clone(),
                    y_rho: rhos[j].clone(),
                };
                *acc.entry(key).or_default() += 1u32;
            }
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    Ok(ExtEnum { counts })
}

/// `D_i / D_0` as exact rationals.
pub fn average_enumerator(e: &Enumerator) -> Result<Vec<BigRational>> {
    let d0 = e.cardinality();
    if d0.is_zero() {
        return Err(Error::EmptyCode);
    }
    Ok(e.poly
        .coeffs()
        .iter()
        .map(|c| BigRational::new(c.clone(), d0.clone()))
        .collect())
}

/// Lossy view for reports.
pub fn average_enumerator_f64(e: &Enumerator) -> Result<Vec<f64>> {
    Ok(average_enumerator(e)?
        .iter()
        .map(|r| r.to_f64().unwrap_or(f64::NAN))
        .collect())
}
