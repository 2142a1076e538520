//! Simultaneous-congruence codes and their BLC / VT special cases.
//!
//! Positions are 1-based in every residue functional: the VT checksum of
//! `x_1 x_2 ... x_n` is `sum i * x_i`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word over `[0, r)`, stored one symbol per byte.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

/// Parses a digit string such as `"10001"` (symbols 0-9 only).
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidSpec(format!("bad symbol {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            if *s < 10 {
                write!(f, "{s}")?;
            } else {
                write!(f, "[{s}]")?;
            }
        }
        Ok(())
    }
}

type OpaqueFn = dyn Fn(&[u8]) -> BigInt + Send + Sync;

/// A map `rho: [r]^n -> Z`. `Linear(h)` is `x -> sum h_i x_i`.
#[derive(Clone)]
pub enum ResidueFunctional {
    Linear(Vec<i64>),
    Opaque(Arc<OpaqueFn>),
}

impl fmt::Debug for ResidueFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueFunctional::Linear(h) => f.debug_tuple("Linear").field(h).finish(),
            ResidueFunctional::Opaque(_) => f.write_str("Opaque(..)"),
        }
    }
}

impl ResidueFunctional {
    /// The VT checksum `omega(x) = sum i x_i` on length-`n` words.
    pub fn vt_checksum(n: usize) -> Self {
        ResidueFunctional::Linear((1..=n as i64).collect())
    }

    pub fn opaque(f: impl Fn(&[u8]) -> BigInt + Send + Sync + 'static) -> Self {
        ResidueFunctional::Opaque(Arc::new(f))
    }

    /// The same map behind the opaque interface.
    pub fn to_opaque(&self) -> Self {
        match self {
            ResidueFunctional::Linear(h) => {
                let h = h.clone();
                Self::opaque(move |x| linear_value(&h, x))
            }
            other => other.clone(),
        }
    }

    pub fn evaluate(&self, x: &[u8]) -> Result<BigInt> {
        match self {
            ResidueFunctional::Linear(h) => {
                if h.len() != x.len() {
                    return Err(Error::LengthMismatch {
                        expected: h.len(),
                        got: x.len(),
                    });
                }
                Ok(linear_value(h, x))
            }
            ResidueFunctional::Opaque(f) => Ok(f(x)),
        }
    }

    /// `rho(x) mod m` in `[0, m)`.
    pub fn residue(&self, x: &[u8], m: u64) -> Result<u64> {
        match self {
            ResidueFunctional::Linear(h) => {
                if h.len() != x.len() {
                    return Err(Error::LengthMismatch {
                        expected: h.len(),
                        got: x.len(),
                    });
                }
                let m = m as i128;
                let s = h.iter().zip(x).fold(0i128, |acc, (&hi, &xi)| {
                    (acc + hi as i128 * xi as i128).rem_euclid(m)
                });
                Ok(s as u64)
            }
            ResidueFunctional::Opaque(f) => {
                let m = BigInt::from(m);
                let r = ((f(x) % &m) + &m) % &m;
                Ok(r.try_into().expect("residue below modulus"))
            }
        }
    }

    pub fn as_linear(&self) -> Option<&[i64]> {
        match self {
            ResidueFunctional::Linear(h) => Some(h),
            ResidueFunctional::Opaque(_) => None,
        }
    }
}

fn linear_value(h: &[i64], x: &[u8]) -> BigInt {
    let s: i128 = h
        .iter()
        .zip(x)
        .map(|(&hi, &xi)| hi as i128 * xi as i128)
        .sum();
    BigInt::from(s)
}

/// `C = { x in [r]^n : rho_i(x) = a_i (mod m_i) for all i }`.
#[derive(Clone, Debug)]
pub struct ScSpec {
    n: usize,
    r: u32,
    rho: Vec<ResidueFunctional>,
    a: Vec<u64>,
    m: Vec<u64>,
}

impl ScSpec {
    pub fn new(
        n: usize,
        r: u32,
        rho: Vec<ResidueFunctional>,
        a: Vec<u64>,
        m: Vec<u64>,
    ) -> Result<Self> {
        if !(2..=256).contains(&r) {
            return Err(Error::InvalidSpec(format!(
                "alphabet size {r} outside [2, 256]"
            )));
        }
        if rho.len() != a.len() || a.len() != m.len() {
            return Err(Error::InvalidSpec(format!(
                "{} residue maps, {} residues and {} moduli",
                rho.len(),
                a.len(),
                m.len()
            )));
        }
        for (i, (&ai, &mi)) in a.iter().zip(&m).enumerate() {
            if mi == 0 {
                return Err(Error::InvalidSpec(format!("modulus m_{} is zero", i + 1)));
            }
            if ai >= mi {
                return Err(Error::InvalidSpec(format!(
                    "residue a_{} = {ai} not below m = {mi}",
                    i + 1
                )));
            }
        }
        for f in &rho {
            if let Some(h) = f.as_linear() {
                if h.len() != n {
                    return Err(Error::InvalidSpec(format!(
                        "linear residue map has {} weights for length {n}",
                        h.len()
                    )));
                }
            }
        }
        Ok(ScSpec { n, r, rho, a, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn rho(&self) -> &[ResidueFunctional] {
        &self.rho
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    /// Number of congruences `s`.
    pub fn s(&self) -> usize {
        self.rho.len()
    }

    /// A copy with every residue map behind the opaque interface.
    pub fn with_opaque_maps(&self) -> Self {
        ScSpec {
            rho: self.rho.iter().map(ResidueFunctional::to_opaque).collect(),
            ..self.clone()
        }
    }
}

/// Binary linear congruence code `{ x in {0,1}^n : sum h_i x_i = a (mod m) }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlcSpec {
    pub n: usize,
    pub m: u64,
    pub a: u64,
    pub h: Vec<i64>,
}

impl BlcSpec {
    pub fn new(n: usize, m: u64, a: u64, h: Vec<i64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("modulus is zero".into()));
        }
        if a >= m {
            return Err(Error::InvalidSpec(format!(
                "residue {a} not below modulus {m}"
            )));
        }
        if h.len() != n {
            return Err(Error::InvalidSpec(format!(
                "{} weights for length {n}",
                h.len()
            )));
        }
        Ok(BlcSpec { n, m, a, h })
    }

    pub fn to_sc(&self) -> ScSpec {
        ScSpec {
            n: self.n,
            r: 2,
            rho: vec![ResidueFunctional::Linear(self.h.clone())],
            a: vec![self.a],
            m: vec![self.m],
        }
    }
}

/// `VT_a(n) = { x in {0,1}^n : sum i x_i = a (mod n + 1) }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VtSpec {
    pub n: usize,
    pub a: u64,
}

impl VtSpec {
    pub fn new(n: usize, a: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("VT length must be positive".into()));
        }
        if a > n as u64 {
            return Err(Error::InvalidSpec(format!(
                "VT residue {a} exceeds n = {n}"
            )));
        }
        Ok(VtSpec { n, a })
    }

    /// The modulus `m = n + 1`.
    pub fn modulus(&self) -> u64 {
        self.n as u64 + 1
    }

    pub fn to_blc(&self) -> BlcSpec {
        BlcSpec {
            n: self.n,
            m: self.modulus(),
            a: self.a,
            h: (1..=self.n as i64).collect(),
        }
    }
}

/// Any of the three code families.
#[derive(Clone, Debug)]
pub enum CodeSpec {
    Vt(VtSpec),
    Blc(BlcSpec),
    Sc(ScSpec),
}

impl CodeSpec {
    pub fn to_sc(&self) -> ScSpec {
        match self {
            CodeSpec::Vt(v) => v.to_blc().to_sc(),
            CodeSpec::Blc(b) => b.to_sc(),
            CodeSpec::Sc(s) => s.clone(),
        }
    }

    /// The BLC view, when the code is binary with one linear congruence.
    pub fn as_blc(&self) -> Option<BlcSpec> {
        match self {
            CodeSpec::Vt(v) => Some(v.to_blc()),
            CodeSpec::Blc(b) => Some(b.clone()),
            CodeSpec::Sc(s) => {
                if s.r != 2 || s.s() != 1 {
                    return None;
                }
                let h = s.rho[0].as_linear()?;
                Some(BlcSpec {
                    n: s.n,
                    m: s.m[0],
                    a: s.a[0],
                    h: h.to_vec(),
                })
            }
        }
    }

    pub fn n(&self) -> usize {
        match self {
            CodeSpec::Vt(v) => v.n,
            CodeSpec::Blc(b) => b.n,
            CodeSpec::Sc(s) => s.n,
        }
    }

    pub fn r(&self) -> u32 {
        match self {
            CodeSpec::Sc(s) => s.r,
            _ => 2,
        }
    }

    pub fn to_json_value(&self) -> Result<CodeSpecJson> {
        Ok(match self {
            CodeSpec::Vt(v) => CodeSpecJson::Vt {
                n: v.n,
                a: v.a,
                indexing: Indexing::OneBased,
            },
            CodeSpec::Blc(b) => CodeSpecJson::Blc {
                n: b.n,
                m: b.m,
                a: b.a,
                h: b.h.clone(),
                indexing: Indexing::OneBased,
            },
            CodeSpec::Sc(s) => CodeSpecJson::Sc {
                n: s.n,
                r: s.r,
                a: s.a.clone(),
                m: s.m.clone(),
                rho: s
                    .rho
                    .iter()
                    .map(|f| {
                        f.as_linear().map(<[i64]>::to_vec).ok_or_else(|| {
                            Error::Unsupported("opaque residue maps cannot be serialized".into())
                        })
                    })
                    .collect::<Result<_>>()?,
                indexing: Indexing::OneBased,
            },
        })
    }

    pub fn from_json_value(v: CodeSpecJson) -> Result<Self> {
        Ok(match v {
            CodeSpecJson::Vt { n, a, .. } => CodeSpec::Vt(VtSpec::new(n, a)?),
            CodeSpecJson::Blc { n, m, a, h, .. } => CodeSpec::Blc(BlcSpec::new(n, m, a, h)?),
            CodeSpecJson::Sc {
                n, r, a, m, rho, ..
            } => CodeSpec::Sc(ScSpec::new(
                n,
                r,
                rho.into_iter().map(ResidueFunctional::Linear).collect(),
                a,
                m,
            )?),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json_value()?)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(serde_json::from_str(s)?)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Vt(v) => write!(f, "VT_{}({})", v.a, v.n),
            CodeSpec::Blc(b) => write!(f, "BLC_{}(n={}, m={}, h={:?})", b.a, b.n, b.m, b.h),
            CodeSpec::Sc(s) => write!(f, "SC(n={}, r={}, a={:?}, m={:?})", s.n, s.r, s.a, s.m),
        }
    }
}

/// Position convention of the residue maps in the JSON form. Only
/// `"one-based"` exists; it is written out so that files are explicit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Indexing {
    #[default]
    #[serde(rename = "one-based")]
    OneBased,
}

/// On-disk form of a code spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CodeSpecJson {
    Vt {
        n: usize,
        a: u64,
        #[serde(default)]
        indexing: Indexing,
    },
    Blc {
        n: usize,
        m: u64,
        a: u64,
        h: Vec<i64>,
        #[serde(default)]
        indexing: Indexing,
    },
    Sc {
        n: usize,
        r: u32,
        a: Vec<u64>,
        m: Vec<u64>,
        /// One weight vector per congruence.
        rho: Vec<Vec<i64>>,
        #[serde(default)]
        indexing: Indexing,
    },
}

/// Limit on `r^n`, the number of words a brute-force pass may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub max_log2: u32,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard { max_log2: 34 }
    }
}

impl EnumerationGuard {
    pub fn check(&self, r: u32, n: usize) -> Result<()> {
        let size = BigUint::from(r).pow(n as u32);
        let limit = BigUint::from(1u8) << self.max_log2 as usize;
        if size > limit {
            return Err(Error::guard(
                format!("{r}^{n}"),
                size,
                format!("2^{}", self.max_log2),
            ));
        }
        Ok(())
    }
}

fn check_word(x: &[u8], spec: &ScSpec) -> Result<()> {
    if x.len() != spec.n {
        return Err(Error::LengthMismatch {
            expected: spec.n,
            got: x.len(),
        });
    }
    if let Some(&s) = x.iter().find(|&&s| s as u32 >= spec.r) {
        return Err(Error::SymbolOutOfRange {
            symbol: s as u32,
            r: spec.r,
        });
    }
    Ok(())
}

pub fn evaluate_rho(rho: &ResidueFunctional, x: &Word) -> Result<BigInt> {
    rho.evaluate(x)
}

pub fn membership(x: &Word, spec: &ScSpec) -> Result<bool> {
    check_word(x, spec)?;
    is_member_unchecked(x, spec)
}

fn is_member_unchecked(x: &[u8], spec: &ScSpec) -> Result<bool> {
    for ((rho, &a), &m) in spec.rho.iter().zip(&spec.a).zip(&spec.m) {
        if rho.residue(x, m)? != a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All of `[r]^n` in lexicographic order (`x_1` most significant).
#[derive(Clone, Debug)]
pub struct AllWords {
    r: u8,
    next: Option<Vec<u8>>,
}

impl AllWords {
    pub fn new(n: usize, r: u32) -> Self {
        AllWords {
            r: (r - 1) as u8,
            next: Some(vec![0; n]),
        }
    }
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            if succ[i] < self.r {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Word(cur))
    }
}

/// Codewords of `spec` in lexicographic order. Fails up front when `r^n`
/// exceeds the guard.
pub fn enumerate_codewords(
    spec: &ScSpec,
    guard: EnumerationGuard,
) -> Result<impl Iterator<Item = Word> + '_> {
    guard.check(spec.r, spec.n)?;
    Ok(
        AllWords::new(spec.n, spec.r)
            .filter(move |w| is_member_unchecked(w, spec).unwrap_or(false)),
    )
}

/// `|VT_a(n)|` for `a = 0..=n`.
pub fn cardinality_profile(n: usize, guard: EnumerationGuard) -> Result<Vec<u64>> {
    guard.check(2, n)?;
    let m = n as u64 + 1;
    let mut counts = vec![0u64; m as usize];
    // Gray-code walk: one position flips per step, so the checksum updates in O(1).
    let mut omega = 0u64;
    let mut bits = 0u64;
    counts[0] += 1;
    for step in 1u64..(1u64 << n) {
        let pos = step.trailing_zeros() as u64;
        bits ^= 1 << pos;
        let weight = (pos + 1) % m;
        omega = if bits & (1 << pos) != 0 {
            (omega + weight) % m
        } else {
            (omega + m - weight) % m
        };
        counts[omega as usize] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn vt(n: usize, a: u64) -> ScSpec {
        VtSpec::new(n, a).unwrap().to_blc().to_sc()
    }

    #[test]
    fn vt_membership() {
        let spec = vt(5, 0);
        assert!(membership(&"10001".parse().unwrap(), &spec).unwrap());
        assert!(membership(&"00000".parse().unwrap(), &spec).unwrap());
        assert!(!membership(&"10000".parse().unwrap(), &spec).unwrap());
    }

    #[test]
    fn membership_rejects_bad_words() {
        let spec = vt(5, 0);
        assert!(matches!(
            membership(&"1000".parse().unwrap(), &spec),
            Err(Error::LengthMismatch {
                expected: 5,
                got: 4
            })
        ));
        assert!(matches!(
            membership(&"10002".parse().unwrap(), &spec),
            Err(Error::SymbolOutOfRange { symbol: 2, r: 2 })
        ));
    }

    #[test]
    fn rho_values() {
        let omega = ResidueFunctional::vt_checksum(5);
        assert_eq!(
            evaluate_rho(&omega, &"10001".parse().unwrap()).unwrap(),
            6.into()
        );
        assert_eq!(
            evaluate_rho(&omega, &"00000".parse().unwrap()).unwrap(),
            0.into()
        );
        let l = ResidueFunctional::Linear(vec![1, 2, 3]);
        assert_eq!(evaluate_rho(&l, &"111".parse().unwrap()).unwrap(), 6.into());
        assert!(evaluate_rho(&l, &"11".parse().unwrap()).is_err());
    }

    #[test]
    fn negative_weights_reduce_into_range() {
        let l = ResidueFunctional::Linear(vec![-3, 1]);
        assert_eq!(l.residue(&[1, 0], 5).unwrap(), 2);
        assert_eq!(l.to_opaque().residue(&[1, 0], 5).unwrap(), 2);
    }

    #[test]
    fn enumeration_examples() {
        let g = EnumerationGuard::default();
        let mut got: Vec<_> = enumerate_codewords(&vt(5, 0), g).unwrap().collect();
        let mut want = words(&["00000", "10001", "01010", "00111", "11100", "11011"]);
        // lexicographic order
        assert!(got.windows(2).all(|w| w[0] < w[1]));
        got.sort();
        want.sort();
        assert_eq!(got, want);

        let even = BlcSpec::new(3, 2, 0, vec![1, 1, 1]).unwrap().to_sc();
        let got: Vec<_> = enumerate_codewords(&even, g).unwrap().collect();
        assert_eq!(got, words(&["000", "011", "101", "110"]));

        let single = BlcSpec::new(3, 7, 0, vec![1, 2, 3]).unwrap().to_sc();
        let got: Vec<_> = enumerate_codewords(&single, g).unwrap().collect();
        assert_eq!(got, words(&["000"]));
    }

    #[test]
    fn guard_trips_with_bound() {
        let g = EnumerationGuard { max_log2: 10 };
        match enumerate_codewords(&vt(11, 0), g) {
            Err(Error::GuardExceeded { limit, .. }) => assert_eq!(limit, "2^10"),
            _ => panic!("guard should trip"),
        }
        assert!(enumerate_codewords(&vt(10, 0), g).is_ok());
        assert!(cardinality_profile(11, g).is_err());
    }

    #[test]
    fn cardinalities() {
        let g = EnumerationGuard::default();
        assert_eq!(cardinality_profile(5, g).unwrap()[0], 6);
        assert!(cardinality_profile(15, g)
            .unwrap()
            .iter()
            .all(|&c| c == 2048));
        for n in 1..=15 {
            let prof = cardinality_profile(n, g).unwrap();
            assert_eq!(prof.iter().sum::<u64>(), 1 << n);
            assert_eq!(prof.iter().max(), prof.first());
            for (a, &c) in prof.iter().enumerate().take(4) {
                let direct = enumerate_codewords(&vt(n, a as u64), g).unwrap().count();
                assert_eq!(direct as u64, c);
            }
        }
    }

    #[test]
    fn conversions_preserve_codewords() {
        let g = EnumerationGuard::default();
        for n in 1..=8 {
            for a in 0..=n as u64 {
                let v = VtSpec::new(n, a).unwrap();
                let via_blc: Vec<_> = enumerate_codewords(&v.to_blc().to_sc(), g)
                    .unwrap()
                    .collect();
                let sc = CodeSpec::Vt(v).to_sc().with_opaque_maps();
                let via_opaque: Vec<_> = enumerate_codewords(&sc, g).unwrap().collect();
                assert_eq!(via_blc, via_opaque);
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(VtSpec::new(5, 6).is_err());
        assert!(BlcSpec::new(3, 2, 2, vec![1, 1, 1]).is_err());
        assert!(BlcSpec::new(3, 2, 0, vec![1, 1]).is_err());
        assert!(ScSpec::new(2, 3, vec![], vec![0], vec![2]).is_err());
        assert!(ScSpec::new(2, 1, vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn json_forms() {
        let s = CodeSpec::Vt(VtSpec::new(5, 0).unwrap()).to_json().unwrap();
        assert_eq!(s, r#"{"kind":"vt","n":5,"a":0,"indexing":"one-based"}"#);
        let back = CodeSpec::from_json(r#"{"kind":"blc","n":3,"m":2,"a":0,"h":[1,1,1]}"#).unwrap();
        assert_eq!(
            back.as_blc().unwrap(),
            BlcSpec::new(3, 2, 0, vec![1, 1, 1]).unwrap()
        );
        assert!(
            CodeSpec::from_json(r#"{"kind":"vt","n":5,"a":0,"indexing":"zero-based"}"#).is_err()
        );
        assert!(CodeSpec::from_json(r#"{"kind":"vt","n":5,"a":9}"#).is_err());
        let opaque = CodeSpec::Sc(vt(3, 0).with_opaque_maps());
        assert!(matches!(opaque.to_json(), Err(Error::Unsupported(_))));
    }

    fn arb_blc() -> impl Strategy<Value = BlcSpec> {
        (1usize..=10, 1u64..=12).prop_flat_map(|(n, m)| {
            (prop::collection::vec(-5i64..=5, n), 0..m)
                .prop_map(move |(h, a)| BlcSpec::new(n, m, a, h).unwrap())
        })
    }

    proptest! {
        #[test]
        fn membership_agrees_with_enumeration(spec in arb_blc()) {
            let sc = spec.to_sc();
            let code: Vec<_> = enumerate_codewords(&sc, EnumerationGuard::default()).unwrap().collect();
            for w in AllWords::new(sc.n(), 2) {
                prop_assert_eq!(membership(&w, &sc).unwrap(), code.binary_search(&w).is_ok());
            }
        }

        #[test]
        fn json_round_trip(spec in arb_blc()) {
            let code = CodeSpec::Blc(spec.clone());
            let back = CodeSpec::from_json(&code.to_json().unwrap()).unwrap();
            prop_assert_eq!(back.as_blc().unwrap(), spec);
        }
    }
}
