//! Distances on `[r]^n` that the brute-force enumerator can use.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    Hamming,
    /// Insertions and deletions only: `|x| + |y| - 2 LCS(x, y)`.
    Insdel,
    Levenshtein,
    /// Lee distance over `Z_r`.
    Lee(u32),
}

impl DistanceKind {
    pub fn name(&self) -> &'static str {
        match self {
            DistanceKind::Hamming => "hamming",
            DistanceKind::Insdel => "insdel",
            DistanceKind::Levenshtein => "levenshtein",
            DistanceKind::Lee(_) => "lee",
        }
    }

    /// Parses a CLI name; `lee` takes its alphabet size from `r`.
    pub fn parse(name: &str, r: u32) -> Result<Self> {
        match name {
            "hamming" => Ok(DistanceKind::Hamming),
            "insdel" => Ok(DistanceKind::Insdel),
            "levenshtein" => Ok(DistanceKind::Levenshtein),
            "lee" if r >= 2 => Ok(DistanceKind::Lee(r)),
            "lee" => Err(Error::InvalidSpec(format!(
                "Lee distance needs r >= 2, got {r}"
            ))),
            other => Err(Error::InvalidSpec(format!("unknown distance {other:?}"))),
        }
    }

    /// Largest value the distance can take on `[r]^n`.
    pub fn max_value(&self, n: usize) -> usize {
        match self {
            DistanceKind::Hamming | DistanceKind::Levenshtein => n,
            DistanceKind::Insdel => 2 * n,
            DistanceKind::Lee(r) => n * (*r as usize / 2),
        }
    }
}

impl FromStr for DistanceKind {
    type Err = Error;

    /// `lee` parses as `Lee(2)`; use [`DistanceKind::parse`] for other alphabets.
    fn from_str(s: &str) -> Result<Self> {
        DistanceKind::parse(s, 2)
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn distance(kind: DistanceKind, x: &[u8], y: &[u8]) -> Result<usize> {
    match kind {
        DistanceKind::Hamming => {
            same_length(x, y)?;
            Ok(hamming(x, y))
        }
        DistanceKind::Insdel => Ok(x.len() + y.len() - 2 * lcs(x, y)),
        DistanceKind::Levenshtein => Ok(levenshtein(x, y)),
        DistanceKind::Lee(r) => {
            same_length(x, y)?;
            lee(x, y, r)
        }
    }
}

fn same_length(x: &[u8], y: &[u8]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(())
}

fn hamming(x: &[u8], y: &[u8]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

fn lcs(x: &[u8], y: &[u8]) -> usize {
    let mut row = vec![0usize; y.len() + 1];
    for &a in x {
        let mut diag = 0;
        for (j, &b) in y.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if a == b { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[y.len()]
}

fn levenshtein(x: &[u8], y: &[u8]) -> usize {
    let mut row: Vec<usize> = (0..=y.len()).collect();
    for (i, &a) in x.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, &b) in y.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = (diag + usize::from(a != b)).min(up + 1).min(row[j] + 1);
            diag = up;
        }
    }
    row[y.len()]
}

fn lee(x: &[u8], y: &[u8], r: u32) -> Result<usize> {
    let mut total = 0usize;
    for (&a, &b) in x.iter().zip(y) {
        for s in [a, b] {
            if s as u32 >= r {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as u32,
                    r,
                });
            }
        }
        let d = (a as i64 - b as i64).unsigned_abs() as usize;
        total += d.min(r as usize - d);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL: [DistanceKind; 4] = [
        DistanceKind::Hamming,
        DistanceKind::Insdel,
        DistanceKind::Levenshtein,
        DistanceKind::Lee(4),
    ];

    fn w(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn examples() {
        assert_eq!(
            distance(DistanceKind::Hamming, &w("10001"), &w("01010")).unwrap(),
            4
        );
        assert_eq!(
            distance(DistanceKind::Insdel, &w("110"), &w("101")).unwrap(),
            2
        );
        assert_eq!(
            distance(DistanceKind::Levenshtein, &w("110"), &w("101")).unwrap(),
            2
        );
        assert_eq!(distance(DistanceKind::Lee(4), &[0, 3], &[3, 1]).unwrap(), 3);
        for k in ALL {
            assert_eq!(distance(k, &w("0123"), &w("0123")).unwrap(), 0);
        }
    }

    #[test]
    fn unequal_lengths() {
        assert_eq!(
            distance(DistanceKind::Levenshtein, &w("111111"), &w("1")).unwrap(),
            5
        );
        assert_eq!(
            distance(DistanceKind::Insdel, &w("0110"), &w("11")).unwrap(),
            2
        );
        assert!(distance(DistanceKind::Hamming, &w("01"), &w("0")).is_err());
    }

    #[test]
    fn lee_rejects_out_of_range_symbols() {
        assert!(matches!(
            distance(DistanceKind::Lee(3), &[0, 3], &[0, 0]),
            Err(Error::SymbolOutOfRange { symbol: 3, r: 3 })
        ));
    }

    #[test]
    fn names_parse() {
        for k in ALL {
            assert_eq!(DistanceKind::parse(k.name(), 4).unwrap(), k);
        }
        assert!(DistanceKind::parse("lee", 1).is_err());
        assert!("manhattan".parse::<DistanceKind>().is_err());
    }

    fn triple(n: usize, r: u8) -> impl Strategy<Value = (Vec<u8>, Vec<u8>, Vec<u8>)> {
        let v = move || prop::collection::vec(0..r, n);
        (v(), v(), v())
    }

    proptest! {
        #[test]
        fn metric_axioms((x, y, z) in (1usize..9).prop_flat_map(|n| triple(n, 4))) {
            for k in ALL {
                let dxy = distance(k, &x, &y).unwrap();
                prop_assert_eq!(dxy, distance(k, &y, &x).unwrap());
                prop_assert!(dxy <= distance(k, &x, &z).unwrap() + distance(k, &z, &y).unwrap());
                prop_assert_eq!(dxy == 0, x == y);
                prop_assert!(dxy <= k.max_value(x.len()));
            }
        }

        #[test]
        fn edit_distance_ordering((x, y, _) in (1usize..10).prop_flat_map(|n| triple(n, 3))) {
            let ham = distance(DistanceKind::Hamming, &x, &y).unwrap();
            let ins = distance(DistanceKind::Insdel, &x, &y).unwrap();
            let lev = distance(DistanceKind::Levenshtein, &x, &y).unwrap();
            prop_assert!(lev <= ins && ins <= 2 * ham && lev <= ham);
        }

        #[test]
        fn binary_lee_is_hamming((x, y, _) in (1usize..12).prop_flat_map(|n| triple(n, 2))) {
            prop_assert_eq!(
                distance(DistanceKind::Lee(2), &x, &y).unwrap(),
                distance(DistanceKind::Hamming, &x, &y).unwrap()
            );
        }
    }
}
