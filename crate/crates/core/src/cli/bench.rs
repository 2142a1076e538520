//! Wall-clock timing of the methods on `VT_0(n)`.

use std::io::Write;
use std::time::Instant;

use super::render;
use super::{open_output, BenchArgs, BenchMethod, CliResult};
use crate::codes::{CodeSpec, EnumerationGuard, VtSpec};
use crate::distances::DistanceKind;
use crate::error::Error;
use crate::exec::Execution;
use crate::oracle::{brute_enumerator, BruteOptions};
use crate::polynomial::Precision;
use crate::spectral::{spectral_enumerator, SpectralOptions};
use crate::vtfast::{vt_fast_enumerator, FastOptions};

/// Least-squares slope of `log2 t` against `n`; `None` below two points.
pub fn fit_log2_per_n(points: &[(f64, f64)]) -> Option<f64> {
    slope(points.iter().map(|&(n, t)| (n, t.log2())))
}

/// Least-squares slope of `ln t` against `ln n`, the exponent `k` in `t ~ n^k`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Option<f64> {
    slope(points.iter().map(|&(n, t)| (n.ln(), t.ln())))
}

fn slope(pts: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let pts: Vec<(f64, f64)> = pts
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

fn time_once(method: BenchMethod, n: usize, args: &BenchArgs, exec: Execution) -> CliResult<f64> {
    let precision = args.numeric.precision.map(Precision::new).transpose()?;
    let code = CodeSpec::Vt(VtSpec::new(n, 0)?);
    let start = Instant::now();
    match method {
        BenchMethod::Brute => {
            let opts = BruteOptions {
                guard: EnumerationGuard {
                    max_log2: args.numeric.guard_bits,
                },
                exec,
                ..Default::default()
            };
            brute_enumerator(&code, DistanceKind::Hamming, opts)?;
        }
        BenchMethod::Spectral => {
            spectral_enumerator(
                &code,
                SpectralOptions {
                    precision,
                    exec,
                    ..Default::default()
                },
            )?;
        }
        BenchMethod::Fast => {
            vt_fast_enumerator(
                n,
                0,
                FastOptions {
                    precision,
                    exec,
                    ..Default::default()
                },
            )?;
        }
    }
    Ok(start.elapsed().as_secs_f64())
}

struct Row {
    method: &'static str,
    n: usize,
    min: f64,
    median: f64,
}

pub(crate) fn bench(args: &BenchArgs, exec: Execution) -> CliResult<()> {
    let mut ns = args.n.clone();
    ns.sort_unstable();
    ns.dedup();
    let repeats = args.repeats.max(1);
    let mut rows: Vec<Row> = Vec::new();
    for &method in &args.methods {
        let name = match method {
            BenchMethod::Brute => "brute",
            BenchMethod::Spectral => "spectral",
            BenchMethod::Fast => "fast",
        };
        for &n in &ns {
            if n == 0 || (method == BenchMethod::Brute && n > args.brute_max_n) {
                continue;
            }
            let mut times = Vec::with_capacity(repeats);
            for _ in 0..repeats {
                match time_once(method, n, args, exec) {
                    Ok(t) => times.push(t),
                    // over the guard: skip this length, like the brute cut-off
                    Err(super::CliError::Lib(Error::GuardExceeded { .. })) => break,
                    Err(e) => return Err(e),
                }
            }
            if times.is_empty() {
                continue;
            }
            times.sort_by(f64::total_cmp);
            rows.push(Row {
                method: name,
                n,
                min: times[0],
                median: times[times.len() / 2],
            });
        }
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "method",
        "n",
        "seconds_min",
        "seconds_median",
        "step_ratio",
        "log2_per_n",
        "power_law_exponent",
    ];
    render::csv_row(&mut w, &header.map(String::from))?;
    let fmt = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_default();
    for (i, r) in rows.iter().enumerate() {
        let same: Vec<(f64, f64)> = rows
            .iter()
            .filter(|o| o.method == r.method)
            .map(|o| (o.n as f64, o.min))
            .collect();
        let prev = i
            .checked_sub(1)
            .map(|p| &rows[p])
            .filter(|p| p.method == r.method);
        let ratio = prev.map(|p| r.min / p.min);
        render::csv_row(
            &mut w,
            &[
                r.method.to_string(),
                r.n.to_string(),
                format!("{:.6}", r.min),
                format!("{:.6}", r.median),
                fmt(ratio),
                fmt(fit_log2_per_n(&same)),
                fmt(fit_power_law(&same)),
            ],
        )?;
    }
    let mut out = open_output(args.output.as_ref())?;
    out.write_all(&render::csv_bytes(w)?)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fits_recover_exact_laws() {
        let exp: Vec<(f64, f64)> = (1..6).map(|n| (n as f64, 2f64.powi(2 * n))).collect();
        assert!((fit_log2_per_n(&exp).unwrap() - 2.0).abs() < 1e-12);
        let pow: Vec<(f64, f64)> = (1..6).map(|n| (n as f64, (n as f64).powi(4))).collect();
        assert!((fit_power_law(&pow).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(fit_power_law(&pow[..1]), None);
    }
}
