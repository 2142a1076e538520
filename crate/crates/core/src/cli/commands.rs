use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::time::Instant;

use num_integer::Integer;
use serde::Serialize;

use super::render::{self, first_difference};
use super::{
    open_output, BtableCommand, CliError, CliResult, CodeArgs, Format, MethodArg, NumericArgs,
    SpectrumArgs, Table1Args, VerifyArgs,
};
use crate::codes::{BlcSpec, CodeSpec, EnumerationGuard, VtSpec};
use crate::distances::DistanceKind;
use crate::error::Error;
use crate::exec::Execution;
use crate::oracle::{brute_enumerator, BruteOptions, Enumerator, Method};
use crate::polynomial::{with_escalation, Precision};
use crate::spectral::{random_blc_corpus, spectral_enumerator, SpectralOptions};
use crate::vtfast::{
    build_btable, property_violations, vt_fast_enumerator, vt_fast_enumerators, vt_fast_from_table,
    BTable, FastOptions, Strategy,
};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("--{family} needs --{flag}")))
}

pub(crate) fn build_code(c: &CodeArgs) -> CliResult<CodeSpec> {
    if c.vt {
        let n = need(c.n, "n", "vt")?;
        let a = need(c.a, "a", "vt")?;
        return Ok(CodeSpec::Vt(VtSpec::new(n, a)?));
    }
    if c.blc {
        let n = need(c.n, "n", "blc")?;
        let m = need(c.m, "m", "blc")?;
        let a = need(c.a, "a", "blc")?;
        let h = c.h.clone().ok_or_else(|| usage("--blc needs --h"))?;
        return Ok(CodeSpec::Blc(BlcSpec::new(n, m, a, h)?));
    }
    let path = c
        .spec_file
        .as_ref()
        .ok_or_else(|| usage("choose one of --vt, --blc, --spec-file"))?;
    if c.n.is_some() || c.a.is_some() || c.m.is_some() || c.h.is_some() {
        return Err(usage(
            "--spec-file does not combine with --n, --a, --m or --h",
        ));
    }
    Ok(CodeSpec::from_json(&fs::read_to_string(path)?)?)
}

fn precision(bits: Option<u32>) -> CliResult<Option<Precision>> {
    Ok(bits.map(Precision::new).transpose()?)
}

fn brute_opts(n: &NumericArgs, exec: Execution) -> BruteOptions {
    BruteOptions {
        guard: EnumerationGuard {
            max_log2: n.guard_bits,
        },
        exec,
        ..Default::default()
    }
}

fn fast_applies(code: &CodeSpec, d: DistanceKind) -> bool {
    matches!(code, CodeSpec::Vt(_)) && d == DistanceKind::Hamming
}

fn spectral_applies(code: &CodeSpec, d: DistanceKind) -> bool {
    code.as_blc().is_some() && d == DistanceKind::Hamming
}

fn check_invariants(e: &Enumerator) -> CliResult<()> {
    let v = e.invariant_violations(None);
    if v.is_empty() {
        Ok(())
    } else {
        Err(CliError::Internal(format!(
            "{} result for {}: {}",
            e.method,
            e.code,
            v.join("; ")
        )))
    }
}

pub(crate) fn spectrum(args: &SpectrumArgs, exec: Execution) -> CliResult<()> {
    let code = build_code(&args.code)?;
    let distance = DistanceKind::parse(&args.distance, code.r())?;
    let prec = precision(args.numeric.precision)?;
    let methods: Vec<Method> = match args.method {
        MethodArg::All => {
            let mut v = vec![Method::Brute];
            if spectral_applies(&code, distance) {
                v.push(Method::Spectral);
            }
            if fast_applies(&code, distance) {
                v.push(Method::Fast);
            }
            v
        }
        MethodArg::Brute => vec![Method::Brute],
        MethodArg::Spectral => vec![Method::Spectral],
        MethodArg::Fast => vec![Method::Fast],
    };
    let mut results = Vec::with_capacity(methods.len());
    for method in methods {
        let e = match method {
            Method::Brute => brute_enumerator(&code, distance, brute_opts(&args.numeric, exec))?,
            Method::Spectral => {
                if !spectral_applies(&code, distance) {
                    return Err(Error::Unsupported(
                        "the spectral method needs a BLC-expressible code and Hamming distance"
                            .into(),
                    )
                    .into());
                }
                let opts = SpectralOptions {
                    precision: prec,
                    exec,
                    ..Default::default()
                };
                spectral_enumerator(&code, opts)?.with_code(code.clone())
            }
            Method::Fast => {
                let CodeSpec::Vt(vt) = &code else {
                    return Err(Error::Unsupported("the fast method needs a VT code".into()).into());
                };
                if distance != DistanceKind::Hamming {
                    return Err(Error::Unsupported(
                        "the fast method computes Hamming enumerators only".into(),
                    )
                    .into());
                }
                match &args.btable {
                    Some(path) => {
                        let table =
                            BTable::from_json(&fs::read_to_string(path)?, Some(vt.modulus()))?;
                        vt_fast_from_table(&table, &[vt.a], exec)?.remove(0)
                    }
                    None => {
                        let opts = FastOptions {
                            precision: prec,
                            strategy: args.strategy.into(),
                            exec,
                        };
                        vt_fast_enumerator(vt.n, vt.a, opts)?
                    }
                }
            }
        };
        check_invariants(&e)?;
        results.push(e);
    }
    if let Some(diff) = results
        .windows(2)
        .find_map(|w| first_difference(&w[0], &w[1]))
    {
        return Err(CliError::Mismatch(diff));
    }
    let mut out = open_output(args.output.output.as_ref())?;
    let labelled = args.method == MethodArg::All;
    render::enumerators(
        &mut *out,
        &results,
        args.output.format.unwrap_or(Format::Text),
        labelled,
    )?;
    out.flush()?;
    Ok(())
}

/// One column of the VT table: all residues sharing `d = gcd(a, n + 1)`.
#[derive(Serialize)]
struct Table1Column {
    d: u64,
    residues: Vec<u64>,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct Table1Json {
    schema_version: u32,
    n: usize,
    columns: Vec<Table1Column>,
}

/// Divisors of `m` in column order: `m` first, then the rest ascending.
fn column_divisors(m: u64) -> Vec<u64> {
    let mut v = vec![m];
    v.extend((1..m).filter(|d| m.is_multiple_of(*d)));
    v
}

pub(crate) fn table1(args: &Table1Args, exec: Execution) -> CliResult<()> {
    let n = args.n;
    if n == 0 {
        return Err(usage("table1 needs n >= 1"));
    }
    let m = n as u64 + 1;
    let residues: Vec<u64> = (0..m).collect();
    let opts = FastOptions {
        precision: precision(args.numeric.precision)?,
        exec,
        ..Default::default()
    };
    let all = vt_fast_enumerators(n, &residues, opts)?;

    let mut classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for a in 0..m {
        classes.entry(a.gcd(&m)).or_default().push(a as usize);
    }
    let mut columns = Vec::new();
    for d in column_divisors(m) {
        let members = &classes[&d];
        let rep = &all[members[0]];
        check_invariants(rep)?;
        for &a in &members[1..] {
            if let Some(diff) = first_difference(rep, &all[a]) {
                return Err(CliError::Internal(format!(
                    "residues in the class d={d} disagree: {diff}"
                )));
            }
        }
        if !args.no_brute {
            let brute = brute_enumerator(
                &rep.code,
                DistanceKind::Hamming,
                brute_opts(&args.numeric, exec),
            )?;
            if let Some(diff) = first_difference(rep, &brute) {
                return Err(CliError::Mismatch(diff));
            }
        }
        columns.push(Table1Column {
            d,
            residues: members.iter().map(|&a| a as u64).collect(),
            coeffs: rep
                .padded_coeffs(n + 1)
                .iter()
                .map(ToString::to_string)
                .collect(),
        });
    }

    let mut out = open_output(args.output.output.as_ref())?;
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["i".to_string()];
            header.extend(columns.iter().map(|c| format!("d={}", c.d)));
            render::csv_row(&mut w, &header)?;
            for i in 0..=n {
                let mut row = vec![i.to_string()];
                row.extend(columns.iter().map(|c| c.coeffs[i].clone()));
                render::csv_row(&mut w, &row)?;
            }
            out.write_all(&render::csv_bytes(w)?)?;
        }
        Format::Json => render::json_line(
            &mut *out,
            &Table1Json {
                schema_version: 1,
                n,
                columns,
            },
        )?,
        Format::Text => {
            let heads: Vec<String> = columns.iter().map(|c| format!("d = {}", c.d)).collect();
            let width = columns
                .iter()
                .flat_map(|c| c.coeffs.iter().map(String::len))
                .chain(heads.iter().map(String::len))
                .max()
                .unwrap_or(1);
            let iw = n.to_string().len().max(1);
            write!(out, "{:>iw$}", "i")?;
            for h in &heads {
                write!(out, "  {h:>width$}")?;
            }
            writeln!(out)?;
            for i in 0..=n {
                write!(out, "{i:>iw$}")?;
                for c in &columns {
                    write!(out, "  {:>width$}", c.coeffs[i])?;
                }
                writeln!(out)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

struct SuiteReport {
    name: &'static str,
    instances: usize,
    failures: Vec<String>,
    seconds: f64,
}

fn run_suite(
    name: &'static str,
    body: impl FnOnce(&mut Vec<String>) -> CliResult<usize>,
) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let instances = body(&mut failures)?;
    Ok(SuiteReport {
        name,
        instances,
        failures,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub(crate) fn verify(args: &VerifyArgs, exec: Execution, err: &mut dyn Write) -> CliResult<()> {
    let guard = EnumerationGuard {
        max_log2: args.numeric.guard_bits,
    };
    guard.check(2, args.n_max)?;
    let prec = precision(args.numeric.precision)?;
    let brute = brute_opts(&args.numeric, exec);

    let mut reports = Vec::new();
    reports.push(run_suite("fast-vs-brute", |fails| {
        let mut count = 0;
        for n in 1..=args.n_max {
            let residues: Vec<u64> = (0..=n as u64).collect();
            let fast = vt_fast_enumerators(
                n,
                &residues,
                FastOptions {
                    precision: prec,
                    exec,
                    ..Default::default()
                },
            )?;
            for e in &fast {
                let b = brute_enumerator(&e.code, DistanceKind::Hamming, brute)?;
                if let Some(d) = first_difference(e, &b) {
                    fails.push(d);
                }
                fails.extend(
                    e.invariant_violations(None)
                        .into_iter()
                        .map(|v| format!("{}: {v}", e.code)),
                );
                count += 1;
            }
        }
        Ok(count)
    })?);
    reports.push(run_suite("spectral-vs-brute", |fails| {
        let corpus = random_blc_corpus(args.corpus, args.seed);
        for spec in &corpus {
            let code = CodeSpec::Blc(spec.clone());
            let s = spectral_enumerator(
                &code,
                SpectralOptions {
                    precision: prec,
                    exec,
                    ..Default::default()
                },
            )?;
            let b = brute_enumerator(&code, DistanceKind::Hamming, brute)?;
            if let Some(d) = first_difference(&s, &b) {
                fails.push(d);
            }
        }
        Ok(corpus.len())
    })?);
    reports.push(run_suite("btable-properties", |fails| {
        for m in 1..=args.m_max {
            fails.extend(property_violations(m, exec)?);
        }
        Ok(args.m_max as usize)
    })?);

    let mut out = open_output(args.output.as_ref())?;
    let mut first_failure = None;
    for r in &reports {
        let status = if r.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        writeln!(
            out,
            "{status} {:<18} {:>5} instances {:>4} failures {:.2}s",
            r.name,
            r.instances,
            r.failures.len(),
            r.seconds
        )?;
        for f in r.failures.iter().take(5) {
            writeln!(err, "  {}: {f}", r.name)?;
        }
        if first_failure.is_none() {
            first_failure = r.failures.first().cloned();
        }
    }
    out.flush()?;
    match first_failure {
        Some(f) => Err(CliError::Mismatch(f)),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct BtableSummary {
    m: u64,
    precision_bits: u32,
    cells: usize,
    max_residual: f64,
    provenance: BTreeMap<String, usize>,
}

pub(crate) fn btable(cmd: BtableCommand, exec: Execution) -> CliResult<()> {
    match cmd {
        BtableCommand::Dump {
            m,
            strategy,
            precision: bits,
            output,
        } => {
            if m == 0 {
                return Err(usage("btable dump needs m >= 1"));
            }
            let start = precision(bits)?.unwrap_or_else(|| Precision::for_degree(m as usize));
            let strategy: Strategy = strategy.into();
            let table = with_escalation(start, |p| build_btable(m, p, strategy, exec))?;
            let mut out = open_output(output.as_ref())?;
            writeln!(out, "{}", table.to_json()?)?;
            out.flush()?;
        }
        BtableCommand::Load { input, verify } => {
            let table = BTable::from_json(&fs::read_to_string(&input)?, None)?;
            if verify {
                let fresh = build_btable(table.m(), table.precision(), Strategy::Naive, exec)?;
                if !fresh.same_polys(&table) {
                    let bad = (0..table.m() as i64)
                        .flat_map(|j| (0..table.m() as i64).map(move |k| (j, k)))
                        .find(|&(j, k)| fresh.get(j, k) != table.get(j, k))
                        .expect("tables differ somewhere");
                    return Err(CliError::Mismatch(format!(
                        "cached cell B[{},{}] differs from the recomputed one",
                        bad.0, bad.1
                    )));
                }
            }
            let summary = BtableSummary {
                m: table.m(),
                precision_bits: table.precision().bits(),
                cells: table.entries().len(),
                max_residual: table.max_residual(),
                provenance: table
                    .provenance_counts()
                    .into_iter()
                    .map(|(p, c)| (p.name().to_string(), c))
                    .collect(),
            };
            let mut out = open_output(None)?;
            render::json_line(&mut *out, &summary)?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_columns_follow_the_table_layout() {
        assert_eq!(column_divisors(16), vec![16, 1, 2, 4, 8]);
        assert_eq!(column_divisors(2), vec![2, 1]);
        assert_eq!(column_divisors(1), vec![1]);
    }

    #[test]
    fn code_flags() {
        let mut c = CodeArgs {
            vt: true,
            blc: false,
            spec_file: None,
            n: Some(5),
            a: Some(0),
            m: None,
            h: None,
        };
        assert!(
            matches!(build_code(&c).unwrap(), CodeSpec::Vt(v) if v == VtSpec::new(5, 0).unwrap())
        );
        c.a = None;
        assert!(matches!(build_code(&c), Err(CliError::Usage(_))));
    }
}
