//! Implementations of the subcommands.
//!
//! Data rows go to `--out` (stdout when omitted); human-readable summaries
//! go to stderr so piped CSV stays clean. Sweep bodies fan out over rayon;
//! row order is always preserved.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use rayon::prelude::*;

use farey_core::mainterms::{
    self, jump_correlation_report, PadicKind, DEFAULT_JUMP_FACTOR,
};
use farey_core::oracle;
use farey_core::products::{self, LogGTable, OrdGTable};
use farey_core::SieveTables;

use crate::output::{fmt_sig12, preamble, write_row, Format};
use crate::{CliError, Command, KindArg, MethodArg, OutputArgs};

fn open_sink(output: &OutputArgs) -> Result<Box<dyn Write>, CliError> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(p: u64) -> Result<(), CliError> {
    if !is_prime(p) {
        return Err(CliError::Config(format!("{p} is not prime")));
    }
    Ok(())
}

/// Resolves the mutually exclusive `--prime` / `--base` pair.
fn resolve_base(prime: Option<u64>, base: Option<u64>) -> Result<(u64, bool), CliError> {
    match (prime, base) {
        (Some(p), None) => {
            require_prime(p)?;
            Ok((p, true))
        }
        (None, Some(b)) => {
            if b < 2 {
                return Err(CliError::Config(format!("base {b} must be at least 2")));
            }
            Ok((b, false))
        }
        (None, None) => Err(CliError::Config("one of --prime or --base is required".into())),
        (Some(_), Some(_)) => {
            Err(CliError::Config("--prime and --base are mutually exclusive".into()))
        }
    }
}

pub fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Sieve { n_max, output } => sieve(n_max, &output),
        Command::Ordg { prime, base, n_max, output } => ordg(prime, base, n_max, &output),
        Command::Ordf { prime, base, n_max, method, output } => {
            ordf(prime, base, n_max, &method, &output)
        }
        Command::Table { prime, max_power, output } => table(prime, max_power, &output),
        Command::Remainder { kind, prime, n_max, output } => {
            remainder(kind, prime, n_max, &output)
        }
        Command::Scan { properties, integers, psq, prime, n_max, p_max, output } => {
            scan(properties, integers, psq, prime, n_max, p_max, &output)
        }
        Command::Jumps { prime, n_max, output } => jumps(prime, n_max, &output),
    }
}

fn sieve(n_max: u64, output: &OutputArgs) -> Result<(), CliError> {
    let format: Format = output.format.into();
    let t = SieveTables::build(n_max)?;
    let mut w = open_sink(output)?;
    let config = format!("sieve --n-max {n_max} --format {}", format.name());
    preamble(&mut w, &config, format, &["k", "phi", "mu", "mertens", "phi_sum", "psi"])?;
    for k in 1..=n_max {
        write_row(
            &mut w,
            format,
            &[
                k.to_string(),
                t.phi(k).to_string(),
                t.mu(k).to_string(),
                t.mertens(k).to_string(),
                t.phi_summatory(k)?.to_string(),
                fmt_sig12(t.psi(k)),
            ],
        )?;
    }
    w.flush()?;
    Ok(())
}

fn ordg(prime: Option<u64>, base: Option<u64>, n_max: u64, output: &OutputArgs) -> Result<(), CliError> {
    let format: Format = output.format.into();
    let (b, is_p) = resolve_base(prime, base)?;
    let g = OrdGTable::build(b, n_max)?;
    let mut w = open_sink(output)?;
    let flag = if is_p { format!("-p {b}") } else { format!("-b {b}") };
    let config = format!("ordg {flag} --n-max {n_max} --format {}", format.name());
    preamble(&mut w, &config, format, &["n", "value"])?;
    for n in 1..=n_max {
        write_row(&mut w, format, &[n.to_string(), g.value(n).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn method_series(
    method: MethodArg,
    base: u64,
    n_max: u64,
    t: &SieveTables,
) -> Result<Vec<i64>, CliError> {
    match method {
        MethodArg::Inversion => {
            let g = OrdGTable::build(base, n_max)?;
            (1..=n_max)
                .into_par_iter()
                .map(|n| products::ord_f_from_table(&g, n, t).map_err(CliError::from))
                .collect()
        }
        MethodArg::Direct => (1..=n_max)
            .into_par_iter()
            .map(|n| products::ord_f_direct(base, n, t).map_err(CliError::from))
            .collect(),
        MethodArg::Oracle => Ok(oracle::oracle_ord_f_series(base, n_max)?),
    }
}

fn ordf(
    prime: Option<u64>,
    base: Option<u64>,
    n_max: u64,
    methods: &[MethodArg],
    output: &OutputArgs,
) -> Result<(), CliError> {
    let format: Format = output.format.into();
    let (b, is_p) = resolve_base(prime, base)?;
    let mut dedup: Vec<MethodArg> = Vec::new();
    for &m in methods {
        if !dedup.contains(&m) {
            dedup.push(m);
        }
    }
    if dedup.is_empty() {
        return Err(CliError::Config("at least one --method is required".into()));
    }
    if !is_p && dedup.iter().any(|&m| m != MethodArg::Inversion) {
        return Err(CliError::Config(
            "composite --base supports only the inversion method".into(),
        ));
    }
    if dedup.contains(&MethodArg::Oracle) && n_max > oracle::ENUMERATION_CEILING {
        return Err(CliError::Config(format!(
            "oracle method is capped at n-max {}",
            oracle::ENUMERATION_CEILING
        )));
    }
    let t = SieveTables::build(n_max)?;
    let columns: Vec<Vec<i64>> = dedup
        .iter()
        .map(|&m| method_series(m, b, n_max, &t))
        .collect::<Result<_, _>>()?;

    let mut mismatches = 0u64;
    for i in 0..n_max as usize {
        if columns.iter().any(|c| c[i] != columns[0][i]) {
            mismatches += 1;
        }
    }

    let mut w = open_sink(output)?;
    let flag = if is_p { format!("-p {b}") } else { format!("-b {b}") };
    let names: Vec<&str> = dedup.iter().map(|m| m.name()).collect();
    let config = format!(
        "ordf {flag} --n-max {n_max} --method {} --format {}",
        names.join(","),
        format.name()
    );
    let mut header = vec!["n"];
    header.extend(names.iter());
    preamble(&mut w, &config, format, &header)?;
    for i in 0..n_max as usize {
        let mut fields = vec![(i as u64 + 1).to_string()];
        fields.extend(columns.iter().map(|c| c[i].to_string()));
        write_row(&mut w, format, &fields)?;
    }
    if dedup.len() > 1 {
        writeln!(w, "# mismatch_count = {mismatches}")?;
    }
    w.flush()?;
    if mismatches > 0 {
        eprintln!("farey: {mismatches} rows disagree across methods");
        return Err(CliError::CrossCheck(format!("{mismatches} method mismatches")));
    }
    Ok(())
}

fn table(prime: u64, max_power: u32, output: &OutputArgs) -> Result<(), CliError> {
    let format: Format = output.format.into();
    require_prime(prime)?;
    if max_power == 0 {
        return Err(CliError::Config("--max-power must be at least 1".into()));
    }
    let bound = prime
        .checked_pow(max_power)
        .and_then(|v| v.checked_sub(1))
        .ok_or_else(|| CliError::Config("p^max-power overflows".into()))?;
    let t = SieveTables::build(bound)?;
    let rows: Vec<(u32, u64, i64)> = (1..=max_power)
        .into_par_iter()
        .map(|r| {
            let n = prime.pow(r) - 1;
            let ord = products::ord_f_inversion(prime, n, &t)?;
            Ok::<_, CliError>((r, n, ord))
        })
        .collect::<Result<_, _>>()?;

    let mut w = open_sink(output)?;
    let config = format!(
        "table -p {prime} --max-power {max_power} --format {}",
        format.name()
    );
    preamble(&mut w, &config, format, &["r", "N", "ord", "ord_over_N", "ord_over_NlogN"])?;
    for (r, n, ord) in rows {
        let (r1, r2) = if ord == 0 {
            (0.0, 0.0)
        } else {
            let log_p_n = (n as f64).ln() / (prime as f64).ln();
            (-(ord as f64) / n as f64, -(ord as f64) / (n as f64 * log_p_n))
        };
        write_row(
            &mut w,
            format,
            &[r.to_string(), n.to_string(), ord.to_string(), format!("{r1:.4}"), format!("{r2:.4}")],
        )?;
    }
    w.flush()?;
    Ok(())
}

fn remainder(
    kind: KindArg,
    prime: Option<u64>,
    n_max: u64,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let format: Format = output.format.into();
    let config_prime = match (kind.is_padic(), prime) {
        (true, Some(p)) => {
            require_prime(p)?;
            format!(" -p {p}")
        }
        (true, None) => {
            return Err(CliError::Config(format!("--kind {} requires --prime", kind.name())))
        }
        (false, Some(_)) => {
            return Err(CliError::Config(format!(
                "--prime does not apply to --kind {}",
                kind.name()
            )))
        }
        (false, None) => String::new(),
    };
    let t = SieveTables::build(n_max)?;
    let config =
        format!("remainder --kind {}{config_prime} --n-max {n_max} --format {}", kind.name(), format.name());

    let mut w = open_sink(output)?;
    match kind {
        KindArg::Mikolas => {
            if n_max < 2 {
                return Err(CliError::Config("mikolas series starts at n = 2".into()));
            }
            let g = LogGTable::with_bound(n_max);
            let rows: Vec<(f64, f64)> = (2..=n_max)
                .into_par_iter()
                .map(|n| {
                    let main = t.phi_summatory(n)? as f64 - t.psi(n) / 2.0;
                    let rem = mainterms::mikolas_remainder(n, &t, &g)?;
                    Ok::<_, CliError>((main, rem))
                })
                .collect::<Result<_, _>>()?;
            preamble(&mut w, &config, format, &["n", "main", "remainder"])?;
            for (i, (main, rem)) in rows.iter().enumerate() {
                write_row(
                    &mut w,
                    format,
                    &[(i as u64 + 2).to_string(), fmt_sig12(*main), fmt_sig12(*rem)],
                )?;
            }
        }
        KindArg::Inf => {
            let g = LogGTable::with_bound(n_max);
            let rows: Vec<(f64, f64)> = (1..=n_max)
                .into_par_iter()
                .map(|n| {
                    let main = mainterms::phi_inf(n, &t, &g)?;
                    let rem = mainterms::r_inf(n, &t, &g)?;
                    Ok::<_, CliError>((main.value, rem.value))
                })
                .collect::<Result<_, _>>()?;
            preamble(&mut w, &config, format, &["n", "main", "remainder"])?;
            for (i, (main, rem)) in rows.iter().enumerate() {
                write_row(
                    &mut w,
                    format,
                    &[(i as u64 + 1).to_string(), fmt_sig12(*main), fmt_sig12(*rem)],
                )?;
            }
        }
        KindArg::P0 | KindArg::P1 | KindArg::P2 => {
            let p = prime.expect("validated above");
            let pk = match kind {
                KindArg::P0 => PadicKind::P0,
                KindArg::P1 => PadicKind::P1,
                _ => PadicKind::P2,
            };
            let rows: Vec<(i64, i64)> = (1..=n_max)
                .into_par_iter()
                .map(|n| {
                    let (main, rem) = mainterms::padic_split(pk, p, n, &t)?;
                    Ok::<_, CliError>((main.numer, rem.numer))
                })
                .collect::<Result<_, _>>()?;
            let denom = p - 1;
            preamble(
                &mut w,
                &config,
                format,
                &["n", "main", "remainder", "remainder_num", "denominator"],
            )?;
            for (i, (main_num, rem_num)) in rows.iter().enumerate() {
                write_row(
                    &mut w,
                    format,
                    &[
                        (i as u64 + 1).to_string(),
                        fmt_sig12(*main_num as f64 / denom as f64),
                        fmt_sig12(*rem_num as f64 / denom as f64),
                        rem_num.to_string(),
                        denom.to_string(),
                    ],
                )?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn scan(
    properties: bool,
    integers: bool,
    psq: bool,
    prime: Option<u64>,
    n_max: Option<u64>,
    p_max: Option<u64>,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let format: Format = output.format.into();
    let modes = properties as u8 + integers as u8 + psq as u8;
    if modes != 1 {
        return Err(CliError::Config(
            "exactly one of --properties, --integers, --psq is required".into(),
        ));
    }
    if integers {
        let n_max = n_max.ok_or_else(|| CliError::Config("--integers requires --n-max".into()))?;
        let t = SieveTables::build(n_max)?;
        let list = products::integer_farey_scan(n_max, &t)?;
        let mut w = open_sink(output)?;
        let config = format!("scan --integers --n-max {n_max} --format {}", format.name());
        preamble(&mut w, &config, format, &["n"])?;
        for n in &list {
            write_row(&mut w, format, &[n.to_string()])?;
        }
        writeln!(w, "# count = {}", list.len())?;
        writeln!(w, "# max = {}", list.last().copied().unwrap_or(0))?;
        w.flush()?;
        eprintln!(
            "integral reciprocal products up to {n_max}: {} values, largest {}",
            list.len(),
            list.last().copied().unwrap_or(0)
        );
        return Ok(());
    }
    if psq {
        let p_max = p_max.ok_or_else(|| CliError::Config("--psq requires --p-max".into()))?;
        if p_max < 4 {
            return Err(CliError::Config("--p-max must be at least 4".into()));
        }
        let small = SieveTables::build(p_max - 1)?;
        let odd_primes: Vec<u64> =
            small.primes().iter().map(|&p| p as u64).filter(|&p| p >= 3).collect();
        let largest = *odd_primes.last().expect("p-max >= 4 gives at least p = 3");
        let t = SieveTables::build(largest * largest - 1)?;
        let rows: Vec<(u64, u64, i64, i64)> = odd_primes
            .par_iter()
            .map(|&p| {
                let n = p * p - 1;
                let closed = products::ord_f_psq_closed(p)?;
                let inv = products::ord_f_inversion(p, n, &t)?;
                Ok::<_, CliError>((p, n, closed, inv))
            })
            .collect::<Result<_, _>>()?;
        let mut w = open_sink(output)?;
        let config = format!("scan --psq --p-max {p_max} --format {}", format.name());
        preamble(&mut w, &config, format, &["p", "N", "ord_closed", "ord_inversion", "ord_over_NlogN"])?;
        let mut mismatches = 0u64;
        let mut max_value = i64::MIN;
        let mut min_ratio = f64::INFINITY;
        for (p, n, closed, inv) in &rows {
            if closed != inv {
                mismatches += 1;
            }
            max_value = max_value.max(*closed);
            let ratio = *closed as f64 / (*n as f64 * (*n as f64).ln() / (*p as f64).ln());
            min_ratio = min_ratio.min(ratio);
            write_row(
                &mut w,
                format,
                &[
                    p.to_string(),
                    n.to_string(),
                    closed.to_string(),
                    inv.to_string(),
                    fmt_sig12(ratio),
                ],
            )?;
        }
        writeln!(w, "# mismatch_count = {mismatches}")?;
        writeln!(w, "# max_value = {max_value}")?;
        writeln!(w, "# min_ratio = {}", fmt_sig12(min_ratio))?;
        w.flush()?;
        eprintln!(
            "p^2-1 scan over {} odd primes: max value {max_value}, ratio envelope {min_ratio:.4}",
            rows.len()
        );
        if mismatches > 0 {
            return Err(CliError::CrossCheck(format!(
                "{mismatches} closed-form/inversion mismatches"
            )));
        }
        return Ok(());
    }
    // --properties
    let p = prime.ok_or_else(|| CliError::Config("--properties requires --prime".into()))?;
    require_prime(p)?;
    let n_max = n_max.ok_or_else(|| CliError::Config("--properties requires --n-max".into()))?;
    let t = SieveTables::build(n_max)?;
    let report = products::property_scan(p, n_max, &t)?;
    let mut w = open_sink(output)?;
    let config = format!("scan --properties -p {p} --n-max {n_max} --format {}", format.name());
    preamble(&mut w, &config, format, &["series", "k", "n", "value"])?;
    for pt in &report.at_power_minus_one {
        write_row(
            &mut w,
            format,
            &["power_minus_one".into(), pt.exponent.to_string(), pt.n.to_string(), pt.value.to_string()],
        )?;
    }
    for pt in &report.at_power {
        write_row(
            &mut w,
            format,
            &["power".into(), pt.exponent.to_string(), pt.n.to_string(), pt.value.to_string()],
        )?;
    }
    let total = report.count_positive + report.count_negative + report.count_zero;
    writeln!(w, "# nonpositive_violations = {:?}", report.nonpositive_violations)?;
    writeln!(w, "# positive_violations = {:?}", report.positive_violations)?;
    writeln!(
        w,
        "# sign_counts = positive {} ({:.4}), negative {} ({:.4}), zero {}",
        report.count_positive,
        report.count_positive as f64 / total as f64,
        report.count_negative,
        report.count_negative as f64 / total as f64,
        report.count_zero
    )?;
    writeln!(
        w,
        "# max_growth_ratio = {} at n = {}",
        fmt_sig12(report.max_growth_ratio),
        report.max_growth_ratio_n
    )?;
    w.flush()?;
    eprintln!(
        "property scan p={p} to {n_max}: {} nonpositivity violations, {} positivity violations, max |ord|/(n log_p n) = {:.4}",
        report.nonpositive_violations.len(),
        report.positive_violations.len(),
        report.max_growth_ratio
    );
    Ok(())
}

fn jumps(prime: u64, n_max: u64, output: &OutputArgs) -> Result<(), CliError> {
    let format: Format = output.format.into();
    require_prime(prime)?;
    let t = SieveTables::build(n_max)?;
    let g = LogGTable::with_bound(n_max);
    let report = jump_correlation_report(prime, n_max, DEFAULT_JUMP_FACTOR, &t, &g)?;
    let mut w = open_sink(output)?;
    let config = format!("jumps -p {prime} --n-max {n_max} --format {}", format.name());
    preamble(&mut w, &config, format, &["n", "delta_inf", "delta_p1", "mu_m"])?;
    for row in &report.rows {
        write_row(
            &mut w,
            format,
            &[
                row.n.to_string(),
                fmt_sig12(row.delta_inf),
                fmt_sig12(row.delta_p),
                row.mu_m.to_string(),
            ],
        )?;
    }
    writeln!(w, "# threshold_inf = {}", fmt_sig12(report.threshold_inf))?;
    writeln!(w, "# threshold_p1 = {}", fmt_sig12(report.threshold_p))?;
    writeln!(
        w,
        "# locations = common {}, inf_only {}, p_only {}",
        report.common_count, report.inf_only, report.p_only
    )?;
    writeln!(w, "# median_jump_ratio = {}", fmt_sig12(report.median_ratio))?;
    w.flush()?;
    eprintln!(
        "jump report p={prime} to {n_max}: {} common locations, median |delta_p1/delta_inf| = {:.3}",
        report.common_count, report.median_ratio
    );
    Ok(())
}
