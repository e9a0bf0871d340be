//! One function per subcommand: load input, run the core routines, shape
//! rows and meta, write.

use std::fs;
use std::io::Read;

use serde_json::{json, Map, Value as Json};

use pps_core::analysis::{
    default_p_max, detect_peaks, dna_walk, scan, sliding_window, synth_fig1, synth_repeat, Edit,
};
use pps_core::sequence::{parse_fasta, voss_map, AmbiguityPolicy, DnaSequence, IndicatorSet};
use pps_core::transform::{dft_power_dna, pps_dna, zero_pad_to_multiple};
use pps_core::Error;

use crate::output::{render, write_output, Table, Value};
use crate::{CliError, CompareArgs, Fig1Args, RepeatArgs, ScanArgs, WalkArgs, WindowArgs};

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

fn policy(strict: bool) -> AmbiguityPolicy {
    if strict {
        AmbiguityPolicy::Strict
    } else {
        AmbiguityPolicy::Lenient
    }
}

/// Parse errors that mean "no usable data" keep the I/O exit code; the
/// rest are validation failures.
fn load_records(path: &str, strict: bool) -> Result<Vec<DnaSequence>, CliError> {
    let text = read_input(path)?;
    parse_fasta(text.as_bytes(), policy(strict)).map_err(|e| match e {
        Error::EmptyInput | Error::EmptyRecord { .. } => CliError::Io(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    })
}

fn map_indicators(rec: &DnaSequence, strict: bool) -> Result<IndicatorSet, CliError> {
    let ind = voss_map(rec, policy(strict)).map_err(|e| CliError::Invalid(e.to_string()))?;
    if ind.ambiguous() > 0 {
        eprintln!(
            "warning: {}: {} ambiguous residue(s) contribute no power",
            ind.id(),
            ind.ambiguous()
        );
    }
    Ok(ind)
}

fn invalid(e: Error) -> CliError {
    CliError::Invalid(e.to_string())
}

fn sequences_meta(entries: Vec<Json>) -> Json {
    Json::Array(entries)
}

pub fn cmd_scan(args: &ScanArgs) -> Result<(), CliError> {
    if args.threshold <= 0.0 || !args.threshold.is_finite() {
        return Err(CliError::Invalid("threshold must be positive".into()));
    }
    let records = load_records(&args.input, args.strict)?;
    let multi = records.len() > 1;

    let mut columns = vec!["p", "power", "snr"];
    if multi {
        columns.insert(0, "id");
    }
    let mut rows = Vec::new();
    let mut seq_meta = Vec::new();

    for rec in &records {
        let ind = map_indicators(rec, args.strict)?;
        let n = ind.len();
        let p_max = args.pmax.unwrap_or_else(|| default_p_max(n).min(n));
        let spectrum = scan(&ind, args.pmin, p_max).map_err(invalid)?;
        seq_meta.push(json!({
            "id": ind.id(), "n": n, "pmin": args.pmin, "pmax": p_max,
        }));

        let emit = |rows: &mut Vec<Vec<Value>>, p: usize, power: f64, snr: f64| {
            let mut row = Vec::with_capacity(columns.len());
            if multi {
                row.push(Value::Str(ind.id().to_string()));
            }
            row.extend([Value::Int(p), Value::Float(power), Value::Float(snr)]);
            rows.push(row);
        };
        if args.peaks {
            for pk in detect_peaks(&spectrum, args.threshold).peaks() {
                let e = spectrum.get(pk.p).expect("peak restates a scan row");
                emit(&mut rows, e.p, e.power, e.snr);
            }
        } else {
            for e in spectrum.entries() {
                emit(&mut rows, e.p, e.power, e.snr);
            }
        }
    }

    let mut meta = Map::new();
    meta.insert("command".into(), json!("scan"));
    meta.insert("input".into(), json!(args.input));
    meta.insert("strict".into(), json!(args.strict));
    meta.insert("pmin".into(), json!(args.pmin));
    meta.insert("pmax".into(), args.pmax.map_or(Json::Null, |v| json!(v)));
    meta.insert("peaks".into(), json!(args.peaks));
    if args.peaks {
        meta.insert("threshold".into(), json!(args.threshold));
    }
    meta.insert("sequences".into(), sequences_meta(seq_meta));

    let table = Table { columns, rows };
    write_output(&args.io.out, &render(&table, args.io.format, meta))
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let records = load_records(&args.input, args.strict)?;
    let multi = records.len() > 1;
    let p = args.p;

    let mut columns = vec![
        "p",
        "pps",
        "padded_bin",
        "padded_dft",
        "floor_bin",
        "floor_dft",
        "ceil_bin",
        "ceil_dft",
        "leakage",
    ];
    if multi {
        columns.insert(0, "id");
    }
    let mut rows = Vec::new();
    let mut seq_meta = Vec::new();

    for rec in &records {
        let ind = map_indicators(rec, args.strict)?;
        let n = ind.len();
        let pps = pps_dna(&ind, p).map_err(invalid)?;

        let padded = zero_pad_to_multiple(&ind, p).map_err(invalid)?;
        // p = 1 folds the whole signal into bin N mod N = 0, the DC bin
        let padded_bin = (padded.len() / p) % padded.len();
        let padded_dft = dft_power_dna(&padded).ps(padded_bin);

        let dft = dft_power_dna(&ind);
        let floor_bin = (n / p) % n;
        let ceil_bin = n.div_ceil(p) % n;

        let mut row = Vec::with_capacity(columns.len());
        if multi {
            row.push(Value::Str(ind.id().to_string()));
        }
        row.extend([
            Value::Int(p),
            Value::Float(pps),
            Value::Int(padded_bin),
            Value::Float(padded_dft),
            Value::Int(floor_bin),
            Value::Float(dft.ps(floor_bin)),
            Value::Int(ceil_bin),
            Value::Float(dft.ps(ceil_bin)),
            Value::Bool(n % p != 0),
        ]);
        rows.push(row);
        seq_meta.push(json!({ "id": ind.id(), "n": n }));
    }

    let mut meta = Map::new();
    meta.insert("command".into(), json!("compare"));
    meta.insert("input".into(), json!(args.input));
    meta.insert("strict".into(), json!(args.strict));
    meta.insert("p".into(), json!(p));
    meta.insert("sequences".into(), sequences_meta(seq_meta));

    let table = Table { columns, rows };
    write_output(&args.io.out, &render(&table, args.io.format, meta))
}

fn sorted_periodicities(ps: &[usize]) -> Vec<usize> {
    let mut ps = ps.to_vec();
    ps.sort_unstable();
    ps.dedup();
    ps
}

pub fn cmd_window(args: &WindowArgs) -> Result<(), CliError> {
    let records = load_records(&args.input, args.strict)?;
    let multi = records.len() > 1;
    let ps = sorted_periodicities(&args.p);

    let mut columns = vec!["p", "start", "snr"];
    if multi {
        columns.insert(0, "id");
    }
    let mut rows = Vec::new();
    let mut seq_meta = Vec::new();

    for rec in &records {
        let ind = map_indicators(rec, args.strict)?;
        seq_meta.push(json!({ "id": ind.id(), "n": ind.len() }));
        for &p in &ps {
            let profile = sliding_window(&ind, p, args.window, args.step).map_err(invalid)?;
            for pt in profile.points() {
                let mut row = Vec::with_capacity(columns.len());
                if multi {
                    row.push(Value::Str(ind.id().to_string()));
                }
                row.extend([Value::Int(p), Value::Int(pt.start), Value::Float(pt.snr)]);
                rows.push(row);
            }
        }
    }

    let mut meta = Map::new();
    meta.insert("command".into(), json!("window"));
    meta.insert("input".into(), json!(args.input));
    meta.insert("strict".into(), json!(args.strict));
    meta.insert("p".into(), json!(ps));
    meta.insert("window".into(), json!(args.window));
    meta.insert("step".into(), json!(args.step));
    meta.insert("sequences".into(), sequences_meta(seq_meta));

    let table = Table { columns, rows };
    write_output(&args.io.out, &render(&table, args.io.format, meta))
}

pub fn cmd_walk(args: &WalkArgs) -> Result<(), CliError> {
    let records = load_records(&args.input, args.strict)?;
    let multi = records.len() > 1;
    let ps = sorted_periodicities(&args.p);

    let mut columns = vec!["p", "prefix_len", "power"];
    if multi {
        columns.insert(0, "id");
    }
    let mut rows = Vec::new();
    let mut seq_meta = Vec::new();

    for rec in &records {
        let ind = map_indicators(rec, args.strict)?;
        seq_meta.push(json!({ "id": ind.id(), "n": ind.len() }));
        for &p in &ps {
            let walk = dna_walk(&ind, p, args.step).map_err(invalid)?;
            for pt in walk.points() {
                let mut row = Vec::with_capacity(columns.len());
                if multi {
                    row.push(Value::Str(ind.id().to_string()));
                }
                row.extend([
                    Value::Int(p),
                    Value::Int(pt.prefix_len),
                    Value::Float(pt.power),
                ]);
                rows.push(row);
            }
        }
    }

    let mut meta = Map::new();
    meta.insert("command".into(), json!("walk"));
    meta.insert("input".into(), json!(args.input));
    meta.insert("strict".into(), json!(args.strict));
    meta.insert("p".into(), json!(ps));
    meta.insert("step".into(), json!(args.step));
    meta.insert("sequences".into(), sequences_meta(seq_meta));

    let table = Table { columns, rows };
    write_output(&args.io.out, &render(&table, args.io.format, meta))
}

pub fn cmd_synth_fig1(args: &Fig1Args) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Invalid("n must be at least 1".into()));
    }
    if args.sigma < 0.0 || !args.sigma.is_finite() {
        return Err(CliError::Invalid("sigma must be nonnegative".into()));
    }
    let x = synth_fig1(args.n, args.sigma, args.seed).map_err(invalid)?;

    let rows = x
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &v)| vec![Value::Int(i + 1), Value::Float(v)])
        .collect();

    let mut meta = Map::new();
    meta.insert("command".into(), json!("synth-fig1"));
    meta.insert("n".into(), json!(args.n));
    meta.insert("sigma".into(), json!(args.sigma));
    meta.insert("seed".into(), json!(args.seed));

    let table = Table {
        columns: vec!["k", "value"],
        rows,
    };
    write_output(&args.io.out, &render(&table, args.io.format, meta))
}

pub fn cmd_synth_repeat(args: &RepeatArgs) -> Result<(), CliError> {
    if args.copies == 0 {
        return Err(CliError::Invalid("copies must be at least 1".into()));
    }
    let unit = DnaSequence::new("motif", &args.motif, AmbiguityPolicy::Lenient)
        .map_err(|e| CliError::Invalid(format!("--motif: {e}")))?;
    let motif_text = std::str::from_utf8(unit.residues())
        .expect("residues are ASCII")
        .to_string();
    let id = format!("{motif_text}x{}", args.copies);
    let motif =
        DnaSequence::new(id, &motif_text, AmbiguityPolicy::Lenient).expect("already validated");

    let total = motif.len() * args.copies;
    if args.trim >= total {
        return Err(CliError::Invalid(format!(
            "--trim {} removes the whole {total}-residue sequence",
            args.trim
        )));
    }

    // trim first, then substitutions, then the shuffle; positions in
    // --sub and --shuffle-from refer to the trimmed sequence
    let mut edits = Vec::new();
    for i in 0..args.trim {
        edits.push(Edit::Delete {
            position: total - 1 - i,
        });
    }
    for raw in &args.sub {
        let (pos, base) = parse_sub(raw)?;
        edits.push(Edit::Substitute {
            position: pos,
            base,
        });
    }
    if let Some(start) = args.shuffle_from {
        edits.push(Edit::ShuffleRange {
            start,
            end: total - args.trim,
        });
    }

    let fixture = synth_repeat(&motif, args.copies, &edits, args.seed).map_err(invalid)?;
    write_output(&args.out, &fixture.to_fasta())
}

fn parse_sub(raw: &str) -> Result<(usize, char), CliError> {
    let bad = || CliError::Invalid(format!("--sub expects POS=BASE, got `{raw}`"));
    let (pos, base) = raw.split_once('=').ok_or_else(bad)?;
    let pos: usize = pos.trim().parse().map_err(|_| bad())?;
    let mut chars = base.trim().chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok((pos, c)),
        _ => Err(bad()),
    }
}
