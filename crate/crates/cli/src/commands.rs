use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::json;
use sun_gates_core::{
    amplitude_operator, apply_with_postselection, build_gates, build_generators, build_w, check_partial_wave,
    cross_coefficients, crossing_map, disk_samples, export_circuit, inverse_crossing_map, plan_encoding, verify_block,
    verify_completeness, AmplitudeCoefficients, ChannelKind, ChannelSpec, Complex64, PartialWaveSector,
    UnitarityReport,
};

use crate::config::{CliError, Format, Outcome, RunConfig};

pub const DISK_HEADER: [&str; 7] = ["theta", "phi", "re_a", "im_a", "re_b", "im_b", "norm_sq"];
pub const SECTOR_HEADER: [&str; 6] = ["j", "re_a", "im_a", "re_b", "im_b", "kappa"];

/// Parses `re,im`; a lone number is taken as real.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|e| format!("invalid number {p:?} in {s:?}: {e}"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im but got {s:?}")),
    }
}

/// Comma-separated real amplitudes.
pub fn parse_state(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map(|x| Complex64::new(x, 0.0))
                .map_err(|e| format!("invalid amplitude {p:?}: {e}"))
        })
        .collect()
}

fn to_json(value: &impl Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn cmd_generators(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    cfg.format_for(Format::Json, &[Format::Json], "generators")?;
    let gens = build_generators(cfg.n)?;
    let completeness = verify_completeness(&gens, cfg.tolerance);
    let report = gens.validate(cfg.tolerance);
    let matrices: Vec<_> = gens.iter().map(|m| m.to_rows()).collect();
    let passed = report.passed && completeness.passed;
    let body = json!({
        "n": cfg.n,
        "count": gens.len(),
        "hermiticity_deviation": gens.hermiticity_deviation(),
        "trace_deviation": gens.trace_deviation(),
        "orthonormality_deviation": gens.orthonormality_deviation(),
        "completeness_deviation": completeness.max_deviation,
        "tolerance": cfg.tolerance,
        "passed": passed,
        "generators": matrices,
    });
    Ok(Outcome {
        passed,
        text: to_json(&body)?,
    })
}

pub fn cmd_encode(cfg: &RunConfig, a: Complex64, b: Complex64, psi: Option<&[Complex64]>) -> Result<Outcome, CliError> {
    cfg.validate()?;
    cfg.format_for(Format::Json, &[Format::Json], "encode")?;
    let channel = ChannelSpec::new(cfg.channel_or_s(), cfg.n)?;
    let gates = build_gates(channel, &build_generators(cfg.n)?)?;
    let coeffs = AmplitudeCoefficients::new(channel, a, b);
    let plan = plan_encoding(&coeffs)?;
    let w = build_w(&plan, &gates)?;
    let m = amplitude_operator(&coeffs, &gates)?;
    let block = verify_block(&w, &m, plan.alpha, cfg.tolerance);
    let w_dev = w.unitarity_deviation();
    let passed = block.passed && w_dev <= cfg.tolerance;

    let mut body = json!({
        "n": cfg.n,
        "channel": channel.kind,
        "a": a,
        "b": b,
        "alpha": plan.alpha,
        "gamma": plan.gamma,
        "block_deviation": block.max_deviation,
        "w_unitarity_deviation": w_dev,
        "tolerance": cfg.tolerance,
        "passed": passed,
        "circuit": export_circuit(&plan),
    });
    if let Some(psi) = psi {
        let post = apply_with_postselection(&plan, &gates, psi)?;
        body["postselection"] = serde_json::to_value(post)?;
    }
    Ok(Outcome {
        passed,
        text: to_json(&body)?,
    })
}

pub fn cmd_cross(cfg: &RunConfig, a: Complex64, b: Complex64) -> Result<Outcome, CliError> {
    cfg.validate()?;
    cfg.format_for(Format::Json, &[Format::Json], "cross")?;
    let n = cfg.n;
    let from = AmplitudeCoefficients::new(ChannelSpec::new(cfg.channel_or_s(), n)?, a, b);
    let to = cross_coefficients(&from);
    let back = cross_coefficients(&to);

    let gens = build_generators(n)?;
    let m_from = amplitude_operator(&from, &build_gates(from.channel, &gens)?)?;
    let m_to = amplitude_operator(&to, &build_gates(to.channel, &gens)?)?;
    let mapped = match from.channel.kind {
        ChannelKind::S => crossing_map(&m_from),
        ChannelKind::T => inverse_crossing_map(&m_from),
    };
    let operator_deviation = mapped.max_abs_diff(&m_to);
    let round_trip_deviation = (back.a - a).norm().max((back.b - b).norm());
    let passed = operator_deviation <= cfg.tolerance && round_trip_deviation <= cfg.tolerance;
    let body = json!({
        "n": n,
        "from": { "channel": from.channel.kind, "a": from.a, "b": from.b },
        "to": { "channel": to.channel.kind, "a": to.a, "b": to.b },
        "operator_deviation": operator_deviation,
        "round_trip_deviation": round_trip_deviation,
        "tolerance": cfg.tolerance,
        "passed": passed,
    });
    Ok(Outcome {
        passed,
        text: to_json(&body)?,
    })
}

pub fn cmd_disk(cfg: &RunConfig, resolution: usize) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let format = cfg.format_for(Format::Csv, &[Format::Csv, Format::Json], "disk")?;
    let rows = disk_samples(resolution)?;
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(DISK_HEADER)?;
            for r in &rows {
                w.serialize((r.theta, r.phi, r.a.re, r.a.im, r.b.re, r.b.im, r.norm_sq))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8")
        }
    };
    Ok(Outcome { passed: true, text })
}

#[derive(Debug, Deserialize)]
struct SectorRow {
    j: u32,
    re_a: f64,
    im_a: f64,
    re_b: f64,
    im_b: f64,
    kappa: f64,
}

fn csv_line(e: &csv::Error) -> u64 {
    e.position().map_or(0, |p| p.line())
}

/// Reads a sectors CSV. Empty input yields no sectors.
pub fn read_sectors(path: &Path) -> Result<Vec<(u64, PartialWaveSector)>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(File::open(path)?);
    let header = reader.headers().map_err(|e| CliError::Parse {
        line: csv_line(&e).max(1),
        message: e.to_string(),
    })?;
    if header.is_empty() {
        return Ok(Vec::new());
    }
    if header.iter().ne(SECTOR_HEADER) {
        return Err(CliError::Parse {
            line: 1,
            message: format!("expected header {}", SECTOR_HEADER.join(",")),
        });
    }
    let header = header.clone();
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| CliError::Parse {
            line: csv_line(&e),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let row: SectorRow = rec.deserialize(Some(&header)).map_err(|e| CliError::Parse {
            line,
            message: e.to_string(),
        })?;
        let sector = PartialWaveSector {
            j: row.j,
            a_j: Complex64::new(row.re_a, row.im_a),
            b_j: Complex64::new(row.re_b, row.im_b),
            kappa_j: row.kappa,
        };
        out.push((line, sector));
    }
    Ok(out)
}

pub fn cmd_partial_wave(cfg: &RunConfig, sectors: &Path) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let format = cfg.format_for(Format::Json, &[Format::Json, Format::Csv], "partial-wave")?;
    let mut reports: Vec<UnitarityReport> = Vec::new();
    for (line, sector) in read_sectors(sectors)? {
        let r = check_partial_wave(&sector, cfg.tolerance).map_err(|e| CliError::Parse {
            line,
            message: e.to_string(),
        })?;
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.bound_satisfied);
    let text = match format {
        Format::Json => to_json(&json!({ "all_satisfied": passed, "sectors": reports }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "j",
                "norm_sq",
                "bound_satisfied",
                "elastic_saturation",
                "in_disk_plus",
                "in_disk_minus",
            ])?;
            for r in &reports {
                w.serialize((
                    r.j,
                    r.norm_sq,
                    r.bound_satisfied,
                    r.elastic_saturation,
                    r.in_unit_disk[0],
                    r.in_unit_disk[1],
                ))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8")
        }
    };
    Ok(Outcome { passed, text })
}
