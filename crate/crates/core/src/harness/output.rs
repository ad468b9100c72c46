//! CSV and SVG artifacts. Column order is fixed and every file has a header.

use std::fmt::Write as _;
use std::path::Path;

use super::metrics::MetricsReport;
use super::sim::TrajectoryLog;
use super::suite::{SuiteReport, SweepReport};
use crate::error::{Error, Result};
use crate::geometry::Pose2D;

/// How coverage distance is measured, recorded in every summary.
pub const COVERAGE_REFERENCE: &str = "vehicle_center";

pub fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn f(v: f64) -> String {
    format!("{v:.9}")
}

fn opt(v: Option<f64>) -> String {
    v.map(f).unwrap_or_default()
}

fn pose_cols(p: Option<&Pose2D>) -> [String; 3] {
    match p {
        Some(p) => [f(p.x), f(p.y), f(p.yaw)],
        None => Default::default(),
    }
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let csv_err = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::io(path, std::io::Error::other(format!("{other:?}"))),
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_trajectory(path: &Path, baseline: &TrajectoryLog, fused: &TrajectoryLog) -> Result<()> {
    let header = [
        "t", "arc", "truth_x", "truth_y", "truth_yaw", "ndt_x", "ndt_y", "ndt_yaw",
        "rsu_produced", "rsu_x", "rsu_y", "rsu_yaw", "rsu_stamp", "lfa_points",
        "fused_x", "fused_y", "fused_yaw", "baseline_x", "baseline_y", "baseline_yaw",
        "in_coverage", "scans", "misses", "dropped", "rejected",
    ];
    let rows = fused.records.iter().zip(&baseline.records).map(|(r, b)| {
        let d = r.rsu_delivered.first();
        let mut row = vec![f(r.t), f(r.arc)];
        row.extend(pose_cols(Some(&r.truth)));
        row.extend(pose_cols(r.ndt.as_ref()));
        row.push(r.rsu_produced.len().to_string());
        row.extend(pose_cols(d.map(|e| &e.pose)));
        row.push(opt(d.map(|e| e.stamp)));
        row.push(d.map(|e| e.lfa_points.to_string()).unwrap_or_default());
        row.extend(pose_cols(Some(&r.fused)));
        row.extend(pose_cols(Some(&b.fused)));
        row.push((r.in_coverage as u8).to_string());
        row.push(r.diag.scans.to_string());
        row.push(r.diag.misses.to_string());
        row.push(r.diag.dropped.to_string());
        row.push(r.diag.rejected.to_string());
        row
    });
    write_csv(path, &header, rows)
}

pub fn write_bins(path: &Path, m: &MetricsReport) -> Result<()> {
    let rows = m.bins.iter().map(|b| {
        vec![f(b.start), f(b.end), opt(b.baseline), opt(b.fused)]
    });
    write_csv(path, &["bin_start", "bin_end", "baseline_min", "fused_min"], rows)
}

/// Label, stroke color and accessor for one plotted curve.
type Series = (&'static str, &'static str, fn(&super::metrics::Bin) -> Option<f64>);

/// Per-bin minimum error curves with coverage intervals shaded.
pub fn error_curve_svg(m: &MetricsReport) -> String {
    const W: f64 = 800.0;
    const H: f64 = 360.0;
    const PAD: f64 = 50.0;
    let x_max = m.bins.last().map_or(1.0, |b| b.end);
    let y_max = m
        .bins
        .iter()
        .flat_map(|b| [b.baseline, b.fused])
        .flatten()
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 1.1;
    let sx = |x: f64| PAD + x / x_max * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - y / y_max * (H - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    for r in &m.coverage {
        if let Some((lo, hi)) = r.interval {
            let _ = writeln!(
                s,
                r##"<rect x="{:.2}" y="{PAD}" width="{:.2}" height="{:.2}" fill="#dde8f7"/>"##,
                sx(lo),
                sx(hi) - sx(lo),
                H - 2.0 * PAD
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<path d="M{PAD} {PAD} V{:.2} H{:.2}" stroke="black" fill="none"/>"#,
        H - PAD,
        W - PAD
    );
    for k in 0..=4 {
        let y = y_max * k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.3}</text>"#,
            PAD - 4.0,
            sy(y) + 4.0,
            y
        );
        let x = x_max * k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{:.0}</text>"#,
            sx(x),
            H - PAD + 16.0,
            x
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">arc length (m)</text>"#,
        W / 2.0,
        H - 10.0
    );
    let _ = writeln!(s, r#"<text x="12" y="{:.2}" transform="rotate(-90 12 {:.2})" text-anchor="middle">min error per 2 m bin (m)</text>"#, H / 2.0, H / 2.0);
    let series: [Series; 2] = [
        ("baseline", "#c0392b", |b| b.baseline),
        ("fused", "#1f5fa8", |b| b.fused),
    ];
    for (i, (name, color, get)) in series.iter().enumerate() {
        let pts: Vec<String> = m
            .bins
            .iter()
            .filter_map(|b| get(b).map(|v| format!("{:.2},{:.2}", sx(b.midpoint()), sy(v))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" stroke="{color}" stroke-width="1.5" fill="none"/>"#,
            pts.join(" ")
        );
        let ly = PAD + 14.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{name}</text>"#,
            W - PAD - 90.0,
            W - PAD - 70.0,
            W - PAD - 64.0,
            ly + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_trial(
    dir: &Path,
    baseline: &TrajectoryLog,
    fused: &TrajectoryLog,
    m: &MetricsReport,
) -> Result<()> {
    create_dir(dir)?;
    write_trajectory(&dir.join("trajectory.csv"), baseline, fused)?;
    write_bins(&dir.join("bins.csv"), m)?;
    let svg = dir.join("error_curve.svg");
    std::fs::write(&svg, error_curve_svg(m)).map_err(|e| Error::io(&svg, e))
}

pub fn write_summary(path: &Path, r: &SuiteReport) -> Result<()> {
    let header = [
        "trial", "seed", "region", "coverage_ref", "interval_start", "interval_end",
        "bins", "mle_baseline", "mle_fused", "improvement",
    ];
    let mut rows = Vec::new();
    for (i, t) in r.trials.iter().enumerate() {
        for reg in t.metrics.coverage.iter().chain([&t.metrics.outside]) {
            rows.push(vec![
                i.to_string(),
                t.seed.to_string(),
                reg.name.clone(),
                COVERAGE_REFERENCE.into(),
                opt(reg.interval.map(|v| v.0)),
                opt(reg.interval.map(|v| v.1)),
                reg.bins.to_string(),
                f(reg.mle_baseline),
                f(reg.mle_fused),
                f(reg.improvement()),
            ]);
        }
    }
    for a in &r.aggregate {
        for (label, b, fu) in [
            ("mean", a.baseline.mean, a.fused.mean),
            ("min", a.baseline.min, a.fused.min),
            ("max", a.baseline.max, a.fused.max),
        ] {
            rows.push(vec![
                label.into(),
                String::new(),
                a.name.clone(),
                COVERAGE_REFERENCE.into(),
                opt(a.interval.map(|v| v.0)),
                opt(a.interval.map(|v| v.1)),
                String::new(),
                f(b),
                f(fu),
                f(1.0 - fu / b),
            ]);
        }
    }
    write_csv(path, &header, rows)
}

/// One row per (sensor, delay), one fused-MLE column per loss rate, in the
/// layout of a delay-by-loss table.
pub fn write_sweep(path: &Path, r: &SweepReport, delays: &[f64], losses: &[f64]) -> Result<()> {
    let mut header = vec!["sensor".to_string(), "delay_ms".into(), "baseline".into()];
    header.extend(losses.iter().map(|l| format!("loss_{l}")));
    let mut sensors = Vec::new();
    for c in &r.cells {
        if !sensors.contains(&c.sensor) {
            sensors.push(c.sensor);
        }
    }
    let mut rows = Vec::new();
    for s in sensors {
        for &d in delays {
            let base = r.cell(s, d, losses[0]).map(|c| c.region.baseline.mean);
            let mut row = vec![s.to_string(), format!("{}", d * 1000.0), opt(base)];
            row.extend(
                losses
                    .iter()
                    .map(|&l| opt(r.cell(s, d, l).map(|c| c.region.fused.mean))),
            );
            rows.push(row);
        }
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(path, &header, rows)
}
