//! CSV and SVG emitters. All output is deterministic: equal inputs give
//! byte-identical files.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use crate::bench::BenchRecord;
use crate::model::{CurvePoint, EpidemicCurve, ExtendedTime, InfectionTimes};
use crate::montecarlo::EmpiricalTimes;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    /// SVG charts alongside the CSV files they are drawn from.
    Svg,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// `k,susceptible,infected,recovered`
pub fn curve_csv(curve: &EpidemicCurve) -> String {
    let mut s = String::from("k,susceptible,infected,recovered\n");
    for c in curve {
        let _ = writeln!(s, "{},{},{},{}", c.k, c.susceptible, c.infected, c.recovered);
    }
    s
}

/// `agent,k_i` with one-based agents and `inf` for never infected.
pub fn times_csv(times: &InfectionTimes) -> String {
    let mut s = String::from("agent,k_i\n");
    for (i, t) in times.iter().enumerate() {
        let _ = writeln!(s, "{},{t}", i + 1);
    }
    s
}

/// `agent,k,count` with `k=inf` for the ∞ bucket.
pub fn histogram_csv(hist: &EmpiricalTimes) -> String {
    let mut s = String::from("agent,k,count\n");
    for i in 0..hist.n() {
        for (t, c) in hist.histogram(i) {
            let _ = writeln!(s, "{},{t},{c}", i + 1);
        }
    }
    s
}

/// `engine,n,m,T,ext,ops,millis`
pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut s = String::from("engine,n,m,T,ext,ops,millis\n");
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{:.3}",
            r.engine.name(),
            r.n,
            r.m,
            r.horizon,
            r.ext,
            r.ops,
            r.millis
        );
    }
    s
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

fn svg_open(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{title}</text>"#,
        WIDTH / 2.0
    );
    let (x0, y0, x1, y1) = (MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN / 2.0, MARGIN / 1.5);
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.1},{y1:.1} L{x0:.1},{y0:.1} L{x1:.1},{y0:.1}" stroke="black" fill="none"/>"#
    );
    s
}

fn plot_x(v: f64, max: f64) -> f64 {
    MARGIN + v / max.max(1.0) * (WIDTH - 1.5 * MARGIN)
}

fn plot_y(v: f64, max: f64) -> f64 {
    HEIGHT - MARGIN - v / max.max(1.0) * (HEIGHT - MARGIN - MARGIN / 1.5)
}

/// Line chart of the three compartments over time.
pub fn curve_svg(curve: &EpidemicCurve) -> String {
    let kmax = curve.last().map_or(1, |c| c.k) as f64;
    let n = curve.first().map_or(1, |c| c.susceptible + c.infected + c.recovered) as f64;
    let mut s = svg_open("Epidemic curve");
    type Series = (&'static str, &'static str, fn(&CurvePoint) -> usize);
    let series: [Series; 3] = [
        ("susceptible", "#1f77b4", |c| c.susceptible),
        ("infected", "#d62728", |c| c.infected),
        ("recovered", "#2ca02c", |c| c.recovered),
    ];
    for (idx, (name, color, get)) in series.iter().enumerate() {
        let mut d = String::new();
        for (i, c) in curve.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(
                d,
                "{cmd}{:.2},{:.2} ",
                plot_x(c.k as f64, kmax),
                plot_y(get(c) as f64, n)
            );
        }
        let _ = writeln!(
            s,
            r#"<path d="{}" stroke="{color}" stroke-width="1.5" fill="none"/>"#,
            d.trim_end()
        );
        let ly = 40.0 + 14.0 * idx as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{color}">{name}</text>"#,
            WIDTH - 110.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">k</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN:.1}" y="{:.1}" text-anchor="end">0</text>"#,
        HEIGHT - MARGIN + 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{kmax}</text>"#,
        WIDTH - MARGIN / 2.0,
        HEIGHT - MARGIN + 14.0
    );
    s.push_str("</svg>\n");
    s
}

/// Scatter of per-agent `k_i` frequencies: circle diameter proportional to
/// the share of replicas; ∞ drawn on the top row. Optional overlay times
/// (for instance a β-approximation) are drawn as triangles.
pub fn histogram_svg(hist: &EmpiricalTimes, overlay: Option<&InfectionTimes>) -> String {
    let n = hist.n();
    let mut kmax = 1u64;
    for i in 0..n {
        for t in hist.histogram(i).keys() {
            if let ExtendedTime::Finite(k) = t {
                kmax = kmax.max(*k);
            }
        }
    }
    if let Some(o) = overlay {
        kmax = o.iter().filter_map(ExtendedTime::finite).fold(kmax, u64::max);
    }
    let inf_row = kmax as f64 + 2.0;
    let y_of = |t: ExtendedTime| plot_y(t.finite().map_or(inf_row, |k| k as f64), inf_row);
    let m = hist.replicas().max(1) as f64;
    let mut s = svg_open("Infection times per agent");
    for i in 0..n {
        let x = plot_x(i as f64 + 1.0, n as f64 + 1.0);
        for (&t, &c) in hist.histogram(i) {
            let r = 0.5 * 18.0 * c as f64 / m;
            let color = if t.is_finite() { "#1f77b4" } else { "#d62728" };
            let _ = writeln!(
                s,
                r#"<circle cx="{x:.2}" cy="{:.2}" r="{:.2}" fill="{color}" fill-opacity="0.5"/>"#,
                y_of(t),
                r.max(0.5)
            );
        }
        if let Some(o) = overlay {
            let y = y_of(o.get(i));
            let _ = writeln!(
                s,
                r#"<path d="M{:.2},{:.2} L{:.2},{:.2} L{:.2},{:.2} Z" fill="black"/>"#,
                x,
                y - 4.0,
                x - 3.5,
                y + 3.0,
                x + 3.5,
                y + 3.0
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="end">inf</text>"#,
        MARGIN - 4.0,
        y_of(ExtendedTime::Infinite) + 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">agent</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    s.push_str("</svg>\n");
    s
}

/// Everything a command may produce; absent parts are skipped.
#[derive(Clone, Debug, Default)]
pub struct RunOutput {
    pub curve: Option<EpidemicCurve>,
    pub times: Option<InfectionTimes>,
    pub histogram: Option<EmpiricalTimes>,
    pub overlay: Option<InfectionTimes>,
    pub bench: Option<Vec<BenchRecord>>,
}

/// Writes the run's files into `dir` and returns their paths.
pub fn emit_results(output: &RunOutput, format: Format, dir: &Path) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut put = |name: &str, body: String| -> io::Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        written.push(path);
        Ok(())
    };
    if let Some(c) = &output.curve {
        put("curve.csv", curve_csv(c))?;
        if format == Format::Svg {
            put("curve.svg", curve_svg(c))?;
        }
    }
    if let Some(t) = &output.times {
        put("times.csv", times_csv(t))?;
    }
    if let Some(h) = &output.histogram {
        put("histogram.csv", histogram_csv(h))?;
        if format == Format::Svg {
            put("histogram.svg", histogram_svg(h, output.overlay.as_ref()))?;
        }
    }
    if let Some(b) = &output.bench {
        put("bench.csv", bench_csv(b))?;
    }
    Ok(written)
}
