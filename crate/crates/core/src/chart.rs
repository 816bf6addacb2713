//! Static SVG line charts.
//!
//! Output is a pure function of the input: fixed number formatting, no
//! timestamps, no random ids. Axes auto-scale to the data and an optional
//! dashed vertical line marks the base period.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::series::{Period, TimeSeries};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 70.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub title: String,
    pub series: Vec<(String, TimeSeries)>,
    pub width: u32,
    pub height: u32,
    pub marker: Option<Period>,
}

impl ChartSpec {
    pub fn new(title: impl Into<String>, width: u32, height: u32) -> Self {
        ChartSpec {
            title: title.into(),
            series: Vec::new(),
            width,
            height,
            marker: None,
        }
    }

    pub fn with_series(mut self, label: impl Into<String>, s: TimeSeries) -> Self {
        self.series.push((label.into(), s));
        self
    }

    pub fn with_marker(mut self, p: Period) -> Self {
        self.marker = Some(p);
        self
    }

    fn validate(&self) -> Result<()> {
        let first = self
            .series
            .first()
            .ok_or_else(|| Error::Domain(format!("chart `{}` has no series", self.title)))?;
        if let Some((label, s)) = self
            .series
            .iter()
            .find(|(_, s)| s.currency() != first.1.currency())
        {
            return Err(Error::Currency {
                left: first.0.clone(),
                left_currency: first.1.currency().to_string(),
                right: label.clone(),
                right_currency: s.currency().to_string(),
            });
        }
        if self.series.iter().all(|(_, s)| s.is_empty()) {
            return Err(Error::Domain(format!("chart `{}` has no points", self.title)));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::Domain("chart dimensions must be positive".into()));
        }
        Ok(())
    }

    /// A standalone SVG document for this chart.
    pub fn render(&self) -> Result<String> {
        render_row(std::slice::from_ref(self))
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

/// Step of 1, 2 or 5 times a power of ten giving roughly `target` intervals.
fn nice_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn fmt_tick(v: f64, step: f64) -> String {
    let decimals = if step >= 1.0 { 0 } else { (-step.log10().floor()) as usize };
    let s = format!("{v:.decimals$}");
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Several charts side by side in one SVG document; the document is as wide
/// as the sum of the panels.
pub fn render_row(panels: &[ChartSpec]) -> Result<String> {
    if panels.is_empty() {
        return Err(Error::Domain("nothing to render".into()));
    }
    for p in panels {
        p.validate()?;
    }
    let total_w: u32 = panels.iter().map(|p| p.width).sum();
    let total_h: u32 = panels.iter().map(|p| p.height).max().unwrap_or(0);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="{total_w}" height="{total_h}" fill="white"/>"#);
    let mut x_off = 0u32;
    for p in panels {
        render_panel(&mut svg, p, f64::from(x_off));
        x_off += p.width;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn render_panel(svg: &mut String, c: &ChartSpec, x_off: f64) {
    let w = f64::from(c.width);
    let h = f64::from(c.height);
    let plot_w = (w - MARGIN_LEFT - MARGIN_RIGHT).max(1.0);
    let plot_h = (h - MARGIN_TOP - MARGIN_BOTTOM).max(1.0);

    let points = || c.series.iter().flat_map(|(_, s)| s.points().iter());
    let (mut y0, mut y1) = points().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, v)| {
        (lo.min(v), hi.max(v))
    });
    let x0 = points().map(|(p, _)| p.0).min().unwrap_or(0);
    let mut x1 = points().map(|(p, _)| p.0).max().unwrap_or(0);
    if x1 == x0 {
        x1 = x0 + 1;
    }
    if y1 == y0 {
        let pad = if y0 == 0.0 { 1.0 } else { y0.abs() * 0.1 };
        y0 -= pad;
        y1 += pad;
    }
    let step = nice_step(y1 - y0, 5.0);
    let lo = (y0 / step).floor() * step;
    let hi = (y1 / step).ceil() * step;

    let sx = |year: f64| x_off + MARGIN_LEFT + (year - f64::from(x0)) / f64::from(x1 - x0) * plot_w;
    let sy = |v: f64| MARGIN_TOP + (hi - v) / (hi - lo) * plot_h;

    let _ = writeln!(svg, r#"<g class="panel">"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
        x_off + w / 2.0,
        MARGIN_TOP / 2.0 + 5.0,
        escape(&c.title)
    );

    // horizontal grid and y labels
    let ticks = ((hi - lo) / step).round() as i64;
    for i in 0..=ticks {
        let v = lo + step * i as f64;
        let y = sy(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            sx(f64::from(x0)),
            sx(f64::from(x1))
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            sx(f64::from(x0)) - 6.0,
            y + 4.0,
            fmt_tick(v, step)
        );
    }

    // x ticks: every year if few, otherwise a 1/2/5 step
    let year_step = (nice_step(f64::from(x1 - x0), 8.0).max(1.0)) as i32;
    let first_tick = (x0 + year_step - 1).div_euclid(year_step) * year_step;
    let mut year = first_tick;
    while year <= x1 {
        let x = sx(f64::from(year));
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{year}</text>"#,
            MARGIN_TOP + plot_h + 16.0
        );
        year += year_step;
    }

    let _ = writeln!(
        svg,
        r##"<rect x="{:.2}" y="{MARGIN_TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#333333"/>"##,
        x_off + MARGIN_LEFT
    );

    if let Some(base) = c.marker.filter(|b| (x0..=x1).contains(&b.0)) {
        let x = sx(f64::from(base.0));
        let _ = writeln!(
            svg,
            r##"<line class="base-marker" x1="{x:.2}" y1="{MARGIN_TOP:.2}" x2="{x:.2}" y2="{:.2}" stroke="#555555" stroke-dasharray="4 3"/>"##,
            MARGIN_TOP + plot_h
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="10">base {base}</text>"#,
            x + 3.0,
            MARGIN_TOP + 12.0
        );
    }

    for (i, (label, s)) in c.series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let mut pts = String::new();
        for (j, &(p, v)) in s.points().iter().enumerate() {
            if j > 0 {
                pts.push(' ');
            }
            let _ = write!(pts, "{:.2},{:.2}", sx(f64::from(p.0)), sy(v));
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{pts}"/>"#
        );
        let ly = MARGIN_TOP + plot_h + 34.0 + 14.0 * (i / 2) as f64;
        let lx = x_off + MARGIN_LEFT + (i % 2) as f64 * plot_w / 2.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="2"/>"#,
            ly - 4.0,
            lx + 16.0,
            ly - 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#,
            lx + 20.0,
            escape(label)
        );
    }
    let _ = writeln!(svg, "</g>");
}
