//! File formats: strict `year,value` CSV series, a sectioned key/value
//! manifest describing the datasets of each economy, economy descriptions for
//! the simulator, and the debt-table input.
//!
//! Nothing here recovers from bad input. A malformed row is an error that
//! names the file and line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::exchange::{Economy, Good};
use crate::normalize::{self, AggregateSpec, CompositionWarning, PrintedFigures, SplicePlan, Term};
use crate::series::{Period, TimeSeries};

pub const SERIES_HEADER: &str = "year,value";

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Accepts `[+-]digits[.digits][(e|E)[+-]digits]`; rejects `inf`, `nan`,
/// hex and anything else `f64::from_str` would otherwise let through.
pub fn parse_decimal(text: &str) -> Option<f64> {
    let b = text.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        *i > start
    };
    if !digits(&mut i) {
        return None;
    }
    if i < b.len() && b[i] == b'.' {
        i += 1;
        if !digits(&mut i) {
            return None;
        }
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        if !digits(&mut i) {
            return None;
        }
    }
    if i != b.len() {
        return None;
    }
    text.parse().ok().filter(|v: &f64| v.is_finite())
}

/// A CSV table with a header row. Lines starting with `#` are skipped; every
/// other line must have exactly as many fields as the header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    /// `(line number, fields)`, 1-based line numbers.
    pub rows: Vec<(usize, Vec<String>)>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

pub fn parse_table(text: &str, path: &Path) -> Result<Table> {
    let mut header: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = line.split(',').map(str::to_string).collect();
        match &header {
            None => {
                if line.is_empty() {
                    return Err(parse_err(path, line_no, "empty line before header"));
                }
                header = Some(fields);
            }
            Some(h) => {
                if fields.len() != h.len() {
                    return Err(parse_err(
                        path,
                        line_no,
                        format!("expected {} fields, found {}", h.len(), fields.len()),
                    ));
                }
                rows.push((line_no, fields));
            }
        }
    }
    let header = header.ok_or_else(|| parse_err(path, 1, "missing header"))?;
    Ok(Table { header, rows })
}

pub fn read_table(path: &Path) -> Result<Table> {
    parse_table(&read_text(path)?, path)
}

fn parse_year(text: &str) -> Option<i32> {
    (text.len() == 4 && text.bytes().all(|b| b.is_ascii_digit()))
        .then(|| text.parse().ok())
        .flatten()
}

/// Parses the `year,value` format into a series with the given metadata.
pub fn parse_series(
    text: &str,
    path: &Path,
    label: &str,
    currency: &str,
    unit_scale: f64,
) -> Result<TimeSeries> {
    let table = parse_table(text, path)?;
    if table.header.join(",") != SERIES_HEADER {
        return Err(parse_err(
            path,
            1,
            format!("header must be `{SERIES_HEADER}`, found `{}`", table.header.join(",")),
        ));
    }
    let mut points: Vec<(Period, f64)> = Vec::with_capacity(table.rows.len());
    for (line, fields) in &table.rows {
        let year = parse_year(&fields[0])
            .ok_or_else(|| parse_err(path, *line, format!("bad year `{}`", fields[0])))?;
        let value = parse_decimal(&fields[1])
            .ok_or_else(|| parse_err(path, *line, format!("bad value `{}`", fields[1])))?;
        if let Some(&(prev, _)) = points.last() {
            if year == prev.0 {
                return Err(parse_err(path, *line, format!("duplicate year {year}")));
            }
            if year < prev.0 {
                return Err(parse_err(path, *line, format!("year {year} follows {prev}")));
            }
        }
        points.push((Period(year), value));
    }
    TimeSeries::new(label, currency, unit_scale, points).map_err(|e| parse_err(path, 1, e.to_string()))
}

/// Renders a series in the `year,value` format. Values use the shortest
/// decimal that reads back to the same `f64`.
pub fn series_to_csv(s: &TimeSeries) -> String {
    let mut out = format!(
        "# {} ({}, unit scale {})\n{SERIES_HEADER}\n",
        s.label(),
        s.currency(),
        s.unit_scale()
    );
    for (p, v) in s.points() {
        let _ = writeln!(out, "{p:04},{v}");
    }
    out
}

pub fn write_series(path: &Path, s: &TimeSeries) -> Result<()> {
    fs::write(path, series_to_csv(s)).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Money,
    Gdp,
    Debt,
}

impl std::str::FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "money" => Ok(Role::Money),
            "gdp" => Ok(Role::Gdp),
            "debt" => Ok(Role::Debt),
            other => Err(Error::Manifest(format!(
                "role must be money, gdp or debt, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetEntry {
    pub country: String,
    pub label: String,
    pub role: Role,
    /// As written in the manifest, relative to the manifest's directory.
    pub file: PathBuf,
    /// `file` resolved against the manifest's directory.
    pub path: PathBuf,
    pub currency: String,
    pub unit_scale: f64,
    pub convention_note: String,
    pub synthetic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpliceDecl {
    pub country: String,
    pub plan: SplicePlan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateDecl {
    pub country: String,
    pub label: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Manifest {
    pub datasets: Vec<DatasetEntry>,
    pub splices: Vec<SpliceDecl>,
    pub aggregates: Vec<AggregateDecl>,
}

/// One `[kind]` block of a key/value file. Keys before the first header land
/// in a section with an empty kind.
#[derive(Debug, Clone)]
struct Section {
    kind: String,
    line: usize,
    entries: Vec<(String, String, usize)>,
}

fn parse_sections(text: &str, path: &Path) -> Result<Vec<Section>> {
    let mut sections = vec![Section {
        kind: String::new(),
        line: 1,
        entries: Vec::new(),
    }];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(kind) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            sections.push(Section {
                kind: kind.trim().to_string(),
                line: line_no,
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(path, line_no, format!("expected `key = value`, found `{line}`")))?;
        let key = key.trim().to_string();
        let section = sections.last_mut().expect("at least one section");
        if section.entries.iter().any(|(k, _, _)| *k == key) {
            return Err(parse_err(path, line_no, format!("duplicate key `{key}`")));
        }
        section.entries.push((key, value.trim().to_string(), line_no));
    }
    Ok(sections)
}

struct Fields<'a> {
    path: &'a Path,
    section: &'a Section,
    map: BTreeMap<&'a str, (&'a str, usize)>,
}

impl<'a> Fields<'a> {
    fn new(path: &'a Path, section: &'a Section, allowed: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v, line) in &section.entries {
            if !allowed.contains(&k.as_str()) {
                return Err(parse_err(
                    path,
                    *line,
                    format!("unknown key `{k}` in [{}]", section.kind),
                ));
            }
            map.insert(k.as_str(), (v.as_str(), *line));
        }
        Ok(Fields { path, section, map })
    }

    fn required(&self, key: &str) -> Result<&'a str> {
        self.map.get(key).map(|(v, _)| *v).ok_or_else(|| {
            Error::Manifest(format!(
                "{}:{}: [{}] is missing `{key}`",
                self.path.display(),
                self.section.line,
                self.section.kind
            ))
        })
    }

    fn optional(&self, key: &str) -> Option<&'a str> {
        self.map.get(key).map(|(v, _)| *v)
    }

    fn number(&self, key: &str) -> Result<f64> {
        let text = self.required(key)?;
        parse_decimal(text).ok_or_else(|| {
            parse_err(self.path, self.map[key].1, format!("`{key}` is not a number: `{text}`"))
        })
    }

    fn boolean(&self, key: &str) -> Result<Option<bool>> {
        match self.optional(key) {
            None => Ok(None),
            Some("true") => Ok(Some(true)),
            Some("false") => Ok(Some(false)),
            Some(other) => Err(parse_err(
                self.path,
                self.map[key].1,
                format!("`{key}` must be true or false, got `{other}`"),
            )),
        }
    }
}

fn parse_segments(text: &str, path: &Path, line: usize) -> Result<Vec<(String, Period, Period)>> {
    text.split(',')
        .map(|seg| {
            let seg = seg.trim();
            let mut parts = seg.rsplitn(3, ':');
            let to = parts.next().and_then(parse_year);
            let from = parts.next().and_then(parse_year);
            let label = parts.next().filter(|l| !l.is_empty());
            match (label, from, to) {
                (Some(l), Some(f), Some(t)) => Ok((l.to_string(), Period(f), Period(t))),
                _ => Err(parse_err(path, line, format!("bad splice segment `{seg}`, expected label:from:to"))),
            }
        })
        .collect()
}

/// Parses manifest text; file paths resolve against `base_dir`.
pub fn parse_manifest(text: &str, path: &Path, base_dir: &Path) -> Result<Manifest> {
    let mut manifest = Manifest::default();
    for section in parse_sections(text, path)? {
        match section.kind.as_str() {
            "" if section.entries.is_empty() => {}
            "dataset" => {
                let f = Fields::new(
                    path,
                    &section,
                    &["country", "label", "role", "file", "currency", "unit_scale", "convention_note", "synthetic"],
                )?;
                let unit_scale = f.number("unit_scale")?;
                if unit_scale <= 0.0 {
                    return Err(Error::Manifest(format!(
                        "{}:{}: unit_scale must be positive",
                        path.display(),
                        section.line
                    )));
                }
                let file = PathBuf::from(f.required("file")?);
                manifest.datasets.push(DatasetEntry {
                    country: f.required("country")?.to_string(),
                    label: f.required("label")?.to_string(),
                    role: f.required("role")?.parse()?,
                    path: base_dir.join(&file),
                    file,
                    currency: f.required("currency")?.to_string(),
                    unit_scale,
                    convention_note: f.optional("convention_note").unwrap_or_default().to_string(),
                    synthetic: f.boolean("synthetic")?.unwrap_or(false),
                });
            }
            "splice" => {
                let f = Fields::new(path, &section, &["country", "label", "segments"])?;
                let segments = parse_segments(f.required("segments")?, path, f.map["segments"].1)?;
                manifest.splices.push(SpliceDecl {
                    country: f.required("country")?.to_string(),
                    plan: SplicePlan {
                        label: f.required("label")?.to_string(),
                        segments,
                    },
                });
            }
            "aggregate" => {
                let f = Fields::new(path, &section, &["country", "label", "terms"])?;
                manifest.aggregates.push(AggregateDecl {
                    country: f.required("country")?.to_string(),
                    label: f.required("label")?.to_string(),
                    terms: AggregateSpec::parse_terms(f.required("terms")?)?,
                });
            }
            "" => {
                return Err(parse_err(path, section.entries[0].2, "key outside of any section"));
            }
            other => {
                return Err(parse_err(path, section.line, format!("unknown section [{other}]")));
            }
        }
    }

    let mut seen = BTreeSet::new();
    let labels = manifest
        .datasets
        .iter()
        .map(|d| (&d.country, &d.label))
        .chain(manifest.splices.iter().map(|s| (&s.country, &s.plan.label)))
        .chain(manifest.aggregates.iter().map(|a| (&a.country, &a.label)));
    for (country, label) in labels {
        if !seen.insert((country.clone(), label.clone())) {
            return Err(Error::Manifest(format!(
                "duplicate series ({country}, {label})"
            )));
        }
    }
    Ok(manifest)
}

/// Reads a manifest and checks that every data file it names exists.
pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = read_text(path)?;
    let base_dir = path.parent().unwrap_or(Path::new("."));
    let manifest = parse_manifest(&text, path, base_dir)?;
    for d in &manifest.datasets {
        fs::metadata(&d.path).map_err(|e| Error::io(&d.path, e))?;
    }
    Ok(manifest)
}

pub fn load_series(entry: &DatasetEntry) -> Result<TimeSeries> {
    let text = read_text(&entry.path)?;
    parse_series(&text, &entry.path, &entry.label, &entry.currency, entry.unit_scale)
}

/// A series resolved from a manifest, plus any warnings raised composing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub series: TimeSeries,
    pub warnings: Vec<CompositionWarning>,
}

impl Manifest {
    /// Distinct countries in order of first appearance.
    pub fn countries(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for d in &self.datasets {
            if !out.contains(&d.country.as_str()) {
                out.push(&d.country);
            }
        }
        out
    }

    pub fn dataset(&self, country: &str, label: &str) -> Option<&DatasetEntry> {
        self.datasets
            .iter()
            .find(|d| d.country == country && d.label == label)
    }

    pub fn datasets_for<'a>(&'a self, country: &'a str) -> impl Iterator<Item = &'a DatasetEntry> + 'a {
        self.datasets.iter().filter(move |d| d.country == country)
    }

    fn splices_for(&self, country: &str) -> Vec<SplicePlan> {
        self.splices
            .iter()
            .filter(|s| s.country == country)
            .map(|s| s.plan.clone())
            .collect()
    }

    /// Every dataset of `country`, loaded and keyed by label.
    pub fn universe(&self, country: &str) -> Result<BTreeMap<String, TimeSeries>> {
        self.datasets_for(country)
            .map(|d| Ok((d.label.clone(), load_series(d)?)))
            .collect()
    }

    /// Loads a dataset, splice or aggregate by `(country, label)`.
    pub fn resolve(&self, country: &str, label: &str) -> Result<Resolved> {
        let unknown = || Error::UnknownSeries(format!("({country}, {label})"));
        if !self.countries().contains(&country) {
            return Err(unknown());
        }
        if let Some(d) = self.dataset(country, label) {
            return Ok(Resolved {
                series: load_series(d)?,
                warnings: Vec::new(),
            });
        }
        let spec = if let Some(a) = self
            .aggregates
            .iter()
            .find(|a| a.country == country && a.label == label)
        {
            AggregateSpec::new(label, a.terms.clone())
        } else if self
            .splices
            .iter()
            .any(|s| s.country == country && s.plan.label == label)
        {
            AggregateSpec::new(label, vec![Term::plus(label)])
        } else {
            return Err(unknown());
        };
        let spec = spec.with_splices(self.splices_for(country));
        let composed = normalize::compose_aggregate(&spec, &self.universe(country)?)?;
        Ok(Resolved {
            series: composed.series,
            warnings: composed.warnings,
        })
    }
}

/// Parses an economy description:
///
/// ```text
/// money_stock = 5000000
///
/// [good]
/// name = coal
/// quantity = 10000000
/// final = false
/// exchanges = 10
/// ```
///
/// Goods are listed in purchase-cycle order.
pub fn parse_economy(text: &str, path: &Path) -> Result<Economy> {
    let mut money_stock = None;
    let mut goods = Vec::new();
    let mut exchanges = BTreeMap::new();
    for section in parse_sections(text, path)? {
        match section.kind.as_str() {
            "" => {
                if section.entries.is_empty() {
                    continue;
                }
                let f = Fields::new(path, &section, &["money_stock"])?;
                money_stock = Some(f.number("money_stock")?);
            }
            "good" => {
                let f = Fields::new(path, &section, &["name", "quantity", "final", "exchanges"])?;
                let name = f.required("name")?.to_string();
                let count_text = f.required("exchanges")?;
                let count: u32 = count_text.parse().map_err(|_| {
                    parse_err(path, f.map["exchanges"].1, format!("bad exchange count `{count_text}`"))
                })?;
                let is_final = f
                    .boolean("final")?
                    .ok_or_else(|| Error::Manifest(format!("good `{name}` is missing `final`")))?;
                if exchanges.insert(name.clone(), count).is_some() {
                    return Err(parse_err(path, section.line, format!("duplicate good `{name}`")));
                }
                goods.push(Good::new(name, f.number("quantity")?, is_final));
            }
            other => return Err(parse_err(path, section.line, format!("unknown section [{other}]"))),
        }
    }
    let money_stock = money_stock.ok_or_else(|| parse_err(path, 1, "missing `money_stock`"))?;
    Economy::new(money_stock, goods, exchanges)
}

pub fn load_economy(path: &Path) -> Result<Economy> {
    parse_economy(&read_text(path)?, path)
}

/// One input row of the debt table.
#[derive(Debug, Clone, PartialEq)]
pub struct DebtInput {
    pub line: usize,
    pub country: String,
    pub debt_start: f64,
    pub debt_end: f64,
    pub multiplier: f64,
    pub alt_multiplier: Option<f64>,
    pub printed: Option<PrintedFigures>,
}

const DEBT_REQUIRED: [&str; 4] = ["country", "debt_start", "debt_end", "multiplier"];
const DEBT_OPTIONAL: [&str; 3] = ["alt_multiplier", "printed_normalized", "printed_pct"];

/// Parses the debt-table CSV. The header starts with
/// `country,debt_start,debt_end,multiplier` and may continue with
/// `alt_multiplier`, `printed_normalized`, `printed_pct`. Optional cells may
/// be empty; the two printed columns go together.
pub fn parse_debt_inputs(text: &str, path: &Path) -> Result<Vec<DebtInput>> {
    if text.lines().all(|l| l.trim().is_empty() || l.starts_with('#')) {
        return Ok(Vec::new());
    }
    let table = parse_table(text, path)?;
    let header_ok = table.header.len() >= DEBT_REQUIRED.len()
        && table.header.iter().zip(DEBT_REQUIRED.iter().chain(&DEBT_OPTIONAL)).all(|(h, e)| h == e)
        && table.header.len() <= DEBT_REQUIRED.len() + DEBT_OPTIONAL.len();
    if !header_ok {
        return Err(parse_err(
            path,
            1,
            format!(
                "header must be `{}` optionally followed by {}",
                DEBT_REQUIRED.join(","),
                DEBT_OPTIONAL.join(",")
            ),
        ));
    }
    let mut out = Vec::with_capacity(table.rows.len());
    for (line, fields) in &table.rows {
        let line = *line;
        let num = |i: usize| -> Result<f64> {
            parse_decimal(fields[i].trim()).ok_or_else(|| {
                parse_err(path, line, format!("`{}` is not a number: `{}`", table.header[i], fields[i]))
            })
        };
        let opt = |name: &str| -> Result<Option<f64>> {
            match table.column(name) {
                Some(i) if !fields[i].trim().is_empty() => num(i).map(Some),
                _ => Ok(None),
            }
        };
        let country = fields[0].trim();
        if country.is_empty() {
            return Err(parse_err(path, line, "empty country"));
        }
        let printed = match (opt("printed_normalized")?, opt("printed_pct")?) {
            (Some(normalized_end), Some(pct)) => Some(PrintedFigures { normalized_end, pct }),
            (None, None) => None,
            _ => return Err(parse_err(path, line, "printed_normalized and printed_pct go together")),
        };
        out.push(DebtInput {
            line,
            country: country.to_string(),
            debt_start: num(1)?,
            debt_end: num(2)?,
            multiplier: num(3)?,
            alt_multiplier: opt("alt_multiplier")?,
            printed,
        });
    }
    Ok(out)
}

pub fn load_debt_inputs(path: &Path) -> Result<Vec<DebtInput>> {
    parse_debt_inputs(&read_text(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.csv")
    }

    #[test]
    fn decimal_literals() {
        assert_eq!(parse_decimal("12.5"), Some(12.5));
        assert_eq!(parse_decimal("-3"), Some(-3.0));
        assert_eq!(parse_decimal("1e9"), Some(1e9));
        for bad in ["", "inf", "NaN", "1.", ".5", "0x10", "1e", "1,0", " 1"] {
            assert_eq!(parse_decimal(bad), None, "{bad:?}");
        }
    }

    #[test]
    fn minimal_file() {
        let s = parse_series("year,value\n2000,1\n2001,2", p(), "x", "USD", 1.0).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.get(Period(2001)), Some(2.0));
    }

    #[test]
    fn comments_are_skipped() {
        let s = parse_series("# note\nyear,value\n# mid\n2000,1\n", p(), "x", "USD", 1.0).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn strict_errors_carry_line_numbers() {
        let cases = [
            ("year,value\n2001,1\n2000,2\n", 3),
            ("year,value\n2000,1\n2000,2\n", 3),
            ("year,value\n2000,abc\n", 2),
            ("year,value\n200,1\n", 2),
            ("year,value\n2000,1,3\n", 2),
            ("year,value\n2000,1\n\n2001,2\n", 3),
            ("year,amount\n2000,1\n", 1),
        ];
        for (text, want) in cases {
            match parse_series(text, p(), "x", "USD", 1.0) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let s = TimeSeries::from_years("x", "GBP", 1e6, [(1999, 0.1 + 0.2), (2000, -1e-7), (2001, 123456789.125)])
            .unwrap();
        let back = parse_series(&series_to_csv(&s), p(), "x", "GBP", 1e6).unwrap();
        assert_eq!(back, s);
    }

    const MANIFEST: &str = "\
# comment
[dataset]
country = Atlantis
label = M2
role = money
file = m2.csv
currency = ATL
unit_scale = 1e9

[dataset]
country = Atlantis
label = GDP
role = gdp
file = gdp.csv
currency = ATL
unit_scale = 1e9
convention_note = nominal
synthetic = true
";

    #[test]
    fn manifest_parses() {
        let m = parse_manifest(MANIFEST, p(), Path::new("/data")).unwrap();
        assert_eq!(m.datasets.len(), 2);
        assert_eq!(m.countries(), ["Atlantis"]);
        assert_eq!(m.datasets[0].path, Path::new("/data/m2.csv"));
        assert_eq!(m.datasets[1].role, Role::Gdp);
        assert!(m.datasets[1].synthetic);
        assert!(!m.datasets[0].synthetic);
    }

    #[test]
    fn empty_manifest_is_valid() {
        let m = parse_manifest("# nothing here\n", p(), Path::new(".")).unwrap();
        assert!(m.datasets.is_empty());
    }

    #[test]
    fn manifest_errors() {
        let dup = format!("{MANIFEST}\n[dataset]\ncountry = Atlantis\nlabel = M2\nrole = money\nfile = x.csv\ncurrency = ATL\nunit_scale = 1\n");
        assert!(matches!(parse_manifest(&dup, p(), Path::new(".")), Err(Error::Manifest(_))));
        let bad_role = MANIFEST.replace("role = money", "role = credit");
        assert!(matches!(parse_manifest(&bad_role, p(), Path::new(".")), Err(Error::Manifest(_))));
        let missing = MANIFEST.replace("currency = ATL\nunit_scale = 1e9\n\n", "unit_scale = 1e9\n\n");
        assert!(matches!(parse_manifest(&missing, p(), Path::new(".")), Err(Error::Manifest(_))));
        let unknown_key = MANIFEST.replace("synthetic = true", "colour = blue");
        assert!(matches!(parse_manifest(&unknown_key, p(), Path::new(".")), Err(Error::Parse { .. })));
        let zero_scale = MANIFEST.replace("unit_scale = 1e9\n\n", "unit_scale = 0\n\n");
        assert!(parse_manifest(&zero_scale, p(), Path::new(".")).is_err());
    }

    #[test]
    fn splice_and_aggregate_sections() {
        let text = "[splice]\ncountry = J\nlabel = M1\nsegments = M1@a:1985:1997, M1@b:1998:2010\n\n[aggregate]\ncountry = J\nlabel = M1+M2\nterms = +M1 +M2\n";
        let m = parse_manifest(text, p(), Path::new(".")).unwrap();
        assert_eq!(
            m.splices[0].plan.segments,
            vec![
                ("M1@a".to_string(), Period(1985), Period(1997)),
                ("M1@b".to_string(), Period(1998), Period(2010)),
            ]
        );
        assert_eq!(m.aggregates[0].terms, vec![Term::plus("M1"), Term::plus("M2")]);
        let bad = text.replace("M1@b:1998:2010", "M1@b:1998");
        assert!(parse_manifest(&bad, p(), Path::new(".")).is_err());
    }

    #[test]
    fn economy_file() {
        let text = "money_stock = 10\n[good]\nname = x\nquantity = 10\nfinal = true\nexchanges = 1\n";
        let e = parse_economy(text, p()).unwrap();
        assert_eq!(e.velocity(), 1);
        assert!(parse_economy("[good]\nname = x\nquantity = 1\nfinal = true\nexchanges = 1\n", p()).is_err());
        assert!(parse_economy(&text.replace("exchanges = 1", "exchanges = -1"), p()).is_err());
    }

    #[test]
    fn debt_inputs() {
        let text = "country,debt_start,debt_end,multiplier,alt_multiplier\nUK,354.4,759.5,2.6,\nSpain,361,561,2.0,3.0\n";
        let rows = parse_debt_inputs(text, p()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].alt_multiplier, None);
        assert_eq!(rows[1].alt_multiplier, Some(3.0));
        assert!(parse_debt_inputs("", p()).unwrap().is_empty());
        match parse_debt_inputs("country,debt_start,debt_end,multiplier\nUK,1,x,2\n", p()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_debt_inputs("country,start,end\n", p()).is_err());
    }
}
