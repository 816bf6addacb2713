//! Annual time series with alignment, splicing, and growth multipliers.
//!
//! Values are `f64` and always finite. A series carries the currency code it
//! is denominated in and a `unit_scale` (1e9 for "billions"), so two series
//! can be brought onto a common unit before any arithmetic is done on them.

use std::fmt;

use crate::error::{Error, Result};

/// A calendar year. Only annual frequency is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Period(pub i32);

impl Period {
    pub fn year(self) -> i32 {
        self.0
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i32> for Period {
    fn from(year: i32) -> Self {
        Period(year)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    label: String,
    currency: String,
    unit_scale: f64,
    points: Vec<(Period, f64)>,
}

impl TimeSeries {
    /// Builds a series, rejecting non-finite values, a non-positive unit
    /// scale, and periods that are not strictly increasing.
    pub fn new(
        label: impl Into<String>,
        currency: impl Into<String>,
        unit_scale: f64,
        points: Vec<(Period, f64)>,
    ) -> Result<Self> {
        let label = label.into();
        if !(unit_scale.is_finite() && unit_scale > 0.0) {
            return Err(Error::InvalidSeries(format!(
                "`{label}`: unit scale must be positive and finite, got {unit_scale}"
            )));
        }
        for (period, value) in &points {
            if !value.is_finite() {
                return Err(Error::InvalidSeries(format!(
                    "`{label}`: non-finite value at {period}"
                )));
            }
        }
        for pair in points.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::InvalidSeries(format!(
                    "`{label}`: period {} does not follow {}",
                    pair[1].0, pair[0].0
                )));
            }
        }
        Ok(TimeSeries {
            label,
            currency: currency.into(),
            unit_scale,
            points,
        })
    }

    /// Convenience constructor from `(year, value)` pairs.
    pub fn from_years(
        label: impl Into<String>,
        currency: impl Into<String>,
        unit_scale: f64,
        points: impl IntoIterator<Item = (i32, f64)>,
    ) -> Result<Self> {
        let points = points.into_iter().map(|(y, v)| (Period(y), v)).collect();
        Self::new(label, currency, unit_scale, points)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn currency(&self) -> &str {
        &self.currency
    }

    pub fn unit_scale(&self) -> f64 {
        self.unit_scale
    }

    pub fn points(&self) -> &[(Period, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn periods(&self) -> impl Iterator<Item = Period> + '_ {
        self.points.iter().map(|(p, _)| *p)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|(_, v)| *v)
    }

    pub fn first_period(&self) -> Option<Period> {
        self.points.first().map(|(p, _)| *p)
    }

    pub fn last_period(&self) -> Option<Period> {
        self.points.last().map(|(p, _)| *p)
    }

    pub fn get(&self, period: Period) -> Option<f64> {
        self.points
            .binary_search_by_key(&period, |(p, _)| *p)
            .ok()
            .map(|i| self.points[i].1)
    }

    pub(crate) fn require(&self, period: Period) -> Result<f64> {
        self.get(period).ok_or_else(|| Error::MissingPeriod {
            label: self.label.clone(),
            period,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Points whose period lies in `from..=to`, metadata unchanged.
    pub fn slice(&self, from: Period, to: Period) -> TimeSeries {
        TimeSeries {
            label: self.label.clone(),
            currency: self.currency.clone(),
            unit_scale: self.unit_scale,
            points: self
                .points
                .iter()
                .filter(|(p, _)| *p >= from && *p <= to)
                .copied()
                .collect(),
        }
    }

    /// Re-expresses the series in units of `unit_scale`. Values are multiplied
    /// by `self.unit_scale / unit_scale`.
    pub fn rescaled(&self, unit_scale: f64) -> Result<TimeSeries> {
        let factor = self.unit_scale / unit_scale;
        TimeSeries::new(
            self.label.clone(),
            self.currency.clone(),
            unit_scale,
            self.points.iter().map(|&(p, v)| (p, v * factor)).collect(),
        )
    }
}

fn check_currency(a: &TimeSeries, b: &TimeSeries) -> Result<()> {
    if a.currency != b.currency {
        return Err(Error::Currency {
            left: a.label.clone(),
            left_currency: a.currency.clone(),
            right: b.label.clone(),
            right_currency: b.currency.clone(),
        });
    }
    Ok(())
}

/// Restricts both series to their common periods and puts them on the finer
/// of the two unit scales.
pub fn align(a: &TimeSeries, b: &TimeSeries) -> Result<(TimeSeries, TimeSeries)> {
    check_currency(a, b)?;
    let scale = a.unit_scale.min(b.unit_scale);
    let a = a.rescaled(scale)?;
    let b = b.rescaled(scale)?;

    let mut left = Vec::new();
    let mut right = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.points.len() && j < b.points.len() {
        let (pa, va) = a.points[i];
        let (pb, vb) = b.points[j];
        match pa.cmp(&pb) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                left.push((pa, va));
                right.push((pb, vb));
                i += 1;
                j += 1;
            }
        }
    }
    if left.is_empty() {
        return Err(Error::Alignment {
            left: a.label,
            right: b.label,
        });
    }
    Ok((
        TimeSeries { points: left, ..a },
        TimeSeries { points: right, ..b },
    ))
}

/// One generation of a series and the window of years it is authoritative for.
#[derive(Debug, Clone, PartialEq)]
pub struct SpliceSegment {
    pub series: TimeSeries,
    pub from: Period,
    pub to: Period,
}

impl SpliceSegment {
    pub fn new(series: TimeSeries, from: impl Into<Period>, to: impl Into<Period>) -> Self {
        SpliceSegment {
            series,
            from: from.into(),
            to: to.into(),
        }
    }
}

/// Concatenates successive series generations. Windows must be given in order
/// and tile a contiguous run of years; every year of a window must be present
/// in its segment. Values a segment holds outside its window are ignored.
pub fn splice(segments: &[SpliceSegment]) -> Result<TimeSeries> {
    let first = segments
        .first()
        .ok_or_else(|| Error::Splice("no segments given".into()))?;

    if let [only] = segments {
        if only.series.first_period() == Some(only.from) && only.series.last_period() == Some(only.to)
        {
            return Ok(only.series.clone());
        }
    }

    let scale = segments
        .iter()
        .map(|s| s.series.unit_scale)
        .fold(f64::INFINITY, f64::min);
    let mut points = Vec::new();
    let mut provenance = Vec::with_capacity(segments.len());
    let mut expected_start: Option<Period> = None;

    for seg in segments {
        check_currency(&first.series, &seg.series)?;
        if seg.to < seg.from {
            return Err(Error::Splice(format!(
                "`{}`: window {}-{} is empty",
                seg.series.label, seg.from, seg.to
            )));
        }
        if let Some(start) = expected_start {
            if seg.from > start {
                return Err(Error::Splice(format!(
                    "gap before `{}`: years {}-{} are not covered",
                    seg.series.label,
                    start,
                    seg.from.0 - 1
                )));
            }
            if seg.from < start {
                return Err(Error::Splice(format!(
                    "`{}` window starting {} overlaps the previous window ending {}",
                    seg.series.label,
                    seg.from,
                    start.0 - 1
                )));
            }
        }
        let rescaled = seg.series.rescaled(scale)?;
        for year in seg.from.0..=seg.to.0 {
            let value = rescaled.get(Period(year)).ok_or_else(|| {
                Error::Splice(format!(
                    "`{}` has no value for {year} inside its window {}-{}",
                    seg.series.label, seg.from, seg.to
                ))
            })?;
            points.push((Period(year), value));
        }
        provenance.push(format!("{}[{}-{}]", seg.series.label, seg.from, seg.to));
        expected_start = Some(Period(seg.to.0 + 1));
    }

    TimeSeries::new(
        provenance.join(" + "),
        first.series.currency.clone(),
        scale,
        points,
    )
}

/// Ratio `s[to] / s[from]`.
pub fn growth_multiplier(s: &TimeSeries, from: Period, to: Period) -> Result<f64> {
    let base = s.require(from)?;
    let end = s.require(to)?;
    if base == 0.0 {
        return Err(Error::DegenerateBase(format!(
            "`{}` is zero at {from}",
            s.label
        )));
    }
    Ok(end / base)
}
