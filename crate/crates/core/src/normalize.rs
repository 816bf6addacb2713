//! Money-supply normalization of price-derived series.
//!
//! A nominal series `raw_t` is divided by the growth of a monetary aggregate
//! since a base period: `raw_t / (1 + (m_t - m_base) / m_base)`. That divisor
//! is just `m_t / m_base`, and the implementation uses the simplified form
//! `raw_t * (m_base / m_t)`, which is exact at the base period.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::series::{self, Period, SpliceSegment, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub label: String,
    pub sign: Sign,
}

impl Term {
    pub fn plus(label: impl Into<String>) -> Self {
        Term {
            label: label.into(),
            sign: Sign::Plus,
        }
    }

    pub fn minus(label: impl Into<String>) -> Self {
        Term {
            label: label.into(),
            sign: Sign::Minus,
        }
    }
}

/// A series assembled from successive generations; becomes available to the
/// aggregate's terms under `label`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplicePlan {
    pub label: String,
    pub segments: Vec<(String, Period, Period)>,
}

/// A named monetary aggregate: a signed sum of component series, some of
/// which may first have to be spliced together from several generations.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateSpec {
    pub name: String,
    pub terms: Vec<Term>,
    pub splice_plan: Vec<SplicePlan>,
}

impl AggregateSpec {
    pub fn new(name: impl Into<String>, terms: Vec<Term>) -> Self {
        AggregateSpec {
            name: name.into(),
            terms,
            splice_plan: Vec::new(),
        }
    }

    pub fn with_splices(mut self, plans: Vec<SplicePlan>) -> Self {
        self.splice_plan = plans;
        self
    }

    /// Parses `+M2 -RMF` style term lists. A bare label counts as `+`.
    pub fn parse_terms(text: &str) -> Result<Vec<Term>> {
        let terms: Vec<Term> = text
            .split_whitespace()
            .map(|tok| match tok.split_at(tok.len().min(1)) {
                ("+", rest) if !rest.is_empty() => Ok(Term::plus(rest)),
                ("-", rest) if !rest.is_empty() => Ok(Term::minus(rest)),
                ("+" | "-", _) => Err(Error::Manifest(format!("dangling sign in `{text}`"))),
                _ => Ok(Term::plus(tok)),
            })
            .collect::<Result<_>>()?;
        if terms.is_empty() {
            return Err(Error::Manifest("aggregate has no terms".into()));
        }
        Ok(terms)
    }
}

/// A composed value below zero: a subtracted component exceeded what it was
/// subtracted from. Reported, not fatal.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionWarning {
    pub aggregate: String,
    pub period: Period,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    pub series: TimeSeries,
    pub warnings: Vec<CompositionWarning>,
}

/// Builds `spec` from `universe`: splices first, then aligns every term to
/// the common periods and sums them with their signs.
pub fn compose_aggregate(
    spec: &AggregateSpec,
    universe: &BTreeMap<String, TimeSeries>,
) -> Result<Composition> {
    if !spec.terms.iter().any(|t| t.sign == Sign::Plus) {
        return Err(Error::Domain(format!(
            "aggregate `{}` has no positive term",
            spec.name
        )));
    }

    let mut spliced: BTreeMap<&str, TimeSeries> = BTreeMap::new();
    for plan in &spec.splice_plan {
        let segments = plan
            .segments
            .iter()
            .map(|(label, from, to)| {
                let s = spliced
                    .get(label.as_str())
                    .or_else(|| universe.get(label))
                    .ok_or_else(|| Error::UnknownSeries(label.clone()))?;
                Ok(SpliceSegment::new(s.clone(), *from, *to))
            })
            .collect::<Result<Vec<_>>>()?;
        let joined = series::splice(&segments)?;
        spliced.insert(plan.label.as_str(), joined);
    }

    let resolve = |label: &str| -> Result<&TimeSeries> {
        spliced
            .get(label)
            .or_else(|| universe.get(label))
            .ok_or_else(|| Error::UnknownSeries(label.to_string()))
    };

    let resolved = spec
        .terms
        .iter()
        .map(|t| Ok((resolve(&t.label)?, t.sign)))
        .collect::<Result<Vec<_>>>()?;

    // intersect periods pairwise; align also enforces a shared currency
    let mut common = resolved[0].0.clone();
    for (s, _) in &resolved[1..] {
        common = series::align(&common, s)?.0;
    }
    let periods: Vec<Period> = common.periods().collect();
    let scale = resolved
        .iter()
        .map(|(s, _)| s.unit_scale())
        .fold(f64::INFINITY, f64::min);

    let mut totals = vec![0.0; periods.len()];
    for (s, sign) in &resolved {
        let s = s.rescaled(scale)?;
        for (total, p) in totals.iter_mut().zip(&periods) {
            *total += sign.factor() * s.require(*p)?;
        }
    }

    let points: Vec<(Period, f64)> = periods.into_iter().zip(totals).collect();
    let warnings = points
        .iter()
        .filter(|(_, v)| *v < 0.0)
        .map(|&(period, value)| CompositionWarning {
            aggregate: spec.name.clone(),
            period,
            value,
        })
        .collect();
    let series = TimeSeries::new(spec.name.clone(), common.currency(), scale, points)?;
    Ok(Composition { series, warnings })
}

/// A nominal series re-expressed in base-period money.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSeries {
    pub base: Period,
    pub raw: TimeSeries,
    pub money: TimeSeries,
    pub values: TimeSeries,
}

impl NormalizedSeries {
    /// `m_t / m_base` for every period.
    pub fn money_growth(&self) -> impl Iterator<Item = (Period, f64)> + '_ {
        let base = self.money.get(self.base).unwrap_or(f64::NAN);
        self.money.points().iter().map(move |&(p, m)| (p, m / base))
    }
}

/// `raw_t * m_base / m_t` over the periods both series cover.
pub fn normalize(raw: &TimeSeries, money: &TimeSeries, base: Period) -> Result<NormalizedSeries> {
    let (raw, money) = series::align(raw, money)?;
    raw.require(base)?;
    let m_base = money.require(base)?;
    if m_base == 0.0 {
        return Err(Error::DegenerateBase(format!(
            "money series `{}` is zero at base {base}",
            money.label()
        )));
    }
    let mut points = Vec::with_capacity(raw.len());
    for (&(p, r), &(_, m)) in raw.points().iter().zip(money.points()) {
        if m == 0.0 {
            return Err(Error::DegenerateBase(format!(
                "money series `{}` is zero at {p}",
                money.label()
            )));
        }
        points.push((p, r * (m_base / m)));
    }
    let values = TimeSeries::new(
        format!("{} / {} (base {base})", raw.label(), money.label()),
        raw.currency(),
        raw.unit_scale(),
        points,
    )?;
    Ok(NormalizedSeries {
        base,
        raw,
        money,
        values,
    })
}

/// Same inputs, normalized to a different base period.
pub fn rebase(n: &NormalizedSeries, new_base: Period) -> Result<NormalizedSeries> {
    normalize(&n.raw, &n.money, new_base)
}

/// One row of the government-debt comparison: debt at the end of a window
/// deflated by how much the money supply grew over it.
#[derive(Debug, Clone, PartialEq)]
pub struct DebtRow {
    pub country: String,
    pub debt_start: f64,
    pub debt_end: f64,
    pub multiplier: f64,
    pub alt_multiplier: Option<f64>,
    pub normalized_end: f64,
    pub pct_change: f64,
    pub alt_normalized_end: Option<f64>,
    pub alt_pct_change: Option<f64>,
}

impl DebtRow {
    /// Percent change rounded to a whole percent, as the table presents it.
    pub fn pct_rounded(&self) -> i64 {
        round_pct(self.pct_change)
    }

    pub fn alt_pct_rounded(&self) -> Option<i64> {
        self.alt_pct_change.map(round_pct)
    }
}

fn round_pct(fraction: f64) -> i64 {
    (fraction * 100.0).round() as i64
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

pub fn normalize_debt_row(
    country: &str,
    debt_start: f64,
    debt_end: f64,
    multiplier: f64,
    alt_multiplier: Option<f64>,
) -> Result<DebtRow> {
    positive("debt_start", debt_start)?;
    positive("multiplier", multiplier)?;
    if !debt_end.is_finite() {
        return Err(Error::Domain(format!("debt_end must be finite, got {debt_end}")));
    }
    let alt_multiplier = alt_multiplier
        .map(|m| positive("alt_multiplier", m))
        .transpose()?;
    let normalized_end = debt_end / multiplier;
    let alt_normalized_end = alt_multiplier.map(|m| debt_end / m);
    Ok(DebtRow {
        country: country.to_string(),
        debt_start,
        debt_end,
        multiplier,
        alt_multiplier,
        normalized_end,
        pct_change: normalized_end / debt_start - 1.0,
        alt_normalized_end,
        alt_pct_change: alt_normalized_end.map(|n| n / debt_start - 1.0),
    })
}

/// Figures a published table printed for a row, for cross-checking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedFigures {
    pub normalized_end: f64,
    pub pct: f64,
}

/// Tolerances for agreeing with printed figures: half a unit on the value,
/// one point on the rounded percentage.
pub const PRINTED_VALUE_TOL: f64 = 0.5;
pub const PRINTED_PCT_TOL: f64 = 1.0;

/// Describes how a computed row disagrees with the printed one, if it does.
pub fn printed_mismatch(row: &DebtRow, printed: &PrintedFigures) -> Option<String> {
    let value_off = (row.normalized_end - printed.normalized_end).abs() > PRINTED_VALUE_TOL;
    let pct_off = (row.pct_rounded() as f64 - printed.pct).abs() > PRINTED_PCT_TOL;
    (value_off || pct_off).then(|| {
        format!(
            "computed {:.1} / {}% vs printed {} / {}%",
            row.normalized_end,
            row.pct_rounded(),
            printed.normalized_end,
            printed.pct
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(label: &str, pts: &[(i32, f64)]) -> TimeSeries {
        TimeSeries::from_years(label, "USD", 1.0, pts.iter().copied()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
    }

    #[test]
    fn parse_terms() {
        let t = AggregateSpec::parse_terms("+M2 -RMF M3").unwrap();
        assert_eq!(t, vec![Term::plus("M2"), Term::minus("RMF"), Term::plus("M3")]);
        assert!(AggregateSpec::parse_terms("").is_err());
        assert!(AggregateSpec::parse_terms("+ M2").is_err());
    }

    #[test]
    fn single_term_is_identity() {
        let m2 = ts("M2", &[(2000, 5.0), (2001, 6.0)]);
        let u = BTreeMap::from([("M2".to_string(), m2.clone())]);
        let c = compose_aggregate(&AggregateSpec::new("M2", vec![Term::plus("M2")]), &u).unwrap();
        assert_eq!(c.series.points(), m2.points());
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn subtraction_and_warnings() {
        let m2 = ts("M2", &[(1990, 100.0), (1991, 110.0), (1992, 120.0)]);
        let rmf = ts("RMF", &[(1990, 30.0), (1991, 120.0), (1992, 20.0)]);
        let u = BTreeMap::from([("M2".into(), m2), ("RMF".into(), rmf)]);
        let spec = AggregateSpec::new("M2-ex-RMF", vec![Term::plus("M2"), Term::minus("RMF")]);
        let c = compose_aggregate(&spec, &u).unwrap();
        assert_eq!(c.series.values().collect::<Vec<_>>(), [70.0, -10.0, 100.0]);
        assert_eq!(c.warnings.len(), 1);
        assert_eq!(c.warnings[0].period, Period(1991));
    }

    #[test]
    fn unknown_label_and_no_positive_term() {
        let u = BTreeMap::from([("M2".to_string(), ts("M2", &[(2000, 1.0)]))]);
        let spec = AggregateSpec::new("x", vec![Term::plus("M2"), Term::minus("nope")]);
        assert!(matches!(compose_aggregate(&spec, &u), Err(Error::UnknownSeries(_))));
        let spec = AggregateSpec::new("x", vec![Term::minus("M2")]);
        assert!(matches!(compose_aggregate(&spec, &u), Err(Error::Domain(_))));
    }

    #[test]
    fn composition_aligns_and_rescales() {
        let a = TimeSeries::from_years("a", "JPY", 1e12, [(2000, 1.0), (2001, 2.0)]).unwrap();
        let b = TimeSeries::from_years("b", "JPY", 1e9, [(2001, 500.0), (2002, 1.0)]).unwrap();
        let u = BTreeMap::from([("a".into(), a), ("b".into(), b)]);
        let c = compose_aggregate(&AggregateSpec::new("a+b", vec![Term::plus("a"), Term::plus("b")]), &u)
            .unwrap();
        assert_eq!(c.series.unit_scale(), 1e9);
        assert_eq!(c.series.points(), &[(Period(2001), 2500.0)]);
    }

    #[test]
    fn composition_with_splice() {
        let old = ts("M1@old", &[(1990, 1.0), (1991, 2.0), (1992, 99.0)]);
        let new = ts("M1@new", &[(1991, 98.0), (1992, 3.0), (1993, 4.0)]);
        let m2 = ts("M2", &[(1990, 10.0), (1991, 10.0), (1992, 10.0), (1993, 10.0)]);
        let u = BTreeMap::from([("M1@old".into(), old), ("M1@new".into(), new), ("M2".into(), m2)]);
        let spec = AggregateSpec::new("M1+M2", vec![Term::plus("M1"), Term::plus("M2")]).with_splices(vec![
            SplicePlan {
                label: "M1".into(),
                segments: vec![
                    ("M1@old".into(), Period(1990), Period(1991)),
                    ("M1@new".into(), Period(1992), Period(1993)),
                ],
            },
        ]);
        let c = compose_aggregate(&spec, &u).unwrap();
        assert_eq!(c.series.values().collect::<Vec<_>>(), [11.0, 12.0, 13.0, 14.0]);
    }

    #[test]
    fn constant_money_leaves_raw_unchanged() {
        let raw = ts("gdp", &[(2000, 3.0), (2001, 4.5), (2002, 7.25)]);
        let m = ts("m", &[(2000, 9.0), (2001, 9.0), (2002, 9.0)]);
        let n = normalize(&raw, &m, Period(2001)).unwrap();
        assert_eq!(n.values.points(), raw.points());
    }

    #[test]
    fn doubling_raw_and_money_is_flat() {
        let raw = ts("gdp", &[(2000, 50.0), (2005, 70.0), (2010, 100.0)]);
        let m = ts("m", &[(2000, 8.0), (2005, 11.2), (2010, 16.0)]);
        let n = normalize(&raw, &m, Period(2000)).unwrap();
        // 70 * 8 / 11.2 = 50, 100 * 8 / 16 = 50
        for v in n.values.values() {
            assert!(close(v, 50.0), "{v}");
        }
    }

    #[test]
    fn usa_debt_normalization_point() {
        let raw = ts("debt", &[(1999, 5662.0), (2009, 13972.0)]);
        let m = ts("m", &[(1999, 1.0), (2009, 2.0)]);
        let n = normalize(&raw, &m, Period(1999)).unwrap();
        assert_eq!(n.values.get(Period(2009)), Some(6986.0));
        assert_eq!(n.values.get(Period(1999)), Some(5662.0));
    }

    #[test]
    fn normalize_errors() {
        let raw = ts("gdp", &[(2000, 1.0), (2001, 1.0)]);
        let m = ts("m", &[(2000, 0.0), (2001, 1.0)]);
        assert!(matches!(normalize(&raw, &m, Period(2000)), Err(Error::DegenerateBase(_))));
        assert!(matches!(normalize(&raw, &m, Period(1999)), Err(Error::MissingPeriod { .. })));
        let m = ts("m", &[(2000, 1.0), (2001, 0.0)]);
        assert!(matches!(normalize(&raw, &m, Period(2000)), Err(Error::DegenerateBase(_))));
    }

    #[test]
    fn rebase_by_hand() {
        let raw = ts("gdp", &[(2000, 10.0), (2001, 12.0), (2002, 15.0)]);
        let m = ts("m", &[(2000, 2.0), (2001, 4.0), (2002, 5.0)]);
        let n = normalize(&raw, &m, Period(2000)).unwrap();
        let r = rebase(&n, Period(2002)).unwrap();
        // raw_t * 5 / m_t
        assert_eq!(r.values.values().collect::<Vec<_>>(), [25.0, 15.0, 15.0]);
        assert_eq!(rebase(&n, Period(2000)).unwrap(), n);
        assert!(rebase(&n, Period(2003)).is_err());
    }

    #[test]
    fn debt_rows() {
        let uk = normalize_debt_row("UK", 354.4, 759.5, 2.6, None).unwrap();
        assert!((uk.normalized_end - 292.12).abs() <= 0.5);
        assert!((uk.pct_rounded() - (-17)).abs() <= 1);

        let usa = normalize_debt_row("USA", 5662.0, 13972.0, 2.0, None).unwrap();
        assert_eq!(usa.normalized_end, 6986.0);
        assert_eq!(usa.pct_rounded(), 23);

        let spain = normalize_debt_row("Spain", 361.0, 561.0, 2.0, Some(3.0)).unwrap();
        assert_eq!(spain.alt_normalized_end, Some(187.0));
        assert_eq!(spain.alt_pct_rounded(), Some(-48));
        assert_eq!(spain.pct_rounded(), -22);

        assert!(normalize_debt_row("x", 0.0, 1.0, 1.0, None).is_err());
        assert!(normalize_debt_row("x", 1.0, 1.0, 0.0, None).is_err());
        assert!(normalize_debt_row("x", 1.0, 1.0, 1.0, Some(-2.0)).is_err());
    }

    #[test]
    fn italy_printed_figures_disagree() {
        let italy = normalize_debt_row("Italy", 1281.0, 1763.0, 2.0, Some(2.0)).unwrap();
        assert_eq!(italy.normalized_end, 881.5);
        assert_eq!(italy.pct_rounded(), -31);
        let printed = PrintedFigures {
            normalized_end: 921.0,
            pct: -37.0,
        };
        assert!(printed_mismatch(&italy, &printed).is_some());

        let usa = normalize_debt_row("USA", 5662.0, 13972.0, 2.0, None).unwrap();
        let printed = PrintedFigures {
            normalized_end: 6986.0,
            pct: 23.0,
        };
        assert_eq!(printed_mismatch(&usa, &printed), None);
    }
}
