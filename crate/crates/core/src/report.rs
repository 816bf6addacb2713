//! Text and CSV rendering of simulator and normalizer results.

use std::fmt::Write as _;

use crate::exchange::{self, Economy, Summary};
use crate::normalize::{DebtRow, NormalizedSeries};
use crate::ingest::DebtInput;
use crate::normalize::printed_mismatch;

/// `1234567.0` -> `1,234,567`; non-integers keep up to six decimals.
pub fn fmt_amount(v: f64) -> String {
    if v.is_finite() && v.fract() == 0.0 && v.abs() < 1e15 {
        group_thousands(v as i64)
    } else {
        let s = format!("{v:.6}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        match s.split_once('.') {
            Some((int, frac)) => {
                let int: i64 = int.parse().unwrap_or(0);
                let sign = if v < 0.0 && int == 0 { "-" } else { "" };
                format!("{sign}{}.{frac}", group_thousands(int))
            }
            None => s.to_string(),
        }
    }
}

fn group_thousands(n: i64) -> String {
    let digits = n.unsigned_abs().to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3 + 1);
    if n < 0 {
        out.push('-');
    }
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

/// Prices read best with cents: `0.1` -> `0.10`, `2.5` -> `2.50`.
pub fn fmt_price(v: f64) -> String {
    let cents = format!("{v:.2}");
    if cents.parse::<f64>() == Ok(v) {
        cents
    } else {
        fmt_amount(v)
    }
}

fn pad_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c == 0 {
                let _ = write!(line, "{cell:<w$}", w = widths[c]);
            } else {
                let _ = write!(line, "  {cell:>w$}", w = widths[c]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// The economy laid out like the exchange breakdown: money stock times
/// velocity on one side, one row per good on the other.
pub fn economy_text(e: &Economy) -> String {
    let prices = exchange::solve_prices(e);
    let mut rows = vec![vec![
        "good".to_string(),
        "exchanges".into(),
        "units/exchange".into(),
        "quantity".into(),
        "unit price".into(),
        "total spend".into(),
        "final".into(),
    ]];
    for g in e.goods() {
        let n = e.exchange_count(&g.name).unwrap_or(0);
        let p = prices[&g.name];
        rows.push(vec![
            g.name.clone(),
            format!("x {n}"),
            fmt_amount(g.quantity / f64::from(n)),
            fmt_amount(g.quantity),
            format!("${}", fmt_price(p)),
            format!("${}", fmt_amount(g.quantity * p)),
            if g.is_final { "yes" } else { "no" }.into(),
        ]);
    }
    let mut out = format!(
        "${} x V = {} (velocity {})\n",
        fmt_amount(e.money_stock()),
        fmt_amount(e.money_stock() * e.velocity() as f64),
        e.velocity()
    );
    out.push_str(&pad_table(&rows));
    out
}

pub fn economy_csv(e: &Economy) -> String {
    let prices = exchange::solve_prices(e);
    let mut out = String::from("good,quantity,unit_price,exchanges,total_spend,is_final\n");
    for g in e.goods() {
        let p = prices[&g.name];
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            g.name,
            g.quantity,
            p,
            e.exchange_count(&g.name).unwrap_or(0),
            g.quantity * p,
            g.is_final
        );
    }
    out
}

pub fn summary_text(s: &Summary) -> String {
    let rows = vec![
        vec!["money stock (M)".to_string(), fmt_amount(s.money_stock)],
        vec!["velocity (V)".into(), fmt_amount(s.velocity)],
        vec!["money side (M x V)".into(), fmt_amount(s.money_stock * s.velocity)],
        vec!["goods side (sum p x q)".into(), fmt_amount(s.goods_side)],
        vec!["units exchanged (T)".into(), fmt_amount(s.transaction_count)],
        vec!["average price (P)".into(), fmt_amount(s.price_level)],
        vec!["GDP (final goods)".into(), fmt_amount(s.gdp)],
        vec!["transactions".into(), s.ledger_len.to_string()],
    ];
    pad_table(&rows)
}

pub fn summary_csv(s: &Summary) -> String {
    format!(
        "metric,value\nmoney_stock,{}\nvelocity,{}\ngoods_side,{}\nprice_level,{}\ntransaction_count,{}\ngdp,{}\ntransactions,{}\n",
        s.money_stock, s.velocity, s.goods_side, s.price_level, s.transaction_count, s.gdp, s.ledger_len
    )
}

pub const NORMALIZED_HEADER: &str = "year,raw,money,normalized";

pub fn normalized_csv(n: &NormalizedSeries) -> String {
    let mut out = format!("{NORMALIZED_HEADER}\n");
    let rows = n.raw.points().iter().zip(n.money.points()).zip(n.values.points());
    for ((&(p, raw), &(_, money)), &(_, value)) in rows {
        let _ = writeln!(out, "{p:04},{raw},{money},{value}");
    }
    out
}

/// A computed debt row with the outcome of its printed-figure cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckedDebtRow {
    pub row: DebtRow,
    /// `Some` when the input carried printed figures and they disagree.
    pub mismatch: Option<String>,
    pub checked: bool,
}

pub fn check_debt_row(row: DebtRow, input: &DebtInput) -> CheckedDebtRow {
    let mismatch = input.printed.as_ref().and_then(|p| printed_mismatch(&row, p));
    CheckedDebtRow {
        row,
        mismatch,
        checked: input.printed.is_some(),
    }
}

fn with_alt<T>(main: String, alt: Option<T>, f: impl Fn(T) -> String) -> String {
    match alt {
        Some(a) => format!("{main} ({})", f(a)),
        None => main,
    }
}

pub const DEBT_CSV_HEADER: &str = "country,debt_start,debt_end,multiplier,alt_multiplier,normalized_end,pct_change,alt_normalized_end,alt_pct_change,check";

pub fn debt_csv(rows: &[CheckedDebtRow]) -> String {
    let mut out = format!("{DEBT_CSV_HEADER}\n");
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    for c in rows {
        let r = &c.row;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.country,
            r.debt_start,
            r.debt_end,
            r.multiplier,
            opt(r.alt_multiplier),
            r.normalized_end,
            r.pct_rounded(),
            opt(r.alt_normalized_end),
            r.alt_pct_rounded().map(|p| p.to_string()).unwrap_or_default(),
            check_cell(c)
        );
    }
    out
}

fn check_cell(c: &CheckedDebtRow) -> String {
    match (&c.mismatch, c.checked) {
        (Some(m), _) => format!("MISMATCH {m}"),
        (None, true) => "ok".into(),
        (None, false) => String::new(),
    }
}

/// Country, start, end, multiplier, normalized end, percent change, in that
/// order; alternative multipliers in parentheses.
pub fn debt_text(rows: &[CheckedDebtRow]) -> String {
    let mut table = vec![vec![
        "Country".to_string(),
        "Start".into(),
        "End".into(),
        "Money Supply Multiplier".into(),
        "Normalized End".into(),
        "% increase".into(),
        "Check".into(),
    ]];
    for c in rows {
        let r = &c.row;
        table.push(vec![
            r.country.clone(),
            fmt_amount(r.debt_start),
            fmt_amount(r.debt_end),
            with_alt(format!("{:.1}", r.multiplier), r.alt_multiplier, |m| format!("{m:.1}")),
            with_alt(fmt_amount(round2(r.normalized_end)), r.alt_normalized_end, |v| {
                fmt_amount(v.round())
            }),
            with_alt(format!("{}%", r.pct_rounded()), r.alt_pct_rounded(), |p| format!("{p}%")),
            check_cell(c),
        ]);
    }
    pad_table(&table)
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::fisher_economy;
    use crate::normalize::normalize_debt_row;

    #[test]
    fn amounts() {
        assert_eq!(fmt_amount(50_000_000.0), "50,000,000");
        assert_eq!(fmt_amount(-1234.0), "-1,234");
        assert_eq!(fmt_amount(0.0), "0");
        assert_eq!(fmt_amount(1234.5), "1,234.5");
        assert_eq!(fmt_amount(-0.25), "-0.25");
        assert_eq!(fmt_amount(100_000_000.0 / 240_000_000.0), "0.416667");
        assert_eq!(fmt_price(0.1), "0.10");
        assert_eq!(fmt_price(2.5), "2.50");
        assert_eq!(fmt_price(1.0 / 3.0), "0.333333");
    }

    #[test]
    fn fisher_table_text() {
        let t = economy_text(&fisher_economy());
        assert!(t.starts_with("$5,000,000 x V = 100,000,000 (velocity 20)\n"), "{t}");
        assert!(t.contains("$0.10"));
        assert!(t.contains("1,000,000"));
    }

    #[test]
    fn fisher_csv() {
        let c = economy_csv(&fisher_economy());
        assert!(c.contains("\nbread,200000000,0.1,4,20000000,true\n"), "{c}");
        assert!(c.contains("\ncoal,10000000,5,10,50000000,false\n"), "{c}");
    }

    #[test]
    fn debt_rendering() {
        let row = normalize_debt_row("Spain", 361.0, 561.0, 2.0, Some(3.0)).unwrap();
        let c = CheckedDebtRow {
            row,
            mismatch: None,
            checked: false,
        };
        let text = debt_text(std::slice::from_ref(&c));
        assert!(text.contains("2.0 (3.0)"), "{text}");
        assert!(text.contains("280.5 (187)"), "{text}");
        assert!(text.contains("-22% (-48%)"), "{text}");
        let csv = debt_csv(&[c]);
        assert_eq!(csv.lines().nth(1), Some("Spain,361,561,2,3,280.5,-22,187,-48,"));
    }
}
