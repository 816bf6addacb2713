//! Transaction-granular equation of exchange.
//!
//! An [`Economy`] fixes the money stock `M`, the quantity of each good
//! produced in a period, and `n_g`: how many times the whole money stock is
//! spent on good `g`. Prices follow from those alone,
//! `p_g = n_g * M / q_g`, and [`run_schedule`] plays the period out as a
//! sequence of purchases that each move the entire money stock. Both sides of
//! `MV = PT` are then read off the resulting [`Ledger`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Slack allowed when checking `money_moved <= money_stock`; per-transaction
/// quantity and price are rounded separately so their product can exceed `M`
/// by an ulp or two.
const BUDGET_SLACK: f64 = 8.0 * f64::EPSILON;

#[derive(Debug, Clone, PartialEq)]
pub struct Good {
    pub name: String,
    /// Units produced (and sold) per period.
    pub quantity: f64,
    /// Final goods count towards GDP; intermediate goods do not.
    pub is_final: bool,
}

impl Good {
    pub fn new(name: impl Into<String>, quantity: f64, is_final: bool) -> Self {
        Good {
            name: name.into(),
            quantity,
            is_final,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Economy {
    money_stock: f64,
    goods: Vec<Good>,
    exchanges: BTreeMap<String, u32>,
}

impl Economy {
    /// Every good needs an exchange count of at least one and every exchange
    /// count must name a good. The order of `goods` is the purchase cycle
    /// used by [`run_schedule`].
    pub fn new(
        money_stock: f64,
        goods: Vec<Good>,
        exchanges: BTreeMap<String, u32>,
    ) -> Result<Self> {
        if !(money_stock.is_finite() && money_stock > 0.0) {
            return Err(Error::InvalidEconomy(format!(
                "money stock must be positive, got {money_stock}"
            )));
        }
        if goods.is_empty() {
            return Err(Error::InvalidEconomy("no goods".into()));
        }
        for (i, good) in goods.iter().enumerate() {
            if !(good.quantity.is_finite() && good.quantity > 0.0) {
                return Err(Error::InvalidEconomy(format!(
                    "`{}`: quantity must be positive, got {}",
                    good.name, good.quantity
                )));
            }
            if goods[..i].iter().any(|g| g.name == good.name) {
                return Err(Error::InvalidEconomy(format!(
                    "duplicate good `{}`",
                    good.name
                )));
            }
            match exchanges.get(&good.name) {
                None => {
                    return Err(Error::InvalidEconomy(format!(
                        "`{}` has no exchange count",
                        good.name
                    )))
                }
                Some(0) => {
                    return Err(Error::InvalidEconomy(format!(
                        "`{}`: exchange count must be at least 1",
                        good.name
                    )))
                }
                Some(_) => {}
            }
        }
        if let Some(name) = exchanges.keys().find(|k| !goods.iter().any(|g| &g.name == *k)) {
            return Err(Error::UnknownGood(name.clone()));
        }
        Ok(Economy {
            money_stock,
            goods,
            exchanges,
        })
    }

    pub fn money_stock(&self) -> f64 {
        self.money_stock
    }

    pub fn goods(&self) -> &[Good] {
        &self.goods
    }

    pub fn good(&self, name: &str) -> Option<&Good> {
        self.goods.iter().find(|g| g.name == name)
    }

    pub fn exchanges(&self) -> &BTreeMap<String, u32> {
        &self.exchanges
    }

    /// `n_g` for a good that exists in the economy.
    pub fn exchange_count(&self, name: &str) -> Option<u32> {
        self.exchanges.get(name).copied()
    }

    /// Each exchange turns the whole money stock over once, so `V = sum(n_g)`.
    pub fn velocity(&self) -> u64 {
        self.exchanges.values().map(|&n| u64::from(n)).sum()
    }

    /// Copy with the money stock multiplied by `k`.
    pub fn scale_money(&self, k: f64) -> Result<Economy> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::Domain(format!("money scale must be positive, got {k}")));
        }
        Ok(Economy {
            money_stock: self.money_stock * k,
            ..self.clone()
        })
    }

    /// Copy with every `n_g` multiplied by `j`: the same goods circulating
    /// `j` times as fast.
    pub fn scale_exchanges(&self, j: u32) -> Result<Economy> {
        if j == 0 {
            return Err(Error::Domain("exchange multiplier must be at least 1".into()));
        }
        let exchanges = self
            .exchanges
            .iter()
            .map(|(g, &n)| {
                n.checked_mul(j)
                    .map(|n| (g.clone(), n))
                    .ok_or_else(|| Error::Domain(format!("exchange count overflow for `{g}`")))
            })
            .collect::<Result<_>>()?;
        Ok(Economy {
            exchanges,
            ..self.clone()
        })
    }
}

/// The classic three-good economy: $5,000,000 turning over twenty times a year
/// against bread, coal and cloth. Goods are listed in the order money flows
/// around the cycle: cloth makers buy coal, coal miners buy bread, bakers buy
/// cloth.
pub fn fisher_economy() -> Economy {
    let goods = vec![
        Good::new("coal", 10_000_000.0, false),
        Good::new("bread", 200_000_000.0, true),
        Good::new("cloth", 30_000_000.0, true),
    ];
    let exchanges = [("coal", 10), ("bread", 4), ("cloth", 6)]
        .into_iter()
        .map(|(g, n)| (g.to_string(), n))
        .collect();
    Economy::new(5_000_000.0, goods, exchanges).expect("fisher economy is valid")
}

/// `p_g = n_g * M / q_g`.
pub fn solve_prices(e: &Economy) -> BTreeMap<String, f64> {
    e.goods
        .iter()
        .map(|g| (g.name.clone(), unit_price(e, g)))
        .collect()
}

fn unit_price(e: &Economy, g: &Good) -> f64 {
    f64::from(e.exchanges[&g.name]) * e.money_stock / g.quantity
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transaction {
    pub seq: u64,
    pub good: String,
    pub quantity: f64,
    pub unit_price: f64,
    pub money_moved: f64,
}

impl Transaction {
    pub fn new(seq: u64, good: impl Into<String>, quantity: f64, unit_price: f64) -> Self {
        Transaction {
            seq,
            good: good.into(),
            quantity,
            unit_price,
            money_moved: quantity * unit_price,
        }
    }

    pub fn value(&self) -> f64 {
        self.quantity * self.unit_price
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ledger {
    transactions: Vec<Transaction>,
    money_stock: f64,
}

impl Ledger {
    /// Checks sequence numbering, `money_moved = quantity * unit_price`, and
    /// that no single purchase exceeds the money stock.
    pub fn new(money_stock: f64, transactions: Vec<Transaction>) -> Result<Self> {
        if !(money_stock.is_finite() && money_stock >= 0.0) {
            return Err(Error::Domain(format!(
                "money stock must be non-negative, got {money_stock}"
            )));
        }
        for (i, tx) in transactions.iter().enumerate() {
            if tx.seq != i as u64 {
                return Err(Error::Domain(format!(
                    "transaction {i} has sequence number {}",
                    tx.seq
                )));
            }
            if !(tx.quantity > 0.0 && tx.unit_price > 0.0 && tx.money_moved > 0.0) {
                return Err(Error::Domain(format!(
                    "transaction {i}: quantity, price and money moved must be positive"
                )));
            }
            if tx.money_moved != tx.quantity * tx.unit_price {
                return Err(Error::Domain(format!(
                    "transaction {i}: money moved {} != {} x {}",
                    tx.money_moved, tx.quantity, tx.unit_price
                )));
            }
            if tx.money_moved > money_stock * (1.0 + BUDGET_SLACK) {
                return Err(Error::Domain(format!(
                    "transaction {i} moves {} but the money stock is only {money_stock}",
                    tx.money_moved
                )));
            }
        }
        Ok(Ledger {
            transactions,
            money_stock,
        })
    }

    pub fn empty(money_stock: f64) -> Result<Self> {
        Self::new(money_stock, Vec::new())
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn money_stock(&self) -> f64 {
        self.money_stock
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }
}

/// Plays one period: `sum(n_g)` purchases, each spending the full money stock
/// on `q_g / n_g` units of good `g`. Goods are visited round-robin in declared
/// order, skipping any whose exchanges are used up.
pub fn run_schedule(e: &Economy) -> Ledger {
    let rounds = e.exchanges.values().copied().max().unwrap_or(0);
    let mut transactions = Vec::with_capacity(e.velocity() as usize);
    for round in 0..rounds {
        for g in &e.goods {
            let n = e.exchanges[&g.name];
            if round < n {
                let seq = transactions.len() as u64;
                transactions.push(Transaction::new(
                    seq,
                    g.name.clone(),
                    g.quantity / f64::from(n),
                    unit_price(e, g),
                ));
            }
        }
    }
    Ledger::new(e.money_stock, transactions).expect("scheduled ledger satisfies its invariants")
}

/// Divides every transaction into `j` equal purchases at the same price.
/// Total flow, prices and GDP are unchanged.
pub fn split_transactions(l: &Ledger, j: u32) -> Result<Ledger> {
    if j == 0 {
        return Err(Error::Domain("split factor must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(l.transactions.len() * j as usize);
    for tx in &l.transactions {
        let quantity = tx.quantity / f64::from(j);
        for _ in 0..j {
            let seq = out.len() as u64;
            out.push(Transaction::new(seq, tx.good.clone(), quantity, tx.unit_price));
        }
    }
    Ledger::new(l.money_stock, out)
}

/// Total money flow over the money stock.
pub fn velocity(l: &Ledger) -> Result<f64> {
    if l.money_stock == 0.0 {
        return Err(Error::DegenerateBase("ledger money stock is zero".into()));
    }
    let flow: f64 = l.transactions.iter().map(|t| t.money_moved).sum();
    Ok(flow / l.money_stock)
}

/// `sum(quantity * unit_price)` over every transaction: the `PT` side.
pub fn goods_side(l: &Ledger) -> f64 {
    l.transactions.iter().map(Transaction::value).sum()
}

/// `T` is the number of units exchanged and `P` the unit-weighted average
/// price, so `P * T` equals [`goods_side`].
pub fn price_level_and_count(l: &Ledger) -> Result<(f64, f64)> {
    if l.transactions.is_empty() {
        return Err(Error::DegenerateBase("no transactions in ledger".into()));
    }
    let count: f64 = l.transactions.iter().map(|t| t.quantity).sum();
    Ok((goods_side(l) / count, count))
}

/// Value of transactions in final goods.
pub fn gdp(l: &Ledger, e: &Economy) -> Result<f64> {
    let mut total = 0.0;
    for tx in &l.transactions {
        let good = e
            .good(&tx.good)
            .ok_or_else(|| Error::UnknownGood(tx.good.clone()))?;
        if good.is_final {
            total += tx.value();
        }
    }
    Ok(total)
}

/// Multiplies every good's quantity by `k`, leaving money and exchanges alone.
pub fn scale_production(e: &Economy, k: f64) -> Result<Economy> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::Domain(format!(
            "production scale must be positive, got {k}"
        )));
    }
    let goods = e
        .goods
        .iter()
        .map(|g| Good {
            quantity: g.quantity * k,
            ..g.clone()
        })
        .collect();
    Ok(Economy {
        goods,
        ..e.clone()
    })
}

/// Moves `count` full-money-stock exchanges from one good to another.
/// Quantities are untouched; `from` must keep at least one exchange.
pub fn shift_flows(e: &Economy, from: &str, to: &str, count: u32) -> Result<Economy> {
    let available = e
        .exchange_count(from)
        .ok_or_else(|| Error::UnknownGood(from.to_string()))?;
    let target = e
        .exchange_count(to)
        .ok_or_else(|| Error::UnknownGood(to.to_string()))?;
    if count == 0 {
        return Err(Error::Domain("shift count must be at least 1".into()));
    }
    if available <= count {
        return Err(Error::FlowShift {
            good: from.to_string(),
            count,
            available,
        });
    }
    let mut exchanges = e.exchanges.clone();
    if from != to {
        let raised = target.checked_add(count).ok_or_else(|| {
            Error::Domain(format!("exchange count overflow for `{to}`"))
        })?;
        exchanges.insert(from.to_string(), available - count);
        exchanges.insert(to.to_string(), raised);
    }
    Ok(Economy {
        exchanges,
        ..e.clone()
    })
}

/// Expenditure-approach GDP.
pub fn gdp_expenditure(
    consumption: f64,
    investment: f64,
    government: f64,
    exports: f64,
    imports: f64,
) -> f64 {
    consumption + investment + government + (exports - imports)
}

/// Aggregates for one simulated period.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub money_stock: f64,
    pub velocity: f64,
    pub goods_side: f64,
    pub price_level: f64,
    pub transaction_count: f64,
    pub gdp: f64,
    pub ledger_len: usize,
}

pub fn summarize(e: &Economy) -> Result<Summary> {
    let ledger = run_schedule(e);
    let (price_level, transaction_count) = price_level_and_count(&ledger)?;
    Ok(Summary {
        money_stock: ledger.money_stock(),
        velocity: velocity(&ledger)?,
        goods_side: goods_side(&ledger),
        price_level,
        transaction_count,
        gdp: gdp(&ledger, e)?,
        ledger_len: ledger.len(),
    })
}

/// Outcome of one invariant check run by [`verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Re-derives the period's aggregates along independent routes and reports
/// whether they agree.
pub fn verify(e: &Economy) -> Result<Vec<Check>> {
    const TOL: f64 = 1e-9;
    let ledger = run_schedule(e);
    let v = velocity(&ledger)?;
    let side = goods_side(&ledger);
    let g = gdp(&ledger, e)?;
    let (p, t) = price_level_and_count(&ledger)?;
    let mut checks = Vec::new();

    checks.push(Check {
        name: "equation of exchange",
        passed: rel_close(e.money_stock() * v, side, TOL),
        detail: format!("M*V = {} vs sum(p*q) = {}", e.money_stock() * v, side),
    });
    checks.push(Check {
        name: "velocity equals exchange count",
        passed: rel_close(v, e.velocity() as f64, TOL),
        detail: format!("ledger V = {v}, sum(n_g) = {}", e.velocity()),
    });
    checks.push(Check {
        name: "price level times count",
        passed: rel_close(p * t, side, TOL),
        detail: format!("P*T = {} vs goods side {side}", p * t),
    });
    let over_budget = ledger
        .transactions()
        .iter()
        .filter(|tx| tx.money_moved > e.money_stock() * (1.0 + BUDGET_SLACK))
        .count();
    checks.push(Check {
        name: "budget feasibility",
        passed: over_budget == 0,
        detail: format!("{over_budget} transactions exceed the money stock"),
    });

    let doubled = scale_production(e, 2.0)?;
    let g2 = gdp(&run_schedule(&doubled), &doubled)?;
    checks.push(Check {
        name: "production scaling leaves GDP unchanged",
        passed: rel_close(g, g2, TOL),
        detail: format!("GDP {g} vs {g2} at twice the production"),
    });

    let split = split_transactions(&ledger, 3)?;
    let sv = velocity(&split)?;
    let sg = gdp(&split, e)?;
    checks.push(Check {
        name: "sub-transaction splitting",
        passed: rel_close(sv, v, TOL) && rel_close(goods_side(&split), side, TOL) && rel_close(sg, g, TOL),
        detail: format!("V {sv} vs {v}, GDP {sg} vs {g}"),
    });
    Ok(checks)
}
