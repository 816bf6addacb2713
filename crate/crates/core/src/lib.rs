//! Equation-of-exchange ledger simulation and money-supply normalization of
//! GDP and government-debt series.
//!
//! The crate has two halves. [`exchange`] runs toy goods-and-money economies at the
//! granularity of individual purchases, so that `M * V` and `sum(p * q)` can be
//! compared transaction by transaction. [`normalize`] divides price-derived
//! series (GDP, debt) by the growth of a monetary aggregate relative to a base
//! year. [`series`] and [`ingest`] provide the annual time-series substrate and
//! the file formats; [`chart`] and [`report`] render results.

pub mod chart;
pub mod cli;
pub mod error;
pub mod exchange;
pub mod ingest;
pub mod normalize;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use exchange::{Economy, Good, Ledger, Transaction};
pub use normalize::{AggregateSpec, DebtRow, NormalizedSeries};
pub use series::{Period, TimeSeries};
