//! Exact-arithmetic verification of Ramanujan-type supercongruences attached
//! to divergent hypergeometric series.
//!
//! The crate revolves around truncated hypergeometric sums evaluated modulo
//! odd prime powers. Everything is computed twice along independent routes: a
//! modular evaluator working with valuation-tracked residues, and an exact
//! rational oracle that reduces only at the very end. Check suites sweep both
//! over prime ranges, WZ certificate pairs are verified on exact grids, and a
//! small fixed-point engine confirms the numerical limits and duality maps of
//! the underlying series.

pub mod hypersum;
pub mod oracle;
pub mod padic;
pub mod series;
pub mod suite;
pub mod wz;
