//! Truncated Lie-series calculus: BCH, adjoint exponentials, flows, universal
//! averages, operator polynomials and path BCH.

mod average;
mod bch;
mod flow;
mod operator;
mod path;

pub use average::{mu2, mu2_series, mun, mun_series, mun_truncated, MU_N_MAX_ORDER};
pub use bch::{bch2, bch_multi, bch_series, exp_ad, exp_ad_series};
pub use flow::{flow, flow_series, flow_time, interval_diff, interval_diff_series, Differential};
pub use operator::{extract_q, op_apply, OperatorPoly};
pub use path::{path_bch, Path};
