//! Bilinear functions `b(x) = Σ_{ij∈E} a_ij x_i x_j` on `[0,1]^n`: how far
//! the McCormick relaxation is from the convex hull of the graph of `b`.
//!
//! * [`graph`]: signed weighted graphs, vertex subsets and cut sums.
//! * [`envelopes`]: McCormick and convex-hull envelopes, gaps, dual
//!   certificates and gap reports.
//! * [`cuts`]: exact extreme cuts and the randomized large-cut finder.
//! * [`instances`]: seeded instance generators.
//! * [`hull_check`]: the cycle-parity exactness test.
//! * [`experiments`]: reproducible experiment drivers.
//! * [`cli`]: the `bilin-gap` command line.

pub mod cli;
pub mod cuts;
pub mod envelopes;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod hull_check;
pub mod instances;
pub mod io;
pub mod simplex;

pub use cuts::{
    cut_range, find_large_cut, half_weight_partition, max_cut_bruteforce, min_cut_bruteforce,
    CutCase, CutRange, CutSearchResult,
};
pub use envelopes::{
    dual_certificate, envelopes_halfpoint, evaluate_bilinear, gap_report, hull_envelopes_lp,
    mccormick_envelopes, mcgap_halfpoint, DualCertificate, EnvelopeSide, Envelopes,
    EvaluationPoint, GapMethod, GapReport, Ratio,
};
pub use error::{Error, Result};
pub use graph::{Cut, SignedWeightedGraph, VertexSubset};
pub use hull_check::{check_hull_exact, verify_exactness_numerically, HullExactness};
