//! Exact symbolic engine for the full infinitesimal groupoid of a coordinate chart.
//!
//! Layers, bottom up:
//!
//! - [`chart`]: polynomial functions and vector fields on `R^n` with exact rationals.
//! - [`weil`]: Weil algebras `W_k` and k-fields as algebra morphisms.
//! - [`lyndon`], [`free_lr`]: free and relatively free Lie-Rinehart algebras in the Lyndon basis.
//! - [`groupoid`]: subset-indexed k-fields with faces, additions, strong differences,
//!   cup and composition products, both symmetric-group actions and homotopies.
//! - [`polyvector`]: wedge product, Schouten bracket and degree bookkeeping.
//! - [`oracle`]: independent verifiers and the `check` suite.
//! - [`parse`], [`session`]: the text grammar and the command interpreter behind `igc`.

pub mod chart;
pub mod error;
pub mod free_lr;
pub mod groupoid;
pub mod lyndon;
pub mod oracle;
pub mod parse;
pub mod polyvector;
pub mod session;
pub mod subset;
pub mod suite;
pub mod weil;

pub use chart::{ChartSpec, Poly, Rational, VField};
pub use error::{Error, Result};
pub use free_lr::{project_to_lie, vertical_reduce, BracketExpr, FreeLRElem, RelativeSpec};
pub use groupoid::{
    act, act_transposition, add_over_face, compose, cup, embed_classical, face, homotopy, is_trivial_homotopy,
    lie_derivative_thin, reduce_to_polyvector, strong_diff, Flavor, HomotopyWitness, KField, Transposition,
};
pub use lyndon::{lyndon_basis, LyndonWord};
pub use oracle::{CheckReport, Sampler};
pub use polyvector::Polyvector;
pub use subset::Subset;
pub use weil::{kfield_to_weil, weil_cup, weil_to_kfield, CupFactorization, WeilElem, WeilMorphism};
