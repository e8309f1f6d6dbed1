//! A workbench for elementary equivalence of well-orders and related
//! structures, built around three engines:
//!
//! * [`ordinal`] — ordinal notations in hereditary Cantor normal form (below
//!   ε₀) extended with symbolic fixed points for uncountable cardinals and
//!   the class of all ordinals, plus the decision procedure for first-order
//!   equivalence of well-orders via congruence modulo ω^ω.
//! * [`game`] — brute-force Ehrenfeucht–Fraïssé games on explicit finite
//!   relational structures ([`structure::FiniteStructure`]), used as the
//!   ground-truth oracle throughout.
//! * [`sized_boolean`] — a symbolic EF arena for powerset-style Boolean
//!   algebras carrying an ideal of "small" elements, where each side of the
//!   board is a partition into size-labelled atoms and the built-in
//!   Duplicator plays the exact-cardinality matching strategy.
//!
//! On top of these sit [`formula`], with parsers, classifiers, translators
//! and a finite model checker for four interrelated languages (orders,
//! Boolean algebras with an ideal predicate, a two-sorted membership
//! language, and monadic second-order orders), and [`preorder`], a finite
//! laboratory for segment ideals of total preorders, access/minimality
//! decisions, and cut-and-zip preorder surgery.
//!
//! The `examples/` directory contains one runnable program per capability;
//! `cargo run --example ordinal_equivalence` is a good starting point. A
//! thin command-line binary (`eflab`) exposes the same operations; see
//! [`cli`].

pub mod cli;
pub mod formula;
pub mod game;
pub mod ordinal;
pub mod preorder;
pub mod sized_boolean;
pub mod structure;

pub use ordinal::Ordinal;
pub use structure::FiniteStructure;
