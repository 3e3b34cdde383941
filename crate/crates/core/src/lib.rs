//! Pointed semibiproducts of finite monoids and pointed monoid action systems.
//!
//! A pointed semibiproduct `(X, A, B, p, k, q, s)` presents a monoid `A`
//! through a kernel `X`, a quotient `B`, homomorphisms `k`, `p` and pointed
//! (identity-preserving, not necessarily homomorphic) maps `q`, `s`. Each
//! one is determined up to isomorphism by an action system `(X, B, ρ, φ, γ)`,
//! and every action system is realized by a synthetic monoid on pairs
//! `(x, b)` with `ρ(x, b) = x`.
//!
//! The crate works with finite monoids given as Cayley tables and provides:
//!
//! - [`monoid`]: tables, pointed maps, homomorphisms, products, pullbacks,
//!   isomorphism search and enumeration of small monoids;
//! - [`semibiproduct`]: verification, exactness, the group case, pullback
//!   and composition;
//! - [`action`]: action systems, their realization and the two functors
//!   relating them to semibiproducts;
//! - [`enumeration`]: exhaustive search for action systems over given
//!   carriers and the census of all 2-element cases;
//! - [`format`] and [`cli`]: JSON documents and the `sbp` command line.

pub mod action;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod monoid;
pub mod registry;
pub mod report;
pub mod semibiproduct;

pub use action::{
    act_to_psb_morphism, functor_p, functor_q, is_act_morphism, psb_to_act_morphism, roundtrip_witness,
    verify_action_system, ActMorphism, ActionSystem, RoundtripWitness, SyntheticRealization,
};
pub use enumeration::{census_2x2, classify, enumerate_action_systems, realization_census, CensusEntry, IsoClass, Tag};
pub use error::{Error, Result};
pub use monoid::{
    add_maps, compose_maps, cyclic_group, enumerate_monoids, find_isomorphisms, homomorphisms, is_homomorphism,
    make_monoid, product_monoid, pullback, Homomorphism, Monoid, MonoidTable, PointedMap, Pullback, SubmonoidCarrier,
};
pub use report::{VerificationReport, Violation};
pub use semibiproduct::{
    check_exactness, compose_semibiproducts, from_group_extension, is_psb_morphism, pullback_semibiproduct,
    sum_decomposition_check, verify_semibiproduct, Composition, CompositionObstruction, Pointedness, PsbMorphism,
    Semibiproduct,
};
