//! Cocartesian fibrations over finite categories, marked simplicial sets and
//! the straightening correspondence, computed exactly by enumeration.
//!
//! Modules:
//!
//! - [`simplicial`]: finite simplicial sets in Eilenberg-Zilber normal form, standard
//!   shapes, products, pushouts, truncated nerves and map enumeration.
//! - [`marked`]: marked simplicial sets, the marked simplex category and the anodyne
//!   generator families.
//! - [`lifting`]: lifting squares, right lifting properties and pushout-products.
//! - [`fincat`]: finite categories, functors, natural transformations, comma
//!   categories, adjoint search and localization.
//! - [`fibration`]: cocartesian edges and fibrations, natural markings, powering,
//!   tensoring, the interval and poset criteria.
//! - [`grothendieck`]: straightening, unstraightening, limits and colimits of diagrams.
//! - [`necklace`]: necklace categories and components of mapping spaces.
//! - [`cli`]: the command-line front end behind the `cocart` binary.
//!
//! Runnable examples live in `examples/`:
//!
//! - `shapes`: standard simplicial shapes, products and pushouts
//! - `delta_plus`: hom-sets of the marked simplex category
//! - `lifting`: filling horns and checking lifting properties
//! - `cocartesian`: detecting cocartesian edges and fibrations
//! - `interval`: fibrations over the interval and their classifying functors
//! - `straightening`: round trips between diagrams and fibrations
//! - `colimits`: colimit and limit formulas
//! - `necklaces`: mapping spaces and the marked simplex category battery

pub mod cli;
pub mod corpus;
pub mod fibration;
pub mod fincat;
pub mod grothendieck;
pub mod json;
pub mod lifting;
pub mod marked;
pub mod necklace;
pub mod simplicial;

mod error;

pub use error::{Error, Result};
