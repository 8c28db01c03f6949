//! Supernatural numbers and the big cell site.
//!
//! * [`supernat`]: supernatural numbers with exact arithmetic.
//! * [`spectral`]: patch expressions on the space of supernatural numbers,
//!   an exact emptiness solver, and pcfb limits.
//! * [`site`]: finitely generated sieves, the `K_S` covering judgment, point
//!   certificates and tower classification.
//! * [`poset`]: order embeddings of finite posets into divisibility.
//! * [`tower`]: matrix towers over the rationals.
//! * [`oracle`]: brute-force reference semantics over a bounded universe.
//! * [`cli`]: the `bigcell` command line.

pub mod cli;
pub mod oracle;
pub mod poset;
pub mod site;
pub mod spectral;
pub mod supernat;
pub mod text;
pub mod tower;

pub use site::{is_cover, finite_subcover, point_certificate, PointCertificate, Sieve};
pub use spectral::{member, PatchExpr};
pub use supernat::{Exponent, Natural, Supernatural};
