//! Exact arithmetic for Carlitz modules over F_q(T): the Carlitz action,
//! cyclotomic function fields k(Λ_M), crossed homomorphisms and cogalois
//! orders of subextensions, and Carlitz–Kummer extensions.

pub mod caps;
pub mod carlitz;
pub mod cli;
pub mod cogalois;
pub mod cycfield;
pub mod error;
pub mod gf;
pub mod kummer;
pub mod poly;
pub mod suite;
pub mod xpoly;

pub use caps::Caps;
pub use error::{Error, Result};
pub use gf::{Fe, Field, GfElem};
pub use poly::{Poly, RatFn};
