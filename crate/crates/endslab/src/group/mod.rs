//! Exact arithmetic, word metric, sphere enumeration, Cayley windows and
//! coset projections for free products of tabulated finite factors and
//! free-abelian factors.

mod coset;
mod element;
mod interner;
mod factor;
mod spec;
mod sphere;
mod window;
mod words;

pub use coset::{coset_projection_sup, CosetRef};
pub use interner::CodeInterner;
pub use element::{FactorElem, GroupElement, Syllable};
pub use factor::{AbelianFactor, Factor, FiniteFactor};
pub use spec::{Generator, GroupSpec};
pub use sphere::{enumerate_cone, enumerate_sphere, sphere_count};
pub use window::CayleyWindow;
pub use words::{format_element, parse_element};
