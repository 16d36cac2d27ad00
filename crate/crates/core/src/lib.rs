pub mod ball;
pub mod colimit;
pub mod dist;
pub mod error;
pub mod gen;
pub mod lawvere;
pub mod monadkit;
pub mod presheaf;
pub mod quantale;
pub mod report;
pub mod scalar;
pub mod selftest;
pub mod vcat;

pub use dist::{VDistributor, VRelation};
pub use error::{Error, Result};
pub use presheaf::PresheafCategory;
pub use quantale::{builtin, make_finite_quantale, QElem, Quantale, QuantaleFlags, QuantaleKind};
pub use scalar::{Ext, Rational};
pub use vcat::{CatRef, VCategory, VFunctor};
