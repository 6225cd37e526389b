//! Word operators and the complexes built from them.

pub mod comparison;
pub mod double;
pub mod engine;
pub mod families;
pub mod layout;
pub mod perturbation;
pub mod quotient;
pub mod triple;
pub mod words;

pub use double::DoubleMixed;
pub use engine::{Engine, Mat};
pub use families::{Canonical, DdotX, HatX};
pub use layout::{BlockKey, Layout};
pub use quotient::Quotient;
