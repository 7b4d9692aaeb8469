//! Diagram representations and combinatorial moves.

pub mod braid;
pub mod morse;
pub mod pd;
pub mod reidemeister;
pub mod vogel;

pub use braid::BraidWord;
pub use morse::{Closure, MorseWord, Slice};
pub use pd::PDCode;
pub use reidemeister::simplify_reidemeister;
pub use vogel::vogel_to_braid;
