//! Fundamental-group machinery.

pub mod certify;
pub mod finite;
pub mod presentation;
pub mod tietze;
pub mod wirtinger;

pub use certify::{
    certify_trivial, certify_trivial_word, membership_question, normal_closure_member,
    strong_winding_check, strong_winding_question, verify, Certificate, Question, TriState,
    Verdict,
};
pub use finite::{find_perm_rep, PermRep};
pub use presentation::{GroupPresentation, Word};
pub use tietze::{replay, simplify_tietze, Simplified, TietzeMove, TietzeTrace};
pub use wirtinger::{
    longitude_word, meridian_word, wirtinger, wirtinger_data, CurveWords, Wirtinger,
};
