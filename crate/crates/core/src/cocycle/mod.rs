//! Metaplectic 2-cocycles on the structured subgroups of `GL_r` and the
//! genuine characters built from them.

pub mod characters;
pub mod element;
pub mod sigma;

pub use characters::{
    central_char_eval, character_eval, nilpotent_char_argument, nilpotent_char_eval, CentralKind,
    LocalCharacter, NilpotentKind, ScaledRoot, TorusCharacterKind,
};
pub use element::{Block, Mat2, StructuredElement};
pub use sigma::{
    block_commutation, block_lemmas_check, central_sigma, cocycle_identity_check, embed_block,
    global_sigma_product, kubota_gl2, kubota_sl2, kubota_splitting, sigma, sigma_torus_even_reduced, tau_p,
    CoverElement,
};
