//! The negative part of `U_q(sl_N)` as a free algebra modulo the radical of
//! Lusztig's form, with root vectors, PBW elements and the embedding of the
//! quantum matrix algebra.

pub mod embed;
pub mod free;
pub mod lpoly;
pub mod qrat;
pub mod roots;

pub use embed::{embed, verify_embedding, EmbeddingReport};
pub use free::{is_radical_zero, phi, r_map, weight_form, Form, FreeElement, Word};
pub use lpoly::LPoly;
pub use qrat::QRat;
pub use roots::{pbw_dual, pbw_element, root_vector, PbwIndex, RootKind};
