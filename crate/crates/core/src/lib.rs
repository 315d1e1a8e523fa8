//! Exact word calculus in free products of finite groups, the Bass–Serre tree
//! of such a product, straight-line programs for nested test words, and
//! brute-force checkers for the combinatorial lemmas built on them.

pub mod groups;
pub mod periodic;
pub mod slp;
pub mod testwords;
pub mod tree;
pub mod verify;
pub mod words;

pub use groups::{FactorGroup, GroupError, Signature};
pub use slp::{SlpError, WordExpr};
pub use words::{HypDecomposition, Syllable, Word, WordError};
