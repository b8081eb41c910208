//! An alphabet together with its root-number table.

use crate::epsilon::EpsilonTable;
use crate::local_field::{LocalField, QuadExt};
use crate::lparam::Alphabet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub alphabet: Alphabet,
    pub eps: EpsilonTable,
}

impl Model {
    pub fn new(alphabet: Alphabet, eps: EpsilonTable) -> Self {
        Model { alphabet, eps }
    }

    pub fn ext(&self) -> QuadExt {
        self.alphabet.ext()
    }

    pub fn field(&self) -> LocalField {
        self.alphabet.ext().field()
    }
}
