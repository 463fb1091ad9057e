//! The bundled fixture documents.
//!
//! - `F1`: the ground field as a comonoid.
//! - `F2`: the group-like coalgebra on two points and its discrete category.
//! - `F3`: the poset `0 <= 1` over `F2` with its ceiling monad.
//! - `F4`: the group algebra of the cyclic group of order two.
//! - `F5`: the Sweedler coring of `F4` over the rationals.
//! - `F6`: `F4` as a Hopf-Galois extension of the rationals by itself.
//! - `F7`: the four-dimensional matrix coalgebra.

use crate::document::{parse, Document};
use crate::scalar::Field;

pub const F1: &str = include_str!("../fixtures/f1_unit.json");
pub const F2: &str = include_str!("../fixtures/f2_two_points.json");
pub const F3: &str = include_str!("../fixtures/f3_poset.json");
pub const F4: &str = include_str!("../fixtures/f4_group_algebra.json");
pub const F5: &str = include_str!("../fixtures/f5_sweedler.json");
pub const F6: &str = include_str!("../fixtures/f6_hopf_galois.json");
pub const F7: &str = include_str!("../fixtures/f7_matrix_coalgebra.json");

/// All bundled fixtures by their short names.
pub const ALL: &[(&str, &str)] = &[
    ("F1", F1),
    ("F2", F2),
    ("F3", F3),
    ("F4", F4),
    ("F5", F5),
    ("F6", F6),
    ("F7", F7),
];

pub fn source(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, s)| *s)
}

/// Parses a bundled fixture over the rationals.
pub fn load(name: &str) -> Document {
    let text = source(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    parse(text, Some(Field::Rational)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for (name, _) in ALL {
            load(name);
        }
    }
}
