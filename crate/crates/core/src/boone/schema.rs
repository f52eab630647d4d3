//! Boone's group over a special semigroup presentation, stored as a table of
//! relator templates that [`super::boone_encode`] interprets.
//!
//! Source: J. J. Rotman, *An Introduction to the Theory of Groups*, 4th ed.,
//! Springer GTM 148, chapter 12 (the group `𝔅` attached to a special
//! semigroup `Γ` with letters `S`, `Q` and relations `F_i q_{i1} G_i = H_i q_{i2} K_i`,
//! `i ∈ I`). Generators are the letters of `Γ` together with `r_i` (`i ∈ I`),
//! `x`, `t` and `k`.
//!
//! Template tokens: `x`, `t`, `k`; `q` is the distinguished q-letter of `Γ`;
//! `s` is the bound s-letter `s_β`; `r` is the bound `r_i`; `F#`, `G`, `H#`,
//! `K`, `q_l`, `q_r` are the pieces of relation `i` (`F#` inverts every letter
//! of `F` in place). A `^-1` suffix inverts a single token. Each row yields
//! the relator `lhs · rhs⁻¹` for every binding of its variables, the first
//! variable varying slowest.

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `β` ranges over the s-letters.
    S,
    /// `i` ranges over the relations.
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemaRow {
    pub family: &'static str,
    pub over: &'static [Bound],
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub provenance: &'static str,
}

pub const X_S: &str = "x-s";
pub const R_S: &str = "r-s";
pub const MAIN: &str = "main";
pub const T_R: &str = "t-r";
pub const T_X: &str = "t-x";
pub const K_R: &str = "k-r";
pub const K_X: &str = "k-x";
pub const K_Q: &str = "k-q";

pub const BOONE_SCHEMA: &[SchemaRow] = &[
    // x s_β = s_β x², all β ∈ S.
    SchemaRow { family: X_S, over: &[Bound::S], lhs: "x s", rhs: "s x x", provenance: "Rotman ch. 12, relations of B, first family" },
    // r_i s_β = s_β x r_i x, all i ∈ I, β ∈ S.
    SchemaRow { family: R_S, over: &[Bound::R, Bound::S], lhs: "r s", rhs: "s x r x", provenance: "Rotman ch. 12, relations of B, second family" },
    // r_i⁻¹ F_i# q_{i1} G_i r_i = H_i# q_{i2} K_i, all i ∈ I.
    SchemaRow { family: MAIN, over: &[Bound::R], lhs: "r^-1 F# q_l G r", rhs: "H# q_r K", provenance: "Rotman ch. 12, relations of B, third family" },
    // t r_i = r_i t, all i ∈ I.
    SchemaRow { family: T_R, over: &[Bound::R], lhs: "t r", rhs: "r t", provenance: "Rotman ch. 12, relations of B, t commutes with r_i" },
    // t x = x t.
    SchemaRow { family: T_X, over: &[], lhs: "t x", rhs: "x t", provenance: "Rotman ch. 12, relations of B, t commutes with x" },
    // k r_i = r_i k, all i ∈ I.
    SchemaRow { family: K_R, over: &[Bound::R], lhs: "k r", rhs: "r k", provenance: "Rotman ch. 12, relations of B, k commutes with r_i" },
    // k x = x k.
    SchemaRow { family: K_X, over: &[], lhs: "k x", rhs: "x k", provenance: "Rotman ch. 12, relations of B, k commutes with x" },
    // k (q⁻¹ t q) = (q⁻¹ t q) k.
    SchemaRow { family: K_Q, over: &[], lhs: "k q^-1 t q", rhs: "q^-1 t q k", provenance: "Rotman ch. 12, relations of B, k commutes with q⁻¹tq" },
];

/// Hex SHA-256 of a canonical rendering of the table.
pub fn boone_schema_checksum() -> String {
    let mut h = Sha256::new();
    for row in BOONE_SCHEMA {
        let over: Vec<&str> =
            row.over.iter().map(|b| if *b == Bound::S { "S" } else { "R" }).collect();
        h.update(format!("{}|{}|{}|{}\n", row.family, over.join(","), row.lhs, row.rhs));
    }
    hex::encode(h.finalize())
}

/// Hex SHA-256 of the Post relation table.
pub fn post_schema_checksum() -> String {
    let mut h = Sha256::new();
    for (family, rule) in crate::post::POST_SCHEMA {
        h.update(format!("{family}|{rule}\n"));
    }
    hex::encode(h.finalize())
}
