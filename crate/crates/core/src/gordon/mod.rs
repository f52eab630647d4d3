//! The Adian-Rabin presentation `P(w)` in Gordon's form and its two
//! generators `b`, `c·a⁻¹`.
//!
//! Given `P = ⟨X | R⟩` and a word `w`, `P(w)` adds generators `a, b, c` and
//! the relators (written `lhs · rhs⁻¹`)
//!
//! ```text
//! a⁻¹ b a           = c⁻¹ b⁻¹ c b c
//! a⁻² b⁻¹ a b a²    = c⁻² b⁻¹ c b c²
//! a⁻³ [w, b] a³     = c⁻³ b c³
//! a⁻⁽³⁺ⁱ⁾ xᵢ b a³⁺ⁱ = c⁻⁽³⁺ⁱ⁾ b c³⁺ⁱ      (i = 1..|X|)
//! ```
//!
//! The group is trivial when `w = 1` in `P`, and otherwise contains `P`.

use crate::core::presentation::check_word;
use crate::core::{commutator, GroupPresentation, Word};
use crate::error::{Error, Result};

fn conj_pow(g: usize, e: i64, inner: &Word) -> Word {
    Word::power(g, -e).concat(inner).concat(&Word::power(g, e))
}

/// The Gordon relators over generator indices `a`, `b`, `c` for a word `w`
/// and `n` original generators `0..n`.
fn gordon_relators(n: usize, w: &Word, a: usize, b: usize, c: usize) -> Vec<Word> {
    let bw = Word::generator(b);
    let bi = bw.inverse();
    let cw = Word::generator(c);
    let rel = |lhs: Word, rhs: Word| lhs.concat(&rhs.inverse());
    let mut out = vec![
        rel(conj_pow(a, 1, &bw), conj_pow(c, 1, &bi.concat(&cw).concat(&bw))),
        rel(
            conj_pow(a, 2, &bi.concat(&Word::generator(a)).concat(&bw)),
            conj_pow(c, 2, &bi.concat(&cw).concat(&bw)),
        ),
        rel(conj_pow(a, 3, &commutator(w, &bw)), conj_pow(c, 3, &bw)),
    ];
    for x in 0..n {
        let e = 4 + x as i64;
        out.push(rel(conj_pow(a, e, &Word::generator(x).concat(&bw)), conj_pow(c, e, &bw)));
    }
    out
}

pub fn gordon(p: &GroupPresentation, w: &Word) -> Result<GroupPresentation> {
    check_word(w, p.num_generators())?;
    let n = p.num_generators();
    let mut out = p.clone().with_name(format!("GORDON-{}", p.name()));
    let a = out.push_fresh_generator("a");
    let b = out.push_fresh_generator("b");
    let c = out.push_fresh_generator("c");
    for r in gordon_relators(n, w, a, b, c) {
        out.push_relator_unchecked(r);
    }
    Ok(out)
}

/// Recognizes a `gordon` output: the last three generators are `a, b, c`
/// and the last `|X| + 3` relators follow the schema for some `w`.
/// Returns `(a, b, c)`.
pub fn gordon_shape(p: &GroupPresentation) -> Result<(usize, usize, usize)> {
    let bad = |m: &str| Error::NotGordon(m.to_string());
    let g = p.num_generators();
    if g < 3 {
        return Err(bad("fewer than three generators"));
    }
    let n = g - 3;
    let (a, b, c) = (n, n + 1, n + 2);
    let r = p.num_relators();
    if r < n + 3 {
        return Err(bad("too few relators"));
    }
    let tail = &p.relators()[r - n - 3..];
    // Recover w from the third relator: a⁻³ w⁻¹ b⁻¹ w b a³ c⁻³ b⁻¹ c³.
    let third = tail[2].letters();
    let core_len = third.len().checked_sub(3 + 3 + 3 + 1 + 3 + 2).ok_or_else(|| bad("third relator too short"))?;
    if core_len % 2 != 0 {
        return Err(bad("third relator has the wrong shape"));
    }
    let wlen = core_len / 2;
    let w = Word::from_letters(third[3 + wlen + 1..3 + 2 * wlen + 1].to_vec());
    let expected = gordon_relators(n, &w, a, b, c);
    if expected.as_slice() != tail {
        return Err(bad("relators do not match the schema"));
    }
    let prefix_ok = p.relators()[..r - n - 3]
        .iter()
        .all(|rel| !rel.uses_generator(a) && !rel.uses_generator(b) && !rel.uses_generator(c));
    if !prefix_ok {
        return Err(bad("original relators mention a, b or c"));
    }
    Ok((a, b, c))
}

/// `(b, c·a⁻¹)`, which generate the group presented by a `gordon` output.
pub fn gordon_rank2_generators(p: &GroupPresentation) -> Result<(Word, Word)> {
    let (a, b, c) = gordon_shape(p)?;
    Ok((Word::generator(b), Word::generator(c).concat(&Word::generator(a).inverse())))
}
