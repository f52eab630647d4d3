//! Line-based presentation format.
//!
//! ```text
//! group A5
//! gens a b
//! rel a^2
//! rel b^3
//! rel a b a b a b a b a b
//! ```
//!
//! A word is a whitespace-separated list of terms `token` or `token^k`
//! (`k` may be negative); `1` is the empty word. Blank lines and lines
//! starting with `#` are ignored. The printer groups runs of one letter into
//! powers, so `parse(print(p)) == p` and printing is a fixed point.

use std::collections::HashMap;

use super::presentation::{is_valid_token, GroupPresentation};
use super::word::{Letter, Word};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a word against a name table. `line` is used for diagnostics only.
pub fn parse_word_with(
    text: &str,
    lookup: &dyn Fn(&str) -> Option<usize>,
    line: usize,
) -> Result<Word> {
    let text = text.trim();
    let mut letters = Vec::new();
    if text == "1" {
        return Ok(Word::empty());
    }
    for term in text.split_whitespace() {
        let (tok, exp) = match term.split_once('^') {
            Some((t, e)) => {
                let e: i64 = e
                    .parse()
                    .map_err(|_| perr(line, format!("bad exponent in `{term}`")))?;
                (t, e)
            }
            None => (term, 1),
        };
        if tok == "1" && exp == 1 {
            continue;
        }
        let g = lookup(tok).ok_or_else(|| perr(line, format!("unknown generator `{tok}`")))?;
        let l = Letter::new(g, exp < 0);
        letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
    }
    Ok(Word::from_letters(letters))
}

/// Parses a word over the generators of `p`.
pub fn parse_word(p: &GroupPresentation, text: &str) -> Result<Word> {
    let map = p.name_map();
    parse_word_with(text, &|t| map.get(t).copied(), 1)
}

/// Prints a word using `names`, grouping runs into powers; `1` for the empty word.
pub fn format_word(w: &Word, names: &[String]) -> String {
    let letters = w.letters();
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i + 1;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let run = (j - i) as i64;
        if !out.is_empty() {
            out.push(' ');
        }
        let name = names.get(l.generator()).map(String::as_str).unwrap_or("?");
        out.push_str(name);
        let e = if l.is_inverse() { -run } else { run };
        if e != 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
        i = j;
    }
    out
}

/// Prints a presentation in the line format.
pub fn format_presentation(p: &GroupPresentation) -> String {
    let mut s = format!("group {}\ngens", p.name());
    for g in p.generators() {
        s.push(' ');
        s.push_str(g);
    }
    s.push('\n');
    for r in p.relators() {
        s.push_str("rel ");
        s.push_str(&format_word(r, p.generators()));
        s.push('\n');
    }
    s
}

/// Parses the line format; diagnostics carry 1-based line numbers.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut name: Option<String> = None;
    let mut gens: Option<Vec<String>> = None;
    let mut map: HashMap<String, usize> = HashMap::new();
    let mut rels = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kw {
            "group" => {
                if name.is_some() {
                    return Err(perr(line, "duplicate `group` line"));
                }
                if !is_valid_token(rest) {
                    return Err(perr(line, format!("bad group name `{rest}`")));
                }
                name = Some(rest.to_string());
            }
            "gens" => {
                if name.is_none() {
                    return Err(perr(line, "`gens` before `group`"));
                }
                if gens.is_some() {
                    return Err(perr(line, "duplicate `gens` line"));
                }
                let g: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for (k, t) in g.iter().enumerate() {
                    if !is_valid_token(t) {
                        return Err(perr(line, format!("bad generator name `{t}`")));
                    }
                    if map.insert(t.clone(), k).is_some() {
                        return Err(perr(line, format!("duplicate generator `{t}`")));
                    }
                }
                gens = Some(g);
            }
            "rel" => {
                if gens.is_none() {
                    return Err(perr(line, "`rel` before `gens`"));
                }
                if rest.is_empty() {
                    return Err(perr(line, "empty relator (write `1` for the empty word)"));
                }
                rels.push(parse_word_with(rest, &|t| map.get(t).copied(), line)?);
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| perr(0, "missing `group` line"))?;
    let gens = gens.ok_or_else(|| perr(0, "missing `gens` line"))?;
    GroupPresentation::new(name, gens, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const A5: &str = "group A5\ngens a b\nrel a^2\nrel b^3\nrel a b a b a b a b a b\n";

    #[test]
    fn parses_and_prints_a5() {
        let p = parse_presentation(A5).unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators()[2].len(), 10);
        assert_eq!(format_presentation(&p), A5);
    }

    #[test]
    fn powers_and_identity() {
        let p = parse_presentation("group P\ngens x y\nrel x^-2 y 1 x^0\nrel 1\n").unwrap();
        assert_eq!(p.relators()[0].len(), 3);
        assert!(p.relators()[1].is_empty());
        assert_eq!(format_word(&p.relators()[0], p.generators()), "x^-2 y");
        assert_eq!(format_word(&p.relators()[1], p.generators()), "1");
    }

    #[test]
    fn empty_presentation() {
        let text = "group E\ngens\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(format_presentation(&p), text);
    }

    #[test]
    fn diagnostics_have_line_numbers() {
        let err = parse_presentation("group P\ngens a\n\nrel a b\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 4, msg: "unknown generator `b`".into() });
        let err = parse_presentation("group P\ngens a\nrel a^x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse_presentation("gens a\n").is_err());
        assert!(parse_presentation("group P\ngens a a\n").is_err());
    }

    fn arb_presentation() -> impl Strategy<Value = GroupPresentation> {
        let word = prop::collection::vec((0usize..3, any::<bool>()), 0..9)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect::<Word>());
        prop::collection::vec(word, 0..5).prop_map(|rels| {
            GroupPresentation::from_names("P", &["a", "b'", "q_h"], rels).unwrap()
        })
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(p in arb_presentation()) {
            let text = format_presentation(&p);
            let back = parse_presentation(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(format_presentation(&back), text);
        }
    }
}
