//! Products of conjugates of relators, their exact checker, and the text
//! format:
//!
//! ```text
//! target a^2
//! conj 1 rel 0 sign +1
//! ```

use crate::core::text::{format_word, parse_word_with};
use crate::core::{GroupPresentation, Reducer, Word};
use crate::core::word::free_reduce;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CertEntry {
    pub relator: usize,
    /// `+1` or `-1`.
    pub sign: i8,
    pub conjugator: Word,
}

/// `∏ uᵢ · rᵢ^{±1} · uᵢ⁻¹` in entry order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TrivialityCertificate {
    pub entries: Vec<CertEntry>,
}

impl TrivialityCertificate {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total letters across conjugators, a size measure.
    pub fn conjugator_letters(&self) -> usize {
        self.entries.iter().map(|e| e.conjugator.len()).sum()
    }

    /// The reduced product the certificate denotes.
    pub fn product(&self, p: &GroupPresentation) -> std::result::Result<Word, String> {
        let mut r = Reducer::new();
        for (n, e) in self.entries.iter().enumerate() {
            let rel = p.relators().get(e.relator).ok_or_else(|| {
                format!(
                    "entry {n}: relator index {} out of range ({} relators)",
                    e.relator,
                    p.num_relators()
                )
            })?;
            if e.sign != 1 && e.sign != -1 {
                return Err(format!("entry {n}: sign must be +1 or -1"));
            }
            if let Some(g) = e.conjugator.max_generator().filter(|&g| g >= p.num_generators()) {
                return Err(format!("entry {n}: conjugator uses unknown generator {g}"));
            }
            r.push_word(&e.conjugator);
            if e.sign == 1 {
                r.push_word(rel);
            } else {
                r.push_inverse(rel);
            }
            r.push_inverse(&e.conjugator);
        }
        Ok(r.finish())
    }
}

/// Exact check that the certificate's product freely reduces to `target`.
pub fn check_certificate(
    p: &GroupPresentation,
    c: &TrivialityCertificate,
    target: &Word,
) -> std::result::Result<(), String> {
    let got = c.product(p)?;
    if got != free_reduce(target) {
        return Err(format!(
            "product reduces to `{}`, target reduces to `{}`",
            format_word(&got, p.generators()),
            format_word(&free_reduce(target), p.generators())
        ));
    }
    Ok(())
}

pub fn verify_certificate(p: &GroupPresentation, c: &TrivialityCertificate, target: &Word) -> bool {
    check_certificate(p, c, target).is_ok()
}

pub fn format_certificate(p: &GroupPresentation, target: &Word, c: &TrivialityCertificate) -> String {
    let names = p.generators();
    let mut out = format!("target {}\n", format_word(target, names));
    for e in &c.entries {
        out.push_str(&format!(
            "conj {} rel {} sign {}\n",
            format_word(&e.conjugator, names),
            e.relator,
            if e.sign == 1 { "+1" } else { "-1" }
        ));
    }
    out
}

/// Parses the certificate format; returns the target and the certificate.
pub fn parse_certificate(p: &GroupPresentation, text: &str) -> Result<(Word, TrivialityCertificate)> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let names = p.name_map();
    let lookup = |t: &str| names.get(t).copied();
    let mut target = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match kw {
            "target" => target = Some(parse_word_with(rest, &lookup, line)?),
            "conj" => {
                let (word, tail) = rest
                    .rsplit_once(" rel ")
                    .ok_or_else(|| perr(line, "expected `conj <word> rel <i> sign <±1>`".into()))?;
                let toks: Vec<&str> = tail.split_whitespace().collect();
                let [idx, "sign", sign] = toks.as_slice() else {
                    return Err(perr(line, "expected `rel <i> sign <±1>`".into()));
                };
                let relator = idx.parse().map_err(|_| perr(line, format!("bad index `{idx}`")))?;
                let sign = match *sign {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    _ => return Err(perr(line, format!("bad sign `{sign}`"))),
                };
                let conjugator = parse_word_with(word, &lookup, line)?;
                entries.push(CertEntry { relator, sign, conjugator });
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    let target = target.ok_or_else(|| perr(0, "missing `target` line".into()))?;
    Ok((target, TrivialityCertificate { entries }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> GroupPresentation {
        GroupPresentation::from_names("C2", &["a", "b"], vec![Word::power(0, 2)]).unwrap()
    }

    fn entry(relator: usize, sign: i8, conjugator: Word) -> CertEntry {
        CertEntry { relator, sign, conjugator }
    }

    #[test]
    fn spec_examples() {
        let p = c2();
        assert!(verify_certificate(&p, &TrivialityCertificate::default(), &Word::empty()));
        let one = TrivialityCertificate { entries: vec![entry(0, 1, Word::empty())] };
        assert!(verify_certificate(&p, &one, &Word::power(0, 2)));
        let u = Word::generator(1);
        let conj = TrivialityCertificate { entries: vec![entry(0, 1, u.clone())] };
        let target = u.concat(&Word::power(0, 2)).concat(&u.inverse());
        assert!(verify_certificate(&p, &conj, &target));
    }

    #[test]
    fn rejections_carry_diagnostics() {
        let p = c2();
        let bad = TrivialityCertificate { entries: vec![entry(3, 1, Word::empty())] };
        let msg = check_certificate(&p, &bad, &Word::empty()).unwrap_err();
        assert!(msg.contains("out of range"), "{msg}");
        let flipped = TrivialityCertificate { entries: vec![entry(0, -1, Word::empty())] };
        assert!(!verify_certificate(&p, &flipped, &Word::power(0, 2)));
        let zero = TrivialityCertificate { entries: vec![entry(0, 0, Word::empty())] };
        assert!(!verify_certificate(&p, &zero, &Word::power(0, 2)));
    }

    #[test]
    fn text_round_trip() {
        let p = c2();
        let c = TrivialityCertificate {
            entries: vec![entry(0, 1, Word::generator(1)), entry(0, -1, Word::empty())],
        };
        let target = Word::from_powers(&[(1, 1), (0, 2), (1, -1), (0, -2)]);
        let text = format_certificate(&p, &target, &c);
        assert_eq!(text, "target b a^2 b^-1 a^-2\nconj b rel 0 sign +1\nconj 1 rel 0 sign -1\n");
        let (t, back) = parse_certificate(&p, &text).unwrap();
        assert_eq!((t, back.clone()), (target.clone(), c));
        assert!(verify_certificate(&p, &back, &target));
        let e = parse_certificate(&p, "target a\nconj a rel x sign +1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }
}
