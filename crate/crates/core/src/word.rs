//! Words in Artin generators and their evaluation in arbitrary groups.

use std::fmt;

use crate::error::{Error, Result};

/// Anything a word can be evaluated into.
pub trait GroupElement: Clone {
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
}

/// A generator `s_gen` raised to `exp ∈ {+1, -1}`; generators are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: u8,
    pub exp: i8,
}

impl Letter {
    pub fn pos(gen: usize) -> Letter {
        Letter {
            gen: gen as u8,
            exp: 1,
        }
    }
    pub fn neg(gen: usize) -> Letter {
        Letter {
            gen: gen as u8,
            exp: -1,
        }
    }
    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            exp: -self.exp,
        }
    }
    pub fn generator(self) -> usize {
        self.gen as usize
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    /// Positive word from 1-based generator indices.
    pub fn positive(gens: &[usize]) -> Word {
        Word {
            letters: gens.iter().map(|&g| Letter::pos(g)).collect(),
        }
    }

    /// Word from signed generator indices: `-3` stands for `s3⁻¹`.
    pub fn signed(gens: &[i32]) -> Word {
        Word {
            letters: gens
                .iter()
                .map(|&g| {
                    assert!(g != 0, "generator 0 does not exist");
                    Letter {
                        gen: g.unsigned_abs() as u8,
                        exp: g.signum() as i8,
                    }
                })
                .collect(),
        }
    }

    pub fn gen(g: usize) -> Word {
        Word::positive(&[g])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.exp > 0)
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.generator())
            .max()
            .unwrap_or(0)
    }

    /// Sorted, deduplicated generator indices used.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.letters.iter().map(|l| l.generator()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The homomorphism z sending every generator to 1.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exp as i64).sum()
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(words: &[&Word]) -> Word {
        Word {
            letters: words
                .iter()
                .flat_map(|w| w.letters.iter().copied())
                .collect(),
        }
    }

    pub fn then(&self, other: &Word) -> Word {
        Word::concat(&[self, other])
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// `b · a · b⁻¹`.
    pub fn conj(a: &Word, b: &Word) -> Word {
        Word::concat(&[b, a, &b.invert()])
    }

    /// Cancels adjacent `s s⁻¹` / `s⁻¹ s` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last().is_some_and(|&top| top == l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Applies a generator relabeling `gen ↦ map[gen-1]`.
    pub fn relabel(&self, map: &[usize]) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    gen: map[l.generator() - 1] as u8,
                    exp: l.exp,
                })
                .collect(),
        }
    }

    /// Keeps only the letters whose generator satisfies `keep`.
    pub fn retain_generators(&self, keep: impl Fn(usize) -> bool) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .copied()
                .filter(|l| keep(l.generator()))
                .collect(),
        }
    }

    /// Image of the word under `s_i ↦ images[i-1]`.
    pub fn evaluate<G: GroupElement>(&self, images: &[G]) -> Result<G> {
        let Some(first) = images.first() else {
            return match self.letters.first() {
                Some(l) => Err(Error::MissingAssignment(l.generator())),
                None => Err(Error::InvalidParameter("no images to evaluate into".into())),
            };
        };
        let mut acc = first.identity_like();
        let mut inverses: Vec<Option<G>> = vec![None; images.len()];
        for l in &self.letters {
            let g = l.generator();
            if g == 0 || g > images.len() {
                return Err(Error::MissingAssignment(g));
            }
            if l.exp > 0 {
                acc = acc.op(&images[g - 1]);
            } else {
                let inv = inverses[g - 1].get_or_insert_with(|| images[g - 1].inverse());
                acc = acc.op(inv);
            }
        }
        Ok(acc)
    }

    /// Parses the CLI word syntax: whitespace-separated `s3`, `s2^-1`,
    /// `s1^4`, groups `( ... )^k`; `1`, `e` or an empty string is the
    /// identity.
    pub fn parse(text: &str) -> Result<Word> {
        Word::parse_with(text, |_| None)
    }

    /// Like [`Word::parse`], with named macros (e.g. `DELTA`) expanded by
    /// `resolve`.
    pub fn parse_with(text: &str, resolve: impl Fn(&str) -> Option<Word>) -> Result<Word> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let w = parse_seq(&tokens, &mut pos, &resolve)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("unexpected ')' in {text:?}")));
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Pow(i64),
    Atom(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '.' || c == '·' {
            i += 1;
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            out.push(Token::Close);
            i += 1;
        } else if c == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let k = s
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent {s:?} in {text:?}")))?;
            out.push(Token::Pow(k));
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Atom(chars[start..i].iter().collect()));
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} in {text:?}"
            )));
        }
    }
    Ok(out)
}

fn parse_seq(
    tokens: &[Token],
    pos: &mut usize,
    resolve: &impl Fn(&str) -> Option<Word>,
) -> Result<Word> {
    let mut acc = Word::empty();
    while *pos < tokens.len() {
        let base = match &tokens[*pos] {
            Token::Close => break,
            Token::Pow(_) => return Err(Error::Parse("exponent without base".into())),
            Token::Open => {
                *pos += 1;
                let inner = parse_seq(tokens, pos, resolve)?;
                if tokens.get(*pos) != Some(&Token::Close) {
                    return Err(Error::Parse("unclosed '('".into()));
                }
                *pos += 1;
                inner
            }
            Token::Atom(name) => {
                *pos += 1;
                atom(name, resolve)?
            }
        };
        let w = if let Some(Token::Pow(k)) = tokens.get(*pos) {
            *pos += 1;
            base.power(*k)
        } else {
            base
        };
        acc.letters.extend(w.letters);
    }
    Ok(acc)
}

fn atom(name: &str, resolve: &impl Fn(&str) -> Option<Word>) -> Result<Word> {
    if name == "1" || name == "e" {
        return Ok(Word::empty());
    }
    if let Some(rest) = name.strip_prefix('s') {
        if let Ok(g) = rest.parse::<usize>() {
            if g == 0 || g > u8::MAX as usize {
                return Err(Error::Parse(format!(
                    "generator index out of range in {name:?}"
                )));
            }
            return Ok(Word::gen(g));
        }
    }
    resolve(name).ok_or_else(|| Error::Parse(format!("unknown token {name:?}")))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let e = run as i64 * l.exp as i64;
            if e == 1 {
                write!(f, "s{}", l.gen)?;
            } else {
                write!(f, "s{}^{}", l.gen, e)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Π(s, t, m): the alternating word `s t s ...` of length m.
pub fn pi_word(s: usize, t: usize, m: usize) -> Result<Word> {
    if s == t {
        return Err(Error::InvalidParameter(format!(
            "Π needs distinct generators, got s{s} twice"
        )));
    }
    if m < 2 {
        return Err(Error::InvalidParameter(format!("Π needs m ≥ 2, got {m}")));
    }
    Ok(Word::positive(
        &(0..m)
            .map(|k| if k % 2 == 0 { s } else { t })
            .collect::<Vec<_>>(),
    ))
}

/// `∏_i β^{k_i} α β^{-k_i}`.
pub fn torsion_product(alpha: &Word, beta: &Word, ks: &[i64]) -> Word {
    let parts: Vec<Word> = ks
        .iter()
        .map(|&k| Word::conj(alpha, &beta.power(k)))
        .collect();
    Word::concat(&parts.iter().collect::<Vec<_>>())
}

/// A group presentation with positive relations `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new(generators: usize, relations: Vec<(Word, Word)>) -> Result<Presentation> {
        for (l, r) in &relations {
            if l.max_generator() > generators || r.max_generator() > generators {
                return Err(Error::InvalidParameter(format!(
                    "relation {l} = {r} uses a generator beyond s{generators}"
                )));
            }
            if !l.is_positive() || !r.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "relation {l} = {r} is not positive"
                )));
            }
        }
        Ok(Presentation {
            generators,
            relations,
        })
    }

    /// Relators `lhs · rhs⁻¹`.
    pub fn relators(&self) -> Vec<Word> {
        self.relations
            .iter()
            .map(|(l, r)| l.then(&r.invert()))
            .collect()
    }

    pub fn is_satisfied_by<G: GroupElement + PartialEq>(&self, images: &[G]) -> Result<bool> {
        for (l, r) in &self.relations {
            if l.evaluate(images)? != r.evaluate(images)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use proptest::prelude::*;

    #[test]
    fn pi_word_examples() {
        assert_eq!(pi_word(1, 2, 2).unwrap(), Word::positive(&[1, 2]));
        assert_eq!(pi_word(1, 2, 3).unwrap(), Word::positive(&[1, 2, 1]));
        assert_eq!(pi_word(1, 2, 5).unwrap(), Word::positive(&[1, 2, 1, 2, 1]));
        assert!(pi_word(3, 3, 3).is_err());
        assert!(pi_word(1, 2, 1).is_err());
    }

    #[test]
    fn exponent_sum_examples() {
        let c = Word::positive(&[1, 2, 3, 4]);
        assert_eq!(c.power(6).exponent_sum(), 24);
        assert_eq!(c.power(3).exponent_sum(), 12);
        let w = Word::signed(&[1, -2, 3, 3]);
        assert_eq!(w.then(&w.invert()).exponent_sum(), 0);
    }

    #[test]
    fn evaluate_examples() {
        let imgs = [
            Perm::parse_cycles("(1,2)", 3).unwrap(),
            Perm::parse_cycles("(2,3)", 3).unwrap(),
        ];
        let lhs = pi_word(1, 2, 3).unwrap().evaluate(&imgs).unwrap();
        let rhs = pi_word(2, 1, 3).unwrap().evaluate(&imgs).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Perm::parse_cycles("(1,3)", 3).unwrap());

        let u: Vec<Perm> = ["(2,4)(3,5)", "(1,2)(4,5)", "(2,3)(4,5)"]
            .iter()
            .map(|t| Perm::parse_cycles(t, 5).unwrap())
            .collect();
        assert!(Word::positive(&[1, 2, 3])
            .power(5)
            .evaluate(&u)
            .unwrap()
            .is_identity());
        assert!(Word::empty().evaluate(&u).unwrap().is_identity());
        assert_eq!(Word::gen(4).evaluate(&u), Err(Error::MissingAssignment(4)));
    }

    #[test]
    fn word_algebra() {
        assert!(Word::signed(&[1, -1]).free_reduce().is_empty());
        assert_eq!(
            Word::positive(&[1, 2]).power(3),
            Word::positive(&[1, 2, 1, 2, 1, 2])
        );
        let alpha = Word::signed(&[1, -2]);
        let beta = Word::signed(&[3, 2, 1, 3, -1, -1, -1, -1]);
        assert_eq!(Word::conj(&alpha, &beta).exponent_sum(), 0);
        assert_eq!(
            Word::conj(&alpha, &beta).len(),
            alpha.len() + 2 * beta.len()
        );
    }

    #[test]
    fn torsion_product_examples() {
        let alpha = Word::signed(&[1, -2]);
        let beta = Word::positive(&[1, 2, 1]);
        assert_eq!(torsion_product(&alpha, &beta, &[0]), alpha);
        let two = torsion_product(&alpha, &beta, &[0, 1]);
        assert_eq!(two, alpha.then(&Word::conj(&alpha, &beta)));
        let b4 = Word::positive(&[1, 2]).power(4);
        let three = torsion_product(&alpha, &b4, &[0, 1, 2]);
        let expected = Word::concat(&[
            &alpha,
            &Word::conj(&alpha, &b4),
            &Word::conj(&alpha, &b4.power(2)),
        ]);
        assert_eq!(three, expected);
        assert_eq!(three.exponent_sum(), 0);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Word::parse("s1 s2^-1").unwrap(), Word::signed(&[1, -2]));
        assert_eq!(
            Word::parse("(s1 s2)^3").unwrap(),
            Word::positive(&[1, 2]).power(3)
        );
        assert_eq!(
            Word::parse("(s1 (s2 s3)^2)^-1").unwrap(),
            Word::signed(&[-3, -2, -3, -2, -1])
        );
        assert_eq!(
            Word::parse("s1^-4").unwrap(),
            Word::signed(&[-1, -1, -1, -1])
        );
        assert!(Word::parse("").unwrap().is_empty());
        assert!(Word::parse("1").unwrap().is_empty());
        assert!(Word::parse("(s1").is_err());
        assert!(Word::parse("s1)").is_err());
        assert!(Word::parse("x7").is_err());
        assert!(Word::parse("s0").is_err());
        let d = Word::parse_with("DELTA s1", |n| {
            (n == "DELTA").then(|| Word::positive(&[2, 2]))
        })
        .unwrap();
        assert_eq!(d, Word::positive(&[2, 2, 1]));
        assert_eq!(Word::signed(&[1, 1, -2, 3]).to_string(), "s1^2 s2^-1 s3");
        assert_eq!(Word::empty().to_string(), "1");
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((1i32..=4, proptest::bool::ANY), 0..24).prop_map(|v| {
            Word::signed(
                &v.into_iter()
                    .map(|(g, p)| if p { g } else { -g })
                    .collect::<Vec<_>>(),
            )
        })
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent(w in arb_word()) {
            let r = w.free_reduce();
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.exponent_sum(), w.exponent_sum());
        }

        #[test]
        fn text_round_trip(w in arb_word()) {
            prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
        }

        #[test]
        fn evaluate_respects_concat_and_inverse(a in arb_word(), b in arb_word()) {
            let imgs: Vec<Perm> = ["(1,2,3)", "(2,4)", "(1,5)(2,3)", "(3,4,5)"]
                .iter().map(|t| Perm::parse_cycles(t, 5).unwrap()).collect();
            let ea = a.evaluate(&imgs).unwrap();
            let eb = b.evaluate(&imgs).unwrap();
            prop_assert_eq!(a.then(&b).evaluate(&imgs).unwrap(), ea.compose(&eb).unwrap());
            prop_assert_eq!(a.invert().evaluate(&imgs).unwrap(), ea.inverse());
        }
    }
}
