//! Letters, alphabets, words and morphisms between free monoids.
//!
//! Letters are interned: a [`Letter`] is a small copyable handle whose
//! token lives in a process-wide table. Two letters are equal iff their
//! tokens are equal, so words built independently over the same tokens
//! compare as expected.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Deref, Index};
use std::sync::{LazyLock, RwLock};

use crate::error::{Error, Result};

/// Token rendering the empty word in files.
pub const EMPTY_TOKEN: &str = "-";

/// Prefix reserved for letters introduced by reductions.
pub const RESERVED_PREFIX: char = '@';

struct Interner {
    tokens: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

static INTERNER: LazyLock<RwLock<Interner>> = LazyLock::new(|| {
    RwLock::new(Interner {
        tokens: Vec::new(),
        ids: HashMap::new(),
    })
});

/// An interned letter token.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    /// Interns `token`. Tokens must be non-empty, whitespace-free, not `-`
    /// and must not contain `#` (which starts comments in files).
    pub fn new(token: &str) -> Result<Letter> {
        if token.is_empty()
            || token == EMPTY_TOKEN
            || token == "@"
            || token.contains('#')
            || token.chars().any(char::is_whitespace)
        {
            return Err(Error::InvalidToken(token.to_string()));
        }
        if let Some(&id) = INTERNER.read().unwrap().ids.get(token) {
            return Ok(Letter(id));
        }
        let mut interner = INTERNER.write().unwrap();
        if let Some(&id) = interner.ids.get(token) {
            return Ok(Letter(id));
        }
        let leaked: &'static str = Box::leak(token.to_owned().into_boxed_str());
        let id = interner.tokens.len() as u32;
        interner.tokens.push(leaked);
        interner.ids.insert(leaked, id);
        Ok(Letter(id))
    }

    /// Interns a token known to be valid. Panics otherwise.
    pub fn named(token: &str) -> Letter {
        Letter::new(token).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn token(self) -> &'static str {
        INTERNER.read().unwrap().tokens[self.0 as usize]
    }

    pub fn is_reserved(self) -> bool {
        self.token().starts_with(RESERVED_PREFIX)
    }

    pub fn zero() -> Letter {
        Letter::named("0")
    }

    pub fn one() -> Letter {
        Letter::named("1")
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A finite sequence of letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// Builds a word over the letters `0` and `1` from a string such as
    /// `"0011"`. Any other character panics.
    pub fn binary(bits: &str) -> Word {
        let (zero, one) = (Letter::zero(), Letter::one());
        Word(
            bits.chars()
                .map(|c| match c {
                    '0' => zero,
                    '1' => one,
                    other => panic!("not a binary digit: {other:?}"),
                })
                .collect(),
        )
    }

    /// Parses space-separated tokens; `-` alone denotes the empty word.
    pub fn parse(text: &str) -> Result<Word> {
        let text = text.trim();
        if text == EMPTY_TOKEN {
            return Ok(Word::empty());
        }
        text.split_whitespace()
            .map(Letter::new)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn single(letter: Letter) -> Word {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.0.starts_with(prefix)
    }

    pub fn ends_with(&self, suffix: &[Letter]) -> bool {
        self.0.ends_with(suffix)
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Renders letters concatenated without separators, e.g. `0011`.
    /// Intended for binary words in diagnostics.
    pub fn compact(&self) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        self.0.iter().map(|l| l.token()).collect()
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Space-separated tokens, `-` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EMPTY_TOKEN);
        }
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(letter.token())?;
        }
        Ok(())
    }
}

/// An ordered finite set of letters. Declaration order is significant.
#[derive(Clone, Default)]
pub struct Alphabet {
    letters: Vec<Letter>,
    index: HashMap<Letter, usize>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Result<Alphabet> {
        let mut alphabet = Alphabet::default();
        for letter in letters {
            alphabet.push(letter)?;
        }
        Ok(alphabet)
    }

    /// Builds an alphabet from tokens. Panics on invalid or repeated tokens.
    pub fn of(tokens: &[&str]) -> Alphabet {
        Alphabet::new(tokens.iter().map(|t| Letter::named(t))).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn binary() -> Alphabet {
        Alphabet::of(&["0", "1"])
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        if self.index.contains_key(&letter) {
            return Err(Error::DuplicateLetter(letter));
        }
        self.index.insert(letter, self.letters.len());
        self.letters.push(letter);
        Ok(())
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

    pub fn contains(&self, letter: Letter) -> bool {
        self.index.contains_key(&letter)
    }

    pub fn position(&self, letter: Letter) -> Option<usize> {
        self.index.get(&letter).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().copied()
    }

    /// Fails with `UnknownLetter` on the first letter of `word` outside
    /// the alphabet.
    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.iter().find(|l| !self.contains(**l)) {
            Some(&l) => Err(Error::UnknownLetter(l)),
            None => Ok(()),
        }
    }

    /// Letter positions of `word`, used as a lexicographic sort key.
    pub fn key(&self, word: &Word) -> Vec<usize> {
        word.iter().map(|l| self.index[l]).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.letters).finish()
    }
}

impl Index<usize> for Alphabet {
    type Output = Letter;

    fn index(&self, i: usize) -> &Letter {
        &self.letters[i]
    }
}

/// A morphism given by the images of the source letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    /// `images[i]` is the image of the i-th source letter. Each image
    /// must be a word over `target`.
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Morphism> {
        assert_eq!(
            source.len(),
            images.len(),
            "a morphism needs exactly one image per source letter"
        );
        for image in &images {
            target.check_word(image)?;
        }
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    pub fn from_pairs(
        source: Alphabet,
        target: Alphabet,
        pairs: impl IntoIterator<Item = (Letter, Word)>,
    ) -> Result<Morphism> {
        let mut images = vec![None; source.len()];
        for (letter, image) in pairs {
            let i = source.position(letter).ok_or(Error::UnknownLetter(letter))?;
            images[i] = Some(image);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| img.ok_or(Error::UnknownLetter(source[i])))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, images)
    }

    pub fn identity(alphabet: &Alphabet) -> Morphism {
        Morphism {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images: alphabet.iter().map(Word::single).collect(),
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, letter: Letter) -> Result<&Word> {
        self.source
            .position(letter)
            .map(|i| &self.images[i])
            .ok_or(Error::UnknownLetter(letter))
    }

    pub fn images(&self) -> impl Iterator<Item = (Letter, &Word)> + '_ {
        self.source.iter().zip(self.images.iter())
    }

    /// Homomorphic extension to words.
    pub fn apply(&self, word: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &letter in word.iter() {
            out.extend_from_slice(self.image(letter)?);
        }
        Ok(Word(out))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        let images = self
            .images
            .iter()
            .map(|img| other.apply(img))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(self.source.clone(), other.target.clone(), images)
    }

    /// Restriction to the source letters satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(Letter) -> bool) -> Morphism {
        let (letters, images): (Vec<_>, Vec<_>) = self
            .images()
            .filter(|(l, _)| keep(*l))
            .map(|(l, img)| (l, img.clone()))
            .unzip();
        Morphism {
            source: Alphabet::new(letters).expect("subset of an alphabet"),
            target: self.target.clone(),
            images,
        }
    }

    /// True iff distinct letters have distinct images and the image set
    /// is a code (no empty images).
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        if !self.images.iter().all(|img| !img.is_empty() && seen.insert(img.clone())) {
            return false;
        }
        let set: Vec<Word> = self.images.clone();
        crate::codes::is_code(&set).unwrap_or(false)
    }
}

/// Number of occurrences of `pattern` in `text`, i.e. the number of words
/// `z` such that `z·pattern` is a prefix of `text`. The empty pattern
/// occurs `|text| + 1` times.
pub fn occurrences(pattern: &[Letter], text: &[Letter]) -> usize {
    if pattern.is_empty() {
        return text.len() + 1;
    }
    if pattern.len() > text.len() {
        return 0;
    }
    text.windows(pattern.len()).filter(|w| *w == pattern).count()
}

/// Start positions of all occurrences of `pattern` in `text`, ascending.
pub fn occurrence_positions(pattern: &[Letter], text: &[Letter]) -> Vec<usize> {
    if pattern.is_empty() {
        return (0..=text.len()).collect();
    }
    if pattern.len() > text.len() {
        return Vec::new();
    }
    text.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| i)
        .collect()
}

pub fn occurs_in(pattern: &[Letter], text: &[Letter]) -> bool {
    pattern.is_empty()
        || (pattern.len() <= text.len() && text.windows(pattern.len()).any(|w| w == pattern))
}

/// A word is bordered when some non-empty proper prefix is also a suffix.
pub fn is_bordered(word: &[Letter]) -> bool {
    (1..word.len()).any(|k| word[..k] == word[word.len() - k..])
}

/// Whether `x` and `y` overlap: one occurs in the other, or a non-empty
/// prefix of one is a suffix of the other. The empty word overlaps
/// everything.
pub fn overlaps(x: &[Letter], y: &[Letter]) -> bool {
    if x.is_empty() || y.is_empty() {
        return true;
    }
    if occurs_in(x, y) || occurs_in(y, x) {
        return true;
    }
    let max = x.len().min(y.len());
    (1..=max).any(|k| x[..k] == y[y.len() - k..] || y[..k] == x[x.len() - k..])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(bits: &str) -> Word {
        Word::binary(bits)
    }

    #[test]
    fn interning_is_by_token() {
        assert_eq!(Letter::named("a"), Letter::named("a"));
        assert_ne!(Letter::named("a"), Letter::named("b"));
        assert_eq!(Letter::named("@d").token(), "@d");
        assert!(Letter::named("@d").is_reserved());
        assert!(Letter::new("-").is_err());
        assert!(Letter::new("").is_err());
        assert!(Letter::new("a b").is_err());
    }

    #[test]
    fn word_rendering() {
        assert_eq!(Word::empty().to_string(), "-");
        assert_eq!(Word::parse("a b").unwrap().to_string(), "a b");
        assert_eq!(Word::parse("-").unwrap(), Word::empty());
        assert_eq!(b("0011").compact(), "0011");
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        let a = Letter::named("a");
        assert_eq!(Alphabet::new([a, a]), Err(Error::DuplicateLetter(a)));
    }

    #[test]
    fn morphism_examples() {
        let sigma = Morphism::from_pairs(
            Alphabet::of(&["a", "b"]),
            Alphabet::binary(),
            [
                (Letter::named("a"), b("01")),
                (Letter::named("b"), b("1")),
            ],
        )
        .unwrap();
        assert_eq!(sigma.apply(&Word::parse("a b").unwrap()).unwrap(), b("011"));
        assert_eq!(sigma.apply(&Word::empty()).unwrap(), Word::empty());
        let c = Letter::named("c");
        assert_eq!(
            sigma.apply(&Word::single(c)),
            Err(Error::UnknownLetter(c))
        );
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(occurrences(&b("00"), &b("000")), 2);
        assert_eq!(occurrences(&[], &b("0011")), 5);
        assert_eq!(occurrences(&b("0011"), &b("00110011")), 2);
        assert_eq!(occurrences(&b("0011"), &b("001")), 0);
    }

    #[test]
    fn border_examples() {
        assert!(!is_bordered(&b("0011")));
        assert!(is_bordered(&b("00")));
        assert!(!is_bordered(&b("0")));
        assert!(!is_bordered(&[]));
        assert!(is_bordered(&b("0110")));
    }

    #[test]
    fn overlap_examples() {
        assert!(!overlaps(&b("0011"), &b("0100101")));
        assert!(overlaps(&[], &b("10")));
        assert!(overlaps(&b("01"), &b("10")));
        assert!(overlaps(&b("0011"), &b("1100")));
        assert!(overlaps(&b("0011"), &b("10011")));
    }

    #[test]
    fn injectivity() {
        let alpha = Morphism::from_pairs(
            Alphabet::of(&["a", "b"]),
            Alphabet::binary(),
            [(Letter::named("a"), b("01")), (Letter::named("b"), b("011"))],
        )
        .unwrap();
        assert!(alpha.is_injective());
        let beta = Morphism::from_pairs(
            Alphabet::of(&["a", "b"]),
            Alphabet::binary(),
            [(Letter::named("a"), b("0")), (Letter::named("b"), b("00"))],
        )
        .unwrap();
        assert!(!beta.is_injective());
    }
}
