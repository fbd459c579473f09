//! Fixed binary gadgets: the comma-free code `C = {0 1 0ⁿ 1 0 1 : n ≥ 2}`,
//! the unbordered delimiter `0011`, the interleaving morphisms `λ_d`,
//! `ρ_d`, and the injective 5-to-2 letter encoding `ȷ`.

use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::words::{is_bordered, Alphabet, Letter, Morphism, Word};

/// The delimiter word `0011`.
pub fn delimiter() -> Word {
    static F: LazyLock<Word> = LazyLock::new(|| {
        let f = Word::binary("0011");
        assert!(!is_bordered(&f), "delimiter must be unbordered");
        f
    });
    F.clone()
}

/// `0 1 0ⁿ 1 0 1`, the n-th word of `C`.
pub fn c_word(n: usize) -> Result<Word> {
    if n < 2 {
        return Err(Error::IndexTooSmall(n));
    }
    let mut bits = String::from("01");
    bits.extend(std::iter::repeat_n('0', n));
    bits.push_str("101");
    Ok(Word::binary(&bits))
}

/// Sends the i-th letter of `alphabet` (declaration order) to
/// `c_word(i + 2)`.
pub fn c_alphabet_injection(alphabet: &Alphabet) -> Morphism {
    let images = (0..alphabet.len())
        .map(|i| c_word(i + 2).expect("index is at least 2"))
        .collect();
    Morphism::new(alphabet.clone(), Alphabet::binary(), images).expect("images are binary")
}

/// Greedy factorization of a binary word over `C`. Returns the exponents
/// `n` of the factors in order. Greedy parsing is exact because `C` is a
/// bifix code whose words are delimited by the `01…101` frame.
pub fn parse_c_star(word: &[Letter]) -> std::result::Result<Vec<usize>, String> {
    let (zero, one) = (Letter::zero(), Letter::one());
    let mut factors = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let start = i;
        if word.get(i) != Some(&zero) || word.get(i + 1) != Some(&one) {
            return Err(format!("no C-word starts at position {start}"));
        }
        i += 2;
        let mut n = 0;
        while word.get(i) == Some(&zero) {
            n += 1;
            i += 1;
        }
        if n < 2 || word.get(i..i + 3) != Some(&[one, zero, one][..]) {
            return Err(format!("no C-word starts at position {start}"));
        }
        i += 3;
        factors.push(n);
    }
    Ok(factors)
}

pub fn is_in_c_star(word: &[Letter]) -> bool {
    parse_c_star(word).is_ok()
}

pub fn is_in_c_plus(word: &[Letter]) -> bool {
    !word.is_empty() && is_in_c_star(word)
}

/// `λ_d`: puts `d` before every letter.
pub fn lambda(d: Letter, word: &Word) -> Word {
    word.iter().flat_map(|&a| [d, a]).collect()
}

/// `ρ_d`: puts `d` after every letter.
pub fn rho(d: Letter, word: &Word) -> Word {
    word.iter().flat_map(|&a| [a, d]).collect()
}

/// `λ_d` as a morphism from `alphabet` to `alphabet ∪ {d}`.
pub fn lambda_morphism(d: Letter, alphabet: &Alphabet) -> Result<Morphism> {
    let target = extended(alphabet, d)?;
    let images = alphabet.iter().map(|a| Word::from_letters(vec![d, a])).collect();
    Morphism::new(alphabet.clone(), target, images)
}

/// `ρ_d` as a morphism from `alphabet` to `alphabet ∪ {d}`.
pub fn rho_morphism(d: Letter, alphabet: &Alphabet) -> Result<Morphism> {
    let target = extended(alphabet, d)?;
    let images = alphabet.iter().map(|a| Word::from_letters(vec![a, d])).collect();
    Morphism::new(alphabet.clone(), target, images)
}

fn extended(alphabet: &Alphabet, d: Letter) -> Result<Alphabet> {
    let mut target = alphabet.clone();
    target.push(d).map_err(|_| Error::ReservedLetterClash(d))?;
    Ok(target)
}

/// Interleaving marker letter `@d`.
pub fn marker_d() -> Letter {
    Letter::named("@d")
}

/// Begin marker `@b`.
pub fn marker_b() -> Letter {
    Letter::named("@b")
}

/// End marker `@e`.
pub fn marker_e() -> Letter {
    Letter::named("@e")
}

/// The five-letter alphabet `{0, 1, @d, @b, @e}` used between the GPCP
/// and PCP stages.
pub fn marker_alphabet() -> Alphabet {
    Alphabet::new([
        Letter::zero(),
        Letter::one(),
        marker_d(),
        marker_b(),
        marker_e(),
    ])
    .expect("distinct letters")
}

/// `ȷ`: 0↦000, 1↦111, @d↦101, @b↦100, @e↦001.
pub fn jmath() -> Morphism {
    let images = ["000", "111", "101", "100", "001"]
        .iter()
        .map(|b| Word::binary(b))
        .collect();
    Morphism::new(marker_alphabet(), Alphabet::binary(), images).expect("binary images")
}
