//! Deciders for codes and comma-free codes over finite sets of words.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::words::{occurrence_positions, Letter, Word};

fn dedup(set: &[Word]) -> Result<Vec<Word>> {
    if set.iter().any(|w| w.is_empty()) {
        return Err(Error::EmptyWordInSet);
    }
    let unique: BTreeSet<&Word> = set.iter().collect();
    Ok(unique.into_iter().cloned().collect())
}

/// `x⁻¹y` when `x` is a prefix of `y`.
fn left_quotient(x: &[Letter], y: &[Letter]) -> Option<Word> {
    y.starts_with(x)
        .then(|| Word::from_letters(y[x.len()..].to_vec()))
}

/// Sardinas–Patterson: `set` is a code iff no dangling suffix reachable
/// from `X⁻¹X \ {ε}` is empty. Every dangling suffix is a suffix of a
/// codeword, so the closure is finite.
pub fn is_code(set: &[Word]) -> Result<bool> {
    let words = dedup(set)?;
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue = VecDeque::new();
    for x in &words {
        for y in &words {
            if x == y {
                continue;
            }
            if let Some(rest) = left_quotient(x, y) {
                if seen.insert(rest.clone()) {
                    queue.push_back(rest);
                }
            }
        }
    }
    while let Some(dangling) = queue.pop_front() {
        if dangling.is_empty() {
            return Ok(false);
        }
        for x in &words {
            // X⁻¹U and U⁻¹X
            let next = left_quotient(x, &dangling).or_else(|| left_quotient(&dangling, x));
            if let Some(rest) = next {
                if seen.insert(rest.clone()) {
                    queue.push_back(rest);
                }
            }
        }
    }
    Ok(true)
}

/// Comma-freeness of a code `X`: whenever `x ∈ X` and `z·x·z' ∈ X*`,
/// both `z` and `z'` lie in `X*`.
///
/// For a code, this holds iff every occurrence of every codeword inside
/// every product of codewords starts and ends on a factor boundary. An
/// occurrence of `x` touches at most `⌈|x| / min|y|⌉ + 1` consecutive
/// factors, so it suffices to inspect all products of
/// `m = ⌈max|x| / min|y|⌉ + 2` codewords.
pub fn is_comma_free(set: &[Word]) -> Result<bool> {
    let words = dedup(set)?;
    if words.is_empty() {
        return Ok(true);
    }
    if !is_code(&words)? {
        return Err(Error::NotACode);
    }
    let min = words.iter().map(|w| w.len()).min().unwrap();
    let max = words.iter().map(|w| w.len()).max().unwrap();
    let window = max.div_ceil(min) + 2;

    let mut product = Vec::new();
    let mut boundaries = vec![0];
    Ok(products_aligned(&words, window, &mut product, &mut boundaries))
}

fn products_aligned(
    words: &[Word],
    remaining: usize,
    product: &mut Vec<Letter>,
    boundaries: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return words.iter().all(|x| {
            occurrence_positions(x, product).into_iter().all(|start| {
                boundaries.binary_search(&start).is_ok()
                    && boundaries.binary_search(&(start + x.len())).is_ok()
            })
        });
    }
    for w in words {
        let len = product.len();
        product.extend_from_slice(w);
        boundaries.push(product.len());
        let ok = products_aligned(words, remaining - 1, product, boundaries);
        boundaries.pop();
        product.truncate(len);
        if !ok {
            return false;
        }
    }
    true
}

/// No codeword is a proper prefix or suffix of another.
pub fn is_bifix(set: &[Word]) -> bool {
    set.iter().all(|x| {
        set.iter()
            .all(|y| x == y || !(y.starts_with(x) || y.ends_with(x)))
    })
}
