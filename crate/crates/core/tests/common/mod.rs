#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use thue_pcp::correspondence::{GpcpInstance, PcpInstance};
use thue_pcp::gadgets::c_word;
use thue_pcp::rewriting::{one_step_successors, AccessInstance, DerivationTrace, Rule, SemiThueSystem};
use thue_pcp::words::{Alphabet, Letter, Morphism, Word};

pub fn w(tokens: &str) -> Word {
    Word::parse(tokens).unwrap()
}

pub fn b(bits: &str) -> Word {
    Word::binary(bits)
}

pub fn access(letters: &[&str], rules: &[(&str, &str)], u: &str, v: &str) -> AccessInstance {
    let system = SemiThueSystem::new(
        Alphabet::of(letters),
        rules.iter().map(|(l, r)| Rule::new(w(l), w(r))).collect(),
    )
    .unwrap();
    AccessInstance::new(system, w(u), w(v)).unwrap()
}

/// The one-rule instance `0100101 -> 01000101` already in `C_1`.
pub fn k1_instance() -> AccessInstance {
    let system = SemiThueSystem::new(
        Alphabet::binary(),
        vec![Rule::new(b("0100101"), b("01000101"))],
    )
    .unwrap();
    AccessInstance::new(system, b("0100101"), b("01000101")).unwrap()
}

pub fn pcp(rows: &[(&str, &str, &str)]) -> PcpInstance {
    let alphabet = Alphabet::of(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
    let sigma = Morphism::new(alphabet.clone(), Alphabet::binary(), rows.iter().map(|r| b(r.1)).collect()).unwrap();
    let tau = Morphism::new(alphabet.clone(), Alphabet::binary(), rows.iter().map(|r| b(r.2)).collect()).unwrap();
    PcpInstance::new(alphabet, sigma, tau).unwrap()
}

pub fn gpcp(rows: &[(&str, &str, &str)], affixes: [&str; 4]) -> GpcpInstance {
    let p = pcp(rows);
    GpcpInstance::new(p.alphabet, p.sigma, p.tau, affixes.map(b)).unwrap()
}

/// Exhaustive reachability over words of length at most `max_len`,
/// written independently of the library search: plain index vectors and
/// naive factor replacement. `None` when some successor was too long and
/// the target was not found.
pub fn oracle_reachable(instance: &AccessInstance, max_len: usize) -> Option<bool> {
    let alphabet = instance.alphabet();
    let idx = |word: &Word| -> Vec<usize> { word.iter().map(|&l| alphabet.position(l).unwrap()).collect() };
    let rules: Vec<(Vec<usize>, Vec<usize>)> = instance.rules().iter().map(|r| (idx(&r.lhs), idx(&r.rhs))).collect();
    let source = idx(&instance.source);
    let target = idx(&instance.target);
    if source.len() > max_len {
        return None;
    }
    let mut seen = HashSet::from([source.clone()]);
    let mut queue = VecDeque::from([source]);
    let mut truncated = false;
    while let Some(x) = queue.pop_front() {
        if x == target {
            return Some(true);
        }
        for (lhs, rhs) in &rules {
            if lhs.len() > x.len() {
                continue;
            }
            for i in 0..=x.len() - lhs.len() {
                if x[i..i + lhs.len()] != lhs[..] {
                    continue;
                }
                let mut y = x[..i].to_vec();
                y.extend_from_slice(rhs);
                y.extend_from_slice(&x[i + lhs.len()..]);
                if y.len() > max_len {
                    truncated = true;
                } else if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    if truncated {
        None
    } else {
        Some(false)
    }
}

fn image(m: &Morphism, word: &[usize], alphabet: &Alphabet) -> Vec<Letter> {
    word.iter()
        .flat_map(|&i| m.image(alphabet[i]).unwrap().letters().to_vec())
        .collect()
}

/// All words of length `n` over `k` letters in lexicographic order of
/// letter declaration.
fn words_of_len(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// First solution in (length, lexicographic) order among words of length
/// `min_len..=max_len`.
fn brute(
    alphabet: &Alphabet,
    sigma: &Morphism,
    tau: &Morphism,
    affixes: [&Word; 4],
    min_len: usize,
    max_len: usize,
) -> Option<Word> {
    for n in min_len..=max_len {
        for word in words_of_len(alphabet.len(), n) {
            let mut top = affixes[0].letters().to_vec();
            top.extend(image(sigma, &word, alphabet));
            top.extend_from_slice(affixes[1].letters());
            let mut bottom = affixes[2].letters().to_vec();
            bottom.extend(image(tau, &word, alphabet));
            bottom.extend_from_slice(affixes[3].letters());
            if top == bottom {
                return Some(word.iter().map(|&i| alphabet[i]).collect());
            }
        }
    }
    None
}

pub fn brute_pcp(instance: &PcpInstance, max_len: usize) -> Option<Word> {
    let e = Word::empty();
    brute(&instance.alphabet, &instance.sigma, &instance.tau, [&e, &e, &e, &e], 1, max_len)
}

pub fn brute_gpcp(instance: &GpcpInstance, max_len: usize) -> Option<Word> {
    let i = instance;
    brute(&i.alphabet, &i.sigma, &i.tau, [&i.s, &i.t, &i.s2, &i.t2], 0, max_len)
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: &Alphabet, min: usize, max: usize) -> Word {
    let n = rng.gen_range(min..=max);
    (0..n).map(|_| *alphabet.letters().choose(rng).unwrap()).collect()
}

pub fn random_bits<R: Rng>(rng: &mut R, min: usize, max: usize) -> Word {
    random_word(rng, &Alphabet::binary(), min, max)
}

/// ε-free system over at most two letters, at most three rules, rule
/// words of length 1 to 3.
pub fn random_eps_free_system<R: Rng>(rng: &mut R) -> SemiThueSystem {
    let alphabet = if rng.gen_bool(0.5) { Alphabet::of(&["a"]) } else { Alphabet::of(&["a", "b"]) };
    let k = rng.gen_range(0..=3);
    let rules = (0..k)
        .map(|_| Rule::new(random_word(rng, &alphabet, 1, 3), random_word(rng, &alphabet, 1, 3)))
        .collect();
    SemiThueSystem::new(alphabet, rules).unwrap()
}

/// Random system over `letters` whose rule words may be empty.
pub fn random_system<R: Rng>(rng: &mut R, letters: &[&str], max_rules: usize, max_word: usize) -> SemiThueSystem {
    let alphabet = Alphabet::of(letters);
    let k = rng.gen_range(0..=max_rules);
    let rules = (0..k)
        .map(|_| {
            Rule::new(
                random_word(rng, &alphabet, 0, max_word),
                random_word(rng, &alphabet, 0, max_word),
            )
        })
        .collect();
    SemiThueSystem::new(alphabet, rules).unwrap()
}

/// Random walk of at most `max_steps` steps from `source`.
pub fn random_walk<R: Rng>(rng: &mut R, system: &SemiThueSystem, source: &Word, max_steps: usize) -> (Word, DerivationTrace) {
    let mut x = source.clone();
    let mut steps = Vec::new();
    for _ in 0..rng.gen_range(0..=max_steps) {
        let succ = one_step_successors(system, &x);
        let Some((y, step)) = succ.choose(rng).cloned() else {
            break;
        };
        x = y;
        steps.push(step);
    }
    (x, DerivationTrace::new(steps))
}

fn random_c_plus<R: Rng>(rng: &mut R, max_factors: usize) -> Word {
    let mut out = Word::empty();
    for _ in 0..rng.gen_range(1..=max_factors) {
        out.extend_from(&c_word(rng.gen_range(2..=3)).unwrap());
    }
    out
}

/// An instance of `C_k` (k in 1..=2) with a derivation of at most five
/// steps planted by a random walk from the source.
pub fn planted_ck<R: Rng>(rng: &mut R) -> (AccessInstance, DerivationTrace) {
    let k = rng.gen_range(1..=2);
    let rules = (0..k).map(|_| Rule::new(random_c_plus(rng, 2), random_c_plus(rng, 2))).collect();
    let system = SemiThueSystem::new(Alphabet::binary(), rules).unwrap();
    let mut source = random_c_plus(rng, 3);
    if rng.gen_bool(0.7) {
        // make sure the first rule applies somewhere
        let lhs = system.rules()[0].lhs.clone();
        source = source.concat(&lhs);
    }
    let (target, trace) = random_walk(rng, &system, &source, 5);
    (AccessInstance::new(system, source, target).unwrap(), trace)
}

/// Random PCP instance over at most two letters, images of length 0 to 3.
pub fn random_pcp<R: Rng>(rng: &mut R) -> PcpInstance {
    let alphabet = if rng.gen_bool(0.3) { Alphabet::of(&["a"]) } else { Alphabet::of(&["a", "b"]) };
    let sigma = (0..alphabet.len()).map(|_| random_bits(rng, 0, 3)).collect();
    let tau = (0..alphabet.len()).map(|_| random_bits(rng, 0, 3)).collect();
    PcpInstance::new(
        alphabet.clone(),
        Morphism::new(alphabet.clone(), Alphabet::binary(), sigma).unwrap(),
        Morphism::new(alphabet, Alphabet::binary(), tau).unwrap(),
    )
    .unwrap()
}

/// Random GPCP instance: as [`random_pcp`] plus affixes of length 0 to 2.
pub fn random_gpcp<R: Rng>(rng: &mut R) -> GpcpInstance {
    let p = random_pcp(rng);
    let affixes = [(); 4].map(|_| random_bits(rng, 0, 2));
    GpcpInstance::new(p.alphabet, p.sigma, p.tau, affixes).unwrap()
}
