//! Semi-Thue systems, one-step derivation and derivation traces.

mod normalize;
mod search;

pub use normalize::{c_encode_access, mu_embed, mu_word, normalize_to_ck};
pub use search::{bounded_reachability, ReachabilityLimits, ReachabilityOutcome};

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{occurrence_positions, Alphabet, Morphism, Word};

/// A rewriting rule `lhs → rhs`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Rule {
        Rule { lhs, rhs }
    }

    pub fn is_insertion(&self) -> bool {
        self.lhs.is_empty()
    }

    pub fn is_deletion(&self) -> bool {
        self.rhs.is_empty()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemiThueSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
}

impl SemiThueSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<SemiThueSystem> {
        for rule in &rules {
            alphabet.check_word(&rule.lhs)?;
            alphabet.check_word(&rule.rhs)?;
        }
        Ok(SemiThueSystem { alphabet, rules })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// No insertion and no deletion rule.
    pub fn is_epsilon_free(&self) -> bool {
        self.rules
            .iter()
            .all(|r| !r.is_insertion() && !r.is_deletion())
    }

    /// Index pairs `(i, j)`, `i < j`, of identical rules. Duplicates are
    /// kept since rule positions name the letters of later reductions.
    pub fn duplicate_rules(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate().skip(i + 1) {
                if a == b {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// An accessibility query: does `source ⇒* target` hold?
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AccessInstance {
    pub system: SemiThueSystem,
    pub source: Word,
    pub target: Word,
}

impl AccessInstance {
    pub fn new(system: SemiThueSystem, source: Word, target: Word) -> Result<AccessInstance> {
        system.alphabet.check_word(&source)?;
        system.alphabet.check_word(&target)?;
        Ok(AccessInstance {
            system,
            source,
            target,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.system.alphabet()
    }

    pub fn rules(&self) -> &[Rule] {
        self.system.rules()
    }
}

/// One rewriting step: rule `rule` applied at letter position `offset`.
/// An insertion rule at offset `i` inserts before position `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Step {
    pub offset: usize,
    pub rule: usize,
}

impl Step {
    pub fn new(offset: usize, rule: usize) -> Step {
        Step { offset, rule }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DerivationTrace {
    pub steps: Vec<Step>,
}

impl DerivationTrace {
    pub fn new(steps: Vec<Step>) -> DerivationTrace {
        DerivationTrace { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn then(&self, other: &DerivationTrace) -> DerivationTrace {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        DerivationTrace { steps }
    }
}

/// All words immediately derivable from `x`, one entry per matching
/// `(offset, rule)` pair, ordered by offset then rule index.
pub fn one_step_successors(system: &SemiThueSystem, x: &Word) -> Vec<(Word, Step)> {
    let mut out = Vec::new();
    for (r, rule) in system.rules.iter().enumerate() {
        for offset in occurrence_positions(&rule.lhs, x) {
            out.push((rewrite_at(x, offset, rule), Step::new(offset, r)));
        }
    }
    out.sort_by_key(|(_, step)| (step.offset, step.rule));
    out
}

fn rewrite_at(x: &Word, offset: usize, rule: &Rule) -> Word {
    let mut out = Vec::with_capacity(x.len() - rule.lhs.len() + rule.rhs.len());
    out.extend_from_slice(&x[..offset]);
    out.extend_from_slice(&rule.rhs);
    out.extend_from_slice(&x[offset + rule.lhs.len()..]);
    Word::from_letters(out)
}

/// Applies a single step, or `None` if the rule's left side does not
/// occur at the offset.
pub fn apply_step(system: &SemiThueSystem, x: &Word, step: Step) -> Option<Word> {
    let rule = system.rules.get(step.rule)?;
    let end = step.offset.checked_add(rule.lhs.len())?;
    (end <= x.len() && x[step.offset..end] == rule.lhs[..]).then(|| rewrite_at(x, step.offset, rule))
}

/// Replays `trace` from `start`. Fails with the index of the first step
/// that does not apply.
pub fn apply_trace(system: &SemiThueSystem, start: &Word, trace: &DerivationTrace) -> Result<Word> {
    let mut current = start.clone();
    for (i, &step) in trace.steps.iter().enumerate() {
        current = apply_step(system, &current, step).ok_or(Error::StepMismatch(i))?;
    }
    Ok(current)
}

/// Checks that `trace` derives the instance's target from its source.
pub fn verify_trace(instance: &AccessInstance, trace: &DerivationTrace) -> Result<()> {
    let end = apply_trace(&instance.system, &instance.source, trace)?;
    if end != instance.target {
        return Err(Error::InvalidTrace(format!(
            "trace ends at `{end}`, expected `{}`",
            instance.target
        )));
    }
    Ok(())
}

/// The image `α(T)` of a system under a morphism; rule order is kept.
pub fn map_system(alpha: &Morphism, system: &SemiThueSystem) -> Result<SemiThueSystem> {
    for letter in system.alphabet.iter() {
        alpha.image(letter)?;
    }
    let rules = system
        .rules
        .iter()
        .map(|r| Ok(Rule::new(alpha.apply(&r.lhs)?, alpha.apply(&r.rhs)?)))
        .collect::<Result<Vec<_>>>()?;
    SemiThueSystem::new(alpha.target().clone(), rules)
}
