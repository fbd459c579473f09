use std::collections::HashMap;

use super::{one_step_successors, AccessInstance, DerivationTrace, Step};
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReachabilityLimits {
    /// Successors longer than this are pruned.
    pub max_word_len: usize,
    /// Maximum number of words whose successors are generated.
    pub max_expanded: usize,
    /// Maximum derivation length explored.
    pub max_steps: usize,
}

impl Default for ReachabilityLimits {
    fn default() -> Self {
        ReachabilityLimits {
            max_word_len: 256,
            max_expanded: 10_000,
            max_steps: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReachabilityOutcome {
    /// A derivation with the minimum number of steps.
    Reached(DerivationTrace),
    BoundExhausted,
    /// The set of words reachable from the source is finite, was fully
    /// explored, and does not contain the target.
    ProvedUnreachable,
}

impl ReachabilityOutcome {
    pub fn is_decisive(&self) -> bool {
        !matches!(self, ReachabilityOutcome::BoundExhausted)
    }

    pub fn reached(&self) -> Option<&DerivationTrace> {
        match self {
            ReachabilityOutcome::Reached(t) => Some(t),
            _ => None,
        }
    }
}

struct Node {
    word: Word,
    parent: Option<(usize, Step)>,
}

/// Layered breadth-first search from the source word.
///
/// Each layer is expanded in (length, lexicographic by alphabet position)
/// order and successors in (offset, rule) order, so the returned trace is
/// deterministic and of minimum length. Any pruning downgrades an empty
/// frontier to `BoundExhausted`.
pub fn bounded_reachability(
    instance: &AccessInstance,
    limits: ReachabilityLimits,
) -> ReachabilityOutcome {
    if instance.source == instance.target {
        return ReachabilityOutcome::Reached(DerivationTrace::default());
    }
    let alphabet = instance.alphabet();
    let mut nodes = vec![Node {
        word: instance.source.clone(),
        parent: None,
    }];
    let mut index: HashMap<Word, usize> = HashMap::from([(instance.source.clone(), 0)]);
    let mut layer = vec![0usize];
    let mut pruned = false;
    let mut expanded = 0usize;
    let mut depth = 0usize;

    while !layer.is_empty() {
        if depth >= limits.max_steps {
            return ReachabilityOutcome::BoundExhausted;
        }
        let mut next = Vec::new();
        for &id in &layer {
            if expanded >= limits.max_expanded {
                return ReachabilityOutcome::BoundExhausted;
            }
            expanded += 1;
            let word = nodes[id].word.clone();
            for (succ, step) in one_step_successors(&instance.system, &word) {
                if succ.len() > limits.max_word_len {
                    pruned = true;
                    continue;
                }
                if index.contains_key(&succ) {
                    continue;
                }
                let new_id = nodes.len();
                index.insert(succ.clone(), new_id);
                let hit = succ == instance.target;
                nodes.push(Node {
                    word: succ,
                    parent: Some((id, step)),
                });
                if hit {
                    return ReachabilityOutcome::Reached(trace_to(&nodes, new_id));
                }
                next.push(new_id);
            }
        }
        next.sort_by_cached_key(|&id| {
            let w = &nodes[id].word;
            (w.len(), alphabet.key(w))
        });
        layer = next;
        depth += 1;
    }
    if pruned {
        ReachabilityOutcome::BoundExhausted
    } else {
        ReachabilityOutcome::ProvedUnreachable
    }
}

fn trace_to(nodes: &[Node], mut id: usize) -> DerivationTrace {
    let mut steps = Vec::new();
    while let Some((parent, step)) = nodes[id].parent {
        steps.push(step);
        id = parent;
    }
    steps.reverse();
    DerivationTrace::new(steps)
}
