//! Translation of certificates across reduction stages. Every translated
//! witness is re-checked against the instance it targets before it is
//! returned.

use std::collections::HashMap;

use crate::correspondence::{check_gpcp_solution, check_pcp_solution, GpcpInstance, PcpInstance};
use crate::error::{Error, Result};
use crate::gadgets::delimiter;
use crate::manifest::{Instance, ReductionManifest, Stage};
use crate::reductions::{replay_chain, replay_stage};
use crate::rewriting::{apply_step, verify_trace, AccessInstance, DerivationTrace, Step};
use crate::words::{occurrence_positions, Letter, Word};

/// A derivation trace for accessibility instances, a solution word for
/// correspondence instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Trace(DerivationTrace),
    Word(Word),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessBundle {
    /// Stage whose source (backward) or output (forward) the witness
    /// belongs to.
    pub stage: Stage,
    pub witness: Witness,
    /// Set only once the witness has passed the matching checker.
    pub verified: bool,
}

/// Checks a witness against an instance with the matching checker.
pub fn check_witness(instance: &Instance, witness: &Witness) -> Result<()> {
    match (instance, witness) {
        (Instance::Access(i), Witness::Trace(t)) => verify_trace(i, t),
        (Instance::Pcp(i), Witness::Word(w)) => check_pcp_solution(i, w)?
            .then_some(())
            .ok_or_else(|| Error::NotASolution(w.clone())),
        (Instance::Gpcp(i), Witness::Word(w)) => check_gpcp_solution(i, w)?
            .then_some(())
            .ok_or_else(|| Error::NotASolution(w.clone())),
        (instance, _) => Err(Error::Manifest(format!(
            "witness kind does not fit a {} instance",
            instance.kind()
        ))),
    }
}

fn expect_stage(manifest: &ReductionManifest, stage: Stage) -> Result<()> {
    if manifest.stage != stage {
        return Err(Error::Manifest(format!(
            "expected a {stage} stage, found {}",
            manifest.stage
        )));
    }
    Ok(())
}

fn rule_letter_map(manifest: &ReductionManifest) -> HashMap<Letter, usize> {
    manifest.rule_letters.iter().map(|&(i, l)| (l, i)).collect()
}

fn letter_for_rule(manifest: &ReductionManifest, rule: usize) -> Result<Letter> {
    manifest
        .rule_letters
        .iter()
        .find(|(i, _)| *i == rule)
        .map(|(_, l)| *l)
        .ok_or_else(|| Error::Manifest(format!("no letter recorded for rule {rule}")))
}

/// Encodes a derivation `x₀ ⇒ … ⇒ xₙ` of a `C_k` instance as
/// `z₁·f·z₂·…·f·zₙ`, where `zᵢ` spells the binary context of step `i`
/// with the rule letter in place of the rewritten factor. A derivation
/// without steps becomes the source word itself, which satisfies
/// `u·f·u = u·f·u`.
pub fn derivation_to_gpcp_witness(
    manifest: &ReductionManifest,
    source: &AccessInstance,
    trace: &DerivationTrace,
) -> Result<Word> {
    expect_stage(manifest, Stage::AccessToGpcp)?;
    if manifest.source.as_access()? != source {
        return Err(Error::Manifest("instance differs from the recorded source".into()));
    }
    verify_trace(source, trace).map_err(|e| Error::InvalidTrace(e.to_string()))?;
    if trace.is_empty() {
        return Ok(source.source.clone());
    }
    let f = delimiter();
    let mut witness = Word::empty();
    let mut current = source.source.clone();
    for (i, &step) in trace.steps.iter().enumerate() {
        if i > 0 {
            witness.extend_from(&f);
        }
        let rule = &source.rules()[step.rule];
        witness.extend_from(&current.slice(0, step.offset));
        witness.push(letter_for_rule(manifest, step.rule)?);
        witness.extend_from(&current.slice(step.offset + rule.lhs.len(), current.len()));
        current = apply_step(&source.system, &current, step).ok_or(Error::StepMismatch(i))?;
    }
    let (gpcp, _) = crate::reductions::access_to_gpcp(source)?;
    if !check_gpcp_solution(&gpcp, &witness)? {
        return Err(Error::NotASolution(witness));
    }
    Ok(witness)
}

/// Splits `word` at non-overlapping occurrences of `delim`, left to right.
fn split_on(word: &[Letter], delim: &[Letter]) -> Vec<Word> {
    let mut parts = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i + delim.len() <= word.len() {
        if word[i..i + delim.len()] == *delim {
            parts.push(Word::from_letters(word[start..i].to_vec()));
            i += delim.len();
            start = i;
        } else {
            i += 1;
        }
    }
    parts.push(Word::from_letters(word[start..].to_vec()));
    parts
}

/// Recovers a derivation from a solution of the reduced GPCP instance.
///
/// With `x = σ(w)` and `y = τ(w)`, the word `x·f·v = u·f·y` splits at the
/// occurrences of `f` into `w₀ f w₁ … f wₙ` with `w₀ = u`, `wₙ = v`. The
/// solution word splits at its literal `0011` factors into `z₁ … zₙ` with
/// `σ(zⱼ) = wⱼ₋₁` and `τ(zⱼ) = wⱼ`; the two splits are cross-checked.
/// Each rule letter in `zⱼ` then becomes one step, leftmost first, the
/// intermediate words being `τ(prefix)·σ(suffix)`.
pub fn gpcp_witness_to_derivation(
    manifest: &ReductionManifest,
    gpcp: &GpcpInstance,
    w: &Word,
) -> Result<DerivationTrace> {
    expect_stage(manifest, Stage::AccessToGpcp)?;
    let source = manifest.source.as_access()?;
    if !check_gpcp_solution(gpcp, w)? {
        return Err(Error::NotASolution(w.clone()));
    }
    let f = delimiter();
    let x = gpcp.sigma.apply(w)?;
    let y = gpcp.tau.apply(w)?;
    let joined = x.concat(&f).concat(&source.target);

    let pieces = split_on(&joined, &f);
    if occurrence_positions(&f, &joined).len() + 1 != pieces.len() {
        return Err(Error::DelimiterAnomaly("overlapping delimiter occurrences".into()));
    }
    if pieces.first() != Some(&source.source) || pieces.last() != Some(&source.target) {
        return Err(Error::DelimiterAnomaly(
            "outer pieces of x·f·v are not the endpoints".into(),
        ));
    }
    if source.source.concat(&f).concat(&y) != joined {
        return Err(Error::DelimiterAnomaly("x·f·v differs from u·f·y".into()));
    }
    let segments = split_on(w, &f);
    if segments.len() + 1 != pieces.len() {
        return Err(Error::DelimiterAnomaly(format!(
            "{} literal delimiters in the solution but {} in its image",
            segments.len() - 1,
            pieces.len() - 2
        )));
    }

    let rule_of = rule_letter_map(manifest);
    let mut steps = Vec::new();
    for (j, segment) in segments.iter().enumerate() {
        if gpcp.sigma.apply(segment)? != pieces[j] || gpcp.tau.apply(segment)? != pieces[j + 1] {
            return Err(Error::DelimiterAnomaly(format!(
                "segment {} does not map onto consecutive pieces",
                j + 1
            )));
        }
        let mut current = pieces[j].clone();
        for (p, letter) in segment.iter().enumerate() {
            let Some(&rule) = rule_of.get(letter) else {
                continue;
            };
            let offset = gpcp.tau.apply(&segment.slice(0, p))?.len();
            let step = Step::new(offset, rule);
            let next = gpcp
                .tau
                .apply(&segment.slice(0, p + 1))?
                .concat(&gpcp.sigma.apply(&segment.slice(p + 1, segment.len()))?);
            if apply_step(&source.system, &current, step).as_ref() != Some(&next) {
                return Err(Error::StepVerificationFailed(steps.len()));
            }
            steps.push(step);
            current = next;
        }
    }
    let trace = DerivationTrace::new(steps);
    verify_trace(source, &trace)?;
    Ok(trace)
}

fn markers(manifest: &ReductionManifest) -> Result<(Letter, Letter)> {
    let b = manifest.introduced_letter("b");
    let e = manifest.introduced_letter("e");
    b.zip(e)
        .ok_or_else(|| Error::Manifest("markers b and e are not recorded".into()))
}

/// `w ↦ @b·w·@e`.
pub fn gpcp_witness_to_pcp(manifest: &ReductionManifest, w: &Word) -> Result<Word> {
    expect_stage(manifest, Stage::GpcpToPcp)?;
    let (b, e) = markers(manifest)?;
    let gpcp = manifest.source.as_gpcp()?;
    if !check_gpcp_solution(gpcp, w)? {
        return Err(Error::NotASolution(w.clone()));
    }
    let out = Word::single(b).concat(w).concat(&Word::single(e));
    let pcp = replay_stage(manifest)?;
    check_witness(&pcp, &Witness::Word(out.clone()))?;
    Ok(out)
}

/// Extracts a GPCP solution from a PCP solution of the reduced instance.
///
/// A solution starts with `@b` and ends with `@e`. The prefix ending at
/// the first `@e` is itself a solution, and so is its suffix starting at
/// the last `@b` before that `@e`; what lies strictly between them is
/// returned after re-checking it.
pub fn pcp_witness_to_gpcp(manifest: &ReductionManifest, pcp: &PcpInstance, w: &Word) -> Result<Word> {
    expect_stage(manifest, Stage::GpcpToPcp)?;
    let (b, e) = markers(manifest)?;
    if !check_pcp_solution(pcp, w)? {
        return Err(Error::NotASolution(w.clone()));
    }
    if w.first() != Some(&b) {
        return Err(Error::MalformedSolution(format!("does not start with {b}")));
    }
    if w.last() != Some(&e) {
        return Err(Error::MalformedSolution(format!("does not end with {e}")));
    }
    let end = w.iter().position(|&l| l == e).expect("ends with e");
    let start = w[..end].iter().rposition(|&l| l == b).expect("starts with b");
    let inner = w.slice(start + 1, end);
    if let Some(&marker) = inner.iter().find(|&&l| l == b || l == e) {
        return Err(Error::InnerMarker(marker));
    }
    if !check_gpcp_solution(manifest.source.as_gpcp()?, &inner)? {
        return Err(Error::NotASolution(inner));
    }
    Ok(inner)
}

/// Forward step through the ε-free embedding: offsets double.
fn trace_through_mu(trace: &DerivationTrace) -> DerivationTrace {
    DerivationTrace::new(
        trace
            .steps
            .iter()
            .map(|s| Step::new(2 * s.offset, s.rule))
            .collect(),
    )
}

fn trace_back_through_mu(trace: &DerivationTrace) -> Result<DerivationTrace> {
    trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if s.offset % 2 == 1 {
                Err(Error::InvalidTrace(format!("step {i} is not aligned with the embedding")))
            } else {
                Ok(Step::new(s.offset / 2, s.rule))
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(DerivationTrace::new)
}

/// Forward step through a letter encoding: an offset counts source
/// letters, its image counts code letters.
fn trace_through_encoding(manifest: &ReductionManifest, trace: &DerivationTrace) -> Result<DerivationTrace> {
    let source = manifest.source.as_access()?;
    let alpha = manifest
        .encoding
        .as_ref()
        .ok_or_else(|| Error::Manifest("c-encode stage has no encoding".into()))?;
    let mut current = source.source.clone();
    let mut steps = Vec::with_capacity(trace.len());
    for (i, &step) in trace.steps.iter().enumerate() {
        let offset = alpha.apply(&current.slice(0, step.offset.min(current.len())))?.len();
        steps.push(Step::new(offset, step.rule));
        current = apply_step(&source.system, &current, step).ok_or(Error::StepMismatch(i))?;
    }
    Ok(DerivationTrace::new(steps))
}

fn trace_back_through_encoding(manifest: &ReductionManifest, trace: &DerivationTrace) -> Result<DerivationTrace> {
    let source = manifest.source.as_access()?;
    let alpha = manifest
        .encoding
        .as_ref()
        .ok_or_else(|| Error::Manifest("c-encode stage has no encoding".into()))?;
    let mut current = source.source.clone();
    let mut steps = Vec::with_capacity(trace.len());
    for (i, &step) in trace.steps.iter().enumerate() {
        let mut boundary = 0;
        let mut index = None;
        for (j, &letter) in current.iter().enumerate() {
            if boundary == step.offset {
                index = Some(j);
                break;
            }
            boundary += alpha.image(letter)?.len();
        }
        if index.is_none() && boundary == step.offset {
            index = Some(current.len());
        }
        let index = index.ok_or_else(|| {
            Error::InvalidTrace(format!("step {i} does not start on a codeword boundary"))
        })?;
        let back = Step::new(index, step.rule);
        current = apply_step(&source.system, &current, back).ok_or(Error::StepVerificationFailed(i))?;
        steps.push(back);
    }
    Ok(DerivationTrace::new(steps))
}

/// Pushes a witness of the chain's original input through every stage.
pub fn translate_forward(manifest: &ReductionManifest, witness: &Witness) -> Result<WitnessBundle> {
    let outputs = replay_chain(manifest)?;
    let chain = manifest.chain();
    check_witness(&chain[0].source, witness)?;
    let mut current = witness.clone();
    for (stage, output) in chain.iter().zip(&outputs) {
        current = match (stage.stage, &current) {
            (Stage::MuEmbed, Witness::Trace(t)) => Witness::Trace(trace_through_mu(t)),
            (Stage::CEncode, Witness::Trace(t)) => Witness::Trace(trace_through_encoding(stage, t)?),
            (Stage::AccessToGpcp, Witness::Trace(t)) => {
                Witness::Word(derivation_to_gpcp_witness(stage, stage.source.as_access()?, t)?)
            }
            (Stage::StripEpsEps, Witness::Word(w)) => {
                Witness::Word(w.iter().copied().filter(|l| !stage.removed.contains(l)).collect())
            }
            (Stage::GpcpToPcp, Witness::Word(w)) => Witness::Word(gpcp_witness_to_pcp(stage, w)?),
            (s, _) => return Err(Error::Manifest(format!("witness kind does not fit stage {s}"))),
        };
        check_witness(output, &current)?;
    }
    Ok(WitnessBundle {
        stage: manifest.stage,
        witness: current,
        verified: true,
    })
}

/// Pulls a witness of the chain's final output back to its original input.
pub fn translate_backward(manifest: &ReductionManifest, witness: &Witness) -> Result<WitnessBundle> {
    let outputs = replay_chain(manifest)?;
    let chain = manifest.chain();
    check_witness(outputs.last().expect("non-empty chain"), witness)?;
    let mut current = witness.clone();
    for (stage, output) in chain.iter().zip(&outputs).rev() {
        current = match (stage.stage, &current) {
            (Stage::MuEmbed, Witness::Trace(t)) => Witness::Trace(trace_back_through_mu(t)?),
            (Stage::CEncode, Witness::Trace(t)) => Witness::Trace(trace_back_through_encoding(stage, t)?),
            (Stage::AccessToGpcp, Witness::Word(w)) => {
                Witness::Trace(gpcp_witness_to_derivation(stage, output.as_gpcp()?, w)?)
            }
            (Stage::StripEpsEps, Witness::Word(w)) => Witness::Word(w.clone()),
            (Stage::GpcpToPcp, Witness::Word(w)) => {
                Witness::Word(pcp_witness_to_gpcp(stage, output.as_pcp()?, w)?)
            }
            (s, _) => return Err(Error::Manifest(format!("witness kind does not fit stage {s}"))),
        };
        check_witness(&stage.source, &current)?;
    }
    Ok(WitnessBundle {
        stage: chain[0].stage,
        witness: current,
        verified: true,
    })
}
