//! Instance normalization: ε-free embedding, then letter-wise encoding
//! into the comma-free code `C`.

use super::{map_system, AccessInstance, Rule, SemiThueSystem};
use crate::error::{Error, Result};
use crate::gadgets::{c_alphabet_injection, lambda, marker_d};
use crate::manifest::{Instance, ReductionManifest, Stage};
use crate::words::{Letter, Word};

/// `μ(w) = λ_d(w)·d`.
pub fn mu_word(d: Letter, word: &Word) -> Word {
    let mut out = lambda(d, word);
    out.push(d);
    out
}

/// Embeds an instance into an ε-free one over `Σ ∪ {@d}`. Every rule word
/// `w` becomes `μ(w)` of odd length `2|w| + 1`.
pub fn mu_embed(instance: &AccessInstance) -> Result<(AccessInstance, ReductionManifest)> {
    if let Some(letter) = instance.alphabet().iter().find(|l| l.is_reserved()) {
        return Err(Error::ReservedLetterClash(letter));
    }
    let d = marker_d();
    let mut alphabet = instance.alphabet().clone();
    alphabet.push(d)?;
    let rules = instance
        .rules()
        .iter()
        .map(|r| Rule::new(mu_word(d, &r.lhs), mu_word(d, &r.rhs)))
        .collect();
    let embedded = AccessInstance::new(
        SemiThueSystem::new(alphabet, rules)?,
        mu_word(d, &instance.source),
        mu_word(d, &instance.target),
    )?;
    let mut manifest = ReductionManifest::new(Stage::MuEmbed, Instance::Access(instance.clone()));
    manifest.introduced.push(("d".into(), d));
    Ok((embedded, manifest))
}

/// Encodes an ε-free instance letter by letter into `C`, yielding an
/// instance of `C_k` over `{0, 1}`.
pub fn c_encode_access(instance: &AccessInstance) -> Result<(AccessInstance, ReductionManifest)> {
    if !instance.system.is_epsilon_free() {
        return Err(Error::NotEpsilonFree);
    }
    let alpha = c_alphabet_injection(instance.alphabet());
    let encoded = AccessInstance::new(
        map_system(&alpha, &instance.system)?,
        alpha.apply(&instance.source)?,
        alpha.apply(&instance.target)?,
    )?;
    let mut manifest = ReductionManifest::new(Stage::CEncode, Instance::Access(instance.clone()));
    manifest.encoding = Some(alpha);
    Ok((encoded, manifest))
}

/// `mu_embed` (skipped for ε-free input) followed by `c_encode_access`.
pub fn normalize_to_ck(instance: &AccessInstance) -> Result<(AccessInstance, ReductionManifest)> {
    if instance.system.is_epsilon_free() {
        let (encoded, mut manifest) = c_encode_access(instance)?;
        manifest
            .notes
            .push("input is epsilon-free, mu-embed skipped".into());
        return Ok((encoded, manifest));
    }
    let (embedded, mu_manifest) = mu_embed(instance)?;
    let (encoded, manifest) = c_encode_access(&embedded)?;
    Ok((encoded, manifest.with_parent(Some(mu_manifest))))
}
