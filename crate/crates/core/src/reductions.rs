//! Many-one reductions: accessibility on `C_k` to GPCP with `k + 2`
//! letters, GPCP with `n` letters to PCP with `n + 2` letters, and their
//! composition after normalization.

use crate::correspondence::{strip_letters, GpcpInstance, PcpInstance};
use crate::error::{Error, Result};
use crate::gadgets::{
    delimiter, jmath, lambda, marker_alphabet, marker_b, marker_d, marker_e, parse_c_star, rho,
};
use crate::manifest::{Instance, ReductionManifest, Stage};
use crate::rewriting::{c_encode_access, mu_embed, normalize_to_ck, AccessInstance};
use crate::words::{Alphabet, Letter, Morphism, Word};

/// Letter naming rule `index` (0-based): `@a<index + 1>`.
pub fn rule_letter(index: usize) -> Letter {
    Letter::named(&format!("@a{}", index + 1))
}

/// Checks membership in `C_k`: binary alphabet, every rule word in `C⁺`,
/// source and target in `C*`.
pub fn check_in_ck(instance: &AccessInstance) -> Result<()> {
    let alphabet = instance.alphabet();
    let binary = [Letter::zero(), Letter::one()];
    if alphabet.len() != 2 || !binary.iter().all(|&l| alphabet.contains(l)) {
        return Err(Error::NotInCk(format!(
            "alphabet {alphabet:?} is not {{0, 1}}"
        )));
    }
    let in_c_star = |what: String, word: &Word, plus: bool| -> Result<()> {
        if plus && word.is_empty() {
            return Err(Error::NotInCk(format!("{what} is empty")));
        }
        parse_c_star(word).map(|_| ()).map_err(|e| {
            Error::NotInCk(format!("{what} `{}` is not in C*: {e}", word.compact()))
        })
    };
    for (i, rule) in instance.rules().iter().enumerate() {
        in_c_star(format!("left side of rule {i}"), &rule.lhs, true)?;
        in_c_star(format!("right side of rule {i}"), &rule.rhs, true)?;
    }
    in_c_star("source".into(), &instance.source, false)?;
    in_c_star("target".into(), &instance.target, false)?;
    Ok(())
}

/// Builds `(Σ, σ, τ, ε, f·v, u·f, ε)` with `Σ = {0, 1, @a1, …, @ak}`,
/// `σ`, `τ` fixing `0` and `1` and sending `@ai` to the two sides of
/// rule `i`.
pub fn access_to_gpcp(instance: &AccessInstance) -> Result<(GpcpInstance, ReductionManifest)> {
    check_in_ck(instance)?;
    let (zero, one) = (Letter::zero(), Letter::one());
    let rules = instance.rules();
    let mut alphabet = Alphabet::binary();
    let mut top = vec![Word::single(zero), Word::single(one)];
    let mut bottom = top.clone();
    let mut manifest = ReductionManifest::new(Stage::AccessToGpcp, Instance::Access(instance.clone()));
    for (i, rule) in rules.iter().enumerate() {
        let letter = rule_letter(i);
        alphabet.push(letter)?;
        top.push(rule.lhs.clone());
        bottom.push(rule.rhs.clone());
        manifest.introduced.push((format!("a{}", i + 1), letter));
        manifest.rule_letters.push((i, letter));
    }
    let sigma = Morphism::new(alphabet.clone(), Alphabet::binary(), top)?;
    let tau = Morphism::new(alphabet.clone(), Alphabet::binary(), bottom)?;
    let f = delimiter();
    let (u, v) = (&instance.source, &instance.target);
    let gpcp = GpcpInstance::new(
        alphabet,
        sigma,
        tau,
        [Word::empty(), f.concat(v), u.concat(&f), Word::empty()],
    )?;
    manifest.affixes = vec![
        ("u".into(), u.clone()),
        ("v".into(), v.clone()),
        ("f".into(), f),
    ];
    Ok((gpcp, manifest))
}

/// The morphisms `σ̂`, `τ̂` from `Σ ∪ {@b, @e}` into `{0, 1, @d, @b, @e}`:
///
/// ```text
/// σ̂(@b) = @b·λ(s)        τ̂(@b) = @b·@d·ρ(s2)
/// σ̂(@e) = λ(t)·@d·@e     τ̂(@e) = ρ(t2)·@e
/// σ̂(a)  = λ(σ(a))        τ̂(a)  = ρ(τ(a))
/// ```
pub fn marker_morphisms(instance: &GpcpInstance) -> Result<(Alphabet, Morphism, Morphism)> {
    let (b, e, d) = (marker_b(), marker_e(), marker_d());
    let mut alphabet = instance.alphabet.clone();
    for marker in [b, e] {
        alphabet
            .push(marker)
            .map_err(|_| Error::ReservedLetterClash(marker))?;
    }
    let mut top = Vec::with_capacity(alphabet.len());
    let mut bottom = Vec::with_capacity(alphabet.len());
    for (a, image) in instance.sigma.images() {
        top.push(lambda(d, image));
        bottom.push(rho(d, instance.tau.image(a)?));
    }
    top.push(Word::single(b).concat(&lambda(d, &instance.s)));
    bottom.push(Word::from_letters(vec![b, d]).concat(&rho(d, &instance.s2)));
    top.push(lambda(d, &instance.t).concat(&Word::from_letters(vec![d, e])));
    bottom.push(rho(d, &instance.t2).concat(&Word::single(e)));
    let target = marker_alphabet();
    let sigma_hat = Morphism::new(alphabet.clone(), target.clone(), top)?;
    let tau_hat = Morphism::new(alphabet.clone(), target, bottom)?;
    Ok((alphabet, sigma_hat, tau_hat))
}

/// `(Σ ∪ {@b, @e}, ȷ∘σ̂, ȷ∘τ̂)`. The input must be (ε,ε)-free.
pub fn gpcp_to_pcp(instance: &GpcpInstance) -> Result<(PcpInstance, ReductionManifest)> {
    if let Some((a, _)) = instance
        .sigma
        .images()
        .find(|(a, s)| s.is_empty() && instance.tau.image(*a).map(|t| t.is_empty()).unwrap_or(false))
    {
        return Err(Error::NotEpsEpsFree(a));
    }
    let (alphabet, sigma_hat, tau_hat) = marker_morphisms(instance)?;
    let j = jmath();
    let pcp = PcpInstance::new(alphabet, sigma_hat.then(&j)?, tau_hat.then(&j)?)?;
    let mut manifest = ReductionManifest::new(Stage::GpcpToPcp, Instance::Gpcp(instance.clone()));
    manifest.introduced = vec![
        ("b".into(), marker_b()),
        ("e".into(), marker_e()),
        ("d".into(), marker_d()),
    ];
    manifest.affixes = vec![
        ("s".into(), instance.s.clone()),
        ("t".into(), instance.t.clone()),
        ("s2".into(), instance.s2.clone()),
        ("t2".into(), instance.t2.clone()),
    ];
    manifest.intermediate = Some((sigma_hat, tau_hat));
    Ok((pcp, manifest))
}

/// Removes (ε,ε) letters, recording them. Unlike
/// [`crate::correspondence::strip_eps_eps`] this always yields an
/// instance, possibly over the empty alphabet.
pub fn strip_stage(instance: &GpcpInstance) -> (GpcpInstance, ReductionManifest) {
    let (stripped, removed) = strip_letters(instance);
    let mut manifest = ReductionManifest::new(Stage::StripEpsEps, Instance::Gpcp(instance.clone()));
    manifest.removed = removed;
    (stripped, manifest)
}

/// GPCP to PCP, stripping (ε,ε) letters first when there are any.
pub fn gpcp_chain_to_pcp(
    instance: &GpcpInstance,
    parent: Option<ReductionManifest>,
) -> Result<(PcpInstance, ReductionManifest)> {
    let (input, parent) = if instance.flags().eps_eps_free {
        (instance.clone(), parent)
    } else {
        let (stripped, manifest) = strip_stage(instance);
        (stripped, Some(manifest.with_parent(parent)))
    };
    let (pcp, manifest) = gpcp_to_pcp(&input)?;
    Ok((pcp, manifest.with_parent(parent)))
}

/// Accessibility with `k` rules to GPCP with `k + 2` letters, normalizing
/// into `C_k` first.
pub fn access_chain_to_gpcp(instance: &AccessInstance) -> Result<(GpcpInstance, ReductionManifest)> {
    let (ck, normal) = normalize_to_ck(instance)?;
    let (gpcp, manifest) = access_to_gpcp(&ck)?;
    Ok((gpcp, manifest.with_parent(Some(normal))))
}

/// Accessibility with `k` rules to erasement-free PCP with `k + 4`
/// letters.
pub fn claus_pipeline(instance: &AccessInstance) -> Result<(PcpInstance, ReductionManifest)> {
    let (gpcp, manifest) = access_chain_to_gpcp(instance)?;
    let (pcp, manifest) = gpcp_to_pcp(&gpcp).map(|(p, m)| (p, m.with_parent(Some(manifest))))?;
    Ok((pcp, manifest))
}

/// Re-runs a single stage on its recorded source and returns the
/// instance it produces. Also checks that the recomputed fresh letters
/// agree with the record.
pub fn replay_stage(stage: &ReductionManifest) -> Result<Instance> {
    let (out, fresh) = match stage.stage {
        Stage::MuEmbed => {
            let (i, m) = mu_embed(stage.source.as_access()?)?;
            (Instance::Access(i), m)
        }
        Stage::CEncode => {
            let (i, m) = c_encode_access(stage.source.as_access()?)?;
            (Instance::Access(i), m)
        }
        Stage::AccessToGpcp => {
            let (i, m) = access_to_gpcp(stage.source.as_access()?)?;
            (Instance::Gpcp(i), m)
        }
        Stage::StripEpsEps => {
            let (i, m) = strip_stage(stage.source.as_gpcp()?);
            (Instance::Gpcp(i), m)
        }
        Stage::GpcpToPcp => {
            let (i, m) = gpcp_to_pcp(stage.source.as_gpcp()?)?;
            (Instance::Pcp(i), m)
        }
    };
    if fresh.introduced != stage.introduced || fresh.rule_letters != stage.rule_letters {
        return Err(Error::Manifest(format!(
            "stage {} does not reproduce its recorded letters",
            stage.stage
        )));
    }
    Ok(out)
}

/// Output instance of every stage of a chain, root first.
pub fn replay_chain(manifest: &ReductionManifest) -> Result<Vec<Instance>> {
    let chain = manifest.chain();
    let mut outputs: Vec<Instance> = Vec::with_capacity(chain.len());
    for (i, stage) in chain.iter().enumerate() {
        if i > 0 && outputs[i - 1] != stage.source {
            return Err(Error::Manifest(format!(
                "stage {} does not consume the output of stage {}",
                stage.stage,
                chain[i - 1].stage
            )));
        }
        outputs.push(replay_stage(stage)?);
    }
    Ok(outputs)
}
