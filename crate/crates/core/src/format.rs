//! Line-oriented text formats for instances, witnesses and manifests.
//!
//! Instance files:
//!
//! ```text
//! kind access|pcp|gpcp
//! letters <tok> ...
//! rule <word> -> <word>        # access, repeatable
//! source <word>                # access
//! target <word>                # access
//! sigma <letter> -> <word>     # pcp/gpcp, binary images
//! tau <letter> -> <word>
//! affix s|t|s2|t2 <word>       # gpcp, missing affixes are empty
//! ```
//!
//! A word is a space-separated list of letter tokens, or `-` for the empty
//! word. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::correspondence::{GpcpInstance, PcpInstance};
use crate::error::{Error, Result};
use crate::gadgets::marker_alphabet;
use crate::manifest::{Instance, ReductionManifest, Stage};
use crate::rewriting::{AccessInstance, DerivationTrace, Rule, SemiThueSystem, Step};
use crate::witnesses::Witness;
use crate::words::{Alphabet, Letter, Morphism, Word};

const AFFIX_NAMES: [&str; 4] = ["s", "t", "s2", "t2"];

/// Non-blank, comment-stripped lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        }
        .trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn split_directive(line: &str) -> (&str, &str) {
    match line.split_once(char::is_whitespace) {
        Some((head, rest)) => (head, rest.trim()),
        None => (line, ""),
    }
}

fn parse_word(line: usize, text: &str, alphabet: &Alphabet) -> Result<Word> {
    if text.is_empty() {
        return Err(Error::parse(line, "missing word (use `-` for the empty word)"));
    }
    if text.split_whitespace().count() > 1 && text.split_whitespace().any(|t| t == "-") {
        return Err(Error::parse(line, "`-` is reserved for the empty word"));
    }
    let word = Word::parse(text).map_err(|e| Error::parse(line, e.to_string()))?;
    alphabet
        .check_word(&word)
        .map_err(|e| Error::parse(line, e.to_string()))?;
    Ok(word)
}

fn parse_arrow(line: usize, text: &str) -> Result<(&str, &str)> {
    let (lhs, rhs) = text
        .split_once("->")
        .ok_or_else(|| Error::parse(line, "expected `<lhs> -> <rhs>`"))?;
    Ok((lhs.trim(), rhs.trim()))
}

#[derive(Default)]
struct Draft {
    kind: Option<String>,
    letters: Option<Alphabet>,
    rules: Vec<Rule>,
    source: Option<Word>,
    target: Option<Word>,
    sigma: HashMap<Letter, Word>,
    tau: HashMap<Letter, Word>,
    affixes: HashMap<String, Word>,
}

/// Parses an instance file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_at(text, 0)
}

fn parse_instance_at(text: &str, line_offset: usize) -> Result<Instance> {
    let mut d = Draft::default();
    let mut last_line = line_offset;
    let binary = Alphabet::binary();
    for (n, line) in content_lines(text) {
        let n = n + line_offset;
        last_line = n;
        let (head, rest) = split_directive(line);
        if head != "kind" && d.kind.is_none() {
            return Err(Error::parse(n, "the first directive must be `kind`"));
        }
        if !matches!(head, "kind" | "letters") && d.letters.is_none() {
            return Err(Error::parse(n, "`letters` must precede words"));
        }
        let kind = d.kind.clone().unwrap_or_default();
        let alphabet = d.letters.clone().unwrap_or_default();
        match head {
            "kind" => {
                if d.kind.is_some() {
                    return Err(Error::parse(n, "duplicate `kind` line"));
                }
                if !matches!(rest, "access" | "pcp" | "gpcp") {
                    return Err(Error::parse(n, format!("unknown kind `{rest}`")));
                }
                d.kind = Some(rest.to_string());
            }
            "letters" => {
                if d.letters.is_some() {
                    return Err(Error::parse(n, "duplicate `letters` line"));
                }
                let mut alphabet = Alphabet::default();
                for token in rest.split_whitespace() {
                    let letter = Letter::new(token).map_err(|e| Error::parse(n, e.to_string()))?;
                    alphabet.push(letter).map_err(|e| Error::parse(n, e.to_string()))?;
                }
                d.letters = Some(alphabet);
            }
            "rule" if kind == "access" => {
                let (lhs, rhs) = parse_arrow(n, rest)?;
                d.rules.push(Rule::new(
                    parse_word(n, lhs, &alphabet)?,
                    parse_word(n, rhs, &alphabet)?,
                ));
            }
            "source" | "target" if kind == "access" => {
                let slot = if head == "source" { &mut d.source } else { &mut d.target };
                if slot.is_some() {
                    return Err(Error::parse(n, format!("duplicate `{head}` line")));
                }
                *slot = Some(parse_word(n, rest, &alphabet)?);
            }
            "sigma" | "tau" if kind != "access" => {
                let (lhs, rhs) = parse_arrow(n, rest)?;
                let letter = Letter::new(lhs).map_err(|e| Error::parse(n, e.to_string()))?;
                if !alphabet.contains(letter) {
                    return Err(Error::parse(n, format!("letter `{letter}` is not declared")));
                }
                let image = parse_word(n, rhs, &binary)?;
                let map = if head == "sigma" { &mut d.sigma } else { &mut d.tau };
                if map.insert(letter, image).is_some() {
                    return Err(Error::parse(n, format!("duplicate {head} image for `{letter}`")));
                }
            }
            "affix" if kind == "gpcp" => {
                let (name, word) = split_directive(rest);
                if !AFFIX_NAMES.contains(&name) {
                    return Err(Error::parse(n, format!("unknown affix `{name}`")));
                }
                let word = parse_word(n, word, &binary)?;
                if d.affixes.insert(name.to_string(), word).is_some() {
                    return Err(Error::parse(n, format!("duplicate affix `{name}`")));
                }
            }
            other => {
                return Err(Error::parse(
                    n,
                    format!("unexpected directive `{other}` in a {kind} file"),
                ))
            }
        }
    }
    let kind = d.kind.ok_or_else(|| Error::parse(last_line, "missing `kind` line"))?;
    let alphabet = d
        .letters
        .ok_or_else(|| Error::parse(last_line, "missing `letters` line"))?;
    let wrap = |e: Error| Error::parse(last_line, e.to_string());
    match kind.as_str() {
        "access" => {
            let source = d.source.ok_or_else(|| Error::parse(last_line, "missing `source` line"))?;
            let target = d.target.ok_or_else(|| Error::parse(last_line, "missing `target` line"))?;
            let system = SemiThueSystem::new(alphabet, d.rules).map_err(wrap)?;
            Ok(Instance::Access(AccessInstance::new(system, source, target).map_err(wrap)?))
        }
        _ => {
            let morphism = |map: HashMap<Letter, Word>, name: &str| -> Result<Morphism> {
                let images = alphabet
                    .iter()
                    .map(|l| {
                        map.get(&l).cloned().ok_or_else(|| {
                            Error::parse(last_line, format!("missing {name} image for `{l}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Morphism::new(alphabet.clone(), Alphabet::binary(), images).map_err(wrap)
            };
            let sigma = morphism(d.sigma, "sigma")?;
            let tau = morphism(d.tau, "tau")?;
            if kind == "pcp" {
                return Ok(Instance::Pcp(PcpInstance::new(alphabet, sigma, tau).map_err(wrap)?));
            }
            let affixes = AFFIX_NAMES.map(|name| d.affixes.get(name).cloned().unwrap_or_default());
            Ok(Instance::Gpcp(
                GpcpInstance::new(alphabet, sigma, tau, affixes).map_err(wrap)?,
            ))
        }
    }
}

fn write_letters(out: &mut String, alphabet: &Alphabet) {
    out.push_str("letters");
    for l in alphabet.iter() {
        out.push(' ');
        out.push_str(l.token());
    }
    out.push('\n');
}

fn write_images(out: &mut String, name: &str, m: &Morphism) {
    for (letter, image) in m.images() {
        writeln!(out, "{name} {letter} -> {image}").unwrap();
    }
}

/// Canonical text of an instance.
pub fn emit_instance(instance: &Instance) -> String {
    let mut out = format!("kind {}\n", instance.kind());
    write_letters(&mut out, instance.alphabet());
    match instance {
        Instance::Access(i) => {
            for rule in i.rules() {
                writeln!(out, "rule {rule}").unwrap();
            }
            writeln!(out, "source {}", i.source).unwrap();
            writeln!(out, "target {}", i.target).unwrap();
        }
        Instance::Pcp(i) => {
            write_images(&mut out, "sigma", &i.sigma);
            write_images(&mut out, "tau", &i.tau);
        }
        Instance::Gpcp(i) => {
            write_images(&mut out, "sigma", &i.sigma);
            write_images(&mut out, "tau", &i.tau);
            for (name, word) in AFFIX_NAMES.iter().zip([&i.s, &i.t, &i.s2, &i.t2]) {
                writeln!(out, "affix {name} {word}").unwrap();
            }
        }
    }
    out
}

/// Parses a witness file: one `witness <word>` line, or any number of
/// `step <offset> <rule>` lines (none meaning the empty derivation).
pub fn parse_witness(text: &str) -> Result<Witness> {
    let mut word: Option<Word> = None;
    let mut steps = Vec::new();
    for (n, line) in content_lines(text) {
        let (head, rest) = split_directive(line);
        match head {
            "witness" => {
                if word.is_some() || !steps.is_empty() {
                    return Err(Error::parse(n, "a witness file holds one word or a list of steps"));
                }
                if rest.is_empty() {
                    return Err(Error::parse(n, "missing word (use `-` for the empty word)"));
                }
                word = Some(Word::parse(rest).map_err(|e| Error::parse(n, e.to_string()))?);
            }
            "step" => {
                if word.is_some() {
                    return Err(Error::parse(n, "a witness file holds one word or a list of steps"));
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let [offset, rule] = fields[..] else {
                    return Err(Error::parse(n, "expected `step <offset> <rule-index>`"));
                };
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::parse(n, format!("`{s}` is not a non-negative integer")))
                };
                steps.push(Step::new(parse(offset)?, parse(rule)?));
            }
            other => return Err(Error::parse(n, format!("unexpected directive `{other}`"))),
        }
    }
    Ok(match word {
        Some(w) => Witness::Word(w),
        None => Witness::Trace(DerivationTrace::new(steps)),
    })
}

pub fn emit_witness(witness: &Witness) -> String {
    match witness {
        Witness::Word(w) => format!("witness {w}\n"),
        Witness::Trace(t) => {
            let mut out = format!("# derivation with {} steps\n", t.len());
            for s in &t.steps {
                writeln!(out, "step {} {}", s.offset, s.rule).unwrap();
            }
            out
        }
    }
}

/// Manifest chain, root stage first. Each stage embeds the instance it
/// consumed, indented by two spaces between `source` and `end`.
pub fn emit_manifest(manifest: &ReductionManifest) -> String {
    let mut out = String::from("# reduction manifest\n");
    let chain = manifest.chain();
    for (i, stage) in chain.iter().enumerate() {
        writeln!(out, "stage {}", stage.stage).unwrap();
        if i > 0 {
            writeln!(out, "parent {}", chain[i - 1].stage).unwrap();
        }
        for note in &stage.notes {
            writeln!(out, "note {note}").unwrap();
        }
        for (role, letter) in &stage.introduced {
            writeln!(out, "introduced {role} {letter}").unwrap();
        }
        for (index, letter) in &stage.rule_letters {
            writeln!(out, "rule-letter {index} {letter}").unwrap();
        }
        for (name, word) in &stage.affixes {
            writeln!(out, "affix {name} {word}").unwrap();
        }
        if let Some(alpha) = &stage.encoding {
            write_images(&mut out, "encode", alpha);
        }
        for letter in &stage.removed {
            writeln!(out, "removed {letter}").unwrap();
        }
        if let Some((sigma_hat, tau_hat)) = &stage.intermediate {
            write_images(&mut out, "intermediate-sigma", sigma_hat);
            write_images(&mut out, "intermediate-tau", tau_hat);
        }
        out.push_str("source\n");
        for line in emit_instance(&stage.source).lines() {
            writeln!(out, "  {line}").unwrap();
        }
        out.push_str("end\n");
    }
    out
}

struct StageDraft {
    line: usize,
    stage: Stage,
    parent: Option<String>,
    notes: Vec<String>,
    introduced: Vec<(String, Letter)>,
    rule_letters: Vec<(usize, Letter)>,
    affixes: Vec<(String, Word)>,
    encode: Vec<(Letter, Word)>,
    removed: Vec<Letter>,
    inter_sigma: Vec<(Letter, Word)>,
    inter_tau: Vec<(Letter, Word)>,
    source: Option<Instance>,
}

fn parse_letter(n: usize, token: &str) -> Result<Letter> {
    Letter::new(token).map_err(|e| Error::parse(n, e.to_string()))
}

fn parse_any_word(n: usize, text: &str) -> Result<Word> {
    if text.is_empty() {
        return Err(Error::parse(n, "missing word"));
    }
    Word::parse(text).map_err(|e| Error::parse(n, e.to_string()))
}

pub fn parse_manifest(text: &str) -> Result<ReductionManifest> {
    let mut stages: Vec<StageDraft> = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((i, raw)) = lines.next() {
        let n = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = split_directive(line);
        if head == "stage" {
            let stage = Stage::from_name(rest)
                .ok_or_else(|| Error::parse(n, format!("unknown stage `{rest}`")))?;
            stages.push(StageDraft {
                line: n,
                stage,
                parent: None,
                notes: Vec::new(),
                introduced: Vec::new(),
                rule_letters: Vec::new(),
                affixes: Vec::new(),
                encode: Vec::new(),
                removed: Vec::new(),
                inter_sigma: Vec::new(),
                inter_tau: Vec::new(),
                source: None,
            });
            continue;
        }
        let current = stages
            .last_mut()
            .ok_or_else(|| Error::parse(n, "expected `stage <name>` first"))?;
        match head {
            "parent" => current.parent = Some(rest.to_string()),
            "note" => current.notes.push(rest.to_string()),
            "introduced" => {
                let (role, letter) = split_directive(rest);
                current.introduced.push((role.to_string(), parse_letter(n, letter)?));
            }
            "rule-letter" => {
                let (index, letter) = split_directive(rest);
                let index = index
                    .parse()
                    .map_err(|_| Error::parse(n, format!("bad rule index `{index}`")))?;
                current.rule_letters.push((index, parse_letter(n, letter)?));
            }
            "affix" => {
                let (name, word) = split_directive(rest);
                current.affixes.push((name.to_string(), parse_any_word(n, word)?));
            }
            "encode" | "intermediate-sigma" | "intermediate-tau" => {
                let (lhs, rhs) = parse_arrow(n, rest)?;
                let pair = (parse_letter(n, lhs)?, parse_any_word(n, rhs)?);
                match head {
                    "encode" => current.encode.push(pair),
                    "intermediate-sigma" => current.inter_sigma.push(pair),
                    _ => current.inter_tau.push(pair),
                }
            }
            "removed" => current.removed.push(parse_letter(n, rest)?),
            "source" => {
                let start = n;
                let mut body = String::new();
                let mut closed = false;
                for (_, raw) in lines.by_ref() {
                    if raw.trim() == "end" {
                        closed = true;
                        break;
                    }
                    body.push_str(raw.strip_prefix("  ").unwrap_or(raw));
                    body.push('\n');
                }
                if !closed {
                    return Err(Error::parse(start, "unterminated `source` block"));
                }
                current.source = Some(parse_instance_at(&body, start)?);
            }
            other => return Err(Error::parse(n, format!("unexpected directive `{other}`"))),
        }
    }
    if stages.is_empty() {
        return Err(Error::parse(0, "manifest has no stages"));
    }
    let mut built = Vec::with_capacity(stages.len());
    for (i, d) in stages.into_iter().enumerate() {
        let expected_parent = (i > 0).then(|| {
            let prev: &ReductionManifest = &built[i - 1];
            prev.stage.name().to_string()
        });
        if d.parent != expected_parent {
            return Err(Error::parse(d.line, "`parent` must name the preceding stage"));
        }
        let source = d
            .source
            .ok_or_else(|| Error::parse(d.line, "stage has no `source` block"))?;
        let wrap = |e: Error| Error::parse(d.line, e.to_string());
        let mut m = ReductionManifest::new(d.stage, source);
        m.notes = d.notes;
        m.introduced = d.introduced;
        m.rule_letters = d.rule_letters;
        m.affixes = d.affixes;
        m.removed = d.removed;
        if !d.encode.is_empty() || d.stage == Stage::CEncode {
            let alphabet = m.source.alphabet().clone();
            m.encoding = Some(Morphism::from_pairs(alphabet, Alphabet::binary(), d.encode).map_err(wrap)?);
        }
        if !d.inter_sigma.is_empty() || !d.inter_tau.is_empty() {
            let mut alphabet = m.source.alphabet().clone();
            for (role, letter) in &m.introduced {
                if role == "b" || role == "e" {
                    alphabet.push(*letter).map_err(wrap)?;
                }
            }
            let sigma = Morphism::from_pairs(alphabet.clone(), marker_alphabet(), d.inter_sigma).map_err(wrap)?;
            let tau = Morphism::from_pairs(alphabet, marker_alphabet(), d.inter_tau).map_err(wrap)?;
            m.intermediate = Some((sigma, tau));
        }
        built.push(m);
    }
    Ok(ReductionManifest::from_chain(built).expect("non-empty"))
}
