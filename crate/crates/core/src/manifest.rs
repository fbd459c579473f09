//! Records left behind by each reduction stage, sufficient to translate
//! witnesses between the source and the reduced instance.

use std::fmt;

use crate::correspondence::{GpcpInstance, PcpInstance};
use crate::error::{Error, Result};
use crate::rewriting::AccessInstance;
use crate::words::{Alphabet, Letter, Morphism, Word};

/// Any instance the tool reads, writes or reduces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Instance {
    Access(AccessInstance),
    Pcp(PcpInstance),
    Gpcp(GpcpInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Access(_) => "access",
            Instance::Pcp(_) => "pcp",
            Instance::Gpcp(_) => "gpcp",
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Instance::Access(i) => i.alphabet(),
            Instance::Pcp(i) => &i.alphabet,
            Instance::Gpcp(i) => &i.alphabet,
        }
    }

    pub fn as_access(&self) -> Result<&AccessInstance> {
        match self {
            Instance::Access(i) => Ok(i),
            other => Err(Error::Manifest(format!("expected an access instance, found {}", other.kind()))),
        }
    }

    pub fn as_gpcp(&self) -> Result<&GpcpInstance> {
        match self {
            Instance::Gpcp(i) => Ok(i),
            other => Err(Error::Manifest(format!("expected a gpcp instance, found {}", other.kind()))),
        }
    }

    pub fn as_pcp(&self) -> Result<&PcpInstance> {
        match self {
            Instance::Pcp(i) => Ok(i),
            other => Err(Error::Manifest(format!("expected a pcp instance, found {}", other.kind()))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stage {
    /// ε-free embedding `w ↦ λ_d(w)·d`.
    MuEmbed,
    /// Letter-wise encoding into the comma-free code `C`.
    CEncode,
    /// Accessibility on `C_k` to GPCP with `k + 2` letters.
    AccessToGpcp,
    /// Removal of letters whose two images are both empty.
    StripEpsEps,
    /// GPCP with `n` letters to PCP with `n + 2` letters.
    GpcpToPcp,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::MuEmbed,
        Stage::CEncode,
        Stage::AccessToGpcp,
        Stage::StripEpsEps,
        Stage::GpcpToPcp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::MuEmbed => "mu-embed",
            Stage::CEncode => "c-encode",
            Stage::AccessToGpcp => "access-to-gpcp",
            Stage::StripEpsEps => "strip-eps-eps",
            Stage::GpcpToPcp => "gpcp-to-pcp",
        }
    }

    pub fn from_name(name: &str) -> Option<Stage> {
        Stage::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionManifest {
    pub stage: Stage,
    /// The instance this stage consumed.
    pub source: Instance,
    /// Fresh letters by role (`d`, `b`, `e`, `a1`, …).
    pub introduced: Vec<(String, Letter)>,
    /// Rule index of the source system → letter naming it.
    pub rule_letters: Vec<(usize, Letter)>,
    /// Affix words consumed or produced (`s`, `t`, `s2`, `t2`, `u`, `v`, `f`).
    pub affixes: Vec<(String, Word)>,
    /// Letter encoding applied by `c-encode`.
    pub encoding: Option<Morphism>,
    /// Letters dropped by `strip-eps-eps`.
    pub removed: Vec<Letter>,
    /// The intermediate morphisms into `{0, 1, @d, @b, @e}` of the
    /// GPCP→PCP stage, before composing with `ȷ`.
    pub intermediate: Option<(Morphism, Morphism)>,
    pub notes: Vec<String>,
    pub parent: Option<Box<ReductionManifest>>,
}

impl ReductionManifest {
    pub fn new(stage: Stage, source: Instance) -> ReductionManifest {
        ReductionManifest {
            stage,
            source,
            introduced: Vec::new(),
            rule_letters: Vec::new(),
            affixes: Vec::new(),
            encoding: None,
            removed: Vec::new(),
            intermediate: None,
            notes: Vec::new(),
            parent: None,
        }
    }

    pub fn with_parent(mut self, parent: Option<ReductionManifest>) -> ReductionManifest {
        self.parent = parent.map(Box::new);
        self
    }

    pub fn introduced_letter(&self, role: &str) -> Option<Letter> {
        self.introduced
            .iter()
            .find(|(r, _)| r == role)
            .map(|(_, l)| *l)
    }

    pub fn affix(&self, name: &str) -> Option<&Word> {
        self.affixes.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    /// Stages from the original input to this one.
    pub fn chain(&self) -> Vec<&ReductionManifest> {
        let mut out = vec![self];
        let mut cur = self;
        while let Some(parent) = cur.parent.as_deref() {
            out.push(parent);
            cur = parent;
        }
        out.reverse();
        out
    }

    /// Builds a chain from stages listed root first.
    pub fn from_chain(stages: Vec<ReductionManifest>) -> Option<ReductionManifest> {
        stages.into_iter().fold(None, |parent, mut stage| {
            stage.parent = parent.map(Box::new);
            Some(stage)
        })
    }

    /// The original input of the whole chain.
    pub fn root_source(&self) -> &Instance {
        &self.chain()[0].source
    }

    /// Checks the letter invariants: introduced letters are reserved and
    /// fresh for the source, rule letters are injective and cover the
    /// source rules exactly.
    pub fn check_invariants(&self) -> Result<()> {
        for (role, letter) in &self.introduced {
            if !letter.is_reserved() {
                return Err(Error::Manifest(format!("introduced {role} letter `{letter}` lacks the @ prefix")));
            }
            if self.source.alphabet().contains(*letter) {
                return Err(Error::ReservedLetterClash(*letter));
            }
        }
        if let Instance::Access(src) = &self.source {
            if !self.rule_letters.is_empty() || self.stage == Stage::AccessToGpcp {
                let mut indices: Vec<usize> = self.rule_letters.iter().map(|(i, _)| *i).collect();
                indices.sort_unstable();
                if indices != (0..src.rules().len()).collect::<Vec<_>>() {
                    return Err(Error::Manifest("rule letters do not cover the rules".into()));
                }
                let mut letters: Vec<Letter> = self.rule_letters.iter().map(|(_, l)| *l).collect();
                letters.sort();
                letters.dedup();
                if letters.len() != self.rule_letters.len() {
                    return Err(Error::Manifest("rule letters are not distinct".into()));
                }
            }
        }
        match &self.parent {
            Some(parent) => parent.check_invariants(),
            None => Ok(()),
        }
    }
}
