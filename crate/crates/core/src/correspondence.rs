//! Post correspondence instances, solution checking and the bounded
//! overhang search.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Morphism, Word};

/// A solution candidate over an instance alphabet.
pub type SolutionWord = Word;

/// PCP: is there a non-empty `w` with `σ(w) = τ(w)`?
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PcpInstance {
    pub alphabet: Alphabet,
    pub sigma: Morphism,
    pub tau: Morphism,
}

/// GPCP: is there a `w` with `s·σ(w)·t = s2·τ(w)·t2`?
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GpcpInstance {
    pub alphabet: Alphabet,
    pub sigma: Morphism,
    pub tau: Morphism,
    pub s: Word,
    pub t: Word,
    pub s2: Word,
    pub t2: Word,
}

fn check_morphisms(alphabet: &Alphabet, sigma: &Morphism, tau: &Morphism) -> Result<()> {
    let binary = Alphabet::binary();
    for m in [sigma, tau] {
        if m.source() != alphabet {
            return Err(Error::Manifest("morphism source differs from the instance alphabet".into()));
        }
        for (_, image) in m.images() {
            binary.check_word(image)?;
        }
    }
    Ok(())
}

impl PcpInstance {
    pub fn new(alphabet: Alphabet, sigma: Morphism, tau: Morphism) -> Result<PcpInstance> {
        check_morphisms(&alphabet, &sigma, &tau)?;
        Ok(PcpInstance { alphabet, sigma, tau })
    }

    pub fn flags(&self) -> InstanceFlags {
        InstanceFlags::of(&self.sigma, &self.tau)
    }
}

impl GpcpInstance {
    pub fn new(
        alphabet: Alphabet,
        sigma: Morphism,
        tau: Morphism,
        affixes: [Word; 4],
    ) -> Result<GpcpInstance> {
        check_morphisms(&alphabet, &sigma, &tau)?;
        let binary = Alphabet::binary();
        for affix in &affixes {
            binary.check_word(affix)?;
        }
        let [s, t, s2, t2] = affixes;
        Ok(GpcpInstance {
            alphabet,
            sigma,
            tau,
            s,
            t,
            s2,
            t2,
        })
    }

    pub fn flags(&self) -> InstanceFlags {
        InstanceFlags::of(&self.sigma, &self.tau)
    }

    /// `s·σ(w)·t` and `s2·τ(w)·t2`.
    pub fn assemble(&self, w: &Word) -> Result<(Word, Word)> {
        let top = self.s.concat(&self.sigma.apply(w)?).concat(&self.t);
        let bottom = self.s2.concat(&self.tau.apply(w)?).concat(&self.t2);
        Ok((top, bottom))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InstanceFlags {
    /// No image is empty.
    pub erasement_free: bool,
    /// No letter has both images empty.
    pub eps_eps_free: bool,
}

impl InstanceFlags {
    pub fn of(sigma: &Morphism, tau: &Morphism) -> InstanceFlags {
        let pairs: Vec<(&Word, &Word)> = sigma
            .images()
            .map(|(l, s)| (s, tau.image(l).expect("same source alphabet")))
            .collect();
        InstanceFlags {
            erasement_free: pairs.iter().all(|(s, t)| !s.is_empty() && !t.is_empty()),
            eps_eps_free: pairs.iter().all(|(s, t)| !s.is_empty() || !t.is_empty()),
        }
    }
}

/// `w ≠ ε` and `σ(w) = τ(w)`.
pub fn check_pcp_solution(instance: &PcpInstance, w: &Word) -> Result<bool> {
    let top = instance.sigma.apply(w)?;
    let bottom = instance.tau.apply(w)?;
    Ok(!w.is_empty() && top == bottom)
}

/// `s·σ(w)·t = s2·τ(w)·t2`; the empty word is allowed.
pub fn check_gpcp_solution(instance: &GpcpInstance, w: &Word) -> Result<bool> {
    let (top, bottom) = instance.assemble(w)?;
    Ok(top == bottom)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    /// Configurations whose unmatched suffix is longer are pruned.
    pub max_overhang: usize,
    /// Maximum number of distinct configurations stored.
    pub max_states: usize,
    /// Maximum solution length explored, in letters.
    pub max_len: usize,
    /// Maximum number of configurations whose successors are generated.
    pub max_expanded: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_overhang: 4096,
            max_states: 1_000_000,
            max_len: 256,
            max_expanded: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A shortest solution, lexicographically least by letter declaration
    /// order among the shortest.
    Found(SolutionWord),
    BoundExhausted,
    /// The configuration graph was explored completely without pruning.
    ProvedNoSolution,
}

impl SearchOutcome {
    pub fn is_decisive(&self) -> bool {
        !matches!(self, SearchOutcome::BoundExhausted)
    }

    pub fn found(&self) -> Option<&Word> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Which assembled string is currently ahead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Side {
    Top,
    Bottom,
}

/// Unmatched suffix of the longer of `s·σ(p)` and `s2·τ(p)` once their
/// common prefix is consumed. The empty overhang is always tagged `Top`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Config {
    side: Side,
    overhang: Word,
}

impl Config {
    /// Configuration after reading `top` on the upper string and `bottom`
    /// on the lower one, or `None` if they disagree.
    fn settle(top: &[Letter], bottom: &[Letter]) -> Option<Config> {
        if top.starts_with(bottom) {
            Some(Config {
                side: Side::Top,
                overhang: Word::from_letters(top[bottom.len()..].to_vec()),
            })
        } else if bottom.starts_with(top) {
            Some(Config {
                side: Side::Bottom,
                overhang: Word::from_letters(bottom[top.len()..].to_vec()),
            })
        } else {
            None
        }
    }

    fn advance(&self, top_img: &Word, bottom_img: &Word) -> Option<Config> {
        match self.side {
            Side::Top => Config::settle(&self.overhang.concat(top_img), bottom_img),
            Side::Bottom => Config::settle(top_img, &self.overhang.concat(bottom_img)),
        }
    }

    fn closes(&self, t: &Word, t2: &Word) -> bool {
        match self.side {
            Side::Top => self.overhang.concat(t) == *t2,
            Side::Bottom => *t == self.overhang.concat(t2),
        }
    }
}

struct Node {
    config: Config,
    parent: Option<(usize, Letter)>,
    depth: usize,
}

struct Problem<'a> {
    alphabet: &'a Alphabet,
    sigma: &'a Morphism,
    tau: &'a Morphism,
    start: Config,
    t: &'a Word,
    t2: &'a Word,
    nonempty: bool,
}

fn search(problem: Problem<'_>, limits: SolverLimits) -> SearchOutcome {
    let images: Vec<(Letter, Word, Word)> = problem
        .alphabet
        .iter()
        .map(|a| {
            (
                a,
                problem.sigma.image(a).expect("total").clone(),
                problem.tau.image(a).expect("total").clone(),
            )
        })
        .collect();

    let mut nodes = vec![Node {
        config: problem.start.clone(),
        parent: None,
        depth: 0,
    }];
    let mut seen: HashMap<Config, usize> = HashMap::new();
    if !problem.nonempty {
        seen.insert(problem.start, 0);
    }
    let mut queue = VecDeque::from([0usize]);
    let mut pruned = false;
    let mut expanded = 0;

    while let Some(id) = queue.pop_front() {
        let accepts = id != 0 || !problem.nonempty;
        if accepts && nodes[id].config.closes(problem.t, problem.t2) {
            return SearchOutcome::Found(word_to(&nodes, id));
        }
        if expanded == limits.max_expanded {
            return SearchOutcome::BoundExhausted;
        }
        expanded += 1;
        let depth = nodes[id].depth;
        for (letter, top, bottom) in &images {
            let Some(next) = nodes[id].config.advance(top, bottom) else {
                continue;
            };
            if seen.contains_key(&next) {
                continue;
            }
            if next.overhang.len() > limits.max_overhang || depth + 1 > limits.max_len {
                pruned = true;
                continue;
            }
            if nodes.len() >= limits.max_states {
                return SearchOutcome::BoundExhausted;
            }
            let new_id = nodes.len();
            seen.insert(next.clone(), new_id);
            nodes.push(Node {
                config: next,
                parent: Some((id, *letter)),
                depth: depth + 1,
            });
            queue.push_back(new_id);
        }
    }
    if pruned {
        SearchOutcome::BoundExhausted
    } else {
        SearchOutcome::ProvedNoSolution
    }
}

fn word_to(nodes: &[Node], mut id: usize) -> Word {
    let mut letters = Vec::new();
    while let Some((parent, letter)) = nodes[id].parent {
        letters.push(letter);
        id = parent;
    }
    letters.reverse();
    Word::from_letters(letters)
}

/// Breadth-first search over overhang configurations. A start where
/// neither of `s`, `s2` is a prefix of the other is reported as
/// `MismatchedStart`; such an instance has no solution.
pub fn solve_gpcp_bounded(instance: &GpcpInstance, limits: SolverLimits) -> Result<SearchOutcome> {
    let start = Config::settle(&instance.s, &instance.s2).ok_or(Error::MismatchedStart)?;
    let outcome = search(
        Problem {
            alphabet: &instance.alphabet,
            sigma: &instance.sigma,
            tau: &instance.tau,
            start,
            t: &instance.t,
            t2: &instance.t2,
            nonempty: false,
        },
        limits,
    );
    if let SearchOutcome::Found(w) = &outcome {
        assert!(check_gpcp_solution(instance, w)?, "solver produced a non-solution");
    }
    Ok(outcome)
}

pub fn solve_pcp_bounded(instance: &PcpInstance, limits: SolverLimits) -> SearchOutcome {
    let empty = Word::empty();
    let outcome = search(
        Problem {
            alphabet: &instance.alphabet,
            sigma: &instance.sigma,
            tau: &instance.tau,
            start: Config {
                side: Side::Top,
                overhang: Word::empty(),
            },
            t: &empty,
            t2: &empty,
            nonempty: true,
        },
        limits,
    );
    if let SearchOutcome::Found(w) = &outcome {
        assert!(
            check_pcp_solution(instance, w).unwrap_or(false),
            "solver produced a non-solution"
        );
    }
    outcome
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StripOutcome {
    Normalized(GpcpInstance),
    /// Every letter had both images empty; the answer is `s·t = s2·t2`.
    ImmediateVerdict(bool),
}

/// Drops every letter whose two images are empty. Returns the restricted
/// instance (possibly over an empty alphabet) and the removed letters.
pub fn strip_letters(instance: &GpcpInstance) -> (GpcpInstance, Vec<Letter>) {
    let removed: Vec<Letter> = instance
        .alphabet
        .iter()
        .filter(|&a| {
            instance.sigma.image(a).expect("total").is_empty()
                && instance.tau.image(a).expect("total").is_empty()
        })
        .collect();
    let keep = |a: Letter| !removed.contains(&a);
    let sigma = instance.sigma.restrict(keep);
    let tau = instance.tau.restrict(keep);
    let stripped = GpcpInstance {
        alphabet: sigma.source().clone(),
        sigma,
        tau,
        s: instance.s.clone(),
        t: instance.t.clone(),
        s2: instance.s2.clone(),
        t2: instance.t2.clone(),
    };
    (stripped, removed)
}

/// Reduces to an (ε,ε)-free instance with the same answer.
pub fn strip_eps_eps(instance: &GpcpInstance) -> StripOutcome {
    let (stripped, _) = strip_letters(instance);
    if stripped.alphabet.is_empty() {
        let verdict = instance.s.concat(&instance.t) == instance.s2.concat(&instance.t2);
        return StripOutcome::ImmediateVerdict(verdict);
    }
    StripOutcome::Normalized(stripped)
}

/// One GPCP instance `(Σ, σ, τ, σ(a), ε, τ(a), ε)` per letter `a`. The
/// PCP instance is solvable iff some member is.
pub fn pcp_to_gpcp_family(instance: &PcpInstance) -> Vec<GpcpInstance> {
    instance
        .alphabet
        .iter()
        .map(|a| GpcpInstance {
            alphabet: instance.alphabet.clone(),
            sigma: instance.sigma.clone(),
            tau: instance.tau.clone(),
            s: instance.sigma.image(a).expect("total").clone(),
            t: Word::empty(),
            s2: instance.tau.image(a).expect("total").clone(),
            t2: Word::empty(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(bits: &str) -> Word {
        Word::binary(bits)
    }

    fn pcp(pairs: &[(&str, &str, &str)]) -> PcpInstance {
        let letters: Vec<&str> = pairs.iter().map(|p| p.0).collect();
        let alphabet = Alphabet::of(&letters);
        let sigma = Morphism::new(
            alphabet.clone(),
            Alphabet::binary(),
            pairs.iter().map(|p| b(p.1)).collect(),
        )
        .unwrap();
        let tau = Morphism::new(
            alphabet.clone(),
            Alphabet::binary(),
            pairs.iter().map(|p| b(p.2)).collect(),
        )
        .unwrap();
        PcpInstance::new(alphabet, sigma, tau).unwrap()
    }

    fn gpcp(pairs: &[(&str, &str, &str)], affixes: [&str; 4]) -> GpcpInstance {
        let p = pcp(pairs);
        GpcpInstance::new(p.alphabet, p.sigma, p.tau, affixes.map(b)).unwrap()
    }

    fn w(tokens: &str) -> Word {
        Word::parse(tokens).unwrap()
    }

    #[test]
    fn pcp_checker() {
        let same = pcp(&[("a", "0", "0")]);
        assert!(check_pcp_solution(&same, &w("a")).unwrap());
        assert!(!check_pcp_solution(&same, &Word::empty()).unwrap());
        let diff = pcp(&[("a", "01", "0")]);
        assert!(!check_pcp_solution(&diff, &w("a")).unwrap());
        assert!(check_pcp_solution(&same, &w("z")).is_err());
    }

    #[test]
    fn gpcp_checker_accepts_empty_word() {
        let i = gpcp(&[("a", "0", "1")], ["01", "1", "0", "11"]);
        assert!(check_gpcp_solution(&i, &Word::empty()).unwrap());
        assert!(!check_gpcp_solution(&i, &w("a")).unwrap());
    }

    #[test]
    fn gpcp_solver_finds_empty_solution() {
        let i = gpcp(&[("a", "0", "1")], ["01", "1", "0", "11"]);
        assert_eq!(
            solve_gpcp_bounded(&i, SolverLimits::default()).unwrap(),
            SearchOutcome::Found(Word::empty())
        );
    }

    #[test]
    fn gpcp_solver_mismatched_start() {
        let i = gpcp(&[("a", "0", "0")], ["01", "", "1", ""]);
        assert_eq!(solve_gpcp_bounded(&i, SolverLimits::default()), Err(Error::MismatchedStart));
    }

    #[test]
    fn gpcp_solver_proves_first_letter_mismatch() {
        let i = gpcp(&[("a", "0", "1")], ["", "", "", ""]);
        // ε is a solution of this GPCP since s·t = s2·t2 = ε
        assert_eq!(
            solve_gpcp_bounded(&i, SolverLimits::default()).unwrap(),
            SearchOutcome::Found(Word::empty())
        );
        let p = pcp(&[("a", "0", "1")]);
        assert_eq!(
            solve_pcp_bounded(&p, SolverLimits::default()),
            SearchOutcome::ProvedNoSolution
        );
    }

    #[test]
    fn pcp_solver_examples() {
        assert_eq!(
            solve_pcp_bounded(&pcp(&[("a", "0", "0")]), SolverLimits::default()),
            SearchOutcome::Found(w("a"))
        );
        assert_eq!(
            solve_pcp_bounded(&pcp(&[("a", "01", "011")]), SolverLimits::default()),
            SearchOutcome::ProvedNoSolution
        );
    }

    #[test]
    fn pcp_solver_classic_instance() {
        // a: 1/111, b: 10111/10, c: 10/0 has shortest solution b a a c
        let i = pcp(&[("a", "1", "111"), ("b", "10111", "10"), ("c", "10", "0")]);
        let outcome = solve_pcp_bounded(&i, SolverLimits::default());
        assert_eq!(outcome, SearchOutcome::Found(w("b a a c")));
    }

    #[test]
    fn pcp_solver_tie_break_is_lexicographic() {
        let i = pcp(&[("x", "0", "0"), ("y", "1", "1")]);
        assert_eq!(
            solve_pcp_bounded(&i, SolverLimits::default()),
            SearchOutcome::Found(w("x"))
        );
    }

    #[test]
    fn solver_reports_unbounded_growth() {
        // top always lags: overhang grows without bound
        let i = pcp(&[("a", "0", "00")]);
        let limits = SolverLimits {
            max_overhang: 10,
            max_states: 1000,
            max_len: 100,
            max_expanded: 1000,
        };
        assert_eq!(solve_pcp_bounded(&i, limits), SearchOutcome::BoundExhausted);
    }

    #[test]
    fn strip_examples() {
        let none = gpcp(&[("a", "0", "1")], ["", "", "", ""]);
        assert_eq!(strip_eps_eps(&none), StripOutcome::Normalized(none.clone()));

        let all = gpcp(&[("a", "", "")], ["", "", "", ""]);
        assert_eq!(strip_eps_eps(&all), StripOutcome::ImmediateVerdict(true));
        let all_no = gpcp(&[("a", "", "")], ["0", "", "1", ""]);
        assert_eq!(strip_eps_eps(&all_no), StripOutcome::ImmediateVerdict(false));

        let mixed = gpcp(&[("a", "", ""), ("b", "0", "")], ["", "", "0", ""]);
        match strip_eps_eps(&mixed) {
            StripOutcome::Normalized(j) => {
                assert_eq!(j.alphabet.len(), 1);
                assert!(j.flags().eps_eps_free);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn family_members() {
        let one = pcp(&[("a", "0", "0")]);
        let fam = pcp_to_gpcp_family(&one);
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].s, b("0"));
        assert_eq!(fam[0].s2, b("0"));
        assert!(check_gpcp_solution(&fam[0], &Word::empty()).unwrap());

        let three = pcp(&[("a", "0", "01"), ("b", "1", ""), ("c", "", "1")]);
        assert_eq!(pcp_to_gpcp_family(&three).len(), 3);
    }

    #[test]
    fn predicate_flags() {
        let f = pcp(&[("a", "0", "")]).flags();
        assert!(f.eps_eps_free && !f.erasement_free);
        let f = pcp(&[("a", "0", "1")]).flags();
        assert!(f.eps_eps_free && f.erasement_free);
        let f = pcp(&[("a", "", "")]).flags();
        assert!(!f.eps_eps_free && !f.erasement_free);
    }
}
