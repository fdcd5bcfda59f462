//! Decision procedures for the extension semantics and an exhaustive
//! enumerator that serves as ground truth for every splitting procedure.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::argset::ArgSet;
use crate::error::{Error, Result};
use crate::framework::{ArgumentId, Framework};

/// A set of extensions, ordered lexicographically by member index.
pub type ExtensionSet = BTreeSet<ArgSet>;

/// Largest argument count [`enumerate`] accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Largest argument count accepted by [`defends_naive`].
pub const NAIVE_DEFENSE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    ConflictFree,
    Admissible,
    Complete,
    Grounded,
    Preferred,
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 6] = [
        Semantics::ConflictFree,
        Semantics::Admissible,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Stable,
    ];

    /// The semantics every splitting procedure accepts.
    pub const SPLITTABLE: [Semantics; 5] = [
        Semantics::Stable,
        Semantics::Admissible,
        Semantics::Complete,
        Semantics::Preferred,
        Semantics::Grounded,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Semantics::ConflictFree => "cf",
            Semantics::Admissible => "adm",
            Semantics::Complete => "com",
            Semantics::Grounded => "grd",
            Semantics::Preferred => "pref",
            Semantics::Stable => "stb",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.short_name() == s)
            .ok_or_else(|| format!("unknown semantics `{s}` (expected cf|adm|com|grd|pref|stb)"))
    }
}

/// Per-framework precomputation: attacks grouped by head, with every tail
/// replaced by its closure.
///
/// A set defends `a` iff it attacks `cl(T)` for every attack `(T, a)`: each
/// closed attacker of `a` contains some `cl(T)`, and `cl(T)` is itself a
/// closed attacker.
pub(crate) struct Evaluator<'f> {
    f: &'f Framework,
    closed_tails_by_head: Vec<Vec<ArgSet>>,
}

impl<'f> Evaluator<'f> {
    pub(crate) fn new(f: &'f Framework) -> Self {
        let mut closed_tails_by_head = vec![Vec::new(); f.universe().len()];
        for att in f.attacks() {
            closed_tails_by_head[att.head.index()].push(f.closure_of(&att.tail));
        }
        Evaluator {
            f,
            closed_tails_by_head,
        }
    }

    fn defends_given_range(&self, range: &ArgSet, a: ArgumentId) -> bool {
        self.closed_tails_by_head[a.index()]
            .iter()
            .all(|t| t.intersects(range))
    }

    pub(crate) fn is_conflict_free(&self, e: &ArgSet) -> bool {
        !self.f.range_plus_of(e).intersects(e)
    }

    pub(crate) fn defends(&self, e: &ArgSet, a: ArgumentId) -> bool {
        self.defends_given_range(&self.f.range_plus_of(e), a)
    }

    /// Classifies `e` in one pass. Returns `None` when `e` is not admissible.
    fn admissible_profile(&self, e: &ArgSet) -> Option<ArgSet> {
        if &self.f.closure_of(e) != e {
            return None;
        }
        let range = self.f.range_plus_of(e);
        if range.intersects(e) {
            return None;
        }
        if e.iter().all(|a| self.defends_given_range(&range, a)) {
            Some(range)
        } else {
            None
        }
    }

    pub(crate) fn is_admissible(&self, e: &ArgSet) -> bool {
        self.admissible_profile(e).is_some()
    }

    fn complete_given_range(&self, e: &ArgSet, range: &ArgSet) -> bool {
        self.f
            .args()
            .difference(e)
            .iter()
            .all(|a| !self.defends_given_range(range, a))
    }

    pub(crate) fn is_complete(&self, e: &ArgSet) -> bool {
        match self.admissible_profile(e) {
            Some(range) => self.complete_given_range(e, &range),
            None => false,
        }
    }

    pub(crate) fn is_stable(&self, e: &ArgSet) -> bool {
        match self.admissible_profile(e) {
            Some(range) => &e.union(&range) == self.f.args(),
            None => false,
        }
    }

    fn accepts(&self, e: &ArgSet, sem: Semantics) -> bool {
        match sem {
            Semantics::ConflictFree => self.is_conflict_free(e),
            Semantics::Admissible | Semantics::Preferred => self.is_admissible(e),
            Semantics::Complete | Semantics::Grounded => self.is_complete(e),
            Semantics::Stable => self.is_stable(e),
        }
    }
}

/// [`Evaluator`] on single-word bitmasks, for universes of at most 64
/// arguments.
struct MaskEvaluator {
    args: u64,
    supports: Vec<(u64, u64)>,
    attacks: Vec<(u64, u64)>,
    /// `(cl(T), head bit)` per attack.
    closed_attacks: Vec<(u64, u64)>,
}

impl MaskEvaluator {
    fn new(f: &Framework) -> Option<Self> {
        if f.universe().len() > 64 {
            return None;
        }
        let word = |s: &ArgSet| s.as_word().expect("universe fits one word");
        let bit = |a: ArgumentId| 1u64 << a.index();
        Some(MaskEvaluator {
            args: word(f.args()),
            supports: f
                .supports()
                .iter()
                .map(|l| (word(&l.tail), bit(l.head)))
                .collect(),
            attacks: f
                .attacks()
                .iter()
                .map(|l| (word(&l.tail), bit(l.head)))
                .collect(),
            closed_attacks: f
                .attacks()
                .iter()
                .map(|l| (word(&f.closure_of(&l.tail)), bit(l.head)))
                .collect(),
        })
    }

    fn is_closed(&self, e: u64) -> bool {
        self.supports
            .iter()
            .all(|&(t, h)| t & !e != 0 || h & e != 0)
    }

    fn range(&self, e: u64) -> u64 {
        self.attacks
            .iter()
            .filter(|&&(t, _)| t & !e == 0)
            .fold(0, |acc, &(_, h)| acc | h)
    }

    /// Arguments all of whose closed attackers are hit by `range`.
    fn defended(&self, range: u64) -> u64 {
        self.closed_attacks
            .iter()
            .filter(|&&(t, _)| t & range == 0)
            .fold(self.args, |acc, &(_, h)| acc & !h)
    }

    fn accepts(&self, e: u64, sem: Semantics) -> bool {
        let range = self.range(e);
        if range & e != 0 {
            return false;
        }
        if sem == Semantics::ConflictFree {
            return true;
        }
        if !self.is_closed(e) {
            return false;
        }
        let defended = self.defended(range);
        if e & !defended != 0 {
            return false;
        }
        match sem {
            Semantics::Complete | Semantics::Grounded => defended == e,
            Semantics::Stable => e | range == self.args,
            _ => true,
        }
    }

    fn filter(&self, sem: Semantics) -> Vec<u64> {
        // every submask of `args`, in increasing order
        let mut out = Vec::new();
        let mut e = 0u64;
        loop {
            if self.accepts(e, sem) {
                out.push(e);
            }
            if e == self.args {
                break;
            }
            e = (e.wrapping_sub(self.args)) & self.args;
        }
        out
    }
}

pub fn is_conflict_free(f: &Framework, e: &ArgSet) -> Result<bool> {
    f.check_set(e)?;
    Ok(Evaluator::new(f).is_conflict_free(e))
}

/// Whether `e` attacks every closed attacker of `a`, decided through the
/// closures of the tails of attacks on `a`.
pub fn defends(f: &Framework, e: &ArgSet, a: ArgumentId) -> Result<bool> {
    f.check_set(e)?;
    f.check_id(a)?;
    Ok(Evaluator::new(f).defends(e, a))
}

/// Literal defense check: enumerates every closed subset of the framework
/// that attacks `a`. Exponential; meant as a reference for [`defends`].
pub fn defends_naive(f: &Framework, e: &ArgSet, a: ArgumentId) -> Result<bool> {
    f.check_set(e)?;
    f.check_id(a)?;
    if f.len() > NAIVE_DEFENSE_CAP {
        return Err(Error::CapExceeded {
            args: f.len(),
            cap: NAIVE_DEFENSE_CAP,
        });
    }
    let attacks_a = |s: &ArgSet| {
        f.attacks()
            .iter()
            .any(|att| att.head == a && att.tail.is_subset(s))
    };
    Ok(subsets(f.args()).all(|candidate| {
        let is_closed_attacker = f.closure_of(&candidate) == candidate && attacks_a(&candidate);
        !is_closed_attacker || f.attacks_set_of(e, &candidate)
    }))
}

pub fn is_admissible(f: &Framework, e: &ArgSet) -> Result<bool> {
    f.check_set(e)?;
    Ok(Evaluator::new(f).is_admissible(e))
}

pub fn is_complete(f: &Framework, e: &ArgSet) -> Result<bool> {
    f.check_set(e)?;
    Ok(Evaluator::new(f).is_complete(e))
}

pub fn is_stable(f: &Framework, e: &ArgSet) -> Result<bool> {
    f.check_set(e)?;
    Ok(Evaluator::new(f).is_stable(e))
}

/// Decides membership of `e` in `sem(f)`. Grounded and preferred need the
/// whole admissible or complete family and therefore enumerate.
pub fn is_extension(f: &Framework, e: &ArgSet, sem: Semantics) -> Result<bool> {
    f.check_set(e)?;
    match sem {
        Semantics::Grounded | Semantics::Preferred => Ok(enumerate(f, sem)?.contains(e)),
        _ => Ok(Evaluator::new(f).accepts(e, sem)),
    }
}

/// Every subset of `universe`, in ascending mask order.
pub(crate) fn subsets(universe: &ArgSet) -> impl Iterator<Item = ArgSet> {
    let members: Vec<ArgumentId> = universe.iter().collect();
    let count: u64 = 1 << members.len();
    (0..count).map(move |mask| {
        members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &id)| id)
            .collect()
    })
}

fn minimal_elements(sets: ExtensionSet) -> ExtensionSet {
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t != *s && t.is_subset(s)))
        .cloned()
        .collect()
}

fn maximal_elements(sets: ExtensionSet) -> ExtensionSet {
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect()
}

/// All extensions of `f` under `sem`, using [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate(f: &Framework, sem: Semantics) -> Result<ExtensionSet> {
    enumerate_with_cap(f, sem, DEFAULT_ENUMERATION_CAP)
}

/// All extensions of `f` under `sem` by filtering every subset of the
/// arguments. Grounded extensions are the ⊆-minimal complete ones and may be
/// absent altogether; preferred are the ⊆-maximal admissible ones.
pub fn enumerate_with_cap(f: &Framework, sem: Semantics, cap: usize) -> Result<ExtensionSet> {
    if f.len() > cap {
        return Err(Error::CapExceeded { args: f.len(), cap });
    }
    if let Some(eval) = MaskEvaluator::new(f) {
        let found = eval.filter(sem);
        let keep: Vec<u64> = match sem {
            Semantics::Grounded => found
                .iter()
                .copied()
                .filter(|&s| !found.iter().any(|&t| t != s && t & !s == 0))
                .collect(),
            Semantics::Preferred => found
                .iter()
                .copied()
                .filter(|&s| !found.iter().any(|&t| t != s && s & !t == 0))
                .collect(),
            _ => found,
        };
        return Ok(keep.into_iter().map(ArgSet::from_word).collect());
    }
    Ok(enumerate_generic(f, sem))
}

fn enumerate_generic(f: &Framework, sem: Semantics) -> ExtensionSet {
    let eval = Evaluator::new(f);
    let found: ExtensionSet = subsets(f.args()).filter(|e| eval.accepts(e, sem)).collect();
    match sem {
        Semantics::Grounded => minimal_elements(found),
        Semantics::Preferred => maximal_elements(found),
        _ => found,
    }
}
