//! Splitting over backward collective supports: shared supports run from a
//! tail meeting `A2` to a head in `A1`.
//!
//! Once `E1` is fixed, a shared support whose `A1` part is accepted but whose
//! head is not turns into a constraint on `F2`: the `A2` part of its tail
//! must not be accepted as a whole. Tails that are already defeated through
//! their closure become type-1 constraints (`*1`, attacked by the empty
//! set); all others become type-2 constraints (`*2`, attacked by the tail
//! together with itself).

use std::collections::BTreeSet;

use crate::argset::ArgSet;
use crate::error::{Error, Result};
use crate::framework::{union_frameworks, ArgKind, Framework, Link};
use crate::semantics::{enumerate, Semantics};
use crate::solution::Solution;

#[derive(Debug, Clone)]
pub struct SupportSplitSpec {
    parent: Framework,
    f1: Framework,
    f2: Framework,
    s3: Vec<Link>,
}

/// A deduplicated family of shared-support tails.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TailFamily {
    pub tails: BTreeSet<ArgSet>,
}

impl TailFamily {
    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn contains(&self, tail: &ArgSet) -> bool {
        self.tails.contains(tail)
    }

    pub fn is_subset(&self, other: &TailFamily) -> bool {
        self.tails.is_subset(&other.tails)
    }

    pub fn difference(&self, other: &TailFamily) -> TailFamily {
        TailFamily {
            tails: self.tails.difference(&other.tails).cloned().collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &ArgSet> {
        self.tails.iter()
    }
}

impl SupportSplitSpec {
    /// Assembles a spec from explicit parts; the whole framework is
    /// `F1 ∪ F2` plus the shared supports.
    pub fn from_parts(f1: Framework, f2: Framework, s3: Vec<Link>) -> Result<Self> {
        if f1.args().intersects(f2.args()) {
            return Err(Error::InvalidCut {
                offending: vec![format!(
                    "shared arguments {}",
                    f1.render_set(&f1.args().intersection(f2.args()))
                )],
            });
        }
        let whole = union_frameworks(&f1, &f2);
        let bad: Vec<String> = s3
            .iter()
            .filter(|l| {
                !l.tail.intersects(f2.args())
                    || !f1.args().contains(l.head)
                    || !l.tail.is_subset(whole.args())
            })
            .map(|l| whole.render_link(l))
            .collect();
        if !bad.is_empty() {
            return Err(Error::InvalidCut { offending: bad });
        }
        let parent = whole.with_links(&ArgSet::new(), [], s3.iter().cloned());
        Ok(SupportSplitSpec {
            parent,
            f1,
            f2,
            s3: s3
                .into_iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        })
    }

    pub fn parent(&self) -> &Framework {
        &self.parent
    }

    pub fn f1(&self) -> &Framework {
        &self.f1
    }

    pub fn f2(&self) -> &Framework {
        &self.f2
    }

    pub fn s3(&self) -> &[Link] {
        &self.s3
    }

    pub fn a1(&self) -> &ArgSet {
        self.f1.args()
    }

    pub fn a2(&self) -> &ArgSet {
        self.f2.args()
    }

    /// Tails of shared supports whose `A1` part lies in `e1` while the
    /// supported head does not.
    pub fn support_incompatible(&self, e1: &ArgSet) -> Result<TailFamily> {
        self.f1.check_set(e1)?;
        let a1 = self.a1();
        let tails = self
            .s3
            .iter()
            .filter(|l| l.tail.intersection(a1).is_subset(e1) && !e1.contains(l.head))
            .map(|l| l.tail.clone())
            .collect();
        Ok(TailFamily { tails })
    }

    /// Support-incompatible tails lying wholly in `A2` whose closure in the
    /// whole framework meets an argument attacked by `e1`.
    pub fn closure_defeated(&self, e1: &ArgSet) -> Result<TailFamily> {
        let incompatible = self.support_incompatible(e1)?;
        let defeated = self.parent.range_plus_of(e1);
        let a1 = self.a1();
        let tails = incompatible
            .tails
            .into_iter()
            .filter(|t| t.is_disjoint(a1) && self.parent.closure_of(t).intersects(&defeated))
            .collect();
        Ok(TailFamily { tails })
    }

    /// `F2` plus `*1`, attacked by the empty set and supported by each
    /// closure-defeated tail. Identity when there are none.
    pub fn type1_modification(&self, e1: &ArgSet) -> Result<Framework> {
        let defeated = self.closure_defeated(e1)?;
        Ok(self.type1_from(&defeated))
    }

    fn type1_from(&self, defeated: &TailFamily) -> Framework {
        if defeated.is_empty() {
            return self.f2.clone();
        }
        let star1 = self.f2.dummy(ArgKind::Dummy1);
        let a2 = self.a2();
        let supports = defeated
            .iter()
            .map(|t| Link::new(t.intersection(a2), star1))
            .collect::<Vec<_>>();
        self.f2.with_links(
            &ArgSet::singleton(star1),
            [Link::new(ArgSet::new(), star1)],
            supports,
        )
    }

    /// `F2` plus `*2`, supported by the `A2` part of each remaining
    /// incompatible tail and attacked by that part together with `*2`.
    /// Identity when no such tail exists.
    pub fn type2_modification(&self, e1: &ArgSet) -> Result<Framework> {
        let incompatible = self.support_incompatible(e1)?;
        let defeated = self.closure_defeated(e1)?;
        Ok(self.type2_from(&incompatible.difference(&defeated)))
    }

    fn type2_from(&self, remaining: &TailFamily) -> Framework {
        if remaining.is_empty() {
            return self.f2.clone();
        }
        let star2 = self.f2.dummy(ArgKind::Dummy2);
        let a2 = self.a2();
        let mut attacks = Vec::new();
        let mut supports = Vec::new();
        for t in remaining.iter() {
            let part = t.intersection(a2);
            let mut with_dummy = part.clone();
            with_dummy.insert(star2);
            attacks.push(Link::new(with_dummy, star2));
            supports.push(Link::new(part, star2));
        }
        self.f2
            .with_links(&ArgSet::singleton(star2), attacks, supports)
    }

    /// The S-reduct: union of the type-1 and type-2 modifications.
    pub fn s_reduct(&self, e1: &ArgSet) -> Result<Framework> {
        let incompatible = self.support_incompatible(e1)?;
        let defeated = self.closure_defeated(e1)?;
        let c1 = self.type1_from(&defeated);
        let c2 = self.type2_from(&incompatible.difference(&defeated));
        Ok(union_frameworks(&c1, &c2))
    }
}

/// Partitions `f` along `a1` into a backward support splitting.
///
/// Fails on any attack crossing the cut and on any support whose head lies
/// in `A2` while its tail meets `A1`.
pub fn derive_support_splitting(f: &Framework, a1: &ArgSet) -> Result<SupportSplitSpec> {
    f.check_set(a1)?;
    let a2 = f.args().difference(a1);
    let mut offending = Vec::new();
    let mut s3 = Vec::new();
    for l in f.attacks() {
        let side = if a1.contains(l.head) { a1 } else { &a2 };
        if !l.tail.is_subset(side) {
            offending.push(format!("attack {}", f.render_link(l)));
        }
    }
    for l in f.supports() {
        if a1.contains(l.head) {
            if !l.tail.is_subset(a1) {
                s3.push(l.clone());
            }
        } else if l.tail.intersects(a1) {
            offending.push(format!("forward support {}", f.render_link(l)));
        }
    }
    if !offending.is_empty() {
        return Err(Error::InvalidCut { offending });
    }
    Ok(SupportSplitSpec {
        parent: f.clone(),
        f1: f.restrict(a1),
        f2: f.restrict(&a2),
        s3,
    })
}

pub fn support_incompatible(spec: &SupportSplitSpec, e1: &ArgSet) -> Result<TailFamily> {
    spec.support_incompatible(e1)
}

pub fn closure_defeated(spec: &SupportSplitSpec, e1: &ArgSet) -> Result<TailFamily> {
    spec.closure_defeated(e1)
}

pub fn type1_modification(spec: &SupportSplitSpec, e1: &ArgSet) -> Result<Framework> {
    spec.type1_modification(e1)
}

pub fn type2_modification(spec: &SupportSplitSpec, e1: &ArgSet) -> Result<Framework> {
    spec.type2_modification(e1)
}

pub fn s_reduct(spec: &SupportSplitSpec, e1: &ArgSet) -> Result<Framework> {
    spec.s_reduct(e1)
}

/// Computes extensions of `f` through a support splitting along `a1`,
/// emitting `E1 ∪ (E2 ∖ {*2})`.
///
/// Exact for stable, admissible and complete; grounded and preferred are
/// sound only and flagged as possibly incomplete.
pub fn solve_support_split(f: &Framework, a1: &ArgSet, sem: Semantics) -> Result<Solution> {
    let spec = derive_support_splitting(f, a1)?;
    solve_spec(&spec, sem)
}

pub fn solve_spec(spec: &SupportSplitSpec, sem: Semantics) -> Result<Solution> {
    if sem == Semantics::ConflictFree {
        return Err(Error::UnsupportedSemantics(sem));
    }
    let dummies = spec.parent.universe().dummies();
    let mut extensions = BTreeSet::new();
    for e1 in enumerate(&spec.f1, sem)? {
        let reduct = spec.s_reduct(&e1)?;
        for e2 in enumerate(&reduct, sem)? {
            extensions.insert(e1.union(&e2.difference(&dummies)));
        }
    }
    Ok(Solution {
        semantics: sem,
        extensions,
        possibly_incomplete: matches!(sem, Semantics::Grounded | Semantics::Preferred),
    })
}
