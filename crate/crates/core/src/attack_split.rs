//! Splitting over collective attacks.
//!
//! `F1` is evaluated first; for each of its extensions `E1`, the shared
//! attacks are closed under support, projected into `F2` (R-reduct), and
//! attacks whose `A1` part is neither accepted nor defeated are kept alive
//! through the self-attacking dummy `*0` (modification).

use std::collections::BTreeSet;

use crate::argset::ArgSet;
use crate::error::{Error, Result};
use crate::framework::{union_frameworks, ArgKind, Framework, Link};
use crate::semantics::{enumerate, Semantics};
use crate::solution::Solution;

/// A partition `(F1, F2, R3)` where the only shared links are attacks from
/// a tail meeting `A1` onto a head in `A2`.
#[derive(Debug, Clone)]
pub struct AttackSplitSpec {
    parent: Framework,
    f1: Framework,
    f2: Framework,
    r3: Vec<Link>,
    closed_r3: Option<Vec<Link>>,
}

impl AttackSplitSpec {
    /// Assembles a spec from explicit parts. `r3` must consist of attacks
    /// whose tail meets `A1` and whose head lies in `A2`.
    pub fn from_parts(f1: Framework, f2: Framework, r3: Vec<Link>) -> Result<Self> {
        let parent = assemble_parent(&f1, &f2, &r3)?;
        Ok(AttackSplitSpec {
            parent,
            f1,
            f2,
            r3: r3
                .into_iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
            closed_r3: None,
        })
    }

    /// Like [`AttackSplitSpec::from_parts`], with `r3` already closed.
    pub(crate) fn from_closed_parts(f1: Framework, f2: Framework, r3: Vec<Link>) -> Result<Self> {
        let mut spec = Self::from_parts(f1, f2, r3)?;
        spec.closed_r3 = Some(spec.r3.clone());
        Ok(spec)
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

    pub fn r3(&self) -> &[Link] {
        &self.r3
    }

    pub fn closed_r3(&self) -> Option<&[Link]> {
        self.closed_r3.as_deref()
    }

    pub fn a1(&self) -> &ArgSet {
        self.f1.args()
    }

    pub fn a2(&self) -> &ArgSet {
        self.f2.args()
    }

    pub fn is_closed(&self) -> bool {
        self.closed_r3.is_some()
    }

    /// Replaces every tail in `R3` by its closure over the support relation
    /// of the whole framework.
    pub fn close(mut self) -> Self {
        let closed = self
            .r3
            .iter()
            .map(|l| Link::new(self.parent.closure_of(&l.tail), l.head))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        self.closed_r3 = Some(closed);
        self
    }

    fn closed_links(&self) -> Result<&[Link]> {
        self.closed_r3.as_deref().ok_or(Error::LinksNotClosed)
    }

    fn check_e1(&self, e1: &ArgSet) -> Result<()> {
        self.f1.check_set(e1)
    }

    /// Arguments defeated by `e1` through `R1 ∪ R3ᶜ`.
    fn defeated_by(&self, e1: &ArgSet) -> Result<ArgSet> {
        let mut out = self.f1.range_plus_of(e1);
        for l in self.closed_links()? {
            if l.tail.is_subset(e1) {
                out.insert(l.head);
            }
        }
        Ok(out)
    }

    /// The R-reduct of `F2` for `e1`: `F2` keeps all of its arguments; every
    /// closed shared attack whose tail is untouched by `e1`'s range and whose
    /// `A1` part is accepted gets projected onto `A2` (possibly leaving an
    /// empty tail).
    pub fn r_reduct(&self, e1: &ArgSet) -> Result<Framework> {
        self.check_e1(e1)?;
        let defeated = self.defeated_by(e1)?;
        let a1 = self.a1();
        let a2 = self.a2();
        let projected = self
            .closed_links()?
            .iter()
            .filter(|l| l.tail.is_disjoint(&defeated) && l.tail.intersection(a1).is_subset(e1))
            .map(|l| Link::new(l.tail.intersection(a2), l.head));
        Ok(self.f2.with_links(&ArgSet::new(), projected, []))
    }

    /// Closed shared attacks that `e1` neither defeats nor fully accepts on
    /// the `A1` side.
    pub fn undecided_links(&self, e1: &ArgSet) -> Result<Vec<Link>> {
        self.check_e1(e1)?;
        let defeated = self.defeated_by(e1)?;
        let a1 = self.a1();
        Ok(self
            .closed_links()?
            .iter()
            .filter(|l| l.tail.is_disjoint(&defeated) && !l.tail.intersection(a1).is_subset(e1))
            .cloned()
            .collect())
    }

    /// `modify(r_reduct(e1), undecided_links(e1))`.
    pub fn star(&self, e1: &ArgSet) -> Result<Framework> {
        let reduct = self.r_reduct(e1)?;
        let undecided = self.undecided_links(e1)?;
        Ok(modify(&reduct, &undecided))
    }
}

/// Validates the shape of a two-way partition and rebuilds the whole frame.
fn assemble_parent(f1: &Framework, f2: &Framework, r3: &[Link]) -> Result<Framework> {
    if f1.args().intersects(f2.args()) {
        return Err(Error::InvalidCut {
            offending: vec![format!(
                "shared arguments {}",
                f1.render_set(&f1.args().intersection(f2.args()))
            )],
        });
    }
    let whole = union_frameworks(f1, f2);
    let bad: Vec<String> = r3
        .iter()
        .filter(|l| {
            !l.tail.intersects(f1.args())
                || !f2.args().contains(l.head)
                || !l.tail.is_subset(whole.args())
        })
        .map(|l| whole.render_link(l))
        .collect();
    if !bad.is_empty() {
        return Err(Error::InvalidCut { offending: bad });
    }
    Ok(whole.with_links(&ArgSet::new(), r3.iter().cloned(), []))
}

/// Partitions `f` along `a1` into an attack splitting.
///
/// Fails when an attack reaches into `A1` from a tail touching `A2`, or when
/// any support crosses the cut.
pub fn derive_attack_splitting(f: &Framework, a1: &ArgSet) -> Result<AttackSplitSpec> {
    f.check_set(a1)?;
    let a2 = f.args().difference(a1);
    let mut offending = Vec::new();
    let mut r3 = Vec::new();
    for l in f.attacks() {
        if a1.contains(l.head) {
            if !l.tail.is_subset(a1) {
                offending.push(format!("attack {}", f.render_link(l)));
            }
        } else if l.tail.intersects(a1) {
            r3.push(l.clone());
        }
    }
    for l in f.supports() {
        let side = if a1.contains(l.head) { a1 } else { &a2 };
        if !l.tail.is_subset(side) {
            offending.push(format!("support {}", f.render_link(l)));
        }
    }
    if !offending.is_empty() {
        return Err(Error::InvalidCut { offending });
    }
    Ok(AttackSplitSpec {
        parent: f.clone(),
        f1: f.restrict(a1),
        f2: f.restrict(&a2),
        r3,
        closed_r3: None,
    })
}

/// Returns a copy of `spec` with `R3ᶜ` populated.
pub fn close_negative_links(spec: &AttackSplitSpec) -> AttackSplitSpec {
    spec.clone().close()
}

pub fn r_reduct(spec: &AttackSplitSpec, e1: &ArgSet) -> Result<Framework> {
    spec.r_reduct(e1)
}

pub fn undecided_links(spec: &AttackSplitSpec, e1: &ArgSet) -> Result<Vec<Link>> {
    spec.undecided_links(e1)
}

/// Adds the self-attacking `*0` and, for each undecided link `(T, h)`, the
/// attack `((T ∩ A2) ∪ {*0}, h)`. With no undecided links the reduct is
/// returned unchanged.
pub fn modify(reduct: &Framework, undecided: &[Link]) -> Framework {
    if undecided.is_empty() {
        return reduct.clone();
    }
    let star0 = reduct.dummy(ArgKind::Dummy0);
    let dummy = ArgSet::singleton(star0);
    let a2 = reduct.args();
    let attacks = undecided
        .iter()
        .filter(|l| a2.contains(l.head))
        .map(|l| {
            let mut tail = l.tail.intersection(a2);
            tail.insert(star0);
            Link::new(tail, l.head)
        })
        .chain(std::iter::once(Link::new(dummy.clone(), star0)));
    reduct.with_links(&dummy, attacks, [])
}

/// Computes `sem(f)` by splitting along `a1`: every `E1 ∈ sem(F1)` is
/// combined with every `E2 ∈ sem(F2★)`.
///
/// Exact for stable, admissible, complete and preferred; for grounded only
/// soundness holds and the result is flagged accordingly.
pub fn solve_attack_split(f: &Framework, a1: &ArgSet, sem: Semantics) -> Result<Solution> {
    let spec = derive_attack_splitting(f, a1)?.close();
    solve_spec(&spec, sem)
}

pub fn solve_spec(spec: &AttackSplitSpec, sem: Semantics) -> Result<Solution> {
    if sem == Semantics::ConflictFree {
        return Err(Error::UnsupportedSemantics(sem));
    }
    let spec = if spec.is_closed() {
        spec.clone()
    } else {
        spec.clone().close()
    };
    let dummies = spec.parent.universe().dummies();
    let mut extensions = BTreeSet::new();
    for e1 in enumerate(&spec.f1, sem)? {
        let star = spec.star(&e1)?;
        for e2 in enumerate(&star, sem)? {
            extensions.insert(e1.union(&e2.difference(&dummies)));
        }
    }
    Ok(Solution {
        semantics: sem,
        extensions,
        possibly_incomplete: sem == Semantics::Grounded,
    })
}
