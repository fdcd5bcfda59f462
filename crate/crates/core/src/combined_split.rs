//! Splitting with both kinds of shared links: attacks into `F2` and
//! supports into `F1`.
//!
//! All attacks of `F2` and the shared attacks are closed over the full
//! support relation first. Closed attacks whose tail now reaches into `A1`
//! are treated as shared; the attack machinery then yields `F2★`, and the
//! support machinery applied to `(F1, F2★, S3)` yields the final reduct.

use std::collections::BTreeSet;

use crate::argset::ArgSet;
use crate::attack_split::AttackSplitSpec;
use crate::error::{Error, Result};
use crate::framework::{Framework, Link};
use crate::semantics::{enumerate, Semantics};
use crate::solution::Solution;
use crate::support_split::SupportSplitSpec;

/// A partition `(F1, F2, R3, S3)` of a framework.
#[derive(Debug, Clone)]
pub struct SplitSpec {
    parent: Framework,
    f1: Framework,
    f2: Framework,
    r3: Vec<Link>,
    s3: Vec<Link>,
}

/// Every intermediate frame of one run of the combined procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    /// `F2` with its attacks closed; attacks promoted into `R̂3` removed.
    pub hat_f2: Framework,
    pub hat_r3: Vec<Link>,
    /// R-reduct of `F̂2`.
    pub reduct: Framework,
    /// The reduct after the `*0` modification.
    pub star: Framework,
    /// S-reduct of `F2★`.
    pub final_frame: Framework,
}

/// First stage of the procedure: closed `F2` and the closed shared attacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatStage {
    pub hat_f2: Framework,
    pub hat_r3: Vec<Link>,
}

impl SplitSpec {
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

    pub fn s3(&self) -> &[Link] {
        &self.s3
    }

    pub fn a1(&self) -> &ArgSet {
        self.f1.args()
    }

    pub fn a2(&self) -> &ArgSet {
        self.f2.args()
    }

    /// Closes the attacks of `R2 ∪ R3` over the full support relation and
    /// repartitions them by whether the closed tail meets `A1`.
    pub fn hat_transform(&self) -> HatStage {
        let a1 = self.a1();
        let mut hat_r2 = BTreeSet::new();
        let mut hat_r3 = BTreeSet::new();
        for l in self.f2.attacks().iter().chain(&self.r3) {
            let closed = Link::new(self.parent.closure_of(&l.tail), l.head);
            if closed.tail.intersects(a1) {
                hat_r3.insert(closed);
            } else {
                hat_r2.insert(closed);
            }
        }
        let hat_f2 = Framework::from_parts_unchecked(
            self.parent.universe().clone(),
            self.a2().clone(),
            hat_r2,
            self.f2.supports().iter().cloned(),
        );
        HatStage {
            hat_f2,
            hat_r3: hat_r3.into_iter().collect(),
        }
    }

    fn stages(&self) -> Result<(HatStage, AttackSplitSpec)> {
        let hat = self.hat_transform();
        let attack = AttackSplitSpec::from_closed_parts(
            self.f1.clone(),
            hat.hat_f2.clone(),
            hat.hat_r3.clone(),
        )?;
        Ok((hat, attack))
    }

    /// Runs every stage for `e1` and returns the intermediate frames.
    pub fn build_reduced(&self, e1: &ArgSet) -> Result<PipelineTrace> {
        self.f1.check_set(e1)?;
        let (hat, attack) = self.stages()?;
        let reduct = attack.r_reduct(e1)?;
        let star = attack.star(e1)?;
        let support = SupportSplitSpec::from_parts(self.f1.clone(), star.clone(), self.s3.clone())?;
        let final_frame = support.s_reduct(e1)?;
        Ok(PipelineTrace {
            hat_f2: hat.hat_f2,
            hat_r3: hat.hat_r3,
            reduct,
            star,
            final_frame,
        })
    }

    /// The final reduct `F2⊛` for `e1`.
    pub fn final_reduct(&self, e1: &ArgSet) -> Result<Framework> {
        let (_, attack) = self.stages()?;
        let star = attack.star(e1)?;
        SupportSplitSpec::from_parts(self.f1.clone(), star, self.s3.clone())?.s_reduct(e1)
    }
}

/// Partitions `f` along `a1`.
///
/// Attacks may cross from `A1` into `A2` and supports from `A2` into `A1`;
/// anything crossing the other way is reported.
pub fn derive_splitting(f: &Framework, a1: &ArgSet) -> Result<SplitSpec> {
    f.check_set(a1)?;
    let a2 = f.args().difference(a1);
    let mut offending = Vec::new();
    let mut r3 = Vec::new();
    let mut s3 = Vec::new();
    for l in f.attacks() {
        if a1.contains(l.head) {
            if l.tail.intersects(&a2) {
                offending.push(format!("attack {}", f.render_link(l)));
            }
        } else if l.tail.intersects(a1) {
            r3.push(l.clone());
        }
    }
    for l in f.supports() {
        if a1.contains(l.head) {
            if l.tail.intersects(&a2) {
                s3.push(l.clone());
            }
        } else if l.tail.intersects(a1) {
            offending.push(format!("support {}", f.render_link(l)));
        }
    }
    if !offending.is_empty() {
        return Err(Error::InvalidCut { offending });
    }
    Ok(SplitSpec {
        parent: f.clone(),
        f1: f.restrict(a1),
        f2: f.restrict(&a2),
        r3,
        s3,
    })
}

pub fn hat_transform(spec: &SplitSpec) -> HatStage {
    spec.hat_transform()
}

pub fn build_reduced(spec: &SplitSpec, e1: &ArgSet) -> Result<PipelineTrace> {
    spec.build_reduced(e1)
}

/// Computes extensions of `f` through the combined procedure along `a1`,
/// emitting `E1 ∪ (E2 ∖ {*2})` for `E2 ∈ sem(F2⊛)`.
///
/// Exact for stable, admissible and complete; grounded and preferred are
/// sound only and flagged as possibly incomplete.
pub fn solve_split(f: &Framework, a1: &ArgSet, sem: Semantics) -> Result<Solution> {
    let spec = derive_splitting(f, a1)?;
    solve_spec(&spec, sem)
}

pub fn solve_spec(spec: &SplitSpec, sem: Semantics) -> Result<Solution> {
    if sem == Semantics::ConflictFree {
        return Err(Error::UnsupportedSemantics(sem));
    }
    let (_, attack) = spec.stages()?;
    let dummies = spec.parent.universe().dummies();
    let mut extensions = BTreeSet::new();
    for e1 in enumerate(&spec.f1, sem)? {
        let star = attack.star(&e1)?;
        let support = SupportSplitSpec::from_parts(spec.f1.clone(), star, spec.s3.clone())?;
        let reduct = support.s_reduct(&e1)?;
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
