//! The framework data model: interned arguments, collective links, closure
//! under support and the range of a set under attack.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::argset::ArgSet;
use crate::error::{Error, Result};

/// Dense index of an argument inside a [`Universe`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgumentId(u32);

impl ArgumentId {
    pub fn new(index: usize) -> Self {
        ArgumentId(u32::try_from(index).expect("argument index overflow"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArgKind {
    User,
    /// `*0`, the self-attacking carrier of undecided attacks.
    Dummy0,
    /// `*1`, attacked by the empty set.
    Dummy1,
    /// `*2`, attacked by each of its supporting tails together with itself.
    Dummy2,
}

impl ArgKind {
    pub const DUMMIES: [ArgKind; 3] = [ArgKind::Dummy0, ArgKind::Dummy1, ArgKind::Dummy2];

    pub fn is_dummy(self) -> bool {
        self != ArgKind::User
    }

    fn dummy_name(self) -> &'static str {
        match self {
            ArgKind::User => unreachable!("user arguments have no reserved name"),
            ArgKind::Dummy0 => "*0",
            ArgKind::Dummy1 => "*1",
            ArgKind::Dummy2 => "*2",
        }
    }
}

/// Checks the user-name grammar `[A-Za-z0-9_]+`.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Name table shared by a framework and every frame derived from it.
///
/// User arguments occupy indices `0..n`; the three dummies always occupy
/// `n`, `n+1`, `n+2`, so sets computed on a sub-framework or on a reduct can
/// be combined with sets of the original framework without translation.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    by_name: HashMap<String, ArgumentId>,
    user_count: usize,
}

impl Universe {
    fn new(user_names: Vec<String>) -> Self {
        let user_count = user_names.len();
        let mut names = user_names;
        names.extend(ArgKind::DUMMIES.iter().map(|k| k.dummy_name().to_string()));
        let by_name = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ArgumentId::new(i)))
            .collect();
        Universe {
            names,
            by_name,
            user_count,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn user_count(&self) -> usize {
        self.user_count
    }

    pub fn name(&self, id: ArgumentId) -> &str {
        &self.names[id.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<ArgumentId> {
        self.by_name.get(name).copied()
    }

    pub fn kind(&self, id: ArgumentId) -> ArgKind {
        match id.index().checked_sub(self.user_count) {
            None => ArgKind::User,
            Some(k) => ArgKind::DUMMIES[k],
        }
    }

    pub fn dummy(&self, kind: ArgKind) -> ArgumentId {
        let offset = match kind {
            ArgKind::User => panic!("not a dummy kind"),
            ArgKind::Dummy0 => 0,
            ArgKind::Dummy1 => 1,
            ArgKind::Dummy2 => 2,
        };
        ArgumentId::new(self.user_count + offset)
    }

    /// The three reserved dummies as a set.
    pub fn dummies(&self) -> ArgSet {
        ArgKind::DUMMIES.iter().map(|&k| self.dummy(k)).collect()
    }
}

/// One collective attack or support `(tail, head)`. Tails may be empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Link {
    pub tail: ArgSet,
    pub head: ArgumentId,
}

impl Link {
    pub fn new(tail: ArgSet, head: ArgumentId) -> Self {
        Link { tail, head }
    }
}

// Canonical order: by head, then tail lexicographic.
impl Ord for Link {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.head
            .cmp(&other.head)
            .then_with(|| self.tail.cmp(&other.tail))
    }
}

impl PartialOrd for Link {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgLabel {
    In,
    Out,
    Undecided,
}

/// A bipolar set-argumentation framework `(A, R, S)`.
///
/// Immutable after construction. Link lists are kept sorted and
/// deduplicated; a link may appear in both relations.
#[derive(Clone)]
pub struct Framework {
    universe: Arc<Universe>,
    args: ArgSet,
    attacks: Vec<Link>,
    supports: Vec<Link>,
}

impl PartialEq for Framework {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe)
            && self.args == other.args
            && self.attacks == other.attacks
            && self.supports == other.supports
    }
}

impl Eq for Framework {}

impl fmt::Debug for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Framework")
            .field("args", &self.names_of(&self.args))
            .field(
                "attacks",
                &self
                    .attacks
                    .iter()
                    .map(|l| self.render_link(l))
                    .collect::<Vec<_>>(),
            )
            .field(
                "supports",
                &self
                    .supports
                    .iter()
                    .map(|l| self.render_link(l))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

fn canonical(links: impl IntoIterator<Item = Link>) -> Vec<Link> {
    links
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

impl Framework {
    pub fn builder() -> FrameworkBuilder {
        FrameworkBuilder::default()
    }

    /// Builds a frame over an existing universe. Links must only mention
    /// members of `args`.
    pub fn from_parts(
        universe: Arc<Universe>,
        args: ArgSet,
        attacks: impl IntoIterator<Item = Link>,
        supports: impl IntoIterator<Item = Link>,
    ) -> Result<Self> {
        let f = Framework {
            universe,
            args,
            attacks: canonical(attacks),
            supports: canonical(supports),
        };
        if let Some(bad) = f.args.iter().find(|id| id.index() >= f.universe.len()) {
            return Err(Error::InvalidArgument(bad.index()));
        }
        for link in f.attacks.iter().chain(&f.supports) {
            f.check_set(&link.tail)?;
            f.check_id(link.head)?;
        }
        Ok(f)
    }

    /// Same as [`Framework::from_parts`] without membership checks; callers
    /// construct links from members only.
    pub(crate) fn from_parts_unchecked(
        universe: Arc<Universe>,
        args: ArgSet,
        attacks: impl IntoIterator<Item = Link>,
        supports: impl IntoIterator<Item = Link>,
    ) -> Self {
        let f = Framework {
            universe,
            args,
            attacks: canonical(attacks),
            supports: canonical(supports),
        };
        debug_assert!(f
            .attacks
            .iter()
            .chain(&f.supports)
            .all(|l| l.tail.is_subset(&f.args) && f.args.contains(l.head)));
        f
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn args(&self) -> &ArgSet {
        &self.args
    }

    pub fn attacks(&self) -> &[Link] {
        &self.attacks
    }

    pub fn supports(&self) -> &[Link] {
        &self.supports
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn name(&self, id: ArgumentId) -> &str {
        self.universe.name(id)
    }

    pub fn kind(&self, id: ArgumentId) -> ArgKind {
        self.universe.kind(id)
    }

    pub fn dummy(&self, kind: ArgKind) -> ArgumentId {
        self.universe.dummy(kind)
    }

    /// Looks up a member argument by name.
    pub fn id(&self, name: &str) -> Option<ArgumentId> {
        self.universe
            .lookup(name)
            .filter(|&id| self.args.contains(id))
    }

    /// Resolves member names into a set.
    pub fn set<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<ArgSet> {
        names
            .into_iter()
            .map(|n| {
                self.id(n).ok_or_else(|| Error::UnknownName {
                    name: n.to_string(),
                })
            })
            .collect()
    }

    pub fn names_of(&self, set: &ArgSet) -> Vec<&str> {
        set.iter().map(|id| self.name(id)).collect()
    }

    pub fn render_set(&self, set: &ArgSet) -> String {
        format!("{{{}}}", self.names_of(set).join(","))
    }

    pub fn render_link(&self, link: &Link) -> String {
        format!(
            "({}, {})",
            self.render_set(&link.tail),
            self.name(link.head)
        )
    }

    pub fn check_id(&self, id: ArgumentId) -> Result<()> {
        if self.args.contains(id) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(id.index()))
        }
    }

    pub fn check_set(&self, set: &ArgSet) -> Result<()> {
        match set.difference(&self.args).first() {
            None => Ok(()),
            Some(id) => Err(Error::InvalidArgument(id.index())),
        }
    }

    pub(crate) fn supp_step_of(&self, set: &ArgSet) -> ArgSet {
        let mut out = set.clone();
        for s in &self.supports {
            if s.tail.is_subset(set) {
                out.insert(s.head);
            }
        }
        out
    }

    pub(crate) fn closure_of(&self, set: &ArgSet) -> ArgSet {
        let mut out = set.clone();
        loop {
            let mut grew = false;
            for s in &self.supports {
                if !out.contains(s.head) && s.tail.is_subset(&out) {
                    out.insert(s.head);
                    grew = true;
                }
            }
            if !grew {
                return out;
            }
        }
    }

    pub(crate) fn range_plus_of(&self, set: &ArgSet) -> ArgSet {
        self.attacks
            .iter()
            .filter(|a| a.tail.is_subset(set))
            .map(|a| a.head)
            .collect()
    }

    pub(crate) fn attacks_set_of(&self, attacker: &ArgSet, target: &ArgSet) -> bool {
        self.attacks
            .iter()
            .any(|a| target.contains(a.head) && a.tail.is_subset(attacker))
    }

    /// One support application: `e` plus every head whose tail lies in `e`.
    pub fn supp_step(&self, e: &ArgSet) -> Result<ArgSet> {
        self.check_set(e)?;
        Ok(self.supp_step_of(e))
    }

    /// Least superset of `e` closed under the support relation.
    pub fn closure(&self, e: &ArgSet) -> Result<ArgSet> {
        self.check_set(e)?;
        Ok(self.closure_of(e))
    }

    pub fn is_closed(&self, e: &ArgSet) -> Result<bool> {
        Ok(&self.closure(e)? == e)
    }

    /// Arguments attacked by `e`: heads of attacks whose tail lies in `e`.
    pub fn range_plus(&self, e: &ArgSet) -> Result<ArgSet> {
        self.check_set(e)?;
        Ok(self.range_plus_of(e))
    }

    /// `e` together with everything it attacks.
    pub fn range_oplus(&self, e: &ArgSet) -> Result<ArgSet> {
        self.check_set(e)?;
        Ok(e.union(&self.range_plus_of(e)))
    }

    /// Whether some attack has its tail inside `attacker` and its head in
    /// `target`.
    pub fn attacks_set(&self, attacker: &ArgSet, target: &ArgSet) -> Result<bool> {
        self.check_set(attacker)?;
        self.check_set(target)?;
        Ok(self.attacks_set_of(attacker, target))
    }

    /// Labels `a` relative to `e`. Membership takes precedence over being
    /// attacked, which only matters for sets that are not conflict-free.
    pub fn label_argument(&self, e: &ArgSet, a: ArgumentId) -> Result<ArgLabel> {
        self.check_set(e)?;
        self.check_id(a)?;
        Ok(if e.contains(a) {
            ArgLabel::In
        } else if self.range_plus_of(e).contains(a) {
            ArgLabel::Out
        } else {
            ArgLabel::Undecided
        })
    }

    /// Copy of the frame with the given attack's tail replaced by its closure.
    pub fn close_attack(&self, link: &Link) -> Result<Framework> {
        if self.attacks.binary_search(link).is_err() {
            return Err(Error::LinkNotPresent);
        }
        let closed = Link::new(self.closure_of(&link.tail), link.head);
        let attacks = self
            .attacks
            .iter()
            .filter(|l| *l != link)
            .cloned()
            .chain(std::iter::once(closed));
        Ok(Framework::from_parts_unchecked(
            self.universe.clone(),
            self.args.clone(),
            attacks,
            self.supports.clone(),
        ))
    }

    /// Sub-frame induced by `keep`: every link lying wholly inside it.
    pub fn restrict(&self, keep: &ArgSet) -> Framework {
        let inside = |l: &&Link| keep.contains(l.head) && l.tail.is_subset(keep);
        Framework::from_parts_unchecked(
            self.universe.clone(),
            self.args.intersection(keep),
            self.attacks.iter().filter(inside).cloned(),
            self.supports.iter().filter(inside).cloned(),
        )
    }

    pub(crate) fn with_links(
        &self,
        extra_args: &ArgSet,
        extra_attacks: impl IntoIterator<Item = Link>,
        extra_supports: impl IntoIterator<Item = Link>,
    ) -> Framework {
        Framework::from_parts_unchecked(
            self.universe.clone(),
            self.args.union(extra_args),
            self.attacks.iter().cloned().chain(extra_attacks),
            self.supports.iter().cloned().chain(extra_supports),
        )
    }

    fn reintern(&self, target: &Arc<Universe>) -> Framework {
        let map = |id: ArgumentId| match self.kind(id) {
            ArgKind::User => target
                .lookup(self.name(id))
                .expect("target universe contains every user name"),
            k => target.dummy(k),
        };
        let map_set = |s: &ArgSet| s.iter().map(map).collect::<ArgSet>();
        let map_link = |l: &Link| Link::new(map_set(&l.tail), map(l.head));
        Framework::from_parts_unchecked(
            target.clone(),
            map_set(&self.args),
            self.attacks.iter().map(map_link),
            self.supports.iter().map(map_link),
        )
    }
}

/// Componentwise union `(A ∪ A', R ∪ R', S ∪ S')`.
///
/// Frames sharing a universe are combined directly. Otherwise arguments are
/// matched by name (dummies by kind) and the result lives in a fresh
/// universe holding the names of `f1` followed by the new names of `f2`.
pub fn union_frameworks(f1: &Framework, f2: &Framework) -> Framework {
    let same = Arc::ptr_eq(&f1.universe, &f2.universe) || f1.universe == f2.universe;
    let (g1, g2) = if same {
        (f1.clone(), f2.clone())
    } else {
        let mut names: Vec<String> = f1.universe.names[..f1.universe.user_count].to_vec();
        for n in &f2.universe.names[..f2.universe.user_count] {
            if f1.universe.lookup(n).is_none() {
                names.push(n.clone());
            }
        }
        let universe = Arc::new(Universe::new(names));
        (f1.reintern(&universe), f2.reintern(&universe))
    };
    Framework::from_parts_unchecked(
        g1.universe.clone(),
        g1.args.union(&g2.args),
        g1.attacks.iter().chain(&g2.attacks).cloned(),
        g1.supports.iter().chain(&g2.supports).cloned(),
    )
}

/// Builds a framework from argument names.
#[derive(Default, Clone)]
pub struct FrameworkBuilder {
    names: Vec<String>,
    attacks: Vec<(Vec<String>, String)>,
    supports: Vec<(Vec<String>, String)>,
}

impl FrameworkBuilder {
    pub fn arg(mut self, name: impl Into<String>) -> Self {
        self.names.push(name.into());
        self
    }

    pub fn args<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.names.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn attack<I, S>(mut self, tail: I, head: impl Into<String>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.attacks
            .push((tail.into_iter().map(Into::into).collect(), head.into()));
        self
    }

    pub fn support<I, S>(mut self, tail: I, head: impl Into<String>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.supports
            .push((tail.into_iter().map(Into::into).collect(), head.into()));
        self
    }

    pub fn build(self) -> Result<Framework> {
        let mut seen = BTreeSet::new();
        for n in &self.names {
            if !is_valid_name(n) {
                return Err(Error::InvalidName(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidName(format!("{n} (duplicate)")));
            }
        }
        let universe = Arc::new(Universe::new(self.names));
        let args: ArgSet = (0..universe.user_count()).map(ArgumentId::new).collect();
        let resolve = |n: &String| {
            universe
                .lookup(n)
                .filter(|id| args.contains(*id))
                .ok_or_else(|| Error::UnknownName { name: n.clone() })
        };
        let link = |(tail, head): &(Vec<String>, String)| -> Result<Link> {
            Ok(Link::new(
                tail.iter().map(resolve).collect::<Result<ArgSet>>()?,
                resolve(head)?,
            ))
        };
        let attacks = self.attacks.iter().map(link).collect::<Result<Vec<_>>>()?;
        let supports = self.supports.iter().map(link).collect::<Result<Vec<_>>>()?;
        Ok(Framework::from_parts_unchecked(
            universe.clone(),
            args,
            attacks,
            supports,
        ))
    }
}
