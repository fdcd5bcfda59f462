//! Cut discovery through strongly connected components.
//!
//! Attacks give edges tail → head and supports give edges head → tail, so
//! every prefix of a topological order of the condensation is a valid `A1`
//! for the combined procedure. The single-kind procedures forbid one kind
//! of crossing link altogether; their graphs make those links bidirectional.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::argset::ArgSet;
use crate::framework::{ArgumentId, Framework};

/// Which splitting procedure a cut is meant for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitMode {
    Attack,
    Support,
    Combined,
}

impl SplitMode {
    pub const ALL: [SplitMode; 3] = [SplitMode::Attack, SplitMode::Support, SplitMode::Combined];

    pub fn name(self) -> &'static str {
        match self {
            SplitMode::Attack => "attack",
            SplitMode::Support => "support",
            SplitMode::Combined => "combined",
        }
    }
}

impl fmt::Display for SplitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SplitMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SplitMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown split mode `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    pub nodes: ArgSet,
    pub edges: BTreeSet<(ArgumentId, ArgumentId)>,
}

/// Dependency graph for the combined procedure.
pub fn dependency_graph(f: &Framework) -> DependencyGraph {
    dependency_graph_for(f, SplitMode::Combined)
}

pub fn dependency_graph_for(f: &Framework, mode: SplitMode) -> DependencyGraph {
    let mut edges = BTreeSet::new();
    for l in f.attacks() {
        for t in l.tail.iter() {
            edges.insert((t, l.head));
            if mode == SplitMode::Support {
                edges.insert((l.head, t));
            }
        }
    }
    for l in f.supports() {
        for t in l.tail.iter() {
            edges.insert((l.head, t));
            if mode == SplitMode::Attack {
                edges.insert((t, l.head));
            }
        }
    }
    DependencyGraph {
        nodes: f.args().clone(),
        edges,
    }
}

/// Strongly connected components in topological order. Among components
/// ready at the same time, the one holding the smallest argument comes
/// first.
pub fn condense(g: &DependencyGraph) -> Vec<ArgSet> {
    let ids: Vec<ArgumentId> = g.nodes.iter().collect();
    let mut graph = DiGraph::<ArgumentId, ()>::with_capacity(ids.len(), g.edges.len());
    let index: std::collections::HashMap<ArgumentId, NodeIndex> =
        ids.iter().map(|&a| (a, graph.add_node(a))).collect();
    for (from, to) in &g.edges {
        if let (Some(&u), Some(&v)) = (index.get(from), index.get(to)) {
            graph.add_edge(u, v, ());
        }
    }

    let sccs: Vec<ArgSet> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| c.into_iter().map(|n| graph[n]).collect())
        .collect();
    let mut component = vec![0usize; graph.node_count()];
    for (ci, c) in sccs.iter().enumerate() {
        for a in c.iter() {
            component[index[&a].index()] = ci;
        }
    }

    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); sccs.len()];
    for e in graph.edge_indices() {
        let (u, v) = graph.edge_endpoints(e).expect("edge exists");
        let (cu, cv) = (component[u.index()], component[v.index()]);
        if cu != cv {
            succ[cu].insert(cv);
        }
    }
    let mut indegree = vec![0usize; sccs.len()];
    for s in &succ {
        for &v in s {
            indegree[v] += 1;
        }
    }

    let key = |ci: usize| sccs[ci].first().map(ArgumentId::index).unwrap_or(0);
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..sccs.len())
        .filter(|&ci| indegree[ci] == 0)
        .map(|ci| Reverse((key(ci), ci)))
        .collect();
    let mut order = Vec::with_capacity(sccs.len());
    while let Some(Reverse((_, ci))) = ready.pop() {
        order.push(sccs[ci].clone());
        for &v in &succ[ci] {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                ready.push(Reverse((key(v), v)));
            }
        }
    }
    order
}

/// Candidate cuts for the combined procedure.
pub fn enumerate_cuts(f: &Framework) -> Vec<ArgSet> {
    enumerate_cuts_for(f, SplitMode::Combined)
}

/// Every proper, non-empty prefix of the condensation order, by size.
pub fn enumerate_cuts_for(f: &Framework, mode: SplitMode) -> Vec<ArgSet> {
    let order = condense(&dependency_graph_for(f, mode));
    let mut cuts = Vec::new();
    let mut prefix = ArgSet::new();
    for c in order.iter().take(order.len().saturating_sub(1)) {
        prefix.union_with(c);
        cuts.push(prefix.clone());
    }
    cuts
}

pub fn best_cut(f: &Framework) -> Option<ArgSet> {
    best_cut_for(f, SplitMode::Combined)
}

/// The most balanced candidate; ties go to the smaller `A1`, then to the
/// lexicographically smaller one.
pub fn best_cut_for(f: &Framework, mode: SplitMode) -> Option<ArgSet> {
    let n = f.len();
    enumerate_cuts_for(f, mode).into_iter().min_by(|x, y| {
        let score = |c: &ArgSet| (c.len().abs_diff(n - c.len()), c.len());
        score(x).cmp(&score(y)).then_with(|| x.cmp(y))
    })
}
