//! Exact maximum independent set by branch and bound on bitsets.
//!
//! Branching picks the candidate with the largest residual degree (lowest
//! index on ties) and tries "take it" before "drop it". A node is pruned
//! when the current set plus a greedy clique cover of the candidates cannot
//! beat the incumbent; a clique contributes at most one vertex to any
//! independent set, so the cover count is a valid upper bound.

use std::time::{Duration, Instant};

use crate::bitset::BitSet;

/// Limits for a search. The search stops at whichever is hit first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub time: Duration,
    /// Optional cap on explored search nodes; reproducible across machines.
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub fn time(time: Duration) -> Self {
        Self { time, max_nodes: None }
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = Some(nodes);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisOutcome {
    /// Vertex indices of the best independent set, ascending.
    pub set: Vec<usize>,
    /// True iff the search tree was fully explored.
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Largest independent set of the graph given by symmetric adjacency rows.
pub fn max_independent_set(adj: &[BitSet], budget: Budget) -> MisOutcome {
    let n = adj.len();
    let mut search = Search {
        adj,
        best: greedy_independent_set(adj),
        current: Vec::new(),
        deadline: Instant::now() + budget.time,
        max_nodes: budget.max_nodes,
        nodes: 0,
        aborted: false,
    };
    search.expand(BitSet::full(n));
    let mut set = search.best;
    set.sort_unstable();
    MisOutcome {
        set,
        exhaustive: !search.aborted,
        nodes: search.nodes,
    }
}

/// Minimum-residual-degree greedy; seeds the incumbent.
pub fn greedy_independent_set(adj: &[BitSet]) -> Vec<usize> {
    let mut cand = BitSet::full(adj.len());
    let mut chosen = Vec::new();
    while let Some(v) = cand
        .iter()
        .min_by_key(|&v| (adj[v].intersection_count(&cand), v))
    {
        chosen.push(v);
        cand.remove(v);
        cand.difference_with(&adj[v]);
    }
    chosen.sort_unstable();
    chosen
}

/// Number of cliques in a greedy clique cover of `cand`.
pub fn clique_cover_bound(adj: &[BitSet], cand: &BitSet) -> usize {
    let mut rest = cand.clone();
    let mut cliques = 0;
    while let Some(u) = rest.first() {
        rest.remove(u);
        let mut ext = rest.clone();
        ext.intersect_with(&adj[u]);
        while let Some(w) = ext.first() {
            rest.remove(w);
            ext.remove(w);
            ext.intersect_with(&adj[w]);
        }
        cliques += 1;
    }
    cliques
}

struct Search<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    current: Vec<usize>,
    deadline: Instant,
    max_nodes: Option<u64>,
    nodes: u64,
    aborted: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m)
            || (self.nodes % 256 == 0 && Instant::now() >= self.deadline)
        {
            self.aborted = true;
        }
        self.aborted
    }

    fn record(&mut self) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
    }

    fn expand(&mut self, cand: BitSet) {
        if self.out_of_budget() {
            return;
        }
        let size = cand.count();
        if self.current.len() + size <= self.best.len() {
            return;
        }
        if size == 0 {
            self.record();
            return;
        }
        if self.current.len() + clique_cover_bound(self.adj, &cand) <= self.best.len() {
            return;
        }

        let mut pivot = None;
        let mut pivot_deg = 0;
        for v in cand.iter() {
            let deg = self.adj[v].intersection_count(&cand);
            if pivot.is_none() || deg > pivot_deg {
                pivot = Some(v);
                pivot_deg = deg;
            }
        }
        let v = pivot.expect("candidate set is nonempty");

        if pivot_deg == 0 {
            // no edges left: every candidate can be taken
            let before = self.current.len();
            self.current.extend(cand.iter());
            self.record();
            self.current.truncate(before);
            return;
        }

        let mut with_v = cand.clone();
        with_v.remove(v);
        with_v.difference_with(&self.adj[v]);
        self.current.push(v);
        self.expand(with_v);
        self.current.pop();

        let mut without_v = cand;
        without_v.remove(v);
        self.expand(without_v);
    }
}
