//! Structural analysis of edge presentations: strong connectivity, period,
//! mixing, non-wandering part, periodic point counts, entropy and the
//! decomposition into cyclically permuted classes.

mod decomposition;
mod entropy;
mod matrix;

pub use decomposition::{
    mixing_gap, spectral_decomposition, ClassId, Component, SpectralDecomposition,
};
pub use entropy::{entropy, graph_spectral_radius, spectral_radius, Enclosure, ENTROPY_TOLERANCE};
pub use matrix::{count_least_period, count_periodic, AdjacencyMatrix};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::shift::config::gcd;
use crate::shift::EdgePresentation;

/// Plain successor lists; edge multiplicities and labels are irrelevant for
/// connectivity questions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn from_pairs(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut succ = vec![Vec::new(); vertex_count];
        for (s, t) in edges {
            succ[s].push(t);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        Digraph { succ }
    }

    pub fn from_presentation(p: &EdgePresentation) -> Self {
        Digraph::from_pairs(
            p.vertex_count(),
            p.edges().iter().map(|e| (e.source, e.target)),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.succ[s].binary_search(&t).is_ok()
    }

    /// Strongly connected components, each sorted, ordered by least vertex.
    pub fn sccs(&self) -> Vec<Scc> {
        let comp = self.component_ids();
        let count = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut groups = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            groups[c].push(v);
        }
        let mut out: Vec<Scc> = groups
            .into_iter()
            .map(|vertices| {
                let recurrent = vertices.len() > 1 || self.has_edge(vertices[0], vertices[0]);
                Scc {
                    vertices,
                    recurrent,
                }
            })
            .collect();
        out.sort_by_key(|c| c.vertices[0]);
        out
    }

    /// Component index per vertex (Kosaraju, iterative).
    fn component_ids(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some((v, i)) = stack.pop() {
                if let Some(&t) = self.succ[v].get(i) {
                    stack.push((v, i + 1));
                    if !seen[t] {
                        seen[t] = true;
                        stack.push((t, 0));
                    }
                } else {
                    order.push(v);
                }
            }
        }
        let mut pred = vec![Vec::new(); n];
        for (s, list) in self.succ.iter().enumerate() {
            for &t in list {
                pred[t].push(s);
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = next;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &s in &pred[v] {
                    if comp[s] == usize::MAX {
                        comp[s] = next;
                        stack.push(s);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_irreducible(&self) -> bool {
        let sccs = self.sccs();
        sccs.len() == 1 && sccs[0].recurrent
    }

    /// Gcd of cycle lengths through the component of `root`, computed from
    /// BFS levels restricted to `members`.
    fn period_within(&self, root: usize, members: &[bool]) -> (usize, Vec<Option<usize>>) {
        let mut level = vec![None; self.vertex_count()];
        level[root] = Some(0usize);
        let mut queue = VecDeque::from([root]);
        let mut g = 0;
        while let Some(v) = queue.pop_front() {
            let lv = level[v].unwrap();
            for &t in &self.succ[v] {
                if !members[t] {
                    continue;
                }
                match level[t] {
                    None => {
                        level[t] = Some(lv + 1);
                        queue.push_back(t);
                    }
                    Some(lt) => g = gcd(g, (lv + 1).abs_diff(lt)),
                }
            }
        }
        (g, level)
    }

    pub fn period(&self) -> Result<usize> {
        if self.vertex_count() == 0 || !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let all = vec![true; self.vertex_count()];
        Ok(self.period_within(0, &all).0)
    }

    pub fn is_mixing(&self) -> bool {
        self.vertex_count() > 0 && self.is_irreducible() && self.period() == Ok(1)
    }
}

/// A strongly connected component. A singleton without a loop carries no
/// cycle and is not recurrent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scc {
    pub vertices: Vec<usize>,
    pub recurrent: bool,
}

pub fn scc_decompose(p: &EdgePresentation) -> Vec<Scc> {
    Digraph::from_presentation(p).sccs()
}

pub fn is_irreducible(p: &EdgePresentation) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::EmptyShift);
    }
    Ok(Digraph::from_presentation(p).is_irreducible())
}

pub fn period(p: &EdgePresentation) -> Result<usize> {
    Digraph::from_presentation(p).period()
}

pub fn is_mixing(p: &EdgePresentation) -> bool {
    !p.is_empty() && Digraph::from_presentation(p).is_mixing()
}

fn component_index(p: &EdgePresentation) -> (Vec<Scc>, Vec<usize>) {
    let sccs = scc_decompose(p);
    let mut idx = vec![0; p.vertex_count()];
    for (i, c) in sccs.iter().enumerate() {
        for &v in &c.vertices {
            idx[v] = i;
        }
    }
    (sccs, idx)
}

/// Edges joining two different strongly connected components.
pub fn wandering_edges(p: &EdgePresentation) -> Vec<usize> {
    let (_, idx) = component_index(p);
    p.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| idx[e.source] != idx[e.target])
        .map(|(i, _)| i)
        .collect()
}

/// True iff the graph is a disjoint union of strongly connected pieces.
pub fn is_nonwandering(p: &EdgePresentation) -> bool {
    wandering_edges(p).is_empty()
}

/// The subpresentation on recurrent components with intra-component edges.
pub fn nonwandering_part(p: &EdgePresentation) -> EdgePresentation {
    let (sccs, idx) = component_index(p);
    let keep: Vec<bool> = (0..p.vertex_count())
        .map(|v| sccs[idx[v]].recurrent)
        .collect();
    p.restrict(&keep, |e| idx[e.source] == idx[e.target])
}

/// Graph on `vertices` with an edge `u → v` whenever `p` has a path of
/// exactly `k` edges from `u` to `v`.
pub fn power_graph_on(p: &EdgePresentation, vertices: &[usize], k: usize) -> Digraph {
    let g = Digraph::from_presentation(p);
    let n = p.vertex_count();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let mut pairs = Vec::new();
    for (i, &start) in vertices.iter().enumerate() {
        let mut reach = vec![false; n];
        reach[start] = true;
        for _ in 0..k {
            let mut next = vec![false; n];
            for v in (0..n).filter(|&v| reach[v]) {
                for &t in g.successors(v) {
                    next[t] = true;
                }
            }
            reach = next;
        }
        for v in (0..n).filter(|&v| reach[v] && local[v] != usize::MAX) {
            pairs.push((i, local[v]));
        }
    }
    Digraph::from_pairs(vertices.len(), pairs)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::shift::{higher_block_recode, parse_spec, EdgePresentation};

    pub fn recode(text: &str) -> EdgePresentation {
        higher_block_recode(&parse_spec(text).unwrap())
    }

    pub fn weiss() -> EdgePresentation {
        recode("alphabet 0 1 2\nstep 1\nallowed 0.0 1.1 2.2 0.1 1.2")
    }

    pub fn golden() -> EdgePresentation {
        recode("alphabet 0 1\nstep 1\nforbidden 1.1")
    }

    pub fn full2() -> EdgePresentation {
        recode("alphabet 0 1\nstep 0\nallowed 0 1")
    }

    pub fn two_cycle() -> EdgePresentation {
        recode("alphabet a b\nstep 1\nallowed a.b b.a")
    }

    pub fn two_loops() -> EdgePresentation {
        recode("alphabet 0 1\nstep 1\nallowed 0.0 1.1")
    }

    pub fn golden_pair() -> EdgePresentation {
        recode("alphabet a0 a1 b0 b1\nstep 1\nallowed a0.a0 a0.a1 a1.a0 b0.b0 b0.b1 b1.b0")
    }

    pub fn three_cycle_and_loop() -> EdgePresentation {
        recode("alphabet a b c d\nstep 1\nallowed a.b b.c c.a d.d")
    }

    pub fn three_classes() -> EdgePresentation {
        recode("alphabet a b c d\nstep 1\nallowed a.c b.c c.d d.a d.b")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn vsets(p: &EdgePresentation) -> Vec<(Vec<usize>, bool)> {
        scc_decompose(p)
            .into_iter()
            .map(|c| (c.vertices, c.recurrent))
            .collect()
    }

    #[test]
    fn scc_examples() {
        assert_eq!(
            vsets(&weiss()),
            vec![(vec![0], true), (vec![1], true), (vec![2], true)]
        );
        assert_eq!(vsets(&golden()), vec![(vec![0, 1], true)]);
        assert_eq!(vsets(&full2()), vec![(vec![0], true)]);
    }

    #[test]
    fn non_recurrent_singleton_is_flagged() {
        let g = Digraph::from_pairs(3, [(0, 0), (0, 1), (1, 2), (2, 2)]);
        let sccs = g.sccs();
        assert_eq!(sccs.len(), 3);
        assert!(!sccs[1].recurrent);
    }

    #[test]
    fn irreducibility() {
        assert_eq!(is_irreducible(&golden()), Ok(true));
        assert_eq!(is_irreducible(&weiss()), Ok(false));
        assert_eq!(is_irreducible(&two_loops()), Ok(false));
        let empty = recode("alphabet a\nstep 1\nforbidden a.a");
        assert_eq!(is_irreducible(&empty), Err(Error::EmptyShift));
    }

    #[test]
    fn periods() {
        assert_eq!(period(&full2()), Ok(1));
        assert_eq!(period(&two_cycle()), Ok(2));
        assert_eq!(period(&golden()), Ok(1));
        assert_eq!(period(&three_classes()), Ok(3));
        assert_eq!(period(&weiss()), Err(Error::NotIrreducible));
    }

    #[test]
    fn mixing() {
        assert!(is_mixing(&golden()));
        assert!(!is_mixing(&two_cycle()));
        assert!(!is_mixing(&weiss()));
    }

    #[test]
    fn nonwandering() {
        assert!(!is_nonwandering(&weiss()));
        assert_eq!(wandering_edges(&weiss()).len(), 2);
        assert!(is_nonwandering(&golden_pair()));
        assert!(is_nonwandering(&golden()));
        assert!(is_nonwandering(&two_cycle()));
    }

    #[test]
    fn nonwandering_part_examples() {
        let nw = nonwandering_part(&weiss());
        assert_eq!(nw.vertex_count(), 3);
        assert_eq!(nw.edges().len(), 3);
        assert!(nw.edges().iter().all(|e| e.source == e.target));

        assert_eq!(nonwandering_part(&golden()), golden());

        // a → b → a with b → c and a loop at c.
        let p = recode("alphabet a b c\nstep 1\nallowed a.b b.a b.c c.c");
        let nw = nonwandering_part(&p);
        assert_eq!(nw.vertex_count(), 3);
        let pairs: Vec<_> = nw.edges().iter().map(|e| (e.source, e.target)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 0), (2, 2)]);
        assert!(is_nonwandering(&nw));
    }
}
