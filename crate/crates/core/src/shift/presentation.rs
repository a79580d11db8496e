use std::collections::{BTreeMap, BTreeSet};

use super::{SftSpec, Symbol, Word};

/// A labeled edge of a presentation graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub symbol: Symbol,
}

/// A 1-step presentation of a shift: configurations are the label sequences
/// of bi-infinite edge paths.
///
/// Vertices carry the context word they stand for. For an `m`-step spec with
/// `m ≥ 1` the vertex of a path at time `n` (the target of edge `n`) is the
/// word `x[n-m+1..=n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePresentation {
    vertices: Vec<Word>,
    edges: Vec<Edge>,
    alphabet_size: usize,
}

impl EdgePresentation {
    /// Builds a presentation and sorts it into canonical order. Not trimmed.
    pub fn new(vertices: Vec<Word>, edges: Vec<Edge>, alphabet_size: usize) -> Self {
        let mut p = EdgePresentation {
            vertices,
            edges,
            alphabet_size,
        };
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]).then(a.cmp(&b)));
        let mut rank = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        self.vertices = order.iter().map(|&v| self.vertices[v].clone()).collect();
        for e in &mut self.edges {
            e.source = rank[e.source];
            e.target = rank[e.target];
        }
        self.edges.sort();
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_index(&self, label: &[Symbol]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v[..].cmp(label)).ok()
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        // Edges are sorted by source.
        let start = self.edges.partition_point(|e| e.source < v);
        self.edges[start..]
            .iter()
            .take_while(move |e| e.source == v)
    }

    /// Keeps only the given vertices (and edges between them).
    pub fn restrict(&self, keep: &[bool], keep_edge: impl Fn(&Edge) -> bool) -> EdgePresentation {
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, label) in self.vertices.iter().enumerate() {
            if keep[v] {
                map[v] = vertices.len();
                vertices.push(label.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.source] && keep[e.target] && keep_edge(e))
            .map(|e| Edge {
                source: map[e.source],
                target: map[e.target],
                symbol: e.symbol,
            })
            .collect();
        EdgePresentation::new(vertices, edges, self.alphabet_size)
    }

    /// Disjoint union; vertex labels of the second operand are kept as they
    /// are, so callers should only union presentations over disjoint symbols.
    pub fn disjoint_union(&self, other: &EdgePresentation) -> EdgePresentation {
        let n = self.vertices.len();
        let vertices = self
            .vertices
            .iter()
            .chain(&other.vertices)
            .cloned()
            .collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|e| Edge {
                source: e.source + n,
                target: e.target + n,
                symbol: e.symbol,
            }))
            .collect();
        EdgePresentation::new(vertices, edges, self.alphabet_size.max(other.alphabet_size))
    }
}

/// Flags the vertices that lie on a bi-infinite path: repeatedly discards
/// vertices without incoming or outgoing edges among the survivors.
pub(crate) fn essential_vertices(vertex_count: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut alive = vec![true; vertex_count];
    let mut indeg = vec![0usize; vertex_count];
    let mut outdeg = vec![0usize; vertex_count];
    let mut succ = vec![Vec::new(); vertex_count];
    let mut pred = vec![Vec::new(); vertex_count];
    for &(s, t) in edges {
        outdeg[s] += 1;
        indeg[t] += 1;
        succ[s].push(t);
        pred[t].push(s);
    }
    let mut stack: Vec<usize> = (0..vertex_count)
        .filter(|&v| indeg[v] == 0 || outdeg[v] == 0)
        .collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &t in &succ[v] {
            indeg[t] -= 1;
            if alive[t] && indeg[t] == 0 {
                stack.push(t);
            }
        }
        for &s in &pred[v] {
            outdeg[s] -= 1;
            if alive[s] && outdeg[s] == 0 {
                stack.push(s);
            }
        }
    }
    alive
}

/// Removes every vertex that does not lie on a bi-infinite path.
pub fn trim_essential(p: &EdgePresentation) -> EdgePresentation {
    let pairs: Vec<(usize, usize)> = p.edges.iter().map(|e| (e.source, e.target)).collect();
    let keep = essential_vertices(p.vertex_count(), &pairs);
    p.restrict(&keep, |_| true)
}

/// Recodes an `m`-step spec to a trimmed 1-step edge presentation.
///
/// For `m ≥ 1` vertices are the words of length `m` and each allowed window
/// `w` gives an edge `w[..m] → w[1..]` labeled by its last symbol. A 0-step
/// spec becomes one vertex with a loop per allowed symbol.
pub fn higher_block_recode(spec: &SftSpec) -> EdgePresentation {
    let m = spec.step();
    let k = spec.alphabet().len();
    if m == 0 {
        let edges = spec
            .allowed()
            .iter()
            .map(|w| Edge {
                source: 0,
                target: 0,
                symbol: w[0],
            })
            .collect();
        return trim_essential(&EdgePresentation::new(vec![Word::empty()], edges, k));
    }
    let mut ids: BTreeMap<Word, usize> = BTreeMap::new();
    for w in spec.allowed() {
        for part in [&w[..m], &w[1..]] {
            let next = ids.len();
            ids.entry(Word::from(part)).or_insert(next);
        }
    }
    let mut vertices = vec![Word::empty(); ids.len()];
    for (w, &i) in &ids {
        vertices[i] = w.clone();
    }
    let edges = spec
        .allowed()
        .iter()
        .map(|w| Edge {
            source: ids[&Word::from(&w[..m])],
            target: ids[&Word::from(&w[1..])],
            symbol: w[m],
        })
        .collect();
    trim_essential(&EdgePresentation::new(vertices, edges, k))
}

/// The set of label words of length `n` of paths in `p`. On a trimmed
/// presentation this is the language of the presented shift.
pub fn language(p: &EdgePresentation, n: usize) -> BTreeSet<Word> {
    if p.is_empty() {
        return BTreeSet::new();
    }
    // word -> set of end vertices
    let mut frontier: BTreeMap<Word, BTreeSet<usize>> = BTreeMap::new();
    frontier.insert(Word::empty(), (0..p.vertex_count()).collect());
    for _ in 0..n {
        let mut next: BTreeMap<Word, BTreeSet<usize>> = BTreeMap::new();
        for (w, ends) in &frontier {
            for &v in ends {
                for e in p.out_edges(v) {
                    let mut w2 = w.0.clone();
                    w2.push(e.symbol);
                    next.entry(Word(w2)).or_default().insert(e.target);
                }
            }
        }
        frontier = next;
    }
    frontier.into_keys().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::parse_spec;

    fn weiss() -> SftSpec {
        parse_spec("alphabet 0 1 2\nstep 1\nallowed 0.0 1.1 2.2 0.1 1.2").unwrap()
    }

    fn golden() -> SftSpec {
        parse_spec("alphabet 0 1\nstep 1\nforbidden 1.1").unwrap()
    }

    fn edge_list(p: &EdgePresentation) -> Vec<(usize, usize, usize)> {
        p.edges()
            .iter()
            .map(|e| (e.source, e.target, e.symbol))
            .collect()
    }

    fn words(set: &BTreeSet<Word>) -> Vec<String> {
        set.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn weiss_recoding() {
        let p = higher_block_recode(&weiss());
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(
            edge_list(&p),
            vec![(0, 0, 0), (0, 1, 1), (1, 1, 1), (1, 2, 2), (2, 2, 2)]
        );
        assert_eq!(trim_essential(&p), p);
    }

    #[test]
    fn full_shift_recoding() {
        let p = higher_block_recode(&parse_spec("alphabet 0 1\nstep 0\nallowed 0 1").unwrap());
        assert_eq!(p.vertex_count(), 1);
        assert_eq!(edge_list(&p), vec![(0, 0, 0), (0, 0, 1)]);
    }

    #[test]
    fn golden_mean_recoding() {
        let p = higher_block_recode(&golden());
        assert_eq!(p.vertex_count(), 2);
        assert_eq!(edge_list(&p), vec![(0, 0, 0), (0, 1, 1), (1, 0, 0)]);
        assert_eq!(trim_essential(&p), p);
    }

    #[test]
    fn trimming_a_path_graph_empties_it() {
        let path = EdgePresentation::new(
            vec![Word(vec![0]), Word(vec![1]), Word(vec![2])],
            vec![
                Edge {
                    source: 0,
                    target: 1,
                    symbol: 1,
                },
                Edge {
                    source: 1,
                    target: 2,
                    symbol: 2,
                },
            ],
            3,
        );
        let t = trim_essential(&path);
        assert!(t.is_empty());
        assert_eq!(t.vertex_count(), 0);
    }

    #[test]
    fn trimming_keeps_cycles_drops_tails() {
        let p = EdgePresentation::new(
            vec![Word(vec![0]), Word(vec![1]), Word(vec![2])],
            vec![
                Edge {
                    source: 0,
                    target: 0,
                    symbol: 0,
                },
                Edge {
                    source: 0,
                    target: 1,
                    symbol: 1,
                },
                Edge {
                    source: 2,
                    target: 0,
                    symbol: 0,
                },
            ],
            3,
        );
        let t = trim_essential(&p);
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(edge_list(&t), vec![(0, 0, 0)]);
    }

    #[test]
    fn empty_spec_recodes_to_empty_presentation() {
        let p = higher_block_recode(&parse_spec("alphabet a\nstep 1\nforbidden a.a").unwrap());
        assert!(p.is_empty());
        assert!(language(&p, 2).is_empty());
    }

    #[test]
    fn weiss_language() {
        let p = higher_block_recode(&weiss());
        assert_eq!(words(&language(&p, 2)), ["0.0", "0.1", "1.1", "1.2", "2.2"]);
        let l3 = language(&p, 3);
        assert!(l3.contains(&Word(vec![0, 1, 2])));
        assert!(!l3.contains(&Word(vec![0, 2, 1])));
    }

    #[test]
    fn golden_mean_language() {
        let p = higher_block_recode(&golden());
        assert_eq!(
            words(&language(&p, 3)),
            ["0.0.0", "0.0.1", "0.1.0", "1.0.0", "1.0.1"]
        );
        assert_eq!(language(&p, 0).len(), 1);
    }

    #[test]
    fn two_step_recoding_vertices_are_words_of_length_two() {
        // No three consecutive ones.
        let spec = parse_spec("alphabet 0 1\nstep 2\nforbidden 1.1.1").unwrap();
        let p = higher_block_recode(&spec);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edges().len(), 7);
        assert_eq!(p.vertex_index(&[1, 1]), Some(3));
    }
}
