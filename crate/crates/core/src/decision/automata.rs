//! Subset construction and language inclusion for sofic presentations.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::code::SoficPresentation;
use crate::shift::{Edge, EdgePresentation, Symbol, Word};

/// Deterministic tracker over subsets of a presentation's vertices, started
/// from the set of all vertices. The empty set is the dead state.
#[derive(Debug, Clone)]
pub struct SubsetAutomaton {
    states: Vec<Vec<usize>>,
    /// `delta[state]`: label → successor state (absent = dead).
    delta: Vec<BTreeMap<Symbol, usize>>,
}

impl SubsetAutomaton {
    pub fn new(s: &SoficPresentation) -> Self {
        let g = s.graph();
        let start: Vec<usize> = (0..g.vertex_count()).collect();
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut states = vec![start.clone()];
        let mut delta = vec![BTreeMap::new()];
        ids.insert(start, 0);
        let mut i = 0;
        while i < states.len() {
            let mut moves: BTreeMap<Symbol, BTreeSet<usize>> = BTreeMap::new();
            for &v in &states[i] {
                for e in g.out_edges(v) {
                    moves.entry(e.symbol).or_default().insert(e.target);
                }
            }
            for (label, next) in moves {
                let next: Vec<usize> = next.into_iter().collect();
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        ids.insert(next.clone(), id);
                        states.push(next);
                        delta.push(BTreeMap::new());
                        id
                    }
                };
                delta[i].insert(label, id);
            }
            i += 1;
        }
        SubsetAutomaton { states, delta }
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn step(&self, state: usize, label: Symbol) -> Option<usize> {
        self.delta[state].get(&label).copied()
    }

    /// True iff some path of the presentation reads `w`.
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        w.iter()
            .try_fold(self.start(), |st, &a| self.step(st, a))
            .is_some()
    }
}

/// Right-resolving presentation of the same sofic shift, trimmed.
pub fn determinize(s: &SoficPresentation) -> SoficPresentation {
    let dfa = SubsetAutomaton::new(s);
    let vertices: Vec<Word> = dfa.states.iter().map(|set| Word(set.clone())).collect();
    let edges: Vec<Edge> = dfa
        .delta
        .iter()
        .enumerate()
        .flat_map(|(src, moves)| {
            moves.iter().map(move |(&symbol, &target)| Edge {
                source: src,
                target,
                symbol,
            })
        })
        .collect();
    SoficPresentation::new(EdgePresentation::new(
        vertices,
        edges,
        s.graph().alphabet_size(),
    ))
}

/// Outcome of a language inclusion test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    /// Shortest (then lexicographically least) word of the first shift that
    /// the second does not contain.
    pub counterexample: Option<Word>,
}

/// Decides `X(s1) ⊆ X(s2)`.
///
/// Runs every vertex of `s1` against the subset tracker of `s2`; inclusion
/// fails iff some label path of `s1` drives the tracker to the dead state.
/// Because `s1` is trimmed, every label path of `s1` is a word of its shift.
pub fn subshift_contains(s1: &SoficPresentation, s2: &SoficPresentation) -> Containment {
    let g = s1.graph();
    let dfa = SubsetAutomaton::new(s2);
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    // Frontier grouped by word so that expansion follows lexicographic order.
    let mut frontier: BTreeMap<Word, Vec<(usize, usize)>> = BTreeMap::new();
    let starts: Vec<(usize, usize)> = (0..g.vertex_count()).map(|v| (v, dfa.start())).collect();
    seen.extend(starts.iter().copied());
    frontier.insert(Word::empty(), starts);
    while !frontier.is_empty() {
        let mut next: BTreeMap<Word, Vec<(usize, usize)>> = BTreeMap::new();
        for (word, states) in &frontier {
            let mut by_label: BTreeMap<Symbol, Vec<(usize, usize)>> = BTreeMap::new();
            for &(v, st) in states {
                for e in g.out_edges(v) {
                    by_label.entry(e.symbol).or_default().push((e.target, st));
                }
            }
            for (label, moves) in by_label {
                let mut w = word.0.clone();
                w.push(label);
                let mut fresh = Vec::new();
                for (t, st) in moves {
                    match dfa.step(st, label) {
                        None => {
                            return Containment {
                                holds: false,
                                counterexample: Some(Word(w)),
                            }
                        }
                        Some(st2) => {
                            if seen.insert((t, st2)) {
                                fresh.push((t, st2));
                            }
                        }
                    }
                }
                if !fresh.is_empty() {
                    next.entry(Word(w)).or_default().extend(fresh);
                }
            }
        }
        frontier = next;
    }
    Containment {
        holds: true,
        counterexample: None,
    }
}
