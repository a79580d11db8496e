use std::collections::BTreeSet;

use super::SlidingBlockCode;
use crate::shift::{language, trim_essential, Edge, EdgePresentation, Shift, Symbol, Word};

/// A labeled graph whose bi-infinite label sequences form a sofic shift.
///
/// Edge symbols are the labels; vertex words only fix a canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoficPresentation(EdgePresentation);

impl SoficPresentation {
    /// Wraps a labeled graph, trimming it.
    pub fn new(graph: EdgePresentation) -> Self {
        SoficPresentation(trim_essential(&graph))
    }

    /// The shift itself, read as a sofic shift.
    pub fn from_shift(shift: &Shift) -> Self {
        SoficPresentation(shift.presentation().clone())
    }

    pub fn graph(&self) -> &EdgePresentation {
        &self.0
    }

    pub fn language(&self, n: usize) -> BTreeSet<Word> {
        language(&self.0, n)
    }

    /// At most one outgoing edge per label at every vertex.
    pub fn is_right_resolving(&self) -> bool {
        (0..self.0.vertex_count()).all(|v| {
            let labels: Vec<Symbol> = self.0.out_edges(v).map(|e| e.symbol).collect();
            let distinct: BTreeSet<_> = labels.iter().collect();
            distinct.len() == labels.len()
        })
    }
}

/// Edge of a [`WindowGraph`]: one allowed block of the shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowEdge {
    pub source: usize,
    pub target: usize,
    /// Last symbol of the block: the source point's symbol at this time.
    pub symbol: Symbol,
    /// Code output for the window ending at the last symbol of the block.
    pub label: Symbol,
}

/// Higher block presentation of the shift sized for a code.
///
/// Blocks have length `L = max(window, step + 1, 2)`, so bi-infinite paths
/// are exactly the points of the shift and an edge is determined by its
/// endpoints. Vertices are the allowed words of length `L - 1`; the block `u`
/// is an edge `u[..L-1] → u[1..]`. An edge at time `n` carries `x_n` and the
/// image coordinate `n - anticipation`.
#[derive(Debug, Clone)]
pub struct WindowGraph {
    pub block: usize,
    pub vertices: Vec<Word>,
    pub edges: Vec<WindowEdge>,
    out: Vec<Vec<usize>>,
}

impl WindowGraph {
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

pub fn window_graph(code: &SlidingBlockCode) -> WindowGraph {
    let shift = code.shift();
    let w = code.window_len();
    let block = w.max(shift.spec().step() + 1).max(2);
    let vertices: Vec<Word> = shift.language(block - 1).into_iter().collect();
    let find = |u: &[Symbol]| {
        vertices
            .binary_search_by(|v| v[..].cmp(u))
            .expect("prefixes of allowed blocks are allowed")
    };
    let mut edges = Vec::new();
    for u in shift.language(block) {
        edges.push(WindowEdge {
            source: find(&u[..block - 1]),
            target: find(&u[1..]),
            symbol: u[block - 1],
            label: code.output(&u[block - w..]).expect("allowed window"),
        });
    }
    let mut out = vec![Vec::new(); vertices.len()];
    for (i, e) in edges.iter().enumerate() {
        out[e.source].push(i);
    }
    WindowGraph {
        block,
        vertices,
        edges,
        out,
    }
}

/// Labeled graph recognizing the image of the shift under `code`.
pub fn image_sofic(code: &SlidingBlockCode) -> SoficPresentation {
    let g = window_graph(code);
    let edges = g
        .edges
        .iter()
        .map(|e| Edge {
            source: e.source,
            target: e.target,
            symbol: e.label,
        })
        .collect();
    SoficPresentation::new(EdgePresentation::new(
        g.vertices.clone(),
        edges,
        code.shift().alphabet().len(),
    ))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn weiss_tau_image_omits_012() {
        let img = image_sofic(&weiss_tau());
        let l3 = img.language(3);
        assert!(!l3.contains(&Word(vec![0, 1, 2])));
        assert!(weiss().language(3).contains(&Word(vec![0, 1, 2])));
    }

    #[test]
    fn identity_image_is_the_shift() {
        for s in [golden(), weiss(), full2()] {
            let img = image_sofic(&SlidingBlockCode::identity(s.clone()));
            let bound = 2 * s.presentation().vertex_count().max(2);
            for n in 0..=bound {
                assert_eq!(img.language(n), s.language(n));
            }
        }
    }

    #[test]
    fn xor_image_is_full() {
        let img = image_sofic(&xor());
        for n in 0..=6 {
            assert_eq!(img.language(n).len(), 1 << n);
        }
    }

    #[test]
    fn window_graph_covers_step_constraints() {
        // Identity (window 1) on a 2-step shift still uses blocks of length 3.
        let s = shift("alphabet 0 1\nstep 2\nforbidden 1.1.1");
        let g = window_graph(&SlidingBlockCode::identity(s.clone()));
        assert_eq!(g.block, 3);
        let img = image_sofic(&SlidingBlockCode::identity(s.clone()));
        assert_eq!(img.language(5), s.language(5));
    }

    #[test]
    fn recoded_presentations_are_right_resolving() {
        assert!(SoficPresentation::from_shift(&weiss()).is_right_resolving());
        // From context `1`, both `11` and `12` output `1`.
        assert!(!image_sofic(&weiss_tau()).is_right_resolving());
    }
}
