//! Perron root enclosures and topological entropy.
//!
//! Entropy is only ever used as a cross-check; no decision in the crate
//! depends on floating point.

use super::Digraph;
use crate::error::{Error, Result};
use crate::shift::EdgePresentation;

/// Width bound on the spectral-radius enclosure.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

const MAX_ITERATIONS: usize = 500_000;

/// Enclosures are refined well below the tolerance so that comparing two
/// entropies at `ENTROPY_TOLERANCE` is never borderline.
const TARGET_WIDTH: f64 = ENTROPY_TOLERANCE / 100.0;

/// Closed interval known to contain a spectral radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure {
    pub lower: f64,
    pub upper: f64,
}

impl Enclosure {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    fn point(x: f64) -> Self {
        Enclosure { lower: x, upper: x }
    }
}

/// Collatz–Wielandt enclosure of the Perron root of an irreducible block.
///
/// Iterates with `I + A`, which is primitive whenever `A` is irreducible, so
/// the ratio bounds `min (Bx)_i / x_i ≤ ρ(B) ≤ max (Bx)_i / x_i` contract even
/// for periodic `A`.
fn irreducible_radius(n: usize, edges: &[(usize, usize)]) -> Result<Enclosure> {
    if n == 1 {
        return Ok(Enclosure::point(edges.len() as f64));
    }
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut best = Enclosure {
        lower: f64::NEG_INFINITY,
        upper: f64::INFINITY,
    };
    for _ in 0..MAX_ITERATIONS {
        y.copy_from_slice(&x);
        for &(s, t) in edges {
            y[s] += x[t];
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        best = Enclosure {
            lower: best.lower.max(lo - 1.0),
            upper: best.upper.min(hi - 1.0),
        };
        if best.width() <= TARGET_WIDTH {
            return Ok(best);
        }
        let scale = y.iter().copied().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / scale;
        }
    }
    if best.width() <= ENTROPY_TOLERANCE {
        return Ok(best);
    }
    Err(Error::Internal(
        "Perron iteration did not reach the tolerance".into(),
    ))
}

/// Spectral radius of the adjacency matrix of an arbitrary multigraph: the
/// maximum over its recurrent strongly connected components.
pub fn graph_spectral_radius(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Enclosure> {
    let g = Digraph::from_pairs(vertex_count, edges.iter().copied());
    let mut best = Enclosure::point(0.0);
    for scc in g.sccs().into_iter().filter(|c| c.recurrent) {
        let mut local = vec![usize::MAX; vertex_count];
        for (i, &v) in scc.vertices.iter().enumerate() {
            local[v] = i;
        }
        let inner: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(s, t)| local[*s] != usize::MAX && local[*t] != usize::MAX)
            .map(|&(s, t)| (local[s], local[t]))
            .collect();
        let r = irreducible_radius(scc.vertices.len(), &inner)?;
        if r.midpoint() > best.midpoint() {
            best = r;
        }
    }
    Ok(best)
}

pub fn spectral_radius(p: &EdgePresentation) -> Result<Enclosure> {
    if p.is_empty() {
        return Err(Error::EmptyShift);
    }
    let pairs: Vec<(usize, usize)> = p.edges().iter().map(|e| (e.source, e.target)).collect();
    graph_spectral_radius(p.vertex_count(), &pairs)
}

/// Topological entropy `ln ρ(A)`.
pub fn entropy(p: &EdgePresentation) -> Result<f64> {
    let r = spectral_radius(p)?;
    Ok(r.midpoint().ln())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::shift::language;
    use std::collections::{BTreeMap, BTreeSet, HashMap};

    #[test]
    fn full_shift_entropy() {
        assert!((entropy(&full2()).unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn golden_mean_entropy() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let r = spectral_radius(&golden()).unwrap();
        assert!(r.width() <= ENTROPY_TOLERANCE);
        assert!(r.lower <= phi + 1e-15 && phi - 1e-15 <= r.upper);
        assert!((entropy(&golden()).unwrap() - phi.ln()).abs() <= 1e-9);
    }

    #[test]
    fn weiss_entropy_is_zero() {
        assert_eq!(entropy(&weiss()).unwrap(), 0.0);
    }

    #[test]
    fn periodic_graphs_converge() {
        let r = spectral_radius(&two_cycle()).unwrap();
        assert!((r.midpoint() - 1.0).abs() < 1e-9);
        let r = spectral_radius(&three_classes()).unwrap();
        // Cycles a c d and b c d: ρ³ = 2.
        assert!((r.midpoint() - 2f64.cbrt()).abs() < 1e-9);
    }

    /// |L_n| by dynamic programming over sets of reachable vertices.
    fn word_count(p: &EdgePresentation, n: usize) -> u128 {
        fn go(
            p: &EdgePresentation,
            set: Vec<usize>,
            n: usize,
            memo: &mut HashMap<(Vec<usize>, usize), u128>,
        ) -> u128 {
            if n == 0 {
                return 1;
            }
            if let Some(&c) = memo.get(&(set.clone(), n)) {
                return c;
            }
            let mut by_symbol: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            for &v in &set {
                for e in p.out_edges(v) {
                    by_symbol.entry(e.symbol).or_default().insert(e.target);
                }
            }
            let total = by_symbol
                .into_values()
                .map(|next| go(p, next.into_iter().collect(), n - 1, memo))
                .sum();
            memo.insert((set, n), total);
            total
        }
        go(p, (0..p.vertex_count()).collect(), n, &mut HashMap::new())
    }

    #[test]
    fn word_count_matches_enumeration() {
        for p in [golden(), weiss(), three_classes()] {
            for n in 0..8 {
                assert_eq!(word_count(&p, n), language(&p, n).len() as u128);
            }
        }
    }

    #[test]
    fn entropy_matches_language_growth() {
        // ln|L_30| - ln|L_29| approaches the entropy on irreducible shifts.
        for p in [golden(), full2()] {
            let h = entropy(&p).unwrap();
            let slope = (word_count(&p, 30) as f64).ln() - (word_count(&p, 29) as f64).ln();
            assert!((slope - h).abs() < 1e-3, "slope {slope} vs entropy {h}");
            assert!(h >= 0.0 && h <= (p.edges().len() as f64).ln() + 1e-12);
        }
        // Period 3: the one-step ratio oscillates, average over a full period.
        let p = three_classes();
        let h = entropy(&p).unwrap();
        let slope = ((word_count(&p, 30) as f64).ln() - (word_count(&p, 27) as f64).ln()) / 3.0;
        assert!((slope - h).abs() < 1e-3, "slope {slope} vs entropy {h}");
    }

    #[test]
    fn empty_presentation_has_no_entropy() {
        let empty = recode("alphabet a\nstep 1\nforbidden a.a");
        assert_eq!(entropy(&empty), Err(Error::EmptyShift));
    }
}
