use super::{is_mixing, is_nonwandering, scc_decompose, Digraph};
use crate::error::{Error, Result};
use crate::shift::EdgePresentation;

/// Identifies a cyclic class `class` of component `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    pub component: usize,
    pub class: usize,
}

/// One recurrent component, split into the classes `W_0, …, W_{k-1}` that the
/// shift permutes cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub period: usize,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralDecomposition {
    pub components: Vec<Component>,
    /// `class_of[v]` for every vertex of the presentation.
    class_of: Vec<ClassId>,
}

impl SpectralDecomposition {
    pub fn class_of(&self, vertex: usize) -> ClassId {
        self.class_of[vertex]
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.components.iter().enumerate().flat_map(|(c, comp)| {
            (0..comp.period).map(move |class| ClassId {
                component: c,
                class,
            })
        })
    }

    pub fn class_vertices(&self, id: ClassId) -> &[usize] {
        &self.components[id.component].classes[id.class]
    }

    pub fn class_count(&self) -> usize {
        self.components.iter().map(|c| c.period).sum()
    }
}

/// Splits a non-wandering presentation into its recurrent components and
/// their cyclic classes. Class 0 of each component holds its least vertex and
/// every edge runs from class `i` to class `i + 1 mod k`.
pub fn spectral_decomposition(p: &EdgePresentation) -> Result<SpectralDecomposition> {
    if !is_nonwandering(p) {
        return Err(Error::NotNonWandering);
    }
    let g = Digraph::from_presentation(p);
    let mut class_of = vec![
        ClassId {
            component: usize::MAX,
            class: 0
        };
        p.vertex_count()
    ];
    let mut components = Vec::new();
    for scc in scc_decompose(p).into_iter().filter(|c| c.recurrent) {
        let mut members = vec![false; p.vertex_count()];
        for &v in &scc.vertices {
            members[v] = true;
        }
        let root = scc.vertices[0];
        let (period, level) = g.period_within(root, &members);
        let mut classes = vec![Vec::new(); period];
        for &v in &scc.vertices {
            let class = level[v].expect("component is strongly connected") % period;
            classes[class].push(v);
            class_of[v] = ClassId {
                component: components.len(),
                class,
            };
        }
        components.push(Component {
            vertices: scc.vertices,
            period,
            classes,
        });
    }
    Ok(SpectralDecomposition {
        components,
        class_of,
    })
}

/// Least `N` with `A^N > 0` entrywise; then `A^n > 0` for every `n ≥ N`.
pub fn mixing_gap(p: &EdgePresentation) -> Result<usize> {
    if !is_mixing(p) {
        return Err(Error::NotMixing);
    }
    let n = p.vertex_count();
    let g = Digraph::from_presentation(p);
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j)).collect())
        .collect();
    let mut power = adj.clone();
    let bound = n * n + 1;
    for exponent in 1..=bound {
        if power.iter().all(|row| row.iter().all(|&b| b)) {
            return Ok(exponent);
        }
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).any(|k| power[i][k] && adj[k][j]))
                    .collect()
            })
            .collect();
    }
    Err(Error::Internal(format!(
        "mixing graph not primitive within {bound} steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::power_graph_on;
    use super::*;

    fn check_cyclic(p: &EdgePresentation, d: &SpectralDecomposition) {
        for e in p.edges() {
            let (a, b) = (d.class_of(e.source), d.class_of(e.target));
            assert_eq!(a.component, b.component);
            let k = d.components[a.component].period;
            assert_eq!(b.class, (a.class + 1) % k);
        }
    }

    #[test]
    fn two_cycle_has_two_classes() {
        let p = two_cycle();
        let d = spectral_decomposition(&p).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].period, 2);
        assert_eq!(d.components[0].classes, vec![vec![0], vec![1]]);
        check_cyclic(&p, &d);
    }

    #[test]
    fn golden_mean_is_one_class() {
        let d = spectral_decomposition(&golden()).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].period, 1);
        assert_eq!(d.class_count(), 1);
    }

    #[test]
    fn cycle_plus_loop() {
        let p = three_cycle_and_loop();
        let d = spectral_decomposition(&p).unwrap();
        let periods: Vec<_> = d.components.iter().map(|c| c.period).collect();
        assert_eq!(periods, vec![3, 1]);
        check_cyclic(&p, &d);
    }

    #[test]
    fn classes_are_mixing_under_the_return_map() {
        let p = three_classes();
        let d = spectral_decomposition(&p).unwrap();
        let comp = &d.components[0];
        assert_eq!(comp.period, 3);
        check_cyclic(&p, &d);
        for class in &comp.classes {
            assert!(power_graph_on(&p, class, 3).is_mixing());
        }
    }

    #[test]
    fn wandering_input_is_rejected() {
        assert_eq!(
            spectral_decomposition(&weiss()),
            Err(Error::NotNonWandering)
        );
    }

    #[test]
    fn gaps() {
        assert_eq!(mixing_gap(&full2()), Ok(1));
        assert_eq!(mixing_gap(&golden()), Ok(2));
        // A² has a zero entry (c ↛ c in two steps), A³ > 0.
        let p = recode("alphabet a b c\nstep 1\nallowed a.a a.b a.c b.a c.b");
        assert_eq!(mixing_gap(&p), Ok(3));
        assert_eq!(brute_gap(&p), 3);
        assert_eq!(mixing_gap(&two_cycle()), Err(Error::NotMixing));
    }

    fn brute_gap(p: &EdgePresentation) -> usize {
        use crate::analysis::AdjacencyMatrix;
        use num_traits::Zero;
        let a = AdjacencyMatrix::from_presentation(p);
        (1..100)
            .find(|&k| {
                let m = a.pow(k);
                (0..m.dim()).all(|i| (0..m.dim()).all(|j| !m.get(i, j).is_zero()))
            })
            .unwrap() as usize
    }
}
