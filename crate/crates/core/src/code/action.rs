use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::SlidingBlockCode;
use crate::analysis::{ClassId, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::shift::{EdgePresentation, PeriodicConfig, Symbol};

/// How an endomorphism moves the cyclic classes of a non-wandering shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentAction {
    pub map: BTreeMap<ClassId, ClassId>,
    pub is_permutation: bool,
}

impl ComponentAction {
    pub fn image(&self, class: ClassId) -> ClassId {
        self.map[&class]
    }

    /// Checks `α(i + 1) = α(i) + 1` along every component cycle.
    pub fn commutes_with_shift(&self, d: &SpectralDecomposition) -> bool {
        d.class_ids().all(|id| {
            let k = d.components[id.component].period;
            let next = ClassId {
                component: id.component,
                class: (id.class + 1) % k,
            };
            let img = self.image(id);
            let img_next = self.image(next);
            let k2 = d.components[img.component].period;
            img_next.component == img.component && img_next.class == (img.class + 1) % k2
        })
    }
}

/// A periodic point whose path passes through `v` at coordinate 0, using
/// only edges among `allowed` vertices.
fn periodic_through(p: &EdgePresentation, v: usize, allowed: &[bool]) -> Option<PeriodicConfig> {
    // BFS for a shortest cycle v → … → v.
    let mut prev: Vec<Option<(usize, Symbol)>> = vec![None; p.vertex_count()];
    let mut queue = VecDeque::from([v]);
    let mut seen = vec![false; p.vertex_count()];
    while let Some(u) = queue.pop_front() {
        for e in p.out_edges(u) {
            if !allowed[e.target] {
                continue;
            }
            if e.target == v {
                let mut symbols = vec![e.symbol];
                let mut cur = u;
                while cur != v {
                    let (from, s) = prev[cur].expect("BFS parent");
                    symbols.push(s);
                    cur = from;
                }
                symbols.reverse();
                // The last edge ends at `v`; put it at coordinate 0.
                symbols.rotate_right(1);
                return Some(PeriodicConfig::new(symbols));
            }
            if !seen[e.target] {
                seen[e.target] = true;
                prev[e.target] = Some((u, e.symbol));
                queue.push_back(e.target);
            }
        }
    }
    None
}

/// Locates, for every class `W`, the class containing `τ(W)`, by mapping a
/// periodic point through each vertex of `W`.
pub fn component_action(
    code: &SlidingBlockCode,
    d: &SpectralDecomposition,
) -> Result<ComponentAction> {
    let shift = code.shift();
    let p = shift.presentation();
    let mut map = BTreeMap::new();
    for id in d.class_ids() {
        let comp = &d.components[id.component];
        let mut allowed = vec![false; p.vertex_count()];
        for &v in &comp.vertices {
            allowed[v] = true;
        }
        let mut target: Option<ClassId> = None;
        for &v in d.class_vertices(id) {
            let x = periodic_through(p, v, &allowed)
                .ok_or_else(|| Error::Internal("recurrent vertex without a cycle".into()))?;
            let y = code.apply_to_periodic(&x)?.to_ep();
            let w = shift
                .vertex_at(&y, 0)
                .ok_or_else(|| Error::Internal("image leaves the presentation".into()))?;
            let cls = d.class_of(w);
            if cls.component == usize::MAX {
                return Err(Error::Internal("image outside the recurrent part".into()));
            }
            match target {
                None => target = Some(cls),
                Some(t) if t != cls => {
                    return Err(Error::Internal(format!(
                        "class {id:?} is split between {t:?} and {cls:?}"
                    )))
                }
                _ => {}
            }
        }
        map.insert(id, target.expect("classes are non-empty"));
    }
    let images: BTreeSet<&ClassId> = map.values().collect();
    let is_permutation = images.len() == map.len();
    Ok(ComponentAction {
        map,
        is_permutation,
    })
}
