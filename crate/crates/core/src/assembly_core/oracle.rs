use std::collections::{HashMap, HashSet};

use super::AssemblySpace;
use crate::error::{Error, Result};

/// Assembly index by forward breadth-first search over sets of built objects.
///
/// Shares nothing with the production solver beyond the space's `glue` and
/// `embeds`: layer `L` holds every set of `L` distinct objects reachable by
/// `L` gluings, restricted to objects that embed into the target. The first
/// layer producing the target gives the index.
pub fn bfs_assembly_index<S: AssemblySpace>(
    space: &S,
    target: &S::Object,
    max_states: usize,
) -> Result<usize> {
    space.validate(target)?;
    let target = space.canonical(target);
    if space.is_building_block(&target) {
        return Ok(0);
    }
    let target_size = space.size(&target);
    let blocks: Vec<S::Object> = space
        .building_blocks()
        .into_iter()
        .filter(|b| space.embeds(&target, b))
        .collect();
    let mut glued: HashMap<(S::Object, S::Object), Vec<S::Object>> = HashMap::new();
    let mut layer: HashSet<Vec<S::Object>> = HashSet::from([Vec::new()]);
    for depth in 1..target_size {
        let mut next: HashSet<Vec<S::Object>> = HashSet::new();
        for state in &layer {
            let available: Vec<&S::Object> = blocks.iter().chain(state.iter()).collect();
            for i in 0..available.len() {
                for j in i..available.len() {
                    let (x, y) = (available[i], available[j]);
                    if space.size(x) + space.size(y) > target_size {
                        continue;
                    }
                    let key = (x.clone(), y.clone());
                    if !glued.contains_key(&key) {
                        let useful = space
                            .glue(x, y)?
                            .into_iter()
                            .filter(|z| *z == target || space.embeds(&target, z))
                            .collect();
                        glued.insert(key.clone(), useful);
                    }
                    for z in &glued[&key] {
                        if *z == target {
                            return Ok(depth);
                        }
                        if state.contains(z) {
                            continue;
                        }
                        let mut grown = state.clone();
                        let pos = grown.binary_search(z).unwrap_err();
                        grown.insert(pos, z.clone());
                        next.insert(grown);
                    }
                }
            }
            if next.len() > max_states {
                return Err(Error::BudgetExceeded {
                    budget: max_states as u64,
                    best_upper: None,
                });
            }
        }
        layer = next;
    }
    Err(Error::InvalidObject(
        "target not reachable from its building blocks".into(),
    ))
}
