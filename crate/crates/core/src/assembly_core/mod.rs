//! Space-agnostic assembly machinery.
//!
//! An [`AssemblySpace`] supplies building blocks, a set-valued gluing and an
//! additive size. On top of that this module provides assembly addition
//! chains, their verification, the projection onto classical addition chains,
//! the pathway DAG, the exact assembly-index solver and an independent
//! breadth-first oracle.

mod chain;
mod dag;
mod memo;
mod oracle;
mod solver;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use crate::error::Result;

pub use chain::{
    enumerate_chains, project_f, verify_chain, AssemblyChain, ChainStep, Parent, Verification,
};
pub use dag::{e_plus, to_dag, DagVertex, PathwayDag};
pub use memo::MemoCache;
pub use oracle::bfs_assembly_index;
pub use solver::{assembly_index, Solution, Solver, SolverConfig, DEFAULT_NODE_BUDGET};

/// Largest object size the part-lattice machinery supports (atoms live in a `u64`).
pub const MAX_ATOMS: usize = 64;

/// A set of objects with building blocks, set-valued gluing and additive size.
///
/// Objects handed to and returned by the space are canonical: two objects are
/// the same element of the space iff they compare equal.
///
/// Every object of size `s` is also viewed as a set of `s` atoms (characters,
/// edges or cells). A *part* is a connected subset of atoms, given as a bit
/// mask, and gluing two objects corresponds to splitting the result into two
/// complementary connected parts. The solver works on this part lattice;
/// [`AssemblySpace::embeds`] is an independent check used only by oracles and
/// enumeration filters.
pub trait AssemblySpace: Sync {
    type Object: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    /// Identifier stored in chains built over this space.
    fn id(&self) -> String;

    /// All building blocks, sorted by code.
    fn building_blocks(&self) -> Vec<Self::Object>;

    fn size(&self, x: &Self::Object) -> usize;

    /// Checks that `x` is a valid member of the space (palette, connectivity).
    fn validate(&self, x: &Self::Object) -> Result<()>;

    /// Canonical representative of the class of `x`.
    fn canonical(&self, x: &Self::Object) -> Self::Object;

    /// Stable textual code of a canonical object; equal codes iff equal objects.
    fn code(&self, x: &Self::Object) -> String;

    /// `{x} ∘ {y}`: canonical, deduplicated, sorted by code.
    fn glue(&self, x: &Self::Object, y: &Self::Object) -> Result<Vec<Self::Object>>;

    /// `Card(S(k))`, or `None` when the space has no cheap way to count it.
    fn level_cardinality(&self, k: usize) -> Option<u128>;

    /// All objects of size `k`, sorted by code.
    fn enumerate(&self, k: usize) -> Result<Vec<Self::Object>>;

    /// Whether `piece` occurs inside `target` as a sub-object.
    fn embeds(&self, target: &Self::Object, piece: &Self::Object) -> bool;

    /// Atom adjacency of `x`: entry `i` is the mask of atoms touching atom `i`.
    fn adjacency(&self, x: &Self::Object) -> Vec<u64>;

    /// The canonical object formed by the atoms of `x` in `mask`.
    fn sub_object(&self, x: &Self::Object, mask: u64) -> Self::Object;

    /// All ways to split the part `part` of `x` into two connected parts.
    ///
    /// Each unordered split is listed once, as `(a, b)` with the lowest atom of
    /// `part` in `a`.
    fn splits(&self, x: &Self::Object, part: u64) -> Vec<(u64, u64)> {
        connected_splits(&self.adjacency(x), part)
    }

    fn is_building_block(&self, x: &Self::Object) -> bool {
        self.size(x) == 1
    }

    /// The multiset of building blocks making up `x`.
    fn building_block_multiset(&self, x: &Self::Object) -> BTreeMap<Self::Object, usize> {
        let mut counts = BTreeMap::new();
        for atom in 0..self.size(x) {
            *counts.entry(self.sub_object(x, 1 << atom)).or_insert(0) += 1;
        }
        counts
    }
}

/// Whether the atoms in `mask` form a connected set under `adjacency`.
pub fn is_connected(adjacency: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = mask & mask.wrapping_neg();
    let mut frontier = reached;
    while frontier != 0 {
        let atom = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adjacency[atom] & mask & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    reached == mask
}

/// Generic split enumeration: every connected `a` containing the lowest atom
/// of `part` whose complement in `part` is non-empty and connected.
pub fn connected_splits(adjacency: &[u64], part: u64) -> Vec<(u64, u64)> {
    let low = part & part.wrapping_neg();
    let rest = part & !low;
    let mut out = Vec::new();
    // Walk the submasks of `rest` in increasing order.
    let mut sub = 0u64;
    loop {
        let a = sub | low;
        if a != part {
            let b = part & !a;
            if is_connected(adjacency, a) && is_connected(adjacency, b) {
                out.push((a, b));
            }
        }
        if sub == rest {
            break;
        }
        sub = (sub.wrapping_sub(rest)) & rest;
    }
    out
}

/// Mask with the lowest `n` bits set.
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod lattice_tests {
    use super::*;

    fn path_adjacency(n: usize) -> Vec<u64> {
        (0..n)
            .map(|i| {
                let mut m = 0;
                if i > 0 {
                    m |= 1 << (i - 1);
                }
                if i + 1 < n {
                    m |= 1 << (i + 1);
                }
                m
            })
            .collect()
    }

    #[test]
    fn connectivity_on_a_path() {
        let adj = path_adjacency(5);
        assert!(is_connected(&adj, 0b00111));
        assert!(is_connected(&adj, 0b11000));
        assert!(!is_connected(&adj, 0b10001));
        assert!(!is_connected(&adj, 0));
    }

    #[test]
    fn path_splits_are_cuts() {
        let adj = path_adjacency(5);
        let splits = connected_splits(&adj, 0b11111);
        assert_eq!(
            splits,
            vec![(0b00001, 0b11110), (0b00011, 0b11100), (0b00111, 0b11000), (0b01111, 0b10000)]
        );
    }

    #[test]
    fn cycle_splits() {
        // 4-cycle of atoms: splits are the 6 ways to cut it into two arcs.
        let adj = vec![0b1010, 0b0101, 0b1010, 0b0101];
        assert_eq!(connected_splits(&adj, 0b1111).len(), 6);
    }
}
