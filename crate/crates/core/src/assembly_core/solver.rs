//! Exact assembly index by top-down search over the part lattice.
//!
//! An optimal chain, stripped of unused steps, is a set `C` of distinct
//! non-block classes containing the target, where every member splits into
//! two parts that are building blocks or members of `C`; its length is `|C|`.
//! The search grows `C` from the target, always resolving the largest class
//! whose split has not been chosen yet, under iterative deepening on `|C|`.
//!
//! Pruning: an unresolved class `X` still needs a chain of at least
//! `max(l(s_X), memo(X))` classes ending at `X`, all smaller than `X` except
//! `X` itself. Classes of `C` smaller than `X` may serve; the rest are new.
//! A transposition table remembers the largest slack each state was explored
//! with.
//!
//! Ties between optimal class sets are broken by the lexicographically least
//! sorted list of canonical codes, so witnesses are deterministic.

use std::collections::HashMap;
use std::rc::Rc;

use super::chain::{AssemblyChain, ChainStep, Parent};
use super::memo::MemoCache;
use super::{full_mask, AssemblySpace, MAX_ATOMS};
use crate::addition_chains::shortest_lengths;
use crate::error::{Error, Result};

/// Default node budget of the exact solver.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Transposition tables larger than this are dropped and rebuilt.
const TABLE_LIMIT: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub node_budget: u64,
    pub max_size: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            max_size: MAX_ATOMS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<O> {
    pub index: usize,
    pub witness: AssemblyChain<O>,
    /// Search nodes expanded.
    pub nodes: u64,
}

/// Exact assembly-index solver over one space, optionally sharing a memo cache.
pub struct Solver<'a, S: AssemblySpace> {
    space: &'a S,
    config: SolverConfig,
    memo: Option<&'a MemoCache>,
    ell: Vec<u32>,
}

impl<'a, S: AssemblySpace> Solver<'a, S> {
    pub fn new(space: &'a S) -> Self {
        Self::with_config(space, SolverConfig::default())
    }

    pub fn with_config(space: &'a S, config: SolverConfig) -> Self {
        let ell = shortest_lengths(config.max_size.clamp(1, MAX_ATOMS) as u64)
            .expect("positive table size");
        Self {
            space,
            config,
            memo: None,
            ell,
        }
    }

    pub fn with_memo(mut self, memo: &'a MemoCache) -> Self {
        self.memo = Some(memo);
        self
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Assembly index of `target` with an optimal witness chain.
    pub fn solve(&self, target: &S::Object) -> Result<Solution<S::Object>> {
        let space = self.space;
        space.validate(target)?;
        let target = space.canonical(target);
        let size = space.size(&target);
        if size > self.config.max_size.min(MAX_ATOMS) {
            return Err(Error::InvalidArgument(format!(
                "object size {size} exceeds the solver maximum {}",
                self.config.max_size.min(MAX_ATOMS)
            )));
        }
        if space.is_building_block(&target) {
            return Ok(Solution {
                index: 0,
                witness: AssemblyChain::new(space.id()),
                nodes: 0,
            });
        }
        let mut search = Search::new(self, target);
        let solution = search.run()?;
        if let Some(memo) = self.memo {
            memo.record(&search.classes[0].code, size, solution.index)?;
        }
        Ok(solution)
    }
}

/// Convenience wrapper: solve with the default configuration and the given
/// node budget.
pub fn assembly_index<S: AssemblySpace>(
    space: &S,
    target: &S::Object,
    node_budget: u64,
) -> Result<Solution<S::Object>> {
    let config = SolverConfig {
        node_budget,
        ..SolverConfig::default()
    };
    Solver::with_config(space, config).solve(target)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Side {
    Block(u32),
    Class(u32),
}

type Split = (Side, Side);

struct Class<O> {
    object: O,
    code: String,
    size: usize,
    lower: usize,
    splits: Option<Rc<[Split]>>,
}

struct Best {
    codes: Vec<String>,
    choices: Vec<(u32, Split)>,
}

struct Search<'s, 'a, S: AssemblySpace> {
    solver: &'s Solver<'a, S>,
    blocks: Vec<S::Object>,
    block_ids: HashMap<S::Object, u32>,
    classes: Vec<Class<S::Object>>,
    class_ids: HashMap<S::Object, u32>,
    nodes: u64,
    limit: usize,
    table: HashMap<(Vec<u32>, Vec<u32>), usize>,
    choices: Vec<(u32, Split)>,
    best: Option<Best>,
}

impl<'s, 'a, S: AssemblySpace> Search<'s, 'a, S> {
    fn new(solver: &'s Solver<'a, S>, target: S::Object) -> Self {
        let mut search = Self {
            solver,
            blocks: Vec::new(),
            block_ids: HashMap::new(),
            classes: Vec::new(),
            class_ids: HashMap::new(),
            nodes: 0,
            limit: 0,
            table: HashMap::new(),
            choices: Vec::new(),
            best: None,
        };
        search.intern_class(target);
        search
    }

    fn intern_class(&mut self, object: S::Object) -> u32 {
        if let Some(&id) = self.class_ids.get(&object) {
            return id;
        }
        let space = self.solver.space;
        let code = space.code(&object);
        let size = space.size(&object);
        let mut lower = self.solver.ell[size] as usize;
        if let Some(memo) = self.solver.memo {
            lower = lower.max(memo.get(&code).unwrap_or(0));
        }
        let id = self.classes.len() as u32;
        self.class_ids.insert(object.clone(), id);
        self.classes.push(Class {
            object,
            code,
            size,
            lower,
            splits: None,
        });
        id
    }

    fn intern_side(&mut self, whole: &S::Object, mask: u64) -> Side {
        let part = self.solver.space.sub_object(whole, mask);
        if mask.count_ones() == 1 {
            if let Some(&id) = self.block_ids.get(&part) {
                return Side::Block(id);
            }
            let id = self.blocks.len() as u32;
            self.block_ids.insert(part.clone(), id);
            self.blocks.push(part);
            Side::Block(id)
        } else {
            Side::Class(self.intern_class(part))
        }
    }

    fn splits(&mut self, class: u32) -> Rc<[Split]> {
        if let Some(s) = &self.classes[class as usize].splits {
            return s.clone();
        }
        let object = self.classes[class as usize].object.clone();
        let size = self.classes[class as usize].size;
        let masks = self.solver.space.splits(&object, full_mask(size));
        let mut splits: Vec<Split> = masks
            .into_iter()
            .map(|(a, b)| {
                let x = self.intern_side(&object, a);
                let y = self.intern_side(&object, b);
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        splits.sort_unstable();
        splits.dedup();
        let splits: Rc<[Split]> = splits.into();
        self.classes[class as usize].splits = Some(splits.clone());
        splits
    }

    /// Class ids a split would add to `c`.
    fn fresh(split: Split, c: &[u32]) -> ([u32; 2], usize) {
        let mut out = [0u32; 2];
        let mut n = 0;
        for side in [split.0, split.1] {
            if let Side::Class(id) = side {
                if c.binary_search(&id).is_err() && !out[..n].contains(&id) {
                    out[n] = id;
                    n += 1;
                }
            }
        }
        (out, n)
    }

    /// Picks a split for the largest unresolved class, preferring the fewest
    /// new classes, until everything is resolved. Returns `|C|`.
    fn greedy(&mut self) -> usize {
        let mut c = vec![0u32];
        let mut u = vec![0u32];
        while let Some(x) = self.take_largest(&mut u) {
            let splits = self.splits(x);
            let (fresh, n) = splits
                .iter()
                .map(|&s| Self::fresh(s, &c))
                .min_by_key(|&(_, n)| n)
                .expect("every non-block object has a split");
            for &id in &fresh[..n] {
                let pos = c.binary_search(&id).unwrap_err();
                c.insert(pos, id);
                u.push(id);
            }
        }
        c.len()
    }

    fn take_largest(&self, u: &mut Vec<u32>) -> Option<u32> {
        let (pos, _) = u
            .iter()
            .enumerate()
            .max_by_key(|&(_, &id)| (self.classes[id as usize].size, std::cmp::Reverse(id)))?;
        Some(u.swap_remove(pos))
    }

    fn run(&mut self) -> Result<Solution<S::Object>> {
        let size = self.classes[0].size;
        let upper = self.greedy().min(size - 1);
        let start = self.classes[0].lower.min(upper);
        for limit in start..=upper {
            self.limit = limit;
            self.dfs(&[0], &[0])?;
            if self.best.is_some() {
                break;
            }
        }
        let best = self.best.take().expect("greedy bound is always reachable");
        let witness = self.witness(&best.choices);
        Ok(Solution {
            index: witness.len(),
            witness,
            nodes: self.nodes,
        })
    }

    fn budget_exceeded(&mut self) -> Error {
        let best_upper = Some(self.greedy().min(self.classes[0].size - 1));
        Error::BudgetExceeded {
            budget: self.solver.config.node_budget,
            best_upper,
        }
    }

    fn dfs(&mut self, c: &[u32], u: &[u32]) -> Result<()> {
        if u.is_empty() {
            self.record(c);
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.solver.config.node_budget {
            return Err(self.budget_exceeded());
        }
        let slack = self.limit - c.len();
        for &x in u {
            let class = &self.classes[x as usize];
            let smaller = c
                .iter()
                .filter(|&&y| self.classes[y as usize].size < class.size)
                .count();
            if class.lower.saturating_sub(1 + smaller) > slack {
                return Ok(());
            }
        }
        let key = (c.to_vec(), u.to_vec());
        if let Some(&seen) = self.table.get(&key) {
            if seen >= slack {
                return Ok(());
            }
        }
        if self.table.len() >= TABLE_LIMIT {
            self.table.clear();
        }
        self.table.insert(key, slack);

        let mut rest = u.to_vec();
        let x = self.take_largest(&mut rest).expect("u is non-empty");
        let splits = self.splits(x);
        for &split in splits.iter() {
            let (fresh, n) = Self::fresh(split, c);
            if n > slack {
                continue;
            }
            let mut c2 = c.to_vec();
            let mut u2 = rest.clone();
            for &id in &fresh[..n] {
                let pos = c2.binary_search(&id).unwrap_err();
                c2.insert(pos, id);
                u2.push(id);
            }
            u2.sort_unstable();
            self.choices.push((x, split));
            let result = self.dfs(&c2, &u2);
            self.choices.pop();
            result?;
        }
        Ok(())
    }

    fn record(&mut self, c: &[u32]) {
        let mut codes: Vec<String> = c
            .iter()
            .map(|&id| self.classes[id as usize].code.clone())
            .collect();
        codes.sort_unstable();
        let better = match &self.best {
            None => true,
            Some(b) => codes.len() < b.codes.len() || (codes.len() == b.codes.len() && codes < b.codes),
        };
        if better {
            self.best = Some(Best {
                codes,
                choices: self.choices.clone(),
            });
        }
    }

    fn witness(&self, choices: &[(u32, Split)]) -> AssemblyChain<S::Object> {
        let mut order: Vec<&(u32, Split)> = choices.iter().collect();
        order.sort_by(|a, b| {
            let (ca, cb) = (&self.classes[a.0 as usize], &self.classes[b.0 as usize]);
            (ca.size, &ca.code).cmp(&(cb.size, &cb.code))
        });
        let mut position: HashMap<u32, usize> = HashMap::new();
        let mut chain = AssemblyChain::new(self.solver.space.id());
        for &&(class, (left, right)) in &order {
            let parent = |side: Side| match side {
                Side::Block(b) => Parent::Block(self.blocks[b as usize].clone()),
                Side::Class(id) => Parent::Step(position[&id]),
            };
            let step = ChainStep {
                object: self.classes[class as usize].object.clone(),
                left: parent(left),
                right: parent(right),
            };
            position.insert(class, chain.steps.len());
            chain.steps.push(step);
        }
        chain
    }
}
