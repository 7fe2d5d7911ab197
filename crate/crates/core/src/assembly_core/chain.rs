use std::collections::HashSet;

use serde::Serialize;

use super::AssemblySpace;
use crate::addition_chains::AdditionChain;
use crate::error::{Error, Result};

/// Where a chain step takes one of its two inputs from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Parent<O> {
    Block(O),
    /// Index (0-based) of an earlier step.
    Step(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChainStep<O> {
    pub object: O,
    pub left: Parent<O>,
    pub right: Parent<O>,
}

/// An assembly addition chain: each step glues two earlier objects or
/// building blocks. The last step is the target; a building block has the
/// empty chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AssemblyChain<O> {
    pub space: String,
    pub steps: Vec<ChainStep<O>>,
}

impl<O> AssemblyChain<O> {
    pub fn new(space: impl Into<String>) -> Self {
        Self {
            space: space.into(),
            steps: Vec::new(),
        }
    }

    /// Number of gluing steps `L`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn target(&self) -> Option<&O> {
        self.steps.last().map(|s| &s.object)
    }

    pub fn objects(&self) -> impl Iterator<Item = &O> {
        self.steps.iter().map(|s| &s.object)
    }

    pub fn resolve<'a>(&'a self, parent: &'a Parent<O>) -> Option<&'a O> {
        match parent {
            Parent::Block(b) => Some(b),
            Parent::Step(i) => self.steps.get(*i).map(|s| &s.object),
        }
    }
}

/// Outcome of [`verify_chain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    /// Names the first violated step (1-based) when invalid.
    pub diagnostic: Option<String>,
}

impl Verification {
    fn ok() -> Self {
        Self {
            valid: true,
            diagnostic: None,
        }
    }

    fn fail(msg: String) -> Self {
        Self {
            valid: false,
            diagnostic: Some(msg),
        }
    }
}

/// Checks every chain invariant and reports the first violation.
///
/// Errors only when the chain belongs to a different space.
pub fn verify_chain<S: AssemblySpace>(
    space: &S,
    chain: &AssemblyChain<S::Object>,
) -> Result<Verification> {
    if chain.space != space.id() {
        return Err(Error::InvalidArgument(format!(
            "chain belongs to space '{}', not '{}'",
            chain.space,
            space.id()
        )));
    }
    let mut seen = HashSet::new();
    for (i, step) in chain.steps.iter().enumerate() {
        let n = i + 1;
        if let Err(e) = space.validate(&step.object) {
            return Ok(Verification::fail(format!("invalid object at step {n}: {e}")));
        }
        if space.canonical(&step.object) != step.object {
            return Ok(Verification::fail(format!("non-canonical object at step {n}")));
        }
        let mut parents = Vec::with_capacity(2);
        for parent in [&step.left, &step.right] {
            match parent {
                Parent::Block(b) => {
                    if space.validate(b).is_err() || !space.is_building_block(b) {
                        return Ok(Verification::fail(format!(
                            "parent is not a building block at step {n}"
                        )));
                    }
                    parents.push(b);
                }
                Parent::Step(j) if *j < i => parents.push(&chain.steps[*j].object),
                Parent::Step(_) => {
                    return Ok(Verification::fail(format!(
                        "parent does not refer to an earlier step at step {n}"
                    )));
                }
            }
        }
        let (l, r) = (parents[0], parents[1]);
        if space.size(&step.object) != space.size(l) + space.size(r) {
            return Ok(Verification::fail(format!("size additivity violated at step {n}")));
        }
        match space.glue(l, r) {
            Ok(results) if results.contains(&step.object) => {}
            Ok(_) => {
                return Ok(Verification::fail(format!(
                    "object is not a gluing of its parents at step {n}"
                )));
            }
            Err(e) => return Ok(Verification::fail(format!("gluing failed at step {n}: {e}"))),
        }
        if !seen.insert(&step.object) {
            return Ok(Verification::fail(format!("repeated object at step {n}")));
        }
    }
    Ok(Verification::ok())
}

fn require_valid<S: AssemblySpace>(space: &S, chain: &AssemblyChain<S::Object>) -> Result<()> {
    let v = verify_chain(space, chain)?;
    if v.valid {
        Ok(())
    } else {
        Err(Error::InvalidObject(v.diagnostic.unwrap_or_default()))
    }
}

/// The size projection `F`: step sizes in increasing order, repetitions
/// removed, with the building-block size 1 in front.
pub fn project_f<S: AssemblySpace>(
    space: &S,
    chain: &AssemblyChain<S::Object>,
) -> Result<AdditionChain> {
    require_valid(space, chain)?;
    let mut sizes: Vec<u64> = chain.objects().map(|o| space.size(o) as u64).collect();
    sizes.push(1);
    sizes.sort_unstable();
    sizes.dedup();
    AdditionChain::new(sizes)
}

pub(super) fn verified<S: AssemblySpace>(
    space: &S,
    chain: &AssemblyChain<S::Object>,
) -> Result<()> {
    require_valid(space, chain)
}

/// All duplicate-free chains of at most `max_len` steps ending at `target`.
///
/// Intermediate objects are restricted to sub-objects of the target; a
/// gluing that does not embed can never be glued up to it. Chains are
/// distinguished by their object sequence; each step records the first parent
/// pair (in availability order) that produces it. Output is in depth-first
/// order, which is deterministic.
pub fn enumerate_chains<S: AssemblySpace>(
    space: &S,
    target: &S::Object,
    max_len: usize,
    node_budget: u64,
) -> Result<Vec<AssemblyChain<S::Object>>> {
    space.validate(target)?;
    let target = space.canonical(target);
    let mut out = Vec::new();
    if space.is_building_block(&target) {
        out.push(AssemblyChain::new(space.id()));
        return Ok(out);
    }
    let blocks: Vec<S::Object> = space
        .building_blocks()
        .into_iter()
        .filter(|b| space.embeds(&target, b))
        .collect();
    let mut walk = ChainWalk {
        space,
        target_size: space.size(&target),
        target,
        blocks,
        max_len,
        budget: node_budget,
        nodes: 0,
        chain: AssemblyChain::new(space.id()),
        out: &mut out,
    };
    walk.dfs()?;
    Ok(out)
}

struct ChainWalk<'a, S: AssemblySpace> {
    space: &'a S,
    target: S::Object,
    target_size: usize,
    blocks: Vec<S::Object>,
    max_len: usize,
    budget: u64,
    nodes: u64,
    chain: AssemblyChain<S::Object>,
    out: &'a mut Vec<AssemblyChain<S::Object>>,
}

impl<S: AssemblySpace> ChainWalk<'_, S> {
    fn dfs(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                best_upper: None,
            });
        }
        let remaining = self.max_len - self.chain.len();
        if remaining == 0 {
            return Ok(());
        }
        let largest = self
            .chain
            .objects()
            .map(|o| self.space.size(o))
            .max()
            .unwrap_or(1);
        if largest << remaining < self.target_size {
            return Ok(());
        }
        // Available inputs: building blocks, then steps in order.
        let mut available: Vec<Parent<S::Object>> =
            self.blocks.iter().cloned().map(Parent::Block).collect();
        available.extend((0..self.chain.len()).map(Parent::Step));
        let mut candidates: Vec<(S::Object, Parent<S::Object>, Parent<S::Object>)> = Vec::new();
        for i in 0..available.len() {
            for j in i..available.len() {
                let x = self.chain.resolve(&available[i]).unwrap().clone();
                let y = self.chain.resolve(&available[j]).unwrap().clone();
                if self.space.size(&x) + self.space.size(&y) > self.target_size {
                    continue;
                }
                for z in self.space.glue(&x, &y)? {
                    if self.chain.objects().any(|o| *o == z)
                        || candidates.iter().any(|(c, _, _)| *c == z)
                    {
                        continue;
                    }
                    if z == self.target || self.space.embeds(&self.target, &z) {
                        candidates.push((z, available[i].clone(), available[j].clone()));
                    }
                }
            }
        }
        for (z, left, right) in candidates {
            let done = z == self.target;
            self.chain.steps.push(ChainStep {
                object: z,
                left,
                right,
            });
            if done {
                self.out.push(self.chain.clone());
            } else {
                self.dfs()?;
            }
            self.chain.steps.pop();
        }
        Ok(())
    }
}
