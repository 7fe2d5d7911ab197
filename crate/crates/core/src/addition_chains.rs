//! Classical addition chains over the positive integers.
//!
//! Lengths follow the *step-count* convention throughout: `shortest_length(n)`
//! is the number of additions `r` in a shortest chain `(1 = a_0, ..., a_r = n)`,
//! i.e. one less than the number of elements. [`shortest_length_elements`]
//! exposes the element count for callers that want the other convention.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default node budget for chain enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 50_000_000;

/// A strictly increasing sequence `1 = a_0 < a_1 < ... < a_r = n` in which
/// every term after the first is the sum of two (not necessarily distinct)
/// earlier terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdditionChain {
    terms: Vec<u64>,
}

impl AdditionChain {
    /// Validates `terms` and wraps them.
    pub fn new(terms: Vec<u64>) -> Result<Self> {
        Self::check(&terms)?;
        Ok(Self { terms })
    }

    /// Checks the addition-chain invariants without taking ownership.
    pub fn check(terms: &[u64]) -> Result<()> {
        match terms.first() {
            None => return Err(Error::InvalidArgument("empty addition chain".into())),
            Some(&1) => {}
            Some(&a) => {
                return Err(Error::InvalidArgument(format!(
                    "addition chain must start at 1, found {a}"
                )))
            }
        }
        for i in 1..terms.len() {
            if terms[i] <= terms[i - 1] {
                return Err(Error::InvalidArgument(format!(
                    "terms not strictly increasing at position {i}"
                )));
            }
            if !is_sum_of_two(&terms[..i], terms[i]) {
                return Err(Error::InvalidArgument(format!(
                    "term {} at position {i} is not a sum of two earlier terms",
                    terms[i]
                )));
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn target(&self) -> u64 {
        *self.terms.last().expect("chains are non-empty")
    }

    /// Number of additions `r`.
    pub fn steps(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn element_count(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for AdditionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// Calls `f(i, j)` for each `i <= j` with `sorted[i] + sorted[j] == target`
/// until it returns true; returns whether it did. `sorted` must be strictly
/// increasing.
fn find_pair(sorted: &[u64], target: u64, mut f: impl FnMut(usize, usize) -> bool) -> bool {
    if sorted.is_empty() {
        return false;
    }
    let (mut i, mut j) = (0, sorted.len() - 1);
    while i <= j {
        let sum = sorted[i] + sorted[j];
        if sum == target {
            if f(i, j) {
                return true;
            }
            i += 1;
            if j == 0 {
                break;
            }
            j -= 1;
        } else if sum < target {
            i += 1;
        } else if j == 0 {
            break;
        } else {
            j -= 1;
        }
    }
    false
}

/// `sorted` must be strictly increasing.
fn is_sum_of_two(sorted: &[u64], target: u64) -> bool {
    sorted
        .iter()
        .take_while(|&&a| 2 * a <= target)
        .any(|&a| sorted.binary_search(&(target - a)).is_ok())
}

/// The binary expansion of a positive integer: `target = sum of 2^p` over
/// `powers`, listed in strictly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDecomposition {
    pub target: u64,
    pub powers: Vec<u32>,
    pub hamming_weight: u32,
}

impl BinaryDecomposition {
    /// The leading (largest) power, `floor(log2 target)`.
    pub fn leading(&self) -> u32 {
        self.powers[0]
    }
}

pub fn hamming_weight(n: u64) -> u32 {
    n.count_ones()
}

pub fn binary_powers(n: u64) -> Result<BinaryDecomposition> {
    if n == 0 {
        return Err(Error::InvalidArgument("binary decomposition of 0".into()));
    }
    let powers: Vec<u32> = (0..64).rev().filter(|&p| n >> p & 1 == 1).collect();
    Ok(BinaryDecomposition {
        target: n,
        hamming_weight: powers.len() as u32,
        powers,
    })
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    64 - (n - 1).leading_zeros()
}

/// Schönhage's bracket `log2 n + log2 H(n) - 2.13 <= l(n) <= log2 n + H(n) - 1`.
pub fn schonhage_bracket(n: u64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let log_n = (n as f64).log2();
    let h = hamming_weight(n) as f64;
    Ok((log_n + h.log2() - 2.13, log_n + h - 1.0))
}

/// Scholz's bracket `(m + 1, 2m)` for the `m` with `2^m + 1 <= n <= 2^(m+1)`.
pub fn scholz_bracket(n: u64) -> Result<(u32, u32)> {
    if n <= 2 {
        return Err(Error::InvalidArgument(format!(
            "Scholz bracket needs n >= 3, got {n}"
        )));
    }
    let m = ceil_log2(n) - 1;
    Ok((m + 1, 2 * m))
}

/// Length (number of additions) of a shortest addition chain for `n`.
pub fn shortest_length(n: u64) -> Result<u32> {
    Ok(shortest_chain(n)?.steps() as u32)
}

/// Element-count variant of [`shortest_length`]: `shortest_length(n) + 1`.
pub fn shortest_length_elements(n: u64) -> Result<u32> {
    Ok(shortest_length(n)? + 1)
}

/// A shortest addition chain for `n`, found by iterative deepening.
///
/// Among shortest chains the first one met in a depth-first search that tries
/// larger continuations first is returned, so the result is deterministic.
pub fn shortest_chain(n: u64) -> Result<AdditionChain> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n == 1 {
        return Ok(AdditionChain { terms: vec![1] });
    }
    let mut limit = ceil_log2(n) as usize;
    loop {
        let mut search = ShortestSearch::new(n, limit);
        if search.run() {
            return Ok(AdditionChain {
                terms: search.chain,
            });
        }
        limit += 1;
    }
}

/// Largest target for which the search keeps a value-indexed membership set.
const MEMBERSHIP_BITSET_MAX: u64 = 1 << 24;

/// Depth-limited search for a chain of at most `limit` additions.
///
/// If such a chain exists then so does a shortest one, and a shortest chain
/// is reduced: each element other than `n` is a summand of some later
/// element. The search tracks the elements that are not yet a possible
/// summand of a later one and prunes states that cannot become reduced.
struct ShortestSearch {
    n: u64,
    limit: usize,
    chain: Vec<u64>,
    /// `floor[r]`: smallest value the largest element may have with `r`
    /// additions left.
    floor: Vec<u64>,
    /// `weights[k]`: the two largest binary weights among `chain[..=k]`.
    weights: Vec<(u32, u32)>,
    growth: Growth,
    /// Chain membership by value, when `n` is small enough to index.
    members: Option<FixedBitSet>,
    /// Scratch space for the candidates tried at each depth.
    buffers: Vec<Vec<u64>>,
    /// Scratch space for the unused elements handed to each depth.
    unused_buffers: Vec<Vec<u64>>,
}

impl ShortestSearch {
    fn new(n: u64, limit: usize) -> Self {
        // Kept non-increasing so that chains finishing early are not pruned.
        let floor = (0..=limit as u32)
            .scan(n, |bound, r| {
                *bound = (*bound).min(min_predecessor(n, r));
                Some(*bound)
            })
            .collect();
        Self {
            n,
            limit,
            chain: vec![1],
            floor,
            weights: vec![(1, 0)],
            growth: Growth::new(limit, hamming_weight(n)),
            members: (n <= MEMBERSHIP_BITSET_MAX).then(|| {
                let mut set = FixedBitSet::with_capacity(n as usize + 1);
                set.insert(1);
                set
            }),
            buffers: vec![Vec::new(); limit + 1],
            unused_buffers: vec![Vec::new(); limit + 1],
        }
    }

    fn is_sum_of_two(&self, v: u64) -> bool {
        self.chain
            .iter()
            .take_while(|&&a| 2 * a <= v)
            .any(|&a| self.contains(v - a))
    }

    fn contains(&self, v: u64) -> bool {
        match &self.members {
            Some(set) => set.contains(v as usize),
            None => self.chain.binary_search(&v).is_ok(),
        }
    }

    /// On success `chain` holds the chain found.
    fn run(&mut self) -> bool {
        self.deepen(&[1])
    }

    fn deepen(&mut self, unused: &[u64]) -> bool {
        let last = *self.chain.last().unwrap();
        if last == self.n {
            return true;
        }
        let steps = self.chain.len() - 1;
        if steps >= self.limit {
            return false;
        }
        let remaining = self.limit - steps;
        if last < self.floor[remaining] {
            return false;
        }
        // Each future addition consumes at most two unused elements and all
        // but the final one leave a new element behind that needs a use.
        if unused.len() > remaining + 1 || !self.weight_allows(remaining) {
            return false;
        }
        if remaining == 1 {
            return self.finish(unused, false);
        }
        if remaining == 2 {
            return self.finish(unused, true);
        }
        let mut next = std::mem::take(&mut self.buffers[remaining]);
        continuations_into(&self.chain, self.floor[remaining - 1], self.n, &mut next);
        let mut after = std::mem::take(&mut self.unused_buffers[remaining]);
        let mut found = false;
        for &x in &next {
            after.clear();
            after.extend(unused.iter().copied().filter(|&u| !self.contains(x - u)));
            after.push(x);
            if after.len() > remaining {
                continue;
            }
            self.push(x);
            if self.deepen(&after) {
                found = true;
                break;
            }
            self.pop();
        }
        self.buffers[remaining] = next;
        self.unused_buffers[remaining] = after;
        found
    }

    fn push(&mut self, x: u64) {
        if let Some(set) = &mut self.members {
            set.insert(x as usize);
        }
        self.chain.push(x);
        let (w1, w2) = *self.weights.last().unwrap();
        let w = hamming_weight(x);
        self.weights.push(if w > w1 { (w, w1) } else { (w1, w2.max(w)) });
    }

    fn pop(&mut self) {
        let x = self.chain.pop().unwrap();
        if let Some(set) = &mut self.members {
            set.set(x as usize, false);
        }
        self.weights.pop();
    }

    /// Whether `n` is still within reach given the binary weights so far.
    fn weight_allows(&self, remaining: usize) -> bool {
        let (w1, w2) = *self.weights.last().unwrap();
        let k = self.chain.len();
        let a = self.chain[k - 1];
        let b = if k > 1 { self.chain[k - 2] } else { 0 };
        self.growth.max_reach(remaining, w1, w2, b, a) >= self.n as u128
    }

    /// Completes the chain with one (or, if `two`, up to two) more additions
    /// that consume every element of `unused`.
    fn finish(&mut self, unused: &[u64], two: bool) -> bool {
        let found = self.finish_in_one(unused) || (two && self.finish_in_two(unused));
        if found {
            self.chain.push(self.n);
        }
        found
    }

    /// One addition `n = last + y` with `y` in the chain.
    fn finish_in_one(&self, unused: &[u64]) -> bool {
        let last = *self.chain.last().unwrap();
        let Some(y) = self.n.checked_sub(last) else {
            return false;
        };
        y <= last
            && self.contains(y)
            && unused.iter().all(|&u| u == last || u == y)
    }

    /// Two additions: `x` and then `n = x + y`, `y` in the chain or `y = x`.
    /// The current last element is unused, so either `y` is it or `x` uses
    /// it. Pushes `x` on success.
    fn finish_in_two(&mut self, unused: &[u64]) -> bool {
        let last = *self.chain.last().unwrap();
        let n = self.n;
        let covers = |x: u64, y: u64| {
            unused.iter().all(|&u| {
                (u == y && y != x) || (x > u && self.contains(x - u))
            })
        };
        let mut found = None;
        let t = n - last;
        if t > last && t <= 2 * last && self.is_sum_of_two(t) && covers(t, last) {
            found = Some(t);
        }
        if found.is_none() {
            find_pair(&self.chain, t, |i, j| {
                let (p, q) = (self.chain[i], self.chain[j]);
                for (a, y) in [(p, q), (q, p)] {
                    if covers(last + a, y) {
                        found = Some(last + a);
                        return true;
                    }
                }
                false
            });
        }
        if found.is_none() && n % 2 == 0 {
            let x = n / 2;
            if x > last && self.contains(x - last) && covers(x, x) {
                found = Some(x);
            }
        }
        if let Some(x) = found {
            self.chain.push(x);
        }
        found.is_some()
    }
}

/// Largest value a chain can reach from its last two elements `(b, a)` while
/// also producing an element of binary weight `need`.
///
/// A step either doubles the previous element, `(b, a) -> (a, 2a)`, or is
/// bounded by `(b, a) -> (a, a + b)`. Track the two largest binary weights
/// `(w1, w2)` among the elements: a doubling of any element yields at most
/// `(w1, w1)`, and a sum of two distinct elements at most `(w1 + w2, w1)`.
/// `fronts[r][w1][w2]` holds the maximal coefficient pairs `(x, y)` such that
/// `r` steps starting from weights `(w1, w2)` and reaching weight `need` end
/// at most at `x b + y a`. Weights are capped at `need`.
struct Growth {
    need: usize,
    fronts: Vec<Vec<Vec<Vec<(u128, u128)>>>>,
}

impl Growth {
    fn new(limit: usize, need: u32) -> Self {
        let need = need as usize;
        let base = (0..=need)
            .map(|w1| vec![if w1 >= need { vec![(0, 1)] } else { Vec::new() }; need + 1])
            .collect();
        let mut fronts: Vec<Vec<Vec<Vec<(u128, u128)>>>> = vec![base];
        for r in 1..=limit {
            let prev = &fronts[r - 1];
            let layer = (0..=need)
                .map(|w1| {
                    (0..=need)
                        .map(|w2| {
                            let doubled = prev[w1][w1]
                                .iter()
                                .map(|&(p, q)| (0, p.saturating_add(q.saturating_mul(2))));
                            let summed = prev[(w1 + w2).min(need)][w1]
                                .iter()
                                .map(|&(p, q)| (q, p.saturating_add(q)));
                            pareto(doubled.chain(summed).collect())
                        })
                        .collect()
                })
                .collect();
            fronts.push(layer);
        }
        Self { need, fronts }
    }

    fn max_reach(&self, r: usize, w1: u32, w2: u32, b: u64, a: u64) -> u128 {
        let w1 = (w1 as usize).min(self.need);
        let w2 = (w2 as usize).min(self.need);
        self.fronts[r][w1][w2]
            .iter()
            .map(|&(x, y)| x.saturating_mul(b as u128).saturating_add(y.saturating_mul(a as u128)))
            .max()
            .unwrap_or(0)
    }
}

fn pareto(mut pairs: Vec<(u128, u128)>) -> Vec<(u128, u128)> {
    pairs.sort_unstable_by(|l, r| r.cmp(l));
    let mut out: Vec<(u128, u128)> = Vec::new();
    for p in pairs {
        if out.last().map_or(true, |&(_, y)| p.1 > y) {
            out.push(p);
        }
    }
    out
}

/// `l(n)` for every `n` in `1..=max`, indexed by `n` (index 0 holds 0).
///
/// Values are found in increasing order of `n`. Each starts from the upper
/// bound given by `n - 1`, `n / 2` and factor pairs, and searches downwards
/// until a limit admits no chain.
pub fn shortest_lengths(max: u64) -> Result<Vec<u32>> {
    if max == 0 {
        return Err(Error::InvalidArgument("max must be positive".into()));
    }
    let max = max as usize;
    let mut lengths = vec![0u32; max + 1];
    for n in 2..=max {
        let mut upper = lengths[n - 1] + 1;
        if n % 2 == 0 {
            upper = upper.min(lengths[n / 2] + 1);
        }
        for d in (3..).take_while(|d| d * d <= n) {
            if n % d == 0 {
                upper = upper.min(lengths[d] + lengths[n / d]);
            }
        }
        let mut length = upper;
        while length > 0 && ShortestSearch::new(n as u64, length as usize - 1).run() {
            length -= 1;
        }
        lengths[n] = length;
    }
    Ok(lengths)
}

/// Lower bound on the largest element of a chain that still has `r`
/// additions left before producing `v`.
///
/// Either the final addition doubles `v / 2`, or it adds a strictly smaller
/// earlier element to the previous one, in which case
/// `v <= a[L-1] + a[L-2] <= 3 a[L-2]`.
fn min_predecessor(v: u64, r: u32) -> u64 {
    match r {
        0 => v,
        1 => v.div_ceil(2),
        _ => {
            let non_doubling = v.div_ceil(3).div_ceil(1u64 << (r - 2).min(63));
            if v % 2 == 0 {
                non_doubling.min(min_predecessor(v / 2, r - 1))
            } else {
                non_doubling
            }
        }
    }
}

#[inline]
fn reaches(value: u64, doublings: u32, n: u64) -> bool {
    doublings >= 64 || (value as u128) << doublings >= n as u128
}

/// All sums of two chain terms that exceed the last term and do not exceed `n`,
/// distinct, in decreasing order.
fn continuations(chain: &[u64], n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    continuations_into(chain, 0, n, &mut out);
    out
}

/// Like [`continuations`], restricted to sums of at least `min`, written to `out`.
fn continuations_into(chain: &[u64], min: u64, n: u64, out: &mut Vec<u64>) {
    out.clear();
    let last = *chain.last().unwrap();
    let min = min.max(last + 1);
    for (i, &a) in chain.iter().enumerate().rev() {
        if 2 * a < min {
            break;
        }
        for &b in chain[..=i].iter().rev() {
            let s = a + b;
            if s < min {
                break;
            }
            if s <= n {
                out.push(s);
            }
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.dedup();
}

/// Every addition chain for `n` with at most `max_steps` additions (all chains
/// when `None`), ordered lexicographically by terms.
pub fn enumerate_chains(n: u64, max_steps: Option<u32>) -> Result<BTreeSet<AdditionChain>> {
    enumerate_chains_with_budget(n, max_steps, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_chains_with_budget(
    n: u64,
    max_steps: Option<u32>,
    budget: u64,
) -> Result<BTreeSet<AdditionChain>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "chain enumeration needs n >= 2, got {n}"
        )));
    }
    let limit = max_steps.map_or(n as usize - 1, |m| m as usize);
    let mut out = BTreeSet::new();
    let mut nodes = 0u64;
    let mut chain = vec![1u64];
    collect(&mut chain, n, limit, &mut out, &mut nodes, budget)?;
    Ok(out)
}

fn collect(
    chain: &mut Vec<u64>,
    n: u64,
    limit: usize,
    out: &mut BTreeSet<AdditionChain>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded {
            budget,
            best_upper: None,
        });
    }
    let last = *chain.last().unwrap();
    if last == n {
        out.insert(AdditionChain {
            terms: chain.clone(),
        });
        return Ok(());
    }
    let steps = chain.len() - 1;
    if steps >= limit || !reaches(last, (limit - steps) as u32, n) {
        return Ok(());
    }
    let remaining = (limit - steps) as u32;
    for next in continuations(chain, n) {
        if !reaches(next, remaining - 1, n) {
            break;
        }
        chain.push(next);
        collect(chain, n, limit, out, nodes, budget)?;
        chain.pop();
    }
    Ok(())
}

/// All shortest addition chains for `n`.
pub fn optimal_chains(n: u64) -> Result<BTreeSet<AdditionChain>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "optimal chain enumeration needs n >= 2, got {n}"
        )));
    }
    enumerate_chains(n, Some(shortest_length(n)?))
}
