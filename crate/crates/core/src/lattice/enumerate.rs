//! Exhaustive depth-first search: the trusted counting oracle.
//!
//! Kept deliberately plain: visited vertices in a list (square) or a set
//! (triangular), forward half-lines checked by scanning, no memoization.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rustc_hash::FxHashSet;

use super::square::{k_sided_step_ok, RectBox, SquareWalk, Step};
use super::tri::{tri_step, TriBox, TriStep, TriWalk};
use super::{Walk, WalkClass};
use crate::exec::Execution;
use crate::series::Rat;

/// A node of the square-lattice search tree.
#[derive(Clone, Debug)]
pub struct SquareNode {
    pub steps: Vec<Step>,
    pub visited: Vec<(i32, i32)>,
    pub pos: (i32, i32),
    pub bbox: RectBox,
}

impl SquareNode {
    fn root() -> Self {
        SquareNode { steps: Vec::new(), visited: vec![(0, 0)], pos: (0, 0), bbox: RectBox::point(0, 0) }
    }

    fn ray_clear(&self, s: Step) -> bool {
        let (dx, dy) = s.vector();
        let (px, py) = self.pos;
        self.visited.iter().all(|&(x, y)| {
            let (rx, ry) = (x - px, y - py);
            if dx == 0 {
                !(rx == 0 && ry * dy > 0)
            } else {
                !(ry == 0 && rx * dx > 0)
            }
        })
    }

    fn allowed(&self, s: Step, k: u8) -> bool {
        self.ray_clear(s) && k_sided_step_ok(&self.bbox, self.pos, s, k)
    }

    fn push(&mut self, s: Step) {
        let (dx, dy) = s.vector();
        self.pos = (self.pos.0 + dx, self.pos.1 + dy);
        self.visited.push(self.pos);
        self.bbox = self.bbox.extend(self.pos.0, self.pos.1);
        self.steps.push(s);
    }

    fn pop(&mut self, saved: RectBox) {
        self.steps.pop();
        self.visited.pop();
        self.pos = *self.visited.last().unwrap();
        self.bbox = saved;
    }

    pub fn walk(&self) -> SquareWalk {
        SquareWalk::new(self.steps.clone())
    }

    /// Steps allowed from this node for the class with parameter `k`.
    pub fn available(&self, k: u8) -> Vec<Step> {
        Step::ALL.into_iter().filter(|&s| self.allowed(s, k)).collect()
    }
}

/// A node of the triangular-lattice search tree.
#[derive(Clone, Debug)]
pub struct TriNode {
    pub steps: Vec<TriStep>,
    pub visited: FxHashSet<(i32, i32)>,
    pub pos: (i32, i32),
    pub bbox: TriBox,
}

impl TriNode {
    fn root() -> Self {
        let mut visited = FxHashSet::default();
        visited.insert((0, 0));
        TriNode { steps: Vec::new(), visited, pos: (0, 0), bbox: TriBox::point(0, 0) }
    }

    fn try_step(&self, s: TriStep) -> Option<TriBox> {
        let (dx, dy) = s.vector();
        if self.visited.contains(&(self.pos.0 + dx, self.pos.1 + dy)) {
            return None;
        }
        tri_step(&self.visited, &self.bbox, self.pos, s, self.bbox.size() + 1)
    }

    fn push(&mut self, s: TriStep, nb: TriBox) {
        let (dx, dy) = s.vector();
        self.pos = (self.pos.0 + dx, self.pos.1 + dy);
        self.visited.insert(self.pos);
        self.bbox = nb;
        self.steps.push(s);
    }

    fn pop(&mut self, saved: TriBox) {
        let s = self.steps.pop().unwrap();
        self.visited.remove(&self.pos);
        let (dx, dy) = s.vector();
        self.pos = (self.pos.0 - dx, self.pos.1 - dy);
        self.bbox = saved;
    }

    pub fn walk(&self) -> TriWalk {
        TriWalk::new(self.steps.clone())
    }

    pub fn available(&self) -> Vec<TriStep> {
        TriStep::ALL.into_iter().filter(|&s| self.try_step(s).is_some()).collect()
    }
}

fn square_rec<A>(
    node: &mut SquareNode,
    k: u8,
    n_max: usize,
    acc: &mut A,
    visit: &(impl Fn(&mut A, &SquareNode) + Sync),
) {
    visit(acc, node);
    if node.steps.len() == n_max {
        return;
    }
    for s in Step::ALL {
        if node.allowed(s, k) {
            let saved = node.bbox;
            node.push(s);
            square_rec(node, k, n_max, acc, visit);
            node.pop(saved);
        }
    }
}

/// Stopping rule for triangular search: a length cap and/or a box-size cap.
#[derive(Clone, Copy, Debug)]
pub struct TriLimit {
    pub max_len: Option<usize>,
    pub max_box: Option<i32>,
}

fn tri_rec<A>(node: &mut TriNode, lim: TriLimit, acc: &mut A, visit: &(impl Fn(&mut A, &TriNode) + Sync)) {
    visit(acc, node);
    if lim.max_len.is_some_and(|m| node.steps.len() >= m) {
        return;
    }
    for s in TriStep::ALL {
        if let Some(nb) = node.try_step(s) {
            if lim.max_box.is_some_and(|m| nb.size() > m) {
                continue;
            }
            let saved = node.bbox;
            node.push(s, nb);
            tri_rec(node, lim, acc, visit);
            node.pop(saved);
        }
    }
}

const SPLIT_DEPTH: usize = 2;

/// Folds `visit` over every walk of length `<= n_max` of a square class
/// (`k` = number of sides, 4 = prudent). Subtrees below depth 2 are
/// processed as independent tasks and merged.
pub fn fold_square<A: Send>(
    k: u8,
    n_max: usize,
    exec: Execution,
    init: impl Fn() -> A + Sync + Send,
    visit: impl Fn(&mut A, &SquareNode) + Sync + Send,
    merge: impl Fn(A, A) -> A,
) -> A {
    let split = SPLIT_DEPTH.min(n_max);
    let mut frontier = Vec::new();
    let mut shallow = init();
    let mut stack = vec![SquareNode::root()];
    while let Some(node) = stack.pop() {
        if node.steps.len() == split {
            frontier.push(node);
            continue;
        }
        visit(&mut shallow, &node);
        for s in node.available(k) {
            let mut c = node.clone();
            c.push(s);
            stack.push(c);
        }
    }
    frontier.sort_by(|a, b| a.steps.cmp(&b.steps));
    let parts = exec.map(frontier, |mut node| {
        let mut acc = init();
        square_rec(&mut node, k, n_max, &mut acc, &visit);
        acc
    });
    parts.into_iter().fold(shallow, merge)
}

/// Triangular analogue of [`fold_square`].
pub fn fold_tri<A: Send>(
    lim: TriLimit,
    exec: Execution,
    init: impl Fn() -> A + Sync + Send,
    visit: impl Fn(&mut A, &TriNode) + Sync + Send,
    merge: impl Fn(A, A) -> A,
) -> A {
    let split = lim.max_len.map_or(SPLIT_DEPTH, |m| SPLIT_DEPTH.min(m));
    let mut frontier = Vec::new();
    let mut shallow = init();
    let mut stack = vec![TriNode::root()];
    while let Some(node) = stack.pop() {
        if node.steps.len() == split {
            frontier.push(node);
            continue;
        }
        visit(&mut shallow, &node);
        for s in TriStep::ALL {
            if let Some(nb) = node.try_step(s) {
                if lim.max_box.is_some_and(|m| nb.size() > m) {
                    continue;
                }
                let mut c = node.clone();
                c.push(s, nb);
                stack.push(c);
            }
        }
    }
    frontier.sort_by(|a, b| a.steps.cmp(&b.steps));
    let parts = exec.map(frontier, |mut node| {
        let mut acc = init();
        tri_rec(&mut node, lim, &mut acc, &visit);
        acc
    });
    parts.into_iter().fold(shallow, merge)
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Number of walks of each length `0..=n_max` in the class.
pub fn enumerate_counts(class: WalkClass, n_max: usize) -> Vec<BigUint> {
    enumerate_counts_with(class, n_max, Execution::default())
}

pub fn enumerate_counts_with(class: WalkClass, n_max: usize, exec: Execution) -> Vec<BigUint> {
    let counts = match class.sides() {
        Some(k) => {
            fold_square(k, n_max, exec, || vec![0u64; n_max + 1], |acc, node| acc[node.steps.len()] += 1, merge_counts)
        }
        None => fold_tri(
            TriLimit { max_len: Some(n_max), max_box: None },
            exec,
            || vec![0u64; n_max + 1],
            |acc, node| acc[node.steps.len()] += 1,
            merge_counts,
        ),
    };
    counts.into_iter().map(BigUint::from).collect()
}

/// All walks of length exactly `n` in the class, sorted.
pub fn enumerate_walks(class: WalkClass, n: usize) -> Vec<Walk> {
    let mut out: Vec<Walk> = match class.sides() {
        Some(k) => fold_square(
            k,
            n,
            Execution::Sequential,
            Vec::new,
            |acc, node| {
                if node.steps.len() == n {
                    acc.push(Walk::Square(node.walk()));
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        ),
        None => fold_tri(
            TriLimit { max_len: Some(n), max_box: None },
            Execution::Sequential,
            Vec::new,
            |acc, node| {
                if node.steps.len() == n {
                    acc.push(Walk::Tri(node.walk()));
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        ),
    };
    out.sort();
    out
}

/// Triangular prudent walks (of any length) spanning a box of size `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriBoxCounts {
    pub k: usize,
    pub total: BigUint,
    /// `right_edge[i]`: walks ending on the right edge at distance `i` from
    /// the North corner (and `k - i` from the bottom).
    pub right_edge: Vec<BigUint>,
}

pub fn enumerate_tri_by_box(k: usize) -> TriBoxCounts {
    enumerate_tri_by_box_with(k, Execution::default())
}

pub fn enumerate_tri_by_box_with(k: usize, exec: Execution) -> TriBoxCounts {
    let kk = k as i32;
    let (total, right) = fold_tri(
        TriLimit { max_len: None, max_box: Some(kk) },
        exec,
        || (0u64, vec![0u64; k + 1]),
        |acc, node| {
            let b = node.bbox;
            if b.size() != kk {
                return;
            }
            acc.0 += 1;
            let (x, y) = node.pos;
            if x + y == b.s_max {
                acc.1[(x - b.x_min) as usize] += 1;
            }
        },
        |a, b| (a.0 + b.0, merge_counts(a.1, b.1)),
    );
    TriBoxCounts { k, total: total.into(), right_edge: right.into_iter().map(BigUint::from).collect() }
}

/// Exact distribution of an integer statistic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Distribution {
    pub counts: BTreeMap<i64, u64>,
}

impl Distribution {
    pub fn add(&mut self, v: i64) {
        *self.counts.entry(v).or_insert(0) += 1;
    }

    pub fn merge(&mut self, o: Distribution) {
        for (v, c) in o.counts {
            *self.counts.entry(v).or_insert(0) += c;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn probability(&self, v: i64) -> Rat {
        let t = self.total();
        if t == 0 {
            return Rat::zero();
        }
        BigRational::new((*self.counts.get(&v).unwrap_or(&0)).into(), t.into())
    }

    fn moment(&self, p: u32) -> Rat {
        let t = self.total();
        if t == 0 {
            return Rat::zero();
        }
        let s: Rat = self
            .counts
            .iter()
            .map(|(&v, &c)| Rat::from_integer((v as i128).pow(p).into()) * Rat::from_integer(c.into()))
            .fold(Rat::zero(), |a, b| a + b);
        s / Rat::from_integer(t.into())
    }

    pub fn mean(&self) -> Rat {
        self.moment(1)
    }

    pub fn variance(&self) -> Rat {
        let m = self.mean();
        self.moment(2) - &m * &m
    }
}

/// Exact endpoint statistics over all length-`n` walks of a class.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EndpointStats {
    pub n: usize,
    pub x_plus_y: Distribution,
    pub x_minus_y: Distribution,
    /// Border distance from the endpoint to the NE corner (square classes).
    pub ne_distance: Distribution,
    /// Box width (square classes).
    pub width: Distribution,
    /// Box size (triangular).
    pub box_size: Distribution,
}

impl EndpointStats {
    pub fn total(&self) -> u64 {
        self.x_plus_y.total()
    }

    fn merge(mut self, o: EndpointStats) -> EndpointStats {
        self.x_plus_y.merge(o.x_plus_y);
        self.x_minus_y.merge(o.x_minus_y);
        self.ne_distance.merge(o.ne_distance);
        self.width.merge(o.width);
        self.box_size.merge(o.box_size);
        self
    }
}

pub fn endpoint_stats(class: WalkClass, n: usize) -> EndpointStats {
    let init = || EndpointStats { n, ..Default::default() };
    match class.sides() {
        Some(k) => fold_square(
            k,
            n,
            Execution::default(),
            init,
            |acc, node| {
                if node.steps.len() != n {
                    return;
                }
                let (x, y) = node.pos;
                let b = node.bbox;
                acc.x_plus_y.add((x + y) as i64);
                acc.x_minus_y.add((x - y) as i64);
                acc.ne_distance.add(((b.x_max - x) + (b.y_max - y)) as i64);
                acc.width.add(b.width() as i64);
            },
            EndpointStats::merge,
        ),
        None => fold_tri(
            TriLimit { max_len: Some(n), max_box: None },
            Execution::default(),
            init,
            |acc, node| {
                if node.steps.len() != n {
                    return;
                }
                let (x, y) = node.pos;
                acc.x_plus_y.add((x + y) as i64);
                acc.x_minus_y.add((x - y) as i64);
                acc.box_size.add(node.bbox.size() as i64);
            },
            EndpointStats::merge,
        ),
    }
}
