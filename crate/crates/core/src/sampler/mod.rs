//! Uniform random generation through generating trees with exact extension
//! numbers, and the kinetic (locally uniform) prudent-walk sampler.

mod labels;
mod table;

pub use labels::{children, l_children, last_step, project, roots, Kind, Label, ROOT, TRI_STEP_CODE};
pub use table::{estimate_bytes, ExtTable, Rule, DEFAULT_BUDGET_BYTES};

use std::collections::BTreeMap;

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{PrudentTracker, SquareWalk, Step, TriStep, TriWalk, Walk, WalkClass};
use crate::series::{Int, Rat};

/// Deterministic generator for sample `index` of a run seeded with `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn walk_from_codes(class: WalkClass, codes: &[u8]) -> Walk {
    if class.is_square() {
        Walk::Square(SquareWalk::new(codes.iter().map(|&c| Step::from_code(c)).collect()))
    } else {
        Walk::Tri(TriWalk::new(codes.iter().map(|&c| TriStep::from_code(c)).collect()))
    }
}

impl ExtTable {
    /// The walk of index `rank` in the generating-tree order, `0 <= rank < total()`.
    pub fn unrank(&self, rank: &BigUint) -> Result<Walk> {
        if rank >= self.total() {
            return Err(Error::invalid(format!("rank {rank} out of range 0..{}", self.total())));
        }
        let class = self.class();
        let n = self.len();
        let mut r = rank.clone();
        let mut p = ROOT;
        let mut codes = Vec::with_capacity(n);
        for depth in 0..n {
            let m = n - depth - 1;
            let mut chosen = None;
            for c in children(class, &p)? {
                let e = self.ex(&project(class, &c), m).ok_or_else(|| Error::invalid("label missing from table"))?;
                if &r < e {
                    chosen = Some(c);
                    break;
                }
                r -= e;
            }
            p = chosen.ok_or_else(|| Error::invalid("extension numbers are inconsistent"))?;
            codes.push(last_step(class, &p));
        }
        Ok(walk_from_codes(class, &codes))
    }

    /// One uniformly distributed walk of length `len()`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Walk> {
        if self.total().is_zero() {
            return Err(Error::invalid("no walks of this length"));
        }
        let rank = rng.gen_biguint_below(self.total());
        self.unrank(&rank)
    }

    /// `count` independent samples; sample `i` uses the stream `rng_for(seed, i)`.
    pub fn samples(&self, count: usize, seed: u64, exec: Execution) -> Result<Vec<Walk>> {
        exec.map((0..count as u64).collect(), |i| self.sample(&mut rng_for(seed, i))).into_iter().collect()
    }

    /// Probability of every walk under the step-by-step sampler, as the exact
    /// product of branch probabilities `Ex(child, m-1) / Ex(parent, m)` along its path.
    pub fn path_probabilities(&self) -> Result<BTreeMap<Walk, Rat>> {
        let class = self.class();
        let n = self.len();
        let mut out = BTreeMap::new();
        let mut stack = vec![(ROOT, Vec::new(), Rat::from_integer(1.into()))];
        while let Some((p, codes, prob)) = stack.pop() {
            let depth = codes.len();
            if depth == n {
                *out.entry(walk_from_codes(class, &codes)).or_insert_with(|| Rat::from_integer(0.into())) += prob;
                continue;
            }
            let m = n - depth;
            let parent = Int::from(self.ex(&project(class, &p), m).cloned().unwrap_or_default());
            for c in children(class, &p)? {
                let e = Int::from(self.ex(&project(class, &c), m - 1).cloned().unwrap_or_default());
                let mut next = codes.clone();
                next.push(last_step(class, &c));
                stack.push((c, next, &prob * Rat::new(e, parent.clone())));
            }
        }
        Ok(out)
    }
}

/// One uniformly distributed walk of length `n` in `class`.
pub fn uniform_sample(class: WalkClass, n: usize, seed: u64) -> Result<Walk> {
    ExtTable::build(class, n)?.sample(&mut rng_for(seed, 0))
}

/// Prudent steps available from the tracker's current state.
fn available(tr: &PrudentTracker) -> Vec<Step> {
    Step::ALL.into_iter().filter(|&s| tr.can_step(s)).collect()
}

/// Kinetic prudent walk: each step uniform among the available prudent steps.
pub fn kinetic_sample(n: usize, seed: u64) -> SquareWalk {
    kinetic_sample_with(n, &mut rng_for(seed, 0))
}

pub fn kinetic_sample_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SquareWalk {
    let mut tr = PrudentTracker::new();
    let mut steps = Vec::with_capacity(n);
    for _ in 0..n {
        let avail = available(&tr);
        // The endpoint always lies on the box border, so some step leaves the box.
        let s = avail[rng.gen_range(0..avail.len())];
        tr.push(s);
        steps.push(s);
    }
    SquareWalk::new(steps)
}

/// Probability of a prudent walk under the kinetic measure, `None` if not prudent.
pub fn kinetic_probability(w: &SquareWalk) -> Option<Rat> {
    let mut tr = PrudentTracker::new();
    let mut p = Rat::from_integer(1.into());
    for &s in &w.steps {
        let avail = available(&tr);
        if !avail.contains(&s) {
            return None;
        }
        p /= Rat::from_integer(Int::from(avail.len()));
        tr.push(s);
    }
    Some(p)
}
