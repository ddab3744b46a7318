use num_bigint::BigUint;
use num_traits::One;
use rustc_hash::FxHashSet;

use super::labels::{l_children, Label, ROOT};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::WalkClass;

/// Default memory budget for extension tables: 2 GiB.
pub const DEFAULT_BUDGET_BYTES: u64 = 2 << 30;

/// An L-rewriting rule: the multiset of children of a label.
pub type Rule = dyn Fn(&Label) -> Result<Vec<Label>> + Sync;

/// Labels reachable at one depth with their extension numbers for the
/// corresponding remaining length, sorted by label.
#[derive(Clone, Debug, Default)]
struct Slab {
    labels: Vec<Label>,
    values: Vec<BigUint>,
}

impl Slab {
    fn get(&self, l: &Label) -> Option<&BigUint> {
        self.labels.binary_search(l).ok().map(|k| &self.values[k])
    }
}

/// Extension numbers `Ex(l, m)` for every label reachable while generating
/// walks of length `n`; `slabs[m]` holds the labels at depth `n - m`.
#[derive(Clone, Debug)]
pub struct ExtTable {
    class: WalkClass,
    n: usize,
    slabs: Vec<Slab>,
}

/// Upper bound on the number of children of any label.
fn max_children(class: WalkClass) -> u32 {
    match class {
        WalkClass::OneSided => 3,
        WalkClass::TwoSided | WalkClass::ThreeSided | WalkClass::Prudent4 => 4,
        WalkClass::Triangular => 6,
    }
}

/// Bytes needed to store `count` labels with values of at most `bits` bits.
fn slab_bytes(count: usize, bits: u64) -> u64 {
    let per = std::mem::size_of::<Label>() + std::mem::size_of::<BigUint>();
    count as u64 * (per as u64 + bits.div_ceil(64) * 8)
}

fn value_bits(class: WalkClass, m: usize) -> u64 {
    (m as u64 * (32 - max_children(class).leading_zeros()) as u64).max(1)
}

/// Breadth-first label sets by depth, aborting once the projected table size exceeds `budget`.
fn reachable(class: WalkClass, n: usize, exec: Execution, budget: u64, rule: &Rule) -> Result<Vec<Vec<Label>>> {
    let mut depths = vec![vec![ROOT]];
    let mut bytes = slab_bytes(1, value_bits(class, n));
    for d in 1..=n {
        let prev = &depths[d - 1];
        let chunks: Vec<&[Label]> = prev.chunks(4096).collect();
        let parts = exec.map(chunks, |chunk| -> Result<FxHashSet<Label>> {
            let mut set = FxHashSet::default();
            for l in chunk {
                set.extend(rule(l)?);
            }
            Ok(set)
        });
        let mut set = FxHashSet::default();
        for p in parts {
            set.extend(p?);
        }
        let mut layer: Vec<Label> = set.into_iter().collect();
        layer.sort_unstable();
        bytes += slab_bytes(layer.len(), value_bits(class, n - d));
        if bytes > budget {
            return Err(Error::Budget {
                estimated_bytes: estimate_from(class, n, d, &layer, bytes),
                budget_bytes: budget,
            });
        }
        depths.push(layer);
    }
    Ok(depths)
}

/// Extrapolates the table size from a partial breadth-first pass: later
/// layers are assumed at least as large as the last one computed.
fn estimate_from(class: WalkClass, n: usize, d: usize, layer: &[Label], bytes: u64) -> u64 {
    (d + 1..=n).fold(bytes, |acc, k| acc.saturating_add(slab_bytes(layer.len(), value_bits(class, n - k))))
}

/// Estimated table size in bytes for `(class, n)`, from a breadth-first pass over labels.
pub fn estimate_bytes(class: WalkClass, n: usize, exec: Execution) -> Result<u64> {
    let depths = reachable(class, n, exec, u64::MAX, &move |l: &Label| l_children(class, l))?;
    Ok(depths.iter().enumerate().map(|(d, l)| slab_bytes(l.len(), value_bits(class, n - d))).sum())
}

impl ExtTable {
    pub fn build(class: WalkClass, n: usize) -> Result<Self> {
        Self::build_with(class, n, Execution::default(), DEFAULT_BUDGET_BYTES)
    }

    /// Builds the table; fails with [`Error::Budget`] when the estimate exceeds `budget_bytes`.
    pub fn build_with(class: WalkClass, n: usize, exec: Execution, budget_bytes: u64) -> Result<Self> {
        Self::build_with_rule(class, n, exec, budget_bytes, &move |l: &Label| l_children(class, l))
    }

    /// Builds the table from an arbitrary L-rule, e.g. a deliberately altered one.
    /// Sampling from such a table is only meaningful if the P-rule projects onto `rule`.
    pub fn build_with_rule(
        class: WalkClass,
        n: usize,
        exec: Execution,
        budget_bytes: u64,
        rule: &Rule,
    ) -> Result<Self> {
        let depths = reachable(class, n, exec, budget_bytes, rule)?;
        let mut slabs: Vec<Slab> = Vec::with_capacity(n + 1);
        for (m, labels) in depths.into_iter().rev().enumerate() {
            let values = if m == 0 {
                vec![BigUint::one(); labels.len()]
            } else {
                let below = &slabs[m - 1];
                let chunks: Vec<&[Label]> = labels.chunks(1024).collect();
                let parts = exec.map(chunks, |chunk| -> Result<Vec<BigUint>> {
                    chunk
                        .iter()
                        .map(|l| {
                            let mut acc = BigUint::default();
                            for c in rule(l)? {
                                acc += below.get(&c).ok_or_else(|| Error::invalid("unreachable child label"))?;
                            }
                            Ok(acc)
                        })
                        .collect()
                });
                let mut v = Vec::with_capacity(labels.len());
                for p in parts {
                    v.extend(p?);
                }
                v
            };
            slabs.push(Slab { labels, values });
        }
        Ok(ExtTable { class, n, slabs })
    }

    pub fn class(&self) -> WalkClass {
        self.class
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of stored `(label, m)` entries.
    pub fn entries(&self) -> usize {
        self.slabs.iter().map(|s| s.labels.len()).sum()
    }

    /// `Ex(l, m)` for an L-label reachable at depth `n - m`.
    pub fn ex(&self, l: &Label, m: usize) -> Option<&BigUint> {
        self.slabs.get(m)?.get(l)
    }

    /// Number of walks of length `n`: `Ex(root, n)`.
    pub fn total(&self) -> &BigUint {
        &self.slabs[self.n].values[0]
    }

    /// Labels stored for remaining length `m`.
    pub fn labels(&self, m: usize) -> &[Label] {
        self.slabs.get(m).map_or(&[], |s| &s.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::length_series;
    use crate::sampler::labels::Kind;

    #[test]
    fn two_sided_small_tables() {
        let t = ExtTable::build(WalkClass::TwoSided, 2).unwrap();
        let i0 = Label::new(Kind::I, 0, 0, 0, 0, 0);
        let f1 = Label::new(Kind::F, 1, 0, 0, 0, 0);
        assert_eq!(t.ex(&i0, 1), Some(&BigUint::from(3u32)));
        assert_eq!(t.ex(&f1, 1), Some(&BigUint::from(2u32)));
        assert_eq!(t.total(), &BigUint::from(10u32));
        assert_eq!(ExtTable::build(WalkClass::TwoSided, 3).unwrap().total(), &BigUint::from(26u32));
    }

    #[test]
    fn totals_match_iteration() {
        for class in WalkClass::ALL {
            let s = length_series(class, 12).unwrap();
            for n in 0..=12 {
                let t = ExtTable::build(class, n).unwrap();
                assert_eq!(t.total(), &s.coeff(n).to_biguint().unwrap(), "{class} {n}");
            }
        }
    }

    #[test]
    fn sequential_equals_parallel() {
        let a = ExtTable::build_with(WalkClass::Prudent4, 14, Execution::Sequential, u64::MAX).unwrap();
        let b = ExtTable::build_with(WalkClass::Prudent4, 14, Execution::Parallel, u64::MAX).unwrap();
        assert_eq!(a.total(), b.total());
        assert_eq!(a.entries(), b.entries());
    }

    #[test]
    fn budget_is_enforced() {
        let est = estimate_bytes(WalkClass::Prudent4, 30, Execution::default()).unwrap();
        match ExtTable::build_with(WalkClass::Prudent4, 30, Execution::default(), est / 4) {
            Err(Error::Budget { estimated_bytes, budget_bytes }) => {
                assert_eq!(budget_bytes, est / 4);
                assert!(estimated_bytes > budget_bytes);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(ExtTable::build_with(WalkClass::Prudent4, 30, Execution::default(), est).is_ok());
    }
}
