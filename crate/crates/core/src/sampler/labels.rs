use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::WalkClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Root,
    V,
    H,
    I,
    C,
    F,
    Iv,
    Ih,
    A,
}

/// Generating-tree label. Which fields are meaningful depends on the class
/// and the kind; unused fields are zero. `s` is the last step (mod 4 on the
/// square lattice, mod 6 on the triangular one) and `d` a direction `+-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub kind: Kind,
    pub i: u32,
    pub j: u32,
    pub h: u32,
    pub s: u8,
    pub d: i8,
}

pub const ROOT: Label = Label { kind: Kind::Root, i: 0, j: 0, h: 0, s: 0, d: 0 };

impl Label {
    pub const fn new(kind: Kind, i: u32, j: u32, h: u32, s: u8, d: i8) -> Self {
        Label { kind, i, j, h, s, d }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; {},{},{} | {},{})", self.kind, self.i, self.j, self.h, self.s, self.d)
    }
}

/// Triangular rule step codes `c` correspond to lattice steps `TRI_STEP_CODE[c]`.
pub const TRI_STEP_CODE: [u8; 6] = [0, 5, 4, 3, 2, 1];

fn lab(kind: Kind, i: u32, j: u32, h: u32, s: i64, d: i8, modulus: i64) -> Label {
    Label::new(kind, i, j, h, s.rem_euclid(modulus) as u8, d)
}

/// `i d j`: `a` when `d = 1`, `b` when `d = -1`.
fn sel(d: i64, a: u32, b: u32) -> u32 {
    if d == 1 {
        a
    } else {
        b
    }
}

fn malformed(class: WalkClass, l: &Label) -> Error {
    Error::invalid(format!("label {l:?} is not a {class} label"))
}

fn check_d(class: WalkClass, l: &Label) -> Result<i64> {
    match l.d {
        1 | -1 => Ok(l.d as i64),
        _ => Err(malformed(class, l)),
    }
}

/// Children of the root, in rule order.
pub fn roots(class: WalkClass) -> Vec<Label> {
    use Kind::*;
    match class {
        WalkClass::OneSided => {
            vec![Label::new(V, 0, 0, 0, 0, 0), Label::new(H, 0, 0, 0, 1, 1), Label::new(H, 0, 0, 0, 3, -1)]
        }
        WalkClass::TwoSided => vec![
            Label::new(I, 0, 0, 0, 0, 0),
            Label::new(I, 0, 0, 0, 1, 0),
            Label::new(F, 1, 0, 0, 2, 0),
            Label::new(F, 1, 0, 0, 3, 0),
        ],
        WalkClass::ThreeSided => vec![
            Label::new(Ih, 0, 1, 0, 1, 0),
            Label::new(Ih, 0, 1, 0, 3, 0),
            Label::new(Iv, 0, 0, 0, 0, 0),
            Label::new(F, 1, 0, 0, 2, 1),
        ],
        WalkClass::Prudent4 => (0..4).map(|s| Label::new(I, 0, 0, 1, s, 0)).collect(),
        WalkClass::Triangular => [(0, -1), (1, 1), (2, -1), (3, 1), (4, -1), (5, 1)]
            .into_iter()
            .map(|(s, d)| Label::new(I, 0, 1, 0, s, d))
            .collect(),
    }
}

/// Refined rewriting rule on P-labels, children listed with multiplicity.
pub fn children(class: WalkClass, p: &Label) -> Result<Vec<Label>> {
    use Kind::*;
    if p.kind == Root {
        return Ok(roots(class));
    }
    let bad = || malformed(class, p);
    let (i, j, h) = (p.i, p.j, p.h);
    let s = p.s as i64;
    let mut r = Vec::with_capacity(5);
    match class {
        WalkClass::OneSided => match p.kind {
            V => r = roots(class),
            H => {
                check_d(class, p)?;
                r.push(Label::new(V, 0, 0, 0, 0, 0));
                r.push(*p);
            }
            _ => return Err(bad()),
        },
        WalkClass::TwoSided => {
            let m = |k, i, s: i64| lab(k, i, 0, 0, s, 0, 4);
            match p.kind {
                I => {
                    r.push(*p);
                    r.push(m(F, i + 1, 3 - s));
                    r.push(if i > 0 { m(C, i - 1, 1 - s) } else { m(I, 0, 1 - s) });
                }
                C => {
                    r.push(m(I, i, 1 - s));
                    r.push(if i > 0 { m(C, i - 1, s) } else { m(I, 0, s) });
                }
                F => {
                    r.push(m(I, i, 3 - s));
                    r.push(m(F, i + 1, s));
                }
                _ => return Err(bad()),
            }
        }
        WalkClass::ThreeSided => {
            let m = |k, i, j, s: i64, d| lab(k, i, j, 0, s, d, 4);
            match p.kind {
                Iv => {
                    r.push(*p);
                    if i > 0 {
                        r.push(m(A, i - 1, j + 1, 1, 0));
                    }
                    if j > 0 {
                        r.push(m(A, j - 1, i + 1, 3, 0));
                    }
                    if i == 0 {
                        r.push(m(Ih, 0, j + 1, 1, 0));
                    }
                    if j == 0 {
                        r.push(m(Ih, 0, i + 1, 3, 0));
                    }
                }
                Ih => {
                    if s != 1 && s != 3 {
                        return Err(bad());
                    }
                    let d = s - 2;
                    r.push(m(Ih, i, j + 1, s, 0));
                    r.push(m(F, i + 1, j, 2, (2 - s) as i8));
                    r.push(if i > 0 { m(C, i - 1, j, 0, d as i8) } else { m(Iv, sel(d, j, 0), sel(d, 0, j), 0, 0) });
                }
                A => {
                    if s != 1 && s != 3 {
                        return Err(bad());
                    }
                    let d = s - 2;
                    r.push(m(Iv, sel(d, j, i), sel(d, i, j), 0, 0));
                    r.push(if i > 0 { m(A, i - 1, j + 1, s, 0) } else { m(Ih, 0, j + 1, s, 0) });
                }
                C => {
                    let d = check_d(class, p)?;
                    r.push(m(Ih, i, j + 1, 2 + d, 0));
                    r.push(if i > 0 { m(C, i - 1, j, 0, d as i8) } else { m(Iv, sel(d, j, 0), sel(d, 0, j), 0, 0) });
                }
                F => {
                    let d = check_d(class, p)?;
                    r.push(m(F, i + 1, j, 2, d as i8));
                    r.push(m(Ih, i, j + 1, 2 - d, 0));
                    if j == 0 {
                        r.push(m(Ih, i, 1, 3, 0));
                    }
                }
                _ => return Err(bad()),
            }
        }
        WalkClass::Prudent4 => {
            let m = |k, i, j, h, s: i64, d| lab(k, i, j, h, s, d, 4);
            match p.kind {
                I => {
                    r.push(m(I, i, j, h + 1, s, 0));
                    if i > 0 {
                        r.push(m(A, i - 1, j + 1, h, s + 1, 1));
                    }
                    if j > 0 {
                        r.push(m(A, j - 1, i + 1, h, s - 1, -1));
                    }
                    if i == 0 {
                        r.push(m(I, h, 0, j + 1, s + 1, 0));
                    }
                    if j == 0 {
                        r.push(m(I, 0, h, i + 1, s - 1, 0));
                    }
                }
                A => {
                    let d = check_d(class, p)?;
                    r.push(m(I, sel(d, i, j), sel(d, j, i), h + 1, s - d, 0));
                    r.push(if i > 0 {
                        m(A, i - 1, j + 1, h, s, d as i8)
                    } else {
                        m(I, sel(d, h, 0), sel(d, 0, h), j + 1, s, 0)
                    });
                }
                _ => return Err(bad()),
            }
        }
        WalkClass::Triangular => {
            let d = check_d(class, p)?;
            let m = |k, i, j, s: i64, d: i64| lab(k, i, j, 0, s, d as i8, 6);
            match p.kind {
                I => {
                    if j == 0 {
                        return Err(bad());
                    }
                    r.push(m(I, i, j + 1, s, d));
                    r.push(m(I, j, i + 1, s - d, -d));
                    r.push(m(A, j - 1, i + 1, s - 2 * d, -d));
                    if i > 0 {
                        r.push(m(A, i - 1, j + 1, s + d, d));
                    } else {
                        r.push(m(I, 0, j + 1, s + d, -d));
                        r.push(m(I, j, 1, s + 2 * d, d));
                    }
                }
                A => {
                    r.push(m(I, i, j + 1, s - d, d));
                    r.push(m(I, j, i + 1, s - 2 * d, -d));
                    if i > 0 {
                        r.push(m(A, i - 1, j + 1, s, d));
                    } else {
                        r.push(m(I, 0, j + 1, s, -d));
                        r.push(m(I, j, 1, s + d, d));
                    }
                }
                _ => return Err(bad()),
            }
        }
    }
    Ok(r)
}

/// Last step `S(p)` encoded as a lattice step code.
pub fn last_step(class: WalkClass, p: &Label) -> u8 {
    match class {
        WalkClass::ThreeSided => match p.kind {
            Kind::Iv | Kind::C => 0,
            Kind::F => 2,
            _ => p.s,
        },
        WalkClass::Triangular => TRI_STEP_CODE[p.s as usize],
        _ => p.s,
    }
}

fn unordered(kind: Kind, a: u32, b: u32, h: u32) -> Label {
    Label::new(kind, a.min(b), a.max(b), h, 0, 0)
}

/// Projection of a P-label to its L-label.
pub fn project(class: WalkClass, p: &Label) -> Label {
    use Kind::*;
    match (class, p.kind) {
        (_, Root) => ROOT,
        (WalkClass::ThreeSided, Iv) | (WalkClass::Prudent4, I) => unordered(p.kind, p.i, p.j, p.h),
        _ => Label::new(p.kind, p.i, p.j, p.h, 0, 0),
    }
}

/// Rewriting rule on L-labels, written independently of the refined rule.
pub fn l_children(class: WalkClass, l: &Label) -> Result<Vec<Label>> {
    use Kind::*;
    if l.kind == Root {
        return Ok(roots(class).iter().map(|p| project(class, p)).collect());
    }
    let mk = |k, i, j| Label::new(k, i, j, 0, 0, 0);
    let (i, j, h) = (l.i, l.j, l.h);
    let mut r = Vec::with_capacity(5);
    match (class, l.kind) {
        (WalkClass::OneSided, V) => r.extend([mk(V, 0, 0), mk(H, 0, 0), mk(H, 0, 0)]),
        (WalkClass::OneSided, H) => r.extend([mk(V, 0, 0), mk(H, 0, 0)]),
        (WalkClass::TwoSided, I) => {
            r.extend([mk(I, i, 0), mk(F, i + 1, 0)]);
            r.push(if i > 0 { mk(C, i - 1, 0) } else { mk(I, 0, 0) });
        }
        (WalkClass::TwoSided, C) => {
            r.push(mk(I, i, 0));
            r.push(if i > 0 { mk(C, i - 1, 0) } else { mk(I, 0, 0) });
        }
        (WalkClass::TwoSided, F) => r.extend([mk(I, i, 0), mk(F, i + 1, 0)]),
        (WalkClass::ThreeSided, Iv) => {
            r.push(*l);
            if i > 0 {
                r.push(mk(A, i - 1, j + 1));
            }
            if j > 0 {
                r.push(mk(A, j - 1, i + 1));
            }
            if i == 0 {
                r.push(mk(Ih, 0, j + 1));
            }
            if j == 0 {
                r.push(mk(Ih, 0, i + 1));
            }
        }
        (WalkClass::ThreeSided, Ih) => {
            r.extend([mk(Ih, i, j + 1), mk(F, i + 1, j)]);
            r.push(if i > 0 { mk(C, i - 1, j) } else { unordered(Iv, 0, j, 0) });
        }
        (WalkClass::ThreeSided, A) => {
            r.push(unordered(Iv, i, j, 0));
            r.push(if i > 0 { mk(A, i - 1, j + 1) } else { mk(Ih, 0, j + 1) });
        }
        (WalkClass::ThreeSided, C) => {
            r.push(mk(Ih, i, j + 1));
            r.push(if i > 0 { mk(C, i - 1, j) } else { unordered(Iv, 0, j, 0) });
        }
        (WalkClass::ThreeSided, F) => {
            r.extend([mk(F, i + 1, j), mk(Ih, i, j + 1)]);
            if j == 0 {
                r.push(mk(Ih, i, 1));
            }
        }
        (WalkClass::Prudent4, I) => {
            r.push(unordered(I, i, j, h + 1));
            if i > 0 {
                r.push(Label::new(A, i - 1, j + 1, h, 0, 0));
            }
            if j > 0 {
                r.push(Label::new(A, j - 1, i + 1, h, 0, 0));
            }
            if i == 0 {
                r.push(unordered(I, h, 0, j + 1));
            }
            if j == 0 {
                r.push(unordered(I, 0, h, i + 1));
            }
        }
        (WalkClass::Prudent4, A) => {
            r.push(unordered(I, i, j, h + 1));
            r.push(if i > 0 { Label::new(A, i - 1, j + 1, h, 0, 0) } else { unordered(I, h, 0, j + 1) });
        }
        (WalkClass::Triangular, I) if j > 0 => {
            r.extend([mk(I, i, j + 1), mk(I, j, i + 1), mk(A, j - 1, i + 1)]);
            if i > 0 {
                r.push(mk(A, i - 1, j + 1));
            } else {
                r.extend([mk(I, 0, j + 1), mk(I, j, 1)]);
            }
        }
        (WalkClass::Triangular, A) => {
            r.extend([mk(I, i, j + 1), mk(I, j, i + 1)]);
            if i > 0 {
                r.push(mk(A, i - 1, j + 1));
            } else {
                r.extend([mk(I, 0, j + 1), mk(I, j, 1)]);
            }
        }
        _ => return Err(malformed(class, l)),
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sorted(mut v: Vec<Label>) -> Vec<Label> {
        v.sort();
        v
    }

    #[test]
    fn rule_examples() {
        let ls = |class, l: Label| sorted(l_children(class, &l).unwrap());
        let i0 = Label::new(Kind::I, 0, 0, 0, 0, 0);
        let f1 = Label::new(Kind::F, 1, 0, 0, 0, 0);
        assert_eq!(ls(WalkClass::TwoSided, i0), sorted(vec![i0, i0, f1]));
        let v = Label::new(Kind::V, 0, 0, 0, 0, 0);
        let h = Label::new(Kind::H, 0, 0, 0, 0, 0);
        assert_eq!(ls(WalkClass::OneSided, v), sorted(vec![v, h, h]));
        let tri = roots(WalkClass::Triangular);
        assert_eq!(tri.len(), 6);
        assert!(tri.iter().all(|l| l.kind == Kind::I && l.i == 0 && l.j == 1));
    }

    #[test]
    fn refinement_is_coherent() {
        for class in WalkClass::ALL {
            let mut seen = HashSet::new();
            let mut frontier = vec![ROOT];
            for _ in 0..9 {
                let mut next = Vec::new();
                for p in frontier {
                    if !seen.insert(p) {
                        continue;
                    }
                    let ch = children(class, &p).unwrap();
                    let proj = sorted(ch.iter().map(|c| project(class, c)).collect());
                    assert_eq!(proj, sorted(l_children(class, &project(class, &p)).unwrap()), "{class} {p:?}");
                    next.extend(ch);
                }
                frontier = next;
            }
        }
    }

    #[test]
    fn malformed_labels_are_rejected() {
        let bad = Label::new(Kind::V, 0, 0, 0, 0, 0);
        assert!(children(WalkClass::TwoSided, &bad).is_err());
        assert!(l_children(WalkClass::Prudent4, &bad).is_err());
        assert!(children(WalkClass::Triangular, &Label::new(Kind::I, 0, 1, 0, 0, 0)).is_err());
    }
}
