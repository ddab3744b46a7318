use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};

/// Triangular-lattice step, encoded clockwise from NW:
/// `NW=0, NE=1, E=2, SE=3, SW=4, W=5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriStep {
    NW = 0,
    NE = 1,
    E = 2,
    SE = 3,
    SW = 4,
    W = 5,
}

impl TriStep {
    pub const ALL: [TriStep; 6] = [TriStep::NW, TriStep::NE, TriStep::E, TriStep::SE, TriStep::SW, TriStep::W];

    pub fn from_code(c: u8) -> TriStep {
        TriStep::ALL[(c % 6) as usize]
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    /// Lattice vector with `E=(1,0)`, `NE=(0,1)`, `NW=(-1,1)`.
    pub fn vector(self) -> (i32, i32) {
        match self {
            TriStep::NW => (-1, 1),
            TriStep::NE => (0, 1),
            TriStep::E => (1, 0),
            TriStep::SE => (1, -1),
            TriStep::SW => (0, -1),
            TriStep::W => (-1, 0),
        }
    }
}

/// North-pointing triangle `x >= x_min, y >= y_min, x + y <= s_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriBox {
    pub x_min: i32,
    pub y_min: i32,
    pub s_max: i32,
}

impl TriBox {
    pub fn point(x: i32, y: i32) -> Self {
        TriBox { x_min: x, y_min: y, s_max: x + y }
    }

    pub fn extend(&self, x: i32, y: i32) -> Self {
        TriBox { x_min: self.x_min.min(x), y_min: self.y_min.min(y), s_max: self.s_max.max(x + y) }
    }

    pub fn size(&self) -> i32 {
        self.s_max - self.x_min - self.y_min
    }

    /// Edge membership bits: 1 = left (`x = x_min`), 2 = bottom, 4 = right.
    pub fn edges(&self, x: i32, y: i32) -> u8 {
        (x == self.x_min) as u8 | ((y == self.y_min) as u8) << 1 | ((x + y == self.s_max) as u8) << 2
    }

    pub fn on_border(&self, x: i32, y: i32) -> bool {
        self.edges(x, y) != 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriWalk {
    pub steps: Vec<TriStep>,
}

impl TriWalk {
    pub fn new(steps: Vec<TriStep>) -> Self {
        TriWalk { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertices(&self) -> Vec<(i32, i32)> {
        let mut p = (0, 0);
        let mut out = vec![p];
        for s in &self.steps {
            let (dx, dy) = s.vector();
            p = (p.0 + dx, p.1 + dy);
            out.push(p);
        }
        out
    }

    pub fn endpoint(&self) -> (i32, i32) {
        *self.vertices().last().unwrap()
    }

    pub fn bbox(&self) -> TriBox {
        self.vertices().into_iter().fold(TriBox::point(0, 0), |b, (x, y)| b.extend(x, y))
    }
}

impl fmt::Display for TriWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.code())?;
        }
        Ok(())
    }
}

impl FromStr for TriWalk {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d < 6 => Ok(TriStep::from_code(d as u8)),
                _ => Err(Error::Parse(format!("bad triangular step {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(TriWalk::new)
    }
}

/// Whether a step from `p` in direction `s` is allowed: it either inflates
/// the box, or stays on one edge of the unchanged box with a clear forward
/// half-line. Returns the new box.
pub(crate) fn tri_step(
    visited: &FxHashSet<(i32, i32)>,
    b: &TriBox,
    p: (i32, i32),
    s: TriStep,
    reach: i32,
) -> Option<TriBox> {
    let (dx, dy) = s.vector();
    let q = (p.0 + dx, p.1 + dy);
    let nb = b.extend(q.0, q.1);
    if nb != *b {
        return Some(nb);
    }
    if b.edges(p.0, p.1) & b.edges(q.0, q.1) == 0 {
        return None;
    }
    let clear = (1..=reach).all(|k| !visited.contains(&(p.0 + k * dx, p.1 + k * dy)));
    clear.then_some(nb)
}

/// Triangular prudence.
pub fn is_triangular_prudent(w: &TriWalk) -> bool {
    let mut visited = FxHashSet::default();
    visited.insert((0, 0));
    let mut b = TriBox::point(0, 0);
    let mut p = (0, 0);
    for &s in &w.steps {
        // every visited vertex lies inside the box, so the ray beyond the
        // box size cannot hit one
        match tri_step(&visited, &b, p, s, b.size() + 1) {
            Some(nb) => b = nb,
            None => return false,
        }
        let (dx, dy) = s.vector();
        p = (p.0 + dx, p.1 + dy);
        if !visited.insert(p) {
            return false;
        }
    }
    true
}
