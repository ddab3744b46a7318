use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Square-lattice step, encoded `N=0, E=1, S=2, W=3` (clockwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::N, Step::E, Step::S, Step::W];

    pub fn from_code(c: u8) -> Step {
        Step::ALL[(c % 4) as usize]
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn vector(self) -> (i32, i32) {
        match self {
            Step::N => (0, 1),
            Step::E => (1, 0),
            Step::S => (0, -1),
            Step::W => (-1, 0),
        }
    }

    pub fn letter(self) -> char {
        ['N', 'E', 'S', 'W'][self as usize]
    }

    pub fn from_letter(c: char) -> Option<Step> {
        match c {
            'N' | 'n' => Some(Step::N),
            'E' | 'e' => Some(Step::E),
            'S' | 's' => Some(Step::S),
            'W' | 'w' => Some(Step::W),
            _ => None,
        }
    }
}

/// Bounding rectangle of a set of vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RectBox {
    pub x_min: i32,
    pub x_max: i32,
    pub y_min: i32,
    pub y_max: i32,
}

impl RectBox {
    pub fn point(x: i32, y: i32) -> Self {
        RectBox { x_min: x, x_max: x, y_min: y, y_max: y }
    }

    pub fn extend(&self, x: i32, y: i32) -> Self {
        RectBox {
            x_min: self.x_min.min(x),
            x_max: self.x_max.max(x),
            y_min: self.y_min.min(y),
            y_max: self.y_max.max(y),
        }
    }

    pub fn width(&self) -> i32 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> i32 {
        self.y_max - self.y_min
    }

    pub fn on_border(&self, x: i32, y: i32) -> bool {
        x == self.x_min || x == self.x_max || y == self.y_min || y == self.y_max
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareWalk {
    pub steps: Vec<Step>,
}

impl SquareWalk {
    pub fn new(steps: Vec<Step>) -> Self {
        SquareWalk { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertices visited, starting with the origin.
    pub fn vertices(&self) -> Vec<(i32, i32)> {
        let mut p = (0, 0);
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(p);
        for s in &self.steps {
            let (dx, dy) = s.vector();
            p = (p.0 + dx, p.1 + dy);
            out.push(p);
        }
        out
    }

    pub fn endpoint(&self) -> (i32, i32) {
        self.steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.vector();
            (x + dx, y + dy)
        })
    }

    pub fn bbox(&self) -> RectBox {
        self.vertices().into_iter().fold(RectBox::point(0, 0), |b, (x, y)| b.extend(x, y))
    }

    /// Distance from the endpoint to the NE corner of the box, measured
    /// along the border (meaningful for walks ending on the top or right edge).
    pub fn ne_distance(&self) -> i32 {
        let b = self.bbox();
        let (x, y) = self.endpoint();
        (b.x_max - x) + (b.y_max - y)
    }
}

impl fmt::Display for SquareWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for SquareWalk {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| Step::from_letter(c).ok_or_else(|| Error::Parse(format!("bad square step {c:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(SquareWalk::new)
    }
}

/// Incremental prudence checker: per row and column it keeps the extreme
/// visited coordinates, so a forward half-line test is O(1).
#[derive(Clone, Debug, Default)]
pub struct PrudentTracker {
    rows: FxHashMap<i32, (i32, i32)>,
    cols: FxHashMap<i32, (i32, i32)>,
    pos: (i32, i32),
}

impl PrudentTracker {
    pub fn new() -> Self {
        let mut t = PrudentTracker::default();
        t.visit((0, 0));
        t
    }

    fn visit(&mut self, (x, y): (i32, i32)) {
        let r = self.rows.entry(y).or_insert((x, x));
        r.0 = r.0.min(x);
        r.1 = r.1.max(x);
        let c = self.cols.entry(x).or_insert((y, y));
        c.0 = c.0.min(y);
        c.1 = c.1.max(y);
        self.pos = (x, y);
    }

    pub fn position(&self) -> (i32, i32) {
        self.pos
    }

    /// True iff no visited vertex lies strictly ahead of the current point in
    /// direction `s`.
    pub fn can_step(&self, s: Step) -> bool {
        let (x, y) = self.pos;
        match s {
            Step::N => self.cols.get(&x).is_none_or(|c| c.1 <= y),
            Step::S => self.cols.get(&x).is_none_or(|c| c.0 >= y),
            Step::E => self.rows.get(&y).is_none_or(|r| r.1 <= x),
            Step::W => self.rows.get(&y).is_none_or(|r| r.0 >= x),
        }
    }

    pub fn push(&mut self, s: Step) {
        let (dx, dy) = s.vector();
        self.visit((self.pos.0 + dx, self.pos.1 + dy));
    }
}

/// Prudence: no step points towards an already visited vertex.
pub fn is_prudent(w: &SquareWalk) -> bool {
    let mut t = PrudentTracker::new();
    for &s in &w.steps {
        if !t.can_step(s) {
            return false;
        }
        t.push(s);
    }
    true
}

/// Whether the moving point `(x2, y2)` (doubled coordinates) of the
/// instantaneous box `b2` lies on one of the first `k` allowed edges
/// (top, right, left).
pub(crate) fn on_allowed_edge(b2: &RectBox, x2: i32, y2: i32, k: u8) -> bool {
    let top = y2 == b2.y_max;
    let right = x2 == b2.x_max;
    let left = x2 == b2.x_min;
    match k {
        1 => top,
        2 => top || right,
        3 => top || right || left,
        _ => true,
    }
}

/// Edge condition of a step from `p` in direction `s`, given the box `b` of
/// the walk so far. Checks the segment midpoint and the endpoint against
/// their instantaneous boxes; the edge pattern is constant on the open segment.
pub(crate) fn k_sided_step_ok(b: &RectBox, p: (i32, i32), s: Step, k: u8) -> bool {
    if k >= 4 {
        return true;
    }
    let (dx, dy) = s.vector();
    let b2 = RectBox { x_min: 2 * b.x_min, x_max: 2 * b.x_max, y_min: 2 * b.y_min, y_max: 2 * b.y_max };
    [1, 2].iter().all(|&tau| {
        let (mx, my) = (2 * p.0 + tau * dx, 2 * p.1 + tau * dy);
        on_allowed_edge(&b2.extend(mx, my), mx, my, k)
    })
}

/// `k`-sidedness for `k` in 1..=3 under the continuous-time reading; `k = 4`
/// means plain prudence. Other `k` return false.
pub fn is_k_sided(w: &SquareWalk, k: u8) -> bool {
    if !(1..=4).contains(&k) {
        return false;
    }
    let mut t = PrudentTracker::new();
    let mut b = RectBox::point(0, 0);
    for &s in &w.steps {
        let p = t.position();
        if !t.can_step(s) || !k_sided_step_ok(&b, p, s, k) {
            return false;
        }
        t.push(s);
        let q = t.position();
        b = b.extend(q.0, q.1);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SquareWalk {
        s.parse().unwrap()
    }

    #[test]
    fn prudence_examples() {
        assert!(is_prudent(&w("NES")));
        assert!(!is_prudent(&w("NESW")));
        assert!(is_prudent(&w("")));
        assert!(!is_prudent(&w("NS")));
    }

    #[test]
    fn sidedness_examples() {
        assert!(!is_k_sided(&w("ESW"), 3));
        assert!(is_k_sided(&w("ESW"), 4));
        assert!(is_k_sided(&w("EN"), 1));
        assert!(is_k_sided(&w("S"), 2));
        assert!(!is_k_sided(&w("S"), 1));
        assert!(!is_k_sided(&w("N"), 0));
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(w("NESW").to_string(), "NESW");
        assert!("NXE".parse::<SquareWalk>().is_err());
        assert_eq!(w("NES").bbox(), RectBox { x_min: 0, x_max: 1, y_min: 0, y_max: 1 });
        assert_eq!(w("NES").endpoint(), (1, 0));
    }
}
