use crate::numtheory::{ceil_div, ext_gcd, floor_div};

/// Closed integer rectangle `[x0, x1] × [y0, y1]`; empty when reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
}

impl Rect {
    pub fn is_empty(&self) -> bool {
        self.x0 > self.x1 || self.y0 > self.y1
    }

    pub fn area(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            ((self.x1 - self.x0 + 1) * (self.y1 - self.y0 + 1)) as u64
        }
    }
}

/// `j` with `lo ≤ base + step·j ≤ hi`, as an inclusive range; `step ≠ 0`.
fn affine_range(lo: i128, hi: i128, base: i128, step: i128) -> (i128, i128) {
    if step > 0 {
        (ceil_div(lo - base, step), floor_div(hi - base, step))
    } else {
        (ceil_div(base - hi, -step), floor_div(base - lo, -step))
    }
}

/// Solver for `a·x + b·y = c` over a rectangle, reusable across right sides.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LineSolver {
    a: i128,
    b: i128,
    g: i128,
    s: i128,
    t: i128,
}

impl LineSolver {
    pub(crate) fn new(a: i64, b: i64) -> Self {
        let (g, s, t) = ext_gcd(a as i128, b as i128);
        LineSolver {
            a: a as i128,
            b: b as i128,
            g,
            s,
            t,
        }
    }

    pub(crate) fn count(&self, c: i64, r: &Rect) -> u64 {
        if r.is_empty() {
            return 0;
        }
        let c = c as i128;
        let (a, b) = (self.a, self.b);
        if a == 0 && b == 0 {
            return if c == 0 { r.area() } else { 0 };
        }
        if c % self.g != 0 {
            return 0;
        }
        let k = c / self.g;
        // x = x* + (b/g) j, y = y* − (a/g) j
        let (x0, y0) = (self.s * k, self.t * k);
        let (da, db) = (a / self.g, b / self.g);
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        if db == 0 {
            if x0 < r.x0 as i128 || x0 > r.x1 as i128 {
                return 0;
            }
        } else {
            let (l, h) = affine_range(r.x0 as i128, r.x1 as i128, x0, db);
            lo = lo.max(l);
            hi = hi.min(h);
        }
        if da == 0 {
            if y0 < r.y0 as i128 || y0 > r.y1 as i128 {
                return 0;
            }
        } else {
            let (l, h) = affine_range(r.y0 as i128, r.y1 as i128, y0, -da);
            lo = lo.max(l);
            hi = hi.min(h);
        }
        if lo > hi {
            0
        } else {
            (hi - lo + 1) as u64
        }
    }
}

/// `#{(x, y) ∈ r : a·x + b·y = c}`.
pub fn count_line_points(a: i64, b: i64, c: i64, r: &Rect) -> u64 {
    LineSolver::new(a, b).count(c, r)
}

/// `#{v ∈ [lo, hi] ⊂ Z³ : n·v = 0}`, one line count per first coordinate.
pub fn count_plane_points(normal: [i64; 3], lo: [i64; 3], hi: [i64; 3]) -> u64 {
    let solver = LineSolver::new(normal[1], normal[2]);
    let rect = Rect {
        x0: lo[1],
        x1: hi[1],
        y0: lo[2],
        y1: hi[2],
    };
    if normal[0] == 0 {
        let per = solver.count(0, &rect);
        return if lo[0] <= hi[0] { per * (hi[0] - lo[0] + 1) as u64 } else { 0 };
    }
    (lo[0]..=hi[0]).map(|x| solver.count(-normal[0] * x, &rect)).sum()
}
