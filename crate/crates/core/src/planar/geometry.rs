//! Plane predicates for the unit-disk formulation: circle intersections,
//! arc turns and the fan-piece voter test.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Geometric slack in unit-radius coordinates.
pub const GEOM_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pt {
    pub x: f64,
    pub y: f64,
}

impl Pt {
    pub const fn new(x: f64, y: f64) -> Self {
        Pt { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Pt) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl From<[f64; 2]> for Pt {
    fn from(a: [f64; 2]) -> Self {
        Pt::new(a[0], a[1])
    }
}

impl From<Pt> for [f64; 2] {
    fn from(p: Pt) -> Self {
        [p.x, p.y]
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        Pt::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        Pt::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Pt {
    type Output = Pt;
    fn mul(self, s: f64) -> Pt {
        Pt::new(self.x * s, self.y * s)
    }
}

#[inline]
pub fn cross(a: Pt, b: Pt) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Twice the signed area of (o, a, b); positive for a left turn.
#[inline]
pub fn orient(o: Pt, a: Pt, b: Pt) -> f64 {
    cross(a - o, b - o)
}

/// The two crossing points of the radius-`r` circles around `a` and `b`,
/// the one left of the directed line a->b first. Tangent, coincident or
/// disjoint circles (within tolerance) are reported as degenerate.
pub fn circle_pair_points(a: [f64; 2], b: [f64; 2], r: f64) -> Result<[[f64; 2]; 2]> {
    let (pa, pb) = (Pt::from(a), Pt::from(b));
    let d = pa.dist(pb);
    if d <= GEOM_EPS * r {
        return Err(Error::Degenerate("coincident circle centers".into()));
    }
    if d >= 2.0 * r * (1.0 - GEOM_EPS) {
        return Err(Error::Degenerate(format!(
            "circles are tangent or disjoint (center distance {d}, radius {r})"
        )));
    }
    let [l, rt] = crossing_points(pa, pb, r);
    Ok([l.into(), rt.into()])
}

/// Unchecked crossing points; caller guarantees `0 < |a - b| < 2r`.
pub(crate) fn crossing_points(a: Pt, b: Pt, r: f64) -> [Pt; 2] {
    let d = a.dist(b);
    let mid = (a + b) * 0.5;
    let h = (r * r - d * d / 4.0).max(0.0).sqrt();
    let u = (b - a) * (1.0 / d);
    let left = Pt::new(-u.y, u.x);
    [mid + left * h, mid + left * (-h)]
}

/// Whether the boundary, traversed clockwise, makes a convex ("right") turn
/// at `p` when it arrives on the circle around `incoming` and leaves on the
/// circle around `outgoing`.
///
/// Both arcs run clockwise about their centers. The turn is convex iff the
/// outgoing arc starts inside the tangent halfplane of the incoming disk at
/// `p` (equivalently the incoming arc ends inside the outgoing one's), which
/// reduces to the sign of `(p - outgoing) x (p - incoming)`.
pub fn right_turn(p: [f64; 2], incoming: [f64; 2], outgoing: [f64; 2]) -> Result<bool> {
    let (p, ci, co) = (Pt::from(p), Pt::from(incoming), Pt::from(outgoing));
    if ci.dist(co) <= GEOM_EPS {
        return Err(Error::Degenerate(
            "consecutive arcs must lie on distinct circles".into(),
        ));
    }
    Ok(turn_value(p, ci, co) > GEOM_EPS)
}

#[inline]
pub(crate) fn turn_value(p: Pt, incoming: Pt, outgoing: Pt) -> f64 {
    cross(p - outgoing, p - incoming)
}

/// Clockwise angular span from `from` to `to` on a circle, in [0, 2pi).
#[inline]
pub(crate) fn clockwise_span(angle_from: f64, angle_to: f64) -> f64 {
    (angle_from - angle_to).rem_euclid(std::f64::consts::TAU)
}

/// Closed fan piece test in unit-radius coordinates: the cap cut off by the
/// chord `y -> p` of the clockwise arc, plus the triangle `(apex, y, p)`
/// when the apex is a distinct corner. The apex must lie strictly right of
/// the chord; a collinear apex is reported as degenerate.
pub(crate) fn in_fan_piece(apex: Option<Pt>, y: Pt, p: Pt, v: Pt) -> Result<bool> {
    let side = orient(y, p, v);
    if side >= -GEOM_EPS {
        return Ok(true);
    }
    let Some(x) = apex else {
        return Ok(false);
    };
    let ax = orient(y, p, x);
    if ax > -GEOM_EPS {
        return Err(Error::Degenerate(
            "region corner is collinear with (or left of) the arc chord".into(),
        ));
    }
    Ok(orient(p, x, v) <= GEOM_EPS && orient(x, y, v) <= GEOM_EPS)
}

/// Whether any voter lies in the closed region bounded by segments `x y`,
/// `x p` and the minor arc of the radius-`t` circle around `center` running
/// clockwise from `y` to `p`, while being strictly inside that circle.
/// Voters at distance exactly `t` from `center` sit on the arc and do not
/// count. Pass `x == y` (or `x == p`) for a bare arc cap.
pub fn region_contains_voter(
    x: [f64; 2],
    y: [f64; 2],
    p: [f64; 2],
    center: [f64; 2],
    t: f64,
    voters: &[[f64; 2]],
) -> Result<bool> {
    let (x, y, p, c) = (Pt::from(x), Pt::from(y), Pt::from(p), Pt::from(center));
    let apex = if x.dist(y) <= GEOM_EPS * t || x.dist(p) <= GEOM_EPS * t {
        None
    } else {
        Some(x)
    };
    // circumscribing-disk rejection: every point of the region lies within
    // t of the center
    for &v in voters {
        let v = Pt::from(v);
        let d = v.dist(c);
        if !crate::metric::approx_ge(d, t) && in_fan_piece(apex, y, p, v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_lens() {
        let s2 = 2f64.sqrt();
        let [a, b] = circle_pair_points([0.0, 0.0], [2.0, 0.0], s2).unwrap();
        assert!((a[0] - 1.0).abs() < 1e-12 && (a[1] - 1.0).abs() < 1e-12);
        assert!((b[0] - 1.0).abs() < 1e-12 && (b[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn tangency_is_degenerate() {
        assert!(matches!(
            circle_pair_points([0.0, 0.0], [2.0, 0.0], 1.0),
            Err(Error::Degenerate(_))
        ));
        assert!(circle_pair_points([0.0, 0.0], [0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn lens_turns() {
        // lens of unit circles around (0,0) and (1,0); clockwise traversal
        // goes down the right side (circle 0), then up the left (circle 1)
        let [top, bottom] = circle_pair_points([0.0, 0.0], [1.0, 0.0], 1.0).unwrap();
        assert!(top[1] > 0.0 && bottom[1] < 0.0);
        assert!(right_turn(bottom, [0.0, 0.0], [1.0, 0.0]).unwrap());
        assert!(right_turn(top, [1.0, 0.0], [0.0, 0.0]).unwrap());
        // counter-clockwise traversal of the same tips
        assert!(!right_turn(bottom, [1.0, 0.0], [0.0, 0.0]).unwrap());
        assert!(!right_turn(top, [0.0, 0.0], [1.0, 0.0]).unwrap());
        assert!(right_turn(top, [0.0, 0.0], [0.0, 0.0]).is_err());
    }

    #[test]
    fn clockwise_spans() {
        use std::f64::consts::PI;
        assert!((clockwise_span(PI / 2.0, 0.0) - PI / 2.0).abs() < 1e-15);
        assert!((clockwise_span(0.0, PI / 2.0) - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn far_voter_rejected() {
        let c = [0.0, 0.0];
        let (y, p) = ([0.0, 1.0], [1.0, 0.0]);
        let x = [-0.5, -0.5];
        assert!(!region_contains_voter(x, y, p, c, 1.0, &[[5.0, 5.0]]).unwrap());
    }

    #[test]
    fn centroid_is_inside() {
        let c = [0.0, 0.0];
        let (y, p) = ([0.0, 1.0], [1.0, 0.0]);
        let x = [-0.6, -0.6];
        let g = [(x[0] + y[0] + p[0]) / 3.0, (x[1] + y[1] + p[1]) / 3.0];
        assert!(region_contains_voter(x, y, p, c, 1.0, &[g]).unwrap());
    }

    #[test]
    fn voter_on_arc_does_not_count() {
        let c = [0.0, 0.0];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(!region_contains_voter([0.0, 1.0], [0.0, 1.0], [1.0, 0.0], c, 1.0, &[[h, h]]).unwrap());
    }

    #[test]
    fn collinear_corner_is_degenerate() {
        let r = region_contains_voter([2.0, -1.0], [0.0, 1.0], [1.0, 0.0], [0.0, 0.0], 1.0, &[[0.1, 0.1]]);
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }
}
