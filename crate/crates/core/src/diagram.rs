//! The diagram of curve systems on the four-punctured sphere.
//!
//! Vertices are the tangles `<p/q>` at `((q-1)/q, p/q)`, the circles
//! `<p/q>°` at `(1, p/q)` and the infinity tangle `<∞>` at `(-1, 0)`. Edges
//! join Farey neighbours (non-horizontal), a tangle to its circle
//! (horizontal), consecutive integers (vertical) and integers to `<∞>`.
//!
//! The graph is infinite and never materialised; adjacency is answered on
//! demand from determinants.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Tangle(Fraction),
    Circle(Fraction),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UvPoint {
    pub u: Fraction,
    pub v: Fraction,
}

impl UvPoint {
    pub fn new(u: Fraction, v: Fraction) -> Self {
        UvPoint { u, v }
    }
}

impl fmt::Display for UvPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Projective weights `[a, b, c]` of a curve system carried by the train
/// track, in least terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveSystem {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl CurveSystem {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 0 || b < 0 || (a == 0 && b == 0) {
            return Err(Error::InvalidKnot(format!(
                "[{a}, {b}, {c}] is not a projective curve system"
            )));
        }
        let g = a.gcd(&b).gcd(&c);
        Ok(CurveSystem {
            a: a / g,
            b: b / g,
            c: c / g,
        })
    }

    pub fn uv(&self) -> UvPoint {
        let total = self.a + self.b;
        UvPoint {
            u: Fraction::new(self.b, total).expect("a + b > 0"),
            v: Fraction::new(self.c, total).expect("a + b > 0"),
        }
    }
}

impl fmt::Display for CurveSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// An edge of the diagram, stored in the direction paths travel along it.
///
/// Non-horizontal edges go from the vertex with the larger denominator
/// (`right`) to the one with the smaller (`left`). Horizontal edges go from
/// the circle to the tangle. Vertical edges carry their own direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Edge {
    NonHorizontal { left: Fraction, right: Fraction },
    Horizontal(Fraction),
    Vertical { from: i64, to: i64 },
    Infinity(i64),
}

/// Sign of the change in `v` when an edge is traversed right to left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Upward,
    Downward,
    Level,
}

pub fn uv_of_vertex(v: Vertex) -> UvPoint {
    match v {
        Vertex::Infinity => UvPoint::new(Fraction::from_integer(-1), Fraction::ZERO),
        Vertex::Circle(s) => UvPoint::new(Fraction::ONE, s),
        Vertex::Tangle(s) => {
            let q = s.den();
            UvPoint::new(Fraction::new(q - 1, q).expect("q >= 1"), s)
        }
    }
}

/// `|ps - qr| == 1` for reduced `p/q`, `r/s`.
pub fn is_nonhorizontal_edge(x: Fraction, y: Fraction) -> bool {
    let det = x.num() as i128 * y.den() as i128 - x.den() as i128 * y.num() as i128;
    det.abs() == 1
}

/// Adjacency among tangle vertices and `<∞>` (which is `1/0` in Farey terms).
pub fn adjacent(x: Vertex, y: Vertex) -> bool {
    match (x, y) {
        (Vertex::Tangle(a), Vertex::Tangle(b)) => is_nonhorizontal_edge(a, b),
        (Vertex::Tangle(a), Vertex::Infinity) | (Vertex::Infinity, Vertex::Tangle(a)) => {
            a.is_integer()
        }
        (Vertex::Tangle(a), Vertex::Circle(b)) | (Vertex::Circle(b), Vertex::Tangle(a)) => a == b,
        _ => false,
    }
}

/// Whether three vertices span a triangle of the diagram.
pub fn is_triangle(x: Vertex, y: Vertex, z: Vertex) -> bool {
    adjacent(x, y) && adjacent(y, z) && adjacent(x, z)
}

/// The two Farey parents of `p/q` (`q >= 2`): the neighbours with smaller
/// denominator, lower one first.
pub fn farey_parents(x: Fraction) -> Option<(Fraction, Fraction)> {
    let (p, q) = (x.num(), x.den());
    if q < 2 {
        return None;
    }
    // p*s0 ≡ 1 (mod q)
    let eg = p.rem_euclid(q).extended_gcd(&q);
    let s0 = eg.x.rem_euclid(q);
    let r0 = (p as i128 * s0 as i128 - 1) / q as i128;
    let s1 = q - s0;
    let r1 = (p as i128 * s1 as i128 + 1) / q as i128;
    let a = Fraction::new(r0 as i64, s0).ok()?;
    let b = Fraction::new(r1 as i64, s1).ok()?;
    Some(if a < b { (a, b) } else { (b, a) })
}

/// Every edge leaving `<x>` towards non-increasing `u`.
pub fn left_neighbors(x: Fraction) -> Vec<Edge> {
    if x.is_integer() {
        let m = x.num();
        vec![
            Edge::Vertical { from: m, to: m - 1 },
            Edge::Vertical { from: m, to: m + 1 },
            Edge::Infinity(m),
        ]
    } else {
        let (lo, hi) = farey_parents(x).expect("non-integral");
        vec![
            Edge::NonHorizontal { left: lo, right: x },
            Edge::NonHorizontal { left: hi, right: x },
        ]
    }
}

impl Edge {
    /// Builds a non-horizontal edge from two Farey neighbours in either order.
    pub fn between(x: Fraction, y: Fraction) -> Result<Edge> {
        if !is_nonhorizontal_edge(x, y) {
            return Err(Error::InvalidKnot(format!(
                "<{x}> and <{y}> are not joined by an edge"
            )));
        }
        Ok(if x.den() <= y.den() {
            Edge::NonHorizontal { left: x, right: y }
        } else {
            Edge::NonHorizontal { left: y, right: x }
        })
    }

    /// The endpoint the edge is traversed from.
    pub fn source(&self) -> Vertex {
        match *self {
            Edge::NonHorizontal { right, .. } => Vertex::Tangle(right),
            Edge::Horizontal(s) => Vertex::Circle(s),
            Edge::Vertical { from, .. } => Vertex::Tangle(from.into()),
            Edge::Infinity(m) => Vertex::Tangle(m.into()),
        }
    }

    /// The endpoint the edge is traversed towards.
    pub fn target(&self) -> Vertex {
        match *self {
            Edge::NonHorizontal { left, .. } => Vertex::Tangle(left),
            Edge::Horizontal(s) => Vertex::Tangle(s),
            Edge::Vertical { to, .. } => Vertex::Tangle(to.into()),
            Edge::Infinity(_) => Vertex::Infinity,
        }
    }

    pub fn direction(&self) -> Direction {
        let (a, b) = (uv_of_vertex(self.source()).v, uv_of_vertex(self.target()).v);
        match b.cmp(&a) {
            std::cmp::Ordering::Greater => Direction::Upward,
            std::cmp::Ordering::Less => Direction::Downward,
            std::cmp::Ordering::Equal => Direction::Level,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Edge::Infinity(_))
    }

    /// The point reached after traversing the fraction `t` of the edge.
    ///
    /// Non-horizontal edges use the weighted sum of curve systems
    /// `t<left> + (1-t)<right>`; every other edge is linear in `uv`.
    pub fn point_at(&self, t: Fraction) -> UvPoint {
        match *self {
            Edge::NonHorizontal { left, right } => interpolate(left, right, t),
            _ => {
                let a = uv_of_vertex(self.source());
                let b = uv_of_vertex(self.target());
                UvPoint::new(a.u + t * (b.u - a.u), a.v + t * (b.v - a.v))
            }
        }
    }

    /// Inverse of [`Edge::point_at`] in the `u` coordinate.
    pub fn fraction_from_u(&self, u: Fraction) -> Result<Fraction> {
        let (ua, ub) = (uv_of_vertex(self.source()).u, uv_of_vertex(self.target()).u);
        let (lo, hi) = if ua <= ub { (ua, ub) } else { (ub, ua) };
        if u < lo || u > hi {
            return Err(Error::OutsideEdge {
                u: u.to_string(),
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        match *self {
            Edge::NonHorizontal { left, right } => {
                // u = (t(q-s) + s - 1) / (t(q-s) + s)  =>  t = (1 - s(1-u)) / ((q-s)(1-u))
                let q = Fraction::from_integer(left.den());
                let s = Fraction::from_integer(right.den());
                let w = Fraction::ONE - u;
                (Fraction::ONE - s * w).checked_div((q - s) * w)
            }
            Edge::Vertical { .. } => Err(Error::OutsideEdge {
                u: u.to_string(),
                lo: "vertical".into(),
                hi: "vertical".into(),
            }),
            _ => (u - ua).checked_div(ub - ua),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::NonHorizontal { left, right } => write!(f, "[<{left}>, <{right}>]"),
            Edge::Horizontal(s) => write!(f, "[<{s}>, <{s}>°]"),
            Edge::Vertical { from, to } => write!(f, "[<{to}>, <{from}>]"),
            Edge::Infinity(m) => write!(f, "[<∞>, <{m}>]"),
        }
    }
}

/// The point `t<p/q> + (1-t)<r/s>` on the non-horizontal edge joining
/// `left = p/q` and `right = r/s`.
pub fn interpolate(left: Fraction, right: Fraction, t: Fraction) -> UvPoint {
    let (p, q) = (
        Fraction::from_integer(left.num()),
        Fraction::from_integer(left.den()),
    );
    let (r, s) = (
        Fraction::from_integer(right.num()),
        Fraction::from_integer(right.den()),
    );
    let denom = t * (q - s) + s;
    UvPoint::new(
        (t * (q - s) + s - Fraction::ONE) / denom,
        (t * (p - r) + r) / denom,
    )
}

/// Where a rational point sits on the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Vertex(Vertex),
    /// Interior of an edge, `t` measured from the edge's source.
    OnEdge(Edge, Fraction),
}

/// Locates a rational point on the diagram, or `None` if it is off it.
pub fn locate(p: UvPoint) -> Option<Location> {
    let (u, v) = (p.u, p.v);
    let minus_one = Fraction::from_integer(-1);
    if u < minus_one || u > Fraction::ONE {
        return None;
    }
    if u == minus_one {
        return v.is_zero().then_some(Location::Vertex(Vertex::Infinity));
    }
    if u < Fraction::ZERO {
        // v = m(1 + u) on the edge from <m> to <∞>
        let m = v / (Fraction::ONE + u);
        return m
            .is_integer()
            .then(|| Location::OnEdge(Edge::Infinity(m.num()), -u));
    }
    if u == Fraction::ONE {
        return Some(Location::Vertex(Vertex::Circle(v)));
    }
    let vertex_u = uv_of_vertex(Vertex::Tangle(v)).u;
    if u == vertex_u {
        return Some(Location::Vertex(Vertex::Tangle(v)));
    }
    if u > vertex_u {
        let edge = Edge::Horizontal(v);
        let q = Fraction::from_integer(v.den());
        // u = 1 - t/q along the horizontal edge
        return Some(Location::OnEdge(edge, (Fraction::ONE - u) * q));
    }
    if u.is_zero() {
        let m = v.floor();
        return Some(Location::OnEdge(
            Edge::Vertical { from: m, to: m + 1 },
            v - m.into(),
        ));
    }
    // Write the point as (Q, P) = ((a+b)/a, c/a); it lies on the edge joining
    // Farey neighbours (q, p), (s, r) iff it is a convex combination of them.
    let big_q = Fraction::ONE / (Fraction::ONE - u);
    let big_p = v * big_q;
    let x = v;
    let (mut lo, mut hi) = (
        Fraction::from_integer(x.floor()),
        Fraction::from_integer(x.floor() + 1),
    );
    loop {
        let (q, pp) = (lo.den() as i128, lo.num() as i128);
        let (s, r) = (hi.den() as i128, hi.num() as i128);
        let det = q * r - pp * s;
        // (Q, P) = alpha (q, p) + beta (s, r)
        let alpha = (big_q * Fraction::from_integer(r as i64)
            - big_p * Fraction::from_integer(s as i64))
            / Fraction::from_integer(det as i64);
        let beta = (big_p * Fraction::from_integer(q as i64)
            - big_q * Fraction::from_integer(pp as i64))
            / Fraction::from_integer(det as i64);
        let sum = alpha + beta;
        if sum == Fraction::ONE && alpha >= Fraction::ZERO && beta >= Fraction::ZERO {
            let edge = Edge::between(lo, hi).ok()?;
            let weight_left = if lo.den() <= hi.den() { alpha } else { beta };
            return Some(Location::OnEdge(edge, weight_left));
        }
        if sum < Fraction::ONE {
            return None;
        }
        let mediant = Fraction::new(lo.num() + hi.num(), lo.den() + hi.den()).ok()?;
        match x.cmp(&mediant) {
            std::cmp::Ordering::Less => hi = mediant,
            std::cmp::Ordering::Greater => lo = mediant,
            std::cmp::Ordering::Equal => return None,
        }
    }
}

/// The projective curve system `[s(q-p), sp, rq]` at the point
/// `(p/q, r/s)`.
pub fn curve_system_at(p: UvPoint) -> Result<CurveSystem> {
    let off = || Error::NotOnDiagram {
        u: p.u.to_string(),
        v: p.v.to_string(),
    };
    if p.u < Fraction::ZERO {
        return Err(off());
    }
    locate(p).ok_or_else(off)?;
    let (pu, qu) = (p.u.num(), p.u.den());
    let (rv, sv) = (p.v.num(), p.v.den());
    let mul = |x: i64, y: i64| x.checked_mul(y).ok_or(Error::Overflow);
    CurveSystem::new(mul(sv, qu - pu)?, mul(sv, pu)?, mul(rv, qu)?)
}
