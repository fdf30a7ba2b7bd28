//! Edgepaths, edgepath systems and the admissibility conditions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{is_triangle, uv_of_vertex, Direction, Edge, UvPoint, Vertex};
use crate::error::{Error, Result};
use crate::numerics::Fraction;

/// A traversal of part of one edge, from fraction `start` to fraction `end`
/// measured from the edge's source. A full traversal is `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub edge: Edge,
    pub start: Fraction,
    pub end: Fraction,
}

impl Segment {
    pub fn full(edge: Edge) -> Self {
        Segment {
            edge,
            start: Fraction::ZERO,
            end: Fraction::ONE,
        }
    }

    pub fn start_point(&self) -> UvPoint {
        self.edge.point_at(self.start)
    }

    pub fn end_point(&self) -> UvPoint {
        self.edge.point_at(self.end)
    }

    /// Counted edge length; horizontal edges contribute nothing.
    pub fn length(&self) -> Fraction {
        match self.edge {
            Edge::Horizontal(_) => Fraction::ZERO,
            _ => self.end - self.start,
        }
    }

    pub fn direction(&self) -> Direction {
        self.edge.direction()
    }
}

/// One tangle's path in the diagram. Segments run from the starting point
/// leftwards; a constant path is a single zero-length horizontal segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edgepath {
    pub tangle: Fraction,
    pub segments: Vec<Segment>,
}

/// Leftward edge from `a` to `b`, if there is one.
pub fn edge_between(a: Vertex, b: Vertex) -> Option<Edge> {
    match (a, b) {
        (Vertex::Tangle(x), Vertex::Tangle(y)) => {
            if x.is_integer() && y.is_integer() && (x.num() - y.num()).abs() == 1 {
                Some(Edge::Vertical {
                    from: x.num(),
                    to: y.num(),
                })
            } else if y.den() < x.den() {
                Edge::between(x, y).ok()
            } else {
                None
            }
        }
        (Vertex::Tangle(x), Vertex::Infinity) if x.is_integer() => Some(Edge::Infinity(x.num())),
        (Vertex::Circle(x), Vertex::Tangle(y)) if x == y => Some(Edge::Horizontal(x)),
        _ => None,
    }
}

impl Edgepath {
    /// The path sitting still at `u` on the horizontal edge of `tangle`.
    pub fn constant(tangle: Fraction, u: Fraction) -> Self {
        let q = Fraction::from_integer(tangle.den());
        let t = (Fraction::ONE - u) * q;
        Edgepath {
            tangle,
            segments: vec![Segment {
                edge: Edge::Horizontal(tangle),
                start: t,
                end: t,
            }],
        }
    }

    /// Walks full edges through `vertices` (which must start at the tangle)
    /// and then `last` of the final edge.
    pub fn through(vertices: &[Vertex], last: Fraction) -> Result<Self> {
        let tangle = match vertices.first() {
            Some(Vertex::Tangle(t)) => *t,
            _ => {
                return Err(Error::InvalidKnot(
                    "edgepath must start at a tangle vertex".into(),
                ))
            }
        };
        if vertices.len() == 1 {
            return Ok(Edgepath::constant(tangle, uv_of_vertex(vertices[0]).u));
        }
        let mut segments = Vec::with_capacity(vertices.len() - 1);
        for w in vertices.windows(2) {
            let edge = edge_between(w[0], w[1]).ok_or_else(|| {
                Error::InvalidKnot(format!("no leftward edge from {:?} to {:?}", w[0], w[1]))
            })?;
            segments.push(Segment::full(edge));
        }
        segments.last_mut().expect("nonempty").end = last;
        Ok(Edgepath { tangle, segments })
    }

    pub fn is_constant(&self) -> bool {
        self.segments
            .iter()
            .all(|s| matches!(s.edge, Edge::Horizontal(_)))
    }

    pub fn start_point(&self) -> UvPoint {
        self.segments
            .first()
            .map(Segment::start_point)
            .unwrap_or_else(|| uv_of_vertex(Vertex::Tangle(self.tangle)))
    }

    pub fn end_point(&self) -> UvPoint {
        self.segments
            .last()
            .map(Segment::end_point)
            .unwrap_or_else(|| uv_of_vertex(Vertex::Tangle(self.tangle)))
    }

    /// `|γ|`: full edges count 1, partial edges their traversed fraction.
    pub fn length(&self) -> Fraction {
        self.segments.iter().map(Segment::length).sum()
    }

    /// Vertices visited in order, excluding a partially reached final target.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = vec![Vertex::Tangle(self.tangle)];
        if self.is_constant() {
            return out;
        }
        for s in &self.segments {
            if s.end == Fraction::ONE {
                out.push(s.edge.target());
            }
        }
        out
    }

    /// Signed denominator of `v` where the final edge, extended rightwards,
    /// meets `u = 1`; negative when that edge travels downward.
    pub fn final_r_value(&self) -> Result<i64> {
        let seg = self
            .segments
            .iter()
            .rev()
            .find(|s| !matches!(s.edge, Edge::Horizontal(_)))
            .ok_or(Error::ConstantPath)?;
        if let Edge::Vertical { .. } = seg.edge {
            return Err(Error::VerticalFinalEdge);
        }
        let a = uv_of_vertex(seg.edge.source());
        let b = uv_of_vertex(seg.edge.target());
        let v_at_one = a.v + (b.v - a.v) / (b.u - a.u) * (Fraction::ONE - a.u);
        let den = v_at_one.den();
        Ok(match seg.direction() {
            Direction::Downward => -den,
            Direction::Upward | Direction::Level => den,
        })
    }
}

impl fmt::Display for Edgepath {
    /// Listing with the end point first, then vertices back to the start.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts = self.vertices();
        let end = self.end_point();
        let mut parts: Vec<String> = Vec::new();
        let ends_on_vertex = self
            .segments
            .last()
            .is_some_and(|s| s.end == Fraction::ONE && !self.is_constant());
        if !ends_on_vertex {
            parts.push(end.to_string());
        }
        for v in verts.iter().rev() {
            parts.push(match v {
                Vertex::Tangle(x) => format!("<{x}>"),
                Vertex::Circle(x) => format!("<{x}>°"),
                Vertex::Infinity => "<∞>".to_string(),
            });
        }
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgepathSystem {
    pub paths: Vec<Edgepath>,
    pub common_u: Fraction,
}

impl EdgepathSystem {
    pub fn new(paths: Vec<Edgepath>) -> Self {
        let common_u = paths
            .first()
            .map(|p| p.end_point().u)
            .unwrap_or(Fraction::ZERO);
        EdgepathSystem { paths, common_u }
    }

    pub fn ends_at_infinity(&self) -> bool {
        self.common_u == Fraction::from_integer(-1)
    }
}

/// The admissibility conditions, plus structural breakage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    E1,
    E2,
    E3,
    E4,
    /// Not a connected path of whole edges with at most a partial last one,
    /// or the wrong number of paths.
    Malformed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub path: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.path {
            Some(i) => write!(
                f,
                "{:?} violated by path {}: {}",
                self.condition,
                i + 1,
                self.detail
            ),
            None => write!(f, "{:?} violated: {}", self.condition, self.detail),
        }
    }
}

fn violation(condition: Condition, path: Option<usize>, detail: impl Into<String>) -> Violation {
    Violation {
        condition,
        path,
        detail: detail.into(),
    }
}

fn check_path(i: usize, path: &Edgepath, tangle: Fraction) -> std::result::Result<(), Violation> {
    let segs = &path.segments;
    let at = Some(i);

    // E4 first: a path running rightwards has its start at the wrong end.
    for s in segs {
        if s.end < s.start || s.end_point().u > s.start_point().u {
            return Err(violation(
                Condition::E4,
                at,
                format!("segment on {} moves rightwards", s.edge),
            ));
        }
    }

    let Some(first) = segs.first() else {
        return Err(violation(Condition::Malformed, at, "empty edgepath"));
    };
    let unit = |x: Fraction| x >= Fraction::ZERO && x <= Fraction::ONE;
    for s in segs {
        if !unit(s.start) || !unit(s.end) {
            return Err(violation(
                Condition::Malformed,
                at,
                "fraction outside [0, 1]",
            ));
        }
    }
    for w in segs.windows(2) {
        if w[0].end != Fraction::ONE
            || w[1].start != Fraction::ZERO
            || w[0].edge.target() != w[1].edge.source()
        {
            return Err(violation(
                Condition::Malformed,
                at,
                format!("gap between {} and {}", w[0].edge, w[1].edge),
            ));
        }
    }

    match first.edge {
        Edge::Horizontal(s) => {
            if s != tangle {
                return Err(violation(
                    Condition::E1,
                    at,
                    format!("starts on the horizontal edge of {s}, not {tangle}"),
                ));
            }
            if segs.len() != 1 || first.start != first.end {
                return Err(violation(
                    Condition::E1,
                    at,
                    "a path starting off the tangle vertex must be constant",
                ));
            }
        }
        _ => {
            if first.edge.source() != Vertex::Tangle(tangle) || first.start != Fraction::ZERO {
                return Err(violation(
                    Condition::E1,
                    at,
                    format!("does not start at <{tangle}>"),
                ));
            }
        }
    }

    for w in segs.windows(2) {
        let (a, b, c) = (w[0].edge.source(), w[0].edge.target(), w[1].edge.target());
        if a == c {
            return Err(violation(Condition::E2, at, "stops and retraces itself"));
        }
        if is_triangle(a, b, c) {
            return Err(violation(
                Condition::E2,
                at,
                format!("two sides of a triangle at {:?}", b),
            ));
        }
    }
    Ok(())
}

/// Checks (E1)–(E4) for `sys` against the tangle vector `knot`. Within a
/// path, monotonicity (E4) is examined before the starting point (E1).
pub fn validate_admissible(
    sys: &EdgepathSystem,
    knot: &[Fraction],
) -> std::result::Result<(), Violation> {
    if sys.paths.len() != knot.len() {
        return Err(violation(
            Condition::Malformed,
            None,
            format!("{} paths for {} tangles", sys.paths.len(), knot.len()),
        ));
    }
    for (i, (path, &tangle)) in sys.paths.iter().zip(knot).enumerate() {
        check_path(i, path, tangle)?;
    }
    let mut v_sum = Fraction::ZERO;
    for (i, path) in sys.paths.iter().enumerate() {
        let end = path.end_point();
        if end.u != sys.common_u {
            return Err(violation(
                Condition::E3,
                Some(i),
                format!("ends at u = {}, expected {}", end.u, sys.common_u),
            ));
        }
        v_sum = v_sum + end.v;
    }
    if !v_sum.is_zero() {
        return Err(violation(
            Condition::E3,
            None,
            format!("v-coordinates sum to {v_sum}"),
        ));
    }
    Ok(())
}

/// Final r-values in tangle order.
pub fn r_cycle(sys: &EdgepathSystem) -> Result<Vec<i64>> {
    sys.paths.iter().map(Edgepath::final_r_value).collect()
}
