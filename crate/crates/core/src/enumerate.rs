//! Enumeration of admissible edgepath systems.
//!
//! Each tangle contributes a finite list of ways its path can end: constant
//! on the horizontal edge, partway along (or at the end of) the final edge
//! of some minimal skeleton, or at the top of a run of vertical edges. On
//! each such piece `v` is linear in `u`, so `Σ v_i(u) = 0` is a linear
//! equation on the intersection of the pieces' `u`-intervals and is solved
//! exactly.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{is_triangle, left_neighbors, uv_of_vertex, Edge, UvPoint, Vertex};
use crate::edgepath::{edge_between, Edgepath, EdgepathSystem};
use crate::error::{Error, Result};
use crate::numerics::Fraction;
use crate::surface::twist;

/// A minimal leftward vertex sequence starting at a tangle vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Skeleton {
    pub tangle: Fraction,
    pub vertices: Vec<Vertex>,
    /// `(u of the last vertex, u of the first)`.
    pub u_span: (Fraction, Fraction),
}

impl Skeleton {
    fn new(vertices: Vec<Vertex>) -> Self {
        let tangle = match vertices[0] {
            Vertex::Tangle(t) => t,
            _ => unreachable!("skeletons start at a tangle"),
        };
        let first = uv_of_vertex(vertices[0]).u;
        let last = uv_of_vertex(*vertices.last().expect("nonempty")).u;
        Skeleton {
            tangle,
            vertices,
            u_span: (last, first),
        }
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("nonempty")
    }

    pub fn final_edge(&self) -> Option<Edge> {
        let n = self.vertices.len();
        (n >= 2).then(|| {
            edge_between(self.vertices[n - 2], self.vertices[n - 1]).expect("skeleton edge")
        })
    }

    pub fn ends_at_infinity(&self) -> bool {
        self.last() == Vertex::Infinity
    }

    /// Number of trailing vertical edges.
    pub fn vertical_run(&self) -> usize {
        self.vertices
            .windows(2)
            .rev()
            .take_while(|w| matches!(edge_between(w[0], w[1]), Some(Edge::Vertical { .. })))
            .count()
    }
}

/// Vertical-excursion bound `⌈Σ|p_i/q_i|⌉ + 2`.
pub fn vertical_bound(knot: &[Fraction]) -> usize {
    let total: Fraction = knot.iter().map(|t| t.abs()).sum();
    (total.ceil() + 2) as usize
}

/// All minimal leftward skeletons from `<tangle>` relevant for ending
/// points with `u >= u_floor`.
///
/// A skeleton is reported when it reaches `<∞>`, when it reaches an integer
/// vertex along a non-horizontal edge, after each vertical edge of a run of
/// at most `vertical_bound` such edges, or when it first reaches a vertex
/// with `u <= u_floor`. Vertical edges are only used when `u_floor <= 0`,
/// infinity edges only when `u_floor < 0`.
pub fn minimal_skeletons(
    tangle: Fraction,
    u_floor: Fraction,
    vertical_bound: usize,
) -> Vec<Skeleton> {
    let mut out = Vec::new();
    let mut stack = vec![Vertex::Tangle(tangle)];
    dfs(&mut stack, u_floor, vertical_bound, 0, &mut out);
    out
}

fn dfs(
    stack: &mut Vec<Vertex>,
    u_floor: Fraction,
    bound: usize,
    run: usize,
    out: &mut Vec<Skeleton>,
) {
    let here = *stack.last().expect("nonempty");
    let x = match here {
        Vertex::Infinity => {
            out.push(Skeleton::new(stack.clone()));
            return;
        }
        Vertex::Tangle(x) => x,
        Vertex::Circle(_) => unreachable!(),
    };
    let prev = (stack.len() >= 2).then(|| stack[stack.len() - 2]);

    if !x.is_integer() {
        if prev.is_some() && uv_of_vertex(here).u <= u_floor {
            out.push(Skeleton::new(stack.clone()));
            return;
        }
    } else {
        out.push(Skeleton::new(stack.clone()));
    }

    for edge in left_neighbors(x) {
        let next = edge.target();
        let allowed = match edge {
            Edge::Vertical { .. } => u_floor <= Fraction::ZERO && run < bound,
            Edge::Infinity(_) => u_floor < Fraction::ZERO,
            _ => true,
        };
        if !allowed {
            continue;
        }
        if let Some(p) = prev {
            if p == next || is_triangle(p, here, next) {
                continue;
            }
        }
        let next_run = if matches!(edge, Edge::Vertical { .. }) {
            run + 1
        } else {
            0
        };
        stack.push(next);
        dfs(stack, u_floor, bound, next_run, out);
        stack.pop();
    }
}

/// `v` as a piecewise-linear function of `u` along a skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VProfile {
    /// `(u, v)` at each vertex, `u` strictly decreasing. A trailing run of
    /// vertical edges is represented by its top vertex only.
    pub breakpoints: Vec<UvPoint>,
}

impl VProfile {
    /// `v` at `u`, or `None` outside the profile. At `u = 0` the value is
    /// the last vertex with that `u`, so a vertical run reports its top.
    pub fn eval(&self, u: Fraction) -> Option<Fraction> {
        let bp = &self.breakpoints;
        if let Some(p) = bp.iter().rev().find(|p| p.u == u) {
            return Some(p.v);
        }
        bp.windows(2).find(|w| w[1].u < u && u < w[0].u).map(|w| {
            let (a, b) = (w[0], w[1]);
            a.v + (b.v - a.v) / (b.u - a.u) * (u - a.u)
        })
    }
}

pub fn v_profile(s: &Skeleton) -> VProfile {
    let mut breakpoints: Vec<UvPoint> = Vec::with_capacity(s.vertices.len());
    for &v in &s.vertices {
        let p = uv_of_vertex(v);
        match breakpoints.last_mut() {
            Some(last) if last.u == p.u => *last = p,
            _ => breakpoints.push(p),
        }
    }
    VProfile { breakpoints }
}

/// One way a path can end, with `v` linear in `u` on its interval.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ending {
    /// Vertices up to the start of the final piece; empty for constant paths.
    prefix: Vec<Vertex>,
    kind: EndingKind,
    lo: Bound,
    hi: Bound,
    slope: Fraction,
    intercept: Fraction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EndingKind {
    Constant,
    Partial(Edge),
    VerticalTop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Bound {
    at: Fraction,
    closed: bool,
}

impl Ending {
    fn path_at(&self, tangle: Fraction, u: Fraction) -> Result<Edgepath> {
        match self.kind {
            EndingKind::Constant => Ok(Edgepath::constant(tangle, u)),
            EndingKind::VerticalTop => Edgepath::through(&self.prefix, Fraction::ONE),
            EndingKind::Partial(edge) => {
                let t = edge.fraction_from_u(u)?;
                let mut verts = self.prefix.clone();
                verts.push(edge.target());
                Edgepath::through(&verts, t)
            }
        }
    }
}

fn line_through(a: UvPoint, b: UvPoint) -> (Fraction, Fraction) {
    let slope = (b.v - a.v) / (b.u - a.u);
    (slope, a.v - slope * a.u)
}

fn endings(tangle: Fraction, bound: usize) -> Vec<Ending> {
    let start = uv_of_vertex(Vertex::Tangle(tangle));
    let mut out = vec![Ending {
        prefix: Vec::new(),
        kind: EndingKind::Constant,
        lo: Bound {
            at: start.u,
            closed: true,
        },
        hi: Bound {
            at: Fraction::ONE,
            closed: false,
        },
        slope: Fraction::ZERO,
        intercept: tangle,
    }];
    let mut seen = BTreeSet::new();
    for sk in minimal_skeletons(tangle, Fraction::from_integer(-1), bound) {
        for k in 2..=sk.vertices.len() {
            let prefix = &sk.vertices[..k];
            if !seen.insert(prefix.to_vec()) {
                continue;
            }
            let (a, b) = (prefix[k - 2], prefix[k - 1]);
            let edge = edge_between(a, b).expect("skeleton edge");
            let (pa, pb) = (uv_of_vertex(a), uv_of_vertex(b));
            out.push(match edge {
                Edge::Vertical { .. } => Ending {
                    prefix: prefix.to_vec(),
                    kind: EndingKind::VerticalTop,
                    lo: Bound {
                        at: Fraction::ZERO,
                        closed: true,
                    },
                    hi: Bound {
                        at: Fraction::ZERO,
                        closed: true,
                    },
                    slope: Fraction::ZERO,
                    intercept: pb.v,
                },
                Edge::Infinity(_) => {
                    let (slope, intercept) = line_through(pa, pb);
                    Ending {
                        prefix: prefix[..k - 1].to_vec(),
                        kind: EndingKind::Partial(edge),
                        lo: Bound {
                            at: pb.u,
                            closed: false,
                        },
                        hi: Bound {
                            at: pa.u,
                            closed: false,
                        },
                        slope,
                        intercept,
                    }
                }
                _ => {
                    let (slope, intercept) = line_through(pa, pb);
                    Ending {
                        prefix: prefix[..k - 1].to_vec(),
                        kind: EndingKind::Partial(edge),
                        lo: Bound {
                            at: pb.u,
                            closed: true,
                        },
                        hi: Bound {
                            at: pa.u,
                            closed: false,
                        },
                        slope,
                        intercept,
                    }
                }
            });
        }
    }
    out
}

#[derive(Clone, Copy)]
struct Window {
    lo: Bound,
    hi: Bound,
}

impl Window {
    fn full() -> Self {
        Window {
            lo: Bound {
                at: Fraction::from_integer(-1),
                closed: false,
            },
            hi: Bound {
                at: Fraction::ONE,
                closed: false,
            },
        }
    }

    fn meet(self, e: &Ending) -> Option<Window> {
        let lo = if e.lo.at > self.lo.at || (e.lo.at == self.lo.at && !e.lo.closed) {
            e.lo
        } else {
            self.lo
        };
        let hi = if e.hi.at < self.hi.at || (e.hi.at == self.hi.at && !e.hi.closed) {
            e.hi
        } else {
            self.hi
        };
        let w = Window { lo, hi };
        (!w.is_empty()).then_some(w)
    }

    fn is_empty(&self) -> bool {
        self.lo.at > self.hi.at || (self.lo.at == self.hi.at && !(self.lo.closed && self.hi.closed))
    }

    fn contains(&self, u: Fraction) -> bool {
        let above = u > self.lo.at || (u == self.lo.at && self.lo.closed);
        let below = u < self.hi.at || (u == self.hi.at && self.hi.closed);
        above && below
    }

    /// Roots of `slope * u + intercept` in the window; when it vanishes
    /// identically, the midpoint stands in for the interior.
    fn roots(&self, slope: Fraction, intercept: Fraction) -> Vec<Fraction> {
        if !slope.is_zero() {
            let u = -intercept / slope;
            return if self.contains(u) { vec![u] } else { vec![] };
        }
        if !intercept.is_zero() {
            return vec![];
        }
        let mut out = Vec::new();
        if self.lo.closed {
            out.push(self.lo.at);
        }
        if self.lo.at < self.hi.at {
            out.push((self.lo.at + self.hi.at) / Fraction::from_integer(2));
        }
        if self.hi.closed && self.hi.at != self.lo.at {
            out.push(self.hi.at);
        }
        out
    }
}

fn search(
    knot: &[Fraction],
    options: &[Vec<Ending>],
    chosen: &mut Vec<usize>,
    window: Window,
    slope: Fraction,
    intercept: Fraction,
    out: &mut Vec<EdgepathSystem>,
) -> Result<()> {
    let i = chosen.len();
    if i == knot.len() {
        for u in window.roots(slope, intercept) {
            if u == Fraction::from_integer(-1) {
                continue;
            }
            let paths = chosen
                .iter()
                .enumerate()
                .map(|(j, &k)| options[j][k].path_at(knot[j], u))
                .collect::<Result<Vec<_>>>()?;
            out.push(EdgepathSystem { paths, common_u: u });
        }
        return Ok(());
    }
    for (k, e) in options[i].iter().enumerate() {
        if let Some(w) = window.meet(e) {
            chosen.push(k);
            search(
                knot,
                options,
                chosen,
                w,
                slope + e.slope,
                intercept + e.intercept,
                out,
            )?;
            chosen.pop();
        }
    }
    Ok(())
}

fn sort_canonically(systems: &mut Vec<EdgepathSystem>) {
    let mut keyed: Vec<_> = systems
        .drain(..)
        .map(|s| ((s.common_u, crate::edgepath::r_cycle(&s).ok()), s))
        .collect();
    keyed.sort();
    keyed.dedup();
    systems.extend(keyed.into_iter().map(|(_, s)| s));
}

/// Every admissible edgepath system with common `u` in `(-1, 1)`, sorted
/// by `common_u` then r-cycle.
pub fn solve_systems(knot: &[Fraction]) -> Result<Vec<EdgepathSystem>> {
    if knot.is_empty() {
        return Ok(Vec::new());
    }
    let bound = vertical_bound(knot);
    let options: Vec<Vec<Ending>> = knot.iter().map(|&t| endings(t, bound)).collect();
    let per_first: Vec<Vec<EdgepathSystem>> = options[0]
        .par_iter()
        .enumerate()
        .map(|(k, e)| {
            let mut out = Vec::new();
            if let Some(w) = Window::full().meet(e) {
                let mut chosen = vec![k];
                search(
                    knot,
                    &options,
                    &mut chosen,
                    w,
                    e.slope,
                    e.intercept,
                    &mut out,
                )?;
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut systems: Vec<EdgepathSystem> = per_first.into_iter().flatten().collect();
    sort_canonically(&mut systems);
    Ok(systems)
}

/// Skeletons from `<tangle>` that end at `<∞>`.
pub fn infinity_skeletons(tangle: Fraction) -> Vec<Skeleton> {
    minimal_skeletons(tangle, Fraction::from_integer(-1), 0)
        .into_iter()
        .filter(Skeleton::ends_at_infinity)
        .collect()
}

fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect()
    })
}

/// Every system in which all paths run to `<∞>`.
pub fn infinity_systems(knot: &[Fraction]) -> Result<Vec<EdgepathSystem>> {
    let lists: Vec<Vec<Skeleton>> = knot.iter().map(|&t| infinity_skeletons(t)).collect();
    let mut out = product(&lists)
        .into_iter()
        .map(|tuple| {
            let paths = tuple
                .iter()
                .map(|s| Edgepath::through(&s.vertices, Fraction::ONE))
                .collect::<Result<Vec<_>>>()?;
            Ok(EdgepathSystem {
                paths,
                common_u: Fraction::from_integer(-1),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_canonically(&mut out);
    Ok(out)
}

/// Class of a vertex in the diagram reduced mod 2: `0/1`, `1/1` or `1/0`.
fn mod2_class(v: Vertex) -> (i64, i64) {
    match v {
        Vertex::Tangle(x) | Vertex::Circle(x) => (x.num().rem_euclid(2), x.den().rem_euclid(2)),
        Vertex::Infinity => (1, 0),
    }
}

/// Whether the mod 2 reduction of the skeleton stays on a single edge of
/// the triangle `<∞>, <0>, <1>`.
pub fn uses_one_mod2_edge(s: &Skeleton) -> bool {
    let mut pairs = s.vertices.windows(2).map(|w| {
        let (a, b) = (mod2_class(w[0]), mod2_class(w[1]));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    });
    match pairs.next() {
        Some(first) => pairs.all(|p| p == first),
        None => false,
    }
}

fn penultimate_is_odd(s: &Skeleton) -> bool {
    match s.vertices[s.vertices.len() - 2] {
        Vertex::Tangle(m) => m.num().rem_euclid(2) == 1,
        _ => false,
    }
}

/// All all-`<∞>` systems meeting the Seifert-surface conditions.
pub fn seifert_candidates(knot: &[Fraction]) -> Result<Vec<EdgepathSystem>> {
    let evens = knot.iter().filter(|t| t.den() % 2 == 0).count();
    if evens != 1 {
        return Err(Error::Unsupported(format!(
            "the Seifert baseline needs exactly one even denominator, found {evens}"
        )));
    }
    let lists: Vec<Vec<Skeleton>> = knot
        .iter()
        .map(|&t| {
            infinity_skeletons(t)
                .into_iter()
                .filter(uses_one_mod2_edge)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for tuple in product(&lists) {
        let odd = tuple.iter().filter(|s| penultimate_is_odd(s)).count();
        if odd % 2 != 0 {
            continue;
        }
        let paths = tuple
            .iter()
            .map(|s| Edgepath::through(&s.vertices, Fraction::ONE))
            .collect::<Result<Vec<_>>>()?;
        out.push(EdgepathSystem {
            paths,
            common_u: Fraction::from_integer(-1),
        });
    }
    out.sort();
    Ok(out)
}

/// The Seifert-surface system and its twist `τ(Σ)`.
pub fn seifert_system(knot: &[Fraction]) -> Result<(EdgepathSystem, Fraction)> {
    let candidates = seifert_candidates(knot)?;
    let sys = candidates.into_iter().next().ok_or_else(|| {
        Error::Unsupported("no edgepath system meets the Seifert conditions".into())
    })?;
    let tau = twist(&sys);
    Ok((sys, tau))
}
