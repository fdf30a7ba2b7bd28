#![allow(dead_code)]

pub mod oracle;

use boundary_slopes::diagram::Edge;
use boundary_slopes::edgepath::{Edgepath, Segment};
use boundary_slopes::{EdgepathSystem, Fraction, MontesinosKnot};
use proptest::prelude::*;

pub fn coprime(p: i64, q: i64) -> bool {
    num_integer::Integer::gcd(&p, &q) == 1
}

/// Non-integral reduced tangles `p/q` with `2 <= q <= max_den`, `|p| < q`.
pub fn small_tangles(max_den: i64) -> Vec<Fraction> {
    (2..=max_den)
        .flat_map(|q| {
            (1 - q..q)
                .filter(move |&p| p != 0 && coprime(p, q))
                .map(move |p| Fraction::new(p, q).unwrap())
        })
        .collect()
}

/// Random three-tangle knots with denominators at most `max_den`.
pub fn knot_strategy(max_den: i64) -> impl Strategy<Value = MontesinosKnot> {
    let pool = small_tangles(max_den);
    prop::collection::vec(prop::sample::select(pool), 3)
        .prop_filter_map("link", |t| MontesinosKnot::new(t).ok())
}

/// Deterministic corpus: every `step`-th three-tangle knot with denominators
/// at most `max_den`.
pub fn corpus(max_den: i64, step: usize) -> Vec<MontesinosKnot> {
    let pool = small_tangles(max_den);
    let mut out = vec![];
    let mut i = 0;
    for a in &pool {
        for b in &pool {
            for c in &pool {
                if let Ok(k) = MontesinosKnot::new(vec![*a, *b, *c]) {
                    if i % step == 0 {
                        out.push(k);
                    }
                    i += 1;
                }
            }
        }
    }
    out
}

fn mirror_edge(e: Edge) -> Edge {
    match e {
        Edge::NonHorizontal { left, right } => Edge::NonHorizontal {
            left: -left,
            right: -right,
        },
        Edge::Horizontal(s) => Edge::Horizontal(-s),
        Edge::Vertical { from, to } => Edge::Vertical {
            from: -from,
            to: -to,
        },
        Edge::Infinity(m) => Edge::Infinity(-m),
    }
}

pub fn mirror_path(p: &Edgepath) -> Edgepath {
    Edgepath {
        tangle: -p.tangle,
        segments: p
            .segments
            .iter()
            .map(|s| Segment {
                edge: mirror_edge(s.edge),
                ..*s
            })
            .collect(),
    }
}

pub fn mirror_system(s: &EdgepathSystem) -> EdgepathSystem {
    EdgepathSystem {
        paths: s.paths.iter().map(mirror_path).collect(),
        common_u: s.common_u,
    }
}

/// Final edge is `<0> -> <∞>`, the only level edge a path can end on.
pub fn ends_level(p: &Edgepath) -> bool {
    p.segments
        .last()
        .is_some_and(|s| s.edge == Edge::Infinity(0))
}
