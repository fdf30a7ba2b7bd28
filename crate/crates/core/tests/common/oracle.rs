//! Unpruned reference enumerator for admissible systems.
//!
//! Shares nothing with the library except `Fraction`: neighbours come from a
//! determinant scan, every path prefix is tried against every other, and
//! roots are found on each interval between consecutive vertex u-values.

use std::collections::BTreeSet;

use boundary_slopes::Fraction;

/// `(num, den)` with `den >= 1`, or `(1, 0)` for infinity.
pub type V = (i64, i64);

const INF: V = (1, 0);

fn f(n: i64, d: i64) -> Fraction {
    Fraction::new(n, d).unwrap()
}

pub fn uv(x: V) -> (Fraction, Fraction) {
    if x == INF {
        (f(-1, 1), f(0, 1))
    } else {
        (f(x.1 - 1, x.1), f(x.0, x.1))
    }
}

pub fn adjacent(a: V, b: V) -> bool {
    (a.0 * b.1 - a.1 * b.0).abs() == 1
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && (a < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn next_vertices(cur: V) -> Vec<V> {
    let (p, q) = cur;
    if cur == INF {
        return vec![];
    }
    if q == 1 {
        return vec![(p - 1, 1), (p + 1, 1), INF];
    }
    let lo = floor_div(p, q) - 1;
    let mut out = vec![];
    for s in 1..q {
        for r in lo * s..=(lo + 3) * s {
            if gcd(r, s) == 1 && adjacent(cur, (r, s)) {
                out.push((r, s));
            }
        }
    }
    out
}

/// Every minimal leftward vertex sequence from `start` with at most `bound`
/// consecutive vertical steps.
pub fn all_paths(start: V, bound: usize) -> Vec<Vec<V>> {
    let mut out = vec![];
    let mut stack = vec![start];
    walk(&mut stack, bound, 0, &mut out);
    out
}

fn walk(stack: &mut Vec<V>, bound: usize, run: usize, out: &mut Vec<Vec<V>>) {
    out.push(stack.clone());
    let cur = *stack.last().unwrap();
    for w in next_vertices(cur) {
        let vertical = cur.1 == 1 && w.1 == 1;
        if vertical && run >= bound {
            continue;
        }
        if stack.len() >= 2 {
            let prev = stack[stack.len() - 2];
            if w == prev || (adjacent(prev, cur) && adjacent(cur, w) && adjacent(prev, w)) {
                continue;
            }
        }
        stack.push(w);
        walk(stack, bound, if vertical { run + 1 } else { 0 }, out);
        stack.pop();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Domain {
    lo: Fraction,
    lo_closed: bool,
    hi: Fraction,
    hi_closed: bool,
}

impl Domain {
    fn contains(&self, u: Fraction) -> bool {
        (u > self.lo || (self.lo_closed && u == self.lo))
            && (u < self.hi || (self.hi_closed && u == self.hi))
    }
}

/// One way a path can end: a line `v = k u + c` valid on `domain`, plus the
/// r-value of the ending (None when undefined).
#[derive(Clone, Debug)]
struct End {
    k: Fraction,
    c: Fraction,
    domain: Domain,
    r: Option<i64>,
}

fn r_value(src: V, dst: V) -> Option<i64> {
    let (us, vs) = uv(src);
    let (ut, vt) = uv(dst);
    if us == ut {
        return None;
    }
    let slope = (vs - vt) / (us - ut);
    let at_one = vs + slope * (Fraction::ONE - us);
    Some(if vt < vs { -at_one.den() } else { at_one.den() })
}

fn ends(start: V, bound: usize) -> Vec<End> {
    let (u0, v0) = uv(start);
    let mut out = vec![End {
        k: Fraction::ZERO,
        c: v0,
        domain: Domain {
            lo: u0,
            lo_closed: true,
            hi: Fraction::ONE,
            hi_closed: false,
        },
        r: None,
    }];
    for path in all_paths(start, bound) {
        if path.len() < 2 {
            continue;
        }
        let src = path[path.len() - 2];
        let dst = path[path.len() - 1];
        let (us, vs) = uv(src);
        let (ut, vt) = uv(dst);
        if us == ut {
            out.push(End {
                k: Fraction::ZERO,
                c: vt,
                domain: Domain {
                    lo: ut,
                    lo_closed: true,
                    hi: ut,
                    hi_closed: true,
                },
                r: None,
            });
            continue;
        }
        let k = (vs - vt) / (us - ut);
        out.push(End {
            k,
            c: vt - k * ut,
            domain: Domain {
                lo: ut,
                lo_closed: true,
                hi: us,
                hi_closed: false,
            },
            r: r_value(src, dst),
        });
    }
    out
}

fn product(lists: &[Vec<End>]) -> Vec<Vec<&End>> {
    let mut acc: Vec<Vec<&End>> = vec![vec![]];
    for l in lists {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                l.iter().map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e);
                    p
                })
            })
            .collect();
    }
    acc
}

/// `(common_u, r_cycle)` of every admissible system of `tangles`.
pub fn oracle_pairs(
    tangles: &[(i64, i64)],
    bound: usize,
) -> BTreeSet<(Fraction, Option<Vec<i64>>)> {
    let lists: Vec<Vec<End>> = tangles.iter().map(|&t| ends(t, bound)).collect();
    let mut breaks: BTreeSet<Fraction> = BTreeSet::new();
    breaks.insert(Fraction::ONE);
    for l in &lists {
        for e in l {
            breaks.insert(e.domain.lo);
            breaks.insert(e.domain.hi);
        }
    }
    let breaks: Vec<Fraction> = breaks.into_iter().collect();
    let mut out = BTreeSet::new();
    for tuple in product(&lists) {
        let k: Fraction = tuple.iter().map(|e| e.k).sum();
        let c: Fraction = tuple.iter().map(|e| e.c).sum();
        let rc = tuple.iter().map(|e| e.r).collect::<Option<Vec<i64>>>();
        let inside = |u: Fraction| tuple.iter().all(|e| e.domain.contains(u));
        let mut record = |u: Fraction| {
            out.insert((u, rc.clone()));
        };
        if k.is_zero() && c.is_zero() {
            let lo = tuple
                .iter()
                .map(|e| (e.domain.lo, !e.domain.lo_closed))
                .max()
                .unwrap();
            let hi = tuple
                .iter()
                .map(|e| (e.domain.hi, e.domain.hi_closed))
                .min()
                .unwrap();
            let (lo, lo_closed) = (lo.0, !lo.1);
            let (hi, hi_closed) = hi;
            if lo < hi {
                record((lo + hi) / Fraction::from_integer(2));
                if lo_closed {
                    record(lo);
                }
                if hi_closed {
                    record(hi);
                }
            } else if lo == hi && lo_closed && hi_closed {
                record(lo);
            }
            continue;
        }
        let sum = |u: Fraction| k * u + c;
        for &b in &breaks {
            if sum(b).is_zero() && inside(b) {
                record(b);
            }
        }
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (sa, sb) = (sum(a), sum(b));
            if (sa < Fraction::ZERO) != (sb < Fraction::ZERO) && !sa.is_zero() && !sb.is_zero() {
                let root = a - sa * (b - a) / (sb - sa);
                if inside(root) {
                    record(root);
                }
            }
        }
    }
    out
}
