//! Montesinos knots: parsing, classification key and the decidable
//! predicates used to place a knot (torus, hyperbolic, (1,1)).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Fraction;

/// `K(p_1/q_1, ..., p_n/q_n)` with `n >= 3` non-integral tangles forming a
/// knot (not a link).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MontesinosKnot {
    tangles: Vec<Fraction>,
}

/// Knot parity: one even denominator, or all odd with an odd number of odd
/// numerators.
pub fn is_knot(tangles: &[Fraction]) -> bool {
    let even = tangles.iter().filter(|t| t.den() % 2 == 0).count();
    let odd_p = tangles.iter().filter(|t| t.num() % 2 != 0).count();
    even == 1 || (even == 0 && odd_p % 2 == 1)
}

impl MontesinosKnot {
    pub fn new(tangles: Vec<Fraction>) -> Result<Self> {
        if tangles.len() < 3 {
            return Err(Error::InvalidKnot(format!(
                "a Montesinos knot needs at least 3 tangles, got {}",
                tangles.len()
            )));
        }
        if let Some(t) = tangles.iter().find(|t| t.is_integer()) {
            return Err(Error::InvalidKnot(format!("tangle {t} is integral")));
        }
        if !is_knot(&tangles) {
            let even = tangles.iter().filter(|t| t.den() % 2 == 0).count();
            return Err(Error::InvalidKnot(if even > 1 {
                format!("{even} even denominators: this is a link")
            } else {
                "all denominators odd with an even number of odd numerators: this is a link".into()
            }));
        }
        Ok(MontesinosKnot { tangles })
    }

    /// The `(q_1, ..., q_n)`-pretzel knot `K(1/q_1, ..., 1/q_n)`.
    pub fn pretzel(qs: &[i64]) -> Result<Self> {
        let tangles = qs
            .iter()
            .map(|&q| {
                if q.abs() < 2 {
                    Err(Error::InvalidKnot(format!(
                        "pretzel entry {q} gives an integral tangle"
                    )))
                } else {
                    Fraction::new(1, q)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        MontesinosKnot::new(tangles)
    }

    pub fn tangles(&self) -> &[Fraction] {
        &self.tangles
    }

    pub fn len(&self) -> usize {
        self.tangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tangles.is_empty()
    }

    pub fn mirror(&self) -> Self {
        MontesinosKnot {
            tangles: self.tangles.iter().map(|&t| -t).collect(),
        }
    }

    pub fn rotated(&self, k: usize) -> Self {
        let mut tangles = self.tangles.clone();
        let len = tangles.len();
        tangles.rotate_left(k % len);
        MontesinosKnot { tangles }
    }

    pub fn reversed(&self) -> Self {
        MontesinosKnot {
            tangles: self.tangles.iter().rev().copied().collect(),
        }
    }

    pub fn sum(&self) -> Fraction {
        self.tangles.iter().copied().sum()
    }

    pub fn canonical_form(&self) -> CanonicalKey {
        canonical_form(self)
    }
}

impl fmt::Display for MontesinosKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tangles.iter().map(|t| t.to_string()).collect();
        write!(f, "K({})", parts.join(","))
    }
}

impl FromStr for MontesinosKnot {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s).map(|p| p.knot)
    }
}

/// A parsed knot, remembering the pretzel vector when given in `P(...)` form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedKnot {
    pub knot: MontesinosKnot,
    pub pretzel: Option<Vec<i64>>,
}

fn parse_int(s: &str) -> Result<i64> {
    if s.is_empty()
        || !s
            .trim_start_matches(['-', '+'])
            .chars()
            .all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("expected an integer, found {s:?}")));
    }
    s.parse::<i64>()
        .map_err(|_| Error::Parse(format!("integer out of range: {s:?}")))
}

fn parse_frac(s: &str) -> Result<Fraction> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("expected p/q, found {s:?}")))?;
    let (p, q) = (parse_int(p)?, parse_int(q)?);
    let f = Fraction::new(p, q)?;
    if f.num().unsigned_abs() != p.unsigned_abs() {
        return Err(Error::InvalidKnot(format!(
            "{p}/{q} is not in lowest terms"
        )));
    }
    Ok(f)
}

fn inside<'a>(s: &'a str, head: &str) -> Result<Option<&'a str>> {
    match s.strip_prefix(head) {
        None => Ok(None),
        Some(rest) => rest
            .strip_suffix(')')
            .map(Some)
            .ok_or_else(|| Error::Parse(format!("missing closing parenthesis in {s:?}"))),
    }
}

/// Accepts `K(p/q,...)`, a bare `p/q,...` list, or `P(q_1,...)`.
/// Whitespace is ignored.
pub fn parse(text: &str) -> Result<ParsedKnot> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if !s.is_ascii() {
        return Err(Error::Parse("knot text must be ASCII".into()));
    }
    if let Some(body) = inside(&s, "P(")? {
        let qs = body.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
        return Ok(ParsedKnot {
            knot: MontesinosKnot::pretzel(&qs)?,
            pretzel: Some(qs),
        });
    }
    let body = inside(&s, "K(")?.unwrap_or(&s);
    if body.is_empty() {
        return Err(Error::Parse("empty knot".into()));
    }
    let tangles = body
        .split(',')
        .map(parse_frac)
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedKnot {
        knot: MontesinosKnot::new(tangles)?,
        pretzel: None,
    })
}

/// The classifying data: `Σ p_i/q_i` and the least rotation or reversal of
/// the vector of residues mod 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey {
    pub sum: Fraction,
    pub residues: Vec<Fraction>,
}

impl CanonicalKey {
    /// A representative knot: the residues with the integer part of the sum
    /// folded into the last tangle.
    pub fn representative(&self) -> MontesinosKnot {
        let mut tangles = self.residues.clone();
        let excess = self.sum - tangles.iter().copied().sum();
        if let Some(last) = tangles.last_mut() {
            *last = *last + excess;
        }
        MontesinosKnot { tangles }
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

fn residue(t: Fraction) -> Fraction {
    t - Fraction::from_integer(t.floor())
}

pub fn canonical_form(k: &MontesinosKnot) -> CanonicalKey {
    let res: Vec<Fraction> = k.tangles.iter().map(|&t| residue(t)).collect();
    let n = res.len();
    let rev: Vec<Fraction> = res.iter().rev().copied().collect();
    let mut best: Option<Vec<Fraction>> = None;
    for base in [&res, &rev] {
        for r in 0..n {
            let mut cand = base.clone();
            cand.rotate_left(r);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    CanonicalKey {
        sum: k.sum(),
        residues: best.unwrap_or_default(),
    }
}

/// Torus criterion for a pretzel vector: `n = 3` and a cyclic permutation
/// of `(-2ε, 3ε, 3ε)` or `(-2ε, 3ε, 5ε)`, `ε = ±1`.
pub fn pretzel_torus_check(q: &[i64]) -> bool {
    if q.len() != 3 {
        return false;
    }
    for eps in [1, -1] {
        for pattern in [[-2, 3, 3], [-2, 3, 5]] {
            let target: Vec<i64> = pattern.iter().map(|x| x * eps).collect();
            for r in 0..3 {
                let mut c = q.to_vec();
                c.rotate_left(r);
                if c == target {
                    return true;
                }
            }
        }
    }
    false
}

/// Every pretzel vector `(q_1, ..., q_n)` describing the same knot as `k`
/// under the classification (same residues in order, same sum).
pub fn pretzel_forms(k: &MontesinosKnot) -> Vec<Vec<i64>> {
    let mut choices: Vec<Vec<i64>> = Vec::new();
    for &t in &k.tangles {
        let r = residue(t);
        let mut c = Vec::new();
        if r.num() == 1 {
            c.push(r.den());
        }
        if r.den() - r.num() == 1 {
            c.push(-r.den());
        }
        if c.is_empty() {
            return Vec::new();
        }
        choices.push(c);
    }
    let target = k.sum();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(choices.len());
    fn walk(
        choices: &[Vec<i64>],
        target: Fraction,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if current.len() == choices.len() {
            let s: Fraction = current
                .iter()
                .map(|&q| Fraction::new(1, q).expect("q != 0"))
                .sum();
            if s == target {
                out.push(current.clone());
            }
            return;
        }
        for &q in &choices[current.len()] {
            current.push(q);
            walk(choices, target, current, out);
            current.pop();
        }
    }
    walk(&choices, target, &mut current, &mut out);
    out
}

/// Torus if some pretzel form (or its reversal, which is the same knot)
/// meets the torus criterion.
pub fn is_torus(k: &MontesinosKnot) -> Option<bool> {
    let forms = pretzel_forms(k);
    if forms.is_empty() {
        return None;
    }
    Some(forms.iter().any(|q| {
        let rev: Vec<i64> = q.iter().rev().copied().collect();
        pretzel_torus_check(q) || pretzel_torus_check(&rev)
    }))
}

/// `Some(true)` for pretzel knots that are not torus knots, `Some(false)`
/// for torus pretzels, `None` when the knot has no pretzel form.
pub fn is_hyperbolic(k: &MontesinosKnot) -> Option<bool> {
    is_torus(k).map(|torus| !torus)
}

/// `Some(true)` when there are three tangles, one with denominator 2 and
/// the other two odd; `None` otherwise.
pub fn is_one_one(k: &MontesinosKnot) -> Option<bool> {
    let qs: Vec<i64> = k.tangles.iter().map(|t| t.den()).collect();
    if qs.len() != 3 {
        return None;
    }
    (0..3)
        .any(|i| qs[i] == 2 && qs[(i + 1) % 3] % 2 == 1 && qs[(i + 2) % 3] % 2 == 1)
        .then_some(true)
}

/// Whether `k` is the `(-2, 3, t)`-pretzel knot or its mirror for some odd
/// `t >= 3`.
pub fn is_minus_two_three_pretzel(k: &MontesinosKnot) -> bool {
    if k.len() != 3 {
        return false;
    }
    let key = k.canonical_form();
    let max_den = k.tangles.iter().map(|t| t.den()).max().unwrap_or(0);
    (3..=max_den.max(3)).step_by(2).any(|t| {
        let p = MontesinosKnot::pretzel(&[-2, 3, t]).expect("valid pretzel");
        key == p.canonical_form() || key == p.mirror().canonical_form()
    })
}
