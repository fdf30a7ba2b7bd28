//! Invariants of the candidate surface attached to an edgepath system.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::diagram::{Direction, Edge};
use crate::edgepath::{r_cycle, EdgepathSystem};
use crate::enumerate::{infinity_systems, seifert_system, solve_systems};
use crate::error::{Error, Result};
use crate::knots::MontesinosKnot;
use crate::numerics::Fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Incompressibility {
    Guaranteed,
    Unknown,
}

impl fmt::Display for Incompressibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Incompressibility::Guaranteed => "guaranteed",
            Incompressibility::Unknown => "unknown",
        })
    }
}

/// `interior` when the system ends at `u >= 0`, `infinity-type` when it ends
/// on infinity edges or at `<∞>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SystemKind {
    #[serde(rename = "interior")]
    Interior,
    #[serde(rename = "infinity-type")]
    InfinityType,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Interior => "interior",
            SystemKind::InfinityType => "infinity-type",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSurface {
    pub system: EdgepathSystem,
    pub twist: Fraction,
    /// `twist - τ(Σ)`; equal to `twist` when the knot has no Seifert baseline.
    pub slope: Fraction,
    pub euler: Option<i64>,
    pub r_cycle: Option<Vec<i64>>,
    pub incompressibility: Incompressibility,
    pub seifert: bool,
    pub sheets: i64,
    pub kind: SystemKind,
}

/// `τ(S) = 2(e₋ - e₊)`, counting traversed fractions of non-horizontal and
/// vertical edges.
pub fn twist(sys: &EdgepathSystem) -> Fraction {
    let mut down_minus_up = Fraction::ZERO;
    for seg in sys.paths.iter().flat_map(|p| &p.segments) {
        if matches!(seg.edge, Edge::Horizontal(_) | Edge::Infinity(_)) {
            continue;
        }
        match seg.direction() {
            Direction::Downward => down_minus_up = down_minus_up + seg.length(),
            Direction::Upward => down_minus_up = down_minus_up - seg.length(),
            Direction::Level => {}
        }
    }
    Fraction::from_integer(2) * down_minus_up
}

pub fn boundary_slope(sys: &EdgepathSystem, seifert_twist: Fraction) -> Fraction {
    twist(sys) - seifert_twist
}

/// `m = lcm(m_i)` where `m_i` is the least positive integer with `m_i|γ_i|`
/// integral.
pub fn sheets(sys: &EdgepathSystem) -> i64 {
    sys.paths
        .iter()
        .map(|p| p.length().den())
        .fold(1, |acc, d| acc.lcm(&d))
}

/// `χ(S) = Σ m(2 - |γ_i|) - 4a - b` for three-tangle systems ending at
/// `u = b/(a+b)` in `[0, 1)`.
///
/// A vertex `<p/q>` carries the curve system `[1, q-1, p]`, so each sheet
/// contributes `a = 1` and the m-sheeted surface has `a = m`, `b = m u/(1-u)`.
pub fn euler_characteristic(sys: &EdgepathSystem) -> Result<i64> {
    if sys.paths.len() != 3 {
        return Err(Error::Unsupported(format!(
            "Euler characteristic is only available for 3 tangles, not {}",
            sys.paths.len()
        )));
    }
    if sys.paths.iter().any(|p| p.is_constant()) {
        return Err(Error::ConstantPath);
    }
    let u = sys.common_u;
    if u < Fraction::ZERO || u >= Fraction::ONE {
        return Err(Error::Unsupported(format!(
            "Euler characteristic needs 0 <= u < 1, system ends at u = {u}"
        )));
    }
    let m = Fraction::from_integer(sheets(sys));
    let two = Fraction::from_integer(2);
    let pieces: Fraction = sys.paths.iter().map(|p| m * (two - p.length())).sum();
    let a = m;
    let b = m.checked_mul(u.checked_div(Fraction::ONE - u)?)?;
    let chi = pieces - Fraction::from_integer(4) * a - b;
    if !chi.is_integer() {
        return Err(Error::Unsupported(format!(
            "non-integral Euler characteristic {chi}"
        )));
    }
    Ok(chi.num())
}

fn matches_exception(rc: &[i64]) -> bool {
    let n = rc.len();
    if n == 0 {
        return false;
    }
    if rc[0] == 0 {
        return true;
    }
    let ones = |xs: &[i64]| xs.iter().all(|&x| x == 1);
    if ones(&rc[..n - 1]) {
        return true;
    }
    n >= 2 && ones(&rc[..n - 2]) && rc[n - 2] == 2
}

/// `Unknown` iff the r-cycle, up to rotation and reversal, has one of the
/// forms `(0, ...)`, `(1, ..., 1, r)`, `(1, ..., 1, 2, r)`.
pub fn incompressibility_status(rc: &[i64]) -> Incompressibility {
    let n = rc.len();
    let mut forward = rc.to_vec();
    let mut backward: Vec<i64> = rc.iter().rev().copied().collect();
    for _ in 0..n.max(1) {
        if matches_exception(&forward) || matches_exception(&backward) {
            return Incompressibility::Unknown;
        }
        forward.rotate_left(1);
        backward.rotate_left(1);
    }
    Incompressibility::Guaranteed
}

fn assemble(
    sys: EdgepathSystem,
    seifert_twist: Option<Fraction>,
    seifert: bool,
) -> CandidateSurface {
    let tau = twist(&sys);
    let rc = r_cycle(&sys).ok();
    let incompressibility = rc
        .as_deref()
        .map(incompressibility_status)
        .unwrap_or(Incompressibility::Unknown);
    CandidateSurface {
        twist: tau,
        slope: tau - seifert_twist.unwrap_or(Fraction::ZERO),
        euler: euler_characteristic(&sys).ok(),
        r_cycle: rc,
        incompressibility,
        seifert,
        sheets: sheets(&sys),
        kind: if sys.common_u < Fraction::ZERO {
            SystemKind::InfinityType
        } else {
            SystemKind::Interior
        },
        system: sys,
    }
}

/// Candidate surfaces of a knot together with its Seifert twist, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSet {
    pub seifert_twist: Option<Fraction>,
    pub surfaces: Vec<CandidateSurface>,
}

/// One invariant bundle per admissible system, sorted by slope.
pub fn candidate_surfaces(knot: &MontesinosKnot) -> Result<SurfaceSet> {
    let tangles = knot.tangles();
    let baseline = seifert_system(tangles).ok();
    let seifert_twist = baseline.as_ref().map(|(_, t)| *t);
    let mut surfaces: Vec<CandidateSurface> = solve_systems(tangles)?
        .into_iter()
        .chain(infinity_systems(tangles)?)
        .map(|sys| {
            let is_seifert = baseline.as_ref().is_some_and(|(b, _)| *b == sys);
            assemble(sys, seifert_twist, is_seifert)
        })
        .collect();
    surfaces.sort_by(|a, b| {
        (a.slope, a.system.common_u, &a.r_cycle, &a.system).cmp(&(
            b.slope,
            b.system.common_u,
            &b.r_cycle,
            &b.system,
        ))
    });
    Ok(SurfaceSet {
        seifert_twist,
        surfaces,
    })
}
