//! Fractional-degree Chebyshev polynomials and the fixed-point phase
//! schedule built from them.
//!
//! For `l` iterations with `L = 2l + 1` and target error `epsilon`,
//! `gamma = 1 / T_{1/L}(1/epsilon)` and for `r = 1..=l`
//!
//! ```text
//! phi_r    = -2 arccot( tan(2 pi r / L) * sqrt(1 - gamma^2) )
//! varphi_r = -phi_{l - r + 1}
//! ```
//!
//! `arccot(y)` is taken as `pi/2 - atan(y)`, continuous with range `(0, pi)`;
//! the argument is negative whenever `2 pi r / L > pi / 2`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Inputs this close below 1 are treated as exactly 1 so that the
/// hyperbolic branch never sees `x^2 - 1 < 0`.
const BRANCH_CLAMP: f64 = 1e-12;

const INTEGER_DEGREE_MAX: f64 = 64.0;

/// First-kind Chebyshev function `T_m(x)` for real degree `m` on `[-1, inf)`.
///
/// `cos(m arccos x)` below 1, `cosh(m arccosh x)` at and above 1, with
/// `arccosh x = ln(x + sqrt(x^2 - 1))`. Small integer degrees are the
/// ordinary polynomials and go through the three-term recurrence, which is
/// exact where the hyperbolic form loses digits to cancellation in `ln`.
pub fn chebyshev_t(m: f64, x: f64) -> Result<f64> {
    if x.is_nan() || x < -1.0 {
        return Err(Error::Domain(format!("T_m(x) is undefined for x = {x} < -1")));
    }
    if m.fract() == 0.0 && (0.0..=INTEGER_DEGREE_MAX).contains(&m) {
        let (mut prev, mut cur) = (1.0, x);
        if m == 0.0 {
            return Ok(1.0);
        }
        for _ in 1..m as u32 {
            (prev, cur) = (cur, 2.0 * x * cur - prev);
        }
        return Ok(cur);
    }
    let x = if x < 1.0 && 1.0 - x <= BRANCH_CLAMP { 1.0 } else { x };
    if x < 1.0 {
        Ok((m * x.acos()).cos())
    } else {
        let arccosh = (x + (x * x - 1.0).sqrt()).ln();
        Ok((m * arccosh).cosh())
    }
}

/// `gamma = 1 / T_{1/L}(1/epsilon)` for odd `L`.
pub fn gamma_from(big_l: u64, epsilon: f64) -> Result<f64> {
    if big_l == 0 || big_l % 2 == 0 {
        return Err(invalid(format!("L = {big_l} must be a positive odd integer")));
    }
    check_epsilon(epsilon)?;
    Ok(chebyshev_t(1.0 / big_l as f64, 1.0 / epsilon)?.recip())
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    Ok(())
}

fn arccot(y: f64) -> f64 {
    FRAC_PI_2 - y.atan()
}

/// One `(phi_r, varphi_r)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnglePair {
    /// Phase of the zero-state reflection `S_0`.
    pub phi: f64,
    /// Phase of the oracle `S_f`.
    pub varphi: f64,
}

/// Angles for `l` fixed-point iterations, applied in ascending `r` order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSchedule {
    pub l: u64,
    #[serde(rename = "L")]
    pub big_l: u64,
    pub epsilon: f64,
    pub gamma: f64,
    pub pairs: Vec<AnglePair>,
}

/// Build the schedule for `l` iterations and target error `epsilon`.
pub fn phase_angles(l: u64, epsilon: f64) -> Result<PhaseSchedule> {
    if l == 0 {
        return Err(invalid("schedule length l must be positive"));
    }
    let big_l = 2 * l + 1;
    let gamma = gamma_from(big_l, epsilon)?;
    let spread = (1.0 - gamma * gamma).max(0.0).sqrt();
    let phis: Vec<f64> = (1..=l)
        .map(|r| -2.0 * arccot((2.0 * PI * r as f64 / big_l as f64).tan() * spread))
        .collect();
    let pairs = (0..l as usize)
        .map(|i| AnglePair {
            phi: phis[i],
            varphi: -phis[l as usize - 1 - i],
        })
        .collect();
    Ok(PhaseSchedule {
        l,
        big_l,
        epsilon,
        gamma,
        pairs,
    })
}

impl PhaseSchedule {
    /// Diagnostic dump: comment header, then `r,phi,varphi` rows at 15
    /// significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str("# fixed-point phase schedule v1\n");
        let _ = writeln!(out, "# l = {}", self.l);
        let _ = writeln!(out, "# L = {}", self.big_l);
        let _ = writeln!(out, "# epsilon = {:.14e}", self.epsilon);
        let _ = writeln!(out, "# gamma = {:.14e}", self.gamma);
        out.push_str("r,phi,varphi\n");
        for (i, pair) in self.pairs.iter().enumerate() {
            let _ = writeln!(out, "{},{:.14e},{:.14e}", i + 1, pair.phi, pair.varphi);
        }
        out
    }
}
