//! Where a Chern pair sits in the plane of surface invariants.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{from_int, int, ratio, Int, Rational};
use crate::cover::ChernPair;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeographyReport {
    pub chern: ChernPair,
    /// `(c1^2 - 2 c2) / 3`, exact; integrality is reported, not assumed.
    pub signature: Rational,
    /// `c1^2 / c2`, absent when `c2 = 0`.
    pub slope: Option<Rational>,
    /// `12 chi = c1^2 + c2`.
    pub chi_times_12: Int,
    /// Bogomolov-Miyaoka-Yau: `c1^2 <= 3 c2`.
    pub bmy_ok: bool,
    /// `5 c1^2 >= c2 - 36`.
    pub noether_line_ok: bool,
    pub nonneg_ok: bool,
    /// `c1^2 + c2 = 0 mod 12`.
    pub noether_mod12_ok: bool,
}

impl GeographyReport {
    pub fn signature_integral(&self) -> bool {
        self.signature.is_integer()
    }

    /// Names of every diagnostic that failed.
    pub fn diagnostic_flags(&self) -> Vec<String> {
        let mut flags = Vec::new();
        if !self.bmy_ok {
            flags.push("bmy-violated".to_owned());
        }
        if !self.nonneg_ok {
            flags.push("negative-chern-number".to_owned());
        }
        if !self.noether_line_ok {
            flags.push("noether-line-violated".to_owned());
        }
        if !self.noether_mod12_ok {
            flags.push("noether-mod12-warning".to_owned());
        }
        if !self.signature_integral() {
            flags.push("signature-not-integral".to_owned());
        }
        flags
    }
}

pub fn geography(chern: &ChernPair) -> GeographyReport {
    let ChernPair { c1sq, c2 } = chern;
    let signature = ratio(c1sq - c2 * 2, 3);
    let slope = if c2.is_zero() { None } else { Some(ratio(c1sq.clone(), c2.clone())) };
    let chi_times_12 = c1sq + c2;
    GeographyReport {
        chern: chern.clone(),
        signature,
        slope,
        noether_mod12_ok: chi_times_12.is_multiple_of(&int(12)),
        chi_times_12,
        bmy_ok: c1sq <= &(c2 * 3),
        noether_line_ok: c1sq * 5 >= c2 - 36,
        nonneg_ok: !c1sq.is_negative() && !c2.is_negative(),
    }
}

/// First `k` at which the signature turns positive after having been
/// negative at some earlier `k`. `taus` is indexed from `k = 1`.
pub fn sign_change_k(taus: &[Rational]) -> Option<u64> {
    let mut seen_negative = false;
    for (i, tau) in taus.iter().enumerate() {
        if tau.is_negative() {
            seen_negative = true;
        } else if seen_negative && tau.is_positive() {
            return Some(i as u64 + 1);
        }
    }
    None
}

pub fn crossing_ratio(k: u64, n: u64) -> Rational {
    ratio(k as i64, n as i64)
}

pub(crate) fn slope_of(report: &GeographyReport) -> Option<&Rational> {
    report.slope.as_ref()
}

pub(crate) fn tau_times_three(chern: &ChernPair) -> Rational {
    from_int(&(&chern.c1sq - &chern.c2 * 2))
}
