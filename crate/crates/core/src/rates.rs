//! Log-determinant rate formulas for the three transmission schemes and the
//! achievable-region membership test.
//!
//! All public rates are in bits per channel use.

use std::fmt;
use std::str::FromStr;

use crate::channel::{ChannelRealization, InputCovariance};
use crate::error::{argument, domain, Error, Result};
use crate::linalg::{cholesky_hpd, congruence, identity, log2_det_hpd, CMat};

/// Slack (bits) used when testing region inequalities.
pub const REGION_SLACK: f64 = 1e-9;

/// Transmission scheme of the helper user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// User 1 alone.
    No,
    /// User 2 transmits Gaussian noise.
    Gn,
    /// User 2 transmits open messages that double as jamming.
    SitCj,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::No, Scheme::Gn, Scheme::SitCj];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::No => "no",
            Scheme::Gn => "gn",
            Scheme::SitCj => "sitcj",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "no" => Ok(Scheme::No),
            "gn" => Ok(Scheme::Gn),
            "sitcj" | "sit-cj" => Ok(Scheme::SitCj),
            other => Err(argument(format!("unknown scheme '{other}'"))),
        }
    }
}

/// The three clamped upper bounds on user 1's secrecy rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyComponents {
    /// `[I(X₁;Y|X₂) − I(X₁;Z)]⁺`: user 2 is noise at the eavesdropper.
    pub r_hat: f64,
    /// `[I(X₁,X₂;Y) − I(X₁,X₂;Z)]⁺`.
    pub r_tilde: f64,
    /// `[I(X₁;Y|X₂) − I(X₁;Z|X₂)]⁺`: user 2 is known at the eavesdropper.
    pub r_bar: f64,
}

impl SecrecyComponents {
    /// `min{r_hat, r_tilde}`, the bound achieved when user 2 jams.
    pub fn jamming_bound(&self) -> f64 {
        self.r_hat.min(self.r_tilde)
    }

    pub fn sit_cj_rate(&self) -> f64 {
        self.jamming_bound().max(self.r_bar)
    }
}

/// Secrecy rate and open-message sum rate of one scheme at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    pub scheme: Scheme,
    pub rs: f64,
    pub ro: f64,
}

impl RateReport {
    /// Open rate is forced to zero whenever there is no secrecy rate.
    fn new(scheme: Scheme, rs: f64, open: f64) -> Self {
        let rs = positive_part(rs);
        let ro = if rs > 0.0 { positive_part(open) } else { 0.0 };
        Self { scheme, rs, ro }
    }

    pub fn total(&self) -> f64 {
        self.rs + self.ro
    }
}

/// A rate tuple `(R₁ˢ, R₁ᵒ, R₂ᵒ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTriple {
    pub r1s: f64,
    pub r1o: f64,
    pub r2o: f64,
}

impl RateTriple {
    pub fn new(r1s: f64, r1o: f64, r2o: f64) -> Result<Self> {
        for (name, v) in [("r1s", r1s), ("r1o", r1o), ("r2o", r2o)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(argument(format!("{name} = {v} must be finite and nonnegative")));
            }
        }
        Ok(Self { r1s, r1o, r2o })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionMembership {
    pub in_r1: bool,
    pub in_r2: bool,
    pub in_r3: bool,
}

impl RegionMembership {
    pub fn any(&self) -> bool {
        self.in_r1 || self.in_r2 || self.in_r3
    }
}

/// Mutual-information terms (bits) for Gaussian inputs with covariances
/// `f1`, `f2`. `Y` is the legitimate receiver, `Z` the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualInformation {
    pub x1_y_given_x2: f64,
    pub x2_y_given_x1: f64,
    pub x1x2_y: f64,
    pub x2_y: f64,
    pub x1_z: f64,
    pub x2_z: f64,
    pub x1x2_z: f64,
    pub x1_z_given_x2: f64,
    pub x2_z_given_x1: f64,
}

fn positive_part(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// `log₂|h·f·hᴴ·n⁻¹ + I|`.
///
/// Evaluated as `log₂|L⁻¹h·f·hᴴL⁻ᴴ + I|` with `n = L·Lᴴ`, so `n` is never
/// inverted explicitly.
pub fn weighted_logdet_rate(h: &CMat, f: &InputCovariance, n: &CMat) -> Result<f64> {
    let (r, t) = h.shape();
    if f.dim() != t {
        return Err(argument(format!(
            "covariance is {0}x{0} but channel has {t} columns",
            f.dim()
        )));
    }
    if n.shape() != (r, r) {
        return Err(argument(format!(
            "noise covariance is {:?}, expected ({r}, {r})",
            n.shape()
        )));
    }
    if r == 0 {
        return Ok(0.0);
    }
    let chol = cholesky_hpd(n)
        .ok_or_else(|| domain("noise covariance is not positive definite"))?;
    let l = chol.l();
    let whitened = l
        .solve_lower_triangular(h)
        .ok_or_else(|| domain("noise covariance is singular"))?;
    let k = identity(r) + congruence(&whitened, f.matrix());
    Ok(positive_part(log2_det_hpd(&k)?))
}

fn check_dims(ch: &ChannelRealization, f1: &InputCovariance, f2: Option<&InputCovariance>) -> Result<()> {
    if f1.dim() != ch.t1() {
        return Err(argument(format!("f1 is {0}x{0}, expected T1 = {1}", f1.dim(), ch.t1())));
    }
    if let Some(f2) = f2 {
        if f2.dim() != ch.t2() {
            return Err(argument(format!("f2 is {0}x{0}, expected T2 = {1}", f2.dim(), ch.t2())));
        }
    }
    Ok(())
}

/// `I + Σ h·f·hᴴ`.
fn received_covariance(rows: usize, terms: &[(&CMat, &InputCovariance)]) -> CMat {
    let mut k = identity(rows);
    for (h, f) in terms {
        k += congruence(h, f.matrix());
    }
    k
}

/// Log-determinants shared by the rate formulas.
struct LogDets {
    /// log₂|H₁F₁H₁ᴴ + I|
    b1: f64,
    /// log₂|H₂F₂H₂ᴴ + I|
    b2: f64,
    /// log₂|H₁F₁H₁ᴴ + H₂F₂H₂ᴴ + I|
    b12: f64,
    /// log₂|G₁F₁G₁ᴴ + I|
    e1: f64,
    /// log₂|G₂F₂G₂ᴴ + I|
    e2: f64,
    /// log₂|G₁F₁G₁ᴴ + G₂F₂G₂ᴴ + I|
    e12: f64,
}

impl LogDets {
    fn new(ch: &ChannelRealization, f1: &InputCovariance, f2: &InputCovariance) -> Result<Self> {
        let (b, e) = (ch.b(), ch.e());
        Ok(Self {
            b1: log2_det_hpd(&received_covariance(b, &[(ch.h1(), f1)]))?,
            b2: log2_det_hpd(&received_covariance(b, &[(ch.h2(), f2)]))?,
            b12: log2_det_hpd(&received_covariance(b, &[(ch.h1(), f1), (ch.h2(), f2)]))?,
            e1: log2_det_hpd(&received_covariance(e, &[(ch.g1(), f1)]))?,
            e2: log2_det_hpd(&received_covariance(e, &[(ch.g2(), f2)]))?,
            e12: log2_det_hpd(&received_covariance(e, &[(ch.g1(), f1), (ch.g2(), f2)]))?,
        })
    }
}

/// The clamped secrecy-rate components `(r̂, r̃, r̄)`.
pub fn secrecy_components(
    ch: &ChannelRealization,
    f1: &InputCovariance,
    f2: &InputCovariance,
) -> Result<SecrecyComponents> {
    check_dims(ch, f1, Some(f2))?;
    let ld = LogDets::new(ch, f1, f2)?;
    let eve_noise = received_covariance(ch.e(), &[(ch.g2(), f2)]);
    let leak_jammed = weighted_logdet_rate(ch.g1(), f1, &eve_noise)?;
    Ok(SecrecyComponents {
        r_hat: positive_part(ld.b1 - leak_jammed),
        r_tilde: positive_part(ld.b12 - ld.e12),
        r_bar: positive_part(ld.b1 - ld.e1),
    })
}

/// Secrecy rate `max{min{r̂, r̃}, r̄}` and the open-message sum rate
/// `I(X₁,X₂;Y) − rs` of the SIT-CJ scheme.
pub fn rate_sit_cj(
    ch: &ChannelRealization,
    f1: &InputCovariance,
    f2: &InputCovariance,
) -> Result<RateReport> {
    let comps = secrecy_components(ch, f1, f2)?;
    let rs = comps.sit_cj_rate();
    let total = log2_det_hpd(&received_covariance(ch.b(), &[(ch.h1(), f1), (ch.h2(), f2)]))?;
    Ok(RateReport::new(Scheme::SitCj, rs, total - rs))
}

/// Classical wiretap rate of user 1 alone; the open rate is
/// `log₂|G₁F₁G₁ᴴ + I|`.
pub fn rate_no_jamming(ch: &ChannelRealization, f1: &InputCovariance) -> Result<RateReport> {
    check_dims(ch, f1, None)?;
    let bob = log2_det_hpd(&received_covariance(ch.b(), &[(ch.h1(), f1)]))?;
    let eve = log2_det_hpd(&received_covariance(ch.e(), &[(ch.g1(), f1)]))?;
    Ok(RateReport::new(Scheme::No, bob - eve, eve))
}

/// Secrecy rate when user 2 sends Gaussian noise heard by both receivers;
/// the open rate is `log₂|G₁F₁G₁ᴴ(G₂F₂G₂ᴴ + I)⁻¹ + I|`.
pub fn rate_gn_jamming(
    ch: &ChannelRealization,
    f1: &InputCovariance,
    f2: &InputCovariance,
) -> Result<RateReport> {
    check_dims(ch, f1, Some(f2))?;
    let bob_noise = received_covariance(ch.b(), &[(ch.h2(), f2)]);
    let eve_noise = received_covariance(ch.e(), &[(ch.g2(), f2)]);
    let bob = weighted_logdet_rate(ch.h1(), f1, &bob_noise)?;
    let eve = weighted_logdet_rate(ch.g1(), f1, &eve_noise)?;
    Ok(RateReport::new(Scheme::Gn, bob - eve, eve))
}

/// Rate report of `scheme` at `(f1, f2)`; `f2` is ignored for [`Scheme::No`].
pub fn rate_report(
    scheme: Scheme,
    ch: &ChannelRealization,
    f1: &InputCovariance,
    f2: &InputCovariance,
) -> Result<RateReport> {
    match scheme {
        Scheme::No => rate_no_jamming(ch, f1),
        Scheme::Gn => rate_gn_jamming(ch, f1, f2),
        Scheme::SitCj => rate_sit_cj(ch, f1, f2),
    }
}

pub fn mutual_information(
    ch: &ChannelRealization,
    f1: &InputCovariance,
    f2: &InputCovariance,
) -> Result<MutualInformation> {
    check_dims(ch, f1, Some(f2))?;
    let ld = LogDets::new(ch, f1, f2)?;
    Ok(MutualInformation {
        x1_y_given_x2: ld.b1,
        x2_y_given_x1: ld.b2,
        x1x2_y: ld.b12,
        x2_y: ld.b12 - ld.b1,
        x1_z: ld.e12 - ld.e2,
        x2_z: ld.e12 - ld.e1,
        x1x2_z: ld.e12,
        x1_z_given_x2: ld.e1,
        x2_z_given_x1: ld.e2,
    })
}

/// Tests a rate tuple against every inequality of the three regions whose
/// union is achievable for the given input covariances.
pub fn region_membership(
    ch: &ChannelRealization,
    f1: &InputCovariance,
    f2: &InputCovariance,
    rates: &RateTriple,
) -> Result<RegionMembership> {
    let mi = mutual_information(ch, f1, f2)?;
    Ok(membership_from_information(&mi, rates))
}

pub fn membership_from_information(mi: &MutualInformation, rates: &RateTriple) -> RegionMembership {
    let le = |lhs: f64, rhs: f64| lhs <= rhs + REGION_SLACK;
    let RateTriple { r1s, r1o, r2o } = *rates;

    // Bob's MAC constraints are common to all three regions.
    let mac = le(r1s + r1o, mi.x1_y_given_x2)
        && le(r2o, mi.x2_y_given_x1)
        && le(r1s + r1o + r2o, mi.x1x2_y);

    let in_r1 = mac
        && le(r1s, positive_part(mi.x1_y_given_x2 - mi.x1_z))
        && le(r1s, positive_part(mi.x1x2_y - mi.x1x2_z))
        && le(r1s + r1o, positive_part(mi.x1x2_y - mi.x2_z))
        && le(r1s + r2o, positive_part(mi.x1x2_y - mi.x1_z));

    let in_r2 = mac
        && le(r1s, positive_part(mi.x1_y_given_x2 - mi.x1_z_given_x2))
        && le(r1s + r2o, positive_part(mi.x1x2_y - mi.x1_z_given_x2));

    let in_r3 = r1s <= REGION_SLACK
        && le(r1o, mi.x1_y_given_x2)
        && le(r2o, mi.x2_y_given_x1)
        && le(r1o + r2o, mi.x1x2_y);

    RegionMembership { in_r1, in_r2, in_r3 }
}
