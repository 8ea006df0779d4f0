//! Photon/phonon count distributions, integrated-intensity quasi-distributions
//! and conditional statistics in the spontaneous-scattering regime.

use crate::error::{domain, ModelError, Result};
use crate::model::{ModeId, ModePair};
use serde::Serialize;

/// Lattice on which a [`CountDistribution`] lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Support {
    /// n in [0, n_max]
    OneD { n_max: usize },
    /// (n1, n2) in [0, n1_max] x [0, n2_max], row-major in n1.
    TwoD { n1_max: usize, n2_max: usize },
}

/// Truncated nonnegative distribution with an analytic bound on the mass
/// beyond the lattice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountDistribution {
    pub support: Support,
    pub mass: Vec<f64>,
    pub tail_bound: f64,
}

impl CountDistribution {
    pub fn one_d(mass: Vec<f64>, tail_bound: f64) -> Self {
        let n_max = mass.len().saturating_sub(1);
        CountDistribution { support: Support::OneD { n_max }, mass, tail_bound }
    }

    pub fn two_d(n1_max: usize, n2_max: usize, f: impl Fn(usize, usize) -> f64, tail_bound: f64) -> Self {
        let mut mass = Vec::with_capacity((n1_max + 1) * (n2_max + 1));
        for a in 0..=n1_max {
            for b in 0..=n2_max {
                mass.push(f(a, b));
            }
        }
        CountDistribution { support: Support::TwoD { n1_max, n2_max }, mass, tail_bound }
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Mass at `n` (1-D); zero outside the lattice.
    pub fn p(&self, n: usize) -> f64 {
        match self.support {
            Support::OneD { n_max } if n <= n_max => self.mass[n],
            _ => 0.0,
        }
    }

    /// Mass at `(a, b)` (2-D); zero outside the lattice.
    pub fn p2(&self, a: usize, b: usize) -> f64 {
        match self.support {
            Support::TwoD { n1_max, n2_max } if a <= n1_max && b <= n2_max => self.mass[a * (n2_max + 1) + b],
            _ => 0.0,
        }
    }

    /// Mean and variance of a 1-D distribution (computed on the lattice).
    pub fn mean_variance(&self) -> (f64, f64) {
        let tot = self.total();
        let m = self.mass.iter().enumerate().map(|(n, p)| n as f64 * p).sum::<f64>() / tot;
        let v = self.mass.iter().enumerate().map(|(n, p)| (n as f64 - m).powi(2) * p).sum::<f64>() / tot;
        (m, v)
    }

    /// Sum of mass where `keep(a, b)` holds (2-D).
    pub fn mass_where(&self, keep: impl Fn(usize, usize) -> bool) -> f64 {
        match self.support {
            Support::TwoD { n1_max, n2_max } => {
                let mut s = 0.0;
                for a in 0..=n1_max {
                    for b in 0..=n2_max {
                        if keep(a, b) {
                            s += self.mass[a * (n2_max + 1) + b];
                        }
                    }
                }
                s
            }
            Support::OneD { .. } => 0.0,
        }
    }
}

/// Smallest `n_max` with geometric tail `ratio^(n_max+1) < 1e-12`.
pub fn default_n_max(ratio: f64) -> usize {
    if ratio <= 0.0 {
        return 0;
    }
    ((1e-12f64).ln() / ratio.ln()).ceil().max(0.0) as usize
}

/// p(n_S, n_V) = B^n/(1+B)^(n+1) on the diagonal, zero elsewhere.
pub fn joint_number_sv(b_s: f64, n_max: usize) -> Result<CountDistribution> {
    if !(b_s > 0.0) || !b_s.is_finite() {
        return domain("joint_number_sv needs B_S > 0");
    }
    let x = b_s / (1.0 + b_s);
    let diag: Vec<f64> = (0..=n_max).map(|n| x.powi(n as i32) / (1.0 + b_s)).collect();
    Ok(CountDistribution::two_d(n_max, n_max, |a, b| if a == b { diag[a] } else { 0.0 }, x.powi(n_max as i32 + 1)))
}

fn binom(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// One-sided joint distribution of pump and phonon fluctuation counts,
/// p(n_L, n_V) = C(n_V, n_L) (-K)^n_L (B_V + K)^(n_V - n_L) / (1 + B_V)^(n_V + 1).
pub fn joint_number_lv(b_v: f64, k_lv: f64, n_max: usize) -> Result<CountDistribution> {
    if !(b_v > 0.0) {
        return domain("joint_number_lv needs B_V > 0");
    }
    if k_lv > 0.0 || k_lv <= -b_v {
        return domain(format!("joint_number_lv needs -B_V < K_LV <= 0, got K_LV = {k_lv}"));
    }
    let (a, c) = (-k_lv / (1.0 + b_v), (b_v + k_lv) / (1.0 + b_v));
    let f = |nl: usize, nv: usize| {
        if nl > nv {
            0.0
        } else {
            binom(nv, nl) * a.powi(nl as i32) * c.powi((nv - nl) as i32) / (1.0 + b_v)
        }
    };
    let tail = (b_v / (1.0 + b_v)).powi(n_max as i32 + 1);
    Ok(CountDistribution::two_d(n_max, n_max, f, tail))
}

/// s-ordered quasi-distribution parameters for the (S,V) pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuasiDistributionSpec {
    pub pair: ModePair,
    pub s: f64,
    pub b_eff: f64,
    pub k_eff: f64,
    pub oscillatory: bool,
}

impl QuasiDistributionSpec {
    /// `B_Ss = B_S + (1-s)/2`, `K_SV,s = K_SV + (1-s) B_S + (1-s)^2/4`.
    pub fn sv(b_s: f64, k_sv: f64, s: f64) -> Result<Self> {
        if !(s <= 1.0) {
            return domain("ordering parameter must satisfy s <= 1");
        }
        let u = 1.0 - s;
        let b_eff = b_s + u / 2.0;
        if !(b_eff > 0.0) {
            return domain("s-shifted B must be positive");
        }
        let k_eff = k_sv + u * b_s + u * u / 4.0;
        Ok(QuasiDistributionSpec { pair: ModePair::SV, s, b_eff, k_eff, oscillatory: k_eff < 0.0 })
    }

    /// Spontaneous regime, where K_SV = -B_S.
    pub fn sv_spontaneous(b_s: f64, s: f64) -> Result<Self> {
        Self::sv(b_s, -b_s, s)
    }
}

// sin(x/a)/x, with the removable point handled by its series.
fn sinc_over(x: f64, a: f64) -> f64 {
    let u = x / a;
    if u.abs() < 1e-4 {
        let u2 = u * u;
        (1.0 - u2 / 6.0 + u2 * u2 / 120.0) / a
    } else {
        u.sin() / x
    }
}

/// Signed quasi-density of integrated intensities (W_S, W_V).
pub fn quasi_intensity_sv(w_s: f64, w_v: f64, spec: &QuasiDistributionSpec) -> Result<f64> {
    if w_s < 0.0 || w_v < 0.0 {
        return domain("integrated intensities must be >= 0");
    }
    if !spec.oscillatory {
        return Err(ModelError::Regime(format!("K_eff = {} >= 0; only the oscillatory branch is available", spec.k_eff)));
    }
    let b = spec.b_eff;
    let pref = (-(w_s + w_v) / (2.0 * b)).exp() / (std::f64::consts::PI * b);
    Ok(pref * sinc_over(w_s - w_v, (-spec.k_eff).sqrt()))
}

/// Glauber-Sudarshan quasi-density of (W_L, W_V).
pub fn quasi_intensity_lv(w_l: f64, w_v: f64, b_l: f64, b_v: f64) -> Result<f64> {
    if w_l < 0.0 || w_v < 0.0 {
        return domain("integrated intensities must be >= 0");
    }
    if !(b_l > 0.0 && b_v > 0.0) {
        return domain("quasi_intensity_lv needs B_L, B_V > 0");
    }
    let x = (b_v / b_l).sqrt() * w_l - (b_l / b_v).sqrt() * w_v;
    let pref = (-w_l / (2.0 * b_l) - w_v / (2.0 * b_v)).exp() / (std::f64::consts::PI * (b_l * b_v).sqrt());
    Ok(pref * sinc_over(x, b_l.sqrt()))
}

/// `s_th = 1 + B_i + B_j - sqrt((B_i + B_j)^2 - 4 K_ij)`.
pub fn threshold_ordering(pair: (ModeId, ModeId), b_i: f64, b_j: f64, k_ij: f64) -> Result<f64> {
    ModePair::new(pair.0, pair.1)?;
    let disc = (b_i + b_j).powi(2) - 4.0 * k_ij;
    if disc < 0.0 {
        return domain("negative discriminant in threshold ordering");
    }
    Ok(1.0 + b_i + b_j - disc.sqrt())
}

/// Simplified (S,V) threshold `1 + 2 B_S - 2 sqrt(B_S)`.
pub fn threshold_ordering_sv_simplified(b_s: f64) -> Result<f64> {
    if b_s < 0.0 {
        return domain("B_S must be >= 0");
    }
    Ok(1.0 + 2.0 * b_s - 2.0 * b_s.sqrt())
}

/// Simplified (L,V) threshold `1 + (g t)^2 I_L - 2 chi t sqrt(I_A)`.
pub fn threshold_ordering_lv_simplified(g_t: f64, chi_t: f64, i_l: f64, i_a: f64) -> Result<f64> {
    if i_l < 0.0 || i_a < 0.0 {
        return domain("intensities must be >= 0");
    }
    Ok(1.0 + g_t * g_t * i_l - 2.0 * chi_t * i_a.sqrt())
}

fn check_lv(b_l: f64, b_v: f64) -> Result<()> {
    if !(b_l >= 0.0 && b_v > b_l) {
        return domain(format!("requires B_V > B_L >= 0, got B_L = {b_l}, B_V = {b_v}"));
    }
    Ok(())
}

/// `F_L,C = 1 - B_L/B_V`.
pub fn conditional_fano_l(b_l: f64, b_v: f64) -> Result<f64> {
    if !(b_v > 0.0 && b_l >= 0.0 && b_l <= b_v) {
        return domain(format!("conditional_fano_L needs 0 <= B_L <= B_V, B_V > 0; got {b_l}, {b_v}"));
    }
    Ok(1.0 - b_l / b_v)
}

/// `F_V,C = ((n+1) r^2 - 1)/((n+1) r - 1) - 1` with `r = (1+B_V)/(1+B_L)`.
pub fn conditional_fano_v(n_l: usize, b_l: f64, b_v: f64) -> Result<f64> {
    check_lv(b_l, b_v)?;
    let r = (1.0 + b_v) / (1.0 + b_l);
    let m = (n_l + 1) as f64;
    let den = m * r - 1.0;
    if den == 0.0 {
        return domain("conditional_fano_V denominator vanishes");
    }
    Ok((m * r * r - 1.0) / den - 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conditioning {
    LGivenV,
    VGivenL,
}

/// Conditional count distribution for a measured count of the other mode.
///
/// `LGivenV` is binomial on [0, n_V]; `VGivenL` is a negative binomial on
/// n_V >= n_L truncated at `n_max`.
pub fn conditional_number(
    direction: Conditioning,
    given: usize,
    b_l: f64,
    b_v: f64,
    n_max: usize,
) -> Result<CountDistribution> {
    check_lv(b_l, b_v)?;
    match direction {
        Conditioning::LGivenV => {
            let x = b_l / b_v;
            let mass = (0..=given)
                .map(|k| binom(given, k) * x.powi(k as i32) * (1.0 - x).powi((given - k) as i32))
                .collect();
            Ok(CountDistribution::one_d(mass, 0.0))
        }
        Conditioning::VGivenL => {
            let q = (b_v - b_l) / (1.0 + b_v);
            let r = given + 1;
            let term = |m: usize| binom(given + m, m) * q.powi(m as i32) * (1.0 - q).powi(r as i32);
            let n_max = n_max.max(given);
            let mass = (0..=n_max).map(|nv| if nv < given { 0.0 } else { term(nv - given) }).collect();
            let m = n_max + 1 - given;
            let rho = q * (given + m + 1) as f64 / (m + 1) as f64;
            let tail = if rho < 1.0 { term(m) / (1.0 - rho) } else { 1.0 };
            Ok(CountDistribution::one_d(mass, tail))
        }
    }
}

/// Distribution of `n = n_V - n_L` plus its variance `(B_V-B_L)(1+B_V-B_L)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DifferenceDistribution {
    pub distribution: CountDistribution,
    pub variance: f64,
}

pub fn difference_number(b_l: f64, b_v: f64, n_max: usize) -> Result<DifferenceDistribution> {
    check_lv(b_l, b_v)?;
    let d = b_v - b_l;
    let x = d / (1.0 + d);
    let mass = (0..=n_max).map(|n| x.powi(n as i32) / (1.0 + d)).collect();
    Ok(DifferenceDistribution {
        distribution: CountDistribution::one_d(mass, x.powi(n_max as i32 + 1)),
        variance: d * (1.0 + d),
    })
}

/// Poisson distribution with mean `B_L + B_V`.
pub fn poisson_reference(b_l: f64, b_v: f64, n_max: usize) -> Result<CountDistribution> {
    if b_l < 0.0 || b_v < 0.0 {
        return domain("poisson_reference needs B_L, B_V >= 0");
    }
    let mu = b_l + b_v;
    let mut mass = Vec::with_capacity(n_max + 1);
    let mut p = (-mu).exp();
    for n in 0..=n_max {
        mass.push(p);
        p *= mu / (n + 1) as f64;
    }
    // p now holds the mass at n_max + 1
    let rho = mu / (n_max + 2) as f64;
    let tail = if rho < 1.0 { p / (1.0 - rho) } else { 1.0 };
    Ok(CountDistribution::one_d(mass, tail))
}

/// `R = 1 - 2 B_L/(B_L + B_V)`.
pub fn subshot_r(b_l: f64, b_v: f64) -> Result<f64> {
    if !(b_l + b_v > 0.0) {
        return domain("subshot_R needs B_L + B_V > 0");
    }
    Ok(1.0 - 2.0 * b_l / (b_l + b_v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removable_point_is_continuous() {
        let a = 0.3;
        let near = sinc_over(1e-5 * a, a);
        let far = sinc_over(2e-4 * a, a);
        assert!((near - 1.0 / a).abs() < 1e-9);
        assert!((far - (2e-4f64).sin() / (2e-4 * a)).abs() < 1e-12);
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binom(5, 2), 10.0);
        assert_eq!(binom(7, 0), 1.0);
        assert_eq!(binom(7, 7), 1.0);
    }
}
