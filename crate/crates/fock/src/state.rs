use crate::{OracleError, Result};
use num_complex::Complex64 as C64;
use raman_nc::{coefficients, MeanAmplitudes, ModeId, Picture, ScenarioParams};

/// Per-mode truncation dimensions in (L, S, A, V) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Cutoffs(pub [usize; 4]);

fn poisson_tail(mean: f64, n: usize) -> f64 {
    // P(k >= n) for Poisson(mean)
    if mean == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let mut p = (-mean).exp();
    let mut below = 0.0;
    for k in 0..n {
        below += p;
        p *= mean / (k + 1) as f64;
    }
    // summing from below loses precision; bound the tail directly instead
    let rho = mean / (n + 1) as f64;
    if rho < 1.0 {
        p / (1.0 - rho)
    } else {
        (1.0 - below).max(p)
    }
}

impl Cutoffs {
    /// Smallest cutoffs whose occupation tail stays below `tol` up to time
    /// `t_max`, plus two levels of headroom.
    pub fn auto(params: &ScenarioParams, t_max: f64, tol: f64) -> Result<Self> {
        let mut s = params.clone();
        s.t = t_max;
        let k = coefficients(&s, Picture::Interaction)?;
        let amp = MeanAmplitudes::new(&s, Picture::Interaction);
        let mut out = [0usize; 4];
        for j in ModeId::ALL {
            let x = amp.series(j);
            // coherent part: initial amplitude plus twice the first-order drift
            let reach = x.c[0].norm() + 2.0 * t_max * x.c[1].norm();
            let b = k.b(j).max(0.0);
            let mean = reach * reach + 2.0 * b;
            let ratio = 2.0 * b / (1.0 + 2.0 * b);
            // a few levels even for modes that start empty
            let mut n = 4;
            while n < 400 && (poisson_tail(mean, n) > tol || ratio.powi(n as i32) > tol) {
                n += 1;
            }
            out[j.index()] = n + 2;
        }
        Ok(Cutoffs(out))
    }

    pub fn dim(&self) -> usize {
        self.0.iter().product()
    }

    pub fn doubled(&self) -> Self {
        Cutoffs(self.0.map(|n| 2 * n))
    }
}

/// Dense amplitude tensor over the truncated four-mode number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    pub cutoffs: Cutoffs,
    pub amplitudes: Vec<C64>,
}

impl FockState {
    pub fn vacuum(cutoffs: Cutoffs) -> Self {
        let mut amplitudes = vec![C64::default(); cutoffs.dim()];
        amplitudes[0] = C64::new(1.0, 0.0);
        FockState { cutoffs, amplitudes }
    }

    pub fn index(&self, n: [usize; 4]) -> usize {
        let [_, ns, na, nv] = self.cutoffs.0;
        ((n[0] * ns + n[1]) * na + n[2]) * nv + n[3]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Product state from one amplitude vector per mode.
    pub fn product(factors: &[Vec<C64>; 4]) -> Self {
        let cutoffs = Cutoffs(std::array::from_fn(|j| factors[j].len()));
        let mut amplitudes = Vec::with_capacity(cutoffs.dim());
        for l in &factors[0] {
            for s in &factors[1] {
                for a in &factors[2] {
                    for v in &factors[3] {
                        amplitudes.push(l * s * a * v);
                    }
                }
            }
        }
        FockState { cutoffs, amplitudes }
    }

    /// Population of each Fock level of mode `j`.
    pub fn level_populations(&self, j: ModeId) -> Vec<f64> {
        let c = self.cutoffs.0;
        let mut pop = vec![0.0; c[j.index()]];
        let mut idx = 0;
        for l in 0..c[0] {
            for s in 0..c[1] {
                for a in 0..c[2] {
                    for v in 0..c[3] {
                        let n = [l, s, a, v][j.index()];
                        pop[n] += self.amplitudes[idx].norm_sqr();
                        idx += 1;
                    }
                }
            }
        }
        pop
    }

    /// Largest population found on the top level of any mode.
    pub fn boundary_population(&self) -> f64 {
        ModeId::ALL
            .iter()
            .map(|&j| *self.level_populations(j).last().unwrap_or(&0.0))
            .fold(0.0, f64::max)
    }
}

/// Weighted mixture of pure states.
#[derive(Clone, Debug)]
pub struct Ensemble {
    pub components: Vec<(f64, FockState)>,
    /// Probability mass dropped when the mixture was truncated; the
    /// remaining weights are renormalised to one.
    pub weight_tail: f64,
}

impl Ensemble {
    pub fn pure(state: FockState) -> Self {
        Ensemble { components: vec![(1.0, state)], weight_tail: 0.0 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PrepareOptions {
    /// Largest tolerated truncated norm of any coherent factor.
    pub tol: f64,
    /// Number of thermal phonon components; `None` picks it from `tol`.
    pub thermal_components: Option<usize>,
}

impl Default for PrepareOptions {
    fn default() -> Self {
        PrepareOptions { tol: 1e-10, thermal_components: None }
    }
}

/// Truncated coherent amplitudes `exp(-|x|^2/2) x^n / sqrt(n!)` and the norm deficit.
pub fn coherent_amplitudes(x: C64, n: usize) -> (Vec<C64>, f64) {
    let mut c = Vec::with_capacity(n);
    let mut cur = C64::new((-x.norm_sqr() / 2.0).exp(), 0.0);
    for k in 0..n {
        c.push(cur);
        cur = cur * x / ((k + 1) as f64).sqrt();
    }
    let deficit = 1.0 - c.iter().map(|a| a.norm_sqr()).sum::<f64>();
    (c, deficit.max(0.0))
}

fn suggested_cutoff(x: C64, tol: f64) -> usize {
    (1..1000).find(|&n| coherent_amplitudes(x, n).1 <= tol).unwrap_or(1000)
}

/// Product of truncated coherent states; a thermal phonon becomes a
/// Fock-diagonal mixture with geometric weights.
pub fn prepare_initial(params: &ScenarioParams, cutoffs: Cutoffs, opts: PrepareOptions) -> Result<Ensemble> {
    params.validate()?;
    let thermal = params.is_thermal();
    let mut factors: [Vec<C64>; 4] = Default::default();
    for j in ModeId::ALL {
        let n = cutoffs.0[j.index()];
        if n == 0 {
            return Err(OracleError::Precondition("cutoffs must be >= 1".into()));
        }
        let x = if j == ModeId::V && thermal { C64::default() } else { params.xi(j) };
        let (mut c, deficit) = coherent_amplitudes(x, n);
        if deficit > opts.tol {
            return Err(OracleError::Cutoff {
                mode: j.label(),
                cutoff: n,
                deficit,
                suggested: suggested_cutoff(x, opts.tol),
            });
        }
        let norm = (1.0 - deficit).sqrt();
        c.iter_mut().for_each(|a| *a /= norm);
        factors[j.index()] = c;
    }
    if !thermal {
        return Ok(Ensemble::pure(FockState::product(&factors)));
    }

    let n = params.mean_phonon;
    let nv = cutoffs.0[3];
    let x = n / (n + 1.0);
    let count = match opts.thermal_components {
        Some(k) => k,
        None if n == 0.0 => 1,
        None => ((opts.tol.ln() / x.ln()).ceil() as usize).max(1),
    };
    if count > nv {
        return Err(OracleError::Cutoff {
            mode: "V",
            cutoff: nv,
            deficit: x.powi(nv as i32),
            suggested: count + 2,
        });
    }
    let weights: Vec<f64> = (0..count).map(|k| x.powi(k as i32) / (n + 1.0)).collect();
    let total: f64 = weights.iter().sum();
    let components = weights
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let mut f = factors.clone();
            f[3] = vec![C64::default(); nv];
            f[3][k] = C64::new(1.0, 0.0);
            (w / total, FockState::product(&f))
        })
        .collect();
    Ok(Ensemble { components, weight_tail: 1.0 - total })
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

// Generalized Laguerre L_n^(a)(x) by upward recurrence.
fn laguerre(n: usize, a: usize, x: f64) -> f64 {
    let a = a as f64;
    let (mut l0, mut l1) = (1.0, 1.0 + a - x);
    if n == 0 {
        return l0;
    }
    for k in 1..n {
        let kf = k as f64;
        let l2 = ((2.0 * kf + 1.0 + a - x) * l1 - (kf + a) * l0) / (kf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// Matrix element `<m|D(b)|n>` of the displacement operator.
pub fn displacement_element(m: usize, n: usize, b: C64) -> C64 {
    let x = b.norm_sqr();
    if m >= n {
        let mag = (0.5 * (ln_factorial(n) - ln_factorial(m)) - x / 2.0).exp();
        b.powu((m - n) as u32) * mag * laguerre(n, m - n, x)
    } else {
        let mag = (0.5 * (ln_factorial(m) - ln_factorial(n)) - x / 2.0).exp();
        (-b.conj()).powu((n - m) as u32) * mag * laguerre(m, n - m, x)
    }
}

/// Apply `D(b)` to mode `j`, keeping the cutoff.
pub fn displace(state: &FockState, j: ModeId, b: C64) -> FockState {
    let c = state.cutoffs.0;
    let nj = c[j.index()];
    let mat: Vec<C64> = (0..nj * nj).map(|k| displacement_element(k / nj, k % nj, b)).collect();
    let mut out = FockState { cutoffs: state.cutoffs, amplitudes: vec![C64::default(); state.amplitudes.len()] };
    let stride: usize = c[j.index() + 1..].iter().product();
    let block = stride * nj;
    for (src, dst) in state.amplitudes.chunks(block).zip(out.amplitudes.chunks_mut(block)) {
        for inner in 0..stride {
            for m in 0..nj {
                let mut acc = C64::default();
                for n in 0..nj {
                    acc += mat[m * nj + n] * src[n * stride + inner];
                }
                dst[m * stride + inner] = acc;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displacement_of_vacuum_is_coherent() {
        let b = C64::new(0.7, -0.4);
        let (c, _) = coherent_amplitudes(b, 20);
        for (m, cm) in c.iter().enumerate() {
            assert!((displacement_element(m, 0, b) - cm).norm() < 1e-14);
        }
    }

    #[test]
    fn displacement_is_unitary_on_low_levels() {
        let b = C64::new(1.1, 0.5);
        let n = 60;
        for (i, j) in [(0usize, 0usize), (1, 3), (4, 4), (2, 7)] {
            let s: C64 = (0..n).map(|m| displacement_element(m, i, b).conj() * displacement_element(m, j, b)).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((s - want).norm() < 1e-12, "{i} {j} {s}");
        }
    }
}
