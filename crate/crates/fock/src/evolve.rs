//! Time evolution under `H = Σ ω_j n_j − (g a_L a_S† a_V† + χ a_L a_V a_A† + h.c.)`.
//!
//! The coupling part is integrated with RK4 in the frame rotating with the
//! free Hamiltonian (detunings enter as explicit phases); the free phase
//! `exp(−i Σ ω_j n_j t)` is then applied exactly, so the returned state is
//! the lab-frame state.

use crate::state::{Ensemble, FockState};
use crate::{OracleError, Result};
use num_complex::Complex64 as C64;
use raman_nc::ScenarioParams;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub struct EvolveOptions {
    /// Richardson estimate of the state error that ends step doubling.
    pub tol: f64,
    pub max_steps: usize,
    /// Top-level population above which the run fails.
    pub leakage_limit: f64,
    pub drift_limit: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { tol: 1e-12, max_steps: 1 << 16, leakage_limit: 1e-6, drift_limit: 1e-9 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct EvolutionReport {
    pub steps: usize,
    pub error_estimate: f64,
    pub norm_drift: f64,
    /// Largest population on the highest retained level of any mode.
    pub leakage: f64,
}

struct Coupling {
    g: f64,
    chi: f64,
    // detunings of the Stokes and anti-Stokes processes
    d_s: f64,
    d_a: f64,
    sq: Vec<f64>,
}

impl Coupling {
    fn new(params: &ScenarioParams, nmax: usize) -> Self {
        let [wl, ws, wa, wv] = params.omega;
        Coupling {
            g: params.g,
            chi: params.chi,
            d_s: ws + wv - wl,
            d_a: wa - wl - wv,
            sq: (0..=nmax + 1).map(|n| (n as f64).sqrt()).collect(),
        }
    }

    /// out = −i H_I(time) psi
    fn apply(&self, psi: &[C64], out: &mut [C64], c: [usize; 4], time: f64) {
        let [nl, ns, na, nv] = c;
        let sl = ns * na * nv;
        let ss = na * nv;
        let sa = nv;
        let es = C64::new(0.0, self.d_s * time).exp();
        let ea = C64::new(0.0, self.d_a * time).exp();
        // −i times the coupling prefactors of H_I = −(g e^{iΔs t} a_L a_S† a_V† + χ e^{iΔa t} a_L a_V a_A† + h.c.)
        let gs = C64::new(0.0, self.g) * es;
        let gs_c = C64::new(0.0, self.g) * es.conj();
        let xa = C64::new(0.0, self.chi) * ea;
        let xa_c = C64::new(0.0, self.chi) * ea.conj();
        let q = &self.sq;
        out.par_chunks_mut(sl).enumerate().for_each(|(l, block)| {
            for s in 0..ns {
                for a in 0..na {
                    for v in 0..nv {
                        let mut acc = C64::default();
                        // a_L a_S† a_V† : from (l+1, s−1, a, v−1)
                        if l + 1 < nl && s > 0 && v > 0 {
                            let k = (l + 1) * sl + (s - 1) * ss + a * sa + v - 1;
                            acc += gs * (q[l + 1] * q[s] * q[v]) * psi[k];
                        }
                        // a_L† a_S a_V : from (l−1, s+1, a, v+1)
                        if l > 0 && s + 1 < ns && v + 1 < nv {
                            let k = (l - 1) * sl + (s + 1) * ss + a * sa + v + 1;
                            acc += gs_c * (q[l] * q[s + 1] * q[v + 1]) * psi[k];
                        }
                        // a_L a_V a_A† : from (l+1, s, a−1, v+1)
                        if l + 1 < nl && a > 0 && v + 1 < nv {
                            let k = (l + 1) * sl + s * ss + (a - 1) * sa + v + 1;
                            acc += xa * (q[l + 1] * q[a] * q[v + 1]) * psi[k];
                        }
                        // a_L† a_V† a_A : from (l−1, s, a+1, v−1)
                        if l > 0 && a + 1 < na && v > 0 {
                            let k = (l - 1) * sl + s * ss + (a + 1) * sa + v - 1;
                            acc += xa_c * (q[l] * q[a + 1] * q[v]) * psi[k];
                        }
                        block[s * ss + a * sa + v] = acc;
                    }
                }
            }
        });
    }
}

fn axpy(out: &mut [C64], x: &[C64], a: f64, y: &[C64]) {
    out.par_iter_mut().zip(x.par_iter().zip(y.par_iter())).for_each(|(o, (x, y))| *o = x + y * a);
}

fn rk4(psi: &FockState, cp: &Coupling, t: f64, steps: usize) -> Vec<C64> {
    let c = psi.cutoffs.0;
    let n = psi.amplitudes.len();
    let h = t / steps as f64;
    let mut y = psi.amplitudes.clone();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![C64::default(); n], vec![C64::default(); n], vec![C64::default(); n], vec![C64::default(); n], vec![C64::default(); n]);
    for step in 0..steps {
        let s0 = step as f64 * h;
        cp.apply(&y, &mut k1, c, s0);
        axpy(&mut tmp, &y, 0.5 * h, &k1);
        cp.apply(&tmp, &mut k2, c, s0 + 0.5 * h);
        axpy(&mut tmp, &y, 0.5 * h, &k2);
        cp.apply(&tmp, &mut k3, c, s0 + 0.5 * h);
        axpy(&mut tmp, &y, h, &k3);
        cp.apply(&tmp, &mut k4, c, s0 + h);
        y.par_iter_mut().enumerate().for_each(|(i, yi)| {
            *yi += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        });
    }
    y
}

fn free_phase(amp: &mut [C64], c: [usize; 4], omega: [f64; 4], t: f64) {
    let [_, ns, na, nv] = c;
    let sl = ns * na * nv;
    amp.par_chunks_mut(sl).enumerate().for_each(|(l, block)| {
        for (r, z) in block.iter_mut().enumerate() {
            let (s, a, v) = (r / (na * nv), (r / nv) % na, r % nv);
            let e = omega[0] * l as f64 + omega[1] * s as f64 + omega[2] * a as f64 + omega[3] * v as f64;
            *z *= C64::new(0.0, -e * t).exp();
        }
    });
}

fn max_cutoff(s: &FockState) -> usize {
    *s.cutoffs.0.iter().max().unwrap()
}

/// Fixed-step evolution without error control.
pub fn evolve_fixed(state: &FockState, params: &ScenarioParams, t: f64, steps: usize) -> FockState {
    let cp = Coupling::new(params, max_cutoff(state));
    let mut amp = if t == 0.0 { state.amplitudes.clone() } else { rk4(state, &cp, t, steps.max(1)) };
    free_phase(&mut amp, state.cutoffs.0, params.omega, t);
    FockState { cutoffs: state.cutoffs, amplitudes: amp }
}

fn dist(a: &[C64], b: &[C64]) -> f64 {
    a.par_iter().zip(b.par_iter()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

// Crude bound on the rate of the coupling part: pick the initial step count
// so that h times it stays small.
fn initial_steps(state: &FockState, params: &ScenarioParams, t: f64) -> usize {
    let [nl, ns, na, nv] = state.cutoffs.0.map(|n| n as f64);
    let rate = 2.0 * params.g * (nl * ns * nv).sqrt()
        + 2.0 * params.chi * (nl * na * nv).sqrt()
        + (params.omega[1] + params.omega[3] - params.omega[0]).abs()
        + (params.omega[2] - params.omega[0] - params.omega[3]).abs();
    ((t.abs() * rate / 0.25).ceil() as usize).max(4)
}

/// Evolve to time `t`, doubling the step count until the Richardson error
/// estimate `|ψ_2N − ψ_N| / 15` drops below `opts.tol`.
pub fn evolve(
    state: &FockState,
    params: &ScenarioParams,
    t: f64,
    opts: &EvolveOptions,
) -> Result<(FockState, EvolutionReport)> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(OracleError::Precondition(format!("evolution time must be finite and >= 0, got {t}")));
    }
    let norm0 = state.norm_sqr();
    if t == 0.0 {
        let leakage = state.boundary_population();
        return Ok((state.clone(), EvolutionReport { steps: 0, error_estimate: 0.0, norm_drift: 0.0, leakage }));
    }
    let cp = Coupling::new(params, max_cutoff(state));
    let mut n = initial_steps(state, params, t);
    let mut coarse = rk4(state, &cp, t, n);
    loop {
        let fine = rk4(state, &cp, t, 2 * n);
        let err = dist(&fine, &coarse) / 15.0;
        n *= 2;
        if err < opts.tol || n >= opts.max_steps {
            if err >= opts.tol {
                return Err(OracleError::Integration(format!(
                    "error estimate {err:.3e} above {:.1e} after {n} steps",
                    opts.tol
                )));
            }
            let mut amp = fine;
            free_phase(&mut amp, state.cutoffs.0, params.omega, t);
            let out = FockState { cutoffs: state.cutoffs, amplitudes: amp };
            let norm_drift = (out.norm_sqr() - norm0).abs();
            let leakage = out.boundary_population();
            let report = EvolutionReport { steps: n, error_estimate: err, norm_drift, leakage };
            if leakage > opts.leakage_limit {
                return Err(OracleError::Leakage(leakage));
            }
            if norm_drift > opts.drift_limit {
                return Err(OracleError::Integration(format!("norm drift {norm_drift:.3e}")));
            }
            return Ok((out, report));
        }
        coarse = fine;
    }
}

/// Evolve every ensemble component; components run concurrently.
pub fn evolve_ensemble(
    ens: &Ensemble,
    params: &ScenarioParams,
    t: f64,
    opts: &EvolveOptions,
) -> Result<(Ensemble, EvolutionReport)> {
    let out: Vec<_> = ens
        .components
        .par_iter()
        .map(|(w, s)| evolve(s, params, t, opts).map(|(s, r)| (*w, s, r)))
        .collect::<Result<_>>()?;
    let mut report = EvolutionReport::default();
    for (_, _, r) in &out {
        report.steps = report.steps.max(r.steps);
        report.error_estimate = report.error_estimate.max(r.error_estimate);
        report.norm_drift = report.norm_drift.max(r.norm_drift);
        report.leakage = report.leakage.max(r.leakage);
    }
    let components = out.into_iter().map(|(w, s, _)| (w, s)).collect();
    Ok((Ensemble { components, weight_tail: ens.weight_tail }, report))
}
