//! Moments of an evolved state and the coefficient set they imply.

use crate::state::{Ensemble, FockState};
use num_complex::Complex64 as C64;
use raman_nc::model::{GaussianCoefficients, MeanAmplitudes};
use raman_nc::series::{CSeries, RSeries};
use raman_nc::witnesses::{witness_series, Modes, WitnessKind};
use raman_nc::{ModeId, ModePair, Picture, WitnessId};
use rayon::prelude::*;
use serde::Serialize;

/// Lab-frame moments, averaged over the ensemble.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub t: f64,
    pub omega: [f64; 4],
    /// `<a_j>`
    pub mean: [C64; 4],
    /// `<a_j† a_j>`
    pub mean_n: [f64; 4],
    /// `<a_j†² a_j²>`
    pub second_normal: [f64; 4],
    /// `<a_j²>`
    pub anomalous: [C64; 4],
    /// `<a_i† a_j† a_i a_j>` per pair
    pub cross_normal: [f64; 6],
    /// `<a_i a_j>` per pair
    pub cross_anomalous: [C64; 6],
    /// `<a_i† a_j>` per pair
    pub cross_mixed: [C64; 6],
    pub leakage: f64,
}

/// `a_j ψ` on the same truncated lattice.
pub fn lower(amp: &[C64], c: [usize; 4], j: ModeId) -> Vec<C64> {
    let stride: usize = c[j.index() + 1..].iter().product();
    let nj = c[j.index()];
    let block = stride * nj;
    let mut out = vec![C64::default(); amp.len()];
    out.par_chunks_mut(block).zip(amp.par_chunks(block)).for_each(|(dst, src)| {
        for n in 0..nj - 1 {
            let f = ((n + 1) as f64).sqrt();
            for i in 0..stride {
                dst[n * stride + i] = src[(n + 1) * stride + i] * f;
            }
        }
    });
    out
}

fn vdot(a: &[C64], b: &[C64]) -> C64 {
    a.par_iter().zip(b.par_iter()).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[C64]) -> f64 {
    a.par_iter().map(|x| x.norm_sqr()).sum()
}

fn pure_moments(s: &FockState, t: f64, omega: [f64; 4]) -> MomentReport {
    let c = s.cutoffs.0;
    let psi = &s.amplitudes;
    let phi: Vec<Vec<C64>> = ModeId::ALL.iter().map(|&j| lower(psi, c, j)).collect();
    let mut r = MomentReport {
        t,
        omega,
        mean: [C64::default(); 4],
        mean_n: [0.0; 4],
        second_normal: [0.0; 4],
        anomalous: [C64::default(); 4],
        cross_normal: [0.0; 6],
        cross_anomalous: [C64::default(); 6],
        cross_mixed: [C64::default(); 6],
        leakage: s.boundary_population(),
    };
    for j in ModeId::ALL {
        let i = j.index();
        r.mean[i] = vdot(psi, &phi[i]);
        r.mean_n[i] = norm_sqr(&phi[i]);
        let jj = lower(&phi[i], c, j);
        r.anomalous[i] = vdot(psi, &jj);
        r.second_normal[i] = norm_sqr(&jj);
    }
    for p in ModePair::ALL {
        let (a, b) = p.modes();
        let ab = lower(&phi[b.index()], c, a);
        r.cross_anomalous[p.index()] = vdot(psi, &ab);
        r.cross_mixed[p.index()] = vdot(&phi[a.index()], &phi[b.index()]);
        r.cross_normal[p.index()] = norm_sqr(&ab);
    }
    r
}

/// Weighted moments of an (evolved) ensemble at time `t`.
pub fn extract_moments(ens: &Ensemble, t: f64, omega: [f64; 4]) -> MomentReport {
    let parts: Vec<(f64, MomentReport)> =
        ens.components.par_iter().map(|(w, s)| (*w, pure_moments(s, t, omega))).collect();
    let mut r = parts[0].1.clone();
    let w0 = parts[0].0;
    let scale_c = |a: &mut [C64], w: f64| a.iter_mut().for_each(|z| *z *= w);
    let scale_r = |a: &mut [f64], w: f64| a.iter_mut().for_each(|z| *z *= w);
    scale_c(&mut r.mean, w0);
    scale_r(&mut r.mean_n, w0);
    scale_r(&mut r.second_normal, w0);
    scale_c(&mut r.anomalous, w0);
    scale_r(&mut r.cross_normal, w0);
    scale_c(&mut r.cross_anomalous, w0);
    scale_c(&mut r.cross_mixed, w0);
    for (w, m) in &parts[1..] {
        let add_c = |a: &mut [C64], b: &[C64]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y * w);
        let add_r = |a: &mut [f64], b: &[f64]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y * w);
        add_c(&mut r.mean, &m.mean);
        add_r(&mut r.mean_n, &m.mean_n);
        add_r(&mut r.second_normal, &m.second_normal);
        add_c(&mut r.anomalous, &m.anomalous);
        add_r(&mut r.cross_normal, &m.cross_normal);
        add_c(&mut r.cross_anomalous, &m.cross_anomalous);
        add_c(&mut r.cross_mixed, &m.cross_mixed);
        r.leakage = r.leakage.max(m.leakage);
    }
    r
}

/// Coefficient set implied by exact moments, in the interaction picture.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleCoefficients {
    pub t: f64,
    pub xi: [C64; 4],
    pub b: [f64; 4],
    pub c: [C64; 4],
    pub d: [C64; 6],
    pub dbar: [C64; 6],
    /// Exact `<a†² a²> − <n>²`.
    pub normal_variance: [f64; 4],
    /// Exact `<n_i n_j> − <n_i><n_j>`.
    pub cross_variance: [f64; 6],
}

fn rot(w: f64, t: f64) -> C64 {
    C64::new(0.0, w * t).exp()
}

impl MomentReport {
    pub fn coefficients(&self) -> OracleCoefficients {
        let (t, w) = (self.t, self.omega);
        let m = self.mean;
        let mut o = OracleCoefficients {
            t,
            xi: [C64::default(); 4],
            b: [0.0; 4],
            c: [C64::default(); 4],
            d: [C64::default(); 6],
            dbar: [C64::default(); 6],
            normal_variance: [0.0; 4],
            cross_variance: [0.0; 6],
        };
        for j in 0..4 {
            o.xi[j] = m[j] * rot(w[j], t);
            o.b[j] = self.mean_n[j] - m[j].norm_sqr();
            o.c[j] = (self.anomalous[j] - m[j] * m[j]) * rot(2.0 * w[j], t);
            o.normal_variance[j] = self.second_normal[j] - self.mean_n[j] * self.mean_n[j];
        }
        for p in ModePair::ALL {
            let (i, j) = p.modes();
            let (i, j, k) = (i.index(), j.index(), p.index());
            o.d[k] = (self.cross_anomalous[k] - m[i] * m[j]) * rot(w[i] + w[j], t);
            o.dbar[k] = -(self.cross_mixed[k] - m[i].conj() * m[j]) * rot(w[j] - w[i], t);
            o.cross_variance[k] = self.cross_normal[k] - self.mean_n[i] * self.mean_n[j];
        }
        o
    }
}

impl OracleCoefficients {
    /// Constant-series view, so the model's criterion formulas evaluate
    /// literally on the exact values.
    pub fn as_gaussian(&self) -> (GaussianCoefficients, MeanAmplitudes) {
        let k = GaussianCoefficients {
            picture: Picture::Interaction,
            t: self.t,
            omega: [0.0; 4],
            b: self.b.map(RSeries::constant),
            c: self.c.map(CSeries::constant),
            d: self.d.map(CSeries::constant),
            dbar: self.dbar.map(CSeries::constant),
        };
        let amp = MeanAmplitudes { picture: Picture::Interaction, t: self.t, omega: [0.0; 4], xi: self.xi.map(CSeries::constant) };
        (k, amp)
    }

    /// Witness value from the exact moments. Wave variances use the exact
    /// normally ordered number moments; every other criterion is evaluated
    /// on the extracted coefficients.
    pub fn witness(&self, id: WitnessId) -> f64 {
        match (id.kind, id.modes) {
            (WitnessKind::WPlus | WitnessKind::WMinus, Modes::Two(p)) => {
                let (i, j) = p.modes();
                let s = if id.kind == WitnessKind::WPlus { 2.0 } else { -2.0 };
                self.normal_variance[i.index()] + self.normal_variance[j.index()] + s * self.cross_variance[p.index()]
            }
            _ => {
                let (k, amp) = self.as_gaussian();
                witness_series(id, &k, &amp).eval(self.t)
            }
        }
    }
}
