//! Joint photocount statistics of two modes of an evolved ensemble.

use crate::moments::extract_moments;
use crate::state::{displace, Ensemble};
use crate::{OracleError, Result};
use raman_nc::distributions::CountDistribution;
use raman_nc::ModePair;
use rayon::prelude::*;

/// Joint distribution `P(n_i, n_j)` for `n <= n_max`, marginalised over the
/// other two modes. With `fluctuations` set, both modes are first displaced
/// by minus their mean amplitude, so the counts are those of the fluctuation
/// fields. `tail_bound` is the state's mass outside the reported lattice.
pub fn joint_counting(ens: &Ensemble, pair: ModePair, n_max: usize, fluctuations: bool) -> Result<CountDistribution> {
    let first = &ens.components.first().ok_or_else(|| OracleError::Precondition("empty ensemble".into()))?.1;
    let c = first.cutoffs.0;
    let (mi, mj) = pair.modes();
    let (ci, cj) = (c[mi.index()], c[mj.index()]);
    let mean = if fluctuations { Some(extract_moments(ens, 0.0, [0.0; 4]).mean) } else { None };

    let grids: Vec<Vec<f64>> = ens
        .components
        .par_iter()
        .map(|(w, s)| {
            let mut s = s.clone();
            if let Some(m) = mean {
                s = displace(&s, mi, -m[mi.index()]);
                s = displace(&s, mj, -m[mj.index()]);
            }
            let mut grid = vec![0.0; ci * cj];
            let mut idx = 0;
            for l in 0..c[0] {
                for sv in 0..c[1] {
                    for a in 0..c[2] {
                        for v in 0..c[3] {
                            let n = [l, sv, a, v];
                            grid[n[mi.index()] * cj + n[mj.index()]] += w * s.amplitudes[idx].norm_sqr();
                            idx += 1;
                        }
                    }
                }
            }
            grid
        })
        .collect();
    let mut grid = vec![0.0; ci * cj];
    for g in &grids {
        grid.iter_mut().zip(g).for_each(|(x, y)| *x += y);
    }
    let n1 = n_max.min(ci - 1);
    let n2 = n_max.min(cj - 1);
    let total: f64 = grid.iter().sum();
    let inside: f64 = (0..=n1).flat_map(|a| (0..=n2).map(move |b| (a, b))).map(|(a, b)| grid[a * cj + b]).sum();
    Ok(CountDistribution::two_d(n1, n2, |a, b| grid[a * cj + b], (total - inside).max(0.0)))
}
