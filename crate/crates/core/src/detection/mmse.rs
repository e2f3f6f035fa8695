//! Linear MMSE equalization, `x_hat = H^H (H H^H + n0 I)^{-1} y`.
//!
//! Two routes compute the same estimate. [`mmse_equalize`] takes any sparse
//! effective channel and solves densely. [`mmse_equalize_paths`] uses the fact
//! that a reconstructed `H_eff` equals `A H_t A^H` with a time-domain channel
//! `H_t` whose bandwidth is only the largest estimated delay, so the Gram
//! matrix is cyclic-banded and can be factored in `O(N b^2)`.
//!
//! [`mmse_equalize_data`] instead treats pilot and guard symbols as known and
//! solves for the data alone, which keeps the noiseless case well posed on
//! channels whose effective matrix is singular.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::effective::SparseChannelMatrix;
use crate::error::{AfdmError, Result};
use crate::estimation::{PathEstimate, RxConfig};
use crate::frame::FrameLayout;
use crate::transform::{cis_cycles, cpp_phase, Daft, DaftSymbols};

/// Diagonal loading used when the noiseless Gram matrix is singular.
pub const SINGULAR_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Equalized {
    pub symbols: DaftSymbols,
    /// Set when `n0 = 0` and the system had to be loaded with [`SINGULAR_EPSILON`].
    pub regularized: bool,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn dense_hermitian_solve(m: &DMatrix<Complex64>, rhs: &[Complex64]) -> Option<Vec<Complex64>> {
    let chol = m.clone().cholesky()?;
    Some(chol.solve(&DVector::from_column_slice(rhs)).iter().copied().collect())
}

/// Dense MMSE against an arbitrary sparse effective channel.
pub fn mmse_equalize(h_eff: &SparseChannelMatrix, y: &DaftSymbols, n0: f64) -> Result<Equalized> {
    let n = h_eff.n();
    if y.len() != n {
        return Err(AfdmError::InputShape(format!("channel is {n}x{n} but frame has {} symbols", y.len())));
    }
    let h = h_eff.to_dense();
    let gram = &h * h.adjoint();
    let solve = |load: f64| {
        let mut m = gram.clone();
        for i in 0..n {
            m[(i, i)] += Complex64::new(load, 0.0);
        }
        dense_hermitian_solve(&m, &y.values)
    };
    let (z, regularized) = match solve(n0) {
        Some(z) if z.iter().all(|v| v.is_finite()) => (z, false),
        _ if n0 == 0.0 => (
            solve(SINGULAR_EPSILON).ok_or_else(|| AfdmError::State("regularized MMSE system is not positive definite".into()))?,
            true,
        ),
        _ => return Err(AfdmError::State("MMSE system is not positive definite".into())),
    };
    Ok(Equalized { symbols: DaftSymbols::new(h_eff.adjoint_mul_vec(&z)), regularized })
}

/// Time-domain channel rows: for each distinct delay, the per-row weight.
struct DelayTaps {
    n: usize,
    taps: Vec<(usize, Vec<Complex64>)>,
}

impl DelayTaps {
    fn new(rx: &RxConfig, estimates: &[PathEstimate]) -> Self {
        let n = rx.cfg.n();
        let mut taps: Vec<(usize, Vec<Complex64>)> = Vec::new();
        for e in estimates {
            let l = e.delay_hat % n;
            let idx = match taps.iter().position(|(d, _)| *d == l) {
                Some(i) => i,
                None => {
                    taps.push((l, vec![zero(); n]));
                    taps.len() - 1
                }
            };
            let row = &mut taps[idx].1;
            for (t, w) in row.iter_mut().enumerate() {
                let doppler = cis_cycles(-((e.doppler_hat * t as i64).rem_euclid(n as i64) as f64) / n as f64);
                let prefix = if t < l { cpp_phase(&rx.cfg, t as i64 - l as i64) } else { Complex64::new(1.0, 0.0) };
                *w += e.gain_hat * doppler * prefix;
            }
        }
        DelayTaps { n, taps }
    }

    fn bandwidth(&self) -> usize {
        self.taps.iter().map(|(d, _)| *d).max().unwrap_or(0)
    }

    fn adjoint_mul(&self, z: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![zero(); n];
        for (l, w) in &self.taps {
            for t in 0..n {
                out[(t + n - l) % n] += w[t].conj() * z[t];
            }
        }
        out
    }

    /// Gram matrix `H_t H_t^H + load I` in cyclic band storage:
    /// `band[i][d + b] = M[i, (i + d) mod N]` for `d` in `[-b, b]`.
    fn gram_band(&self, load: f64) -> Vec<Vec<Complex64>> {
        let n = self.n;
        let b = self.bandwidth();
        let mut band = vec![vec![zero(); 2 * b + 1]; n];
        for (la, wa) in &self.taps {
            for (lb, wb) in &self.taps {
                // Column c is hit by row c + la (tap a) and row c + lb (tap b).
                let d = *lb as isize - *la as isize;
                for c in 0..n {
                    let i = (c + la) % n;
                    let j = (c + lb) % n;
                    band[i][(d + b as isize) as usize] += wa[i] * wb[j].conj();
                }
            }
        }
        for row in band.iter_mut() {
            row[b] += Complex64::new(load, 0.0);
        }
        band
    }
}

/// Cholesky factor of a Hermitian positive-definite banded matrix.
struct BandCholesky {
    b: usize,
    // l[i][k - i + b] holds L[i, k] for k in [i - b, i].
    l: Vec<Vec<Complex64>>,
}

impl BandCholesky {
    /// `entry(i, j)` must return `M[i, j]` for `j <= i <= j + b`.
    fn factor(m: usize, b: usize, entry: impl Fn(usize, usize) -> Complex64) -> Option<Self> {
        let mut l = vec![vec![zero(); b + 1]; m];
        for j in 0..m {
            let lo = j.saturating_sub(b);
            let mut d = entry(j, j).re;
            for k in lo..j {
                d -= l[j][k + b - j].norm_sqr();
            }
            if !d.is_finite() || d <= 0.0 {
                return None;
            }
            let djj = d.sqrt();
            l[j][b] = Complex64::new(djj, 0.0);
            for i in j + 1..m.min(j + b + 1) {
                let mut s = entry(i, j);
                for k in i.saturating_sub(b)..j {
                    s -= l[i][k + b - i] * l[j][k + b - j].conj();
                }
                l[i][j + b - i] = s / djj;
            }
        }
        Some(BandCholesky { b, l })
    }

    fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let m = self.l.len();
        let b = self.b;
        let mut y = rhs.to_vec();
        for i in 0..m {
            let mut s = y[i];
            for k in i.saturating_sub(b)..i {
                s -= self.l[i][k + b - i] * y[k];
            }
            y[i] = s / self.l[i][b];
        }
        for i in (0..m).rev() {
            let mut s = y[i];
            for k in i + 1..m.min(i + b + 1) {
                s -= self.l[k][i + b - k].conj() * y[k];
            }
            y[i] = s / self.l[i][b];
        }
        y
    }
}

/// Solves the cyclic-banded Hermitian system by splitting off the last `b`
/// unknowns: the leading block is plainly banded and the remainder is a
/// small dense Schur complement.
fn cyclic_band_solve(band: &[Vec<Complex64>], b: usize, rhs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = band.len();
    let get = |i: usize, j: usize| -> Complex64 {
        let d = (j as isize - i as isize).rem_euclid(n as isize);
        let d = if d as usize > n / 2 { d - n as isize } else { d };
        if d.unsigned_abs() > b {
            zero()
        } else {
            band[i][(d + b as isize) as usize]
        }
    };
    if b == 0 {
        return rhs.iter().zip(band).map(|(r, row)| (row[0].re > 0.0).then(|| r / row[0].re)).collect();
    }
    if n <= 4 * b + 2 {
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in band.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let j = (i as isize + k as isize - b as isize).rem_euclid(n as isize) as usize;
                m[(i, j)] += v;
            }
        }
        return dense_hermitian_solve(&m, rhs);
    }
    let m = n - b;
    let chol = BandCholesky::factor(m, b, get)?;
    // M_IS columns: coupling of the interior to each separator unknown.
    let x: Vec<Vec<Complex64>> = (m..n)
        .map(|s| {
            let col: Vec<Complex64> = (0..m).map(|i| get(i, s)).collect();
            chol.solve(&col)
        })
        .collect();
    let u = chol.solve(&rhs[..m]);
    let schur = DMatrix::from_fn(b, b, |r, c| {
        let (sr, sc) = (m + r, m + c);
        let mut v = get(sr, sc);
        for i in 0..m {
            let a = get(sr, i);
            if a != zero() {
                v -= a * x[c][i];
            }
        }
        v
    });
    let srhs: Vec<Complex64> = (0..b)
        .map(|r| {
            let sr = m + r;
            let mut v = rhs[sr];
            for i in 0..m {
                let a = get(sr, i);
                if a != zero() {
                    v -= a * u[i];
                }
            }
            v
        })
        .collect();
    let zs = schur.lu().solve(&DVector::from_vec(srhs))?;
    let mut z = u;
    for (c, xc) in x.iter().enumerate() {
        for i in 0..m {
            z[i] -= xc[i] * zs[c];
        }
    }
    z.extend(zs.iter().copied());
    z.iter().all(|v| v.is_finite()).then_some(z)
}

/// MMSE equalization for a channel given as path estimates.
///
/// Produces the same result as `mmse_equalize(&reconstruct_heff(rx, estimates), y, n0)`.
pub fn mmse_equalize_paths(rx: &RxConfig, estimates: &[PathEstimate], y: &DaftSymbols, n0: f64) -> Result<Equalized> {
    let daft = Daft::new(&rx.cfg);
    mmse_equalize_paths_with(&daft, rx, estimates, y, n0)
}

/// As [`mmse_equalize_paths`], reusing a prepared transform for the receiver's chirps.
pub fn mmse_equalize_paths_with(
    daft: &Daft,
    rx: &RxConfig,
    estimates: &[PathEstimate],
    y: &DaftSymbols,
    n0: f64,
) -> Result<Equalized> {
    let n = rx.cfg.n();
    if y.len() != n {
        return Err(AfdmError::InputShape(format!("expected {n} symbols, got {}", y.len())));
    }
    let taps = DelayTaps::new(rx, estimates);
    let r = daft.modulate(&y.values)?;
    let b = taps.bandwidth();
    let (z, regularized) = match cyclic_band_solve(&taps.gram_band(n0), b, &r) {
        Some(z) => (z, false),
        None if n0 == 0.0 => (
            cyclic_band_solve(&taps.gram_band(SINGULAR_EPSILON), b, &r)
                .ok_or_else(|| AfdmError::State("regularized MMSE system is not positive definite".into()))?,
            true,
        ),
        None => return Err(AfdmError::State("MMSE system is not positive definite".into())),
    };
    let x = daft.demodulate(&taps.adjoint_mul(&z))?;
    Ok(Equalized { symbols: DaftSymbols::new(x), regularized })
}

/// MMSE over the data symbols only, treating pilot and guard as known.
///
/// Solves `(H_d^H H_d + n0 I) x_d = H_d^H (y - h_p a_p)` where `H_d` keeps the
/// data columns of `h_eff` and `h_p a_p` is the pilot's contribution. Unlike the
/// full-frame routes this stays well posed at `n0 = 0` when `h_eff` itself is
/// rank deficient, since `H_d` is tall. Returns a full frame with the known
/// symbols filled in.
pub fn mmse_equalize_data(
    h_eff: &SparseChannelMatrix,
    layout: &FrameLayout,
    y: &DaftSymbols,
    n0: f64,
) -> Result<Equalized> {
    let n = h_eff.n();
    if y.len() != n || layout.n != n {
        return Err(AfdmError::InputShape(format!(
            "channel is {n}x{n}, layout has {} symbols, frame has {}",
            layout.n,
            y.len()
        )));
    }
    let mut column_of = vec![usize::MAX; n];
    for (k, &q) in layout.data_indices.iter().enumerate() {
        column_of[q] = k;
    }
    let pilot = Complex64::new(layout.pilot_amplitude, 0.0);
    let u = layout.data_indices.len();
    // Row-wise nonzeros of H restricted to data columns.
    let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); n];
    let mut residual = y.values.clone();
    for (offset, d) in h_eff.diagonals() {
        for (p, &v) in d.iter().enumerate() {
            let q = (p + offset) % n;
            if q == layout.pilot_index {
                residual[p] -= v * pilot;
            } else if column_of[q] != usize::MAX {
                rows[p].push((column_of[q], v));
            }
        }
    }
    let mut gram = DMatrix::<Complex64>::zeros(u, u);
    let mut rhs = vec![zero(); u];
    for (p, row) in rows.iter().enumerate() {
        for &(a, va) in row {
            rhs[a] += va.conj() * residual[p];
            for &(b, vb) in row {
                gram[(a, b)] += va.conj() * vb;
            }
        }
    }
    let solve = |load: f64| {
        let mut m = gram.clone();
        for i in 0..u {
            m[(i, i)] += Complex64::new(load, 0.0);
        }
        dense_hermitian_solve(&m, &rhs).filter(|z| z.iter().all(|v| v.is_finite()))
    };
    let (xd, regularized) = match solve(n0) {
        Some(z) => (z, false),
        None if n0 == 0.0 => (
            solve(SINGULAR_EPSILON).ok_or_else(|| AfdmError::State("regularized MMSE system is not positive definite".into()))?,
            true,
        ),
        None => return Err(AfdmError::State("MMSE system is not positive definite".into())),
    };
    let mut x = DaftSymbols::zeros(n);
    x.values[layout.pilot_index] = pilot;
    for (&q, v) in layout.data_indices.iter().zip(xd) {
        x.values[q] = v;
    }
    Ok(Equalized { symbols: x, regularized })
}
