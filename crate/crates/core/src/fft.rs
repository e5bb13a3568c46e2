//! FFT plumbing: multi-dimensional transforms over the flat row-major layout,
//! built from 1D passes along each axis. The forward transform is normalized
//! by `1/n^d`, so the zero mode carries the grid average and coefficients are
//! amplitudes of `exp(2 pi i k (x - origin) / L)`.

use crate::grid::Grid;
use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::{Arc, Mutex, OnceLock};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    planner().lock().unwrap().plan_fft(len, direction)
}

fn transform(dim: usize, n: usize, buf: &mut [Complex64], direction: FftDirection) {
    let total = buf.len();
    debug_assert_eq!(total, n.pow(dim as u32));
    let fft = plan(n, direction);
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..dim {
        let stride = n.pow((dim - 1 - axis) as u32);
        let block = stride * n;
        for hi in 0..total / block {
            for lo in 0..stride {
                let base = hi * block + lo;
                for t in 0..n {
                    line[t] = buf[base + t * stride];
                }
                fft.process(&mut line);
                for t in 0..n {
                    buf[base + t * stride] = line[t];
                }
            }
        }
    }
}

/// Forward DFT of real samples, normalized by the point count.
pub(crate) fn forward(grid: &Grid, values: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform(grid.dim(), grid.resolution(), &mut buf, FftDirection::Forward);
    let scale = 1.0 / buf.len() as f64;
    for c in &mut buf {
        *c *= scale;
    }
    buf
}

/// Inverse DFT back to the grid; the imaginary part is discarded, which is the
/// orthogonal projection onto real fields.
pub(crate) fn inverse_real(grid: &Grid, spec: Vec<Complex64>) -> Vec<f64> {
    let mut buf = spec;
    transform(grid.dim(), grid.resolution(), &mut buf, FftDirection::Inverse);
    buf.iter().map(|c| c.re).collect()
}

/// Inverse DFT keeping the complex result (used by diagnostics that measure
/// the imaginary residue before projection).
pub(crate) fn inverse_complex(grid: &Grid, spec: Vec<Complex64>) -> Vec<Complex64> {
    let mut buf = spec;
    transform(grid.dim(), grid.resolution(), &mut buf, FftDirection::Inverse);
    buf
}
