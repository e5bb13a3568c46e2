//! Uniform periodic grids on the unit cell and on the computational torus.
//!
//! Two grid families appear: the unit cell `Y = [-1/2, 1/2)^d` (period 1,
//! first sample at -1/2) hosting all 1-periodic cell data, and the torus
//! `[0, L)^d` (first sample at 0) hosting the macroscopic problems. The offset
//! conventions are fixed once so that oscillatory resampling `y = x/eps` is an
//! exact index remap, bit-reproducible across runs.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct Grid {
    dim: usize,
    resolution: usize,
    period: f64,
    origin: f64,
}

impl Grid {
    /// Unit cell grid: period 1 per axis, samples at `y_i = -1/2 + i/n`.
    ///
    /// Panics unless `n` is even and positive (evenness keeps the cell/torus
    /// index remap exact).
    pub fn cell(dim: usize, resolution: usize) -> Grid {
        assert!(dim >= 1, "dimension must be >= 1");
        assert!(
            resolution >= 2 && resolution % 2 == 0,
            "cell resolution must be even and positive"
        );
        Grid {
            dim,
            resolution,
            period: 1.0,
            origin: -0.5,
        }
    }

    /// Torus grid of period `L` per axis, samples at `x_j = j L / n`.
    pub fn torus(dim: usize, resolution: usize, period: f64) -> Grid {
        assert!(dim >= 1, "dimension must be >= 1");
        assert!(
            resolution >= 2 && resolution % 2 == 0,
            "torus resolution must be even and positive"
        );
        assert!(period > 0.0, "period must be positive");
        Grid {
            dim,
            resolution,
            period,
            origin: 0.0,
        }
    }

    /// Internal constructor without the evenness constraint (used for the
    /// enlarged grids of dealiased products).
    pub(crate) fn unchecked(dim: usize, resolution: usize, period: f64, origin: f64) -> Grid {
        Grid {
            dim,
            resolution,
            period,
            origin,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Samples per axis.
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn num_points(&self) -> usize {
        self.resolution.pow(self.dim as u32)
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.resolution as f64
    }

    pub fn volume(&self) -> f64 {
        self.period.powi(self.dim as i32)
    }

    /// Decodes a flat index (row-major, axis 0 slowest) into per-axis indices.
    pub fn decode(&self, mut flat: usize, idx: &mut [usize]) {
        debug_assert_eq!(idx.len(), self.dim);
        for axis in (0..self.dim).rev() {
            idx[axis] = flat % self.resolution;
            flat /= self.resolution;
        }
    }

    pub fn encode(&self, idx: &[usize]) -> usize {
        let mut flat = 0;
        for &i in idx {
            debug_assert!(i < self.resolution);
            flat = flat * self.resolution + i;
        }
        flat
    }

    /// Physical coordinates of the grid point with the given per-axis indices.
    pub fn point(&self, idx: &[usize], out: &mut [f64]) {
        let h = self.spacing();
        for (o, &i) in out.iter_mut().zip(idx) {
            *o = self.origin + i as f64 * h;
        }
    }

    /// Signed integer frequency for a per-axis sample index, in
    /// `[-n/2, n/2)` for even `n`.
    pub fn frequency(&self, axis_index: usize) -> i64 {
        let n = self.resolution as i64;
        let t = axis_index as i64;
        if t <= (n - 1) / 2 {
            t
        } else {
            t - n
        }
    }

    /// Angular frequency `2 pi k / L` for a signed integer frequency.
    pub fn angular(&self, k: i64) -> f64 {
        2.0 * std::f64::consts::PI * k as f64 / self.period
    }

    /// Visits every Fourier mode: flat index, signed integer frequencies, and
    /// angular frequencies.
    pub fn for_each_mode(&self, mut f: impl FnMut(usize, &[i64], &[f64])) {
        let mut idx = vec![0usize; self.dim];
        let mut k = vec![0i64; self.dim];
        let mut xi = vec![0f64; self.dim];
        for flat in 0..self.num_points() {
            self.decode(flat, &mut idx);
            for a in 0..self.dim {
                k[a] = self.frequency(idx[a]);
                xi[a] = self.angular(k[a]);
            }
            f(flat, &k, &xi);
        }
    }

    /// Visits every grid point: flat index and physical coordinates.
    pub fn for_each_point(&self, mut f: impl FnMut(usize, &[f64])) {
        let mut idx = vec![0usize; self.dim];
        let mut x = vec![0f64; self.dim];
        for flat in 0..self.num_points() {
            self.decode(flat, &mut idx);
            self.point(&idx, &mut x);
            f(flat, &x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_points_start_at_minus_half() {
        let g = Grid::cell(1, 4);
        let mut x = [0.0];
        g.point(&[0], &mut x);
        assert_eq!(x[0], -0.5);
        g.point(&[3], &mut x);
        assert_eq!(x[0], 0.25);
    }

    #[test]
    fn frequencies_cover_symmetric_range() {
        let g = Grid::torus(1, 8, 1.0);
        let freqs: Vec<i64> = (0..8).map(|t| g.frequency(t)).collect();
        assert_eq!(freqs, vec![0, 1, 2, 3, -4, -3, -2, -1]);
    }

    #[test]
    fn encode_decode_roundtrip() {
        let g = Grid::torus(3, 4, 2.0);
        let mut idx = [0usize; 3];
        for flat in 0..g.num_points() {
            g.decode(flat, &mut idx);
            assert_eq!(g.encode(&idx), flat);
        }
    }
}
