//! Real periodic scalar fields with dual grid/spectral representation.
//!
//! A field owns its grid samples; the discrete Fourier coefficients are
//! computed lazily and cached. Derivatives, smoothing, and constant-coefficient
//! solves act as Fourier multipliers; products are formed on the grid
//! (collocation), with an optional 3/2-rule zero-padded variant for
//! smooth-coefficient studies. Every multiplier application ends with an
//! inverse transform whose imaginary part is discarded, which projects back
//! onto real fields and keeps self-conjugate Nyquist modes consistent.
//!
//! Norm convention: `||f||_{H^s}^2 = L^d sum_k (1 + |xi_k|^2)^s |c_k|^2` with
//! `xi_k = 2 pi k / L`, so `s = 0` reproduces the integral `L^2` norm
//! (grid mean square times the box volume).

use crate::error::{HomogError, Result};
use crate::fft;
use crate::grid::Grid;
use crate::multiindex::MultiIndex;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::sync::{Arc, OnceLock};

pub struct PeriodicField {
    grid: Grid,
    values: Vec<f64>,
    spectral: OnceLock<Vec<Complex64>>,
}

impl Clone for PeriodicField {
    fn clone(&self) -> Self {
        let out = PeriodicField {
            grid: self.grid,
            values: self.values.clone(),
            spectral: OnceLock::new(),
        };
        if let Some(sp) = self.spectral.get() {
            let _ = out.spectral.set(sp.clone());
        }
        out
    }
}

impl std::fmt::Debug for PeriodicField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PeriodicField")
            .field("grid", &self.grid)
            .field("l2", &self.l2_norm())
            .finish()
    }
}

impl PeriodicField {
    pub fn from_values(grid: Grid, values: Vec<f64>) -> Self {
        assert_eq!(
            values.len(),
            grid.num_points(),
            "value array does not match grid size"
        );
        PeriodicField {
            grid,
            values,
            spectral: OnceLock::new(),
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::from_values(grid, vec![0.0; grid.num_points()])
    }

    pub fn constant(grid: Grid, c: f64) -> Self {
        Self::from_values(grid, vec![c; grid.num_points()])
    }

    /// Samples a function of the physical coordinates on the grid.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> f64) -> Self {
        let mut values = vec![0.0; grid.num_points()];
        grid.for_each_point(|flat, x| values[flat] = f(x));
        Self::from_values(grid, values)
    }

    /// Builds the field whose Fourier coefficients are given; the spectrum is
    /// projected onto real fields (imaginary residue of the inverse transform
    /// is dropped) and not cached, so grid and spectral data stay consistent.
    pub fn from_spectral(grid: Grid, spec: Vec<Complex64>) -> Self {
        assert_eq!(spec.len(), grid.num_points());
        let values = fft::inverse_real(&grid, spec);
        Self::from_values(grid, values)
    }

    /// Deterministic real band-limited field: uniform random coefficients on
    /// all modes with `|k_i| <= max_band` (Nyquist excluded), conjugate
    /// symmetrized.
    pub fn random_band_limited(grid: Grid, max_band: usize, seed: u64, zero_mean: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = grid.resolution();
        let total = grid.num_points();
        let mut spec = vec![Complex64::new(0.0, 0.0); total];
        let mut inside = vec![false; total];
        grid.for_each_mode(|flat, k, _| {
            let ok = k
                .iter()
                .all(|&ki| ki.unsigned_abs() as usize <= max_band && 2 * ki.unsigned_abs() as usize != n);
            inside[flat] = ok;
            if ok {
                spec[flat] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        });
        // Conjugate symmetrization makes the field real.
        let sym = conjugate_symmetrize(&grid, &spec);
        let mut spec = sym;
        if zero_mean {
            spec[0] = Complex64::new(0.0, 0.0);
        }
        Self::from_spectral(grid, spec)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Discrete Fourier coefficients (cached after the first call).
    pub fn spectral(&self) -> &[Complex64] {
        self.spectral
            .get_or_init(|| fft::forward(&self.grid, &self.values))
    }

    /// Grid average, which coincides with the zero-frequency coefficient for
    /// the trapezoidal quadrature implicit in the DFT.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Integral `L^2` norm over the box.
    pub fn l2_norm(&self) -> f64 {
        self.sobolev_norm(0)
    }

    /// Sobolev norm of (possibly negative) integer order `s` with the
    /// equivalent weight `(1 + |xi|^2)^s`.
    pub fn sobolev_norm(&self, s: i32) -> f64 {
        let spec = self.spectral();
        let mut acc = 0.0;
        self.grid.for_each_mode(|flat, _, xi| {
            let xi2: f64 = xi.iter().map(|x| x * x).sum();
            acc += (1.0 + xi2).powi(s) * spec[flat].norm_sqr();
        });
        (self.grid.volume() * acc).sqrt()
    }

    /// `L^2` norm of the full gradient of order `k`, computed spectrally as
    /// `(L^d sum |xi|^{2k} |c|^2)^{1/2}`.
    pub fn gradient_norm(&self, k: u32) -> f64 {
        let spec = self.spectral();
        let mut acc = 0.0;
        self.grid.for_each_mode(|flat, _, xi| {
            let xi2: f64 = xi.iter().map(|x| x * x).sum();
            acc += xi2.powi(k as i32) * spec[flat].norm_sqr();
        });
        (self.grid.volume() * acc).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Applies a Fourier multiplier given as a function of the signed integer
    /// frequency and the angular frequency.
    pub(crate) fn apply_multiplier(&self, sym: impl Fn(&[i64], &[f64]) -> Complex64) -> Self {
        let mut spec = self.spectral().to_vec();
        self.grid.for_each_mode(|flat, k, xi| {
            spec[flat] *= sym(k, xi);
        });
        Self::from_spectral(self.grid, spec)
    }

    /// Applies a precomputed multiplier table (one complex factor per mode).
    pub(crate) fn apply_table(&self, table: &[Complex64]) -> Self {
        debug_assert_eq!(table.len(), self.grid.num_points());
        let spec: Vec<Complex64> = self
            .spectral()
            .iter()
            .zip(table)
            .map(|(c, t)| c * t)
            .collect();
        Self::from_spectral(self.grid, spec)
    }

    pub fn apply_frequency_multiplier(&self, m: &FrequencyMultiplier) -> Self {
        self.apply_multiplier(|_, xi| m.eval(xi))
    }

    /// Spectral derivative `D^alpha`, exact on band-limited fields. Along any
    /// axis where the derivative order is odd the self-conjugate Nyquist mode
    /// is annihilated to keep the result real.
    pub fn derivative(&self, alpha: &MultiIndex) -> Self {
        assert_eq!(alpha.dim(), self.grid.dim(), "multiindex dimension mismatch");
        let n = self.grid.resolution();
        self.apply_multiplier(|k, xi| derivative_symbol(k, xi, alpha.exponents(), n))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch in field addition");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_values(self.grid, values)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch in field subtraction");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Self::from_values(self.grid, values)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_values(self.grid, self.values.iter().map(|v| c * v).collect())
    }

    pub fn add_scaled(&self, other: &Self, c: f64) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch in field update");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + c * b)
            .collect();
        Self::from_values(self.grid, values)
    }

    /// Pointwise (collocation) product on the grid.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch in field product");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Self::from_values(self.grid, values)
    }

    /// Product with the 3/2-rule: both factors are zero-padded onto an
    /// enlarged grid, multiplied there, and truncated back, so quadratic
    /// aliasing into the retained band is removed.
    pub fn mul_dealiased(&self, other: &Self) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch in field product");
        let n = self.grid.resolution();
        let mut big_n = (3 * n).div_ceil(2);
        if big_n % 2 == 1 {
            big_n += 1;
        }
        let big = Grid::unchecked(self.grid.dim(), big_n, self.grid.period(), self.grid.origin());
        let a = pad_values(&self.grid, self.spectral(), &big);
        let b = pad_values(&other.grid, other.spectral(), &big);
        let prod: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let prod_spec = fft::forward(&big, &prod);
        let spec = truncate_spectrum(&big, &prod_spec, &self.grid);
        Self::from_spectral(self.grid, spec)
    }

    /// Convenience dispatcher between [`Self::mul`] and [`Self::mul_dealiased`].
    pub fn mul_opt(&self, other: &Self, dealias: bool) -> Self {
        if dealias {
            self.mul_dealiased(other)
        } else {
            self.mul(other)
        }
    }

    /// Pins the grid average to zero (removes the zero mode).
    pub fn project_zero_mean(&self) -> Self {
        let m = self.mean();
        Self::from_values(self.grid, self.values.iter().map(|v| v - m).collect())
    }

    /// Measures the imaginary residue left by a complex multiplier before the
    /// projection onto real fields, relative to the field magnitude.
    pub fn imaginary_residue(&self, sym: impl Fn(&[i64], &[f64]) -> Complex64) -> f64 {
        let mut spec = self.spectral().to_vec();
        self.grid.for_each_mode(|flat, k, xi| {
            spec[flat] *= sym(k, xi);
        });
        let complex = fft::inverse_complex(&self.grid, spec);
        let max_im = complex.iter().fold(0.0f64, |m, c| m.max(c.im.abs()));
        let max_re = complex.iter().fold(0.0f64, |m, c| m.max(c.re.abs()));
        if max_re == 0.0 {
            max_im
        } else {
            max_im / max_re
        }
    }

    /// Writes a debugging dump: metadata header plus one sample per line in
    /// row-major order (axis 0 slowest). Not a stability-guaranteed format.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(
            w,
            "# periodic field: dim={} resolution={} period={} origin={} order=row-major (axis 0 slowest)",
            self.grid.dim(),
            self.grid.resolution(),
            self.grid.period(),
            self.grid.origin()
        )?;
        for v in &self.values {
            writeln!(w, "{v:.17e}")?;
        }
        Ok(())
    }

    /// Raw little-endian bytes of the sample array.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.values.len() * 8);
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_le_bytes(grid: Grid, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != grid.num_points() * 8 {
            return Err(HomogError::Bundle(format!(
                "field blob length {} does not match grid size {}",
                bytes.len(),
                grid.num_points() * 8
            )));
        }
        let values = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Self::from_values(grid, values))
    }
}

pub(crate) fn derivative_symbol(k: &[i64], xi: &[f64], alpha: &[u32], n: usize) -> Complex64 {
    let nyquist = -((n / 2) as i64);
    let mut c = Complex64::new(1.0, 0.0);
    for a in 0..k.len() {
        let e = alpha[a];
        if e == 0 {
            continue;
        }
        if e % 2 == 1 && n % 2 == 0 && k[a] == nyquist {
            return Complex64::new(0.0, 0.0);
        }
        c *= Complex64::new(0.0, xi[a]).powu(e);
    }
    c
}

/// Precomputed multiplier table for `scale * D^alpha`.
pub(crate) fn derivative_table(grid: &Grid, alpha: &MultiIndex, scale: f64) -> Vec<Complex64> {
    let n = grid.resolution();
    let mut table = vec![Complex64::new(0.0, 0.0); grid.num_points()];
    grid.for_each_mode(|flat, k, xi| {
        table[flat] = scale * derivative_symbol(k, xi, alpha.exponents(), n);
    });
    table
}

fn conjugate_symmetrize(grid: &Grid, spec: &[Complex64]) -> Vec<Complex64> {
    let n = grid.resolution();
    let d = grid.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); spec.len()];
    let mut idx = vec![0usize; d];
    let mut neg = vec![0usize; d];
    for flat in 0..spec.len() {
        grid.decode(flat, &mut idx);
        for a in 0..d {
            neg[a] = (n - idx[a]) % n;
        }
        let partner = grid.encode(&neg);
        out[flat] = 0.5 * (spec[flat] + spec[partner].conj());
    }
    out
}

/// Transfers Fourier coefficients onto an enlarged grid (same frequencies,
/// extra modes zero). Source Nyquist planes are dropped.
fn pad_values(src: &Grid, spec: &[Complex64], big: &Grid) -> Vec<f64> {
    let n = src.resolution() as i64;
    let big_n = big.resolution() as i64;
    let mut big_spec = vec![Complex64::new(0.0, 0.0); big.num_points()];
    let mut target = vec![0usize; src.dim()];
    let mut keep = true;
    src.for_each_mode(|flat, k, _| {
        keep = true;
        for a in 0..k.len() {
            if 2 * k[a].abs() == n {
                keep = false;
                break;
            }
            target[a] = if k[a] >= 0 { k[a] } else { big_n + k[a] } as usize;
        }
        if keep {
            big_spec[big.encode(&target)] = spec[flat];
        }
    });
    fft::inverse_real(big, big_spec)
}

fn truncate_spectrum(big: &Grid, big_spec: &[Complex64], dst: &Grid) -> Vec<Complex64> {
    let big_n = big.resolution() as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); dst.num_points()];
    let mut source = vec![0usize; dst.dim()];
    dst.for_each_mode(|flat, k, _| {
        for a in 0..k.len() {
            source[a] = if k[a] >= 0 { k[a] } else { big_n + k[a] } as usize;
        }
        out[flat] = big_spec[big.encode(&source)];
    });
    out
}

/// Exact oscillatory resampling `x -> b(x / eps)` of a unit-cell field onto a
/// torus grid. Requires `L / eps` to be a positive integer `K` and the torus
/// resolution to equal `K` times the cell resolution, so every torus point
/// lands exactly on a cell point (index remap, no interpolation).
pub fn sample_oscillatory(cell: &PeriodicField, eps: f64, torus: &Grid) -> Result<PeriodicField> {
    let cg = cell.grid();
    if (cg.period() - 1.0).abs() > 1e-12 || (cg.origin() + 0.5).abs() > 1e-12 {
        return Err(HomogError::IncompatibleResolution(
            "oscillatory sampling expects a unit-cell field (period 1, origin -1/2)".into(),
        ));
    }
    if torus.dim() != cg.dim() {
        return Err(HomogError::IncompatibleResolution(format!(
            "dimension mismatch: cell {} vs torus {}",
            cg.dim(),
            torus.dim()
        )));
    }
    if eps <= 0.0 {
        return Err(HomogError::IncompatibleResolution(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let ratio = torus.period() / eps;
    let k_cells = ratio.round();
    if k_cells < 1.0 || (ratio - k_cells).abs() > 1e-9 * ratio.max(1.0) {
        return Err(HomogError::IncompatibleResolution(format!(
            "period/eps = {ratio} is not a positive integer"
        )));
    }
    let k_cells = k_cells as usize;
    let n = cg.resolution();
    if torus.resolution() != k_cells * n {
        return Err(HomogError::IncompatibleResolution(format!(
            "torus resolution {} must equal (period/eps) * cell resolution = {} * {} = {}",
            torus.resolution(),
            k_cells,
            n,
            k_cells * n
        )));
    }
    // Per-axis remap: torus index j samples the cell point (j + n/2) mod n.
    let big_n = torus.resolution();
    let axis_map: Vec<usize> = (0..big_n).map(|j| (j % n + n / 2) % n).collect();
    let mut values = vec![0.0; torus.num_points()];
    let mut idx = vec![0usize; torus.dim()];
    let mut cell_idx = vec![0usize; torus.dim()];
    for flat in 0..torus.num_points() {
        torus.decode(flat, &mut idx);
        for a in 0..idx.len() {
            cell_idx[a] = axis_map[idx[a]];
        }
        values[flat] = cell.values()[cg.encode(&cell_idx)];
    }
    Ok(PeriodicField::from_values(*torus, values))
}

/// A scalar Fourier symbol evaluated at the angular frequency vector
/// `xi = 2 pi k / L`; houses constant-coefficient operator symbols and
/// smoothing-kernel transforms.
#[derive(Clone)]
pub struct FrequencyMultiplier {
    symbol: Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>,
}

impl FrequencyMultiplier {
    /// Wraps a symbol; rejects symbols that are not finite at zero frequency
    /// (the action on the mean must be explicit).
    pub fn new(
        dim: usize,
        symbol: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let at_zero = symbol(&vec![0.0; dim]);
        if !at_zero.re.is_finite() || !at_zero.im.is_finite() {
            return Err(HomogError::InvalidConfig(
                "frequency multiplier is not finite at zero frequency".into(),
            ));
        }
        Ok(FrequencyMultiplier {
            symbol: Arc::new(symbol),
        })
    }

    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        (self.symbol)(xi)
    }
}
