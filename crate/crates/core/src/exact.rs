//! Closed-form solutions and profile families.
//!
//! Everything here is pure and serves as the trusted oracle for the finite
//! difference solvers: the heat kernel and its convolution semigroup, linear
//! convection by frame shift, the exponential substitution that linearizes
//! the quadratic-flux equation, its self-similar profile family, and the
//! hyperbolic source-type waves of the strongly nonlinear regime.

use crate::error::{Error, Result};
use crate::field::{Field, Frame};
use crate::grid::Grid1D;
use crate::quadrature::cumulative_trapezoid;
use crate::scalar::{real, Scalar};
use crate::special::gaussian_cumulative;

/// Parameters of the heat kernel `G(x, t) = (4 pi t)^(-N/2) exp(-|x|^2 / 4t)`.
#[derive(Clone, Copy, Debug)]
pub struct HeatKernelParams {
    pub dimension: u32,
    pub t: f64,
}

impl HeatKernelParams {
    pub fn new(dimension: u32, t: f64) -> Result<Self> {
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::NonPositiveTime(t));
        }
        if dimension == 0 {
            return Err(Error::InvalidConfig("dimension must be >= 1".into()));
        }
        Ok(Self { dimension, t })
    }
}

/// Heat kernel value at radius `|x| = r`.
pub fn heat_kernel<T: Scalar>(x: T, params: HeatKernelParams) -> T {
    let t = real::<T>(params.t);
    let four = real::<T>(4.0);
    let pi = real::<T>(std::f64::consts::PI);
    let prefactor = (four * pi * t).powf(-real::<T>(params.dimension as f64) / real::<T>(2.0));
    prefactor * (-(x * x) / (four * t)).exp()
}

/// Heat kernel sampled on a grid (1D).
pub fn heat_kernel_field<T: Scalar>(grid: &Grid1D<T>, t: f64) -> Result<Field<T>> {
    let params = HeatKernelParams::new(1, t)?;
    Field::from_fn(grid.clone(), real(t), Frame::Physical, |x| heat_kernel(x, params))
}

/// Kernel support cutoff: beyond `|x - y| > CUTOFF_STDS * sqrt(t)` the kernel
/// is below 1e-28 of its peak and the quadrature contribution is noise.
const CUTOFF_STDS: f64 = 16.0;

/// Convolution `G(., t) * u0` by direct trapezoid quadrature, for data that is
/// negligible outside the grid.
pub fn heat_solution<T: Scalar>(u0: &Field<T>, t: f64) -> Result<Field<T>> {
    let decayed = convolve_decayed(u0, t)?;
    Field::new(
        u0.grid().clone(),
        decayed,
        u0.time() + real::<T>(t),
        u0.frame(),
    )
}

fn convolve_decayed<T: Scalar>(u0: &Field<T>, t: f64) -> Result<Vec<T>> {
    if t <= 0.0 || !t.is_finite() {
        return Err(Error::NonPositiveTime(t));
    }
    u0.check_finite()?;
    let grid = u0.grid();
    let n = grid.len();
    let dx = grid.dx();
    let params = HeatKernelParams::new(1, t)?;
    let cutoff = real::<T>(CUTOFF_STDS * t.sqrt());
    let reach = (cutoff / dx).to_f64_lossy().ceil() as usize;
    let half = real::<T>(0.5);
    let two_t = real::<T>(2.0 * t);
    let em = dx * dx / real::<T>(12.0);
    let v = u0.values();
    // Euler-Maclaurin endpoint term of the integrand G(x - y) v(y); without
    // it the trapezoid loses O(dx^2) wherever the kernel straddles a domain
    // end with non-vanishing data (the exponential-substitution path).
    let endpoint_slope = |z: T, edge: T| z / two_t * heat_kernel(z, params) * edge;
    let mut out = vec![T::zero(); n];
    for (i, out_i) in out.iter_mut().enumerate() {
        let lo = i.saturating_sub(reach);
        let hi = (i + reach).min(n - 1);
        let xi = grid.node(i);
        let mut acc = T::zero();
        for j in lo..=hi {
            let w = if j == 0 || j == n - 1 { half } else { T::one() };
            acc += w * heat_kernel(xi - grid.node(j), params) * v[j];
        }
        let mut corr = T::zero();
        if hi == n - 1 {
            corr += endpoint_slope(xi - grid.node(n - 1), v[n - 1]);
        }
        if lo == 0 {
            corr -= endpoint_slope(xi - grid.node(0), v[0]);
        }
        *out_i = acc * dx - em * corr;
    }
    Ok(out)
}

/// Convolution `G(., t) * w0` for data with constant limits `left_limit` at
/// `-inf` and `right_limit` at `+inf`. The tails outside the grid are
/// integrated against the kernel in closed form, so the result is accurate
/// even though `w0` is not integrable.
fn convolve_with_tails<T: Scalar>(
    w0: &Field<T>,
    t: f64,
    left_limit: T,
    right_limit: T,
) -> Result<Field<T>> {
    let mut values = convolve_decayed(w0, t)?;
    let grid = w0.grid();
    let scale = real::<T>((4.0 * t).sqrt());
    for (i, v) in values.iter_mut().enumerate() {
        let xi = grid.node(i);
        // mass of the kernel centered at x_i lying left of x_min / right of x_max
        let left_tail = gaussian_cumulative::<T>((grid.x_min() - xi) / scale * real::<T>(2.0));
        let right_tail = gaussian_cumulative::<T>((xi - grid.x_max()) / scale * real::<T>(2.0));
        *v += left_limit * left_tail + right_limit * right_tail;
    }
    Field::new(grid.clone(), values, w0.time() + real::<T>(t), w0.frame())
}

/// Solution of `u_t - u_xx = a u_x`: heat evolution sampled in the moving
/// frame, `[G(t) * u0](x + a t)`, with linear interpolation off-node.
pub fn linear_convection_solution<T: Scalar>(u0: &Field<T>, a: f64, t: f64) -> Result<Field<T>> {
    let heat = heat_solution(u0, t)?;
    if a == 0.0 {
        return Ok(heat);
    }
    let shift = real::<T>(a * t);
    let grid = u0.grid();
    let tol = real::<T>(1e-12) * heat.max_abs();
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let x = grid.node(i) + shift;
        match heat.sample(x) {
            Some(v) => values.push(v),
            None => {
                // off-grid is only acceptable where the solution has decayed
                let edge = if x < grid.x_min() { heat.values()[0] } else { heat.values()[grid.len() - 1] };
                if edge.abs() > tol {
                    return Err(Error::DomainTooSmall(format!(
                        "shifted sample x = {x} leaves the grid while the solution is non-negligible"
                    )));
                }
                values.push(T::zero());
            }
        }
    }
    Field::new(grid.clone(), values, u0.time() + real::<T>(t), u0.frame())
}

/// Exponential of the running integral of `u0`:
/// `w0(x) = exp(int_{-inf}^x u0)`, with the integral started at the left edge
/// of the (decayed) grid. `w0` spans 1 at the left edge to `e^M` at the right.
pub fn hopf_cole_forward<T: Scalar>(u0: &Field<T>) -> Result<Field<T>> {
    u0.check_finite()?;
    let cumulative = cumulative_trapezoid(u0.values(), u0.grid().dx());
    let values: Vec<T> = cumulative.into_iter().map(|c| c.exp()).collect();
    Field::new(u0.grid().clone(), values, u0.time(), u0.frame())
}

/// Exact solution of `u_t - u_xx = (u^2)_x` via the exponential substitution:
/// `u = w_x / w` with `w` the heat evolution of `hopf_cole_forward(u0)`.
///
/// The flux coefficient is pinned to `a = 1`; other coefficients reduce to it
/// by scaling `v = a u`.
pub fn burgers_exact<T: Scalar>(u0: &Field<T>, t: f64) -> Result<Field<T>> {
    let w0 = hopf_cole_forward(u0)?;
    let n = w0.len();
    let right_limit = w0.values()[n - 1];
    let w = convolve_with_tails(&w0, t, T::one(), right_limit)?;
    if w.values().iter().any(|&v| v <= T::zero()) {
        // impossible for exact data by the maximum principle; a bug trap
        return Err(Error::Internal("hopf-cole denominator lost positivity".into()));
    }
    let wx = derivative_fourth_order(&w);
    let values: Vec<T> = wx.iter().zip(w.values()).map(|(&d, &v)| d / v).collect();
    Field::new(u0.grid().clone(), values, u0.time() + real::<T>(t), u0.frame())
}

/// Fourth-order first derivative; the convolved field is smooth so the
/// differencing error is negligible against quadrature error.
fn derivative_fourth_order<T: Scalar>(f: &Field<T>) -> Vec<T> {
    let v = f.values();
    let n = v.len();
    let dx = f.grid().dx();
    let c12 = real::<T>(12.0);
    let c8 = real::<T>(8.0);
    let mut d = vec![T::zero(); n];
    for i in 2..n - 2 {
        d[i] = (v[i - 2] - c8 * v[i - 1] + c8 * v[i + 1] - v[i + 2]) / (c12 * dx);
    }
    // one-sided fourth-order stencils at the edges
    let coeff: [f64; 5] = [-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25];
    for (i, sign) in [(0usize, 1.0), (1, 1.0), (n - 1, -1.0), (n - 2, -1.0)] {
        let mut acc = T::zero();
        for (k, &c) in coeff.iter().enumerate() {
            let idx = if sign > 0.0 { i + k } else { i - k };
            acc += real::<T>(c * sign) * v[idx];
        }
        d[i] = acc / dx;
    }
    d
}

/// Self-similar profile of the quadratic-flux equation (`a = 1`):
/// `f_M(x) = (e^M - 1) h(x) / ((e^M - 1) H(x) + 1)` with
/// `h(x) = (4 pi)^(-1/2) exp(-x^2/4)` and `H` its cumulative integral.
pub fn burgers_profile<T: Scalar>(mass: T, x: T) -> T {
    let em1 = mass.exp() - T::one();
    if em1 == T::zero() {
        return T::zero();
    }
    let h = heat_kernel(x, HeatKernelParams { dimension: 1, t: 1.0 });
    em1 * h / (em1 * gaussian_cumulative(x) + T::one())
}

/// Profile for general flux coefficient `a != 0`: `f_{M,a} = (1/a) f_{aM}`.
pub fn burgers_profile_with_coefficient<T: Scalar>(mass: T, a: T, x: T) -> Result<T> {
    if a == T::zero() {
        return Err(Error::InvalidConfig("flux coefficient a must be nonzero".into()));
    }
    Ok(burgers_profile(a * mass, x) / a)
}

/// The profile sampled on a grid, as a similarity-frame field.
pub fn burgers_profile_field<T: Scalar>(grid: &Grid1D<T>, mass: T) -> Result<Field<T>> {
    Field::from_fn(grid.clone(), T::zero(), Frame::Similarity, |x| burgers_profile(mass, x))
}

/// Self-similar solution built from the profile:
/// `u_M(x, t) = t^(-1/2) f_M(x / sqrt(t))`.
pub fn burgers_self_similar<T: Scalar>(grid: &Grid1D<T>, mass: T, t: f64) -> Result<Field<T>> {
    if t <= 0.0 {
        return Err(Error::NonPositiveTime(t));
    }
    let rt = real::<T>(t.sqrt());
    Field::from_fn(grid.clone(), real(t), Frame::Physical, |x| burgers_profile(mass, x / rt) / rt)
}

/// Source-type wave of the inviscid law `u_t + ((|u|^(q-1) u) / q)_x = 0`
/// (flux coefficient `a = -1/q`).
#[derive(Clone, Copy, Debug)]
pub struct NWave {
    pub q: f64,
    pub mass: f64,
}

impl NWave {
    pub fn new(q: f64, mass: f64) -> Result<Self> {
        if !(q > 1.0 && q < 2.0) {
            return Err(Error::InvalidExponent(format!("source-type wave needs 1 < q < 2, got {q}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidConfig(format!("wave mass must be positive, got {mass}")));
        }
        Ok(Self { q, mass })
    }

    /// `c = (q / (q - 1))^((q-1)/q)`.
    pub fn front_constant(&self) -> f64 {
        let q = self.q;
        (q / (q - 1.0)).powf((q - 1.0) / q)
    }

    /// Front position `r(t) = c M^((q-1)/q) t^(1/q)`.
    pub fn front(&self, t: f64) -> f64 {
        self.front_constant() * self.mass.powf((self.q - 1.0) / self.q) * t.powf(1.0 / self.q)
    }

    /// Wave value: `(x/t)^(1/(q-1))` on `0 < x < r(t)`, zero elsewhere.
    pub fn value(&self, x: f64, t: f64) -> Result<f64> {
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::NonPositiveTime(t));
        }
        if x <= 0.0 || x >= self.front(t) {
            return Ok(0.0);
        }
        Ok((x / t).powf(1.0 / (self.q - 1.0)))
    }

    /// Peak value `(q M / ((q - 1) t))^(1/q)`, attained just left of the front.
    pub fn sup(&self, t: f64) -> f64 {
        (self.q * self.mass / ((self.q - 1.0) * t)).powf(1.0 / self.q)
    }

    pub fn field<T: Scalar>(&self, grid: &Grid1D<T>, t: f64) -> Result<Field<T>> {
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::NonPositiveTime(t));
        }
        Field::from_fn(grid.clone(), real(t), Frame::Physical, |x| {
            real(self.value(x.to_f64_lossy(), t).unwrap_or(0.0))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{lp_norm, trapezoid_integral, Exponent};

    const INV_SQRT_4PI: f64 = 0.28209479177387814;

    fn kernel_field(t: f64, half_width: f64, n: usize) -> Field<f64> {
        heat_kernel_field(&Grid1D::symmetric(half_width, n).unwrap(), t).unwrap()
    }

    #[test]
    fn kernel_point_values() {
        let p = HeatKernelParams::new(1, 1.0).unwrap();
        assert!((heat_kernel(0.0, p) - INV_SQRT_4PI).abs() < 1e-12);
        assert!((heat_kernel(2.0, p) - INV_SQRT_4PI * (-1.0f64).exp()).abs() < 1e-12);
        assert_eq!(heat_kernel(1.5, p), heat_kernel(-1.5, p));
        assert!(HeatKernelParams::new(1, 0.0).is_err());
        assert!(HeatKernelParams::new(1, -1.0).is_err());
    }

    #[test]
    fn kernel_norm_scaling_is_time_invariant() {
        // t^((1/2)(1 - 1/p)) * ||G(t)||_p constant across t
        for p in [Exponent::ONE, Exponent::TWO, Exponent::INF] {
            let mut scaled = Vec::new();
            for &t in &[1.0, 2.0, 4.0] {
                // odd node count puts a node on the peak at x = 0
                let g = kernel_field(t, 60.0, 4097);
                let norm = lp_norm(&g, p).unwrap();
                scaled.push(t.powf(0.5 * p.conjugate_deficit()) * norm);
            }
            for w in scaled.windows(2) {
                assert!((w[1] / w[0] - 1.0).abs() < 1e-6, "p = {p:?}, {scaled:?}");
            }
        }
    }

    #[test]
    fn convolution_satisfies_the_semigroup_law() {
        let g1 = kernel_field(1.0, 40.0, 2049);
        let g2_direct = kernel_field(2.0, 40.0, 2049);
        let g2_conv = heat_solution(&g1, 1.0).unwrap();
        let err = g2_conv
            .values()
            .iter()
            .zip(g2_direct.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "sup error {err}");

        // two half steps equal one full step
        let half = heat_solution(&g1, 0.5).unwrap();
        let full = heat_solution(&half, 0.5).unwrap();
        let err = full
            .values()
            .iter()
            .zip(g2_conv.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-7, "semigroup error {err}");
    }

    #[test]
    fn convolution_preserves_mass_and_vanishes_on_zero() {
        let grid = Grid1D::symmetric(40.0, 2049).unwrap();
        let f = Field::from_fn(grid.clone(), 0.0, Frame::Physical, |x: f64| {
            (-(x - 1.0) * (x - 1.0) / 2.0).exp() - 0.3 * (-x * x).exp()
        })
        .unwrap();
        let m0 = trapezoid_integral(&f).unwrap();
        let evolved = heat_solution(&f, 2.0).unwrap();
        assert!((trapezoid_integral(&evolved).unwrap() - m0).abs() < 1e-8);

        let zero = Field::zeros(grid, Frame::Physical);
        let evolved = heat_solution(&zero, 1.0).unwrap();
        assert!(evolved.max_abs() == 0.0);
    }

    #[test]
    fn linear_convection_shifts_the_kernel() {
        let g1 = kernel_field(1.0, 40.0, 2049);
        let moved = linear_convection_solution(&g1, 1.0, 1.0).unwrap();
        // expect G(x + 1, 2); the off-node shift costs O(dx^2) interpolation
        let p = HeatKernelParams::new(1, 2.0).unwrap();
        let err = (0..moved.len())
            .map(|i| (moved.values()[i] - heat_kernel(moved.grid().node(i) + 1.0, p)).abs())
            .fold(0.0, f64::max);
        assert!(err < 2e-5, "sup error {err}");
        // mass is invariant under the shift
        assert!((trapezoid_integral(&moved).unwrap() - 1.0).abs() < 1e-8);
        // a = 0 reduces to the plain heat solution
        let plain = linear_convection_solution(&g1, 0.0, 1.0).unwrap();
        let heat = heat_solution(&g1, 1.0).unwrap();
        assert_eq!(plain.values(), heat.values());
    }

    #[test]
    fn exponential_substitution_bounds_and_limits() {
        let grid = Grid1D::symmetric(40.0, 2049).unwrap();
        let zero = Field::zeros(grid.clone(), Frame::Physical);
        let w0 = hopf_cole_forward(&zero).unwrap();
        assert!(w0.values().iter().all(|&v| v == 1.0));

        let mass = 0.8;
        let u0 = Field::from_fn(grid, 0.0, Frame::Physical, |x: f64| {
            mass * INV_SQRT_4PI * (-x * x / 4.0).exp()
        })
        .unwrap();
        let l1 = lp_norm(&u0, Exponent::ONE).unwrap();
        let w0 = hopf_cole_forward(&u0).unwrap();
        assert!((w0.values()[0] - 1.0).abs() < 1e-10);
        assert!((w0.values()[w0.len() - 1] - mass.exp()).abs() < 1e-8);
        let (lo, hi) = ((-l1).exp(), l1.exp());
        assert!(w0.values().iter().all(|&v| v >= lo - 1e-12 && v <= hi + 1e-12));
    }

    #[test]
    fn quadratic_flux_solution_is_self_similar_from_profile_data() {
        let grid = Grid1D::symmetric(40.0, 8193).unwrap();
        let mass = 1.0f64;
        let u0 = burgers_profile_field(&grid, mass).unwrap();
        let u0 = Field::new(grid.clone(), u0.values().to_vec(), 0.0, Frame::Physical).unwrap();
        for &t in &[0.5, 2.0] {
            let u = burgers_exact(&u0, t).unwrap();
            let expect = burgers_self_similar(&grid, mass, t + 1.0).unwrap();
            let err = u
                .values()
                .iter()
                .zip(expect.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-5, "t = {t}, sup err {err}");
        }
    }

    #[test]
    fn quadratic_flux_solution_contracts_l1_and_conserves_mass() {
        let grid = Grid1D::symmetric(40.0, 4097).unwrap();
        let u0 = Field::from_fn(grid, 0.0, Frame::Physical, |x: f64| {
            0.5 * (-(x - 0.5).powi(2)).exp() - 0.2 * (-(x + 1.0).powi(2) / 0.5).exp()
        })
        .unwrap();
        let m0 = trapezoid_integral(&u0).unwrap();
        let l10 = lp_norm(&u0, Exponent::ONE).unwrap();
        let u = burgers_exact(&u0, 1.0).unwrap();
        assert!((trapezoid_integral(&u).unwrap() - m0).abs() < 1e-6);
        assert!(lp_norm(&u, Exponent::ONE).unwrap() <= l10 + 1e-10);

        let zero = Field::zeros(u0.grid().clone(), Frame::Physical);
        let evolved = burgers_exact(&zero, 1.0).unwrap();
        assert!(evolved.max_abs() < 1e-9);
    }

    #[test]
    fn profile_point_value_and_masses() {
        assert_eq!(burgers_profile(0.0, 0.3), 0.0);
        let e = std::f64::consts::E;
        let expected = (e - 1.0) * INV_SQRT_4PI / ((e - 1.0) / 2.0 + 1.0);
        assert!((burgers_profile(1.0, 0.0) - expected).abs() < 1e-4);
        assert!((expected - 0.26072).abs() < 1e-4);

        let grid = Grid1D::symmetric(40.0, 4096).unwrap();
        for &m in &[-1.0f64, 0.5, 3.0] {
            let f = burgers_profile_field(&grid, m).unwrap();
            let mass = trapezoid_integral(&f).unwrap();
            assert!((mass - m).abs() < 1e-8, "M = {m}: got {mass}");
        }
    }

    #[test]
    fn profile_sign_follows_mass_and_grows_with_mass() {
        let grid = Grid1D::symmetric(15.0, 512).unwrap();
        let pos = burgers_profile_field(&grid, 0.7).unwrap();
        assert!(pos.values().iter().all(|&v| v > 0.0));
        let neg = burgers_profile_field(&grid, -0.7).unwrap();
        assert!(neg.values().iter().all(|&v| v < 0.0));
        let bigger = burgers_profile_field(&grid, 1.4).unwrap();
        assert!(bigger.values().iter().zip(pos.values()).all(|(&hi, &lo)| hi > lo));
    }

    #[test]
    fn coefficient_reduction_keeps_the_mass() {
        let grid = Grid1D::symmetric(40.0, 4096).unwrap();
        for &(m, a) in &[(1.0, 2.0), (0.5, -1.5), (2.0, 0.25)] {
            let f = Field::from_fn(grid.clone(), 0.0, Frame::Similarity, |x: f64| {
                burgers_profile_with_coefficient(m, a, x).unwrap()
            })
            .unwrap();
            let mass = trapezoid_integral(&f).unwrap();
            assert!((mass - m).abs() < 1e-8, "M = {m}, a = {a}: got {mass}");
        }
    }

    #[test]
    fn wave_constants_mass_and_peak() {
        let w = NWave::new(1.5, 1.0).unwrap();
        assert!((w.front_constant() - 3.0f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((w.front(1.0) - 1.4422495703074083).abs() < 1e-10);

        let grid = Grid1D::new(-1.0, 40.0, 16384).unwrap();
        for &t in &[1.0, 10.0] {
            let f = w.field(&grid, t).unwrap();
            let mass = trapezoid_integral(&f).unwrap();
            // sampled discontinuity costs O(dx * sup)
            let tol = 2.0 * grid.dx() * w.sup(t);
            assert!((mass - 1.0).abs() < tol, "t = {t}: mass {mass}");
            let sup = f.max_abs();
            assert!(sup <= w.sup(t) + 1e-12, "t = {t}");
            assert!(sup > 0.98 * w.sup(t), "t = {t}");
        }
        assert!(NWave::new(2.0, 1.0).is_err());
        assert!(NWave::new(1.0, 1.0).is_err());
        assert!(NWave::new(1.5, -1.0).is_err());
        assert!(w.value(0.5, 0.0).is_err());
    }
}
