//! The weighted space `L^2(K)`, `K(y) = exp(y^2/4)`, and the eigenstructure
//! of `L = -d_yy - y d_y / 2` (N = 1).
//!
//! The eigenfunctions are the successive derivatives of the Gaussian
//! `exp(-y^2/4)`, K-orthonormalized; the eigenvalue of the `l`-th one is
//! `(N + l - 1) / 2`. Expanding in this basis solves the similarity-variable
//! heat equation exactly: the coefficient of mode `l` decays like
//! `exp(-(mu_l - N/2) s)`, so the first (mass) coefficient is invariant and
//! everything orthogonal to it dies at rate 1/2 or faster.
//!
//! Derivatives of the Gaussian are generated through the stable three-term
//! recurrence of the associated Hermite polynomials rather than repeated
//! differencing, which would lose every digit to cancellation by order ten.

use crate::error::{Error, Result};
use crate::field::{Field, Frame};
use crate::grid::Grid1D;
use crate::quadrature::trapezoid;
use crate::scalar::{real, Scalar};

/// Spatial dimension used by the numerics.
pub const DIMENSION: u32 = 1;

/// Default truncation order: the slowest neglected mode decays like
/// `exp(-8 s)`, invisible at every tested horizon.
pub const DEFAULT_ORDER: usize = 16;

/// The similarity-frame domain is capped here; the weight `K` stays far from
/// overflow and every basis integrand is below rounding at the ends.
pub const MAX_HALF_WIDTH: f64 = 15.0;

/// Weight `K(y) = exp(y^2 / 4)`.
#[inline]
pub fn k_weight<T: Scalar>(y: T) -> T {
    (y * y / real::<T>(4.0)).exp()
}

/// K-orthonormal eigenfunctions of `L` sampled on a grid.
pub struct WeightedBasis<T: Scalar> {
    grid: Grid1D<T>,
    functions: Vec<Vec<T>>,
}

impl<T: Scalar> WeightedBasis<T> {
    /// Build the first `order` eigenfunctions on `grid`.
    pub fn new(grid: Grid1D<T>, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidConfig("basis order must be >= 1".into()));
        }
        let half_width =
            grid.x_max().abs().max(grid.x_min().abs()).to_f64_lossy();
        if half_width > MAX_HALF_WIDTH + 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "basis grid must stay within |y| <= {MAX_HALF_WIDTH}, got {half_width}"
            )));
        }
        let n = grid.len();
        let nodes = grid.nodes();
        let gauss: Vec<T> = nodes.iter().map(|&y| (-y * y / real::<T>(4.0)).exp()).collect();

        // Hermite recurrence on half arguments: H_0 = 1, H_1 = 2x,
        // H_{k+1} = 2 x H_k - 2 k H_{k-1}, evaluated at x = y / 2.
        let mut functions = Vec::with_capacity(order);
        let mut h_prev = vec![T::one(); n];
        let mut h_curr: Vec<T> = nodes.iter().map(|&y| y).collect(); // 2 * (y/2)
        for l in 0..order {
            let h = if l == 0 { &h_prev } else { &h_curr };
            let raw: Vec<T> = h.iter().zip(&gauss).map(|(&p, &g)| p * g).collect();
            // normalize by quadrature in the K inner product
            let norm = k_norm_samples(&raw, &nodes, grid.dx()).sqrt();
            functions.push(raw.into_iter().map(|v| v / norm).collect());
            if l > 0 {
                let two_l = real::<T>(2.0 * l as f64);
                let next: Vec<T> = (0..n)
                    .map(|i| nodes[i] * h_curr[i] - two_l * h_prev[i])
                    .collect();
                h_prev = std::mem::replace(&mut h_curr, next);
            }
        }
        Ok(Self { grid, functions })
    }

    /// Default basis: order 16 on `|y| <= 15`.
    pub fn standard(n: usize) -> Result<Self> {
        Self::new(Grid1D::symmetric(real(MAX_HALF_WIDTH), n)?, DEFAULT_ORDER)
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.functions.len()
    }

    /// Eigenvalue `mu_l = (N + l - 1) / 2` of the `l`-th mode (1-based).
    pub fn eigenvalue(&self, l: usize) -> f64 {
        assert!(l >= 1);
        (DIMENSION as f64 + l as f64 - 1.0) / 2.0
    }

    /// Samples of `phi_l` (1-based).
    pub fn function(&self, l: usize) -> &[T] {
        &self.functions[l - 1]
    }

    pub fn function_field(&self, l: usize) -> Result<Field<T>> {
        Field::new(self.grid.clone(), self.functions[l - 1].clone(), T::zero(), Frame::Similarity)
    }

    /// K-weighted Gram matrix; identity up to quadrature error.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        let nodes = self.grid.nodes();
        let m = self.order();
        let mut g = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in i..m {
                let prod: Vec<T> = (0..nodes.len())
                    .map(|k| self.functions[i][k] * self.functions[j][k] * k_weight(nodes[k]))
                    .collect();
                let v = trapezoid(&prod, self.grid.dx()).to_f64_lossy();
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        g
    }
}

/// K-norm of raw samples, with the compensated product
/// `f^2 K = exp(2 log |f| + y^2/4)` so the weight can never overflow first.
fn k_norm_samples<T: Scalar>(values: &[T], nodes: &[T], dx: T) -> T {
    let four = real::<T>(4.0);
    let integrand: Vec<T> = values
        .iter()
        .zip(nodes)
        .map(|(&f, &y)| {
            if f == T::zero() {
                T::zero()
            } else {
                (real::<T>(2.0) * f.abs().ln() + y * y / four).exp()
            }
        })
        .collect();
    trapezoid(&integrand, dx)
}

/// K-norm without the boundary-decay guard.
///
/// For residuals and truncation remainders the boundary content is known
/// noise and the guard below would reject them; solution fields should go
/// through [`k_norm`].
pub fn k_norm_raw<T: Scalar>(f: &Field<T>) -> T {
    k_norm_samples(f.values(), &f.grid().nodes(), f.grid().dx()).sqrt()
}

/// `||f||_K = sqrt(int f^2 K dy)`.
///
/// Errors with `DomainTooSmall` when the weighted integrand has not decayed
/// at the grid ends, because the truncated integral would silently miss mass
/// that `K` amplifies. The guard is relative to the integrand's peak: even a
/// legitimate expansion with order-16 content keeps tails near 1e-7 of its
/// peak at `|y| = 15`, so an absolute cutoff would reject valid fields.
pub fn k_norm<T: Scalar>(f: &Field<T>) -> Result<T> {
    f.check_finite()?;
    let nodes = f.grid().nodes();
    let four = real::<T>(4.0);
    let integrand = |i: usize| -> T {
        let v = f.values()[i];
        if v == T::zero() {
            T::zero()
        } else {
            (real::<T>(2.0) * v.abs().ln() + nodes[i] * nodes[i] / four).exp()
        }
    };
    let n = f.len();
    let mut max_integrand = T::zero();
    for i in 0..n {
        max_integrand = max_integrand.max(integrand(i));
    }
    let edge = integrand(0).max(integrand(n - 1));
    if edge > real::<T>(1e-10) * max_integrand {
        return Err(Error::DomainTooSmall(format!(
            "K-weighted integrand at the boundary is {:e} of its peak; widen the grid",
            (edge / max_integrand).to_f64_lossy()
        )));
    }
    Ok(k_norm_samples(f.values(), &nodes, f.grid().dx()).sqrt())
}

fn require_same_grid<T: Scalar>(f: &Field<T>, basis: &WeightedBasis<T>) -> Result<()> {
    if f.grid() != basis.grid() {
        return Err(Error::InvalidConfig("field and basis must share a grid".into()));
    }
    Ok(())
}

/// Fourier coefficient `alpha_l = (f, phi_l)_K` (1-based `l`).
pub fn project<T: Scalar>(f: &Field<T>, basis: &WeightedBasis<T>, l: usize) -> Result<T> {
    require_same_grid(f, basis)?;
    if l == 0 || l > basis.order() {
        return Err(Error::ShapeMismatch { expected: basis.order(), got: l });
    }
    // decay precondition shared with the norm
    k_norm(f)?;
    let nodes = basis.grid().nodes();
    let phi = basis.function(l);
    let integrand: Vec<T> = (0..f.len())
        .map(|i| f.values()[i] * phi[i] * k_weight(nodes[i]))
        .collect();
    Ok(trapezoid(&integrand, f.grid().dx()))
}

/// All coefficients up to the basis order.
pub fn project_all<T: Scalar>(f: &Field<T>, basis: &WeightedBasis<T>) -> Result<Vec<T>> {
    (1..=basis.order()).map(|l| project(f, basis, l)).collect()
}

/// Exact similarity-frame heat evolution on coefficients:
/// `alpha_l -> exp(-(mu_l - N/2) s) alpha_l`. The first coefficient (the
/// mass direction) is invariant for every `s`.
pub fn evolve_spectral<T: Scalar>(coeffs: &[T], basis: &WeightedBasis<T>, s: f64) -> Result<Vec<T>> {
    if s < 0.0 || !s.is_finite() {
        return Err(Error::NonPositiveTime(s));
    }
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(idx, &c)| {
            let rate = basis.eigenvalue(idx + 1) - DIMENSION as f64 / 2.0;
            real::<T>((-rate * s).exp()) * c
        })
        .collect())
}

/// Sum the expansion back into a field on the basis grid.
pub fn reconstruct<T: Scalar>(coeffs: &[T], basis: &WeightedBasis<T>) -> Result<Field<T>> {
    if coeffs.len() > basis.order() {
        return Err(Error::ShapeMismatch { expected: basis.order(), got: coeffs.len() });
    }
    let n = basis.grid().len();
    let mut values = vec![T::zero(); n];
    for (idx, &c) in coeffs.iter().enumerate() {
        let phi = basis.function(idx + 1);
        for i in 0..n {
            values[i] += c * phi[i];
        }
    }
    Field::new(basis.grid().clone(), values, T::zero(), Frame::Similarity)
}

/// Finite-difference discretization of `L v = -v'' - y v' / 2`, one-sided at
/// the ends. Test oracle for the eigen-residuals.
pub fn apply_l_operator<T: Scalar>(f: &Field<T>) -> Field<T> {
    let grid = f.grid();
    let n = grid.len();
    let dy = grid.dx();
    let two = real::<T>(2.0);
    let v = f.values();
    let mut out = vec![T::zero(); n];
    for i in 1..n - 1 {
        let second = (v[i + 1] - two * v[i] + v[i - 1]) / (dy * dy);
        let first = (v[i + 1] - v[i - 1]) / (two * dy);
        out[i] = -second - grid.node(i) * first / two;
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    Field::new(grid.clone(), out, f.time(), f.frame()).expect("finite by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> WeightedBasis<f64> {
        WeightedBasis::standard(4097).unwrap()
    }

    #[test]
    fn first_eigenfunction_is_the_quartic_root_gaussian() {
        let b = basis();
        let phi1 = b.function_field(1).unwrap();
        let expect = (4.0 * std::f64::consts::PI).powf(-0.25);
        let mid = phi1.sample(0.0).unwrap();
        assert!((mid - expect).abs() < 1e-8, "phi_1(0) = {mid}, expected {expect}");
        assert!((k_norm(&phi1).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn eigenvalues_follow_the_half_integer_ladder() {
        let b = basis();
        for l in 1..=b.order() {
            assert_eq!(b.eigenvalue(l), (1.0 + l as f64 - 1.0) / 2.0);
        }
    }

    #[test]
    fn gram_matrix_is_the_identity() {
        let b = WeightedBasis::<f64>::standard(2049).unwrap();
        let g = b.gram();
        for i in 0..b.order() {
            for j in 0..b.order() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (g[i][j] - expect).abs() < 1e-8,
                    "gram[{i}][{j}] = {} off by more than 1e-8",
                    g[i][j]
                );
            }
        }
    }

    #[test]
    fn k_norm_of_a_narrow_gaussian_matches_the_closed_form() {
        // f = exp(-y^2/2): f^2 K = exp(-3 y^2 / 4), integral sqrt(4 pi / 3)
        let grid = Grid1D::symmetric(15.0, 4097).unwrap();
        let f = Field::from_fn(grid, 0.0, Frame::Similarity, |y: f64| (-y * y / 2.0).exp()).unwrap();
        let expect = (4.0 * std::f64::consts::PI / 3.0).sqrt().sqrt();
        let got = k_norm(&f).unwrap();
        assert!((got - expect).abs() < 1e-4, "got {got}, expected {expect} (~1.43061)");

        let zero = Field::zeros(Grid1D::symmetric(15.0, 257).unwrap(), Frame::Similarity);
        assert_eq!(k_norm(&zero).unwrap(), 0.0);
    }

    #[test]
    fn k_norm_rejects_undecayed_boundaries() {
        let grid = Grid1D::symmetric(10.0, 257).unwrap();
        let f = Field::from_fn(grid, 0.0, Frame::Similarity, |_| 1.0).unwrap();
        assert!(matches!(k_norm(&f), Err(Error::DomainTooSmall(_))));
    }

    #[test]
    fn mass_projects_onto_the_first_mode() {
        // mass-1 data: alpha_1 = (4 pi)^(-1/4)
        let b = basis();
        let f = Field::from_fn(b.grid().clone(), 0.0, Frame::Similarity, |y: f64| {
            (2.0 * std::f64::consts::PI).sqrt().recip() * (-y * y / 2.0).exp()
        })
        .unwrap();
        let alpha1 = project(&f, &b, 1).unwrap();
        let expect = (4.0 * std::f64::consts::PI).powf(-0.25);
        assert!((alpha1 - expect).abs() < 1e-4, "alpha_1 = {alpha1}, expected {expect} (~0.5311)");
    }

    #[test]
    fn projection_recovers_basis_coefficients() {
        let b = basis();
        let phi2 = b.function_field(2).unwrap();
        assert!(project(&phi2, &b, 1).unwrap().abs() < 1e-8);
        assert!((project(&phi2, &b, 2).unwrap() - 1.0).abs() < 1e-8);

        // f = 2 phi_1 + 3 phi_3
        let mut vals = vec![0.0; b.grid().len()];
        for i in 0..vals.len() {
            vals[i] = 2.0 * b.function(1)[i] + 3.0 * b.function(3)[i];
        }
        let f = Field::new(b.grid().clone(), vals, 0.0, Frame::Similarity).unwrap();
        let coeffs = project_all(&f, &b).unwrap();
        assert!((coeffs[0] - 2.0).abs() < 1e-8);
        assert!(coeffs[1].abs() < 1e-8);
        assert!((coeffs[2] - 3.0).abs() < 1e-8);
    }

    #[test]
    fn spectral_evolution_factors_and_invariants() {
        let b = basis();
        let coeffs = vec![0.7, -0.4, 0.2, 0.1];
        // s = 0 is the identity
        assert_eq!(evolve_spectral(&coeffs, &b, 0.0).unwrap(), coeffs);
        // mode 2 at s = 2 decays by e^{-1}
        let evolved = evolve_spectral(&coeffs, &b, 2.0).unwrap();
        assert!((evolved[1] / coeffs[1] - (-1.0f64).exp()).abs() < 1e-14);
        // the mass coefficient never moves
        for &s in &[0.5, 3.0, 10.0] {
            assert_eq!(evolve_spectral(&coeffs, &b, s).unwrap()[0], coeffs[0]);
        }
        assert!(evolve_spectral(&coeffs, &b, -1.0).is_err());
    }

    #[test]
    fn reconstruct_round_trips_coefficients() {
        let b = WeightedBasis::<f64>::standard(2049).unwrap();
        let coeffs = vec![0.31, -0.7, 0.11, 0.05, -0.02, 0.6];
        let f = reconstruct(&coeffs, &b).unwrap();
        let back = project_all(&f, &b).unwrap();
        for (i, &c) in coeffs.iter().enumerate() {
            assert!((back[i] - c).abs() < 1e-8, "coefficient {i} drifted: {} vs {c}", back[i]);
        }
        for &c in &back[coeffs.len()..] {
            assert!(c.abs() < 1e-8);
        }
        // unit vector reproduces the eigenfunction nodewise
        let e1 = reconstruct(&[1.0], &b).unwrap();
        assert_eq!(e1.values(), b.function(1));
    }

    #[test]
    fn truncation_error_decreases_with_order() {
        let grid = Grid1D::symmetric(15.0, 4097).unwrap();
        let f = Field::from_fn(grid.clone(), 0.0, Frame::Similarity, |y: f64| {
            (-y * y / 2.0).exp() * (1.0 + 0.3 * y)
        })
        .unwrap();
        let mut errors = Vec::new();
        for order in [4usize, 8, 16] {
            let b = WeightedBasis::new(grid.clone(), order).unwrap();
            let approx = reconstruct(&project_all(&f, &b).unwrap(), &b).unwrap();
            let diff = Field::new(
                grid.clone(),
                f.values().iter().zip(approx.values()).map(|(&a, &c)| a - c).collect(),
                0.0,
                Frame::Similarity,
            )
            .unwrap();
            errors.push(k_norm_raw(&diff));
        }
        assert!(errors[1] < errors[0] && errors[2] < errors[1], "errors {errors:?}");
    }

    #[test]
    fn eigen_residuals_are_small_for_low_modes() {
        let b = WeightedBasis::<f64>::standard(8193).unwrap();
        for l in 1..=6 {
            let phi = b.function_field(l).unwrap();
            let lphi = apply_l_operator(&phi);
            let mu = b.eigenvalue(l);
            let resid = Field::new(
                b.grid().clone(),
                lphi.values().iter().zip(phi.values()).map(|(&a, &p)| a - mu * p).collect(),
                0.0,
                Frame::Similarity,
            )
            .unwrap();
            let rel = k_norm_raw(&resid) / k_norm_raw(&phi);
            assert!(rel < 1e-4, "mode {l}: relative eigen-residual {rel}");
        }
    }

    #[test]
    fn weighted_poincare_bound_holds_for_basis_elements() {
        // int v^2 y^2 K <= 16 int (v')^2 K
        let b = WeightedBasis::<f64>::standard(4097).unwrap();
        let nodes = b.grid().nodes();
        let dy = b.grid().dx();
        for l in 1..=b.order() {
            let phi = b.function_field(l).unwrap();
            let dphi = phi.derivative();
            let lhs: Vec<f64> = (0..nodes.len())
                .map(|i| phi.values()[i].powi(2) * nodes[i].powi(2) * k_weight(nodes[i]))
                .collect();
            let rhs: Vec<f64> = (0..nodes.len())
                .map(|i| dphi.values()[i].powi(2) * k_weight(nodes[i]))
                .collect();
            let lhs = trapezoid(&lhs, dy);
            let rhs = trapezoid(&rhs, dy);
            assert!(lhs <= 16.0 * rhs * (1.0 + 1e-6), "mode {l}: {lhs} vs 16 * {rhs}");
        }
    }
}
