//! The family G_t on the set K x p: deformed multiplication, actions on p,
//! Iwasawa component maps, deformed metrics, adjoint-orbit transport, and
//! the sinh correction map on p.
//!
//! t = 0 is represented in-band with the closed-form motion-group law; no
//! limiting computation happens at t = 0.

use crate::basis::{p_basis, p_coords, p_from_coords};
use crate::mat::{
    cartan_decompose, iwasawa_decompose, killing_form, mat_exp, AlgebraElement, LieError, Mat,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DeformError {
    #[error("elements carry different deformation parameters: {0} vs {1}")]
    MixedParameters(f64, f64),
    #[error("operation only implemented for n = 2, got n = {0}")]
    DimensionUnsupported(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Point (k, v, t) of the set K x p carrying the G_t structure (t >= 0).
#[derive(Debug, Clone)]
pub struct DeformedElement {
    pub k: Mat,
    pub v: AlgebraElement,
    pub t: f64,
}

impl DeformedElement {
    pub fn new(k: Mat, v: AlgebraElement, t: f64) -> Self {
        debug_assert!(t >= 0.0);
        debug_assert!((&k.transpose() * &k - Mat::identity(k.nrows(), k.nrows())).norm() < 1e-10);
        debug_assert!(v.is_p());
        Self { k, v, t }
    }

    pub fn identity(n: usize, t: f64) -> Self {
        Self::new(Mat::identity(n, n), AlgebraElement::zero(n), t)
    }

    pub fn dim(&self) -> usize {
        self.k.nrows()
    }

    /// Closed-form inverse, valid at every t: (k,v)^{-1} = (k^{-1}, -Ad(k^{-1})v).
    pub fn inverse(&self) -> Self {
        let k_inv = self.k.transpose();
        let v = AlgebraElement::new_detrended(&k_inv * self.v.mat() * &self.k).unwrap().scale(-1.0);
        Self::new(k_inv, v, self.t)
    }
}

/// A point of the homogeneous space p = G_t/K.
#[derive(Debug, Clone)]
pub struct PPoint {
    pub x: AlgebraElement,
}

impl PPoint {
    pub fn new(x: AlgebraElement) -> Self {
        debug_assert!(x.is_p());
        Self { x }
    }

    pub fn zero(n: usize) -> Self {
        Self { x: AlgebraElement::zero(n) }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { x: self.x.scale(c) }
    }
}

/// The deformed metric at a base point, as a Gram matrix in the fixed
/// B-orthonormal basis of p.
#[derive(Debug, Clone)]
pub struct MetricSample {
    pub x: PPoint,
    pub gram: Mat,
    pub t: f64,
}

/// Adjoint of a group element restricted to p-valued arguments is not closed,
/// so this is the full Ad(g) on the algebra.
pub fn adjoint(g: &Mat, x: &AlgebraElement) -> AlgebraElement {
    let g_inv = g.clone().try_inverse().expect("group element is invertible");
    AlgebraElement::new_detrended(g * x.mat() * g_inv).unwrap()
}

/// Ad(k) for orthogonal k preserves the Cartan split.
pub fn adjoint_orth(k: &Mat, x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::new_detrended(k * x.mat() * k.transpose()).unwrap()
}

/// The diffeomorphism (k, v) -> exp(t v) k from G_t to G, for t > 0.
pub fn phi_t(gamma: &DeformedElement) -> Mat {
    assert!(gamma.t > 0.0, "phi_t needs t > 0");
    mat_exp(&gamma.v.scale(gamma.t)) * &gamma.k
}

/// Inverse of phi_t, computed through the Cartan decomposition.
pub fn phi_t_inv(g: &Mat, t: f64) -> Result<DeformedElement, DeformError> {
    assert!(t > 0.0, "phi_t_inv needs t > 0");
    let f = cartan_decompose(g)?;
    Ok(DeformedElement::new(f.k, f.v.scale(1.0 / t), t))
}

/// The derivative of phi_t at the identity: X_k + X_p -> X_k + t X_p.
pub fn phi_t_algebra(x: &AlgebraElement, t: f64) -> AlgebraElement {
    x.k_component().add(&x.p_component().scale(t))
}

/// Inverse of the derivative map, t > 0.
pub fn phi_t_algebra_inv(x: &AlgebraElement, t: f64) -> AlgebraElement {
    x.k_component().add(&x.p_component().scale(1.0 / t))
}

/// Reinterpret a motion-group element (t = 0 coordinates) inside G_t.
///
/// In the (k, v) coordinates this is the identity map; only the parameter
/// changes. It realizes the Cartan-decomposition diffeomorphism G_0 -> G_t.
pub fn alpha_t(g0: &DeformedElement, t: f64) -> DeformedElement {
    debug_assert_eq!(g0.t, 0.0);
    DeformedElement::new(g0.k.clone(), g0.v.clone(), t)
}

/// Group law of G_t; the t = 0 branch is the closed motion-group formula.
pub fn mul_t(a: &DeformedElement, b: &DeformedElement) -> Result<DeformedElement, DeformError> {
    if a.t != b.t {
        return Err(DeformError::MixedParameters(a.t, b.t));
    }
    if a.t == 0.0 {
        let k = &a.k * &b.k;
        let v = a.v.add(&adjoint_orth(&a.k, &b.v));
        return Ok(DeformedElement::new(k, v, 0.0));
    }
    let g = phi_t(a) * phi_t(b);
    phi_t_inv(&g, a.t)
}

/// Transitive action of G on p through the Cartan diffeomorphism.
pub fn act(g: &Mat, x: &PPoint) -> Result<PPoint, DeformError> {
    let f = cartan_decompose(&(g * mat_exp(&x.x)))?;
    Ok(PPoint::new(f.v))
}

/// Action of G_t on p; at t = 0 the affine motion (k,v).x = v + Ad(k)x.
pub fn act_t(gamma: &DeformedElement, x: &PPoint) -> Result<PPoint, DeformError> {
    if gamma.t == 0.0 {
        let moved = gamma.v.add(&adjoint_orth(&gamma.k, &x.x));
        return Ok(PPoint::new(moved));
    }
    let g = phi_t(gamma);
    let y = act(&g, &x.scale(gamma.t))?;
    Ok(y.scale(1.0 / gamma.t))
}

/// Orthogonal projection from p onto the diagonal subalgebra a.
pub fn proj_a(v: &AlgebraElement) -> AlgebraElement {
    let n = v.dim();
    let mut d = Mat::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = v.mat()[(i, i)];
    }
    AlgebraElement::new_detrended(d).unwrap()
}

/// Deformed Iwasawa component maps of G_t on p, for t > 0: the K-part and
/// the rescaled a-part of exp(t v).
pub fn iwasawa_components_t(
    v: &PPoint,
    t: f64,
) -> Result<(Mat, AlgebraElement), DeformError> {
    assert!(t > 0.0, "iwasawa_components_t needs t > 0");
    let g = mat_exp(&v.x.scale(t));
    let f = iwasawa_decompose(&g)?;
    Ok((f.k, f.h.scale(1.0 / t)))
}

fn differential<F>(map: F, x: &PPoint, xi: &AlgebraElement) -> AlgebraElement
where
    F: Fn(&PPoint) -> AlgebraElement,
{
    // Central differences with one Richardson refinement, step 1e-5.
    let h = 1e-5;
    let diff = |step: f64| -> AlgebraElement {
        let plus = map(&PPoint::new(x.x.add(&xi.scale(step))));
        let minus = map(&PPoint::new(x.x.sub(&xi.scale(step))));
        plus.sub(&minus).scale(0.5 / step)
    };
    let d_h = diff(h);
    let d_h2 = diff(h / 2.0);
    d_h2.scale(4.0 / 3.0).sub(&d_h.scale(1.0 / 3.0))
}

/// The G_t-invariant metric on p that coincides with B at zero, evaluated on
/// tangent vectors xi, eta at x. For t = 0 this is B itself everywhere.
pub fn metric_eval(
    x: &PPoint,
    xi: &AlgebraElement,
    eta: &AlgebraElement,
    t: f64,
) -> Result<f64, DeformError> {
    if t == 0.0 {
        return Ok(killing_form(xi, eta)?);
    }
    // Differential at x of y -> exp_{G_t}(x)^{-1} . y, which maps x to 0.
    let to_origin = DeformedElement::new(Mat::identity(x.x.dim(), x.x.dim()), x.x.clone(), t)
        .inverse();
    let map = |y: &PPoint| act_t(&to_origin, y).unwrap().x;
    let d_xi = differential(map, x, xi);
    let d_eta = differential(map, x, eta);
    Ok(killing_form(&d_xi, &d_eta)?)
}

/// Gram matrix of the deformed metric in the fixed B-orthonormal basis.
pub fn metric_gram(x: &PPoint, t: f64) -> Result<MetricSample, DeformError> {
    let basis = p_basis(x.x.dim());
    let m = basis.len();
    let mut gram = Mat::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let g = metric_eval(x, &basis[i], &basis[j], t)?;
            gram[(i, j)] = g;
            gram[(j, i)] = g;
        }
    }
    Ok(MetricSample { x: x.clone(), gram, t })
}

/// Orbit transport data for one parameter t: the G_t-adjoint orbit samples of
/// phi_t^{-1}(lambda0) and their images back on the G-orbit of lambda0.
#[derive(Debug, Clone)]
pub struct OrbitTransport {
    pub orbit_points: Vec<AlgebraElement>,
    pub g_orbit_images: Vec<AlgebraElement>,
    /// |tr(image^2) - tr(lambda0^2)| per sample, an invariant-polynomial
    /// measure of the distance to the G-orbit.
    pub invariant_residuals: Vec<f64>,
}

/// Transport a G_t-adjoint orbit through the derivative of phi_t.
///
/// For each sample gamma, computes Ad_{G_t}(gamma)[phi_t^{-1} lambda0] and its
/// image under X_k + X_p -> X_k + t X_p, which lands on the G-adjoint orbit
/// of lambda0.
pub fn adjoint_orbit_map(
    lambda0: &AlgebraElement,
    t: f64,
    samples: &[DeformedElement],
) -> Result<OrbitTransport, DeformError> {
    assert!(t > 0.0);
    let tr0 = (lambda0.mat() * lambda0.mat()).trace();
    let mut orbit_points = Vec::with_capacity(samples.len());
    let mut g_orbit_images = Vec::with_capacity(samples.len());
    let mut invariant_residuals = Vec::with_capacity(samples.len());
    for gamma in samples {
        if gamma.t != t {
            return Err(DeformError::MixedParameters(gamma.t, t));
        }
        let g = phi_t(gamma);
        // Ad_{G_t}(gamma) = phi_t^{-1} Ad_G(phi_t gamma) phi_t on the algebra.
        let image = adjoint(&g, lambda0);
        let orbit_point = phi_t_algebra_inv(&image, t);
        let tr = (image.mat() * image.mat()).trace();
        invariant_residuals.push((tr - tr0).abs());
        orbit_points.push(orbit_point);
        g_orbit_images.push(image);
    }
    Ok(OrbitTransport { orbit_points, g_orbit_images, invariant_residuals })
}

/// The sinh dilation-rotation x -> (sinh||x||_B / ||x||_B) (^ x) on p, n = 2.
///
/// The rotation ^ is by pi/2 in the fixed B-orthonormal basis; its sign is a
/// convention and consistency tests accept either.
pub fn tau_map(x: &PPoint) -> Result<PPoint, DeformError> {
    let n = x.x.dim();
    if n != 2 {
        return Err(DeformError::DimensionUnsupported(n));
    }
    let basis = p_basis(2);
    let c = p_coords(&x.x, &basis);
    let rotated = p_from_coords(&[-c[1], c[0]], &basis);
    let r = x.x.b_norm();
    let dilation = if r < 1e-12 { 1.0 } else { r.sinh() / r };
    Ok(PPoint::new(rotated.scale(dilation)))
}

/// Gaussian curvature of the deformed metric at x, by the Brioschi formula
/// on finite-difference first and second derivatives of the Gram entries.
/// Measured for reporting; no value is asserted against it.
pub fn gaussian_curvature(x: &PPoint, t: f64) -> Result<f64, DeformError> {
    let n = x.x.dim();
    if n != 2 {
        return Err(DeformError::DimensionUnsupported(n));
    }
    let basis = p_basis(2);
    let at = |du: f64, dv: f64| -> Result<[f64; 3], DeformError> {
        let y = PPoint::new(x.x.add(&basis[0].scale(du)).add(&basis[1].scale(dv)));
        let e = metric_eval(&y, &basis[0], &basis[0], t)?;
        let f = metric_eval(&y, &basis[0], &basis[1], t)?;
        let g = metric_eval(&y, &basis[1], &basis[1], t)?;
        Ok([e, f, g])
    };
    let h = 1e-3;
    let c = at(0.0, 0.0)?;
    let pu = at(h, 0.0)?;
    let mu = at(-h, 0.0)?;
    let pv = at(0.0, h)?;
    let mv = at(0.0, -h)?;
    let puv = at(h, h)?;
    let pumv = at(h, -h)?;
    let mupv = at(-h, h)?;
    let muv = at(-h, -h)?;

    let d_u = |i: usize| (pu[i] - mu[i]) / (2.0 * h);
    let d_v = |i: usize| (pv[i] - mv[i]) / (2.0 * h);
    let d_uu = |i: usize| (pu[i] - 2.0 * c[i] + mu[i]) / (h * h);
    let d_vv = |i: usize| (pv[i] - 2.0 * c[i] + mv[i]) / (h * h);
    let d_uv = |i: usize| (puv[i] - pumv[i] - mupv[i] + muv[i]) / (4.0 * h * h);

    let (e, f, g) = (c[0], c[1], c[2]);
    let m1 = Mat::from_row_slice(
        3,
        3,
        &[
            -0.5 * d_vv(0) + d_uv(1) - 0.5 * d_uu(2),
            0.5 * d_u(0),
            d_u(1) - 0.5 * d_v(0),
            d_v(1) - 0.5 * d_u(2),
            e,
            f,
            0.5 * d_v(2),
            f,
            g,
        ],
    );
    let m2 = Mat::from_row_slice(
        3,
        3,
        &[0.0, 0.5 * d_v(0), 0.5 * d_u(2), 0.5 * d_v(0), e, f, 0.5 * d_u(2), f, g],
    );
    let denom = (e * g - f * f).powi(2);
    Ok((m1.determinant() - m2.determinant()) / denom)
}
