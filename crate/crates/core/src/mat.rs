//! Dense small-matrix primitives for SL(n,R): exponential, logarithm,
//! Killing form, Cartan and Iwasawa decompositions, BCH residual.

use nalgebra::DMatrix;
use thiserror::Error;

/// Square real matrix, the carrier for group and algebra elements (2 <= n <= 8).
pub type Mat = DMatrix<f64>;

#[derive(Debug, Error, PartialEq)]
pub enum LieError {
    /// An eigenvalue lies on the closed negative real axis, so the principal
    /// logarithm is undefined.
    #[error("matrix has an eigenvalue on the closed negative real axis")]
    NonPrincipalLog,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix is not traceless: trace = {0}")]
    NotTraceless(f64),
    #[error("determinant {0} is not 1 within 1e-9")]
    NotUnimodular(f64),
}

/// Element of sl(n,R) together with its cached Cartan split.
///
/// The split is `mat = k_part + p_part` with `k_part` antisymmetric (in the
/// Lie algebra of SO(n)) and `p_part` symmetric traceless; the two parts
/// reconstruct `mat` exactly since they are computed as (m -+ m^T)/2.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    mat: Mat,
    k_part: Mat,
    p_part: Mat,
}

impl AlgebraElement {
    /// Wrap a traceless matrix, caching its antisymmetric/symmetric split.
    pub fn new(mat: Mat) -> Result<Self, LieError> {
        if mat.iter().any(|x| !x.is_finite()) {
            return Err(LieError::NonFinite);
        }
        let tr = mat.trace();
        if tr.abs() > 1e-12 {
            return Err(LieError::NotTraceless(tr));
        }
        let k_part = (&mat - mat.transpose()) * 0.5;
        let p_part = (&mat + mat.transpose()) * 0.5;
        Ok(Self { mat, k_part, p_part })
    }

    /// Wrap a matrix that is traceless up to roundoff, removing the drift.
    pub fn new_detrended(mut mat: Mat) -> Result<Self, LieError> {
        let n = mat.nrows();
        let drift = mat.trace() / n as f64;
        for i in 0..n {
            mat[(i, i)] -= drift;
        }
        Self::new(mat)
    }

    pub fn zero(n: usize) -> Self {
        Self::new(Mat::zeros(n, n)).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    /// Antisymmetric part, the component in so(n).
    pub fn k_part(&self) -> &Mat {
        &self.k_part
    }

    /// Symmetric traceless part, the component in p.
    pub fn p_part(&self) -> &Mat {
        &self.p_part
    }

    /// Projection onto p as an element.
    pub fn p_component(&self) -> AlgebraElement {
        AlgebraElement::new(self.p_part.clone()).unwrap()
    }

    /// Projection onto k as an element.
    pub fn k_component(&self) -> AlgebraElement {
        AlgebraElement::new(self.k_part.clone()).unwrap()
    }

    pub fn is_p(&self) -> bool {
        self.k_part.norm() <= 1e-12 * (1.0 + self.mat.norm())
    }

    pub fn scale(&self, c: f64) -> AlgebraElement {
        AlgebraElement::new_detrended(&self.mat * c).unwrap()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new_detrended(&self.mat + &other.mat).unwrap()
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new_detrended(&self.mat - &other.mat).unwrap()
    }

    /// Lie bracket [self, other].
    pub fn bracket(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new_detrended(&self.mat * &other.mat - &other.mat * &self.mat).unwrap()
    }

    /// Frobenius norm of the underlying matrix.
    pub fn norm(&self) -> f64 {
        self.mat.norm()
    }

    /// Norm induced by the Killing form; meaningful on p, where B is positive.
    pub fn b_norm(&self) -> f64 {
        let n = self.dim() as f64;
        (2.0 * n * (&self.mat * &self.mat).trace()).max(0.0).sqrt()
    }
}

/// Factors of g = k exp(H) n with k in SO(n), H diagonal traceless, n unipotent.
#[derive(Debug, Clone)]
pub struct IwasawaFactors {
    pub k: Mat,
    pub h: AlgebraElement,
    pub n_up: Mat,
}

impl IwasawaFactors {
    /// Multiply the factors back together.
    pub fn reconstruct(&self) -> Mat {
        let n = self.h.dim();
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = self.h.mat()[(i, i)].exp();
        }
        &self.k * a * &self.n_up
    }
}

/// Factors of g = exp(v) k with v symmetric traceless and k in SO(n).
#[derive(Debug, Clone)]
pub struct CartanFactors {
    pub v: AlgebraElement,
    pub k: Mat,
}

impl CartanFactors {
    pub fn reconstruct(&self) -> Mat {
        mat_exp(&self.v) * &self.k
    }
}

// Pade(13) coefficients from Higham, "The Scaling and Squaring Method for the
// Matrix Exponential Revisited", SIAM J. Matrix Anal. Appl. 26(4).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &Mat) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential of a general square matrix via scaling-and-squaring
/// with the degree-13 Pade approximant.
pub fn expm(a: &Mat) -> Mat {
    let n = a.nrows();
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let a = a * (0.5f64).powi(s as i32);

    let id = Mat::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let u_inner = &a6 * (&a6 * PADE13[13] + &a4 * PADE13[11] + &a2 * PADE13[9])
        + &a6 * PADE13[7]
        + &a4 * PADE13[5]
        + &a2 * PADE13[3]
        + &id * PADE13[1];
    let u = &a * u_inner;
    let v = &a6 * (&a6 * PADE13[12] + &a4 * PADE13[10] + &a2 * PADE13[8])
        + &a6 * PADE13[6]
        + &a4 * PADE13[4]
        + &a2 * PADE13[2]
        + &id * PADE13[0];

    let num = &v + &u;
    let den = &v - &u;
    let mut r = den
        .lu()
        .solve(&num)
        .expect("Pade denominator is singular; input too large");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Matrix exponential of an algebra element; the result has determinant 1.
pub fn mat_exp(x: &AlgebraElement) -> Mat {
    expm(x.mat())
}

fn has_nonpositive_real_eigenvalue(g: &Mat) -> bool {
    let eigs = g.clone().complex_eigenvalues();
    eigs.iter()
        .any(|z| z.re <= 0.0 && z.im.abs() <= 1e-12 * (1.0 + z.re.abs()))
}

/// Principal matrix square root by the Denman-Beavers iteration.
fn sqrtm(g: &Mat) -> Mat {
    let n = g.nrows();
    let mut y = g.clone();
    let mut z = Mat::identity(n, n);
    for _ in 0..60 {
        let y_inv = y.clone().try_inverse().expect("singular iterate in sqrtm");
        let z_inv = z.clone().try_inverse().expect("singular iterate in sqrtm");
        let y_next = (&y + &z_inv) * 0.5;
        let z_next = (&z + &y_inv) * 0.5;
        let delta = (&y_next - &y).norm();
        y = y_next;
        z = z_next;
        if delta <= 1e-15 * y.norm() {
            break;
        }
    }
    y
}

/// Principal matrix logarithm by inverse scaling-and-squaring: repeated
/// square roots until close to the identity, then an atanh-type series.
pub fn mat_log(g: &Mat) -> Result<AlgebraElement, LieError> {
    let n = g.nrows();
    if g.iter().any(|x| !x.is_finite()) {
        return Err(LieError::NonFinite);
    }
    if has_nonpositive_real_eigenvalue(g) {
        return Err(LieError::NonPrincipalLog);
    }

    let id = Mat::identity(n, n);
    let mut a = g.clone();
    let mut k = 0u32;
    while (&a - &id).norm() > 0.25 && k < 40 {
        a = sqrtm(&a);
        k += 1;
    }

    // log(a) = 2 atanh(x) with x = (a - I)(a + I)^{-1}; the series in x
    // converges fast since ||x|| <~ 0.13 here.
    let x = (&a - &id)
        * (&a + &id)
            .try_inverse()
            .ok_or(LieError::NonPrincipalLog)?;
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut log_a = Mat::zeros(n, n);
    for m in 0..40 {
        let contrib = &term * (2.0 / (2.0 * m as f64 + 1.0));
        log_a += &contrib;
        if contrib.norm() <= 1e-18 * (1.0 + log_a.norm()) {
            break;
        }
        term = &term * &x2;
    }
    log_a *= (2.0f64).powi(k as i32);
    AlgebraElement::new_detrended(log_a)
}

fn check_unimodular(g: &Mat) -> Result<(), LieError> {
    let det = g.determinant();
    if (det - 1.0).abs() > 1e-9 {
        return Err(LieError::NotUnimodular(det));
    }
    Ok(())
}

/// Decompose g = exp(v) k with v in p and k in SO(n), via the symmetric
/// eigendecomposition of g g^T.
pub fn cartan_decompose(g: &Mat) -> Result<CartanFactors, LieError> {
    check_unimodular(g)?;
    let s = g * g.transpose();
    let eig = s.symmetric_eigen();
    let n = g.nrows();
    let mut log_half = Mat::zeros(n, n);
    let mut inv_sqrt = Mat::zeros(n, n);
    for i in 0..n {
        let d = eig.eigenvalues[i];
        if d <= 0.0 {
            return Err(LieError::NonPrincipalLog);
        }
        log_half[(i, i)] = 0.5 * d.ln();
        inv_sqrt[(i, i)] = 1.0 / d.sqrt();
    }
    let q = &eig.eigenvectors;
    let v = AlgebraElement::new_detrended(q * log_half * q.transpose())?;
    let k = q * inv_sqrt * q.transpose() * g;
    Ok(CartanFactors { v, k })
}

/// Decompose g = k exp(H) n by Gram-Schmidt/QR on the columns of g, with the
/// diagonal of exp(H) strictly positive.
pub fn iwasawa_decompose(g: &Mat) -> Result<IwasawaFactors, LieError> {
    check_unimodular(g)?;
    let n = g.nrows();
    let qr = g.clone().qr();
    let mut q = qr.q();
    let mut r = qr.r();
    // Fix signs so that R has a positive diagonal.
    for i in 0..n {
        if r[(i, i)] < 0.0 {
            for j in 0..n {
                r[(i, j)] = -r[(i, j)];
                q[(j, i)] = -q[(j, i)];
            }
        }
    }
    let mut h = Mat::zeros(n, n);
    let mut n_up = Mat::identity(n, n);
    for i in 0..n {
        h[(i, i)] = r[(i, i)].ln();
        for j in (i + 1)..n {
            n_up[(i, j)] = r[(i, j)] / r[(i, i)];
        }
    }
    Ok(IwasawaFactors {
        k: q,
        h: AlgebraElement::new_detrended(h)?,
        n_up,
    })
}

/// The Killing form of sl(n,R): B(X,Y) = 2n tr(XY).
///
/// Every inner product on p, a and their duals used in this workspace
/// derives from this one normalization.
pub fn killing_form(x: &AlgebraElement, y: &AlgebraElement) -> Result<f64, LieError> {
    if x.dim() != y.dim() {
        return Err(LieError::DimensionMismatch(x.dim(), y.dim()));
    }
    let n = x.dim() as f64;
    Ok(2.0 * n * (x.mat() * y.mat()).trace())
}

/// Campbell-Hausdorff residual Z(X,Y) = log(exp X exp Y) - X - Y.
pub fn bch_residual(
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, LieError> {
    if x.dim() != y.dim() {
        return Err(LieError::DimensionMismatch(x.dim(), y.dim()));
    }
    let prod = mat_exp(x) * mat_exp(y);
    let log = mat_log(&prod)?;
    Ok(log.sub(x).sub(y))
}
