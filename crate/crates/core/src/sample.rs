//! Seeded random generators for group and algebra elements.

use crate::mat::{AlgebraElement, Mat};
use rand::Rng;

/// Random element of SL(n,R): entries U[-2,2], then normalized to det 1
/// (resampling the rare near-singular draws).
pub fn random_sl<R: Rng>(n: usize, rng: &mut R) -> Mat {
    loop {
        let mut g = Mat::from_fn(n, n, |_, _| rng.gen_range(-2.0..2.0));
        let det = g.determinant();
        if det.abs() < 0.05 {
            continue;
        }
        if det < 0.0 {
            for i in 0..n {
                g[(i, 0)] = -g[(i, 0)];
            }
        }
        let scale = g.determinant().powf(-1.0 / n as f64);
        return g * scale;
    }
}

/// Random traceless matrix with entries of size ~amp.
pub fn random_algebra<R: Rng>(n: usize, rng: &mut R, amp: f64) -> AlgebraElement {
    let m = Mat::from_fn(n, n, |_, _| rng.gen_range(-amp..amp));
    AlgebraElement::new_detrended(m).unwrap()
}

/// Random symmetric traceless matrix (an element of p).
pub fn random_p<R: Rng>(n: usize, rng: &mut R, amp: f64) -> AlgebraElement {
    random_algebra(n, rng, amp).p_component()
}

/// Random antisymmetric matrix (an element of k).
pub fn random_k<R: Rng>(n: usize, rng: &mut R, amp: f64) -> AlgebraElement {
    random_algebra(n, rng, amp).k_component()
}

/// Random rotation in SO(n), from the exponential of a random element of k.
pub fn random_so<R: Rng>(n: usize, rng: &mut R) -> Mat {
    crate::mat::mat_exp(&random_k(n, rng, 1.0))
}
