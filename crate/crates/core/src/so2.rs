//! Small helpers for SO(2) viewed as the circle.

use crate::mat::Mat;

/// Rotation matrix [[cos, -sin],[sin, cos]].
pub fn rotation(theta: f64) -> Mat {
    Mat::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

/// Angle in (-pi, pi] of a rotation matrix; also the geodesic distance to I.
pub fn angle_of(k: &Mat) -> f64 {
    debug_assert_eq!(k.nrows(), 2);
    k[(1, 0)].atan2(k[(0, 0)])
}

/// Reduce an angle into [0, 2*pi).
pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let r = theta % two_pi;
    if r < 0.0 {
        r + two_pi
    } else {
        r
    }
}
