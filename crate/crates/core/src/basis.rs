//! Fixed B-orthonormal basis of p, one per dimension, so Gram matrices and
//! CSV output are reproducible bit-for-bit.

use crate::mat::{killing_form, AlgebraElement, Mat};

/// B-orthonormal basis of the symmetric traceless matrices of size n.
///
/// Diagonal directions first (Gram-Schmidt of E_ii - E_{i+1,i+1} under the
/// Killing form), then the normalized E_ij + E_ji for i < j in lexicographic
/// order. For n = 2 this is [H0, E]/sqrt(8) with H0 = diag(1,-1) and
/// E = [[0,1],[1,0]].
pub fn p_basis(n: usize) -> Vec<AlgebraElement> {
    let mut basis: Vec<AlgebraElement> = Vec::new();
    for i in 0..n - 1 {
        let mut d = Mat::zeros(n, n);
        d[(i, i)] = 1.0;
        d[(i + 1, i + 1)] = -1.0;
        let mut v = AlgebraElement::new(d).unwrap();
        for b in &basis {
            let c = killing_form(&v, b).unwrap();
            v = v.sub(&b.scale(c));
        }
        let norm = killing_form(&v, &v).unwrap().sqrt();
        basis.push(v.scale(1.0 / norm));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut s = Mat::zeros(n, n);
            s[(i, j)] = 1.0;
            s[(j, i)] = 1.0;
            let v = AlgebraElement::new(s).unwrap();
            let norm = killing_form(&v, &v).unwrap().sqrt();
            basis.push(v.scale(1.0 / norm));
        }
    }
    basis
}

/// Coordinates of a p-element in the fixed B-orthonormal basis.
pub fn p_coords(x: &AlgebraElement, basis: &[AlgebraElement]) -> Vec<f64> {
    basis
        .iter()
        .map(|b| killing_form(x, b).unwrap())
        .collect()
}

/// Reassemble a p-element from coordinates in the fixed basis.
pub fn p_from_coords(coords: &[f64], basis: &[AlgebraElement]) -> AlgebraElement {
    let mut x = AlgebraElement::zero(basis[0].dim());
    for (c, b) in coords.iter().zip(basis) {
        x = x.add(&b.scale(*c));
    }
    x
}
