//! Exact linear algebra over `Z`, `Q` and `Z/N`.

pub mod matrix;
pub mod normal;
pub mod ring;
pub mod submodule;

pub use matrix::Matrix;
pub use normal::{snf, SmithForm};
pub use ring::{Elem, Ring, RingHom};
pub use submodule::{canonical_form, kernel, BasisExtender, Cotype, Relation, Submodule};

/// Whether a square matrix is invertible over its ring.
pub fn is_invertible(m: &Matrix) -> bool {
    m.rows() == m.cols() && canonical_form(m.ring(), m.cols(), &m.row_vecs()).is_ok_and(|s| s.is_whole())
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let ring = m.ring();
    let aug: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(submodule::unit_vector(n, i));
            r
        })
        .collect();
    let ech = normal::echelon_canonical(ring, &aug, 2 * n);
    if ech.len() != n {
        return None;
    }
    for (i, r) in ech.iter().enumerate() {
        if r[..n] != submodule::unit_vector(n, i)[..] {
            return None;
        }
    }
    Matrix::from_rows(ring, n, ech.into_iter().map(|r| r[n..].to_vec()).collect()).ok()
}
