//! GF(2) linear algebra for homology ranks, and edge reduction of type D
//! structures.

mod matrix;
mod reduce;

pub use matrix::{rank_gf2, Gf2Matrix};
pub use reduce::{edge_reduce, edge_reduce_counted};

use crate::error::{Error, Result};
use crate::tensor::ChainComplex;

/// Whether `∂ ∘ ∂ = 0`.
pub fn verify_d_squared(c: &ChainComplex) -> bool {
    let d = c.boundary();
    d.mul(d).is_zero()
}

/// `dim ker ∂ - rank ∂ = n - 2 rank ∂` over GF(2).
pub fn homology_rank(c: &ChainComplex) -> Result<usize> {
    if !verify_d_squared(c) {
        return Err(Error::NotAComplex);
    }
    Ok(c.len() - 2 * c.boundary().rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_of_small_complexes() {
        let c = ChainComplex::from_boundary(Gf2Matrix::zeros(6, 6)).unwrap();
        assert_eq!(homology_rank(&c).unwrap(), 6);

        // ∂x = y
        let c = ChainComplex::from_boundary(Gf2Matrix::from_entries(2, 2, [(1, 0)])).unwrap();
        assert_eq!(homology_rank(&c).unwrap(), 0);

        let c = ChainComplex::from_boundary(Gf2Matrix::zeros(0, 0)).unwrap();
        assert_eq!(homology_rank(&c).unwrap(), 0);
    }

    #[test]
    fn d_squared_detection() {
        // ∂x = y, ∂y = z
        let m = Gf2Matrix::from_entries(3, 3, [(1, 0), (2, 1)]);
        let c = ChainComplex::from_boundary_unchecked(m);
        assert!(!verify_d_squared(&c));
        assert_eq!(homology_rank(&c), Err(Error::NotAComplex));
        assert!(
            ChainComplex::from_boundary(Gf2Matrix::from_entries(3, 3, [(1, 0), (2, 1)])).is_err()
        );
        assert!(verify_d_squared(&ChainComplex::from_boundary_unchecked(
            Gf2Matrix::zeros(4, 4)
        )));
    }
}
