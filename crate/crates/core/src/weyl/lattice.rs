//! Fixed sublattices `X*(T)^H` of finite groups of lattice automorphisms.

use num_traits::Zero;

use crate::matrix::{hermite_rows, integer_kernel, solve_in_span, to_rational_vec, IntMatrix};
use crate::rational::Rational;

use super::WeylElement;

/// Saturated sublattice of `Z^ambient_rank` fixed by a group, with a basis in
/// row Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantLattice {
    ambient_rank: usize,
    basis: Vec<Vec<i64>>,
}

impl InvariantLattice {
    /// Lattice spanned by given vectors, rebased into Hermite form. The
    /// vectors must be linearly independent.
    pub fn from_basis(ambient_rank: usize, vectors: Vec<Vec<i64>>) -> Self {
        InvariantLattice { ambient_rank, basis: hermite_rows(vectors) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rational_basis(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|b| to_rational_vec(b)).collect()
    }

    /// Coordinates of `v` in the basis, if `v` lies in the rational span.
    pub fn rational_coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        solve_in_span(&self.rational_basis(), v)
    }

    /// Integer coordinates of `v`, if it is a lattice point.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let q = self.rational_coordinates(&to_rational_vec(v))?;
        q.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Matrix of `w` restricted to the lattice, in basis coordinates
    /// (columns are images of basis vectors). `None` if `w` does not
    /// preserve the lattice.
    pub fn restrict(&self, w: &IntMatrix) -> Option<IntMatrix> {
        let k = self.rank();
        let mut out = IntMatrix::zeros(k, k);
        for (j, b) in self.basis.iter().enumerate() {
            let coords = self.coordinates(&w.mul_vec(b))?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Some(out)
    }
}

/// `{x ∈ X*(T) : w·x = x for all w}`. The kernel of the stacked `w - 1`
/// is computed with unimodular column operations, so the result is
/// saturated.
pub fn invariant_lattice_of_matrices(rank: usize, group: &[IntMatrix]) -> InvariantLattice {
    let mut rows = Vec::new();
    for w in group {
        for i in 0..rank {
            let mut row = w.row(i).to_vec();
            row[i] -= 1;
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        let basis = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        return InvariantLattice { ambient_rank: rank, basis };
    }
    let a = IntMatrix::from_rows(&rows);
    InvariantLattice { ambient_rank: rank, basis: integer_kernel(&a) }
}

pub fn invariant_lattice(rank: usize, subgroup: &[WeylElement]) -> InvariantLattice {
    let ms: Vec<IntMatrix> = subgroup.iter().map(|w| w.matrix().clone()).collect();
    invariant_lattice_of_matrices(rank, &ms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{catalog, BasedRootDatum};
    use crate::weyl::{ParabolicSubset, WeylGroup};
    use proptest::prelude::*;

    #[test]
    fn trivial_subgroup_gives_everything() {
        let w = WeylGroup::generate(&BasedRootDatum::gln(3)).unwrap();
        let lat = invariant_lattice(3, &[w.identity().clone()]);
        assert_eq!(lat.rank(), 3);
        assert_eq!(lat.basis(), &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn block_sums_for_gl4() {
        let w = WeylGroup::generate(&BasedRootDatum::gln(4)).unwrap();
        let sub = w.parabolic_subgroup(&ParabolicSubset::new([0, 2]));
        let lat = invariant_lattice(4, &sub);
        assert_eq!(lat.basis(), &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
    }

    #[test]
    fn determinant_for_gl3() {
        let w = WeylGroup::generate(&BasedRootDatum::gln(3)).unwrap();
        let lat = invariant_lattice(3, w.elements());
        assert_eq!(lat.basis(), &[vec![1, 1, 1]]);
    }

    #[test]
    fn semisimple_full_group_fixes_nothing() {
        let w = WeylGroup::generate(&catalog::g2()).unwrap();
        assert_eq!(invariant_lattice(2, w.elements()).rank(), 0);
    }

    #[test]
    fn restriction_of_block_swap() {
        let d = BasedRootDatum::gln(4);
        let w = WeylGroup::generate(&d).unwrap();
        let lat = invariant_lattice(4, &w.parabolic_subgroup(&ParabolicSubset::new([0, 2])));
        // (13)(24) swaps the two blocks.
        let swap = IntMatrix::permutation(&[2, 3, 0, 1]);
        assert_eq!(lat.restrict(&swap).unwrap().to_rows(), vec![vec![0, 1], vec![1, 0]]);
        // s_2 does not preserve the lattice.
        assert!(lat.restrict(w.generator(1)).is_none());
    }

    proptest! {
        #[test]
        fn fixed_vectors_lie_in_the_lattice(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
            // Vectors of the form (a,a,b,b,c) are fixed by W_{0,2} in GL_5.
            let w = WeylGroup::generate(&BasedRootDatum::gln(5)).unwrap();
            let lat = invariant_lattice(5, &w.parabolic_subgroup(&ParabolicSubset::new([0, 2])));
            prop_assert_eq!(lat.rank(), 3);
            let v = vec![a, a, b, b, c];
            prop_assert!(lat.contains(&v));
            prop_assert!(!lat.contains(&[a, a + 1, b, b, c]));
        }
    }
}
