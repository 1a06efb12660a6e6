//! Based root data `(X*, Δ, X_*, Δ∨)` in fixed coordinates.
//!
//! Both lattices are identified with `Z^rank`, and the pairing between
//! characters and cocharacters is the dot product. The dual datum simply
//! swaps roots and coroots.

use serde::{Deserialize, Serialize};

use crate::matrix::{int_dot, rank_of, IntMatrix};

/// Coordinates of a character or cocharacter.
pub type LatticeVector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatumError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("vector {which}[{index}] has length {len}, expected rank {rank}")]
    DimensionMismatch { which: &'static str, index: usize, len: usize, rank: usize },
    #[error("{roots} simple roots but {coroots} simple coroots")]
    CountMismatch { roots: usize, coroots: usize },
    #[error("<alpha_{index}, alpha_{index}^vee> = {value}, expected 2")]
    PairingViolation { index: usize, value: i64 },
    #[error("Cartan entries ({i},{j}) = {cij} and ({j},{i}) = {cji} violate the sign rules")]
    CartanSignViolation { i: usize, j: usize, cij: i64, cji: i64 },
    #[error("simple {0} are linearly dependent")]
    DependentRoots(&'static str),
}

/// A validated based root datum. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasedRootDatum {
    rank: usize,
    simple_roots: Vec<LatticeVector>,
    simple_coroots: Vec<LatticeVector>,
}

/// `C[i][j] = <α_i, α_j∨>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix(IntMatrix);

impl CartanMatrix {
    pub fn entries(&self) -> &IntMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0.get(i, j)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.0.to_rows()
    }

    pub fn transpose(&self) -> CartanMatrix {
        CartanMatrix(self.0.transpose())
    }
}

impl BasedRootDatum {
    /// Validates and builds a datum. Roots and coroots are index-aligned.
    pub fn new(
        rank: usize,
        simple_roots: Vec<LatticeVector>,
        simple_coroots: Vec<LatticeVector>,
    ) -> Result<Self, DatumError> {
        if rank == 0 {
            return Err(DatumError::ZeroRank);
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(DatumError::CountMismatch { roots: simple_roots.len(), coroots: simple_coroots.len() });
        }
        for (which, vs) in [("simple_roots", &simple_roots), ("simple_coroots", &simple_coroots)] {
            for (index, v) in vs.iter().enumerate() {
                if v.len() != rank {
                    return Err(DatumError::DimensionMismatch { which, index, len: v.len(), rank });
                }
            }
        }
        let l = simple_roots.len();
        for i in 0..l {
            let value = int_dot(&simple_roots[i], &simple_coroots[i]);
            if value != 2 {
                return Err(DatumError::PairingViolation { index: i, value });
            }
        }
        for i in 0..l {
            for j in 0..l {
                if i == j {
                    continue;
                }
                let cij = int_dot(&simple_roots[i], &simple_coroots[j]);
                let cji = int_dot(&simple_roots[j], &simple_coroots[i]);
                if cij > 0 || (cij == 0) != (cji == 0) {
                    return Err(DatumError::CartanSignViolation { i, j, cij, cji });
                }
            }
        }
        if rank_of(&simple_roots) != l {
            return Err(DatumError::DependentRoots("roots"));
        }
        if rank_of(&simple_coroots) != l {
            return Err(DatumError::DependentRoots("coroots"));
        }
        Ok(BasedRootDatum { rank, simple_roots, simple_coroots })
    }

    /// Datum of `GL_n` with the diagonal torus and upper triangular Borel:
    /// simple roots and coroots are `e_i - e_{i+1}`.
    pub fn gln(n: usize) -> Self {
        assert!(n >= 1, "GL_n needs n >= 1");
        let roots: Vec<LatticeVector> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        BasedRootDatum { rank: n, simple_roots: roots.clone(), simple_coroots: roots }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots (the semisimple rank).
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[LatticeVector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[LatticeVector] {
        &self.simple_coroots
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_roots[i]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.simple_coroots[i]
    }

    /// `<x, y>` for a character `x` and cocharacter `y`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        int_dot(x, y)
    }

    pub fn dual(&self) -> BasedRootDatum {
        BasedRootDatum {
            rank: self.rank,
            simple_roots: self.simple_coroots.clone(),
            simple_coroots: self.simple_roots.clone(),
        }
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        let l = self.semisimple_rank();
        let mut c = IntMatrix::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                c.set(i, j, int_dot(&self.simple_roots[i], &self.simple_coroots[j]));
            }
        }
        CartanMatrix(c)
    }

    /// True when every simple root equals its coroot and has the form
    /// `e_a - e_b`. Such a datum carries the standard euclidean basis on
    /// which its Weyl group acts by coordinate permutations.
    pub fn has_standard_basis(&self) -> bool {
        self.simple_roots.iter().zip(&self.simple_coroots).all(|(r, c)| {
            r == c
                && r.iter().filter(|&&x| x == 1).count() == 1
                && r.iter().filter(|&&x| x == -1).count() == 1
                && r.iter().filter(|&&x| x != 0).count() == 2
        })
    }

    /// True when this is exactly [`BasedRootDatum::gln`] of its rank.
    pub fn is_gln(&self) -> bool {
        *self == BasedRootDatum::gln(self.rank)
    }
}

/// On-disk JSON form of a datum, optionally with a diagram action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub rank: usize,
    pub simple_roots: Vec<LatticeVector>,
    pub simple_coroots: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois_generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois_lattice_matrices: Option<Vec<Vec<Vec<i64>>>>,
}

impl DatumFile {
    pub fn datum(&self) -> Result<BasedRootDatum, DatumError> {
        BasedRootDatum::new(self.rank, self.simple_roots.clone(), self.simple_coroots.clone())
    }

    pub fn from_datum(datum: &BasedRootDatum) -> Self {
        DatumFile {
            rank: datum.rank,
            simple_roots: datum.simple_roots.clone(),
            simple_coroots: datum.simple_coroots.clone(),
            galois_generators: None,
            galois_lattice_matrices: None,
        }
    }
}

/// A few classical data used throughout the tests and benches.
pub mod catalog {
    use super::BasedRootDatum;

    /// `SO_5`-type datum: roots `e1-e2, e2`, coroots `e1-e2, 2e2`.
    pub fn b2() -> BasedRootDatum {
        BasedRootDatum::new(2, vec![vec![1, -1], vec![0, 1]], vec![vec![1, -1], vec![0, 2]]).expect("B2 datum")
    }

    pub fn c2() -> BasedRootDatum {
        b2().dual()
    }

    /// Adjoint `G2`: simple roots form the lattice basis, `α_1` short.
    pub fn g2() -> BasedRootDatum {
        BasedRootDatum::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![2, -3], vec![-1, 2]]).expect("G2 datum")
    }

    /// Adjoint datum of a Cartan matrix `C[i][j] = <α_i, α_j∨>`: roots are
    /// the standard basis and coroot `j` is column `j`.
    pub fn adjoint(cartan: &[Vec<i64>]) -> BasedRootDatum {
        let l = cartan.len();
        let roots: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|k| i64::from(i == k)).collect()).collect();
        let coroots: Vec<Vec<i64>> = (0..l).map(|j| (0..l).map(|i| cartan[i][j]).collect()).collect();
        BasedRootDatum::new(l, roots, coroots).expect("adjoint datum")
    }

    pub fn sl2() -> BasedRootDatum {
        BasedRootDatum::new(1, vec![vec![2]], vec![vec![1]]).expect("SL2 datum")
    }

    pub fn pgl2() -> BasedRootDatum {
        sl2().dual()
    }

    /// Every datum of rank at most three used by the exhaustive suites.
    pub fn small_rank_corpus() -> Vec<(&'static str, BasedRootDatum)> {
        vec![
            ("GL1", BasedRootDatum::gln(1)),
            ("SL2", sl2()),
            ("PGL2", pgl2()),
            ("GL2", BasedRootDatum::gln(2)),
            ("A1xA1", adjoint(&[vec![2, 0], vec![0, 2]])),
            ("A2", adjoint(&[vec![2, -1], vec![-1, 2]])),
            ("B2", b2()),
            ("C2", c2()),
            ("G2", g2()),
            ("GL3", BasedRootDatum::gln(3)),
            ("A3", adjoint(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]])),
            ("B3", adjoint(&[vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]])),
            ("C3", adjoint(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]])),
            ("A1xA2", adjoint(&[vec![2, 0, 0], vec![0, 2, -1], vec![0, -1, 2]])),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn rejects_bad_pairing() {
        let err = BasedRootDatum::new(2, vec![vec![2, -1]], vec![vec![1, -1]]).unwrap_err();
        assert_eq!(err, DatumError::PairingViolation { index: 0, value: 3 });
    }

    #[test]
    fn rejects_dimension_and_sign_problems() {
        let err = BasedRootDatum::new(2, vec![vec![1, -1, 0]], vec![vec![1, -1]]).unwrap_err();
        assert!(matches!(err, DatumError::DimensionMismatch { which: "simple_roots", .. }));
        // Off-diagonal entry +1.
        let err = BasedRootDatum::new(2, vec![vec![2, 0], vec![0, 2]], vec![vec![1, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, DatumError::CartanSignViolation { .. }));
        // C_01 = 0 but C_10 = -1.
        let err = BasedRootDatum::new(2, vec![vec![2, 0], vec![-1, 2]], vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, DatumError::CartanSignViolation { .. }));
        let err = BasedRootDatum::new(2, vec![vec![1, -1], vec![1, -1]], vec![vec![1, -1], vec![1, -1]]).unwrap_err();
        assert!(matches!(err, DatumError::PairingViolation { .. } | DatumError::CartanSignViolation { .. }));
        assert_eq!(BasedRootDatum::new(0, vec![], vec![]).unwrap_err(), DatumError::ZeroRank);
    }

    #[test]
    fn rejects_dependent_roots() {
        // Pairing and sign axioms hold, but α_2 = -α_1.
        let err = BasedRootDatum::new(2, vec![vec![1, 0], vec![-1, 0]], vec![vec![2, 0], vec![-2, 0]]).unwrap_err();
        assert_eq!(err, DatumError::DependentRoots("roots"));
        let err = BasedRootDatum::new(2, vec![vec![1, 0], vec![-1, 1]], vec![vec![2, 0], vec![-2, 0]]).unwrap_err();
        assert_eq!(err, DatumError::DependentRoots("coroots"));
    }

    #[test]
    fn gl2_and_gl3() {
        let d = BasedRootDatum::new(2, vec![vec![1, -1]], vec![vec![1, -1]]).unwrap();
        assert_eq!(d.cartan_matrix().to_rows(), vec![vec![2]]);
        assert_eq!(d, BasedRootDatum::gln(2));
        let d3 =
            BasedRootDatum::new(3, vec![vec![1, -1, 0], vec![0, 1, -1]], vec![vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        assert_eq!(d3, BasedRootDatum::gln(3));
        assert_eq!(d3.cartan_matrix().to_rows(), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn gln_shapes() {
        let g1 = BasedRootDatum::gln(1);
        assert_eq!(g1.rank(), 1);
        assert_eq!(g1.semisimple_rank(), 0);
        assert_eq!(
            BasedRootDatum::gln(4).cartan_matrix().to_rows(),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
        );
        for n in 1..=12 {
            let d = BasedRootDatum::gln(n);
            let again = BasedRootDatum::new(n, d.simple_roots().to_vec(), d.simple_coroots().to_vec());
            assert_eq!(again.unwrap(), d);
            assert!(d.has_standard_basis());
        }
    }

    #[test]
    fn duality() {
        assert_eq!(BasedRootDatum::gln(3).dual(), BasedRootDatum::gln(3));
        let b = b2();
        let c = b.dual();
        assert_eq!(c.simple_roots(), &[vec![1, -1], vec![0, 2]]);
        assert_eq!(c.dual(), b);
        // Recheck the axioms on the dual from scratch.
        assert!(BasedRootDatum::new(2, c.simple_roots().to_vec(), c.simple_coroots().to_vec()).is_ok());
    }

    #[test]
    fn b2_cartan_by_direct_pairing() {
        // <(1,-1),(0,2)> = -2 and <(0,1),(1,-1)> = -1.
        assert_eq!(b2().cartan_matrix().to_rows(), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(g2().cartan_matrix().to_rows(), vec![vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn corpus_is_valid_and_dual_transposes_cartan() {
        for (name, d) in small_rank_corpus() {
            assert!(d.rank() <= 3, "{name}");
            assert_eq!(d.dual().cartan_matrix(), d.cartan_matrix().transpose(), "{name}");
            assert_eq!(d.dual().dual(), d, "{name}");
        }
    }

    #[test]
    fn json_round_trip_and_unknown_fields() {
        let file = DatumFile::from_datum(&b2());
        let text = serde_json::to_string(&file).unwrap();
        let back: DatumFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.datum().unwrap(), b2());
        let bad = r#"{"rank":1,"simple_roots":[],"simple_coroots":[],"extra":1}"#;
        assert!(serde_json::from_str::<DatumFile>(bad).is_err());
    }
}
