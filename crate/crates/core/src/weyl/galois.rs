//! Diagram actions `μ: Γ → Aut ψ₀(G)` and their effect on the Weyl group.
//!
//! An action is a list of generators. Each generator is a permutation `σ` of
//! the simple roots preserving the Cartan matrix, together with an integer
//! matrix `g` on `X*(T)` with `g·α_i = α_σ(i)` and `ᵗg⁻¹·α_i∨ = α_σ(i)∨`.
//! Conjugation by `g` then sends `s_i` to `s_σ(i)`.

use crate::matrix::{IntMatrix, QMatrix};
use crate::par::{self, Execution};
use crate::root_datum::{BasedRootDatum, DatumFile};

use super::{ParabolicSubset, WeylElement, WeylError, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisAction {
    perms: Vec<Vec<usize>>,
    lattice: Vec<IntMatrix>,
    lattice_inv: Vec<IntMatrix>,
}

impl GaloisAction {
    /// The action of a split group (or an inner form of one).
    pub fn trivial() -> Self {
        GaloisAction { perms: Vec::new(), lattice: Vec::new(), lattice_inv: Vec::new() }
    }

    /// Validates generators. When `lattice` is `None` the lattice matrices are
    /// derived: the identity for the identity permutation, `A·P·A⁻¹` when the
    /// simple roots `A` span `X*(T) ⊗ Q`, or a signed coordinate permutation
    /// on a datum with a standard basis. Otherwise the generator is rejected
    /// with [`WeylError::ActionBasisUndefined`].
    pub fn new(
        datum: &BasedRootDatum,
        perms: Vec<Vec<usize>>,
        lattice: Option<Vec<IntMatrix>>,
    ) -> Result<Self, WeylError> {
        let l = datum.semisimple_rank();
        let cartan = datum.cartan_matrix();
        for (index, p) in perms.iter().enumerate() {
            let mut seen = vec![false; l];
            if p.len() != l || p.iter().any(|&x| x >= l || std::mem::replace(&mut seen[x], true)) {
                return Err(WeylError::InvalidAction {
                    index,
                    reason: format!("{p:?} is not a permutation of 0..{l}"),
                });
            }
            for i in 0..l {
                for j in 0..l {
                    if cartan.get(p[i], p[j]) != cartan.get(i, j) {
                        return Err(WeylError::InvalidAction {
                            index,
                            reason: "permutation does not preserve the Cartan matrix".into(),
                        });
                    }
                }
            }
        }
        let lattice = match lattice {
            Some(ms) => {
                if ms.len() != perms.len() {
                    return Err(WeylError::InvalidAction {
                        index: ms.len().min(perms.len()),
                        reason: format!("{} lattice matrices for {} generators", ms.len(), perms.len()),
                    });
                }
                ms
            }
            None => perms
                .iter()
                .enumerate()
                .map(|(index, p)| derive_lattice_matrix(datum, p).ok_or(WeylError::ActionBasisUndefined { index }))
                .collect::<Result<_, _>>()?,
        };
        let mut lattice_inv = Vec::with_capacity(lattice.len());
        for (index, (g, p)) in lattice.iter().zip(&perms).enumerate() {
            let inv = check_lattice_matrix(datum, p, g).map_err(|reason| WeylError::InvalidAction { index, reason })?;
            lattice_inv.push(inv);
        }
        Ok(GaloisAction { perms, lattice, lattice_inv })
    }

    /// Reads `galois_generators` / `galois_lattice_matrices` from a datum file.
    pub fn from_file(datum: &BasedRootDatum, file: &DatumFile) -> Result<Self, WeylError> {
        let perms = file.galois_generators.clone().unwrap_or_default();
        let lattice = file
            .galois_lattice_matrices
            .as_ref()
            .map(|ms| ms.iter().map(|rows| matrix_from_rows(rows, datum.rank())).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        GaloisAction::new(datum, perms, lattice)
    }

    pub fn is_trivial(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn lattice_matrix(&self, gen: usize) -> &IntMatrix {
        &self.lattice[gen]
    }

    /// Matrix of the group element `γ_{k_1}·γ_{k_2}···` and its inverse.
    pub fn word_matrix(&self, rank: usize, word: &[usize]) -> Result<(IntMatrix, IntMatrix), WeylError> {
        let mut g = IntMatrix::identity(rank);
        let mut ginv = IntMatrix::identity(rank);
        for &k in word {
            if k >= self.lattice.len() {
                return Err(WeylError::UnknownGaloisGenerator { index: k, len: self.lattice.len() });
            }
            g = &g * &self.lattice[k];
            ginv = &self.lattice_inv[k] * &ginv;
        }
        Ok((g, ginv))
    }

    /// `w ↦ μ(γ)·w·μ(γ)⁻¹` for `γ` given as a word in the generators.
    pub fn act_on_weyl(&self, group: &WeylGroup, gamma: &[usize], w: &WeylElement) -> Result<WeylElement, WeylError> {
        let (g, ginv) = self.word_matrix(group.datum().rank(), gamma)?;
        let conj = &(&g * w.matrix()) * &ginv;
        group.canonical(&conj).cloned()
    }

    pub fn conjugate_idx(&self, group: &WeylGroup, gen: usize, w: usize) -> usize {
        let conj = &(&self.lattice[gen] * group.element(w).matrix()) * &self.lattice_inv[gen];
        group.index_of(&conj).expect("validated actions normalize W")
    }

    /// Whether every generator fixes `w`.
    pub fn fixes(&self, group: &WeylGroup, w: usize) -> bool {
        (0..self.lattice.len()).all(|g| self.conjugate_idx(group, g, w) == w)
    }

    pub fn permute_subset(&self, gen: usize, subset: &ParabolicSubset) -> ParabolicSubset {
        ParabolicSubset::new(subset.indices().iter().map(|&i| self.perms[gen][i]))
    }

    pub fn is_stable(&self, subset: &ParabolicSubset) -> bool {
        (0..self.perms.len()).all(|g| &self.permute_subset(g, subset) == subset)
    }

    /// Orbits of the generated permutation group on `0..l`, each sorted,
    /// ordered by least element.
    pub fn orbits(&self, l: usize) -> Vec<Vec<usize>> {
        let mut label: Vec<usize> = (0..l).collect();
        fn find(label: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while label[r] != r {
                r = label[r];
            }
            label[x] = r;
            r
        }
        for p in &self.perms {
            for (i, &j) in p.iter().enumerate() {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; l];
        for i in 0..l {
            let r = find(&mut label, i);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(i);
        }
        out
    }

    /// The same permutations acting on the dual datum through `ᵗg⁻¹`.
    pub fn transport_to_dual(&self) -> GaloisAction {
        GaloisAction {
            perms: self.perms.clone(),
            lattice: self.lattice_inv.iter().map(IntMatrix::transpose).collect(),
            lattice_inv: self.lattice.iter().map(IntMatrix::transpose).collect(),
        }
    }

    /// Every permutation of the simple roots that preserves the Cartan
    /// matrix, identity first.
    pub fn cartan_automorphisms(datum: &BasedRootDatum) -> Vec<Vec<usize>> {
        let l = datum.semisimple_rank();
        let c = datum.cartan_matrix();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..l).collect();
        permutations(&mut perm, 0, &mut |p| {
            if (0..l).all(|i| (0..l).all(|j| c.get(p[i], p[j]) == c.get(i, j))) {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn matrix_from_rows(rows: &[Vec<i64>], rank: usize) -> Result<IntMatrix, WeylError> {
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(WeylError::InvalidAction { index: 0, reason: format!("lattice matrix must be {rank}x{rank}") });
    }
    Ok(IntMatrix::from_rows(rows))
}

/// Checks the root and coroot conditions; returns `g⁻¹`.
fn check_lattice_matrix(datum: &BasedRootDatum, perm: &[usize], g: &IntMatrix) -> Result<IntMatrix, String> {
    let n = datum.rank();
    if g.rows() != n || g.cols() != n {
        return Err(format!("lattice matrix must be {n}x{n}"));
    }
    let ginv = g.inverse().ok_or_else(|| "lattice matrix is not invertible over Z".to_string())?;
    let ginv_t = ginv.transpose();
    for (i, &pi) in perm.iter().enumerate() {
        if g.mul_vec(datum.simple_root(i)) != datum.simple_root(pi) {
            return Err(format!("lattice matrix does not send root {i} to root {pi}"));
        }
        if ginv_t.mul_vec(datum.simple_coroot(i)) != datum.simple_coroot(pi) {
            return Err(format!("lattice matrix does not send coroot {i} to coroot {pi}"));
        }
    }
    Ok(ginv)
}

fn derive_lattice_matrix(datum: &BasedRootDatum, perm: &[usize]) -> Option<IntMatrix> {
    let n = datum.rank();
    let l = datum.semisimple_rank();
    if perm.iter().enumerate().all(|(i, &x)| i == x) {
        return Some(IntMatrix::identity(n));
    }
    if l == n {
        // g·A = A·P with the roots as columns of A.
        let a = IntMatrix::from_rows(datum.simple_roots()).transpose().to_rational();
        let ainv = a.inverse()?;
        let p = IntMatrix::permutation(perm).to_rational();
        let g: QMatrix = &(&a * &p) * &ainv;
        let g = g.to_integer()?;
        return check_lattice_matrix(datum, perm, &g).ok().map(|_| g);
    }
    if datum.has_standard_basis() {
        return [1i64, -1].into_iter().find_map(|sign| {
            let g = signed_coordinate_permutation(datum, perm, sign)?;
            check_lattice_matrix(datum, perm, &g).ok().map(|_| g)
        });
    }
    None
}

/// Tries `g = sign·P_π` with `π` a coordinate permutation forced by the
/// roots `e_a - e_b`; unconstrained coordinates are matched in order.
fn signed_coordinate_permutation(datum: &BasedRootDatum, perm: &[usize], sign: i64) -> Option<IntMatrix> {
    let n = datum.rank();
    let ends = |v: &[i64]| -> (usize, usize) {
        let a = v.iter().position(|&x| x == 1).expect("standard basis root");
        let b = v.iter().position(|&x| x == -1).expect("standard basis root");
        (a, b)
    };
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut taken = vec![false; n];
    let mut assign = |from: usize, to: usize, image: &mut Vec<Option<usize>>| -> bool {
        match image[from] {
            Some(t) => t == to,
            None if taken[to] => false,
            None => {
                image[from] = Some(to);
                taken[to] = true;
                true
            }
        }
    };
    for (i, &pi) in perm.iter().enumerate() {
        let (a, b) = ends(datum.simple_root(i));
        let (c, d) = ends(datum.simple_root(pi));
        let (ta, tb) = if sign == 1 { (c, d) } else { (d, c) };
        if !assign(a, ta, &mut image) || !assign(b, tb, &mut image) {
            return None;
        }
    }
    let mut free_targets = (0..n).filter(|&t| !image.contains(&Some(t)));
    let full: Vec<usize> = image.iter().map(|t| t.or_else(|| free_targets.next())).collect::<Option<_>>()?;
    let mut g = IntMatrix::zeros(n, n);
    for (j, &t) in full.iter().enumerate() {
        g.set(t, j, sign);
    }
    Some(g)
}

/// `{w ∈ W : μ(γ)·w·μ(γ)⁻¹ = w for all generators γ}`, as indices.
pub fn fixed_indices(group: &WeylGroup, action: &GaloisAction, exec: Execution) -> Vec<usize> {
    if action.is_trivial() {
        return (0..group.order()).collect();
    }
    par::filter_range(exec, group.order(), |w| action.fixes(group, w))
}

pub fn fixed_subgroup(group: &WeylGroup, action: &GaloisAction) -> Vec<WeylElement> {
    fixed_indices(group, action, Execution::default()).into_iter().map(|i| group.element(i).clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::catalog;
    use crate::weyl::simple_reflection;

    fn flip3() -> (BasedRootDatum, GaloisAction) {
        let d = BasedRootDatum::gln(3);
        let a = GaloisAction::new(&d, vec![vec![1, 0]], None).unwrap();
        (d, a)
    }

    #[test]
    fn gl3_flip_derives_signed_reversal() {
        let (_, a) = flip3();
        assert_eq!(a.lattice_matrix(0).to_rows(), vec![vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]);
    }

    #[test]
    fn trivial_action_changes_nothing() {
        let d = BasedRootDatum::gln(3);
        let w = WeylGroup::generate(&d).unwrap();
        let t = GaloisAction::trivial();
        for e in w.elements() {
            assert_eq!(&t.act_on_weyl(&w, &[], e).unwrap(), e);
        }
        // An inner form carries the identity permutation.
        let inner = GaloisAction::new(&d, vec![vec![0, 1]], None).unwrap();
        assert!(inner.is_trivial());
        for e in w.elements() {
            assert_eq!(&inner.act_on_weyl(&w, &[0], e).unwrap(), e);
        }
        assert_eq!(fixed_subgroup(&w, &inner).len(), 6);
    }

    #[test]
    fn flip_swaps_simple_reflections() {
        let (d, a) = flip3();
        let w = WeylGroup::generate(&d).unwrap();
        let s1 = simple_reflection(&d, 0).unwrap();
        let s2 = simple_reflection(&d, 1).unwrap();
        assert_eq!(a.act_on_weyl(&w, &[0], &s1).unwrap(), s2);
        assert_eq!(a.act_on_weyl(&w, &[0, 0], &s1).unwrap(), s1);
        assert!(matches!(a.act_on_weyl(&w, &[3], &s1), Err(WeylError::UnknownGaloisGenerator { .. })));
    }

    #[test]
    fn flip_fixed_points_by_brute_force() {
        let (d, a) = flip3();
        let w = WeylGroup::generate(&d).unwrap();
        let g = IntMatrix::from_rows(&[vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]);
        let expect: Vec<&WeylElement> =
            w.elements().iter().filter(|e| (&g * e.matrix()) == (e.matrix() * &g)).collect();
        let got = fixed_subgroup(&w, &a);
        assert_eq!(got.iter().collect::<Vec<_>>(), expect);
        // identity and the longest element s1 s2 s1
        let words: Vec<&[usize]> = got.iter().map(|e| e.word()).collect();
        assert_eq!(words, vec![&[][..], &[0, 1, 0][..]]);
    }

    #[test]
    fn rejects_bad_permutations() {
        let d = catalog::b2();
        // Swapping long and short roots breaks the Cartan matrix.
        assert!(matches!(GaloisAction::new(&d, vec![vec![1, 0]], None), Err(WeylError::InvalidAction { .. })));
        assert!(matches!(GaloisAction::new(&d, vec![vec![0, 0]], None), Err(WeylError::InvalidAction { .. })));
    }

    #[test]
    fn action_basis_undefined_without_matrix() {
        // A2 inside a rank-4 lattice with a non-standard basis.
        let d = BasedRootDatum::new(
            4,
            vec![vec![2, -1, 0, 0], vec![-1, 2, 0, 0]],
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]],
        )
        .unwrap();
        assert_eq!(
            GaloisAction::new(&d, vec![vec![1, 0]], None).unwrap_err(),
            WeylError::ActionBasisUndefined { index: 0 }
        );
        let g = IntMatrix::from_rows(&[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]);
        let a = GaloisAction::new(&d, vec![vec![1, 0]], Some(vec![g])).unwrap();
        assert!(!a.is_trivial());
        // A matrix that moves roots wrongly is rejected.
        let bad = IntMatrix::identity(4);
        assert!(matches!(
            GaloisAction::new(&d, vec![vec![1, 0]], Some(vec![bad])),
            Err(WeylError::InvalidAction { .. })
        ));
    }

    #[test]
    fn semisimple_flip_is_derived() {
        let a2 = catalog::adjoint(&[vec![2, -1], vec![-1, 2]]);
        let a = GaloisAction::new(&a2, vec![vec![1, 0]], None).unwrap();
        assert_eq!(a.lattice_matrix(0).to_rows(), vec![vec![0, 1], vec![1, 0]]);
        let autos =
            GaloisAction::cartan_automorphisms(&catalog::adjoint(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]));
        assert_eq!(autos, vec![vec![0, 1, 2], vec![2, 1, 0]]);
    }

    #[test]
    fn orbits_and_stability() {
        let d = BasedRootDatum::gln(5);
        let a = GaloisAction::new(&d, vec![vec![3, 2, 1, 0]], None).unwrap();
        assert_eq!(a.orbits(4), vec![vec![0, 3], vec![1, 2]]);
        assert!(a.is_stable(&ParabolicSubset::new([0, 3])));
        assert!(!a.is_stable(&ParabolicSubset::new([0])));
        assert!(GaloisAction::trivial().is_stable(&ParabolicSubset::new([1])));
    }

    #[test]
    fn from_file_reads_generators() {
        let file: DatumFile = serde_json::from_str(
            r#"{"rank":3,"simple_roots":[[1,-1,0],[0,1,-1]],"simple_coroots":[[1,-1,0],[0,1,-1]],"galois_generators":[[1,0]]}"#,
        )
        .unwrap();
        let d = file.datum().unwrap();
        let a = GaloisAction::from_file(&d, &file).unwrap();
        assert_eq!(a, flip3().1);
    }
}
