//! The real spaces `a*_M = R ⊗ X*(M)`, realized over the rationals.
//!
//! A standard Levi `M` is given by a subset `I` of simple roots. Its
//! character lattice is identified with the fixed lattice `X*(T)^{W_I}`, and
//! points `ν ∈ a*_M` are stored in ambient `X*(T) ⊗ Q` coordinates. The
//! pairing is a Weyl-invariant positive definite form (the Gram matrix).
//!
//! Regularity, dominance and the maximal Levi of a point are all exact sign
//! tests on pairings with the projected simple roots outside `I`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::{dot, to_rational_vec, IntMatrix, QMatrix};
use crate::par::{self, Execution};
use crate::rational::{self, Rational};
use crate::root_datum::BasedRootDatum;
use crate::weyl::{
    invariant_lattice, GaloisAction, InvariantLattice, ParabolicSubset, RelativeWeylGroup, WeylElement, WeylError,
    WeylGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChamberError {
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("nu does not lie in a*_M for the Levi with simple roots {0:?}")]
    NuOutsideSpace(Vec<usize>),
    #[error("nu pairs negatively with the projected simple root {index}")]
    NotDominant { index: usize },
    #[error("zero pairings cut the galois orbit {0:?}")]
    PartialOrbit(Vec<usize>),
    #[error("invalid gram matrix: {0}")]
    InvalidGram(String),
    #[error("no element of the relative Weyl group makes nu dominant")]
    NoDominantConjugate,
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A point of `a*_M` in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NuVector(#[serde(with = "rational::serde_vec")] Vec<Rational>);

impl NuVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        NuVector(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        NuVector(to_rational_vec(coords))
    }

    pub fn zero(rank: usize) -> Self {
        NuVector(vec![Rational::zero(); rank])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transform(&self, w: &IntMatrix) -> NuVector {
        NuVector(w.mul_rational_vec(&self.0))
    }
}

/// `q` raised to a rational cocharacter, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HyperbolicElement(#[serde(with = "rational::serde_vec")] Vec<Rational>);

impl HyperbolicElement {
    pub fn new(exponents: Vec<Rational>) -> Self {
        HyperbolicElement(exponents)
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.0
    }

    /// `z = 1`.
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn inverse(&self) -> HyperbolicElement {
        HyperbolicElement(self.0.iter().map(|e| -e).collect())
    }

    pub fn product(&self, other: &HyperbolicElement) -> HyperbolicElement {
        HyperbolicElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exponents sorted descending: the diagonal form of the element up to
    /// conjugation in `GL_n`.
    pub fn sorted_descending(&self) -> HyperbolicElement {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        HyperbolicElement(v)
    }
}

/// Orthogonal projection of the simple root `index` onto `a*_M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedRoot {
    pub index: usize,
    pub vector: Vec<Rational>,
}

/// `a*_M` for the standard Levi of `subset`, with its Gram matrix.
#[derive(Debug, Clone)]
pub struct AStarSpace {
    datum: BasedRootDatum,
    subset: ParabolicSubset,
    lattice: InvariantLattice,
    gram: QMatrix,
    projected: Vec<ProjectedRoot>,
}

impl AStarSpace {
    /// Uses the default Gram matrix: the identity when the datum has a
    /// standard basis, otherwise the Weyl average of the identity form.
    pub fn new(datum: &BasedRootDatum, subset: &ParabolicSubset) -> Result<Self, ChamberError> {
        Self::with_gram(datum, subset, default_gram(datum)?)
    }

    /// The Gram matrix must be symmetric, positive definite and invariant
    /// under every simple reflection.
    pub fn with_gram(datum: &BasedRootDatum, subset: &ParabolicSubset, gram: QMatrix) -> Result<Self, ChamberError> {
        subset.validate(datum.semisimple_rank())?;
        check_gram(datum, &gram)?;
        let n = datum.rank();
        let gens: Vec<WeylElement> =
            subset.indices().iter().map(|&i| crate::weyl::simple_reflection(datum, i)).collect::<Result<_, _>>()?;
        let lattice = invariant_lattice(n, &gens);
        let basis = lattice.rational_basis();
        // Normal equations (Bᵗ G B) c = Bᵗ G α for the projection B·c.
        let normal = QMatrix::from_rows(
            &basis.iter().map(|bi| basis.iter().map(|bj| gram.bilinear(bi, bj)).collect()).collect::<Vec<_>>(),
        );
        let normal_inv = normal.inverse();
        let projected = (0..datum.semisimple_rank())
            .filter(|&j| !subset.contains(j))
            .map(|j| {
                let alpha = to_rational_vec(datum.simple_root(j));
                let rhs: Vec<Rational> = basis.iter().map(|b| gram.bilinear(b, &alpha)).collect();
                let coeffs = normal_inv.as_ref().expect("basis of a*_M is independent").mul_vec(&rhs);
                let mut v = vec![Rational::zero(); n];
                for (c, b) in coeffs.iter().zip(&basis) {
                    for (vk, bk) in v.iter_mut().zip(b) {
                        *vk += c * bk;
                    }
                }
                ProjectedRoot { index: j, vector: v }
            })
            .collect();
        Ok(AStarSpace { datum: datum.clone(), subset: subset.clone(), lattice, gram, projected })
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn subset(&self) -> &ParabolicSubset {
        &self.subset
    }

    /// `X*(M)`, as the fixed lattice of `W_I`.
    pub fn lattice(&self) -> &InvariantLattice {
        &self.lattice
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn dimension(&self) -> usize {
        self.lattice.rank()
    }

    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.gram.bilinear(x, y)
    }

    /// `Δ(P)`: projections of the simple roots outside `I`, in index order.
    pub fn projected_simple_roots(&self) -> &[ProjectedRoot] {
        &self.projected
    }

    /// Whether `ν` is fixed by `W_I`, i.e. `<ν, α_i∨> = 0` for `i ∈ I`.
    pub fn contains(&self, nu: &NuVector) -> bool {
        nu.len() == self.datum.rank()
            && self
                .subset
                .indices()
                .iter()
                .all(|&i| dot(nu.coords(), &to_rational_vec(self.datum.simple_coroot(i))).is_zero())
    }

    fn check(&self, nu: &NuVector) -> Result<(), ChamberError> {
        if nu.len() != self.datum.rank() {
            return Err(ChamberError::DimensionMismatch { got: nu.len(), expected: self.datum.rank() });
        }
        if !self.contains(nu) {
            return Err(ChamberError::NuOutsideSpace(self.subset.indices().to_vec()));
        }
        Ok(())
    }

    /// `Σ c_k b_k` for the Hermite basis `b_k` of `X*(M)`.
    pub fn nu_from_coefficients(&self, coeffs: &[Rational]) -> Result<NuVector, ChamberError> {
        if coeffs.len() != self.dimension() {
            return Err(ChamberError::DimensionMismatch { got: coeffs.len(), expected: self.dimension() });
        }
        let mut v = vec![Rational::zero(); self.datum.rank()];
        for (c, b) in coeffs.iter().zip(self.lattice.basis()) {
            for (vk, &bk) in v.iter_mut().zip(b) {
                *vk += c * bk;
            }
        }
        Ok(NuVector(v))
    }

    /// Coefficients of `ν` in the Hermite basis of `X*(M)`.
    pub fn coefficients(&self, nu: &NuVector) -> Result<Vec<Rational>, ChamberError> {
        self.check(nu)?;
        self.lattice
            .rational_coordinates(nu.coords())
            .ok_or_else(|| ChamberError::NuOutsideSpace(self.subset.indices().to_vec()))
    }

    /// Pairings `<ν, ᾱ>` with every projected simple root, in order.
    pub fn pairings(&self, nu: &NuVector) -> Result<Vec<Rational>, ChamberError> {
        self.check(nu)?;
        Ok(self.projected.iter().map(|p| self.pairing(nu.coords(), &p.vector)).collect())
    }

    /// Strictly positive pairing with every projected simple root.
    pub fn is_regular(&self, nu: &NuVector) -> Result<bool, ChamberError> {
        Ok(self.pairings(nu)?.iter().all(Signed::is_positive))
    }

    pub fn is_dominant(&self, nu: &NuVector) -> Result<bool, ChamberError> {
        Ok(self.pairings(nu)?.iter().all(|p| !p.is_negative()))
    }

    /// `ν ↦ z(ν)`: the coordinates of `ν`, read as a rational cocharacter of
    /// the connected center of the dual Levi.
    pub fn z_of_nu(&self, nu: &NuVector) -> Result<HyperbolicElement, ChamberError> {
        self.check(nu)?;
        Ok(HyperbolicElement(nu.coords().to_vec()))
    }

    /// Whether `r` acts on `a*_M` as the orthogonal reflection in `alpha`.
    fn is_reflection_in(&self, r: &IntMatrix, alpha: &[Rational]) -> bool {
        let aa = self.pairing(alpha, alpha);
        if aa.is_zero() {
            return false;
        }
        self.lattice.rational_basis().iter().all(|b| {
            let c = self.pairing(b, alpha) * Rational::from_integer(2) / aa;
            let expect: Vec<Rational> = b.iter().zip(alpha).map(|(x, a)| x - c * a).collect();
            r.mul_rational_vec(b) == expect
        })
    }
}

/// Identity on a standard basis, otherwise `(1/|W|) Σ ᵗw·w`.
pub fn default_gram(datum: &BasedRootDatum) -> Result<QMatrix, ChamberError> {
    let n = datum.rank();
    if datum.has_standard_basis() {
        return Ok(QMatrix::identity(n));
    }
    let group = WeylGroup::generate(datum)?;
    let mut sum = IntMatrix::zeros(n, n);
    for w in group.elements() {
        let m = &w.matrix().transpose() * w.matrix();
        for i in 0..n {
            for j in 0..n {
                sum.set(i, j, sum.get(i, j) + m.get(i, j));
            }
        }
    }
    let order = Rational::from_integer(group.order() as i64);
    let rows: Vec<Vec<Rational>> =
        sum.to_rows().into_iter().map(|r| r.into_iter().map(|x| Rational::from_integer(x) / order).collect()).collect();
    Ok(QMatrix::from_rows(&rows))
}

fn check_gram(datum: &BasedRootDatum, gram: &QMatrix) -> Result<(), ChamberError> {
    let n = datum.rank();
    if gram.rows() != n || gram.cols() != n {
        return Err(ChamberError::InvalidGram(format!("expected {n}x{n}")));
    }
    if !gram.is_positive_definite() {
        return Err(ChamberError::InvalidGram("not symmetric positive definite".into()));
    }
    for i in 0..datum.semisimple_rank() {
        let s = crate::weyl::reflection_matrix(datum, i)?.to_rational();
        if &(&s.transpose() * gram) * &s != *gram {
            return Err(ChamberError::InvalidGram(format!("not invariant under s_{i}")));
        }
    }
    Ok(())
}

/// Moves `ν ∈ a*_{M_0}` into the closed dominant chamber with an element of
/// the relative Weyl group. Among all elements reaching the dominant point,
/// the one of minimal `(length, ShortLex)` is returned.
pub fn dominant_conjugate(
    nu: &NuVector,
    group: &WeylGroup,
    rel: &RelativeWeylGroup,
    space0: &AStarSpace,
) -> Result<(WeylElement, NuVector), ChamberError> {
    dominant_conjugate_with(nu, group, rel, space0, Execution::default())
}

pub fn dominant_conjugate_with(
    nu: &NuVector,
    group: &WeylGroup,
    rel: &RelativeWeylGroup,
    space0: &AStarSpace,
    exec: Execution,
) -> Result<(WeylElement, NuVector), ChamberError> {
    space0.check(nu)?;
    if let Some(found) = descend(nu, group, rel, space0) {
        return Ok(found);
    }
    // Exhaustive search in canonical order: the first hit is minimal.
    let hit = par::find_first(exec, rel.order(), |k| {
        let moved = nu.transform(rel.elements()[k].matrix());
        space0.is_dominant(&moved).unwrap_or(false)
    })
    .ok_or(ChamberError::NoDominantConjugate)?;
    let w = rel.elements()[hit].clone();
    let moved = nu.transform(w.matrix());
    Ok((w, moved))
}

/// Reflection descent, valid when the relative simple reflections generate
/// the group and act as orthogonal reflections in the projected roots.
fn descend(
    nu: &NuVector,
    group: &WeylGroup,
    rel: &RelativeWeylGroup,
    space0: &AStarSpace,
) -> Option<(WeylElement, NuVector)> {
    if !rel.generated_by_reflections() {
        return None;
    }
    let walls: Vec<(usize, &[Rational])> = rel
        .reflections()
        .iter()
        .map(|r| {
            let root = space0.projected.iter().find(|p| p.index == r.orbit[0])?;
            space0
                .is_reflection_in(rel.elements()[r.element].matrix(), &root.vector)
                .then_some((r.element, root.vector.as_slice()))
        })
        .collect::<Option<_>>()?;
    let mut cur = nu.clone();
    let mut w = 0usize;
    // Each step strictly decreases the length of w⁻¹ in a reflection group;
    // the bound only guards against inconsistent input.
    for _ in 0..=group.order() {
        let Some(&(r, _)) = walls.iter().find(|(_, alpha)| space0.pairing(cur.coords(), alpha).is_negative()) else {
            break;
        };
        cur = cur.transform(rel.elements()[r].matrix());
        w = rel.mul(group, r, w);
    }
    if !space0.is_dominant(&cur).ok()? {
        return None;
    }
    let zero_walls: Vec<usize> =
        walls.iter().filter(|(_, alpha)| space0.pairing(cur.coords(), alpha).is_zero()).map(|&(r, _)| r).collect();
    let best = rel.closure(group, &zero_walls).into_iter().map(|s| rel.mul(group, s, w)).min()?;
    let elem = rel.elements()[best].clone();
    debug_assert_eq!(nu.transform(elem.matrix()), cur);
    Some((elem, cur))
}

/// `I(ν) = I_0 ∪ {j : <ν, ᾱ_j> = 0}` for dominant `ν`. The set added must be
/// a union of galois orbits.
pub fn maximal_levi_of(
    nu: &NuVector,
    space0: &AStarSpace,
    action: &GaloisAction,
) -> Result<ParabolicSubset, ChamberError> {
    let pairings = space0.pairings(nu)?;
    let mut zeros = Vec::new();
    for (p, root) in pairings.iter().zip(&space0.projected) {
        if p.is_negative() {
            return Err(ChamberError::NotDominant { index: root.index });
        }
        if p.is_zero() {
            zeros.push(root.index);
        }
    }
    let zeros = ParabolicSubset::new(zeros);
    for orbit in action.orbits(space0.datum.semisimple_rank()) {
        let hit = orbit.iter().filter(|&&j| zeros.contains(j)).count();
        if hit != 0 && hit != orbit.len() {
            return Err(ChamberError::PartialOrbit(orbit));
        }
    }
    Ok(space0.subset.union(&zeros))
}
