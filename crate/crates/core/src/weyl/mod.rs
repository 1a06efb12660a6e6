//! Weyl groups of based root data, realized as integer matrices on `X*(T)`.
//!
//! Elements carry their ShortLex-minimal word in the simple reflections
//! (0-based generator indices) together with their matrix. Equality is
//! matrix equality. Enumeration is breadth-first from the identity and
//! elements are stored in `(length, ShortLex word)` order, so the index of an
//! element in [`WeylGroup::elements`] is itself a canonical sort key.

pub mod galois;
pub mod lattice;
pub mod relative;

use std::collections::HashMap;
use std::fmt;

use crate::matrix::IntMatrix;
use crate::par::{self, Execution};
use crate::root_datum::BasedRootDatum;

pub use galois::GaloisAction;
pub use lattice::{invariant_lattice, InvariantLattice};
pub use relative::{is_relevant_coset, RelativeWeylGroup};

/// Default cap on enumerated group size.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("simple reflection index {index} out of range (semisimple rank {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("Weyl group exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("matrix is not an element of this Weyl group")]
    NotInGroup,
    #[error("galois generator {index}: {reason}")]
    InvalidAction { index: usize, reason: String },
    #[error("galois generator {index}: no lattice matrix given and none can be derived from the simple roots")]
    ActionBasisUndefined { index: usize },
    #[error("galois word refers to generator {index}, but only {len} exist")]
    UnknownGaloisGenerator { index: usize, len: usize },
    #[error("subset {0:?} is not stable under the galois action")]
    NotStable(Vec<usize>),
    #[error(
        "relative Weyl group descriptions disagree: {stable_cosets} stable cosets vs {fixed_quotient} = |N^mu|/|W0^mu|"
    )]
    RelativeWeylMismatch { stable_cosets: usize, fixed_quotient: usize },
}

/// An element of `W ⊂ Aut(X*(T))`.
#[derive(Clone)]
pub struct WeylElement {
    matrix: IntMatrix,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Canonical ShortLex-minimal reduced word (0-based generator indices).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Product of simple reflections along `word`. The result carries the
    /// given word verbatim; use [`WeylGroup::canonical`] to reduce it.
    pub fn from_word(datum: &BasedRootDatum, word: &[usize]) -> Result<Self, WeylError> {
        let mut m = IntMatrix::identity(datum.rank());
        for &i in word {
            m = &m * &reflection_matrix(datum, i)?;
        }
        Ok(WeylElement { matrix: m, word: word.to_vec() })
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            let parts: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// A set of simple-root indices `I ⊆ {0..l}`, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicSubset(Vec<usize>);

impl ParabolicSubset {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ParabolicSubset(v)
    }

    pub fn empty() -> Self {
        ParabolicSubset(Vec::new())
    }

    pub fn full(l: usize) -> Self {
        ParabolicSubset((0..l).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_superset_of(&self, other: &ParabolicSubset) -> bool {
        other.0.iter().all(|&i| self.contains(i))
    }

    pub fn union(&self, other: &ParabolicSubset) -> ParabolicSubset {
        ParabolicSubset::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn validate(&self, l: usize) -> Result<(), WeylError> {
        match self.0.iter().find(|&&i| i >= l) {
            Some(&index) => Err(WeylError::IndexOutOfRange { index, len: l }),
            None => Ok(()),
        }
    }

    /// Subset of `{0..n-2}` whose standard Levi in `GL_n` has the given
    /// block sizes (in order).
    pub fn from_blocks(sizes: &[usize]) -> ParabolicSubset {
        let mut out = Vec::new();
        let mut start = 0;
        for &m in sizes {
            out.extend(start..start + m.saturating_sub(1));
            start += m;
        }
        ParabolicSubset(out)
    }

    /// Inverse of [`ParabolicSubset::from_blocks`] for `GL_n`.
    pub fn blocks(&self, n: usize) -> Vec<usize> {
        let mut sizes = Vec::new();
        let mut cur = 1;
        for i in 0..n.saturating_sub(1) {
            if self.contains(i) {
                cur += 1;
            } else {
                sizes.push(cur);
                cur = 1;
            }
        }
        sizes.push(cur);
        sizes
    }
}

/// The coset `rep·W_I`, identified by its minimal-length representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylCoset {
    pub rep: WeylElement,
    pub subset: ParabolicSubset,
}

/// Matrix of `x ↦ x - <x, α_i∨> α_i`.
pub fn reflection_matrix(datum: &BasedRootDatum, i: usize) -> Result<IntMatrix, WeylError> {
    let l = datum.semisimple_rank();
    if i >= l {
        return Err(WeylError::IndexOutOfRange { index: i, len: l });
    }
    let n = datum.rank();
    let root = datum.simple_root(i);
    let coroot = datum.simple_coroot(i);
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, m.get(r, c) - root[r] * coroot[c]);
        }
    }
    Ok(m)
}

pub fn simple_reflection(datum: &BasedRootDatum, i: usize) -> Result<WeylElement, WeylError> {
    Ok(WeylElement { matrix: reflection_matrix(datum, i)?, word: vec![i] })
}

/// `w ↦ ŵ = ᵗw⁻¹`, landing in the Weyl group of the dual datum. The word is
/// unchanged because `ŝ_i` is the `i`-th simple reflection of the dual.
pub fn weyl_dual_iso(w: &WeylElement, datum: &BasedRootDatum) -> WeylElement {
    let mut inv = IntMatrix::identity(datum.rank());
    for &i in w.word.iter().rev() {
        inv = &inv * &reflection_matrix(datum, i).expect("word letters index simple roots");
    }
    WeylElement { matrix: inv.transpose(), word: w.word.clone() }
}

#[derive(Debug, Clone, Copy)]
pub struct GenerateOptions {
    pub cap: usize,
    pub execution: Execution,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { cap: DEFAULT_GROUP_CAP, execution: Execution::default() }
    }
}

/// The full finite Weyl group of a datum.
#[derive(Clone)]
pub struct WeylGroup {
    datum: BasedRootDatum,
    generators: Vec<IntMatrix>,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup").field("rank", &self.datum.rank()).field("order", &self.elements.len()).finish()
    }
}

impl WeylGroup {
    pub fn generate(datum: &BasedRootDatum) -> Result<Self, WeylError> {
        Self::generate_with(datum, GenerateOptions::default())
    }

    /// Breadth-first closure. Each layer's products are computed with the
    /// requested execution strategy, then merged in a fixed order so that
    /// the element list is identical for every schedule.
    pub fn generate_with(datum: &BasedRootDatum, opts: GenerateOptions) -> Result<Self, WeylError> {
        let generators: Vec<IntMatrix> =
            (0..datum.semisimple_rank()).map(|i| reflection_matrix(datum, i)).collect::<Result<_, _>>()?;
        let id = IntMatrix::identity(datum.rank());
        let mut elements = vec![WeylElement { matrix: id.clone(), word: Vec::new() }];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            // Entries of a finite Weyl group stay tiny; overflow means the
            // group is infinite.
            let products: Vec<Option<Vec<IntMatrix>>> = par::map(opts.execution, &layer, |&idx| {
                generators.iter().map(|g| elements[idx].matrix.checked_mul(g)).collect()
            });
            let products: Vec<Vec<IntMatrix>> =
                products.into_iter().collect::<Option<_>>().ok_or(WeylError::GroupTooLarge { cap: opts.cap })?;
            let mut next = Vec::new();
            for (&idx, prods) in layer.iter().zip(products) {
                for (g, m) in prods.into_iter().enumerate() {
                    if index.contains_key(&m) {
                        continue;
                    }
                    let mut word = elements[idx].word.clone();
                    word.push(g);
                    let new_idx = elements.len();
                    index.insert(m.clone(), new_idx);
                    elements.push(WeylElement { matrix: m, word });
                    next.push(new_idx);
                    if elements.len() > opts.cap {
                        return Err(WeylError::GroupTooLarge { cap: opts.cap });
                    }
                }
            }
            layer = next;
        }
        Ok(WeylGroup { datum: datum.clone(), generators, elements, index })
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn generator(&self, i: usize) -> &IntMatrix {
        &self.generators[i]
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Canonical element with the given matrix.
    pub fn canonical(&self, m: &IntMatrix) -> Result<&WeylElement, WeylError> {
        self.index_of(m).map(|i| &self.elements[i]).ok_or(WeylError::NotInGroup)
    }

    pub fn position(&self, w: &WeylElement) -> Result<usize, WeylError> {
        self.index_of(&w.matrix).ok_or(WeylError::NotInGroup)
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        let m = &self.elements[a].matrix * &self.elements[b].matrix;
        self.index[&m]
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        let mut m = IntMatrix::identity(self.datum.rank());
        for &i in self.elements[a].word.iter().rev() {
            m = &m * &self.generators[i];
        }
        self.index[&m]
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> Result<&WeylElement, WeylError> {
        self.canonical(&(&a.matrix * &b.matrix))
    }

    pub fn inverse(&self, a: &WeylElement) -> Result<&WeylElement, WeylError> {
        let idx = self.position(a)?;
        Ok(&self.elements[self.inv_idx(idx)])
    }

    /// Whether `w ∈ W_I`. In a Coxeter group every reduced word of an element
    /// of `W_I` uses only letters from `I`, so the canonical word decides it.
    pub fn in_parabolic(&self, idx: usize, subset: &ParabolicSubset) -> bool {
        self.elements[idx].word.iter().all(|&i| subset.contains(i))
    }

    pub fn parabolic_indices(&self, subset: &ParabolicSubset) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.in_parabolic(i, subset)).collect()
    }

    /// `W_I`, in canonical order.
    pub fn parabolic_subgroup(&self, subset: &ParabolicSubset) -> Vec<WeylElement> {
        self.parabolic_indices(subset).into_iter().map(|i| self.elements[i].clone()).collect()
    }

    /// Longest element of `W_I`.
    pub fn longest_idx(&self, subset: &ParabolicSubset) -> usize {
        (0..self.order())
            .rev()
            .find(|&i| self.in_parabolic(i, subset))
            .expect("identity lies in every parabolic subgroup")
    }

    /// Minimal-length representative of `w·W_I`, reached by right-descent
    /// reduction: while some `s_i` (`i ∈ I`) shortens `w`, replace `w` by
    /// `w·s_i`.
    pub fn coset_min_rep_idx(&self, w: usize, subset: &ParabolicSubset) -> usize {
        let mut cur = w;
        'outer: loop {
            for &i in subset.indices() {
                let m = &self.elements[cur].matrix * &self.generators[i];
                let cand = self.index[&m];
                if self.elements[cand].length() < self.elements[cur].length() {
                    cur = cand;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    pub fn coset_min_rep(&self, w: &WeylElement, subset: &ParabolicSubset) -> Result<WeylCoset, WeylError> {
        subset.validate(self.num_generators())?;
        let idx = self.coset_min_rep_idx(self.position(w)?, subset);
        Ok(WeylCoset { rep: self.elements[idx].clone(), subset: subset.clone() })
    }

    /// All elements of `rep·W_I`, as indices.
    pub fn coset_elements(&self, coset: &WeylCoset) -> Result<Vec<usize>, WeylError> {
        let r = self.position(&coset.rep)?;
        let mut out: Vec<usize> =
            self.parabolic_indices(&coset.subset).into_iter().map(|u| self.mul_idx(r, u)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `W(T, M) = rep·W_I·rep⁻¹` for the Levi attached to the coset.
    pub fn levi_of_coset(&self, coset: &WeylCoset) -> Result<Vec<WeylElement>, WeylError> {
        let r = self.position(&coset.rep)?;
        let rinv = self.inv_idx(r);
        let mut out: Vec<usize> =
            self.parabolic_indices(&coset.subset).into_iter().map(|u| self.mul_idx(self.mul_idx(r, u), rinv)).collect();
        out.sort_unstable();
        Ok(out.into_iter().map(|i| self.elements[i].clone()).collect())
    }

    /// Whether `w` normalizes `W_I`; checking the generators of `W_I` suffices.
    pub fn normalizes(&self, w: usize, subset: &ParabolicSubset) -> bool {
        let winv = &self.elements[self.inv_idx(w)].matrix;
        subset.indices().iter().all(|&i| {
            let conj = &(&self.elements[w].matrix * &self.generators[i]) * winv;
            self.index_of(&conj).is_some_and(|c| self.in_parabolic(c, subset))
        })
    }

    /// `N_W(W_I)`, ascending indices.
    pub fn normalizer_indices(&self, subset: &ParabolicSubset, exec: Execution) -> Vec<usize> {
        par::filter_range(exec, self.order(), |w| self.normalizes(w, subset))
    }
}

/// Inclusion of element sets, e.g. `W(M_1) ⊆ W(M_2)`.
pub fn is_subgroup_of(a: &[WeylElement], b: &[WeylElement]) -> bool {
    let set: std::collections::HashSet<&IntMatrix> = b.iter().map(|w| &w.matrix).collect();
    a.iter().all(|w| set.contains(&w.matrix))
}
