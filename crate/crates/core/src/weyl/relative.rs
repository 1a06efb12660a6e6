//! The relative Weyl group `N_W(W_0)^μ / W_0^μ` and relevant cosets.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::matrix::IntMatrix;
use crate::par::{self, Execution};

use super::galois::GaloisAction;
use super::lattice::{invariant_lattice_of_matrices, InvariantLattice};
use super::{ParabolicSubset, WeylCoset, WeylElement, WeylError, WeylGroup};

/// A candidate relative simple reflection `w_0(I_0 ∪ O)·w_0(I_0)` for a
/// μ-orbit `O` of simple roots outside `I_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeReflection {
    pub orbit: Vec<usize>,
    /// Position of the element in the relative group.
    pub element: usize,
}

/// Coset representatives of `N_W(W_0)^μ` modulo `W_0^μ`. Each
/// representative is the minimal-length element of its `W_0`-coset, and the
/// list is in `(length, ShortLex)` order.
#[derive(Debug, Clone)]
pub struct RelativeWeylGroup {
    base: ParabolicSubset,
    reps: Vec<usize>,
    elements: Vec<WeylElement>,
    lattice: InvariantLattice,
    lattice_action: Vec<IntMatrix>,
    reflections: Vec<RelativeReflection>,
    generated_by_reflections: bool,
}

impl RelativeWeylGroup {
    pub fn new(group: &WeylGroup, base: &ParabolicSubset, action: &GaloisAction) -> Result<Self, WeylError> {
        Self::new_with(group, base, action, Execution::default())
    }

    pub fn new_with(
        group: &WeylGroup,
        base: &ParabolicSubset,
        action: &GaloisAction,
        exec: Execution,
    ) -> Result<Self, WeylError> {
        let l = group.num_generators();
        base.validate(l)?;
        if !action.is_stable(base) {
            return Err(WeylError::NotStable(base.indices().to_vec()));
        }
        let normalizer = group.normalizer_indices(base, exec);
        let fixed: Vec<bool> = par::map(exec, &normalizer, |&w| action.fixes(group, w));
        let min_reps: Vec<usize> = par::map(exec, &normalizer, |&w| group.coset_min_rep_idx(w, base));

        // (N/W_0)^μ: cosets whose minimal representative is μ-fixed
        // (μ preserves length and W_0, hence minimal representatives).
        let all_reps: BTreeSet<usize> = min_reps.iter().copied().collect();
        let stable_cosets = all_reps.iter().filter(|&&r| action.fixes(group, r)).count();
        // N^μ / W_0^μ.
        let fixed_normalizer = fixed.iter().filter(|&&f| f).count();
        let fixed_base = normalizer.iter().zip(&fixed).filter(|(&w, &f)| f && group.in_parabolic(w, base)).count();
        let fixed_quotient = fixed_normalizer / fixed_base;
        let reps: BTreeSet<usize> = min_reps.iter().zip(&fixed).filter(|(_, &f)| f).map(|(&r, _)| r).collect();
        if stable_cosets != fixed_quotient || reps.len() != fixed_quotient || fixed_normalizer % fixed_base != 0 {
            return Err(WeylError::RelativeWeylMismatch { stable_cosets, fixed_quotient });
        }
        let reps: Vec<usize> = reps.into_iter().collect();

        let rank = group.datum().rank();
        let base_gens: Vec<IntMatrix> = base.indices().iter().map(|&i| group.generator(i).clone()).collect();
        let lattice = invariant_lattice_of_matrices(rank, &base_gens);
        let lattice_action = reps
            .iter()
            .map(|&r| lattice.restrict(group.element(r).matrix()).expect("normalizer preserves the fixed lattice"))
            .collect();

        let base_longest = group.longest_idx(base);
        let mut reflections = Vec::new();
        for orbit in action.orbits(l) {
            if orbit.iter().any(|&i| base.contains(i)) {
                continue;
            }
            let bigger = base.union(&ParabolicSubset::new(orbit.iter().copied()));
            let r = group.mul_idx(group.longest_idx(&bigger), base_longest);
            if let Ok(pos) = reps.binary_search(&r) {
                reflections.push(RelativeReflection { orbit, element: pos });
            }
        }

        let mut rel = RelativeWeylGroup {
            base: base.clone(),
            elements: reps.iter().map(|&r| group.element(r).clone()).collect(),
            reps,
            lattice,
            lattice_action,
            reflections,
            generated_by_reflections: false,
        };
        let gens: Vec<usize> = rel.reflections.iter().map(|r| r.element).collect();
        rel.generated_by_reflections = rel.closure(group, &gens).len() == rel.order();
        Ok(rel)
    }

    pub fn base(&self) -> &ParabolicSubset {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    /// Index in the ambient [`WeylGroup`] of the `k`-th representative.
    pub fn group_index(&self, k: usize) -> usize {
        self.reps[k]
    }

    /// Position of the coset containing `w` (an ambient index), if that coset
    /// belongs to the relative group.
    pub fn position_of(&self, group: &WeylGroup, w: usize) -> Option<usize> {
        let r = group.coset_min_rep_idx(w, &self.base);
        self.reps.binary_search(&r).ok()
    }

    /// Product of two elements, by position.
    pub fn mul(&self, group: &WeylGroup, a: usize, b: usize) -> usize {
        let p = group.mul_idx(self.reps[a], self.reps[b]);
        self.position_of(group, p).expect("relative Weyl group is closed")
    }

    /// `X*(T)^{W_0}`, on which the group acts.
    pub fn lattice(&self) -> &InvariantLattice {
        &self.lattice
    }

    /// Action of the `k`-th element on [`RelativeWeylGroup::lattice`], in
    /// basis coordinates.
    pub fn lattice_action(&self, k: usize) -> &IntMatrix {
        &self.lattice_action[k]
    }

    pub fn reflections(&self) -> &[RelativeReflection] {
        &self.reflections
    }

    /// Whether the relative simple reflections generate the whole group.
    pub fn generated_by_reflections(&self) -> bool {
        self.generated_by_reflections
    }

    /// Subgroup generated by the given positions, sorted.
    pub fn closure(&self, group: &WeylGroup, gens: &[usize]) -> Vec<usize> {
        let mut seen = HashSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(group, x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }
}

/// Whether `rep·W_I` labels an F-parabolic: `I ⊇ I_0`, `I` is μ-stable, and
/// the coset meets `N_W(W_0)^μ`.
pub fn is_relevant_coset(
    group: &WeylGroup,
    coset: &WeylCoset,
    base: &ParabolicSubset,
    action: &GaloisAction,
) -> Result<bool, WeylError> {
    let l = group.num_generators();
    coset.subset.validate(l)?;
    base.validate(l)?;
    if !coset.subset.is_superset_of(base) || !action.is_stable(&coset.subset) {
        return Ok(false);
    }
    Ok(group.coset_elements(coset)?.into_iter().any(|u| group.normalizes(u, base) && action.fixes(group, u)))
}
