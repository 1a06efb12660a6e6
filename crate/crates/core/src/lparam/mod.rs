//! L-parameters of `GL_n(F)` and its inner forms `GL_m(D)` as multisegments.
//!
//! A parameter is a multiset of segments `r_k ⊗ ρ ⊗ |·|^e`: an irreducible
//! `SL_2` representation of dimension `k`, an opaque unitary Galois-type
//! label `ρ` with its dimension, and a real exponent `e`. `d` is the index of
//! the division algebra (`d = 1` for the split group).

mod classify;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{CheckedAdd, CheckedSub, Zero};
use serde::{Deserialize, Serialize};

use crate::chamber::HyperbolicElement;
use crate::rational::{format_rational, parse_rational, Rational};

pub use classify::{
    assemble, centralizer_shape, check_prop_7_1, classify, levi_centralizer_shape, levi_of_triple, Block,
    CentralizerShape, GLnStandardTriple, Mode,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LParamError {
    #[error("segment dimensions sum to {sum}, expected n = {n}")]
    DimensionMismatch { n: usize, sum: usize },
    #[error("parameter has no segments")]
    EmptyParameter,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("segment {index} has dimension {dim}, not divisible by d = {d}")]
    NotRelevant { index: usize, dim: usize, d: usize },
    #[error("block exponents are not strictly descending at block {index}")]
    BetasNotDescending { index: usize },
    #[error("block {index} contains a segment with nonzero exponent")]
    BlockNotTempered { index: usize },
    #[error("block {index} has dimension {got}, expected m*d = {expected}")]
    BlockDimension { index: usize, got: usize, expected: usize },
    #[error("standard triple has no blocks")]
    EmptyTriple,
    #[error("parameters live on different groups: (n, d) = ({n1}, {d1}) vs ({n2}, {d2})")]
    GroupMismatch { n1: usize, d1: usize, n2: usize, d2: usize },
    #[error("rational overflow")]
    Overflow,
}

/// An opaque unitary representation of the Weil group, known by name and
/// dimension only.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaloisTypeLabel {
    pub name: String,
    pub dim: usize,
}

impl GaloisTypeLabel {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        GaloisTypeLabel { name: name.into(), dim }
    }

    pub fn trivial() -> Self {
        Self::new("triv", 1)
    }
}

impl fmt::Display for GaloisTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 1 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}({})", self.name, self.dim)
        }
    }
}

/// `r_{sl2_dim} ⊗ rho ⊗ |·|^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SegmentRepr", try_from = "SegmentRepr")]
pub struct Segment {
    pub sl2_dim: usize,
    pub rho: GaloisTypeLabel,
    pub exponent: Rational,
}

/// JSON form `[sl2_dim, name, dim, "exponent"]`.
#[derive(Serialize, Deserialize)]
struct SegmentRepr(usize, String, usize, String);

impl From<Segment> for SegmentRepr {
    fn from(s: Segment) -> Self {
        SegmentRepr(s.sl2_dim, s.rho.name, s.rho.dim, format_rational(&s.exponent))
    }
}

impl TryFrom<SegmentRepr> for Segment {
    type Error = String;

    fn try_from(r: SegmentRepr) -> Result<Self, String> {
        let exponent = parse_rational(&r.3).map_err(|e| e.to_string())?;
        if r.0 == 0 || r.2 == 0 {
            return Err("segment dimensions must be positive".into());
        }
        Ok(Segment { sl2_dim: r.0, rho: GaloisTypeLabel::new(r.1, r.2), exponent })
    }
}

impl Segment {
    pub fn new(sl2_dim: usize, rho: GaloisTypeLabel, exponent: Rational) -> Self {
        Segment { sl2_dim, rho, exponent }
    }

    /// `sl2_dim · dim ρ`.
    pub fn dim(&self) -> usize {
        self.sl2_dim * self.rho.dim
    }

    pub fn with_exponent(&self, exponent: Rational) -> Segment {
        Segment { exponent, ..self.clone() }
    }

    fn shifted(&self, by: Rational) -> Result<Segment, LParamError> {
        let e = self.exponent.checked_add(&by).ok_or(LParamError::Overflow)?;
        Ok(self.with_exponent(e))
    }

    fn check(&self) -> Result<(), LParamError> {
        if self.sl2_dim == 0 {
            return Err(LParamError::NonPositive("sl2_dim"));
        }
        if self.rho.dim == 0 {
            return Err(LParamError::NonPositive("rho dimension"));
        }
        Ok(())
    }
}

/// Canonical order: exponent descending, then `ρ` name, `ρ` dimension and
/// `SL_2` dimension ascending.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .exponent
            .cmp(&self.exponent)
            .then_with(|| self.rho.name.cmp(&other.rho.name))
            .then_with(|| self.rho.dim.cmp(&other.rho.dim))
            .then_with(|| self.sl2_dim.cmp(&other.sl2_dim))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{};{}]", self.sl2_dim, self.rho, self.exponent)
    }
}

/// A validated parameter with segments in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ParameterRepr", into = "ParameterRepr")]
pub struct GLnLParameter {
    n: usize,
    d: usize,
    segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParameterRepr {
    n: usize,
    d: usize,
    segments: Vec<Segment>,
}

impl From<GLnLParameter> for ParameterRepr {
    fn from(p: GLnLParameter) -> Self {
        ParameterRepr { n: p.n, d: p.d, segments: p.segments }
    }
}

impl TryFrom<ParameterRepr> for GLnLParameter {
    type Error = LParamError;

    fn try_from(r: ParameterRepr) -> Result<Self, LParamError> {
        new_lparameter(r.n, r.d, r.segments)
    }
}

/// Validates `Σ sl2_dim·dim ρ = n` and sorts the segments. Relevance for
/// `d > 1` is a separate check.
pub fn new_lparameter(n: usize, d: usize, mut segments: Vec<Segment>) -> Result<GLnLParameter, LParamError> {
    if n == 0 {
        return Err(LParamError::NonPositive("n"));
    }
    if d == 0 {
        return Err(LParamError::NonPositive("d"));
    }
    if segments.is_empty() {
        return Err(LParamError::EmptyParameter);
    }
    for s in &segments {
        s.check()?;
    }
    let sum = segments
        .iter()
        .try_fold(0usize, |acc, s| s.sl2_dim.checked_mul(s.rho.dim).and_then(|x| acc.checked_add(x)))
        .unwrap_or(usize::MAX);
    if sum != n {
        return Err(LParamError::DimensionMismatch { n, sum });
    }
    segments.sort();
    Ok(GLnLParameter { n, d, segments })
}

impl GLnLParameter {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }
}

impl fmt::Display for GLnLParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Every exponent is zero.
pub fn is_tempered(phi: &GLnLParameter) -> bool {
    phi.segments.iter().all(|s| s.exponent.is_zero())
}

/// Each exponent with multiplicity `sl2_dim·dim ρ`, sorted descending.
pub fn z_of(phi: &GLnLParameter) -> HyperbolicElement {
    let exps = phi.segments.iter().flat_map(|s| std::iter::repeat_n(s.exponent, s.dim())).collect();
    HyperbolicElement::new(exps).sorted_descending()
}

/// `e + (k-1)/2 - j` for `j < k`, each with multiplicity `dim ρ`, sorted
/// descending.
pub fn z_star_of(phi: &GLnLParameter) -> Result<HyperbolicElement, LParamError> {
    let mut exps = Vec::with_capacity(phi.n);
    for s in &phi.segments {
        let top = s.exponent.checked_add(&Rational::new(s.sl2_dim as i64 - 1, 2)).ok_or(LParamError::Overflow)?;
        for j in 0..s.sl2_dim {
            let e = top.checked_sub(&Rational::from_integer(j as i64)).ok_or(LParamError::Overflow)?;
            exps.extend(std::iter::repeat_n(e, s.rho.dim));
        }
    }
    Ok(HyperbolicElement::new(exps).sorted_descending())
}

/// Central twist by `|det|^beta`: every exponent shifts by `beta`.
pub fn twist(phi: &GLnLParameter, beta: Rational) -> Result<GLnLParameter, LParamError> {
    let segments = phi.segments.iter().map(|s| s.shifted(beta)).collect::<Result<_, _>>()?;
    Ok(GLnLParameter { n: phi.n, d: phi.d, segments })
}

/// `d` divides `sl2_dim·dim ρ` for every segment.
pub fn is_relevant(phi: &GLnLParameter) -> bool {
    first_irrelevant(phi).is_none()
}

pub(crate) fn first_irrelevant(phi: &GLnLParameter) -> Option<LParamError> {
    phi.segments.iter().position(|s| s.dim() % phi.d != 0).map(|index| LParamError::NotRelevant {
        index,
        dim: phi.segments[index].dim(),
        d: phi.d,
    })
}

/// Conjugacy of parameters: equality of segment multisets.
pub fn equivalent(a: &GLnLParameter, b: &GLnLParameter) -> Result<bool, LParamError> {
    if a.n != b.n || a.d != b.d {
        return Err(LParamError::GroupMismatch { n1: a.n, d1: a.d, n2: b.n, d2: b.d });
    }
    Ok(a.segments == b.segments)
}

/// Multiplicity of each distinct segment.
pub(crate) fn multiplicities(segments: &[Segment]) -> BTreeMap<&Segment, usize> {
    let mut out = BTreeMap::new();
    for s in segments {
        *out.entry(s).or_insert(0) += 1;
    }
    out
}
