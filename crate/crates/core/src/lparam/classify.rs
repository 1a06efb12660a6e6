//! Standard triples and the classification bijection.
//!
//! A standard triple is a sequence of blocks `(m_κ, ᵗφ_κ, β_κ)` with
//! `β_1 > ⋯ > β_{s+1}`: a standard Levi `GL_{m_1}(D) × ⋯`, a tempered
//! parameter on each factor and a regular point `ν = Σ β_κ b_κ`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

use super::{first_irrelevant, multiplicities, new_lparameter, GLnLParameter, LParamError, Segment};

/// Which realization of the bijection: `φ = ᵗφ ⊗ |·|^ν` (quotient) or
/// `φ = ᵗφ ⊗ |·|^{-ν}` (sub).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Quotient,
    Sub,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quotient" => Ok(Mode::Quotient),
            "sub" => Ok(Mode::Sub),
            other => Err(format!("unknown mode `{other}` (expected quotient or sub)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Quotient => "quotient",
            Mode::Sub => "sub",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block {
    pub m: usize,
    pub tempered: Vec<Segment>,
    #[serde(with = "rational::serde_str")]
    pub beta: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GLnStandardTriple {
    pub d: usize,
    pub blocks: Vec<Block>,
}

impl GLnStandardTriple {
    /// Validates and puts each tempered multiset in canonical order.
    pub fn new(d: usize, mut blocks: Vec<Block>) -> Result<Self, LParamError> {
        for b in &mut blocks {
            b.tempered.sort();
        }
        let t = GLnStandardTriple { d, blocks };
        t.validate()?;
        Ok(t)
    }

    /// Strict descent of the betas, tempered blocks of dimension `m·d`
    /// whose segments are each relevant.
    pub fn validate(&self) -> Result<(), LParamError> {
        if self.d == 0 {
            return Err(LParamError::NonPositive("d"));
        }
        if self.blocks.is_empty() {
            return Err(LParamError::EmptyTriple);
        }
        for (index, b) in self.blocks.iter().enumerate() {
            if index > 0 && self.blocks[index - 1].beta <= b.beta {
                return Err(LParamError::BetasNotDescending { index });
            }
            if b.m == 0 {
                return Err(LParamError::NonPositive("m"));
            }
            if b.tempered.iter().any(|s| !s.exponent.is_zero()) {
                return Err(LParamError::BlockNotTempered { index });
            }
            let phi = new_lparameter(b.m * self.d, self.d, b.tempered.clone()).map_err(|e| match e {
                LParamError::DimensionMismatch { n, sum } => {
                    LParamError::BlockDimension { index, got: sum, expected: n }
                }
                other => other,
            })?;
            if let Some(LParamError::NotRelevant { dim, d, .. }) = first_irrelevant(&phi) {
                return Err(LParamError::NotRelevant { index, dim, d });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.d * self.blocks.iter().map(|b| b.m).sum::<usize>()
    }

    pub fn betas(&self) -> Vec<Rational> {
        self.blocks.iter().map(|b| b.beta).collect()
    }

    /// The tempered parameter of the `κ`-th Levi factor `GL_{m_κ}(D)`.
    pub fn block_parameter(&self, k: usize) -> Result<GLnLParameter, LParamError> {
        let b = &self.blocks[k];
        new_lparameter(b.m * self.d, self.d, b.tempered.clone())
    }
}

impl fmt::Display for GLnStandardTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "m={} beta={} :", b.m, b.beta)?;
            for (j, s) in b.tempered.iter().enumerate() {
                write!(f, "{}{s}", if j == 0 { " " } else { " + " })?;
            }
        }
        Ok(())
    }
}

/// Groups segments by exponent. Each group becomes a block whose tempered
/// part has the exponent removed; the block's beta is the exponent
/// (quotient) or its negative (sub), sorted strictly descending.
pub fn classify(phi: &GLnLParameter, mode: Mode) -> Result<GLnStandardTriple, LParamError> {
    if let Some(err) = first_irrelevant(phi) {
        return Err(err);
    }
    // Segments are sorted by exponent descending, so groups are contiguous.
    let mut blocks: Vec<Block> = Vec::new();
    for s in phi.segments() {
        let beta = match mode {
            Mode::Quotient => s.exponent,
            Mode::Sub => negate(s.exponent)?,
        };
        let flat = s.with_exponent(Rational::zero());
        match blocks.last_mut() {
            Some(b) if b.beta == beta => {
                b.m += s.dim();
                b.tempered.push(flat);
            }
            _ => blocks.push(Block { m: s.dim(), tempered: vec![flat], beta }),
        }
    }
    if mode == Mode::Sub {
        blocks.reverse();
    }
    for b in &mut blocks {
        b.m /= phi.d();
        b.tempered.sort();
    }
    Ok(GLnStandardTriple { d: phi.d(), blocks })
}

fn negate(q: Rational) -> Result<Rational, LParamError> {
    if *q.numer() == i64::MIN {
        return Err(LParamError::Overflow);
    }
    Ok(-q)
}

/// Inverse of [`classify`]: shifts each block by `±β` and takes the union.
pub fn assemble(triple: &GLnStandardTriple, mode: Mode) -> Result<GLnLParameter, LParamError> {
    triple.validate()?;
    let mut segments = Vec::new();
    for b in &triple.blocks {
        let shift = match mode {
            Mode::Quotient => b.beta,
            Mode::Sub => negate(b.beta)?,
        };
        for s in &b.tempered {
            segments.push(s.shifted(shift)?);
        }
    }
    new_lparameter(triple.n(), triple.d, segments)
}

/// `C_Ĝ(Im φ) = Π GL_{k_j}` with `k_j` the multiplicities of the distinct
/// segments. Such a group is connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralizerShape {
    /// Sorted descending.
    pub gl_factors: Vec<usize>,
    pub component_group_order: u64,
}

pub fn centralizer_shape(phi: &GLnLParameter) -> CentralizerShape {
    let mut gl_factors: Vec<usize> = multiplicities(phi.segments()).into_values().collect();
    gl_factors.sort_unstable_by(|a, b| b.cmp(a));
    let component_group_order = component_group_order(&gl_factors);
    CentralizerShape { gl_factors, component_group_order }
}

/// `π_0` of a product of general linear groups, modulo the center.
fn component_group_order(_gl_factors: &[usize]) -> u64 {
    1
}

/// Centralizer of the tempered parts inside the Levi of `classify(φ)`,
/// as the product over blocks.
pub fn levi_centralizer_shape(triple: &GLnStandardTriple) -> Result<CentralizerShape, LParamError> {
    let mut gl_factors = Vec::new();
    let mut order = 1u64;
    for k in 0..triple.blocks.len() {
        let shape = centralizer_shape(&triple.block_parameter(k)?);
        gl_factors.extend(shape.gl_factors);
        order *= shape.component_group_order;
    }
    gl_factors.sort_unstable_by(|a, b| b.cmp(a));
    Ok(CentralizerShape { gl_factors, component_group_order: order })
}

/// Compares the component group of `φ` in `G` with that of its tempered
/// parts in the Levi of `classify(φ)`.
pub fn check_prop_7_1(phi: &GLnLParameter) -> Result<bool, LParamError> {
    let triple = classify(phi, Mode::Quotient)?;
    let levi = levi_centralizer_shape(&triple)?;
    Ok(centralizer_shape(phi).component_group_order == levi.component_group_order)
}

/// Block sizes of the standard Levi of `GL_n` containing the triple's
/// Levi, in `GL_n` units (`m_κ·d`), with the block betas.
pub fn levi_of_triple(triple: &GLnStandardTriple) -> (Vec<usize>, Vec<Rational>) {
    let sizes = triple.blocks.iter().map(|b| b.m * triple.d).collect();
    (sizes, triple.betas())
}

#[cfg(test)]
mod tests {
    use super::super::{twist, GaloisTypeLabel};
    use super::*;

    fn seg(k: usize, name: &str, e: Rational) -> Segment {
        Segment::new(k, GaloisTypeLabel::new(name, 1), e)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn t(k: usize, e: Rational) -> Segment {
        seg(k, "triv", e)
    }

    #[test]
    fn tempered_is_a_single_block() {
        let phi = new_lparameter(3, 1, vec![t(1, q(0, 1)), t(2, q(0, 1))]).unwrap();
        let tr = classify(&phi, Mode::Quotient).unwrap();
        assert_eq!(tr.blocks.len(), 1);
        assert_eq!(tr.blocks[0].m, 3);
        assert_eq!(tr.blocks[0].beta, q(0, 1));
        assert_eq!(assemble(&tr, Mode::Quotient).unwrap(), phi);
    }

    #[test]
    fn split_example() {
        let phi = new_lparameter(3, 1, vec![t(1, q(1, 1)), t(2, q(0, 1))]).unwrap();
        let tr = classify(&phi, Mode::Quotient).unwrap();
        assert_eq!(
            tr.blocks,
            vec![
                Block { m: 1, tempered: vec![t(1, q(0, 1))], beta: q(1, 1) },
                Block { m: 2, tempered: vec![t(2, q(0, 1))], beta: q(0, 1) },
            ]
        );
        assert_eq!(assemble(&tr, Mode::Quotient).unwrap(), phi);
        let sub = classify(&phi, Mode::Sub).unwrap();
        assert_eq!(sub.betas(), vec![q(0, 1), q(-1, 1)]);
        assert_eq!(sub.blocks[0].m, 2);
        assert_eq!(assemble(&sub, Mode::Sub).unwrap(), phi);
        assert!(check_prop_7_1(&phi).unwrap());
    }

    #[test]
    fn division_algebra_example() {
        let phi = new_lparameter(4, 2, vec![t(2, q(1, 2)), t(2, q(-1, 2))]).unwrap();
        let tr = classify(&phi, Mode::Quotient).unwrap();
        assert_eq!(
            tr.blocks,
            vec![
                Block { m: 1, tempered: vec![t(2, q(0, 1))], beta: q(1, 2) },
                Block { m: 1, tempered: vec![t(2, q(0, 1))], beta: q(-1, 2) },
            ]
        );
        assert!(check_prop_7_1(&phi).unwrap());
        let bad = new_lparameter(4, 2, vec![t(1, q(0, 1)), t(1, q(0, 1)), t(2, q(1, 1))]).unwrap();
        assert!(matches!(classify(&bad, Mode::Quotient), Err(LParamError::NotRelevant { .. })));
    }

    #[test]
    fn assemble_rejects_bad_triples() {
        let blk = |beta| Block { m: 1, tempered: vec![t(1, q(0, 1))], beta };
        let tr = GLnStandardTriple { d: 1, blocks: vec![blk(q(1, 1)), blk(q(1, 1))] };
        assert_eq!(assemble(&tr, Mode::Quotient).unwrap_err(), LParamError::BetasNotDescending { index: 1 });
        let tr = GLnStandardTriple { d: 1, blocks: vec![Block { m: 1, tempered: vec![t(1, q(1, 2))], beta: q(0, 1) }] };
        assert_eq!(assemble(&tr, Mode::Quotient).unwrap_err(), LParamError::BlockNotTempered { index: 0 });
        let tr = GLnStandardTriple { d: 1, blocks: vec![Block { m: 2, tempered: vec![t(1, q(0, 1))], beta: q(0, 1) }] };
        assert_eq!(
            assemble(&tr, Mode::Quotient).unwrap_err(),
            LParamError::BlockDimension { index: 0, got: 1, expected: 2 }
        );
        let tr = GLnStandardTriple {
            d: 2,
            blocks: vec![Block { m: 1, tempered: vec![t(1, q(0, 1)), t(1, q(0, 1))], beta: q(0, 1) }],
        };
        assert!(matches!(assemble(&tr, Mode::Quotient), Err(LParamError::NotRelevant { .. })));
    }

    #[test]
    fn centralizers() {
        let p = new_lparameter(2, 1, vec![t(1, q(0, 1)), t(1, q(0, 1))]).unwrap();
        assert_eq!(centralizer_shape(&p), CentralizerShape { gl_factors: vec![2], component_group_order: 1 });
        let p = new_lparameter(2, 1, vec![t(1, q(1, 1)), t(1, q(0, 1))]).unwrap();
        assert_eq!(centralizer_shape(&p).gl_factors, vec![1, 1]);
        let tr = classify(&p, Mode::Quotient).unwrap();
        assert_eq!(levi_centralizer_shape(&tr).unwrap(), centralizer_shape(&p));
    }

    #[test]
    fn twist_moves_only_betas() {
        let phi = new_lparameter(5, 1, vec![t(1, q(1, 1)), t(2, q(0, 1)), seg(2, "x", q(0, 1))]).unwrap();
        let a = classify(&phi, Mode::Quotient).unwrap();
        let b = classify(&twist(&phi, q(-7, 3)).unwrap(), Mode::Quotient).unwrap();
        for (x, y) in a.blocks.iter().zip(&b.blocks) {
            assert_eq!((x.m, &x.tempered), (y.m, &y.tempered));
            assert_eq!(x.beta + q(-7, 3), y.beta);
        }
    }

    #[test]
    fn triple_json() {
        let phi = new_lparameter(3, 1, vec![t(1, q(1, 1)), t(2, q(0, 1))]).unwrap();
        let tr = classify(&phi, Mode::Quotient).unwrap();
        let text = serde_json::to_string(&tr).unwrap();
        assert_eq!(
            text,
            r#"{"d":1,"blocks":[{"m":1,"tempered":[[1,"triv",1,"0"]],"beta":"1"},{"m":2,"tempered":[[2,"triv",1,"0"]],"beta":"0"}]}"#
        );
        assert_eq!(serde_json::from_str::<GLnStandardTriple>(&text).unwrap(), tr);
        assert_eq!("sub".parse::<Mode>().unwrap(), Mode::Sub);
        assert!("both".parse::<Mode>().is_err());
    }
}
