//! One error type for every fallible operation of the library.

use crate::chamber::ChamberError;
use crate::lparam::LParamError;
use crate::root_datum::DatumError;
use crate::weyl::WeylError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Chamber(#[from] ChamberError),
    #[error(transparent)]
    LParam(#[from] LParamError),
}

impl Error {
    /// Stable machine-readable name of the failure.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Datum(e) => datum_code(e),
            Error::Weyl(e) => weyl_code(e),
            Error::Chamber(ChamberError::Weyl(e)) => weyl_code(e),
            Error::Chamber(e) => match e {
                ChamberError::DimensionMismatch { .. } => "DimensionMismatch",
                ChamberError::NuOutsideSpace(_) => "NuOutsideSpace",
                ChamberError::NotDominant { .. } => "NotDominant",
                ChamberError::PartialOrbit(_) => "PartialOrbit",
                ChamberError::InvalidGram(_) => "InvalidGram",
                ChamberError::NoDominantConjugate => "NoDominantConjugate",
                ChamberError::Weyl(_) => unreachable!(),
            },
            Error::LParam(e) => match e {
                LParamError::DimensionMismatch { .. } => "DimensionMismatch",
                LParamError::EmptyParameter => "EmptyParameter",
                LParamError::NonPositive(_) => "NonPositive",
                LParamError::NotRelevant { .. } => "NotRelevant",
                LParamError::BetasNotDescending { .. } => "BetasNotDescending",
                LParamError::BlockNotTempered { .. } => "BlockNotTempered",
                LParamError::BlockDimension { .. } => "BlockDimension",
                LParamError::EmptyTriple => "EmptyTriple",
                LParamError::GroupMismatch { .. } => "GroupMismatch",
                LParamError::Overflow => "OverflowError",
            },
        }
    }
}

fn datum_code(e: &DatumError) -> &'static str {
    match e {
        DatumError::ZeroRank => "ZeroRank",
        DatumError::DimensionMismatch { .. } => "DimensionMismatch",
        DatumError::CountMismatch { .. } => "CountMismatch",
        DatumError::PairingViolation { .. } => "PairingViolation",
        DatumError::CartanSignViolation { .. } => "CartanSignViolation",
        DatumError::DependentRoots(_) => "DependentRoots",
    }
}

fn weyl_code(e: &WeylError) -> &'static str {
    match e {
        WeylError::IndexOutOfRange { .. } => "IndexOutOfRange",
        WeylError::GroupTooLarge { .. } => "GroupTooLarge",
        WeylError::NotInGroup => "NotInGroup",
        WeylError::InvalidAction { .. } => "InvalidAction",
        WeylError::ActionBasisUndefined { .. } => "ActionBasisUndefined",
        WeylError::UnknownGaloisGenerator { .. } => "UnknownGaloisGenerator",
        WeylError::NotStable(_) => "NotStable",
        WeylError::RelativeWeylMismatch { .. } => "RelativeWeylMismatch",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_see_through_wrapping() {
        let e: Error = ChamberError::Weyl(WeylError::NotInGroup).into();
        assert_eq!(e.code(), "NotInGroup");
        let e: Error = LParamError::EmptyParameter.into();
        assert_eq!(e.code(), "EmptyParameter");
        assert_eq!(e.to_string(), "parameter has no segments");
    }
}
