//! Linear algebra of the three transformation groups: the Lorentzian model
//! of the conformal 3-sphere, validated group elements, Lie-algebra values,
//! group actions, and deterministic sampling.

mod group;
mod minkowski;

pub use group::{
    maurer_cartan, random_group_element, random_group_element_scaled, GroupElement,
    LieAlgebraValue, ValidationReport, Violation, VALIDATE_TOL,
};
pub use minkowski::{
    form_matrix, frame_gram_target, q_orthogonal_complement, stereographic,
    stereographic_inv, MinkowskiVector,
};

/// Tag naming which transformation group a value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Geometry {
    /// Rotations and translations of the plane, ASO(2).
    Euclidean2,
    /// Area-preserving affine motions of the plane, ASL(2).
    EquiAffine2,
    /// Möbius transformations of the 3-sphere, realized in SO(4,1).
    Moebius3,
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Geometry::Euclidean2 => write!(f, "euclidean"),
            Geometry::EquiAffine2 => write!(f, "equiaffine"),
            Geometry::Moebius3 => write!(f, "moebius"),
        }
    }
}

impl std::str::FromStr for Geometry {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "euclidean2" | "aso2" => Ok(Geometry::Euclidean2),
            "equiaffine" | "equiaffine2" | "affine" | "asl2" => Ok(Geometry::EquiAffine2),
            "moebius" | "moebius3" | "mobius" | "conformal" => Ok(Geometry::Moebius3),
            other => Err(crate::error::Error::InvalidInput(format!(
                "unknown geometry '{other}'"
            ))),
        }
    }
}
