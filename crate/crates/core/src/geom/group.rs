//! Matrix presentations of the three transformation groups and their Lie
//! algebras: orientation-preserving rigid motions and equi-affine motions of
//! the plane in the 3x3 block form with top row (1, 0, 0), and the Möbius
//! group of the conformal 3-sphere as the unimodular symmetry group K of the
//! Lorentzian form in z-coordinates.

use super::minkowski::{form_matrix, MinkowskiVector};
use super::Geometry;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix5, Vector2, Vector4, Vector5};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Validation tolerance on group-element constraints.
pub const VALIDATE_TOL: f64 = 1e-10;

/// A constraint violated by a candidate group element, with its magnitude.
#[derive(Clone, Debug)]
pub struct Violation {
    pub constraint: String,
    pub magnitude: f64,
}

/// Outcome of validating a candidate group element.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.violations
            .iter()
            .map(|v| v.magnitude)
            .fold(0.0, f64::max)
    }

    fn check(&mut self, constraint: &str, deviation: f64, tol: f64) {
        if deviation.abs() > tol {
            self.violations.push(Violation {
                constraint: constraint.to_string(),
                magnitude: deviation.abs(),
            });
        }
    }
}

/// A validated matrix representative of one of the three groups.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    Euclidean2(Matrix3<f64>),
    EquiAffine2(Matrix3<f64>),
    Moebius3(Matrix5<f64>),
}

impl GroupElement {
    pub fn geometry(&self) -> Geometry {
        match self {
            GroupElement::Euclidean2(_) => Geometry::Euclidean2,
            GroupElement::EquiAffine2(_) => Geometry::EquiAffine2,
            GroupElement::Moebius3(_) => Geometry::Moebius3,
        }
    }

    pub fn identity(geometry: Geometry) -> Self {
        match geometry {
            Geometry::Euclidean2 => GroupElement::Euclidean2(Matrix3::identity()),
            Geometry::EquiAffine2 => GroupElement::EquiAffine2(Matrix3::identity()),
            Geometry::Moebius3 => GroupElement::Moebius3(Matrix5::identity()),
        }
    }

    /// Build from a raw matrix, checking only the shape against the tag.
    pub fn from_matrix(geometry: Geometry, m: &DMatrix<f64>) -> Result<Self> {
        let want = match geometry {
            Geometry::Euclidean2 | Geometry::EquiAffine2 => 3,
            Geometry::Moebius3 => 5,
        };
        if m.nrows() != want || m.ncols() != want {
            return Err(Error::Shape {
                geometry,
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        Ok(match geometry {
            Geometry::Euclidean2 => {
                GroupElement::Euclidean2(Matrix3::from_fn(|i, j| m[(i, j)]))
            }
            Geometry::EquiAffine2 => {
                GroupElement::EquiAffine2(Matrix3::from_fn(|i, j| m[(i, j)]))
            }
            Geometry::Moebius3 => {
                GroupElement::Moebius3(Matrix5::from_fn(|i, j| m[(i, j)]))
            }
        })
    }

    /// Planar element from its linear block and translation.
    pub fn from_planar_parts(
        geometry: Geometry,
        a: &Matrix2<f64>,
        b: &Vector2<f64>,
    ) -> Result<Self> {
        let mut m = Matrix3::identity();
        m[(1, 0)] = b[0];
        m[(2, 0)] = b[1];
        for i in 0..2 {
            for j in 0..2 {
                m[(i + 1, j + 1)] = a[(i, j)];
            }
        }
        match geometry {
            Geometry::Euclidean2 => Ok(GroupElement::Euclidean2(m)),
            Geometry::EquiAffine2 => Ok(GroupElement::EquiAffine2(m)),
            Geometry::Moebius3 => Err(Error::InvalidInput(
                "planar parts cannot build a Möbius element".into(),
            )),
        }
    }

    /// Rotation by `theta` followed by translation by `b`.
    pub fn rotation(theta: f64, b: Vector2<f64>) -> Self {
        let (s, c) = theta.sin_cos();
        let a = Matrix2::new(c, -s, s, c);
        Self::from_planar_parts(Geometry::Euclidean2, &a, &b).unwrap()
    }

    pub fn planar_linear(&self) -> Option<Matrix2<f64>> {
        match self {
            GroupElement::Euclidean2(m) | GroupElement::EquiAffine2(m) => Some(
                Matrix2::new(m[(1, 1)], m[(1, 2)], m[(2, 1)], m[(2, 2)]),
            ),
            GroupElement::Moebius3(_) => None,
        }
    }

    pub fn planar_translation(&self) -> Option<Vector2<f64>> {
        match self {
            GroupElement::Euclidean2(m) | GroupElement::EquiAffine2(m) => {
                Some(Vector2::new(m[(1, 0)], m[(2, 0)]))
            }
            GroupElement::Moebius3(_) => None,
        }
    }

    pub fn moebius_matrix(&self) -> Option<&Matrix5<f64>> {
        match self {
            GroupElement::Moebius3(m) => Some(m),
            _ => None,
        }
    }

    /// Check all defining constraints; an empty report means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let tol = VALIDATE_TOL;
        match self {
            GroupElement::Euclidean2(m) => {
                validate_planar_top_row(m, &mut rep, tol);
                let a = self.planar_linear().unwrap();
                let ata = a.transpose() * a;
                for i in 0..2 {
                    for j in 0..2 {
                        let target = if i == j { 1.0 } else { 0.0 };
                        rep.check(
                            &format!("(A^T A)[{i}{j}] = {target}"),
                            ata[(i, j)] - target,
                            tol,
                        );
                    }
                }
                rep.check("det A = 1", a.determinant() - 1.0, tol);
            }
            GroupElement::EquiAffine2(m) => {
                validate_planar_top_row(m, &mut rep, tol);
                let a = self.planar_linear().unwrap();
                rep.check("det A = 1", a.determinant() - 1.0, tol);
            }
            GroupElement::Moebius3(m) => {
                rep.check("det = 1", m.determinant() - 1.0, tol);
                let cols: Vec<MinkowskiVector> = (0..5)
                    .map(|j| MinkowskiVector(m.column(j).into_owned()))
                    .collect();
                let target = form_matrix();
                for i in 0..5 {
                    for j in i..5 {
                        let got = cols[i].inner(&cols[j]);
                        rep.check(
                            &format!("<e{i}, e{j}> = {}", target[(i, j)]),
                            got - target[(i, j)],
                            tol,
                        );
                    }
                }
            }
        }
        rep
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        match (self, other) {
            (GroupElement::Euclidean2(a), GroupElement::Euclidean2(b)) => {
                Ok(GroupElement::Euclidean2(a * b))
            }
            (GroupElement::EquiAffine2(a), GroupElement::EquiAffine2(b)) => {
                Ok(GroupElement::EquiAffine2(a * b))
            }
            (GroupElement::Moebius3(a), GroupElement::Moebius3(b)) => {
                Ok(GroupElement::Moebius3(a * b))
            }
            _ => Err(Error::IncompatibleTags(self.geometry(), other.geometry())),
        }
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        match self {
            GroupElement::Euclidean2(m) => m
                .try_inverse()
                .map(GroupElement::Euclidean2)
                .ok_or(Error::SingularMatrix),
            GroupElement::EquiAffine2(m) => m
                .try_inverse()
                .map(GroupElement::EquiAffine2)
                .ok_or(Error::SingularMatrix),
            GroupElement::Moebius3(m) => m
                .try_inverse()
                .map(GroupElement::Moebius3)
                .ok_or(Error::SingularMatrix),
        }
    }

    /// Action on a point of the plane (planar tags only).
    pub fn act_point2(&self, p: &Vector2<f64>) -> Result<Vector2<f64>> {
        let rep = self.validate();
        if !rep.is_valid() {
            return Err(Error::Validation(format!(
                "{} constraint(s) violated, worst {:.3e}",
                rep.violations.len(),
                rep.max_magnitude()
            )));
        }
        match self {
            GroupElement::Euclidean2(_) | GroupElement::EquiAffine2(_) => {
                let a = self.planar_linear().unwrap();
                let b = self.planar_translation().unwrap();
                Ok(a * p + b)
            }
            GroupElement::Moebius3(_) => Err(Error::InvalidInput(
                "Möbius elements act on null rays or sphere points, not R^2".into(),
            )),
        }
    }

    /// Action on a null ray, reprojected to the z0 = 1 representative.
    pub fn act_null(&self, z: &MinkowskiVector) -> Result<MinkowskiVector> {
        let m = self.moebius_matrix().ok_or_else(|| {
            Error::InvalidInput("null-ray action requires a Möbius element".into())
        })?;
        let rep = self.validate();
        if !rep.is_valid() {
            return Err(Error::Validation(format!(
                "{} constraint(s) violated, worst {:.3e}",
                rep.violations.len(),
                rep.max_magnitude()
            )));
        }
        MinkowskiVector(m * z.0).normalized_ray()
    }

    /// Action on a point of the unit 3-sphere.
    pub fn act_s3(&self, p: &Vector4<f64>) -> Result<Vector4<f64>> {
        let m = self.moebius_matrix().ok_or_else(|| {
            Error::InvalidInput("sphere action requires a Möbius element".into())
        })?;
        let z = MinkowskiVector::from_s3(p);
        MinkowskiVector(m * z.0).to_s3()
    }

    /// Action on a point of R^3 through the isotropic chart.
    pub fn act_r3(&self, y: &nalgebra::Vector3<f64>) -> Result<nalgebra::Vector3<f64>> {
        self.act_null(&MinkowskiVector::null_lift(y))?.chart_point()
    }

    pub fn matrix_dyn(&self) -> DMatrix<f64> {
        match self {
            GroupElement::Euclidean2(m) | GroupElement::EquiAffine2(m) => {
                DMatrix::from_fn(3, 3, |i, j| m[(i, j)])
            }
            GroupElement::Moebius3(m) => DMatrix::from_fn(5, 5, |i, j| m[(i, j)]),
        }
    }
}

fn validate_planar_top_row(m: &Matrix3<f64>, rep: &mut ValidationReport, tol: f64) {
    rep.check("m[0][0] = 1", m[(0, 0)] - 1.0, tol);
    rep.check("m[0][1] = 0", m[(0, 1)], tol);
    rep.check("m[0][2] = 0", m[(0, 2)], tol);
}

/// A Lie-algebra value `g^{-1} dg/dt`, tagged by geometry.
#[derive(Clone, Debug)]
pub enum LieAlgebraValue {
    Euclidean2(Matrix3<f64>),
    EquiAffine2(Matrix3<f64>),
    Moebius3(Matrix5<f64>),
}

impl LieAlgebraValue {
    pub fn geometry(&self) -> Geometry {
        match self {
            LieAlgebraValue::Euclidean2(_) => Geometry::Euclidean2,
            LieAlgebraValue::EquiAffine2(_) => Geometry::EquiAffine2,
            LieAlgebraValue::Moebius3(_) => Geometry::Moebius3,
        }
    }

    pub fn matrix_dyn(&self) -> DMatrix<f64> {
        match self {
            LieAlgebraValue::Euclidean2(m) | LieAlgebraValue::EquiAffine2(m) => {
                DMatrix::from_fn(3, 3, |i, j| m[(i, j)])
            }
            LieAlgebraValue::Moebius3(m) => DMatrix::from_fn(5, 5, |i, j| m[(i, j)]),
        }
    }

    /// Worst deviation from the tag's linear Lie-algebra relations.
    pub fn relation_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        match self {
            LieAlgebraValue::Euclidean2(m) => {
                for j in 0..3 {
                    worst = worst.max(m[(0, j)].abs());
                }
                worst = worst.max(m[(1, 1)].abs());
                worst = worst.max(m[(2, 2)].abs());
                worst = worst.max((m[(1, 2)] + m[(2, 1)]).abs());
            }
            LieAlgebraValue::EquiAffine2(m) => {
                for j in 0..3 {
                    worst = worst.max(m[(0, j)].abs());
                }
                worst = worst.max((m[(1, 1)] + m[(2, 2)]).abs());
            }
            LieAlgebraValue::Moebius3(m) => {
                worst = worst.max(m[(0, 4)].abs());
                worst = worst.max(m[(4, 0)].abs());
                worst = worst.max((m[(4, 4)] + m[(0, 0)]).abs());
                for i in 1..4 {
                    worst = worst.max((m[(4, i)] - m[(i, 0)]).abs());
                    worst = worst.max((m[(i, 4)] - m[(0, i)]).abs());
                    for j in 1..4 {
                        worst = worst.max((m[(j, i)] + m[(i, j)]).abs() * 0.5);
                    }
                }
            }
        }
        worst
    }

    /// Build from free parameters (the documented sampling construction).
    /// Euclidean2: (rotation rate, b1, b2). EquiAffine2: (x11, x12, x21,
    /// b1, b2). Moebius3: (alpha, beta1..3, gamma1..3, rho12, rho13, rho23).
    pub fn from_params(geometry: Geometry, params: &[f64]) -> Result<Self> {
        match geometry {
            Geometry::Euclidean2 => {
                if params.len() != 3 {
                    return Err(Error::InvalidInput("need 3 parameters".into()));
                }
                let (w, b1, b2) = (params[0], params[1], params[2]);
                let mut m = Matrix3::zeros();
                m[(1, 0)] = b1;
                m[(2, 0)] = b2;
                m[(1, 2)] = -w;
                m[(2, 1)] = w;
                Ok(LieAlgebraValue::Euclidean2(m))
            }
            Geometry::EquiAffine2 => {
                if params.len() != 5 {
                    return Err(Error::InvalidInput("need 5 parameters".into()));
                }
                let mut m = Matrix3::zeros();
                m[(1, 1)] = params[0];
                m[(1, 2)] = params[1];
                m[(2, 1)] = params[2];
                m[(2, 2)] = -params[0];
                m[(1, 0)] = params[3];
                m[(2, 0)] = params[4];
                Ok(LieAlgebraValue::EquiAffine2(m))
            }
            Geometry::Moebius3 => {
                if params.len() != 10 {
                    return Err(Error::InvalidInput("need 10 parameters".into()));
                }
                let alpha = params[0];
                let beta = &params[1..4];
                let gamma = &params[4..7];
                let (r12, r13, r23) = (params[7], params[8], params[9]);
                let mut m = Matrix5::zeros();
                m[(0, 0)] = alpha;
                m[(4, 4)] = -alpha;
                for i in 1..4 {
                    m[(i, 0)] = beta[i - 1];
                    m[(4, i)] = beta[i - 1];
                    m[(0, i)] = gamma[i - 1];
                    m[(i, 4)] = gamma[i - 1];
                }
                m[(2, 1)] = r12;
                m[(1, 2)] = -r12;
                m[(3, 1)] = r13;
                m[(1, 3)] = -r13;
                m[(3, 2)] = r23;
                m[(2, 3)] = -r23;
                Ok(LieAlgebraValue::Moebius3(m))
            }
        }
    }

    /// Matrix exponential into the group.
    pub fn exp(&self) -> GroupElement {
        match self {
            LieAlgebraValue::Euclidean2(m) => GroupElement::Euclidean2(m.exp()),
            LieAlgebraValue::EquiAffine2(m) => GroupElement::EquiAffine2(m.exp()),
            LieAlgebraValue::Moebius3(m) => GroupElement::Moebius3(m.exp()),
        }
    }

    pub fn param_count(geometry: Geometry) -> usize {
        match geometry {
            Geometry::Euclidean2 => 3,
            Geometry::EquiAffine2 => 5,
            Geometry::Moebius3 => 10,
        }
    }
}

/// Deterministically sample a valid group element: exponentiate a
/// Lie-algebra value with entries uniform in [-1, 1].
pub fn random_group_element(geometry: Geometry, seed: u64) -> GroupElement {
    random_group_element_scaled(geometry, seed, 1.0)
}

/// Same construction with the Lie-algebra entries scaled, for tests that
/// need motions closer to the identity.
pub fn random_group_element_scaled(geometry: Geometry, seed: u64, scale: f64) -> GroupElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = LieAlgebraValue::param_count(geometry);
    let params: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0) * scale).collect();
    LieAlgebraValue::from_params(geometry, &params).unwrap().exp()
}

/// Left-invariant derivative of a path in the group by central differences:
/// `g(t)^{-1} (g(t+h) - g(t-h)) / (2h)`.
pub fn maurer_cartan<F>(path: F, t: f64, h: f64) -> Result<LieAlgebraValue>
where
    F: Fn(f64) -> Result<GroupElement>,
{
    let g = path(t)?;
    let rep = g.validate();
    if !rep.is_valid() {
        return Err(Error::Validation(format!(
            "path element at t = {t} invalid, worst deviation {:.3e}",
            rep.max_magnitude()
        )));
    }
    let gp = path(t + h)?;
    let gm = path(t - h)?;
    if gp.geometry() != g.geometry() || gm.geometry() != g.geometry() {
        return Err(Error::IncompatibleTags(g.geometry(), gp.geometry()));
    }
    match (&g, &gp, &gm) {
        (GroupElement::Euclidean2(g0), GroupElement::Euclidean2(p), GroupElement::Euclidean2(m)) => {
            let inv = g0.try_inverse().ok_or(Error::SingularMatrix)?;
            Ok(LieAlgebraValue::Euclidean2(inv * (p - m) / (2.0 * h)))
        }
        (GroupElement::EquiAffine2(g0), GroupElement::EquiAffine2(p), GroupElement::EquiAffine2(m)) => {
            let inv = g0.try_inverse().ok_or(Error::SingularMatrix)?;
            Ok(LieAlgebraValue::EquiAffine2(inv * (p - m) / (2.0 * h)))
        }
        (GroupElement::Moebius3(g0), GroupElement::Moebius3(p), GroupElement::Moebius3(m)) => {
            let inv = g0.try_inverse().ok_or(Error::SingularMatrix)?;
            Ok(LieAlgebraValue::Moebius3(inv * (p - m) / (2.0 * h)))
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::Vector3;

    #[test]
    fn identity_validation_per_tag() {
        for geom in [Geometry::Euclidean2, Geometry::EquiAffine2, Geometry::Moebius3] {
            let rep = GroupElement::identity(geom).validate();
            assert!(
                rep.is_valid(),
                "identity should be valid for {geom:?}: {:?}",
                rep.violations
            );
        }
    }

    #[test]
    fn shape_mismatch() {
        let m = DMatrix::<f64>::identity(5, 5);
        assert!(matches!(
            GroupElement::from_matrix(Geometry::Euclidean2, &m),
            Err(Error::Shape { .. })
        ));
        let m = DMatrix::<f64>::identity(3, 3);
        assert!(matches!(
            GroupElement::from_matrix(Geometry::Moebius3, &m),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn diag_equiaffine_is_valid() {
        let a = Matrix2::new(2.0, 0.0, 0.0, 0.5);
        let g = GroupElement::from_planar_parts(Geometry::EquiAffine2, &a, &Vector2::zeros())
            .unwrap();
        assert!(g.validate().is_valid());
    }

    #[test]
    fn broken_moebius_flags_gram() {
        // Scaling one column of the identity breaks <e1, e1> = 1.
        let mut m = Matrix5::<f64>::identity();
        m[(1, 1)] = 2.0;
        let g = GroupElement::Moebius3(m);
        let rep = g.validate();
        assert!(!rep.is_valid());
        assert!(rep
            .violations
            .iter()
            .any(|v| v.constraint.contains("<e1, e1>")));
    }

    #[test]
    fn act_examples() {
        let id = GroupElement::identity(Geometry::Euclidean2);
        assert_relative_eq!(
            id.act_point2(&Vector2::new(3.0, 4.0)).unwrap(),
            Vector2::new(3.0, 4.0)
        );
        let rot = GroupElement::rotation(std::f64::consts::FRAC_PI_2, Vector2::zeros());
        assert_relative_eq!(
            rot.act_point2(&Vector2::new(1.0, 0.0)).unwrap(),
            Vector2::new(0.0, 1.0),
            epsilon = 1e-15
        );
    }

    #[test]
    fn moebius_scaling_fixes_origin_ray() {
        // z0 -> 2 z0, z4 -> z4 / 2 is in K and acts projectively trivially
        // on the lift of the origin.
        let mut m = Matrix5::<f64>::identity();
        m[(0, 0)] = 2.0;
        m[(4, 4)] = 0.5;
        let g = GroupElement::Moebius3(m);
        assert!(g.validate().is_valid());
        let z = MinkowskiVector::null_lift(&Vector3::zeros());
        let w = g.act_null(&z).unwrap();
        assert_relative_eq!(w.0, z.0, epsilon = 1e-14);
    }

    #[test]
    fn random_elements_are_valid_and_deterministic() {
        for geom in [Geometry::Euclidean2, Geometry::EquiAffine2, Geometry::Moebius3] {
            let a = random_group_element(geom, 7);
            let b = random_group_element(geom, 7);
            assert_eq!(a, b);
            let rep = a.validate();
            assert!(
                rep.is_valid(),
                "{geom:?} random element invalid: {:?}",
                rep.violations
            );
        }
        // det of the equi-affine linear block
        let g = random_group_element(Geometry::EquiAffine2, 42);
        let det = g.planar_linear().unwrap().determinant();
        assert_relative_eq!(det, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn composition_and_action_compatibility() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        for geom in [Geometry::Euclidean2, Geometry::EquiAffine2, Geometry::Moebius3] {
            for k in 0..20 {
                let g = random_group_element(geom, 1000 + k);
                let h = random_group_element(geom, 2000 + k);
                let gh = g.compose(&h).unwrap();
                assert!(gh.validate().max_magnitude() < 1e-9);
                match geom {
                    Geometry::Moebius3 => {
                        let y = Vector3::new(
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                        );
                        let z = MinkowskiVector::null_lift(&y);
                        let a = gh.act_null(&z).unwrap();
                        let b = g.act_null(&h.act_null(&z).unwrap()).unwrap();
                        assert_relative_eq!(a.0, b.0, epsilon = 1e-9);
                    }
                    _ => {
                        let p = Vector2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                        let a = gh.act_point2(&p).unwrap();
                        let b = g.act_point2(&h.act_point2(&p).unwrap()).unwrap();
                        assert_relative_eq!(a, b, epsilon = 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn moebius_action_preserves_form() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for k in 0..20 {
            let g = random_group_element(Geometry::Moebius3, 300 + k);
            let m = g.moebius_matrix().unwrap();
            for _ in 0..10 {
                let a = Vector5::from_fn(|_, _| rng.gen_range(-1.0..1.0));
                let b = Vector5::from_fn(|_, _| rng.gen_range(-1.0..1.0));
                let lhs = MinkowskiVector(m * a).inner(&MinkowskiVector(m * b));
                let rhs = MinkowskiVector(a).inner(&MinkowskiVector(b));
                assert_relative_eq!(lhs, rhs, epsilon = 1e-9, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn maurer_cartan_constant_path_is_zero() {
        let g = random_group_element(Geometry::Moebius3, 5);
        let mc = maurer_cartan(|_| Ok(g.clone()), 0.3, 1e-5).unwrap();
        assert!(mc.matrix_dyn().amax() < 1e-9);
    }

    #[test]
    fn maurer_cartan_of_exponential_is_constant() {
        for geom in [Geometry::Euclidean2, Geometry::EquiAffine2, Geometry::Moebius3] {
            let x = {
                let n = LieAlgebraValue::param_count(geom);
                let params: Vec<f64> = (0..n).map(|i| 0.1 + 0.05 * i as f64).collect();
                LieAlgebraValue::from_params(geom, &params).unwrap()
            };
            let path = |t: f64| -> Result<GroupElement> {
                Ok(match &x {
                    LieAlgebraValue::Euclidean2(m) => GroupElement::Euclidean2((m * t).exp()),
                    LieAlgebraValue::EquiAffine2(m) => GroupElement::EquiAffine2((m * t).exp()),
                    LieAlgebraValue::Moebius3(m) => GroupElement::Moebius3((m * t).exp()),
                })
            };
            for t in [0.0, 0.4, 1.1] {
                let mc = maurer_cartan(path, t, 1e-5).unwrap();
                let diff = mc.matrix_dyn() - x.matrix_dyn();
                assert!(diff.amax() < 1e-8, "{geom:?} at t={t}: {:.3e}", diff.amax());
                assert!(mc.relation_residual() < 1e-8);
            }
        }
    }

    #[test]
    fn random_lie_values_satisfy_relations() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for geom in [Geometry::Euclidean2, Geometry::EquiAffine2, Geometry::Moebius3] {
            let n = LieAlgebraValue::param_count(geom);
            let params: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let x = LieAlgebraValue::from_params(geom, &params).unwrap();
            assert!(x.relation_residual() == 0.0);
        }
    }
}
