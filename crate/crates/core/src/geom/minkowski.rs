//! The Lorentzian model space: R^5 with the quadratic form
//! `<z, z> = z1^2 + z2^2 + z3^2 - 2 z0 z4`, whose projectivized null cone
//! is the conformal 3-sphere. Includes the isotropic lift of R^3 into the
//! cone, conversions between the two coordinate presentations of the form,
//! and the stereographic chart.

use crate::error::{Error, Result};
use nalgebra::{Matrix5, Vector3, Vector4, Vector5};

/// A vector of the Lorentzian R^5 in z-coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinkowskiVector(pub Vector5<f64>);

impl MinkowskiVector {
    pub fn new(z0: f64, z1: f64, z2: f64, z3: f64, z4: f64) -> Self {
        MinkowskiVector(Vector5::new(z0, z1, z2, z3, z4))
    }

    pub fn from_vector(v: Vector5<f64>) -> Self {
        MinkowskiVector(v)
    }

    /// The bilinear form polarizing `z1^2+z2^2+z3^2-2 z0 z4`. Summation
    /// order is fixed so results are reproducible bit for bit.
    pub fn inner(&self, w: &MinkowskiVector) -> f64 {
        let a = &self.0;
        let b = &w.0;
        (((a[1] * b[1] + a[2] * b[2]) + a[3] * b[3]) - a[0] * b[4]) - a[4] * b[0]
    }

    pub fn norm2(&self) -> f64 {
        self.inner(self)
    }

    pub fn is_null(&self, tol: f64) -> bool {
        self.norm2().abs() <= tol * (1.0 + self.0.norm_squared())
    }

    pub fn scale(&self, s: f64) -> Self {
        MinkowskiVector(self.0 * s)
    }

    /// Isotropic lift of a point of R^3 into the null cone, normalized so
    /// the z0 component is 1.
    pub fn null_lift(y: &Vector3<f64>) -> Self {
        MinkowskiVector(Vector5::new(
            1.0,
            y[0],
            y[1],
            y[2],
            0.5 * y.norm_squared(),
        ))
    }

    /// Chart inverse of [`null_lift`](Self::null_lift): rescale a null ray to
    /// z0 = 1 and read off the R^3 point.
    pub fn chart_point(&self) -> Result<Vector3<f64>> {
        let z = &self.0;
        if z[0].abs() <= 1e-12 * z.norm() {
            return Err(Error::DegenerateRay);
        }
        Ok(Vector3::new(z[1] / z[0], z[2] / z[0], z[3] / z[0]))
    }

    /// Rescale a null vector to the z0 = 1 representative.
    pub fn normalized_ray(&self) -> Result<MinkowskiVector> {
        let z = &self.0;
        if z[0].abs() <= 1e-12 * z.norm() {
            return Err(Error::DegenerateRay);
        }
        Ok(MinkowskiVector(self.0 / z[0]))
    }

    /// Change of model from x-coordinates, where the form reads
    /// `-x0^2 + x1^2 + x2^2 + x3^2 + x4^2`.
    pub fn from_x_coordinates(x: &Vector5<f64>) -> Self {
        let r = std::f64::consts::SQRT_2.recip();
        MinkowskiVector(Vector5::new(
            (x[0] + x[4]) * r,
            x[1],
            x[2],
            x[3],
            (x[0] - x[4]) * r,
        ))
    }

    /// Inverse change of model back to x-coordinates.
    pub fn to_x_coordinates(&self) -> Vector5<f64> {
        let z = &self.0;
        let r = std::f64::consts::SQRT_2.recip();
        Vector5::new((z[0] + z[4]) * r, z[1], z[2], z[3], (z[0] - z[4]) * r)
    }

    /// Lift of a point of the unit 3-sphere (x-model null vector (1, p)).
    pub fn from_s3(p: &Vector4<f64>) -> Self {
        Self::from_x_coordinates(&Vector5::new(1.0, p[0], p[1], p[2], p[3]))
    }

    /// Project a null ray back to the unit 3-sphere.
    pub fn to_s3(&self) -> Result<Vector4<f64>> {
        let x = self.to_x_coordinates();
        if x[0].abs() <= 1e-12 * x.norm() {
            return Err(Error::DegenerateRay);
        }
        let p = Vector4::new(x[1] / x[0], x[2] / x[0], x[3] / x[0], x[4] / x[0]);
        let n = p.norm();
        if n <= 1e-12 {
            return Err(Error::DegenerateRay);
        }
        Ok(p / n)
    }
}

/// Gram matrix of the form in z-coordinates. It is involutive (J^2 = I),
/// which the frame corrections rely on.
pub fn form_matrix() -> Matrix5<f64> {
    let mut j = Matrix5::zeros();
    j[(1, 1)] = 1.0;
    j[(2, 2)] = 1.0;
    j[(3, 3)] = 1.0;
    j[(0, 4)] = -1.0;
    j[(4, 0)] = -1.0;
    j
}

/// Target Gram matrix of an adapted conformal frame (columns e0..e4):
/// identical to [`form_matrix`] by the frame relations.
pub fn frame_gram_target() -> Matrix5<f64> {
    form_matrix()
}

/// Vector Q-orthogonal to the four given vectors: Q^{-1} applied to the
/// cofactor expansion of det[x | a b c d]. Polynomial in the inputs, so the
/// same construction works on jet-valued vectors.
pub fn q_orthogonal_complement(
    a: &Vector5<f64>,
    b: &Vector5<f64>,
    c: &Vector5<f64>,
    d: &Vector5<f64>,
) -> Vector5<f64> {
    let mut y = Vector5::zeros();
    for row in 0..5 {
        let mut m = nalgebra::Matrix4::<f64>::zeros();
        let mut r = 0;
        for i in 0..5 {
            if i == row {
                continue;
            }
            m[(r, 0)] = a[i];
            m[(r, 1)] = b[i];
            m[(r, 2)] = c[i];
            m[(r, 3)] = d[i];
            r += 1;
        }
        let sign = if row % 2 == 0 { 1.0 } else { -1.0 };
        y[row] = sign * m.determinant();
    }
    // Q^{-1} = Q for this form.
    form_matrix() * y
}

/// Stereographic projection of the unit 3-sphere from the pole
/// (0, 0, 0, 1) onto R^3.
pub fn stereographic(p: &Vector4<f64>) -> Result<Vector3<f64>> {
    let denom = 1.0 - p[3];
    if denom.abs() <= 1e-14 {
        return Err(Error::Pole);
    }
    Ok(Vector3::new(p[0] / denom, p[1] / denom, p[2] / denom))
}

/// Inverse stereographic projection.
pub fn stereographic_inv(y: &Vector3<f64>) -> Vector4<f64> {
    let n2 = y.norm_squared();
    Vector4::new(2.0 * y[0], 2.0 * y[1], 2.0 * y[2], n2 - 1.0) / (n2 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn inner_examples() {
        let e0 = MinkowskiVector::new(1.0, 0.0, 0.0, 0.0, 0.0);
        let e4 = MinkowskiVector::new(0.0, 0.0, 0.0, 0.0, 1.0);
        let e1 = MinkowskiVector::new(0.0, 1.0, 0.0, 0.0, 0.0);
        assert_eq!(e0.inner(&e4), -1.0);
        assert_eq!(e1.inner(&e1), 1.0);
        assert_eq!(e0.inner(&e0), 0.0);
    }

    #[test]
    fn null_lift_examples() {
        let z = MinkowskiVector::null_lift(&Vector3::zeros());
        assert_eq!(z.0, Vector5::new(1.0, 0.0, 0.0, 0.0, 0.0));
        let z = MinkowskiVector::null_lift(&Vector3::new(1.0, 0.0, 0.0));
        assert_eq!(z.0, Vector5::new(1.0, 1.0, 0.0, 0.0, 0.5));
        assert_eq!(z.norm2(), 0.0);
        let z = MinkowskiVector::null_lift(&Vector3::new(3.0, 4.0, 0.0));
        assert_eq!(z.0[4], 12.5);
        assert_relative_eq!(z.norm2(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn xz_change_examples() {
        let z = MinkowskiVector::from_x_coordinates(&Vector5::new(1.0, 0.0, 0.0, 0.0, 1.0));
        assert_relative_eq!(z.0[0], std::f64::consts::SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(z.norm2(), 0.0, epsilon = 1e-15);

        let x = Vector5::new(1.0, 0.0, 0.0, 0.0, 0.0);
        let z = MinkowskiVector::from_x_coordinates(&x);
        let xform = -x[0] * x[0] + x.fixed_rows::<4>(1).norm_squared();
        assert_relative_eq!(z.norm2(), xform, epsilon = 1e-15);
        assert_relative_eq!(z.to_x_coordinates(), x, epsilon = 1e-15);

        let x = Vector5::new(0.0, 1.0, 0.0, 0.0, 0.0);
        let z = MinkowskiVector::from_x_coordinates(&x);
        assert_eq!(z.0, x);
        assert_eq!(z.norm2(), 1.0);
    }

    #[test]
    fn xz_is_isometry_on_random_vectors() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let x = Vector5::from_fn(|_, _| rng.gen_range(-5.0..5.0));
            let z = MinkowskiVector::from_x_coordinates(&x);
            let xform = -x[0] * x[0]
                + x[1] * x[1]
                + x[2] * x[2]
                + x[3] * x[3]
                + x[4] * x[4];
            assert_relative_eq!(z.norm2(), xform, max_relative = 1e-12, epsilon = 1e-12);
            assert_relative_eq!(z.to_x_coordinates(), x, epsilon = 1e-12);
            // and back the other way
            let z2 = MinkowskiVector(x);
            let x2 = z2.to_x_coordinates();
            assert_relative_eq!(
                MinkowskiVector::from_x_coordinates(&x2).0,
                x,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn stereographic_examples() {
        let south = Vector4::new(0.0, 0.0, 0.0, -1.0);
        assert_relative_eq!(stereographic(&south).unwrap(), Vector3::zeros());
        let eq = Vector4::new(1.0, 0.0, 0.0, 0.0);
        assert_relative_eq!(
            stereographic(&eq).unwrap(),
            Vector3::new(1.0, 0.0, 0.0)
        );
        assert!(stereographic(&Vector4::new(0.0, 0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn stereographic_roundtrip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let p: Vector4<f64> =
                Vector4::from_fn(|_, _| rng.gen_range(-1.0..1.0)).normalize();
            if (1.0 - p[3]).abs() < 1e-3 {
                continue;
            }
            let y = stereographic(&p).unwrap();
            assert_relative_eq!(stereographic_inv(&y), p, epsilon = 1e-12);
        }
    }

    #[test]
    fn s3_lift_roundtrip() {
        let p = Vector4::new(0.5, -0.5, 0.5, 0.5);
        let z = MinkowskiVector::from_s3(&p);
        assert_relative_eq!(z.norm2(), 0.0, epsilon = 1e-14);
        assert_relative_eq!(z.to_s3().unwrap(), p, epsilon = 1e-14);
    }

    #[test]
    fn q_complement_is_orthogonal() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let vs: Vec<Vector5<f64>> = (0..4)
            .map(|_| Vector5::from_fn(|_, _| rng.gen_range(-1.0..1.0)))
            .collect();
        let y = q_orthogonal_complement(&vs[0], &vs[1], &vs[2], &vs[3]);
        for v in &vs {
            let yv = MinkowskiVector(y).inner(&MinkowskiVector(*v));
            assert_relative_eq!(yv, 0.0, epsilon = 1e-12);
        }
    }
}
