//! Bivariate jets: truncated Taylor expansions in two variables, used for
//! surface geometry. Coefficients are stored for total degree up to
//! [`MAX_ORDER2`]; partial derivatives come out of [`Jet2::du`] / [`Jet2::dv`].

use crate::error::{Error, Result};
use crate::jet::Jet;

pub const MAX_ORDER2: usize = 4;

const FACT: [f64; MAX_ORDER2 + 1] = [1.0, 1.0, 2.0, 6.0, 24.0];

/// Truncated bivariate Taylor expansion at a base point `(u0, v0)`.
/// `c[i][j]` is the coefficient of `(u-u0)^i (v-v0)^j`; entries with
/// `i + j > order` are kept at zero.
#[derive(Clone, Copy, Debug)]
pub struct Jet2 {
    order: usize,
    c: [[f64; MAX_ORDER2 + 1]; MAX_ORDER2 + 1],
}

impl Jet2 {
    pub fn constant(value: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER2);
        let mut c = [[0.0; MAX_ORDER2 + 1]; MAX_ORDER2 + 1];
        c[0][0] = value;
        Jet2 { order, c }
    }

    pub fn variable_u(u0: f64, order: usize) -> Self {
        let mut j = Jet2::constant(u0, order);
        if order >= 1 {
            j.c[1][0] = 1.0;
        }
        j
    }

    pub fn variable_v(v0: f64, order: usize) -> Self {
        let mut j = Jet2::constant(v0, order);
        if order >= 1 {
            j.c[0][1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0][0]
    }

    /// Mixed partial derivative value ∂^(i+j) f / ∂u^i ∂v^j.
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        assert!(i + j <= self.order);
        self.c[i][j] * FACT[i] * FACT[j]
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.c[i][j]
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut r = Jet2::constant(0.0, order);
        for i in 0..=order {
            for j in 0..=(order - i) {
                r.c[i][j] = self.c[i][j];
            }
        }
        r
    }

    /// Jet of ∂f/∂u, one order lower.
    pub fn du(&self) -> Self {
        assert!(self.order >= 1);
        let order = self.order - 1;
        let mut r = Jet2::constant(0.0, order);
        for i in 0..=order {
            for j in 0..=(order - i) {
                r.c[i][j] = self.c[i + 1][j] * (i as f64 + 1.0);
            }
        }
        r
    }

    /// Jet of ∂f/∂v, one order lower.
    pub fn dv(&self) -> Self {
        assert!(self.order >= 1);
        let order = self.order - 1;
        let mut r = Jet2::constant(0.0, order);
        for i in 0..=order {
            for j in 0..=(order - i) {
                r.c[i][j] = self.c[i][j + 1] * (j as f64 + 1.0);
            }
        }
        r
    }

    pub fn add(&self, o: &Jet2) -> Jet2 {
        let order = self.order.min(o.order);
        let mut r = Jet2::constant(0.0, order);
        for i in 0..=order {
            for j in 0..=(order - i) {
                r.c[i][j] = self.c[i][j] + o.c[i][j];
            }
        }
        r
    }

    pub fn sub(&self, o: &Jet2) -> Jet2 {
        let order = self.order.min(o.order);
        let mut r = Jet2::constant(0.0, order);
        for i in 0..=order {
            for j in 0..=(order - i) {
                r.c[i][j] = self.c[i][j] - o.c[i][j];
            }
        }
        r
    }

    pub fn neg(&self) -> Jet2 {
        let mut r = *self;
        for i in 0..=self.order {
            for j in 0..=(self.order - i) {
                r.c[i][j] = -r.c[i][j];
            }
        }
        r
    }

    pub fn scale(&self, s: f64) -> Jet2 {
        let mut r = *self;
        for i in 0..=self.order {
            for j in 0..=(self.order - i) {
                r.c[i][j] *= s;
            }
        }
        r
    }

    pub fn add_scalar(&self, s: f64) -> Jet2 {
        let mut r = *self;
        r.c[0][0] += s;
        r
    }

    pub fn mul(&self, o: &Jet2) -> Jet2 {
        let order = self.order.min(o.order);
        let mut r = Jet2::constant(0.0, order);
        for i1 in 0..=order {
            for j1 in 0..=(order - i1) {
                let a = self.c[i1][j1];
                if a == 0.0 {
                    continue;
                }
                for i2 in 0..=(order - i1 - j1) {
                    for j2 in 0..=(order - i1 - j1 - i2) {
                        r.c[i1 + i2][j1 + j2] += a * o.c[i2][j2];
                    }
                }
            }
        }
        r
    }

    pub fn div(&self, o: &Jet2) -> Result<Jet2> {
        if o.c[0][0] == 0.0 {
            return Err(Error::Domain(
                "division by zero at the base point".into(),
            ));
        }
        // Solve r * o = self degree by degree in total degree.
        let order = self.order.min(o.order);
        let mut r = Jet2::constant(0.0, order);
        for d in 0..=order {
            for i in 0..=d {
                let j = d - i;
                let mut acc = self.c[i][j];
                // subtract contributions r[(i1,j1)] * o[(i-i1, j-j1)] except (i1,j1)=(i,j)
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        if i1 == i && j1 == j {
                            continue;
                        }
                        acc -= r.c[i1][j1] * o.c[i - i1][j - j1];
                    }
                }
                r.c[i][j] = acc / o.c[0][0];
            }
        }
        Ok(r)
    }

    pub fn recip(&self) -> Result<Jet2> {
        Jet2::constant(1.0, self.order).div(self)
    }

    /// Compose a univariate jet `table` (expanded at `self.value()`) with
    /// this bivariate jet, by Horner evaluation. This is how transcendental
    /// functions lift to two variables.
    pub fn apply_univariate(&self, table: &Jet) -> Jet2 {
        debug_assert!(
            (table.base() - self.value()).abs() <= 1e-9 * (1.0 + table.base().abs())
        );
        let order = self.order.min(table.order());
        let mut dg = self.truncated(order);
        dg.c[0][0] = 0.0;
        let mut r = Jet2::constant(table.coeff(order), order);
        for k in (0..order).rev() {
            r = r.mul(&dg).add_scalar(table.coeff(k));
        }
        r
    }

    fn univ(&self, f: impl FnOnce(&Jet) -> Jet) -> Jet2 {
        let t = Jet::variable(self.value(), self.order);
        self.apply_univariate(&f(&t))
    }

    fn univ_checked(&self, f: impl FnOnce(&Jet) -> Result<Jet>) -> Result<Jet2> {
        let t = Jet::variable(self.value(), self.order);
        Ok(self.apply_univariate(&f(&t)?))
    }

    pub fn sin(&self) -> Jet2 {
        self.univ(|t| t.sin())
    }

    pub fn cos(&self) -> Jet2 {
        self.univ(|t| t.cos())
    }

    pub fn exp(&self) -> Jet2 {
        self.univ(|t| t.exp())
    }

    pub fn atan(&self) -> Jet2 {
        self.univ(|t| t.atan())
    }

    pub fn tan(&self) -> Result<Jet2> {
        self.univ_checked(|t| t.tan())
    }

    pub fn ln(&self) -> Result<Jet2> {
        self.univ_checked(|t| t.ln())
    }

    pub fn sqrt(&self) -> Result<Jet2> {
        self.univ_checked(|t| t.sqrt())
    }

    pub fn powf(&self, p: f64) -> Result<Jet2> {
        self.univ_checked(|t| t.powf(p))
    }

    pub fn abs(&self) -> Result<Jet2> {
        if self.c[0][0] > 0.0 {
            Ok(*self)
        } else if self.c[0][0] < 0.0 {
            Ok(self.neg())
        } else if self.order == 0 {
            Ok(*self)
        } else {
            Err(Error::Domain("abs is not differentiable at zero".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn product_partials() {
        // f(u,v) = u^2 v at (2, 3)
        let u = Jet2::variable_u(2.0, 3);
        let v = Jet2::variable_v(3.0, 3);
        let f = u.mul(&u).mul(&v);
        assert_relative_eq!(f.value(), 12.0);
        assert_relative_eq!(f.partial(1, 0), 12.0); // 2uv
        assert_relative_eq!(f.partial(0, 1), 4.0); // u^2
        assert_relative_eq!(f.partial(1, 1), 4.0); // 2u
        assert_relative_eq!(f.partial(2, 0), 6.0); // 2v
        assert_relative_eq!(f.partial(2, 1), 2.0);
        assert_relative_eq!(f.partial(3, 0), 0.0);
    }

    #[test]
    fn transcendental_mixed_partial() {
        // f(u,v) = sin(u v): f_uv = cos(uv) - uv sin(uv)
        let (u0, v0) = (0.7, -0.4);
        let u = Jet2::variable_u(u0, 3);
        let v = Jet2::variable_v(v0, 3);
        let f = u.mul(&v).sin();
        let x = u0 * v0;
        assert_relative_eq!(f.partial(1, 1), x.cos() - x * x.sin(), epsilon = 1e-12);
        let uuv = -2.0 * v0 * x.sin() - u0 * v0 * v0 * x.cos();
        assert_relative_eq!(f.partial(2, 1), uuv, epsilon = 1e-12);
    }

    #[test]
    fn division_roundtrip() {
        let u = Jet2::variable_u(1.2, 4);
        let v = Jet2::variable_v(0.3, 4);
        let f = u.sin().add(&v.exp());
        let g = u.mul(&v).add_scalar(2.0);
        let q = f.div(&g).unwrap();
        let back = q.mul(&g);
        for i in 0..=4 {
            for j in 0..=(4 - i) {
                assert_relative_eq!(back.coeff(i, j), f.coeff(i, j), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let u = Jet2::variable_u(0.9, 4);
        let v = Jet2::variable_v(1.1, 4);
        let f = u.mul(&u).add(&v.mul(&v)).add_scalar(0.5);
        let s = f.sqrt().unwrap();
        let back = s.mul(&s);
        for i in 0..=4 {
            for j in 0..=(4 - i) {
                assert_relative_eq!(back.coeff(i, j), f.coeff(i, j), epsilon = 1e-12);
            }
        }
    }
}
