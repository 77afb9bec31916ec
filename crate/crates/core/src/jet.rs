//! Truncated Taylor expansions ("jets") of scalar functions of one variable.
//!
//! A [`Jet`] carries the value and derivatives of a function at a base point,
//! up to order [`MAX_ORDER`]. Arithmetic propagates derivatives exactly (to
//! roundoff), which is what the downstream frame constructions rely on: every
//! invariant in this crate is ultimately a rational/algebraic expression in
//! curve jets.

use crate::error::{Error, Result};

/// Hard cap on jet order. The deepest consumer (the conformal curve
/// adaptation) needs order 7; the cap leaves headroom while keeping the
/// storage a small fixed array.
pub const MAX_ORDER: usize = 8;

const FACT: [f64; MAX_ORDER + 1] = [
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0,
];

/// Value plus derivatives of a scalar function at a base point.
///
/// Internally stores normalized Taylor coefficients `c[k] = f^(k)(t0)/k!`;
/// the [`derivative`](Jet::derivative) accessor converts back. The order of
/// any combined jet is the minimum of the operand orders.
#[derive(Clone, Copy, Debug)]
pub struct Jet {
    base: f64,
    order: usize,
    c: [f64; MAX_ORDER + 1],
}

impl Jet {
    pub fn constant(value: f64, order: usize, base: f64) -> Self {
        assert!(order <= MAX_ORDER);
        let mut c = [0.0; MAX_ORDER + 1];
        c[0] = value;
        Jet { base, order, c }
    }

    /// The identity function `t` expanded at `t0`.
    pub fn variable(t0: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER);
        let mut c = [0.0; MAX_ORDER + 1];
        c[0] = t0;
        if order >= 1 {
            c[1] = 1.0;
        }
        Jet {
            base: t0,
            order,
            c,
        }
    }

    /// Build from derivative values `d[k] = f^(k)(t0)`.
    pub fn from_derivatives(d: &[f64], base: f64) -> Self {
        assert!(!d.is_empty() && d.len() <= MAX_ORDER + 1);
        let order = d.len() - 1;
        let mut c = [0.0; MAX_ORDER + 1];
        for (k, dk) in d.iter().enumerate() {
            c[k] = dk / FACT[k];
        }
        Jet { base, order, c }
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative value at the base point.
    pub fn derivative(&self, k: usize) -> f64 {
        assert!(k <= self.order, "derivative order {k} exceeds jet order {}", self.order);
        self.c[k] * FACT[k]
    }

    /// All stored derivative values `[f, f', .., f^(order)]`.
    pub fn derivatives(&self) -> Vec<f64> {
        (0..=self.order).map(|k| self.derivative(k)).collect()
    }

    /// Taylor coefficient `f^(k)(t0)/k!`.
    pub fn coeff(&self, k: usize) -> f64 {
        self.c[k]
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut c = [0.0; MAX_ORDER + 1];
        c[..=order].copy_from_slice(&self.c[..=order]);
        Jet {
            base: self.base,
            order,
            c,
        }
    }

    /// Jet of the derivative function f', one order lower.
    pub fn deriv(&self) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let mut c = [0.0; MAX_ORDER + 1];
        for k in 0..=order {
            c[k] = self.c[k + 1] * (k as f64 + 1.0);
        }
        Jet {
            base: self.base,
            order,
            c,
        }
    }

    /// Jet of an antiderivative with value `c0` at the base point, one order
    /// higher (capped at MAX_ORDER).
    pub fn integrate(&self, c0: f64) -> Self {
        let order = (self.order + 1).min(MAX_ORDER);
        let mut c = [0.0; MAX_ORDER + 1];
        c[0] = c0;
        for k in 1..=order {
            c[k] = self.c[k - 1] / k as f64;
        }
        Jet {
            base: self.base,
            order,
            c,
        }
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut c = [0.0; MAX_ORDER + 1];
        for k in 0..=order {
            c[k] = self.c[k] + o.c[k];
        }
        Jet {
            base: self.base,
            order,
            c,
        }
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut c = [0.0; MAX_ORDER + 1];
        for k in 0..=order {
            c[k] = self.c[k] - o.c[k];
        }
        Jet {
            base: self.base,
            order,
            c,
        }
    }

    pub fn neg(&self) -> Jet {
        let mut c = [0.0; MAX_ORDER + 1];
        for k in 0..=self.order {
            c[k] = -self.c[k];
        }
        Jet {
            base: self.base,
            order: self.order,
            c,
        }
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut c = [0.0; MAX_ORDER + 1];
        for k in 0..=self.order {
            c[k] = self.c[k] * s;
        }
        Jet {
            base: self.base,
            order: self.order,
            c,
        }
    }

    pub fn add_scalar(&self, s: f64) -> Jet {
        let mut r = *self;
        r.c[0] += s;
        r
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut c = [0.0; MAX_ORDER + 1];
        for n in 0..=order {
            let mut acc = 0.0;
            for k in 0..=n {
                acc += self.c[k] * o.c[n - k];
            }
            c[n] = acc;
        }
        Jet {
            base: self.base,
            order,
            c,
        }
    }

    pub fn div(&self, o: &Jet) -> Result<Jet> {
        if o.c[0] == 0.0 {
            return Err(Error::Domain(
                "division by zero at the base point".into(),
            ));
        }
        let order = self.order.min(o.order);
        let mut c = [0.0; MAX_ORDER + 1];
        for n in 0..=order {
            let mut acc = self.c[n];
            for k in 0..n {
                acc -= c[k] * o.c[n - k];
            }
            c[n] = acc / o.c[0];
        }
        Ok(Jet {
            base: self.base,
            order,
            c,
        })
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(1.0, self.order, self.base).div(self)
    }

    pub fn exp(&self) -> Jet {
        let mut c = [0.0; MAX_ORDER + 1];
        c[0] = self.c[0].exp();
        for n in 1..=self.order {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += k as f64 * self.c[k] * c[n - k];
            }
            c[n] = acc / n as f64;
        }
        Jet {
            base: self.base,
            order: self.order,
            c,
        }
    }

    pub fn ln(&self) -> Result<Jet> {
        if self.c[0] <= 0.0 {
            return Err(Error::Domain(format!(
                "log of non-positive value {} at the base point",
                self.c[0]
            )));
        }
        let mut c = [0.0; MAX_ORDER + 1];
        c[0] = self.c[0].ln();
        for n in 1..=self.order {
            let mut acc = self.c[n];
            for k in 1..n {
                acc -= (k as f64 / n as f64) * c[k] * self.c[n - k];
            }
            c[n] = acc / self.c[0];
        }
        Ok(Jet {
            base: self.base,
            order: self.order,
            c,
        })
    }

    pub fn sin_cos(&self) -> (Jet, Jet) {
        let mut s = [0.0; MAX_ORDER + 1];
        let mut co = [0.0; MAX_ORDER + 1];
        s[0] = self.c[0].sin();
        co[0] = self.c[0].cos();
        for n in 1..=self.order {
            let mut sa = 0.0;
            let mut ca = 0.0;
            for k in 1..=n {
                sa += k as f64 * self.c[k] * co[n - k];
                ca += k as f64 * self.c[k] * s[n - k];
            }
            s[n] = sa / n as f64;
            co[n] = -ca / n as f64;
        }
        (
            Jet {
                base: self.base,
                order: self.order,
                c: s,
            },
            Jet {
                base: self.base,
                order: self.order,
                c: co,
            },
        )
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    pub fn tan(&self) -> Result<Jet> {
        let (s, c) = self.sin_cos();
        if c.c[0] == 0.0 {
            return Err(Error::Domain("tan pole at the base point".into()));
        }
        s.div(&c)
    }

    pub fn atan(&self) -> Jet {
        if self.order == 0 {
            return Jet::constant(self.c[0].atan(), 0, self.base);
        }
        // atan(g)' = g' / (1 + g^2)
        let one_plus = self.mul(self).add_scalar(1.0);
        let q = self.deriv().div(&one_plus.truncated(self.order - 1)).unwrap();
        q.integrate(self.c[0].atan()).truncated(self.order)
    }

    /// Power with a constant real exponent. Integer exponents work for any
    /// base (negative included); fractional exponents require a positive
    /// base value.
    pub fn powf(&self, p: f64) -> Result<Jet> {
        if p == p.round() && p.abs() <= 64.0 {
            return self.powi(p as i64);
        }
        if self.c[0] <= 0.0 {
            return Err(Error::Domain(format!(
                "fractional power {p} of non-positive base {} at the base point",
                self.c[0]
            )));
        }
        let mut c = [0.0; MAX_ORDER + 1];
        c[0] = self.c[0].powf(p);
        for n in 1..=self.order {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += (p * k as f64 - (n - k) as f64) * self.c[k] * c[n - k];
            }
            c[n] = acc / (n as f64 * self.c[0]);
        }
        Ok(Jet {
            base: self.base,
            order: self.order,
            c,
        })
    }

    pub fn powi(&self, n: i64) -> Result<Jet> {
        if n == 0 {
            return Ok(Jet::constant(1.0, self.order, self.base));
        }
        let mut e = n.unsigned_abs();
        let mut basej = *self;
        let mut acc = Jet::constant(1.0, self.order, self.base);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&basej);
            }
            e >>= 1;
            if e > 0 {
                basej = basej.mul(&basej);
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            Ok(acc)
        }
    }

    pub fn sqrt(&self) -> Result<Jet> {
        if self.c[0] <= 0.0 {
            return Err(Error::Domain(format!(
                "sqrt of non-positive value {} at the base point",
                self.c[0]
            )));
        }
        self.powf(0.5)
    }

    /// Signed cube root: sign(x) * |x|^(1/3). Needs a nonzero base value.
    pub fn cbrt_signed(&self) -> Result<Jet> {
        if self.c[0] > 0.0 {
            self.powf(1.0 / 3.0)
        } else if self.c[0] < 0.0 {
            Ok(self.neg().powf(1.0 / 3.0)?.neg())
        } else {
            Err(Error::Domain(
                "signed cube root of zero at the base point".into(),
            ))
        }
    }

    pub fn abs(&self) -> Result<Jet> {
        if self.c[0] > 0.0 {
            Ok(*self)
        } else if self.c[0] < 0.0 {
            Ok(self.neg())
        } else if self.order == 0 {
            Ok(*self)
        } else {
            Err(Error::Domain(
                "abs is not differentiable at zero".into(),
            ))
        }
    }

    /// Composition `outer ∘ inner`. `outer` must be expanded at
    /// `inner.value()`; the result is expanded at `inner.base()`.
    pub fn compose(outer: &Jet, inner: &Jet) -> Jet {
        debug_assert!(
            (outer.base - inner.c[0]).abs() <= 1e-9 * (1.0 + outer.base.abs()),
            "composition base mismatch"
        );
        let order = outer.order.min(inner.order);
        let mut du = inner.truncated(order);
        du.c[0] = 0.0;
        let mut r = Jet::constant(outer.c[order], order, inner.base);
        for k in (0..order).rev() {
            r = r.mul(&du).add_scalar(outer.c[k]);
        }
        r
    }
}
