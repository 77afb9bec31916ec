//! Jet providers for curves and surfaces: a uniform way to ask for
//! derivatives of a parametrized object at a point, whether the object is
//! backed by expressions, by a sample grid, or by a derived construction
//! (reparametrization, group motion, reconstruction).

mod analytic;
mod reparam;
mod sampled;
mod transform;

pub use analytic::{AnalyticCurve, AnalyticSurface};
pub use reparam::{
    adaptive_simpson, arclength_derivatives, reparametrize, DensityFn, ReparamTable,
};
pub use sampled::{SampledCurve, SampledSurface};
pub use transform::{compose_input, planar_transform, reversed};

use crate::error::{Error, Result};
use crate::expr::ExprAst;
use crate::jet::{Jet, MAX_ORDER};
use crate::jet2::{Jet2, MAX_ORDER2};
use std::sync::Arc;

/// Derivative source behind a [`CurveProvider`].
pub trait CurveSource: Send + Sync {
    fn dim(&self) -> usize;
    fn max_order(&self) -> usize;
    fn jet(&self, t: f64, order: usize) -> Result<Vec<Jet>>;
}

/// Derivative source behind a [`SurfaceProvider`].
pub trait SurfaceSource: Send + Sync {
    fn dim(&self) -> usize;
    fn max_order(&self) -> usize;
    fn jet2(&self, u: f64, v: f64, order: usize) -> Result<Vec<Jet2>>;
}

/// A parametrized curve with component-wise jets over a parameter interval.
#[derive(Clone)]
pub struct CurveProvider {
    source: Arc<dyn CurveSource>,
    t_min: f64,
    t_max: f64,
    periodic: bool,
}

impl CurveProvider {
    pub fn new(source: Arc<dyn CurveSource>, t_min: f64, t_max: f64, periodic: bool) -> Self {
        assert!(t_max > t_min, "empty parameter interval");
        CurveProvider {
            source,
            t_min,
            t_max,
            periodic,
        }
    }

    /// Expression-backed curve, one expression per component, single
    /// parameter variable.
    pub fn analytic(
        components: &[&str],
        variable: &str,
        domain: (f64, f64),
        periodic: bool,
    ) -> Result<Self> {
        let src = AnalyticCurve::parse(components, variable)?;
        Ok(Self::new(Arc::new(src), domain.0, domain.1, periodic))
    }

    pub fn from_asts(asts: Vec<ExprAst>, domain: (f64, f64), periodic: bool) -> Result<Self> {
        let src = AnalyticCurve::from_asts(asts)?;
        Ok(Self::new(Arc::new(src), domain.0, domain.1, periodic))
    }

    /// Uniformly sampled curve; jets come from centered 7-point stencils,
    /// so the usable domain of a non-periodic curve shrinks by three steps
    /// at each end.
    pub fn from_samples(
        points: Vec<Vec<f64>>,
        t0: f64,
        h: f64,
        periodic: bool,
    ) -> Result<Self> {
        let n = points.len();
        if n < 11 {
            return Err(Error::InvalidInput(format!(
                "sampled curves need at least 11 points, got {n}"
            )));
        }
        let src = SampledCurve::new(points, t0, h, periodic)?;
        let (t_min, t_max) = if periodic {
            (t0, t0 + h * n as f64)
        } else {
            (t0 + 3.0 * h, t0 + h * (n as f64 - 4.0))
        };
        Ok(Self::new(Arc::new(src), t_min, t_max, periodic))
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.t_min, self.t_max)
    }

    pub fn span(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn periodic(&self) -> bool {
        self.periodic
    }

    pub fn max_order(&self) -> usize {
        self.source.max_order().min(MAX_ORDER)
    }

    pub fn source(&self) -> &Arc<dyn CurveSource> {
        &self.source
    }

    /// Map a parameter into the domain, wrapping if periodic.
    pub fn clamp_param(&self, t: f64) -> Result<f64> {
        if self.periodic {
            let span = self.span();
            Ok(self.t_min + (t - self.t_min).rem_euclid(span))
        } else {
            let eps = 1e-12 * (1.0 + self.span());
            if t < self.t_min - eps || t > self.t_max + eps {
                return Err(Error::OutOfDomain {
                    value: t,
                    min: self.t_min,
                    max: self.t_max,
                });
            }
            Ok(t.clamp(self.t_min, self.t_max))
        }
    }

    /// Component-wise jets at `t`.
    pub fn jet(&self, t: f64, order: usize) -> Result<Vec<Jet>> {
        if order > self.max_order() {
            return Err(Error::OrderUnavailable {
                requested: order,
                max: self.max_order(),
            });
        }
        let t = self.clamp_param(t)?;
        self.source.jet(t, order)
    }

    /// Point value at `t`.
    pub fn point(&self, t: f64) -> Result<Vec<f64>> {
        Ok(self.jet(t, 0)?.iter().map(|j| j.value()).collect())
    }

    /// Uniform parameter samples including both endpoints (or the full
    /// period for periodic curves, endpoint excluded).
    pub fn sample_params(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2);
        let (a, b) = self.domain();
        if self.periodic {
            (0..n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
        } else {
            (0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect()
        }
    }
}

/// A parametrized surface patch with bivariate jets.
#[derive(Clone)]
pub struct SurfaceProvider {
    source: Arc<dyn SurfaceSource>,
    u_domain: (f64, f64),
    v_domain: (f64, f64),
    periodic_u: bool,
    periodic_v: bool,
}

impl SurfaceProvider {
    pub fn new(
        source: Arc<dyn SurfaceSource>,
        u_domain: (f64, f64),
        v_domain: (f64, f64),
        periodic_u: bool,
        periodic_v: bool,
    ) -> Self {
        assert!(u_domain.1 > u_domain.0 && v_domain.1 > v_domain.0);
        SurfaceProvider {
            source,
            u_domain,
            v_domain,
            periodic_u,
            periodic_v,
        }
    }

    pub fn analytic(
        components: &[&str],
        variables: (&str, &str),
        u_domain: (f64, f64),
        v_domain: (f64, f64),
        periodic_u: bool,
        periodic_v: bool,
    ) -> Result<Self> {
        let src = AnalyticSurface::parse(components, variables)?;
        Ok(Self::new(
            Arc::new(src),
            u_domain,
            v_domain,
            periodic_u,
            periodic_v,
        ))
    }

    pub fn from_grid(
        points: Vec<Vec<Vec<f64>>>,
        u0: f64,
        hu: f64,
        v0: f64,
        hv: f64,
        periodic_u: bool,
        periodic_v: bool,
    ) -> Result<Self> {
        let nu = points.len();
        if nu < 11 || points[0].len() < 11 {
            return Err(Error::InvalidInput(
                "sampled surfaces need at least an 11x11 grid".into(),
            ));
        }
        let nv = points[0].len();
        let src = SampledSurface::new(points, u0, hu, v0, hv, periodic_u, periodic_v)?;
        let u_domain = if periodic_u {
            (u0, u0 + hu * nu as f64)
        } else {
            (u0 + 3.0 * hu, u0 + hu * (nu as f64 - 4.0))
        };
        let v_domain = if periodic_v {
            (v0, v0 + hv * nv as f64)
        } else {
            (v0 + 3.0 * hv, v0 + hv * (nv as f64 - 4.0))
        };
        Ok(Self::new(
            Arc::new(src),
            u_domain,
            v_domain,
            periodic_u,
            periodic_v,
        ))
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn u_domain(&self) -> (f64, f64) {
        self.u_domain
    }

    pub fn v_domain(&self) -> (f64, f64) {
        self.v_domain
    }

    pub fn periodic(&self) -> (bool, bool) {
        (self.periodic_u, self.periodic_v)
    }

    pub fn max_order(&self) -> usize {
        self.source.max_order().min(MAX_ORDER2)
    }

    pub fn source(&self) -> &Arc<dyn SurfaceSource> {
        &self.source
    }

    fn clamp_axis(t: f64, dom: (f64, f64), periodic: bool) -> Result<f64> {
        if periodic {
            let span = dom.1 - dom.0;
            Ok(dom.0 + (t - dom.0).rem_euclid(span))
        } else {
            let eps = 1e-12 * (1.0 + dom.1 - dom.0);
            if t < dom.0 - eps || t > dom.1 + eps {
                return Err(Error::OutOfDomain {
                    value: t,
                    min: dom.0,
                    max: dom.1,
                });
            }
            Ok(t.clamp(dom.0, dom.1))
        }
    }

    pub fn jet2(&self, u: f64, v: f64, order: usize) -> Result<Vec<Jet2>> {
        if order > self.max_order() {
            return Err(Error::OrderUnavailable {
                requested: order,
                max: self.max_order(),
            });
        }
        let u = Self::clamp_axis(u, self.u_domain, self.periodic_u)?;
        let v = Self::clamp_axis(v, self.v_domain, self.periodic_v)?;
        self.source.jet2(u, v, order)
    }

    pub fn point(&self, u: f64, v: f64) -> Result<Vec<f64>> {
        Ok(self.jet2(u, v, 0)?.iter().map(|j| j.value()).collect())
    }

    /// Grid of parameter samples per axis (periodic axes exclude the seam
    /// duplicate).
    pub fn grid_params(&self, nu: usize, nv: usize) -> (Vec<f64>, Vec<f64>) {
        let us = axis_params(self.u_domain, self.periodic_u, nu);
        let vs = axis_params(self.v_domain, self.periodic_v, nv);
        (us, vs)
    }
}

fn axis_params(dom: (f64, f64), periodic: bool, n: usize) -> Vec<f64> {
    if periodic {
        (0..n)
            .map(|i| dom.0 + (dom.1 - dom.0) * i as f64 / n as f64)
            .collect()
    } else {
        (0..n)
            .map(|i| dom.0 + (dom.1 - dom.0) * i as f64 / (n - 1) as f64)
            .collect()
    }
}
