//! Per-space decoding, scheme construction and embedding-dependent analyses.

use std::f64::consts::TAU;

use subdiv_core::analysis::{
    approximation_experiment, check_proximity_type2, divided_differences, ApproxOrderReport, DividedDiffTrace,
    ProximityType2Report,
};
use subdiv_core::metric::{Boundary, ElementSequence, EuclideanEmbedding, FnCurve};
use subdiv_core::schemes::{
    Averaged, Elementary, HermiteBezier, HermiteNaive, LaneRiesenfeld, Refinement, SubdivisionRun,
};
use subdiv_core::spaces::{
    Atom, Euclidean, FiniteSet, HermitePair, HermiteSpace, Measure, SetSpace, Sphere, SpherePoint, Wasserstein,
};
use subdiv_core::{Error as CoreError, MetricSpace};

use crate::config::{CurveConfig, SchemeConfig};
use crate::data::{DataFile, PairData};
use crate::error::{invalid, CliResult};

pub type DynScheme<S> = Box<dyn Refinement<S> + Send + Sync>;

/// Parameters of a second-type proximity run.
#[derive(Debug, Clone, Copy)]
pub struct Prox2 {
    pub l: usize,
    pub blocks: usize,
    pub burn_in: usize,
}

/// Parameters of an approximation-order experiment.
#[derive(Debug, Clone)]
pub struct Approx {
    pub curve: CurveConfig,
    pub hs: Vec<f64>,
    pub levels: usize,
    pub samples: usize,
}

pub fn linear_scheme<S: MetricSpace>(cfg: &SchemeConfig) -> CliResult<DynScheme<S>> {
    Ok(match *cfg {
        SchemeConfig::Elementary => Box::new(Elementary),
        SchemeConfig::Chaikin => Box::new(Averaged::chaikin()),
        SchemeConfig::Averaged { omega } => Box::new(Averaged::new(omega).map_err(|e| invalid(e.to_string()))?),
        SchemeConfig::LaneRiesenfeld { rounds } => Box::new(LaneRiesenfeld::new(rounds)),
        SchemeConfig::HermiteNaive | SchemeConfig::HermiteBezier => {
            return Err(invalid(format!("scheme {} needs Hermite data", cfg.id())))
        }
    })
}

fn unsupported<T>(what: &str, space: &str) -> CliResult<T> {
    Err(CoreError::Capability(format!("{what} is not available on the {space} backend")).into())
}

fn sequence<E>(elems: Vec<E>, closed: bool) -> CliResult<ElementSequence<E>> {
    let b = if closed { Boundary::Closed } else { Boundary::Open };
    Ok(ElementSequence::new(elems, b)?)
}

fn check_vec(v: &[f64], dim: usize, what: &str, i: usize) -> CliResult<()> {
    if v.len() != dim {
        return Err(invalid(format!("{what} {i} has dimension {} (expected {dim})", v.len())));
    }
    if let Some(x) = v.iter().find(|x| !x.is_finite()) {
        return Err(invalid(format!("{what} {i} has non-finite coordinate {x}")));
    }
    Ok(())
}

fn wrong_space<T>(expected: &str, data: &DataFile) -> CliResult<T> {
    Err(invalid(format!(
        "data is for space {} but the config uses {expected}",
        data.space()
    )))
}

fn check_dim(expected: usize, got: usize) -> CliResult<()> {
    if expected != got {
        return Err(invalid(format!("data dimension {got} does not match space dimension {expected}")));
    }
    Ok(())
}

/// A space the runner can load data into and run every analysis over.
pub trait Backend: MetricSpace + Clone + Send + Sync
where
    Self::Element: Send + Sync,
{
    fn decode(&self, data: &DataFile) -> CliResult<ElementSequence<Self::Element>>;

    fn encode(&self, elems: &[Self::Element], closed: bool) -> DataFile;

    fn scheme(&self, cfg: &SchemeConfig) -> CliResult<DynScheme<Self>> {
        linear_scheme(cfg)
    }

    fn divided_diff(&self, _run: &SubdivisionRun<Self>, _samples: usize) -> CliResult<DividedDiffTrace> {
        unsupported("divided-diff", self.name())
    }

    /// Second-type proximity of a linear scheme refining the embedded data.
    fn proximity2_embedded(
        &self,
        _s1: &dyn Refinement<Self>,
        _s2: &SchemeConfig,
        _p: ElementSequence<Self::Element>,
        _params: Prox2,
    ) -> CliResult<ProximityType2Report> {
        unsupported("embedded proximity2", self.name())
    }

    fn approx_order(&self, _scheme: &dyn Refinement<Self>, _params: &Approx) -> CliResult<ApproxOrderReport> {
        unsupported("approx-order", self.name())
    }
}

fn embedded_prox2<S>(
    space: &S,
    dim: usize,
    s1: &dyn Refinement<S>,
    s2: &SchemeConfig,
    p: ElementSequence<S::Element>,
    params: Prox2,
) -> CliResult<ProximityType2Report>
where
    S: EuclideanEmbedding + Clone,
{
    let s2 = linear_scheme::<Euclidean>(s2)?;
    Ok(check_proximity_type2(
        space,
        &s1,
        &Euclidean::new(dim),
        &s2.as_ref(),
        |x: &S::Element| space.embed(x),
        p,
        params.l,
        params.blocks,
        params.burn_in,
    )?)
}

/// Spacings given as fractions of the curve period.
fn absolute_hs(hs: &[f64], period: f64) -> Vec<f64> {
    hs.iter().map(|h| h * period).collect()
}

impl Backend for Euclidean {
    fn decode(&self, data: &DataFile) -> CliResult<ElementSequence<Vec<f64>>> {
        let DataFile::Euclidean { dim, closed, points } = data else {
            return wrong_space("euclidean", data);
        };
        check_dim(self.dim(), *dim)?;
        for (i, p) in points.iter().enumerate() {
            check_vec(p, *dim, "point", i)?;
        }
        sequence(points.clone(), *closed)
    }

    fn encode(&self, elems: &[Vec<f64>], closed: bool) -> DataFile {
        DataFile::Euclidean {
            dim: self.dim(),
            closed,
            points: elems.to_vec(),
        }
    }

    fn divided_diff(&self, run: &SubdivisionRun<Self>, samples: usize) -> CliResult<DividedDiffTrace> {
        Ok(divided_differences(run, samples)?)
    }

    fn proximity2_embedded(
        &self,
        s1: &dyn Refinement<Self>,
        s2: &SchemeConfig,
        p: ElementSequence<Vec<f64>>,
        params: Prox2,
    ) -> CliResult<ProximityType2Report> {
        embedded_prox2(self, self.dim(), s1, s2, p, params)
    }

    fn approx_order(&self, scheme: &dyn Refinement<Self>, params: &Approx) -> CliResult<ApproxOrderReport> {
        let CurveConfig::Circle { radius } = params.curve else {
            return Err(invalid("euclidean approx-order supports the circle curve"));
        };
        if self.dim() < 2 || radius.is_nan() || radius <= 0.0 {
            return Err(invalid("circle curve needs dimension >= 2 and a positive radius"));
        }
        let dim = self.dim();
        let period = TAU * radius;
        let gamma = FnCurve::periodic(0.0, period, |s: f64| {
            let mut x = vec![0.0; dim];
            x[0] = radius * (s / radius).cos();
            x[1] = radius * (s / radius).sin();
            Ok(x)
        });
        let hs = absolute_hs(&params.hs, period);
        Ok(approximation_experiment(self, &scheme, &gamma, 1.0, &hs, params.levels, params.samples)?)
    }
}

impl Backend for Sphere {
    fn decode(&self, data: &DataFile) -> CliResult<ElementSequence<SpherePoint>> {
        let DataFile::Sphere { dim, closed, points } = data else {
            return wrong_space("sphere", data);
        };
        check_dim(self.dim(), *dim)?;
        let mut out = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            check_vec(p, *dim, "point", i)?;
            out.push(SpherePoint::new(p.clone()).map_err(|e| invalid(format!("point {i}: {e}")))?);
        }
        sequence(out, *closed)
    }

    fn encode(&self, elems: &[SpherePoint], closed: bool) -> DataFile {
        DataFile::Sphere {
            dim: self.dim(),
            closed,
            points: elems.iter().map(|p| p.as_slice().to_vec()).collect(),
        }
    }

    fn divided_diff(&self, run: &SubdivisionRun<Self>, samples: usize) -> CliResult<DividedDiffTrace> {
        Ok(divided_differences(run, samples)?)
    }

    fn proximity2_embedded(
        &self,
        s1: &dyn Refinement<Self>,
        s2: &SchemeConfig,
        p: ElementSequence<SpherePoint>,
        params: Prox2,
    ) -> CliResult<ProximityType2Report> {
        embedded_prox2(self, self.dim(), s1, s2, p, params)
    }

    fn approx_order(&self, scheme: &dyn Refinement<Self>, params: &Approx) -> CliResult<ApproxOrderReport> {
        let CurveConfig::SmallCircle { height } = params.curve else {
            return Err(invalid("sphere approx-order supports the small-circle curve"));
        };
        if self.dim() != 3 || height.is_nan() || height.abs() >= 1.0 {
            return Err(invalid("small-circle curve needs the 2-sphere in R^3 and |height| < 1"));
        }
        let rho = (1.0 - height * height).sqrt();
        let period = TAU * rho;
        let gamma = FnCurve::periodic(0.0, period, |s: f64| {
            SpherePoint::new(vec![rho * (s / rho).cos(), rho * (s / rho).sin(), height])
        });
        let hs = absolute_hs(&params.hs, period);
        Ok(approximation_experiment(self, &scheme, &gamma, 1.0, &hs, params.levels, params.samples)?)
    }
}

impl Backend for HermiteSpace {
    fn decode(&self, data: &DataFile) -> CliResult<ElementSequence<HermitePair>> {
        let DataFile::Hermite { dim, closed, pairs } = data else {
            return wrong_space("hermite", data);
        };
        check_dim(self.dim(), *dim)?;
        let mut out = Vec::with_capacity(pairs.len());
        for (i, PairData { p, v }) in pairs.iter().enumerate() {
            check_vec(p, *dim, "pair point", i)?;
            check_vec(v, *dim, "pair tangent", i)?;
            out.push(HermitePair::new(p.clone(), v.clone()).map_err(|e| invalid(format!("pair {i}: {e}")))?);
        }
        sequence(out, *closed)
    }

    fn encode(&self, elems: &[HermitePair], closed: bool) -> DataFile {
        DataFile::Hermite {
            dim: self.dim(),
            closed,
            pairs: elems
                .iter()
                .map(|h| PairData {
                    p: h.p.clone(),
                    v: h.v.as_slice().to_vec(),
                })
                .collect(),
        }
    }

    fn scheme(&self, cfg: &SchemeConfig) -> CliResult<DynScheme<Self>> {
        Ok(match cfg {
            SchemeConfig::HermiteNaive => Box::new(HermiteNaive),
            SchemeConfig::HermiteBezier => Box::new(HermiteBezier),
            other => linear_scheme(other)?,
        })
    }
}

impl Backend for SetSpace {
    fn decode(&self, data: &DataFile) -> CliResult<ElementSequence<FiniteSet>> {
        let DataFile::Sets { dim, closed, sets } = data else {
            return wrong_space("sets", data);
        };
        check_dim(self.dim(), *dim)?;
        let mut out = Vec::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            for p in s {
                check_vec(p, *dim, "set", i)?;
            }
            out.push(
                FiniteSet::with_tolerance(s.clone(), self.tolerance()).map_err(|e| invalid(format!("set {i}: {e}")))?,
            );
        }
        sequence(out, *closed)
    }

    fn encode(&self, elems: &[FiniteSet], closed: bool) -> DataFile {
        DataFile::Sets {
            dim: self.dim(),
            closed,
            sets: elems.iter().map(|s| s.points().to_vec()).collect(),
        }
    }
}

impl Backend for Wasserstein {
    fn decode(&self, data: &DataFile) -> CliResult<ElementSequence<Measure>> {
        let DataFile::Wasserstein { closed, measures } = data else {
            return wrong_space("wasserstein", data);
        };
        let mut out = Vec::with_capacity(measures.len());
        for (i, m) in measures.iter().enumerate() {
            let atoms = m.atoms.iter().map(|a| Atom { x: a.x, w: a.w }).collect();
            out.push(Measure::new(atoms).map_err(|e| invalid(format!("measure {i}: {e}")))?);
        }
        sequence(out, *closed)
    }

    fn encode(&self, elems: &[Measure], closed: bool) -> DataFile {
        DataFile::measures(elems, closed)
    }
}
