use serde::Serialize;

use super::{difference_term, grass_trilog_closed, lie_trilog};
use crate::configspace::{try_alternate, Configuration, Scalar};
use crate::error::{Error, Result};
use crate::formeval::{
    eval_r, eval_r_germs, log_product_derivative, oneform_grass_13, oneform_lie_13, ChartPoint, FunctionSystem, LogGerm,
    Presentation, TangentVector,
};

/// Which weight-3 function a functional equation is tested on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrilogFn {
    Closed,
    Lie,
    Diff,
}

impl TrilogFn {
    pub fn eval<S: Scalar>(self, config: &Configuration<S>) -> Result<f64> {
        match self {
            TrilogFn::Closed => Ok(grass_trilog_closed(config)?.closed),
            TrilogFn::Lie => lie_trilog(config),
            TrilogFn::Diff => difference_term(config),
        }
    }
}

/// Outcome of an identity check: the signed residual, the magnitude it is
/// measured against, and the individual terms where there are several.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquationResidual {
    pub residual: f64,
    pub scale: f64,
    pub terms: Vec<f64>,
}

impl EquationResidual {
    fn from_terms(terms: Vec<f64>) -> Self {
        let residual = terms.iter().sum();
        let scale = terms.iter().map(|t| t.abs()).sum();
        EquationResidual { residual, scale, terms }
    }

    fn difference(lhs: f64, rhs: f64) -> Self {
        EquationResidual {
            residual: lhs - rhs,
            scale: lhs.abs().max(rhs.abs()),
            terms: vec![lhs, rhs],
        }
    }

    /// `|residual| / scale`, or `|residual|` when the scale vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual.abs() / self.scale
        } else {
            self.residual.abs()
        }
    }
}

fn check_shape<S: Scalar>(config: &Configuration<S>, len: usize, dim: usize) -> Result<()> {
    if config.len() != len || config.dim() != dim {
        return Err(Error::Size(format!(
            "expected {len} vectors in dimension {dim}, got {} in dimension {}",
            config.len(),
            config.dim()
        )));
    }
    Ok(())
}

/// `sum_i (-1)^i f(points without point i)` for seven points in dimension 3.
pub fn check_drop_equation<S: Scalar>(points: &Configuration<S>, f: TrilogFn) -> Result<EquationResidual> {
    check_shape(points, 7, 3)?;
    let terms = (0..7)
        .map(|i| Ok(if i % 2 == 0 { 1.0 } else { -1.0 } * f.eval(&points.drop(i)?)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(EquationResidual::from_terms(terms))
}

/// `sum_i (-1)^i f(points projected from point i)` for seven points in dimension 4.
pub fn check_projection_equation<S: Scalar>(points: &Configuration<S>, f: TrilogFn) -> Result<EquationResidual> {
    check_shape(points, 7, 4)?;
    let terms = (0..7)
        .map(|i| Ok(if i % 2 == 0 { 1.0 } else { -1.0 } * f.eval(&points.project(i)?)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(EquationResidual::from_terms(terms))
}

/// `L^G_{1;3} - L^G_{1;3}(Lie) - (1/9) d Alt_5{log|Delta(24)| log|Delta(14)| log|Delta(02)|}`
/// along a configuration-space direction; `terms` holds the three pieces.
pub fn check_oneform_difference(
    config: &Configuration<num_complex::Complex64>,
    w: &[Vec<num_complex::Complex64>],
) -> Result<EquationResidual> {
    check_shape(config, 5, 2)?;
    let grass = oneform_grass_13(config, w)?;
    let lie = oneform_lie_13(config, w)?;
    let exact = log_product_derivative(config, w)? / 9.0;
    Ok(EquationResidual {
        residual: grass - lie - exact,
        scale: grass.abs() + lie.abs() + exact.abs(),
        terms: vec![grass, lie, exact],
    })
}

fn linear_germs<S: Scalar>(config: &Configuration<S>, p: &ChartPoint, ws: &[TangentVector]) -> Result<Vec<LogGerm>> {
    let x = p.homogeneous();
    let dirs = ws.iter().map(|w| p.lift(w)).collect::<Result<Vec<_>>>()?;
    config
        .to_float()
        .vectors()
        .iter()
        .map(|l| LogGerm::of_linear(l, &x, &dirs))
        .collect()
}

/// `(1/2) Alt_3 r_2(l_i, l_j)` on `C^2` against `r_2(l_1/l_0, l_2/l_0)` on `CP^1`.
pub fn check_weight2_oneform<S: Scalar>(
    config: &Configuration<S>,
    p: &ChartPoint,
    w: &TangentVector,
) -> Result<EquationResidual> {
    check_shape(config, 3, 2)?;
    if !config.is_generic() {
        return Err(Error::Degenerate("two of the covectors are proportional".into()));
    }
    let g = linear_germs(config, p, std::slice::from_ref(w))?;
    let lhs = try_alternate(3, |s| {
        Ok(eval_r_germs(&[g[s[0]].clone(), g[s[1]].clone()], Presentation::Definition)?.value)
    })? / 2.0;
    let fs = FunctionSystem::from_configuration(&config.to_float())?;
    let rhs = eval_r(2, &fs, p, std::slice::from_ref(w), Presentation::Definition)?.value;
    Ok(EquationResidual::difference(lhs, rhs))
}

/// `-(1/6) Alt_4 r_3(l_0, l_1, l_2)` on `C^2` against `r_3(f_1, f_2, f_3)` on
/// `CP^1`, both on two tangent vectors.
pub fn check_weight3_twoform<S: Scalar>(
    config: &Configuration<S>,
    p: &ChartPoint,
    ws: &[TangentVector; 2],
) -> Result<EquationResidual> {
    check_shape(config, 4, 2)?;
    let g = linear_germs(config, p, ws)?;
    let lhs = -try_alternate(4, |s| {
        Ok(eval_r_germs(&[g[s[0]].clone(), g[s[1]].clone(), g[s[2]].clone()], Presentation::Definition)?.value)
    })? / 6.0;
    let fs = FunctionSystem::from_configuration(&config.to_float())?;
    let rhs = eval_r(3, &fs, p, ws, Presentation::Definition)?.value;
    Ok(EquationResidual::difference(lhs, rhs))
}
