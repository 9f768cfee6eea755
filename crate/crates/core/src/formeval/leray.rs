use crate::configspace::{det, Scalar};
use crate::error::{Error, Result};

fn pair<S: Scalar>(l: &[S], v: &[S]) -> S {
    l.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

fn alternating_sum<S: Scalar>(n: usize, term: impl Fn(usize) -> S) -> S {
    (0..n).fold(S::zero(), |acc, i| if i % 2 == 0 { acc + term(i) } else { acc - term(i) })
}

fn check_shapes<S>(n: usize, x: &[S], ws: &[Vec<S>]) -> Result<()> {
    if x.len() != n || ws.len() + 1 != n || ws.iter().any(|w| w.len() != n) {
        return Err(Error::Size(format!(
            "expected a point in C^{n} and {} directions",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Leray form `sum_i (-1)^{i-1} l_i dl_1 ^ .. ^ (dl_i omitted) ^ .. ^ dl_n`
/// at `x`, on the complex directions `ws`.
pub fn leray<S: Scalar>(ls: &[Vec<S>], x: &[S], ws: &[Vec<S>]) -> Result<S> {
    let n = ls.len();
    check_shapes(n, x, ws)?;
    if ls.iter().any(|l| l.len() != n) {
        return Err(Error::Size(format!("leray needs {n} covectors of length {n}")));
    }
    Ok(alternating_sum(n, |i| {
        let minor: Vec<Vec<S>> = (0..n)
            .filter(|&j| j != i)
            .map(|j| ws.iter().map(|w| pair(&ls[j], w)).collect())
            .collect();
        pair(&ls[i], x) * det(&minor)
    }))
}

/// `(i_E omega)(ws)` at `x`, with `E` the Euler field and `omega` the
/// standard volume form.
pub fn euler_contraction<S: Scalar>(x: &[S], ws: &[Vec<S>]) -> Result<S> {
    let n = x.len();
    check_shapes(n, x, ws)?;
    Ok(alternating_sum(n, |i| {
        let minor: Vec<Vec<S>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| ws.iter().map(|w| w[r].clone()).collect())
            .collect();
        x[i].clone() * det(&minor)
    }))
}

/// Right-hand side of the factorization `alpha = det(l_1..l_n) * i_E omega`.
pub fn leray_by_determinant<S: Scalar>(ls: &[Vec<S>], x: &[S], ws: &[Vec<S>]) -> Result<S> {
    Ok(det(ls) * euler_contraction(x, ws)?)
}
