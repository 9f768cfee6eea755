use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{det_gauss, random_vector, ExactCheck};
use crate::configspace::{permutations, GaussRat, Scalar};
use crate::error::{Error, Result};
use crate::formeval::{leray, leray_by_determinant};

fn pair(l: &[GaussRat], v: &[GaussRat]) -> GaussRat {
    l.iter()
        .zip(v)
        .fold(GaussRat::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// A point of `(V^*)^{n+1} x V` with one tangent vector along the
/// covectors and `n - 1` along `V`.
struct Sample {
    ls: Vec<Vec<GaussRat>>,
    t: Vec<GaussRat>,
    dl: Vec<Vec<GaussRat>>,
    vs: Vec<Vec<GaussRat>>,
}

/// A holomorphic one-form on `X x Y`, evaluated on `(dl, 0)` and on each `(0, v)`.
type Row = Vec<GaussRat>;

impl Sample {
    fn random(n: usize, rng: &mut ChaCha8Rng) -> Option<Self> {
        let s = Sample {
            ls: (0..=n).map(|_| random_vector(rng, n)).collect(),
            t: random_vector(rng, n),
            dl: (0..=n).map(|_| random_vector(rng, n)).collect(),
            vs: (1..n).map(|_| random_vector(rng, n)).collect(),
        };
        let generic = s.ls.iter().all(|l| !pair(l, &s.t).is_zero()) && (0..=n).all(|i| !s.delta(&s.others(i)).is_zero());
        generic.then_some(s)
    }

    fn n(&self) -> usize {
        self.t.len()
    }

    fn others(&self, i: usize) -> Vec<usize> {
        (0..=self.n()).filter(|&j| j != i).collect()
    }

    fn delta(&self, idx: &[usize]) -> GaussRat {
        det_gauss(idx.iter().map(|&i| self.ls[i].clone()).collect())
    }

    fn value(&self, i: usize) -> GaussRat {
        pair(&self.ls[i], &self.t)
    }

    fn dlog(&self, i: usize) -> Row {
        let inv = self.value(i).inv();
        let mut row = vec![pair(&self.dl[i], &self.t) * inv.clone()];
        row.extend(self.vs.iter().map(|v| pair(&self.ls[i], v) * inv.clone()));
        row
    }

    fn dt_log(&self, i: usize) -> Row {
        let mut row = self.dlog(i);
        row[0] = GaussRat::zero();
        row
    }

    /// `dlog Delta(l_idx)`, a form along the covectors only.
    fn dlog_delta(&self, idx: &[usize]) -> Row {
        let base = self.delta(idx);
        let mut dd = GaussRat::zero();
        for r in 0..idx.len() {
            let rows = idx
                .iter()
                .enumerate()
                .map(|(k, &i)| if k == r { self.dl[i].clone() } else { self.ls[i].clone() })
                .collect();
            dd = dd + det_gauss(rows);
        }
        let mut row = vec![GaussRat::zero(); self.n()];
        row[0] = dd / base;
        row
    }

    /// `(1/n!) Alt_{n+1} (dlog l_0 ^ ... ^ dlog l_{n-1})` on the sample vectors.
    fn wedge_of_logs(&self) -> Result<GaussRat> {
        let n = self.n();
        let mut total = GaussRat::zero();
        for p in permutations(n + 1)? {
            let d = det_gauss((0..n).map(|k| self.dlog(p.images[k])).collect());
            total = if p.sign > 0 { total + d } else { total - d };
        }
        Ok(total * factorial(n).inv())
    }

    /// `(1/(n-1)!) Alt_{n+1} (dlog Delta(l_0..l_{n-1}) ^ d_t log l_1 ^ ... ^ d_t log l_{n-1})`.
    fn delta_times_chart_logs(&self) -> Result<GaussRat> {
        let n = self.n();
        let mut total = GaussRat::zero();
        for p in permutations(n + 1)? {
            let mut rows = vec![self.dlog_delta(&p.images[..n])];
            rows.extend((1..n).map(|k| self.dt_log(p.images[k])));
            let d = det_gauss(rows);
            total = if p.sign > 0 { total + d } else { total - d };
        }
        Ok(total * factorial(n - 1).inv())
    }

    /// `sum_i (-1)^{n-i} dlog Delta(l without l_i) ^ alpha(l without l_i) / prod l_j(t)`.
    ///
    /// Moving the omitted label `i` to the last slot of the alternation costs
    /// `(-1)^{n-i}`; for even `n` this is the familiar `(-1)^i`.
    fn leray_sum(&self) -> Result<GaussRat> {
        let mut total = GaussRat::zero();
        for i in 0..=self.n() {
            let idx = self.others(i);
            let ls: Vec<Vec<GaussRat>> = idx.iter().map(|&j| self.ls[j].clone()).collect();
            let alpha = leray(&ls, &self.t, &self.vs)?;
            let prod = idx.iter().fold(GaussRat::one(), |acc, &j| acc * self.value(j));
            let term = self.dlog_delta(&idx)[0].clone() * alpha / prod;
            total = if (self.n() - i).is_multiple_of(2) {
                total + term
            } else {
                total - term
            };
        }
        Ok(total)
    }

    /// `alpha(l_1..l_n) = Delta(l_1..l_n) i_E omega` for every `n`-subset.
    fn euler_factorization(&self) -> Result<bool> {
        for i in 0..=self.n() {
            let ls: Vec<Vec<GaussRat>> = self.others(i).iter().map(|&j| self.ls[j].clone()).collect();
            if leray(&ls, &self.t, &self.vs)? != leray_by_determinant(&ls, &self.t, &self.vs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn factorial(n: usize) -> GaussRat {
    GaussRat::from_i64((1..=n as i64).product())
}

fn g(re: i64, im: i64) -> GaussRat {
    GaussRat::from_ints(re, 1, im, 1)
}

/// The displayed `n = 2` coordinate identity for three covectors `a, b, c`:
/// `dlog(a/c) ^ dlog(b/c)` against the `Delta`-weighted chart logarithms.
fn coordinate_example() -> Result<bool> {
    let s = Sample {
        ls: vec![vec![g(1, 0), g(2, 1)], vec![g(-1, 2), g(3, 0)], vec![g(0, 1), g(1, -1)]],
        t: vec![g(2, -1), g(1, 3)],
        dl: vec![vec![g(1, 1), g(0, -2)], vec![g(4, 0), g(1, 1)], vec![g(-3, 1), g(2, 0)]],
        vs: vec![vec![g(1, -1), g(5, 2)]],
    };
    let (a, b, c) = (0, 1, 2);
    let sub = |x: Row, y: Row| x.into_iter().zip(y).map(|(p, q)| p - q).collect::<Row>();
    let lhs = det_gauss(vec![sub(s.dlog(a), s.dlog(c)), sub(s.dlog(b), s.dlog(c))]);
    let term = |x: usize, y: usize| det_gauss(vec![s.dlog_delta(&[x, y]), sub(s.dt_log(y), s.dt_log(x))]);
    let rhs = term(a, b) - term(a, c) + term(b, c);
    Ok(lhs == rhs && lhs == s.wedge_of_logs()? && lhs == s.leray_sum()?)
}

/// The three expressions for the `(1; n-1)` component of the alternated
/// `dlog` wedge agree, on random exact samples.
pub fn verify_leray_decomposition(n: usize, seed: u64) -> Result<ExactCheck> {
    if !(2..=3).contains(&n) {
        return Err(Error::Domain(format!("n must be 2 or 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = ExactCheck::new(format!("leray_decomposition_n{n}"));
    if n == 2 {
        let ok = coordinate_example()?;
        check.record(ok, || "coordinate example".into());
    }
    let mut draws = 0;
    while draws < 10 {
        let Some(s) = Sample::random(n, &mut rng) else { continue };
        draws += 1;
        let (e1, e2, e3) = (s.wedge_of_logs()?, s.delta_times_chart_logs()?, s.leray_sum()?);
        check.record(e1 == e2 && e2 == e3, || format!("draw {draws}: {e1} / {e2} / {e3}"));
        let ok = s.euler_factorization()?;
        check.record(ok, || format!("draw {draws}: Leray form != Delta * i_E omega"));
    }
    Ok(check)
}
