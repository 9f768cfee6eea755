use num_complex::Complex64;

use super::scalar::{det, Scalar};
use crate::error::{Error, Result};

/// An ordered tuple of vectors in an `n`-dimensional space, up to nothing:
/// the concrete matrix is kept, and invariance under `GL_n` and column
/// rescaling is something the callers verify rather than assume.
///
/// `volume_form` is the multiplier `c` of the chosen volume form; every
/// determinant returned by [`Configuration::delta`] is scaled by it.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration<S: Scalar> {
    dim: usize,
    vectors: Vec<Vec<S>>,
    volume_form: S,
}

impl<S: Scalar> Configuration<S> {
    /// Builds a configuration; every vector must have length `dim` and be nonzero.
    pub fn new(dim: usize, vectors: Vec<Vec<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::Domain(format!("vector {i} has length {} but dim is {dim}", v.len())));
            }
            if v.iter().all(Scalar::is_zero) {
                return Err(Error::Degenerate(format!("vector {i} is zero")));
            }
        }
        Ok(Configuration {
            dim,
            vectors,
            volume_form: S::one(),
        })
    }

    /// Columns of a `dim x m` matrix given row by row.
    pub fn from_columns_of(rows: &[Vec<S>]) -> Result<Self> {
        let dim = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let vectors = (0..m).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
        Self::new(dim, vectors)
    }

    fn raw(dim: usize, vectors: Vec<Vec<S>>, volume_form: S) -> Self {
        Configuration {
            dim,
            vectors,
            volume_form,
        }
    }

    pub fn with_volume_form(mut self, c: S) -> Self {
        self.volume_form = c;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<S>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> Result<&[S]> {
        self.vectors.get(i).map(Vec::as_slice).ok_or(Error::Index {
            index: i,
            len: self.len(),
        })
    }

    pub fn volume_form(&self) -> &S {
        &self.volume_form
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::Index {
                index: i,
                len: self.len(),
            })
        }
    }

    /// `Delta(v_{i_1}, ..., v_{i_n})`: determinant of the selected columns
    /// times the volume-form multiplier.
    pub fn delta(&self, indices: &[usize]) -> Result<S> {
        if indices.len() != self.dim {
            return Err(Error::Domain(format!(
                "delta needs {} indices, got {}",
                self.dim,
                indices.len()
            )));
        }
        for (a, &i) in indices.iter().enumerate() {
            self.check_index(i)?;
            if indices[..a].contains(&i) {
                return Err(Error::Domain(format!("repeated index {i} in delta")));
            }
        }
        let m: Vec<Vec<S>> = (0..self.dim)
            .map(|r| indices.iter().map(|&c| self.vectors[c][r].clone()).collect())
            .collect();
        Ok(self.volume_form.clone() * det(&m))
    }

    /// Euclidean norm of a column, as a float.
    pub fn column_norm(&self, i: usize) -> f64 {
        self.vectors[i].iter().map(|x| x.to_c64().norm_sqr()).sum::<f64>().sqrt()
    }

    /// Threshold scale for `delta(indices)` on the float backend.
    pub fn delta_scale(&self, indices: &[usize]) -> f64 {
        self.volume_form.magnitude() * indices.iter().map(|&i| self.column_norm(i)).product::<f64>()
    }

    /// `delta`, failing with `Degenerate` when the value is (numerically) zero.
    pub fn delta_nonzero(&self, indices: &[usize]) -> Result<S> {
        let d = self.delta(indices)?;
        if d.is_negligible(self.delta_scale(indices)) {
            return Err(Error::Degenerate(format!("Delta{indices:?} vanishes")));
        }
        Ok(d)
    }

    /// True iff every maximal minor is nonzero (numerically, on floats).
    ///
    /// With fewer vectors than the dimension this asks for linear independence.
    pub fn is_generic(&self) -> bool {
        let m = self.len();
        if self.vectors.iter().any(|v| v.iter().all(Scalar::is_zero)) {
            return false;
        }
        if m < self.dim {
            return rank(&self.vectors) == m;
        }
        subsets(m, self.dim).all(|idx| self.delta_nonzero(&idx).is_ok())
    }

    /// Removes vector `i`.
    pub fn drop(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        if self.len() < 2 {
            return Err(Error::Domain("cannot drop from a configuration of one vector".into()));
        }
        let mut vectors = self.vectors.clone();
        vectors.remove(i);
        Ok(Self::raw(self.dim, vectors, self.volume_form.clone()))
    }

    /// Images of the other vectors in `V / <v_i>`.
    ///
    /// The quotient basis drops the coordinate where `v_i` has its largest
    /// entry; the volume form is adjusted so that
    /// `Delta_quot(w_1, ..., w_{n-1}) = Delta(v_i, w_1, ..., w_{n-1})`.
    pub fn project(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        if self.dim < 2 {
            return Err(Error::Domain("cannot project a one-dimensional configuration".into()));
        }
        let v = &self.vectors[i];
        let k = (0..self.dim)
            .filter(|&r| !v[r].is_zero())
            .max_by(|&a, &b| v[a].magnitude().total_cmp(&v[b].magnitude()))
            .ok_or_else(|| Error::Degenerate(format!("vector {i} is zero")))?;
        let vk = v[k].clone();
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, w)| {
                let alpha = w[k].clone() / vk.clone();
                (0..self.dim)
                    .filter(|&r| r != k)
                    .map(|r| w[r].clone() - alpha.clone() * v[r].clone())
                    .collect()
            })
            .collect();
        let sign = if k % 2 == 0 { vk } else { -vk };
        Ok(Self::raw(self.dim - 1, vectors, self.volume_form.clone() * sign))
    }

    /// Gale dual: `m = p + q` vectors in dimension `p` go to `m` vectors in
    /// dimension `q`, the columns of a kernel matrix `N` with `M N^T = 0`.
    ///
    /// The kernel basis comes from the reduced row echelon form of `M`;
    /// each output column is scaled so its first nonzero entry is 1.
    pub fn dualize(&self) -> Result<Self> {
        let p = self.dim;
        let m = self.len();
        if m <= p {
            return Err(Error::Domain(format!("dualize needs more than {p} vectors, got {m}")));
        }
        if !self.is_generic() {
            return Err(Error::Degenerate("dualize requires a generic configuration".into()));
        }
        let q = m - p;
        let mut a: Vec<Vec<S>> = (0..p).map(|r| (0..m).map(|c| self.vectors[c][r].clone()).collect()).collect();
        let pivots = rref(&mut a);
        if pivots.len() != p {
            return Err(Error::Degenerate("rank deficient configuration matrix".into()));
        }
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        // kernel vector per free column: x_f = 1, x_pivot(r) = -a[r][f]
        let kernel: Vec<Vec<S>> = free
            .iter()
            .map(|&f| {
                let mut x = vec![S::zero(); m];
                x[f] = S::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -a[r][f].clone();
                }
                x
            })
            .collect();
        let vectors = (0..m)
            .map(|c| {
                let col: Vec<S> = (0..q).map(|r| kernel[r][c].clone()).collect();
                match col.iter().find(|x| !x.is_zero()) {
                    Some(lead) => {
                        let lead = lead.clone();
                        col.into_iter().map(|x| x / lead.clone()).collect()
                    }
                    None => col,
                }
            })
            .collect::<Vec<Vec<S>>>();
        if vectors.iter().any(|v| v.iter().all(Scalar::is_zero)) {
            return Err(Error::Degenerate("dual configuration has a zero vector".into()));
        }
        Ok(Self::raw(q, vectors, S::one()))
    }

    /// `new[k] = old[images[k]]`.
    pub fn permuted(&self, images: &[usize]) -> Result<Self> {
        if images.len() != self.len() {
            return Err(Error::Size(format!(
                "permutation of length {} for {} vectors",
                images.len(),
                self.len()
            )));
        }
        let vectors = images
            .iter()
            .map(|&i| self.vector(i).map(<[S]>::to_vec))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::raw(self.dim, vectors, self.volume_form.clone()))
    }

    /// Sub-configuration on the given indices (in that order).
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let vectors = indices
            .iter()
            .map(|&i| self.vector(i).map(<[S]>::to_vec))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::raw(self.dim, vectors, self.volume_form.clone()))
    }

    /// Applies `v -> g v` to every vector.
    pub fn transformed(&self, g: &[Vec<S>]) -> Result<Self> {
        if g.len() != self.dim || g.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Size("transformation matrix has wrong shape".into()));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                g.iter()
                    .map(|row| row.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
                    .collect()
            })
            .collect();
        Ok(Self::raw(self.dim, vectors, self.volume_form.clone()))
    }

    /// Multiplies vector `i` by `lambda`.
    pub fn rescaled(&self, i: usize, lambda: S) -> Result<Self> {
        self.check_index(i)?;
        let mut out = self.clone();
        out.vectors[i] = out.vectors[i].iter().map(|x| x.clone() * lambda.clone()).collect();
        Ok(out)
    }

    /// Adds `eps * direction` to every vector.
    pub fn perturbed(&self, direction: &[Vec<S>], eps: S) -> Result<Self> {
        if direction.len() != self.len() || direction.iter().any(|d| d.len() != self.dim) {
            return Err(Error::Size("perturbation has wrong shape".into()));
        }
        let vectors = self
            .vectors
            .iter()
            .zip(direction)
            .map(|(v, d)| v.iter().zip(d).map(|(a, b)| a.clone() + eps.clone() * b.clone()).collect())
            .collect();
        Ok(Self::raw(self.dim, vectors, self.volume_form.clone()))
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Configuration<T> {
        Configuration {
            dim: self.dim,
            vectors: self.vectors.iter().map(|v| v.iter().map(&f).collect()).collect(),
            volume_form: f(&self.volume_form),
        }
    }

    pub fn to_float(&self) -> Configuration<Complex64> {
        self.map_scalars(Scalar::to_c64)
    }

    /// Cross-ratio of four of the vectors (dimension 2).
    pub fn cross_ratio(&self, idx: [usize; 4]) -> Result<S> {
        if self.dim != 2 {
            return Err(Error::Domain(format!("cross-ratio needs dimension 2, got {}", self.dim)));
        }
        let d = |a: usize, b: usize| self.delta_nonzero(&[idx[a], idx[b]]);
        Ok(d(0, 2)? * d(1, 3)? / (d(0, 3)? * d(1, 2)?))
    }

    /// Triple ratio
    /// `Delta(013) Delta(124) Delta(205) / (Delta(014) Delta(125) Delta(203))`
    /// of six of the vectors (dimension 3).
    pub fn triple_ratio_arg(&self, idx: [usize; 6]) -> Result<S> {
        if self.dim != 3 {
            return Err(Error::Domain(format!("triple ratio needs dimension 3, got {}", self.dim)));
        }
        let d = |a: usize, b: usize, c: usize| self.delta_nonzero(&[idx[a], idx[b], idx[c]]);
        let num = d(0, 1, 3)? * d(1, 2, 4)? * d(2, 0, 5)?;
        let den = d(0, 1, 4)? * d(1, 2, 5)? * d(2, 0, 3)?;
        Ok(num / den)
    }
}

/// Cross-ratio `Delta(v0,v2) Delta(v1,v3) / (Delta(v0,v3) Delta(v1,v2))`.
pub fn cross_ratio<S: Scalar>(v: [&[S]; 4]) -> Result<S> {
    Configuration::new(2, v.iter().map(|x| x.to_vec()).collect())?.cross_ratio([0, 1, 2, 3])
}

/// Triple ratio of six vectors in dimension 3.
pub fn triple_ratio_arg<S: Scalar>(l: [&[S]; 6]) -> Result<S> {
    Configuration::new(3, l.iter().map(|x| x.to_vec()).collect())?.triple_ratio_arg([0, 1, 2, 3, 4, 5])
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= m { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < m - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// In-place reduced row echelon form; returns the pivot columns.
fn rref<S: Scalar>(a: &mut [Vec<S>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .max_by(|&x, &y| a[x][c].magnitude().total_cmp(&a[y][c].magnitude()));
        let Some(p) = best else { continue };
        if !S::EXACT && a[p][c].magnitude() < 1e-13 {
            continue;
        }
        a.swap(r, p);
        let pv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() / pv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = f.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank<S: Scalar>(vectors: &[Vec<S>]) -> usize {
    let mut a = vectors.to_vec();
    rref(&mut a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configspace::scalar::GaussRat;

    fn g(v: i64) -> GaussRat {
        GaussRat::from_i64(v)
    }

    fn identity3() -> Configuration<GaussRat> {
        Configuration::new(
            3,
            vec![vec![g(1), g(0), g(0)], vec![g(0), g(1), g(0)], vec![g(0), g(0), g(1)]],
        )
        .unwrap()
    }

    #[test]
    fn delta_basic() {
        let c = identity3();
        assert_eq!(c.delta(&[0, 1, 2]).unwrap(), g(1));
        assert_eq!(c.delta(&[1, 0, 2]).unwrap(), g(-1));
        assert!(matches!(c.delta(&[0, 1, 5]), Err(Error::Index { .. })));
        assert!(c.delta(&[0, 0, 1]).is_err());
        assert_eq!(c.clone().with_volume_form(g(3)).delta(&[0, 1, 2]).unwrap(), g(3));
    }

    #[test]
    fn repeated_vector_is_not_generic() {
        let c = Configuration::new(2, vec![vec![g(1), g(2)], vec![g(3), g(1)], vec![g(1), g(2)]]).unwrap();
        assert!(!c.is_generic());
        assert!(Configuration::new(2, vec![vec![g(0), g(0)]]).is_err());
    }

    #[test]
    fn cross_ratio_standard_points() {
        let z = GaussRat::from_ints(3, 7, 2, 5);
        let c = Configuration::new(
            2,
            vec![vec![g(1), g(0)], vec![g(0), g(1)], vec![g(1), g(1)], vec![g(1), z.clone()]],
        )
        .unwrap();
        assert_eq!(c.cross_ratio([0, 1, 2, 3]).unwrap(), z.inv());
    }

    #[test]
    fn project_normalization() {
        let c = Configuration::new(
            2,
            vec![
                vec![g(2), g(-5)],
                vec![g(1), g(3)],
                vec![GaussRat::from_ints(1, 2, 1, 1), g(4)],
                vec![g(-1), g(7)],
            ],
        )
        .unwrap();
        let p = c.project(0).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.len(), 3);
        for j in 0..3 {
            assert_eq!(p.delta(&[j]).unwrap(), c.delta(&[0, j + 1]).unwrap());
        }
    }

    #[test]
    fn project_duplicate_gives_zero_image() {
        let c = identity3();
        let dup = Configuration::new(3, vec![c.vectors[0].clone(), c.vectors[1].clone(), c.vectors[0].clone()]).unwrap();
        let p = dup.project(0).unwrap();
        assert!(p.vectors()[1].iter().all(Scalar::is_zero));
        assert!(!p.is_generic());
    }

    #[test]
    fn subsets_enumerates_binomial() {
        assert_eq!(subsets(6, 3).count(), 20);
        assert_eq!(subsets(4, 0).count(), 1);
        assert_eq!(subsets(2, 3).count(), 0);
        assert_eq!(subsets(4, 2).nth(1).unwrap(), vec![0, 2]);
    }

    #[test]
    fn dualize_kernel_property() {
        let c = Configuration::new(
            2,
            vec![
                vec![g(1), g(2)],
                vec![g(3), g(-1)],
                vec![g(2), g(5)],
                vec![g(-4), g(1)],
                vec![g(1), g(7)],
            ],
        )
        .unwrap();
        let d = c.dualize().unwrap();
        assert_eq!(d.dim(), 3);
        assert!(d.is_generic());
        // the double dual is the same projective configuration
        let dd = d.dualize().unwrap();
        assert_eq!(dd.dim(), 2);
        for idx in [[0, 1, 2, 3], [1, 2, 3, 4], [0, 2, 4, 1]] {
            assert_eq!(dd.cross_ratio(idx).unwrap(), c.cross_ratio(idx).unwrap());
        }
    }
}
