//! Exact linear algebra over [`Scalar`]: sparse spans, rank and kernels.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sparse vector keyed by an ordered basis label.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Scalar, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let prod = a * v;
        match y.get_mut(k) {
            Some(e) => {
                *e += &prod;
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                y.insert(k.clone(), prod);
            }
        }
    }
}

/// Incrementally maintained span of sparse vectors, kept in echelon form.
///
/// Each stored row remembers its expression in terms of the independent
/// vectors accepted so far, so membership queries can also return coordinates.
#[derive(Clone, Debug)]
pub struct SparseSpan<K: Ord + Clone> {
    rows: Vec<(K, SparseVec<K>, Vec<Scalar>)>,
    pivots: BTreeMap<K, usize>,
    generators: usize,
}

impl<K: Ord + Clone> Default for SparseSpan<K> {
    fn default() -> Self {
        SparseSpan { rows: Vec::new(), pivots: BTreeMap::new(), generators: 0 }
    }
}

impl<K: Ord + Clone> SparseSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span; returns the residue and the combination
    /// (in generator coordinates) that was subtracted.
    fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, Vec<Scalar>) {
        let mut r = v.clone();
        let mut combo = vec![Scalar::zero(); self.generators];
        loop {
            let hit = r.iter().find_map(|(k, c)| self.pivots.get(k).map(|&i| (i, c.clone())));
            let Some((idx, c)) = hit else { break };
            let (_, row, rc) = &self.rows[idx];
            let f = -&c;
            axpy(&mut r, &f, row);
            for (j, x) in rc.iter().enumerate() {
                combo[j] -= &(&f * x);
            }
        }
        (r, combo)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coordinates of `v` with respect to the accepted generators, if `v` is in the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<Scalar>> {
        let (r, combo) = self.reduce(v);
        r.is_empty().then_some(combo)
    }

    /// Adds `v`; returns `true` iff it was independent of the current span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let (r, combo) = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (pk, pc) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = pc.inv().expect("nonzero pivot");
        let row: SparseVec<K> = r.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        // row = (v - Σ combo_j g_j) / pc, expressed over generators incl. the new one.
        let mut coords: Vec<Scalar> = combo.iter().map(|c| -(c * &inv)).collect();
        coords.push(inv);
        self.generators += 1;
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(Scalar::zero());
        }
        // Keep pivot columns clear in existing rows (reduced echelon form).
        for i in 0..self.rows.len() {
            if let Some(c) = self.rows[i].1.get(&pk).cloned() {
                let f = -&c;
                let (_, ref mut other, ref mut oc) = self.rows[i];
                axpy(other, &f, &row);
                for (j, x) in coords.iter().enumerate() {
                    oc[j] += &(&f * x);
                }
            }
        }
        self.pivots.insert(pk.clone(), self.rows.len());
        self.rows.push((pk, row, coords));
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.iter().map(|(_, r, _)| r)
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<K: Ord + Clone>(vs: &[SparseVec<K>]) -> usize {
    let mut span = SparseSpan::new();
    vs.iter().filter(|v| span.insert(v)).count()
}

/// Dense matrix helper: a row-major `rows × cols` matrix of scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn to_sparse(&self) -> SparseVec<(usize, usize)> {
        let mut v = SparseVec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = &self[(i, j)];
                if !x.is_zero() {
                    v.insert((i, j), x.clone());
                }
            }
        }
        v
    }

    pub fn row_sparse(&self, i: usize) -> SparseVec<usize> {
        (0..self.cols)
            .filter(|&j| !self[(i, j)].is_zero())
            .map(|j| (j, self[(i, j)].clone()))
            .collect()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<_> = (0..self.rows).map(|i| self.row_sparse(i)).collect();
        rank(&rows)
    }

    /// Basis of the right kernel `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        kernel_of_rows(&(0..self.rows).map(|i| self.row_sparse(i)).collect::<Vec<_>>(), self.cols)
    }

    /// One solution of `self·x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let rows: Vec<SparseVec<usize>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row_sparse(i);
                if !b[i].is_zero() {
                    r.insert(self.cols, -&b[i]);
                }
                r
            })
            .collect();
        let ker = kernel_of_rows(&rows, self.cols + 1);
        let v = ker.into_iter().find(|v| !v[self.cols].is_zero())?;
        let s = v[self.cols].inv()?;
        Some(v[..self.cols].iter().map(|x| x * &s).collect())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// Kernel basis of the linear system whose equations are `rows` (each a sparse
/// row over unknowns `0..ncols`).
pub fn kernel_of_rows(rows: &[SparseVec<usize>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut span: SparseSpan<usize> = SparseSpan::new();
    for r in rows {
        span.insert(r);
    }
    let pivots: BTreeMap<usize, &SparseVec<usize>> =
        span.rows.iter().map(|(k, r, _)| (*k, r)).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains_key(c)) {
        let mut x = vec![Scalar::zero(); ncols];
        x[free] = Scalar::one();
        for (&p, row) in &pivots {
            if let Some(c) = row.get(&free) {
                x[p] = -c;
            }
        }
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec<usize> {
        xs.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(i, x)| (i, Scalar::from_int(*x)))
            .collect()
    }

    #[test]
    fn rank_and_coordinates() {
        let mut s = SparseSpan::new();
        assert!(s.insert(&v(&[1, 2, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(!s.insert(&v(&[2, 5, 1])));
        assert_eq!(s.dim(), 2);
        let c = s.coordinates(&v(&[2, 5, 1])).unwrap();
        assert_eq!(c, vec![Scalar::from_int(2), Scalar::from_int(1)]);
        assert!(s.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn solve_linear_system() {
        let mut m = Matrix::zeros(2, 2);
        m[(0, 0)] = Scalar::from_int(2);
        m[(0, 1)] = Scalar::from_int(-1);
        m[(1, 0)] = Scalar::from_int(-2);
        m[(1, 1)] = Scalar::from_int(2);
        let x = m.solve(&[Scalar::from_int(2), Scalar::from_int(2)]).unwrap();
        assert_eq!(x, vec![Scalar::from_int(3), Scalar::from_int(4)]);
        let z = Matrix::zeros(1, 1);
        assert!(z.solve(&[Scalar::one()]).is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let mut m = Matrix::zeros(2, 4);
        for (j, x) in [1, 2, 3, 4].iter().enumerate() {
            m[(0, j)] = Scalar::from_int(*x);
        }
        for (j, x) in [0, 1, 1, 1].iter().enumerate() {
            m[(1, j)] = Scalar::from_int(*x);
        }
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for x in &k {
            for i in 0..2 {
                let s: Scalar = (0..4).map(|j| &m[(i, j)] * &x[j]).sum();
                assert!(s.is_zero());
            }
        }
    }
}
