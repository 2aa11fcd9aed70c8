//! Matrix Lie superalgebras: supermatrices with a parity per basis vector,
//! bilinear forms, form-preserving ambients (`o`, `sp`, `osp`, `pe`, `spe`),
//! centralizers and Lie closures.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, rank, Matrix, SparseSpan, SparseVec};
use crate::scalar::Scalar;
use crate::superpoly::Parity;

/// A square matrix acting on a superspace whose `i`-th basis vector has
/// parity `odd[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    pub odd: Vec<bool>,
    pub m: Matrix,
}

fn bit(b: bool) -> Parity {
    if b {
        Parity::Odd
    } else {
        Parity::Even
    }
}

impl SuperMatrix {
    pub fn zeros(odd: &[bool]) -> Self {
        SuperMatrix { odd: odd.to_vec(), m: Matrix::zeros(odd.len(), odd.len()) }
    }

    /// Standard `(r|s)` layout: even basis vectors first.
    pub fn block_parities(r: usize, s: usize) -> Vec<bool> {
        let mut v = vec![false; r];
        v.extend(vec![true; s]);
        v
    }

    pub fn identity(odd: &[bool]) -> Self {
        SuperMatrix { odd: odd.to_vec(), m: Matrix::identity(odd.len()) }
    }

    pub fn unit(odd: &[bool], i: usize, j: usize) -> Self {
        let mut x = Self::zeros(odd);
        x.m[(i, j)] = Scalar::one();
        x
    }

    pub fn dim(&self) -> usize {
        self.odd.len()
    }

    pub fn sdim(&self) -> (usize, usize) {
        let s = self.odd.iter().filter(|&&b| b).count();
        (self.dim() - s, s)
    }

    pub fn entry_parity(&self, i: usize, j: usize) -> Parity {
        bit(self.odd[i] ^ self.odd[j])
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// Parity of a nonzero homogeneous matrix; `None` if mixed or zero.
    pub fn parity(&self) -> Option<Parity> {
        let mut found = None;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.m[(i, j)].is_zero() {
                    let p = self.entry_parity(i, j);
                    if found.is_some_and(|f| f != p) {
                        return None;
                    }
                    found = Some(p);
                }
            }
        }
        found
    }

    pub fn parity_part(&self, p: Parity) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.entry_parity(i, j) != p {
                    out.m[(i, j)] = Scalar::zero();
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        SuperMatrix { odd: self.odd.clone(), m: self.m.add(&o.m) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        SuperMatrix { odd: self.odd.clone(), m: self.m.sub(&o.m) }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SuperMatrix { odd: self.odd.clone(), m: self.m.scale(s) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        SuperMatrix { odd: self.odd.clone(), m: self.m.mul(&o.m) }
    }

    /// `[A, B] = AB − (−1)^{p(A)p(B)} BA`, bilinear over parity parts.
    pub fn bracket(&self, o: &Self) -> Self {
        let mut out = Self::zeros(&self.odd);
        for pa in [Parity::Even, Parity::Odd] {
            let a = self.parity_part(pa);
            if a.is_zero() {
                continue;
            }
            for pb in [Parity::Even, Parity::Odd] {
                let b = o.parity_part(pb);
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(&b);
                let ba = b.mul(&a);
                out = out.add(&if pa == Parity::Odd && pb == Parity::Odd { ab.add(&ba) } else { ab.sub(&ba) });
            }
        }
        out
    }

    pub fn supertrace(&self) -> Scalar {
        let mut s = Scalar::zero();
        for i in 0..self.dim() {
            if self.odd[i] {
                s -= &self.m[(i, i)];
            } else {
                s += &self.m[(i, i)];
            }
        }
        s
    }

    pub fn to_sparse(&self) -> SparseVec<(usize, usize)> {
        self.m.to_sparse()
    }

    /// `A ⊗ 1` on `V₁ ⊗ V₂`, basis `(i, k) ↦ i·dim V₂ + k`.
    pub fn tensor_left(&self, v2: &[bool]) -> Self {
        let odd = tensor_parities(&self.odd, v2);
        let n2 = v2.len();
        let mut out = Self::zeros(&odd);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let a = &self.m[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..n2 {
                    out.m[(i * n2 + k, j * n2 + k)] = a.clone();
                }
            }
        }
        out
    }

    /// `1 ⊗ B` on `V₁ ⊗ V₂`: `v ⊗ w ↦ (−1)^{p(B)p(v)} v ⊗ Bw`.
    pub fn tensor_right(&self, v1: &[bool]) -> Self {
        let odd = tensor_parities(v1, &self.odd);
        let n2 = self.dim();
        let mut out = Self::zeros(&odd);
        for (i, &vi) in v1.iter().enumerate() {
            for k in 0..n2 {
                for l in 0..n2 {
                    let b = &self.m[(k, l)];
                    if b.is_zero() {
                        continue;
                    }
                    let neg = vi && self.entry_parity(k, l) == Parity::Odd;
                    out.m[(i * n2 + k, i * n2 + l)] = if neg { -b } else { b.clone() };
                }
            }
        }
        out
    }
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.m[(i, j)].to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "SuperMatrix[{}]", rows.join("; "))
    }
}

pub fn tensor_parities(v1: &[bool], v2: &[bool]) -> Vec<bool> {
    v1.iter().flat_map(|&a| v2.iter().map(move |&b| a ^ b)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Orthogonal,
    Symplectic,
    Orthosymplectic,
    Periplectic,
}

/// A superspace with a nondegenerate bilinear form `B(e_i, e_j) = form[(i, j)]`.
#[derive(Clone, Debug)]
pub struct FormEquippedSpace {
    pub odd: Vec<bool>,
    pub form: Matrix,
    pub flavor: Flavor,
}

impl FormEquippedSpace {
    /// Symmetric form on `C^n`.
    pub fn orthogonal(n: usize) -> Self {
        FormEquippedSpace { odd: vec![false; n], form: Matrix::identity(n), flavor: Flavor::Orthogonal }
    }

    fn symplectic_block(n: usize) -> Matrix {
        let mut f = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            f[(i, n + i)] = Scalar::one();
            f[(n + i, i)] = Scalar::from_int(-1);
        }
        f
    }

    /// Skew form on `C^{2n}`.
    pub fn symplectic(n: usize) -> Self {
        FormEquippedSpace { odd: vec![false; 2 * n], form: Self::symplectic_block(n), flavor: Flavor::Symplectic }
    }

    /// Even supersymmetric form on `C^{m|2n}`: symmetric on the even part, skew on the odd part.
    pub fn orthosymplectic(m: usize, n: usize) -> Self {
        let d = m + 2 * n;
        let mut f = Matrix::zeros(d, d);
        for i in 0..m {
            f[(i, i)] = Scalar::one();
        }
        let s = Self::symplectic_block(n);
        for i in 0..2 * n {
            for j in 0..2 * n {
                f[(m + i, m + j)] = s[(i, j)].clone();
            }
        }
        FormEquippedSpace { odd: SuperMatrix::block_parities(m, 2 * n), form: f, flavor: Flavor::Orthosymplectic }
    }

    /// Odd form on `C^{n|n}` pairing `e_i` with `e_{n+i}`.
    pub fn periplectic(n: usize) -> Self {
        let mut f = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            f[(i, n + i)] = Scalar::one();
            f[(n + i, i)] = Scalar::one();
        }
        FormEquippedSpace { odd: SuperMatrix::block_parities(n, n), form: f, flavor: Flavor::Periplectic }
    }

    pub fn dim(&self) -> usize {
        self.odd.len()
    }

    /// Parity of the form (odd iff it pairs even with odd vectors).
    pub fn form_parity(&self) -> Option<Parity> {
        let mut found = None;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.form[(i, j)].is_zero() {
                    let p = bit(self.odd[i] ^ self.odd[j]);
                    if found.is_some_and(|f| f != p) {
                        return None;
                    }
                    found = Some(p);
                }
            }
        }
        found
    }

    /// Whether `B(v, w) = (−1)^{p(v)p(w)} B(w, v)` on basis vectors (supersymmetric)
    /// or `−(−1)^{p(v)p(w)}` (superskew). `None` if neither.
    pub fn supersymmetry(&self) -> Option<bool> {
        let mut sym = true;
        let mut skew = true;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let s = if self.odd[i] && self.odd[j] { -&self.form[(j, i)] } else { self.form[(j, i)].clone() };
                if self.form[(i, j)] != s {
                    sym = false;
                }
                if self.form[(i, j)] != -s {
                    skew = false;
                }
            }
        }
        match (sym, skew) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.form.rank() == self.dim()
    }

    /// `B(v⊗w, v'⊗w') = (−1)^{p(w)p(v')} B₁(v, v') B₂(w, w')`.
    pub fn tensor(&self, o: &FormEquippedSpace) -> FormEquippedSpace {
        let odd = tensor_parities(&self.odd, &o.odd);
        let n2 = o.dim();
        let d = odd.len();
        let mut f = Matrix::zeros(d, d);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let b1 = &self.form[(i, j)];
                if b1.is_zero() {
                    continue;
                }
                for k in 0..n2 {
                    for l in 0..n2 {
                        let b2 = &o.form[(k, l)];
                        if b2.is_zero() {
                            continue;
                        }
                        let v = b1 * b2;
                        f[(i * n2 + k, j * n2 + l)] = if o.odd[k] && self.odd[j] { -v } else { v };
                    }
                }
            }
        }
        let mut out = FormEquippedSpace { odd, form: f, flavor: Flavor::Orthogonal };
        out.flavor = match (out.form_parity(), out.supersymmetry(), out.odd.iter().any(|&b| b)) {
            (Some(Parity::Odd), _, _) => Flavor::Periplectic,
            (_, Some(true), false) => Flavor::Orthogonal,
            (_, Some(false), false) => Flavor::Symplectic,
            _ => Flavor::Orthosymplectic,
        };
        out
    }

    /// Linear conditions (over matrix entries of parity `p`) for
    /// `B(Xv, w) + (−1)^{p(X)p(v)} B(v, Xw) = 0`.
    fn invariance_rows(&self, p: Parity) -> Vec<SparseVec<usize>> {
        let d = self.dim();
        let idx = |a: usize, b: usize| a * d + b;
        let par = |a: usize, b: usize| bit(self.odd[a] ^ self.odd[b]);
        let mut rows = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut row: SparseVec<usize> = BTreeMap::new();
                for k in 0..d {
                    if par(k, i) == p && !self.form[(k, j)].is_zero() {
                        *row.entry(idx(k, i)).or_insert_with(Scalar::zero) += &self.form[(k, j)];
                    }
                    if par(k, j) == p && !self.form[(i, k)].is_zero() {
                        let s = if p == Parity::Odd && self.odd[i] { -&self.form[(i, k)] } else { self.form[(i, k)].clone() };
                        *row.entry(idx(k, j)).or_insert_with(Scalar::zero) += &s;
                    }
                }
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// Whether a matrix preserves the form.
    pub fn preserves(&self, x: &SuperMatrix) -> bool {
        [Parity::Even, Parity::Odd].into_iter().all(|p| {
            let part = x.parity_part(p);
            let v = part.to_sparse();
            self.invariance_rows(p).iter().all(|row| {
                let d = self.dim();
                let s: Scalar = row.iter().map(|(k, c)| v.get(&(k / d, k % d)).map(|x| x * c).unwrap_or_else(Scalar::zero)).sum();
                s.is_zero()
            })
        })
    }

    /// Basis of the form-preserving subalgebra, even elements first.
    pub fn preserving_algebra(&self, supertraceless: bool) -> MatrixAlgebra {
        let d = self.dim();
        let mut basis = Vec::new();
        let mut n_even = 0;
        for p in [Parity::Even, Parity::Odd] {
            let mut rows = self.invariance_rows(p);
            for a in 0..d {
                for b in 0..d {
                    if bit(self.odd[a] ^ self.odd[b]) != p {
                        rows.push(BTreeMap::from([(a * d + b, Scalar::one())]));
                    }
                }
            }
            if supertraceless && p == Parity::Even {
                let row: SparseVec<usize> = (0..d)
                    .map(|i| (i * d + i, if self.odd[i] { Scalar::from_int(-1) } else { Scalar::one() }))
                    .collect();
                rows.push(row);
            }
            for v in kernel_of_rows(&rows, d * d) {
                let mut x = SuperMatrix::zeros(&self.odd);
                for (k, c) in v.into_iter().enumerate() {
                    x.m[(k / d, k % d)] = c;
                }
                basis.push(x);
            }
            if p == Parity::Even {
                n_even = basis.len();
            }
        }
        MatrixAlgebra { odd: self.odd.clone(), basis, n_even }
    }
}

/// A subalgebra of `gl(V)` given by a homogeneous basis, even elements first.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub odd: Vec<bool>,
    pub basis: Vec<SuperMatrix>,
    pub n_even: usize,
}

impl MatrixAlgebra {
    pub fn gl(odd: &[bool]) -> Self {
        let d = odd.len();
        let mut even = Vec::new();
        let mut oddb = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let u = SuperMatrix::unit(odd, i, j);
                if odd[i] ^ odd[j] {
                    oddb.push(u);
                } else {
                    even.push(u);
                }
            }
        }
        let n_even = even.len();
        even.extend(oddb);
        MatrixAlgebra { odd: odd.to_vec(), basis: even, n_even }
    }

    /// From an arbitrary spanning list of homogeneous matrices.
    pub fn from_span(odd: &[bool], elems: &[SuperMatrix]) -> Self {
        let mut even = SparseSpan::new();
        let mut oddspan = SparseSpan::new();
        let mut e = Vec::new();
        let mut o = Vec::new();
        for x in elems {
            for p in [Parity::Even, Parity::Odd] {
                let part = x.parity_part(p);
                if part.is_zero() {
                    continue;
                }
                let (span, list) = if p == Parity::Even { (&mut even, &mut e) } else { (&mut oddspan, &mut o) };
                if span.insert(&part.to_sparse()) {
                    list.push(part);
                }
            }
        }
        let n_even = e.len();
        e.extend(o);
        MatrixAlgebra { odd: odd.to_vec(), basis: e, n_even }
    }

    pub fn sdim(&self) -> (usize, usize) {
        (self.n_even, self.basis.len() - self.n_even)
    }

    pub fn contains(&self, x: &SuperMatrix) -> bool {
        let mut span = SparseSpan::new();
        for b in &self.basis {
            span.insert(&b.to_sparse());
        }
        span.contains(&x.to_sparse())
    }

    pub fn same_span(&self, o: &MatrixAlgebra) -> bool {
        let all: Vec<_> = self.basis.iter().chain(&o.basis).map(|b| b.to_sparse()).collect();
        let r = rank(&all);
        r == self.basis.len() && r == o.basis.len()
    }

    pub fn is_closed(&self) -> bool {
        let mut span = SparseSpan::new();
        for b in &self.basis {
            span.insert(&b.to_sparse());
        }
        self.basis.iter().all(|a| self.basis.iter().all(|b| span.contains(&a.bracket(b).to_sparse())))
    }

    /// Super-centralizer of `gammas` inside this algebra.
    pub fn centralizer(&self, gammas: &[SuperMatrix]) -> MatrixAlgebra {
        let mut out = Vec::new();
        let mut n_even = 0;
        for (lo, hi, even) in [(0, self.n_even, true), (self.n_even, self.basis.len(), false)] {
            let cand = &self.basis[lo..hi];
            let mut rows: BTreeMap<(usize, usize, usize), SparseVec<usize>> = BTreeMap::new();
            for (a, x) in cand.iter().enumerate() {
                for (g, gamma) in gammas.iter().enumerate() {
                    for ((i, j), c) in x.bracket(gamma).to_sparse() {
                        rows.entry((g, i, j)).or_default().insert(a, c);
                    }
                }
            }
            let rows: Vec<_> = rows.into_values().collect();
            for v in kernel_of_rows(&rows, cand.len()) {
                let mut x = SuperMatrix::zeros(&self.odd);
                for (a, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        x = x.add(&cand[a].scale(c));
                    }
                }
                out.push(x);
            }
            if even {
                n_even = out.len();
            }
        }
        MatrixAlgebra { odd: self.odd.clone(), basis: out, n_even }
    }
}

/// Span of the Lie closure of `gens` under `bracket`, with per-element parity.
/// Stops with an error once the span exceeds `limit`.
pub fn lie_closure<T, K, B, C, P>(gens: &[T], bracket: B, coords: C, parity: P, limit: usize) -> Result<Vec<T>>
where
    T: Clone,
    K: Ord + Clone,
    B: Fn(&T, &T) -> T,
    C: Fn(&T) -> SparseVec<K>,
    P: Fn(&T) -> Option<Parity>,
{
    let mut span = SparseSpan::new();
    let mut basis: Vec<T> = Vec::new();
    for g in gens {
        if parity(g).is_none() && !coords(g).is_empty() {
            return Err(Error::Inhomogeneous("closure generators must be homogeneous".into()));
        }
        if span.insert(&coords(g)) {
            basis.push(g.clone());
        }
    }
    let mut frontier = 0;
    while frontier < basis.len() {
        let x = basis[frontier].clone();
        for j in 0..=frontier {
            let y = basis[j].clone();
            let b = bracket(&x, &y);
            let cb = coords(&b);
            if !cb.is_empty() && span.insert(&cb) {
                basis.push(b);
                if basis.len() > limit {
                    return Err(Error::Construction(format!("closure exceeds {limit} elements")));
                }
            }
        }
        frontier += 1;
    }
    Ok(basis)
}

/// `(even, odd)` counts of a homogeneous list.
pub fn superdimension<T, P: Fn(&T) -> Option<Parity>>(xs: &[T], parity: P) -> (usize, usize) {
    let odd = xs.iter().filter(|x| parity(x) == Some(Parity::Odd)).count();
    (xs.len() - odd, odd)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_dimensions() {
        assert_eq!(FormEquippedSpace::orthogonal(4).preserving_algebra(false).sdim(), (6, 0));
        assert_eq!(FormEquippedSpace::symplectic(2).preserving_algebra(false).sdim(), (10, 0));
        assert_eq!(FormEquippedSpace::orthosymplectic(1, 1).preserving_algebra(false).sdim(), (3, 2));
        assert_eq!(FormEquippedSpace::orthosymplectic(3, 3).preserving_algebra(false).sdim(), (24, 18));
        assert_eq!(FormEquippedSpace::periplectic(4).preserving_algebra(false).sdim(), (16, 16));
        assert_eq!(FormEquippedSpace::periplectic(4).preserving_algebra(true).sdim(), (15, 16));
    }

    #[test]
    fn ambients_are_closed() {
        for f in [FormEquippedSpace::orthosymplectic(2, 1), FormEquippedSpace::periplectic(2)] {
            assert!(f.preserving_algebra(false).is_closed());
        }
    }

    #[test]
    fn scalars_centralize_everything() {
        let odd = SuperMatrix::block_parities(2, 1);
        let gl = MatrixAlgebra::gl(&odd);
        let c = gl.centralizer(&[SuperMatrix::identity(&odd)]);
        assert_eq!(c.sdim(), gl.sdim());
    }

    #[test]
    fn tensor_factors_commute() {
        let v1 = SuperMatrix::block_parities(1, 1);
        let v2 = SuperMatrix::block_parities(1, 1);
        let a = SuperMatrix::unit(&v1, 0, 1).tensor_left(&v2);
        let b = SuperMatrix::unit(&v2, 1, 0).tensor_right(&v1);
        assert!(a.bracket(&b).is_zero());
    }
}
