//! Normal-ordered differential operators with polynomial coefficients on a
//! polynomial Fock space (even and odd variables).
//!
//! A term `(M, D)` stands for `M ∘ D`: multiplication by the monomial `M`
//! followed by the ordered product of derivatives `D` (canonical generator
//! order, even derivatives commuting, odd ones anticommuting). Every operator
//! is kept strictly in this normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;
use crate::superpoly::{
    fmt_monomial, koszul, monomial_derivative, odd_product, parse_term, split_terms, Gen,
    GeneratorSet, Monomial, Parity, SuperPolynomial,
};

pub type OpKey = (Monomial, Monomial);

#[derive(Clone, PartialEq, Eq)]
pub struct NormalOrderedOperator {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<OpKey, Scalar>,
}

fn insert(terms: &mut BTreeMap<OpKey, Scalar>, k: OpKey, c: Scalar) {
    if c.is_zero() {
        return;
    }
    if let Some(e) = terms.get_mut(&k) {
        *e += &c;
        if e.is_zero() {
            terms.remove(&k);
        }
    } else {
        terms.insert(k, c);
    }
}

/// `∂_g ∘ D` for a derivative monomial `D`, renormalized.
fn prepend_derivative(d: &Monomial, g: Gen) -> Option<(Monomial, bool)> {
    let mut out = d.clone();
    match g {
        Gen::Even(i) => {
            out.even[i] += 1;
            Some((out, false))
        }
        Gen::Odd(j) => {
            let (mask, neg) = odd_product(1 << j, d.odd)?;
            out.odd = mask;
            Some((out, neg))
        }
    }
}

/// Factors of a derivative monomial in application order reversed, i.e. the
/// product `∂_{g1} ∂_{g2} … ∂_{gk}` is returned as `[g1, …, gk]`.
fn derivative_factors(d: &Monomial) -> Vec<Gen> {
    let mut out = Vec::new();
    for (i, &e) in d.even.iter().enumerate() {
        for _ in 0..e.max(0) {
            out.push(Gen::Even(i));
        }
    }
    out.extend(d.odd_indices().map(Gen::Odd));
    out
}

impl NormalOrderedOperator {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        NormalOrderedOperator { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(gens: &Arc<GeneratorSet>, c: Scalar) -> Self {
        let mut op = Self::zero(gens);
        let one = Monomial::one(gens);
        insert(&mut op.terms, (one.clone(), one), c);
        op
    }

    pub fn identity(gens: &Arc<GeneratorSet>) -> Self {
        Self::scalar(gens, Scalar::one())
    }

    /// Left multiplication by a polynomial.
    pub fn multiplication(p: &SuperPolynomial) -> Self {
        let gens = p.generators().clone();
        let mut op = Self::zero(&gens);
        let one = Monomial::one(&gens);
        for (m, c) in p.terms() {
            insert(&mut op.terms, (m.clone(), one.clone()), c.clone());
        }
        op
    }

    pub fn var(gens: &Arc<GeneratorSet>, name: &str) -> Result<Self> {
        Ok(Self::multiplication(&SuperPolynomial::var(gens, name)?))
    }

    pub fn derivative(gens: &Arc<GeneratorSet>, g: Gen) -> Self {
        let mut op = Self::zero(gens);
        insert(&mut op.terms, (Monomial::one(gens), Monomial::single(gens, g)), Scalar::one());
        op
    }

    pub fn partial(gens: &Arc<GeneratorSet>, name: &str) -> Result<Self> {
        Ok(Self::derivative(gens, gens.gen(name)?))
    }

    pub fn from_terms(gens: &Arc<GeneratorSet>, terms: impl IntoIterator<Item = (OpKey, Scalar)>) -> Self {
        let mut op = Self::zero(gens);
        for (k, c) in terms {
            insert(&mut op.terms, k, c);
        }
        op
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar `s` if this operator equals `s·Id`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let ((m, d), c) = self.terms.iter().next()?;
        (m.is_one() && d.is_one()).then(|| c.clone())
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|(m, d)| m.parity().add(d.parity()));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.gens, &o.gens) || *self.gens == *o.gens {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch("operators act on different Fock spaces".into()))
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.gens);
        if c.is_zero() {
            return out;
        }
        for (k, x) in &self.terms {
            out.terms.insert(k.clone(), x * c);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o).expect("operator Fock space mismatch");
        let mut out = self.clone();
        for (k, c) in &o.terms {
            insert(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    /// `∂_g ∘ self`, renormal-ordered by the super Leibniz rule.
    fn left_derivative(&self, g: Gen) -> Self {
        let mut out = Self::zero(&self.gens);
        let sign_g = g.parity();
        for ((m, d), c) in &self.terms {
            if let Some((dm, f)) = monomial_derivative(m, g) {
                insert(&mut out.terms, (dm, d.clone()), c * &f);
            }
            if let Some((nd, neg)) = prepend_derivative(d, g) {
                let mut coef = c * &koszul(sign_g, m.parity());
                if neg {
                    coef = -coef;
                }
                insert(&mut out.terms, (m.clone(), nd), coef);
            }
        }
        out
    }

    /// Operator product `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        self.check(o).expect("operator Fock space mismatch");
        let mut out = Self::zero(&self.gens);
        // Group by derivative part so each D ∘ o is computed once.
        let mut by_d: BTreeMap<&Monomial, Vec<(&Monomial, &Scalar)>> = BTreeMap::new();
        for ((m, d), c) in &self.terms {
            by_d.entry(d).or_default().push((m, c));
        }
        for (d, mults) in by_d {
            let mut x = o.clone();
            for g in derivative_factors(d).into_iter().rev() {
                x = x.left_derivative(g);
            }
            for (m1, c1) in mults {
                for ((m2, d2), c2) in &x.terms {
                    if let Some((m, neg)) = m1.mul(m2) {
                        let c = c1 * c2;
                        insert(&mut out.terms, (m, d2.clone()), if neg { -c } else { c });
                    }
                }
            }
        }
        out
    }

    fn parity_parts(&self) -> [Self; 2] {
        let mut even = Self::zero(&self.gens);
        let mut odd = Self::zero(&self.gens);
        for ((m, d), c) in &self.terms {
            let target = if m.parity().add(d.parity()) == Parity::Even { &mut even } else { &mut odd };
            target.terms.insert((m.clone(), d.clone()), c.clone());
        }
        [even, odd]
    }

    /// Supercommutator `[A, B] = AB − (−1)^{p(A)p(B)} BA`, extended bilinearly
    /// to inhomogeneous operators.
    pub fn commutator(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.gens);
        for (pa, a) in self.parity_parts().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (pb, b) in o.parity_parts().iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.compose(b);
                let ba = b.compose(a);
                let term = if pa == 1 && pb == 1 { ab.add(&ba) } else { ab.sub(&ba) };
                out = out.add(&term);
            }
        }
        out
    }

    /// Applies the operator to a Fock vector.
    pub fn apply(&self, v: &SuperPolynomial) -> SuperPolynomial {
        assert!(
            Arc::ptr_eq(&self.gens, v.generators()) || *self.gens == **v.generators(),
            "operator and vector live on different Fock spaces"
        );
        let mut out = SuperPolynomial::zero(&self.gens);
        let mut by_d: BTreeMap<&Monomial, Vec<(&Monomial, &Scalar)>> = BTreeMap::new();
        for ((m, d), c) in &self.terms {
            by_d.entry(d).or_default().push((m, c));
        }
        for (d, mults) in by_d {
            let mut x = v.clone();
            for g in derivative_factors(d).into_iter().rev() {
                x = x.derivative(g);
                if x.is_zero() {
                    break;
                }
            }
            if x.is_zero() {
                continue;
            }
            for (m, c) in mults {
                let lhs = SuperPolynomial::from_term(&self.gens, m.clone(), c.clone());
                let prod = lhs.multiply(&x).expect("same generator set");
                for (mm, cc) in prod.terms() {
                    out.add_term(mm.clone(), cc.clone());
                }
            }
        }
        out
    }

    /// Coordinates as a sparse vector (for rank and span computations).
    pub fn to_sparse(&self) -> SparseVec<OpKey> {
        self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
    }

    /// Matrix of the operator on the span of `basis` (column j = image of basis j).
    /// Fails if the image leaves the span.
    pub fn matrix_on(&self, basis: &[Monomial]) -> Result<crate::linalg::Matrix> {
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = crate::linalg::Matrix::zeros(basis.len(), basis.len());
        for (j, b) in basis.iter().enumerate() {
            let img = self.apply(&SuperPolynomial::from_term(&self.gens, b.clone(), Scalar::one()));
            for (m, c) in img.terms() {
                let i = index.get(m).ok_or_else(|| {
                    Error::Contract(format!("image of basis vector leaves the subspace: {}", fmt_monomial(&self.gens, m)))
                })?;
                mat[(*i, j)] = c.clone();
            }
        }
        Ok(mat)
    }

    /// Parses the textual form `(c)*M|D + …`.
    pub fn parse(gens: &Arc<GeneratorSet>, s: &str) -> Result<Self> {
        let mut op = Self::zero(gens);
        if s.trim() == "0" {
            return Ok(op);
        }
        for (neg, t) in split_terms(s) {
            let (mpart, dpart) = t.split_once('|').unwrap_or((&t, "1"));
            let (c, m, s1) = parse_term(gens, mpart)?;
            let (c2, d, s2) = parse_term(gens, dpart)?;
            let c = c * c2;
            insert(&mut op.terms, (m, d), if neg ^ s1 ^ s2 { -c } else { c });
        }
        Ok(op)
    }
}

impl fmt::Display for NormalOrderedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, d), c)| format!("({c})*{}|{}", fmt_monomial(&self.gens, m), fmt_monomial(&self.gens, d)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for NormalOrderedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Op[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::Role;

    fn space() -> Arc<GeneratorSet> {
        GeneratorSet::new()
            .with_even("q1", Role::Q)
            .with_odd("xi1", Role::Q)
            .with_odd("xi2", Role::Q)
            .into_arc()
    }

    #[test]
    fn heisenberg_relation() {
        let g = space();
        let d = NormalOrderedOperator::partial(&g, "q1").unwrap();
        let q = NormalOrderedOperator::var(&g, "q1").unwrap();
        assert_eq!(d.commutator(&q), NormalOrderedOperator::identity(&g));
    }

    #[test]
    fn second_order_commutator() {
        // [∂², q²] = 4 q ∂ + 2
        let g = space();
        let d = NormalOrderedOperator::partial(&g, "q1").unwrap();
        let q = NormalOrderedOperator::var(&g, "q1").unwrap();
        let c = d.compose(&d).commutator(&q.compose(&q));
        assert_eq!(c, NormalOrderedOperator::parse(&g, "(4)*q1|q1 + (2)*1|1").unwrap());
    }

    #[test]
    fn odd_number_operator() {
        let g = space();
        let xi = NormalOrderedOperator::var(&g, "xi1").unwrap();
        let d = NormalOrderedOperator::partial(&g, "xi1").unwrap();
        let n = xi.compose(&d);
        assert_eq!(n.commutator(&xi), xi);
        assert_eq!(d.commutator(&xi), NormalOrderedOperator::identity(&g));
    }

    #[test]
    fn apply_matches_composition() {
        let g = space();
        let a = NormalOrderedOperator::parse(&g, "(2)*q1*xi2|xi1 + (1)*1|q1*xi2").unwrap();
        let b = NormalOrderedOperator::parse(&g, "(1)*xi1|q1 + (-1)*q1^2|1").unwrap();
        let v = SuperPolynomial::parse(&g, "q1^3*xi1*xi2 + (1/2)*q1*xi2 + xi1").unwrap();
        assert_eq!(a.compose(&b).apply(&v), a.apply(&b.apply(&v)));
    }

    #[test]
    fn textual_roundtrip() {
        let g = space();
        let a = NormalOrderedOperator::parse(&g, "(2)*q1*xi2|xi1 + (-1/2*i)*1|q1^2").unwrap();
        assert_eq!(NormalOrderedOperator::parse(&g, &a.to_string()).unwrap(), a);
    }
}
