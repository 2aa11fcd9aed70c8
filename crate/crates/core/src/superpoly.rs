//! Supercommutative polynomials over ℚ(i, √2).
//!
//! Even generators commute; odd generators anticommute and square to zero.
//! A monomial stores even exponents densely and the odd part as a bitmask whose
//! canonical order is the declaration order of the odd generators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u32) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }
}

/// `(-1)^{p q}` as a scalar.
pub fn koszul(p: Parity, q: Parity) -> Scalar {
    if p == Parity::Odd && q == Parity::Odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// Role of a generator in the rough grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    /// Position-like: `q` or `ξ` (rough degree 0).
    Q,
    /// Momentum-like: `p` or `η`.
    P,
    /// The unpaired odd generator `θ`.
    Neutral,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub laurent: bool,
    pub role: Role,
}

/// Reference to a generator of a [`GeneratorSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Even(usize),
    Odd(usize),
}

impl Gen {
    pub fn parity(self) -> Parity {
        match self {
            Gen::Even(_) => Parity::Even,
            Gen::Odd(_) => Parity::Odd,
        }
    }
}

/// Ordered lists of even and odd generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorSet {
    even: Vec<Generator>,
    odd: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_even(mut self, name: &str, role: Role) -> Self {
        self.push(name, Parity::Even, role, false);
        self
    }

    pub fn with_laurent(mut self, name: &str) -> Self {
        self.push(name, Parity::Even, Role::Q, true);
        self
    }

    pub fn with_odd(mut self, name: &str, role: Role) -> Self {
        self.push(name, Parity::Odd, role, false);
        self
    }

    fn push(&mut self, name: &str, parity: Parity, role: Role, laurent: bool) {
        assert!(self.lookup(name).is_none(), "duplicate generator name `{name}`");
        assert!(parity == Parity::Even || self.odd.len() < 64, "at most 64 odd generators");
        let g = Generator { name: name.to_string(), laurent, role };
        match parity {
            Parity::Even => self.even.push(g),
            Parity::Odd => self.odd.push(g),
        }
    }

    pub fn n_even(&self) -> usize {
        self.even.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd.len()
    }

    pub fn lookup(&self, name: &str) -> Option<Gen> {
        if let Some(i) = self.even.iter().position(|g| g.name == name) {
            return Some(Gen::Even(i));
        }
        self.odd.iter().position(|g| g.name == name).map(Gen::Odd)
    }

    pub fn gen(&self, name: &str) -> Result<Gen> {
        self.lookup(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generator(&self, g: Gen) -> &Generator {
        match g {
            Gen::Even(i) => &self.even[i],
            Gen::Odd(i) => &self.odd[i],
        }
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.generator(g).name
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.even.len()).map(Gen::Even).chain((0..self.odd.len()).map(Gen::Odd))
    }

    pub fn into_arc(self) -> Arc<GeneratorSet> {
        Arc::new(self)
    }
}

/// Monomial: dense even exponents plus an odd-occupancy bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub even: Vec<i32>,
    pub odd: u64,
}

impl Monomial {
    pub fn one(gens: &GeneratorSet) -> Self {
        Monomial { even: vec![0; gens.n_even()], odd: 0 }
    }

    pub fn single(gens: &GeneratorSet, g: Gen) -> Self {
        let mut m = Monomial::one(gens);
        match g {
            Gen::Even(i) => m.even[i] = 1,
            Gen::Odd(i) => m.odd = 1 << i,
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|&e| e == 0)
    }

    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd_count())
    }

    pub fn total_degree(&self) -> i64 {
        self.even.iter().map(|&e| e as i64).sum::<i64>() + self.odd_count() as i64
    }

    pub fn exponent(&self, g: Gen) -> i32 {
        match g {
            Gen::Even(i) => self.even[i],
            Gen::Odd(i) => ((self.odd >> i) & 1) as i32,
        }
    }

    pub fn odd_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |i| (self.odd >> i) & 1 == 1)
    }

    /// Product of two monomials: `None` if an odd generator repeats, otherwise
    /// the product and the Koszul sign `±1` from reordering odd factors.
    pub fn mul(&self, o: &Monomial) -> Option<(Monomial, bool)> {
        let (odd, negative) = odd_product(self.odd, o.odd)?;
        let even = self.even.iter().zip(&o.even).map(|(a, b)| a + b).collect();
        Some((Monomial { even, odd }, negative))
    }
}

/// Product of two odd masks in canonical order: `None` on overlap, else the
/// merged mask and whether the reordering sign is negative.
pub fn odd_product(a: u64, b: u64) -> Option<(u64, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        // factors of `a` with index > j must pass this factor of `b`
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        swaps += above.count_ones();
    }
    Some((a | b, swaps % 2 == 1))
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by total degree, then lexicographically (higher leading exponents
/// first on even generators, then odd generators by declaration order).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.even.cmp(&self.even))
            .then_with(|| other.odd.reverse_bits().cmp(&self.odd.reverse_bits()))
    }
}

/// Finite combination of monomials over a fixed generator set.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperPolynomial {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SuperPolynomial {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        SuperPolynomial { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(gens: &Arc<GeneratorSet>, c: Scalar) -> Self {
        let mut p = Self::zero(gens);
        p.add_term(Monomial::one(gens), c);
        p
    }

    pub fn one(gens: &Arc<GeneratorSet>) -> Self {
        Self::constant(gens, Scalar::one())
    }

    /// The generator called `name`.
    pub fn var(gens: &Arc<GeneratorSet>, name: &str) -> Result<Self> {
        let g = gens.gen(name)?;
        Ok(Self::from_term(gens, Monomial::single(gens, g), Scalar::one()))
    }

    pub fn from_term(gens: &Arc<GeneratorSet>, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(gens);
        p.add_term(m, c);
        p
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some(e) = self.terms.get_mut(&m) {
            *e += &c;
            if e.is_zero() {
                self.terms.remove(&m);
            }
        } else {
            self.terms.insert(m, c);
        }
    }

    pub fn same_generators(&self, o: &SuperPolynomial) -> bool {
        Arc::ptr_eq(&self.gens, &o.gens) || *self.gens == *o.gens
    }

    fn check(&self, o: &SuperPolynomial) -> Result<()> {
        if self.same_generators(o) {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch("operands use different generator sets".into()))
        }
    }

    /// Parity when homogeneous, `None` for mixed or zero elements.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.gens);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x * c);
        }
        out
    }

    pub fn try_add(&self, o: &SuperPolynomial) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &SuperPolynomial) -> Result<Self> {
        self.try_add(&o.scale(&Scalar::from_int(-1)))
    }

    /// Supercommutative product.
    pub fn multiply(&self, o: &SuperPolynomial) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(&self.gens);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some((m, neg)) = m1.mul(m2) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out.check_exponents()?;
        Ok(out)
    }

    fn check_exponents(&self) -> Result<()> {
        for m in self.terms.keys() {
            for (i, &e) in m.even.iter().enumerate() {
                let g = self.gens.generator(Gen::Even(i));
                if e < 0 && !g.laurent {
                    return Err(Error::NegativeExponent(g.name.clone()));
                }
            }
        }
        Ok(())
    }

    /// Left partial derivative with respect to `x`.
    pub fn derivative(&self, x: Gen) -> Self {
        let mut out = Self::zero(&self.gens);
        for (m, c) in &self.terms {
            if let Some((dm, f)) = monomial_derivative(m, x) {
                out.add_term(dm, c * &f);
            }
        }
        out
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self> {
        Ok(self.derivative(self.gens.gen(name)?))
    }

    fn homogeneous_value(&self, f: impl Fn(&Monomial) -> i64, what: &str) -> Result<i64> {
        let mut it = self.terms.keys().map(f);
        let Some(first) = it.next() else {
            return Err(Error::Inhomogeneous(format!("zero element has no {what}")));
        };
        if it.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::Inhomogeneous(format!("{what} differs between terms of {self}")))
        }
    }

    pub fn total_degree(&self) -> Result<i64> {
        self.homogeneous_value(Monomial::total_degree, "polynomial degree")
    }

    /// Standard Lie grading: polynomial degree minus two.
    pub fn degree_standard(&self) -> Result<i64> {
        Ok(self.total_degree()? - 2)
    }

    /// Rough Lie grading. With `m` odd, `deg Q = 0`, `deg θ = 1`, `deg P = 2`
    /// and the Lie degree is the weight minus two; with `m` even there is no
    /// `θ`, `deg P = 1`, and the Lie degree is the weight minus one.
    pub fn degree_rough(&self, m_parity: Parity) -> Result<i64> {
        let gens = self.gens.clone();
        if m_parity == Parity::Even {
            let has_theta = self.terms.keys().any(|m| {
                gens.gens().any(|g| gens.generator(g).role == Role::Neutral && m.exponent(g) != 0)
            });
            if has_theta {
                return Err(Error::Inhomogeneous("θ is not allowed when m is even".into()));
            }
        }
        let p_weight = if m_parity == Parity::Odd { 2 } else { 1 };
        let weight = |m: &Monomial| -> i64 {
            gens.gens()
                .map(|g| {
                    let e = m.exponent(g) as i64;
                    match gens.generator(g).role {
                        Role::Q => 0,
                        Role::P => p_weight * e,
                        Role::Neutral => e,
                    }
                })
                .sum()
        };
        let w = self.homogeneous_value(weight, "rough degree")?;
        Ok(w - p_weight)
    }

    /// Substitutes each generator by a polynomial (over a possibly different
    /// generator set). Substitutes of odd generators must be odd.
    pub fn substitute(&self, target: &Arc<GeneratorSet>, images: &[(Gen, SuperPolynomial)]) -> Result<Self> {
        let image = |g: Gen| -> Result<&SuperPolynomial> {
            images
                .iter()
                .find(|(h, _)| *h == g)
                .map(|(_, p)| p)
                .ok_or_else(|| Error::UnknownGenerator(self.gens.name(g).to_string()))
        };
        let mut out = SuperPolynomial::zero(target);
        for (m, c) in &self.terms {
            let mut acc = SuperPolynomial::constant(target, c.clone());
            for (i, &e) in m.even.iter().enumerate() {
                if e < 0 {
                    return Err(Error::Unsupported("substitution into Laurent monomials".into()));
                }
                let img = image(Gen::Even(i))?;
                for _ in 0..e {
                    acc = acc.multiply(img)?;
                }
            }
            for j in m.odd_indices() {
                acc = acc.multiply(image(Gen::Odd(j))?)?;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// Parses the textual form produced by [`fmt::Display`].
    pub fn parse(gens: &Arc<GeneratorSet>, s: &str) -> Result<Self> {
        parse_poly(gens, s)
    }
}

/// Left derivative of a monomial: the resulting monomial and its coefficient.
pub fn monomial_derivative(m: &Monomial, x: Gen) -> Option<(Monomial, Scalar)> {
    match x {
        Gen::Even(i) => {
            let e = m.even[i];
            if e == 0 {
                return None;
            }
            let mut d = m.clone();
            d.even[i] -= 1;
            Some((d, Scalar::from_int(e as i64)))
        }
        Gen::Odd(j) => {
            if (m.odd >> j) & 1 == 0 {
                return None;
            }
            let before = (m.odd & ((1u64 << j) - 1)).count_ones();
            let mut d = m.clone();
            d.odd &= !(1u64 << j);
            Some((d, if before % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() }))
        }
    }
}

pub(crate) fn fmt_monomial(gens: &GeneratorSet, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.even.iter().enumerate() {
        let name = gens.name(Gen::Even(i));
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    for j in m.odd_indices() {
        parts.push(gens.name(Gen::Odd(j)).to_string());
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", fmt_monomial(&self.gens, m))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPolynomial[{self}]")
    }
}

/// Splits at `+`/`-` signs that sit outside parentheses. Signs directly after
/// `^` belong to exponents.
pub(crate) fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev = ' ';
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch)
            }
            ')' => {
                depth -= 1;
                cur.push(ch)
            }
            '+' | '-' if depth == 0 && prev != '^' => {
                if !cur.is_empty() {
                    out.push((neg, std::mem::take(&mut cur)));
                    neg = ch == '-';
                } else {
                    neg ^= ch == '-';
                }
            }
            _ => cur.push(ch),
        }
        prev = ch;
    }
    if !cur.is_empty() {
        out.push((neg, cur));
    }
    out
}

/// Parses `(coef)*f1*f2^k` or `f1*f2` or a bare `(coef)`/rational.
pub(crate) fn parse_term(gens: &Arc<GeneratorSet>, t: &str) -> Result<(Scalar, Monomial, bool)> {
    let (coef, rest) = if let Some(inner) = t.strip_prefix('(') {
        let close = inner.find(')').ok_or_else(|| Error::Parse(format!("unbalanced `{t}`")))?;
        let c: Scalar = inner[..close].parse()?;
        let rest = inner[close + 1..].strip_prefix('*').unwrap_or(&inner[close + 1..]);
        (c, rest)
    } else {
        (Scalar::one(), t)
    };
    let mut acc = Monomial::one(gens);
    let mut negative = false;
    if rest.is_empty() || rest == "1" {
        return Ok((coef, acc, false));
    }
    let mut coef = coef;
    for factor in rest.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{t}`")));
        }
        if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            coef = coef * factor.parse::<Scalar>()?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
            None => (factor, 1),
        };
        let g = gens.gen(name)?;
        let mut single = Monomial::one(gens);
        match g {
            Gen::Even(i) => single.even[i] = exp,
            Gen::Odd(i) => match exp {
                0 => continue,
                1 => single.odd = 1 << i,
                _ => return Ok((Scalar::zero(), Monomial::one(gens), false)),
            },
        }
        match acc.mul(&single) {
            Some((m, neg)) => {
                acc = m;
                negative ^= neg;
            }
            None => return Ok((Scalar::zero(), Monomial::one(gens), false)),
        }
    }
    Ok((coef, acc, negative))
}

fn parse_poly(gens: &Arc<GeneratorSet>, s: &str) -> Result<SuperPolynomial> {
    let mut out = SuperPolynomial::zero(gens);
    if s.trim() == "0" {
        return Ok(out);
    }
    let terms = split_terms(s);
    if terms.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    for (neg, t) in terms {
        let (c, m, sign) = parse_term(gens, &t)?;
        let c = if neg ^ sign { -c } else { c };
        out.add_term(m, c);
    }
    out.check_exponents()?;
    Ok(out)
}
