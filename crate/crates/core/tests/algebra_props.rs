use howe_core::poisson::parity_parts;
use howe_core::{
    Coordinates, Gen, Monomial, NormalOrderedOperator, Parity, PoissonAlgebra, PoissonAlgebraSpec, Scalar,
    SuperPolynomial,
};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

type RawTerm = (Vec<i32>, u64, i64, i64);

fn raw_poly(n_even: usize, n_odd: usize, max_exp: i32, max_terms: usize) -> impl Strategy<Value = Vec<RawTerm>> {
    let odd_mask = if n_odd == 0 { 0 } else { (1u64 << n_odd) - 1 };
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n_even), 0..=odd_mask, -3i64..=3, -2i64..=2),
        1..=max_terms,
    )
}

fn build(gens: &Arc<howe_core::GeneratorSet>, raw: &[RawTerm]) -> SuperPolynomial {
    let mut p = SuperPolynomial::zero(gens);
    for (even, odd, a, c) in raw {
        let m = Monomial { even: even.clone(), odd: *odd };
        p.add_term(m, Scalar::from_ints(*a, 0, *c, 0));
    }
    p
}

/// Picks a nonzero homogeneous component (parity chosen by `want`, falling back to the other).
fn homogeneous(p: &SuperPolynomial, want: bool) -> Option<(Parity, SuperPolynomial)> {
    let parts = parity_parts(p);
    let target = if want { Parity::Odd } else { Parity::Even };
    parts.iter().find(|(q, _)| *q == target).cloned().or_else(|| parts.into_iter().next())
}

fn sign(a: Parity, b: Parity) -> Scalar {
    if a == Parity::Odd && b == Parity::Odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

fn mul(a: &SuperPolynomial, b: &SuperPolynomial) -> SuperPolynomial {
    a.multiply(b).unwrap()
}

fn add(a: &SuperPolynomial, b: &SuperPolynomial) -> SuperPolynomial {
    a.try_add(b).unwrap()
}

/// Oracle: a monomial as a word of generator letters; sorting the word by
/// adjacent swaps tracks the sign of every odd/odd transposition.
fn word_product_oracle(a: &SuperPolynomial, b: &SuperPolynomial) -> BTreeMap<(Vec<i32>, Vec<usize>), Scalar> {
    let n_even = a.generators().n_even();
    let word = |m: &Monomial| -> Vec<(bool, usize)> {
        let mut w = Vec::new();
        for (i, &e) in m.even.iter().enumerate() {
            for _ in 0..e {
                w.push((false, i));
            }
        }
        for j in m.odd_indices() {
            w.push((true, j));
        }
        w
    };
    let key = |x: &(bool, usize)| if x.0 { n_even + x.1 } else { x.1 };
    let mut out: BTreeMap<(Vec<i32>, Vec<usize>), Scalar> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = word(ma);
            w.extend(word(mb));
            let mut neg = false;
            let mut zero = false;
            for i in 0..w.len() {
                for j in 0..w.len() - 1 - i {
                    if key(&w[j]) > key(&w[j + 1]) {
                        if w[j].0 && w[j + 1].0 {
                            neg = !neg;
                        }
                        w.swap(j, j + 1);
                    }
                }
            }
            for k in 1..w.len() {
                if w[k].0 && w[k - 1] == w[k] {
                    zero = true;
                }
            }
            if zero {
                continue;
            }
            let mut even = vec![0; n_even];
            let mut odd = Vec::new();
            for (o, i) in w {
                if o {
                    odd.push(i);
                } else {
                    even[i] += 1;
                }
            }
            let c = ca * cb;
            let e = out.entry((even, odd)).or_insert_with(Scalar::zero);
            *e += &(if neg { -c } else { c });
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn as_oracle_map(p: &SuperPolynomial) -> BTreeMap<(Vec<i32>, Vec<usize>), Scalar> {
    p.terms().map(|(m, c)| ((m.even.clone(), m.odd_indices().collect()), c.clone())).collect()
}

fn algebra(n: usize, m: usize, c: Coordinates) -> PoissonAlgebra {
    PoissonAlgebra::new(PoissonAlgebraSpec::new(n, m, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn supercommutativity(a in raw_poly(2, 3, 2, 4), b in raw_poly(2, 3, 2, 4), pa: bool, pb: bool) {
        let g = algebra(1, 3, Coordinates::XiEtaTheta).generators().clone();
        let (Some((p, u)), Some((q, v))) = (homogeneous(&build(&g, &a), pa), homogeneous(&build(&g, &b), pb)) else {
            return Ok(());
        };
        prop_assert_eq!(mul(&u, &v), mul(&v, &u).scale(&sign(p, q)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_matches_word_oracle(a in raw_poly(2, 4, 2, 4), b in raw_poly(2, 4, 2, 4)) {
        let g = algebra(1, 4, Coordinates::Theta).generators().clone();
        let (u, v) = (build(&g, &a), build(&g, &b));
        prop_assert_eq!(as_oracle_map(&mul(&u, &v)), word_product_oracle(&u, &v));
    }

    #[test]
    fn associativity(a in raw_poly(2, 3, 2, 3), b in raw_poly(2, 3, 2, 3), c in raw_poly(2, 3, 2, 3)) {
        let g = algebra(1, 3, Coordinates::XiEtaTheta).generators().clone();
        let (x, y, z) = (build(&g, &a), build(&g, &b), build(&g, &c));
        prop_assert_eq!(mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z)));
    }

    #[test]
    fn left_derivative_leibniz(a in raw_poly(2, 3, 2, 4), b in raw_poly(2, 3, 2, 4), pa: bool, j in 0usize..3) {
        let g = algebra(1, 3, Coordinates::XiEtaTheta).generators().clone();
        let Some((p, f)) = homogeneous(&build(&g, &a), pa) else { return Ok(()) };
        let h = build(&g, &b);
        let x = Gen::Odd(j);
        let lhs = mul(&f, &h).derivative(x);
        let rhs = add(&mul(&f.derivative(x), &h), &mul(&f, &h.derivative(x)).scale(&sign(p, Parity::Odd)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_field_axioms(a in prop::array::uniform12(-5i64..=5)) {
        let s = |k: usize| Scalar::from_ints(a[k], a[k + 1], a[k + 2], a[k + 3]);
        let (x, y, z) = (s(0), s(4), s(8));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn standard_degree_is_additive(e1 in prop::collection::vec(0i32..3, 2), o1 in 0u64..8, e2 in prop::collection::vec(0i32..3, 2), o2 in 0u64..8) {
        let g = algebra(1, 3, Coordinates::XiEtaTheta).generators().clone();
        let f = SuperPolynomial::from_term(&g, Monomial { even: e1, odd: o1 }, Scalar::one());
        let h = SuperPolynomial::from_term(&g, Monomial { even: e2, odd: o2 }, Scalar::one());
        let fh = mul(&f, &h);
        if !fh.is_zero() {
            prop_assert_eq!(
                fh.degree_standard().unwrap() + 2,
                f.degree_standard().unwrap() + 2 + h.degree_standard().unwrap() + 2
            );
        }
    }
}

fn bracket_cases() -> impl Strategy<Value = (usize, usize, Coordinates)> {
    prop_oneof![
        Just((1, 2, Coordinates::XiEtaTheta)),
        Just((1, 3, Coordinates::XiEtaTheta)),
        Just((1, 3, Coordinates::Theta)),
        Just((0, 4, Coordinates::Theta)),
        Just((1, 1, Coordinates::XiEtaTheta)),
    ]
}

fn sample(alg: &PoissonAlgebra, raw: &[RawTerm], odd: bool) -> Option<(Parity, SuperPolynomial)> {
    let g = alg.generators();
    let (ne, no) = (g.n_even(), g.n_odd());
    let fitted: Vec<RawTerm> = raw
        .iter()
        .map(|(e, o, a, c)| {
            let mut e = e.clone();
            e.resize(ne, 0);
            (e, o & ((1u64 << no) - 1), *a, *c)
        })
        .collect();
    homogeneous(&build(g, &fitted), odd)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bracket_super_antisymmetry(case in bracket_cases(), a in raw_poly(2, 4, 2, 3), b in raw_poly(2, 4, 2, 3), pa: bool, pb: bool) {
        let alg = algebra(case.0, case.1, case.2);
        let (Some((p, f)), Some((q, g))) = (sample(&alg, &a, pa), sample(&alg, &b, pb)) else { return Ok(()) };
        let fg = alg.bracket(&f, &g).unwrap();
        let gf = alg.bracket(&g, &f).unwrap();
        prop_assert!(add(&fg, &gf.scale(&sign(p, q))).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bracket_super_jacobi(case in bracket_cases(), a in raw_poly(2, 4, 2, 2), b in raw_poly(2, 4, 2, 2), c in raw_poly(2, 4, 1, 2), pa: bool, pb: bool, pc: bool) {
        let alg = algebra(case.0, case.1, case.2);
        let (Some((p, f)), Some((q, g)), Some((r, h))) = (sample(&alg, &a, pa), sample(&alg, &b, pb), sample(&alg, &c, pc)) else {
            return Ok(());
        };
        let br = |x: &SuperPolynomial, y: &SuperPolynomial| alg.bracket(x, y).unwrap();
        let t1 = br(&f, &br(&g, &h)).scale(&sign(p, r));
        let t2 = br(&g, &br(&h, &f)).scale(&sign(q, p));
        let t3 = br(&h, &br(&f, &g)).scale(&sign(r, q));
        prop_assert!(add(&add(&t1, &t2), &t3).is_zero());
    }

    #[test]
    fn bracket_leibniz(case in bracket_cases(), a in raw_poly(2, 4, 2, 2), b in raw_poly(2, 4, 2, 2), c in raw_poly(2, 4, 2, 2), pa: bool, pb: bool) {
        let alg = algebra(case.0, case.1, case.2);
        let (Some((p, f)), Some((q, g))) = (sample(&alg, &a, pa), sample(&alg, &b, pb)) else { return Ok(()) };
        let Some((_, h)) = sample(&alg, &c, false) else { return Ok(()) };
        let lhs = alg.bracket(&f, &mul(&g, &h)).unwrap();
        let rhs = add(&mul(&alg.bracket(&f, &g).unwrap(), &h), &mul(&g, &alg.bracket(&f, &h).unwrap()).scale(&sign(p, q)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_respects_standard_grading(case in bracket_cases(), e1 in prop::collection::vec(0i32..3, 2), o1 in 0u64..16, e2 in prop::collection::vec(0i32..3, 2), o2 in 0u64..16) {
        let alg = algebra(case.0, case.1, case.2);
        let Some((_, f)) = sample(&alg, &[(e1, o1, 1, 0)], false) else { return Ok(()) };
        let Some((_, g)) = sample(&alg, &[(e2, o2, 1, 0)], false) else { return Ok(()) };
        let b = alg.bracket(&f, &g).unwrap();
        if !b.is_zero() {
            prop_assert_eq!(b.degree_standard().unwrap(), f.degree_standard().unwrap() + g.degree_standard().unwrap());
        }
    }

    #[test]
    fn coordinate_change_is_equivariant(m in 2usize..=5, a in raw_poly(2, 5, 1, 3), b in raw_poly(2, 5, 1, 3), pa: bool, pb: bool) {
        let x = algebra(1, m, Coordinates::XiEtaTheta);
        let t = algebra(1, m, Coordinates::Theta);
        let (Some((_, f)), Some((_, g))) = (sample(&x, &a, pa), sample(&x, &b, pb)) else { return Ok(()) };
        let lhs = x.change_coordinates(&x.bracket(&f, &g).unwrap(), &t).unwrap();
        let rhs = t.bracket(&x.change_coordinates(&f, &t).unwrap(), &x.change_coordinates(&g, &t).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(t.change_coordinates(&lhs, &x).unwrap(), x.bracket(&f, &g).unwrap());
    }

    #[test]
    fn hamiltonian_fields_reverse_the_bracket(a in raw_poly(0, 4, 0, 3), b in raw_poly(0, 4, 0, 3), pa: bool, pb: bool) {
        let alg = algebra(0, 4, Coordinates::XiEtaTheta);
        let (Some((_, f)), Some((_, g))) = (sample(&alg, &a, pa), sample(&alg, &b, pb)) else { return Ok(()) };
        let hf = alg.hamiltonian_quotient_field(&f).unwrap();
        let hg = alg.hamiltonian_quotient_field(&g).unwrap();
        let hfg = alg.hamiltonian_quotient_field(&alg.bracket(&f, &g).unwrap()).unwrap();
        // The displayed H_f satisfies H_f(g) = −{f, g}, so f ↦ H_f reverses the bracket.
        prop_assert_eq!(hf.commutator(&hg), hfg.scale(&Scalar::from_int(-1)));
        prop_assert_eq!(hf.apply(&g), alg.bracket(&f, &g).unwrap().scale(&Scalar::from_int(-1)));
    }
}

#[test]
fn osp_dimension_formula_small_cases() {
    for n in 0..=3 {
        for m in 0..=6 {
            let alg = algebra(n, m, Coordinates::XiEtaTheta);
            let basis = alg.osp_quadratic_basis();
            assert_eq!(basis.len(), howe_core::poisson::osp_dimension(n, m), "n={n} m={m}");
            if n + m <= 4 {
                alg.bracket_table(&basis).unwrap();
            }
        }
    }
}

#[test]
fn hamiltonian_example_commutator() {
    let alg = algebra(0, 2, Coordinates::XiEtaTheta);
    let f = alg.parse("xi1*eta1").unwrap();
    let g = alg.var("xi1").unwrap();
    let lhs = alg.hamiltonian_quotient_field(&f).unwrap().commutator(&alg.hamiltonian_quotient_field(&g).unwrap());
    let b = alg.bracket(&f, &g).unwrap();
    assert_eq!(b, g);
    let d = NormalOrderedOperator::partial(alg.generators(), "eta1").unwrap();
    assert_eq!(lhs, d);
    assert_eq!(alg.hamiltonian_quotient_field(&b).unwrap(), d.scale(&Scalar::from_int(-1)));
}
