use howe_core::stringy::*;
use howe_core::{Error, Scalar};
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Scalar {
    Scalar::frac(a, b)
}

fn vir_element() -> impl Strategy<Value = VirElement> {
    (prop::collection::vec((-5i64..=5, -3i64..=3), 1..4), -2i64..=2).prop_map(|(terms, z)| {
        let mut x = VirElement::central().scale(&Scalar::from_int(z));
        for (i, c) in terms {
            x = x.add(&VirElement::basis(i).scale(&Scalar::from_int(c)));
        }
        x
    })
}

proptest! {
    #[test]
    fn vir_bracket_is_a_lie_bracket(x in vir_element(), y in vir_element(), w in vir_element()) {
        prop_assert!(vir_bracket(&x, &y).add(&vir_bracket(&y, &x)).is_zero());
        let j = vir_bracket(&x, &vir_bracket(&y, &w))
            .add(&vir_bracket(&y, &vir_bracket(&w, &x)))
            .add(&vir_bracket(&w, &vir_bracket(&x, &y)));
        prop_assert!(j.is_zero());
    }
}

#[test]
fn vir_jacobi_on_basis() {
    for i in -5..=5 {
        for j in -5..=5 {
            for k in -5..=5 {
                let (a, b, c) = (VirElement::basis(i), VirElement::basis(j), VirElement::basis(k));
                let s = vir_bracket(&a, &vir_bracket(&b, &c))
                    .add(&vir_bracket(&b, &vir_bracket(&c, &a)))
                    .add(&vir_bracket(&c, &vir_bracket(&a, &b)));
                assert!(s.is_zero(), "{i} {j} {k}");
            }
        }
    }
}

#[test]
fn density_modules_are_representations() {
    let grid = [
        (q(0, 1), q(0, 1)),
        (q(1, 2), q(0, 1)),
        (q(1, 1), q(0, 1)),
        (q(0, 1), q(1, 2)),
        (q(1, 2), q(1, 2)),
        (q(2, 1), q(1, 3)),
        (q(-1, 2), q(1, 5)),
        (q(3, 2), q(-1, 3)),
        (q(1, 3), q(2, 7)),
    ];
    for (l, m) in grid {
        let mut specs = vec![DensityModuleSpec::new(l.clone(), m.clone())];
        specs.extend(DensityModuleSpec::quotient(l, m).ok());
        for spec in specs {
            for a in -3..=3 {
                for b in -3..=3 {
                    for j in -12..=12 {
                        assert!(spec.representation_defect(a, b, j).is_zero(), "{spec:?} {a} {b} {j}");
                    }
                }
            }
        }
    }
}

#[test]
fn printed_forms_are_invariant_with_their_symmetry() {
    let cases = [
        (DensityModuleSpec::new(q(1, 2), q(0, 1)), Symmetry::Symmetric),
        (DensityModuleSpec::new(q(1, 2), q(1, 2)), Symmetry::Symmetric),
        (DensityModuleSpec::new(q(0, 1), q(1, 2)), Symmetry::Skew),
        (DensityModuleSpec::quotient(q(0, 1), q(0, 1)).unwrap(), Symmetry::Skew),
    ];
    for (spec, sym) in cases {
        assert_eq!(printed_form_is_invariant(&spec, 16), Some(true), "{spec:?}");
        for i in -8..=8 {
            if spec.is_excluded(i) {
                continue;
            }
            let row: Vec<Scalar> = (-16..=16).filter(|&j| !spec.is_excluded(j)).map(|j| printed_form(&spec, i, j).unwrap()).collect();
            assert!(row.iter().any(|c| !c.is_zero()), "degenerate at {i}");
            for j in -8..=8 {
                if spec.is_excluded(j) {
                    continue;
                }
                let (a, b) = (printed_form(&spec, i, j).unwrap(), printed_form(&spec, j, i).unwrap());
                match sym {
                    Symmetry::Symmetric => assert_eq!(a, b),
                    Symmetry::Skew => assert_eq!(a, -b),
                }
            }
        }
        let scan = invariant_form_scan(&spec, 8);
        assert_eq!((scan.symmetric, scan.skew), (sym == Symmetry::Symmetric, sym == Symmetry::Skew), "{spec:?}");
    }
    // without removing constants the skew pairing on F_{0,0} degenerates
    assert_eq!(printed_form_is_invariant(&DensityModuleSpec::new(q(0, 1), q(0, 1)), 16), Some(true));
    let s = invariant_form_scan(&DensityModuleSpec::new(q(0, 1), q(0, 1)), 8);
    assert!(!s.symmetric && !s.skew);
    assert!(DensityModuleSpec::quotient(q(1, 2), q(0, 1)).is_err());
    assert!(DensityModuleSpec::quotient(q(0, 1), q(1, 2)).is_err());
}

#[test]
fn scan_outside_the_listed_modules() {
    for (l, m) in [(q(1, 1), q(0, 1)), (q(2, 1), q(0, 1)), (q(1, 3), q(0, 1)), (q(1, 2), q(1, 3))] {
        let s = invariant_form_scan(&DensityModuleSpec::new(l, m), 8);
        assert!(!s.symmetric && !s.skew, "{s:?}");
    }
    // d : F_{0,μ} → F_{1,μ} is invertible for μ ∉ Z and carries the skew form along;
    // at μ = 1/2 it is ⟨φ_i, φ_j⟩ = 1/(i + 3/2) on i + j = −3
    let spec = DensityModuleSpec::new(q(1, 1), q(1, 2));
    let b = |i: i64, j: i64| if i + j == -3 { (&Scalar::from_int(i) + &q(3, 2)).inv().unwrap() } else { Scalar::zero() };
    for n in -3..=3 {
        for i in -10..=10 {
            for j in -10..=10 {
                let l = spec.action(n, i).map(|(c, k)| &c * &b(k, j)).unwrap_or_else(Scalar::zero);
                let r = spec.action(n, j).map(|(c, k)| &c * &b(i, k)).unwrap_or_else(Scalar::zero);
                assert!((&l + &r).is_zero());
                assert_eq!(b(i, j), -b(j, i));
            }
        }
    }
    let s = invariant_form_scan(&spec, 8);
    assert!(!s.symmetric && s.skew);
}

fn spaces() -> Vec<ModeSpace> {
    let mut v: Vec<ModeSpace> = HalfModule::ALL.iter().map(|m| m.space()).collect();
    for st in [Statistics::Fermionic, Statistics::Bosonic] {
        v.push(ModeSpace::doubled(DensityModuleSpec::new(q(3, 2), q(1, 3)), st, 1));
        v.push(ModeSpace::doubled(DensityModuleSpec::new(q(0, 1), q(0, 1)), st, -1));
    }
    v
}

#[test]
fn fock_operators_realize_the_action() {
    for space in spaces() {
        let r = FockRealization::new(space.clone(), 6);
        for n in -2..=2 {
            let e = r.e(n).unwrap();
            for d in -2..2 {
                for m in [Mode::F(d), Mode::Dual(d)] {
                    let Ok(x) = r.mode_operator(m) else { continue };
                    if space.partner(m).is_none() {
                        continue;
                    }
                    let lhs = e.commutator(&x);
                    let rhs = match space.action(n, m) {
                        Some((c, k)) => r.mode_operator(k).unwrap().scale(&c),
                        None => lhs.scale(&Scalar::zero()),
                    };
                    assert_eq!(lhs, rhs, "{space:?} e_{n} on {m:?}");
                }
            }
        }
    }
}

#[test]
fn fock_operators_close_on_the_vacuum() {
    for space in spaces() {
        let r = FockRealization::new(space.clone(), 8);
        let vac = r.vacuum();
        for m in -2..=2i64 {
            for n in -2..=2i64 {
                let lhs = r.e(m).unwrap().commutator(&r.e(n).unwrap()).apply(&vac);
                let rhs = r.e(m + n).unwrap().apply(&vac).scale(&Scalar::from_int(n - m));
                let diff = lhs.try_sub(&rhs).unwrap();
                let c = diff.coefficient(&howe_core::Monomial::one(&r.gens));
                assert_eq!(diff, vac.scale(&c), "{space:?} {m} {n}");
                if m + n != 0 {
                    assert!(c.is_zero());
                }
            }
        }
    }
}

/// `⟨[E_n, E_{−n}]⟩` for `E_n = Σ_j a_n(j) :ψ_{j+n} ψ*_j:` with `ψ_i` created for `i < s`
/// and `ψ*_j` for `j ≥ s`: only `s ≤ j < s + n` contributes, with sign `−1` for bosons.
fn doubled_oracle(l: &Scalar, m: &Scalar, st: Statistics, s: i64) -> (Scalar, Scalar) {
    let a = |n: i64, j: i64| &(m + &Scalar::from_int(j)) + &(l * &Scalar::from_int(n + 1));
    let sign = if st == Statistics::Fermionic { Scalar::one() } else { -Scalar::one() };
    let t = |n: i64| -> Scalar {
        let mut acc = Scalar::zero();
        for j in s..s + n {
            acc += &(&a(n, j - n) * &a(-n, j));
        }
        &acc * &sign
    };
    let h = &t(1) * &q(-1, 2);
    let c = &(&t(2) + &(&h * &Scalar::from_int(4))) * &Scalar::from_int(-2);
    (c, h)
}

#[test]
fn doubled_weights_match_the_wick_oracle() {
    let mut grid = default_grid();
    grid.push((q(1, 1), q(0, 1)));
    for (l, m) in &grid {
        for st in [Statistics::Fermionic, Statistics::Bosonic] {
            for s in -2..=2 {
                let r = doubled_weights(l, m, st, s, 6).unwrap();
                assert_eq!((r.c.clone(), r.h.clone()), doubled_oracle(l, m, st, s), "{l} {m} {st:?} {s}");
                assert!(r.window_stable && r.vacuum_highest);
            }
        }
    }
}

#[test]
fn doubled_central_charge_is_the_table_polynomial_for_every_charge() {
    for (l, m) in default_grid() {
        let (ec, _) = table_formula(&l, &m);
        for s in -2..=2 {
            let spin = doubled_weights(&l, &m, Statistics::Fermionic, s, 6).unwrap();
            let osc = doubled_weights(&l, &m, Statistics::Bosonic, s, 6).unwrap();
            assert_eq!(spin.c, ec);
            assert_eq!(osc.c, -ec.clone());
            assert_eq!(osc.h, -spin.h.clone());
        }
    }
}

#[test]
fn half_modules_match_free_field_values() {
    // standard L_n = −e_n, so the central element is −c_std and e_0 has eigenvalue −h_std;
    // one real fermion: c_std = 1/2; one chiral boson: c_std = 1, twisted sector h_std = 1/16
    let expected = [(q(-1, 2), q(0, 1)), (q(-1, 1), q(-1, 16)), (q(-1, 1), q(0, 1))];
    for (m, (c, h)) in HalfModule::ALL.iter().zip(expected) {
        let r = central_charge(&m.space(), 6).unwrap();
        assert_eq!((r.c, r.h), (c, h), "{}", m.name());
        assert!(r.window_stable && r.vacuum_highest);
    }
}

#[test]
fn window_too_small_is_reported() {
    let space = ModeSpace::doubled(DensityModuleSpec::new(q(1, 1), q(0, 1)), Statistics::Fermionic, 3);
    let err = FockRealization::new(space.clone(), 2).weights().unwrap_err();
    assert!(matches!(err, Error::WindowTooSmall(_)), "{err:?}");
    assert!(FockRealization::new(space, 5).weights().is_ok());
}

#[test]
fn calibration_scan_never_reaches_the_table_anchor() {
    let scan = anchor_scan(6).unwrap();
    for (s, c, h) in &scan {
        assert_eq!(*c, Scalar::from_int(2));
        // h = −k(k+1)/2 with k = s for s ≥ 0 and k = −s − 1 below
        let k = if *s >= 0 { *s } else { -s - 1 };
        assert_eq!(*h, q(-k * (k + 1), 2));
    }
    assert!(matches!(table_n0(&default_grid(), 6), Err(Error::Convention(_))));
    // at charge 1 the measured weight is −1/2 of the tabulated (μ+2λ)(μ+1) on the whole grid
    let t = table_at_charge(&default_grid(), 1, 6).unwrap();
    for p in &t.points {
        assert_eq!(p.c, p.expected_c);
        assert_eq!(p.h, &p.expected_h * &q(-1, 2));
    }
}
