//! Seeded random-instance checks of the supercommutative product and the
//! Poisson bracket.

use howe_core::poisson::parity_parts;
use howe_core::{Coordinates, Gen, Monomial, Parity, PoissonAlgebra, PoissonAlgebraSpec, Scalar, SuperPolynomial};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyTally {
    pub property: String,
    pub instances: usize,
    pub failures: usize,
}

fn random_poly(rng: &mut StdRng, alg: &PoissonAlgebra, max_exp: i32, terms: usize) -> SuperPolynomial {
    let g = alg.generators();
    let mut p = SuperPolynomial::zero(g);
    for _ in 0..rng.gen_range(1..=terms) {
        let even = (0..g.n_even()).map(|_| rng.gen_range(0..=max_exp)).collect();
        let odd = rng.gen_range(0..(1u64 << g.n_odd()));
        let c = Scalar::from_ints(rng.gen_range(-3..=3), rng.gen_range(-1..=1), rng.gen_range(-2..=2), 0);
        p.add_term(Monomial { even, odd }, c);
    }
    p
}

/// A nonzero homogeneous sample.
fn homogeneous(rng: &mut StdRng, alg: &PoissonAlgebra, max_exp: i32, terms: usize) -> (Parity, SuperPolynomial) {
    loop {
        let parts = parity_parts(&random_poly(rng, alg, max_exp, terms));
        if parts.is_empty() {
            continue;
        }
        let k = rng.gen_range(0..parts.len());
        return parts[k].clone();
    }
}

fn sign(a: Parity, b: Parity) -> Scalar {
    if a == Parity::Odd && b == Parity::Odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

fn mul(a: &SuperPolynomial, b: &SuperPolynomial) -> SuperPolynomial {
    a.multiply(b).expect("same generators")
}

fn add(a: &SuperPolynomial, b: &SuperPolynomial) -> SuperPolynomial {
    a.try_add(b).expect("same generators")
}

fn tally(property: &str, instances: usize, mut check: impl FnMut() -> bool) -> PropertyTally {
    let failures = (0..instances).filter(|_| !check()).count();
    PropertyTally { property: property.into(), instances, failures }
}

/// Runs every property on `instances` random exact instances.
pub fn property_suite(seed: u64, instances: usize) -> Vec<PropertyTally> {
    let mut rng = StdRng::seed_from_u64(seed);
    let xi = PoissonAlgebra::new(PoissonAlgebraSpec::new(1, 3, Coordinates::XiEtaTheta));
    let th = PoissonAlgebra::new(PoissonAlgebraSpec::new(1, 3, Coordinates::Theta));
    let mut out = Vec::new();

    out.push(tally("supercommutativity", instances, || {
        let (p, u) = homogeneous(&mut rng, &xi, 2, 4);
        let (q, v) = homogeneous(&mut rng, &xi, 2, 4);
        mul(&u, &v) == mul(&v, &u).scale(&sign(p, q))
    }));
    out.push(tally("associativity", instances, || {
        let (x, y, z) = (random_poly(&mut rng, &xi, 2, 3), random_poly(&mut rng, &xi, 2, 3), random_poly(&mut rng, &xi, 2, 3));
        mul(&mul(&x, &y), &z) == mul(&x, &mul(&y, &z))
    }));
    out.push(tally("left-derivative Leibniz", instances, || {
        let (p, f) = homogeneous(&mut rng, &xi, 2, 4);
        let h = random_poly(&mut rng, &xi, 2, 4);
        let x = if rng.gen_bool(0.5) { Gen::Odd(rng.gen_range(0..3)) } else { Gen::Even(rng.gen_range(0..2)) };
        let lhs = mul(&f, &h).derivative(x);
        let rhs = add(&mul(&f.derivative(x), &h), &mul(&f, &h.derivative(x)).scale(&sign(p, x.parity())));
        lhs == rhs
    }));
    for (name, alg) in [("Theta", &th), ("xi-eta-theta", &xi)] {
        out.push(tally(&format!("bracket super-antisymmetry ({name})"), instances, || {
            let (p, f) = homogeneous(&mut rng, alg, 2, 3);
            let (q, g) = homogeneous(&mut rng, alg, 2, 3);
            let (fg, gf) = (alg.bracket(&f, &g).unwrap(), alg.bracket(&g, &f).unwrap());
            add(&fg, &gf.scale(&sign(p, q))).is_zero()
        }));
        out.push(tally(&format!("bracket super-Jacobi ({name})"), instances, || {
            let (p, f) = homogeneous(&mut rng, alg, 2, 2);
            let (q, g) = homogeneous(&mut rng, alg, 2, 2);
            let (r, h) = homogeneous(&mut rng, alg, 1, 2);
            let br = |x: &SuperPolynomial, y: &SuperPolynomial| alg.bracket(x, y).unwrap();
            let t1 = br(&f, &br(&g, &h)).scale(&sign(p, r));
            let t2 = br(&g, &br(&h, &f)).scale(&sign(q, p));
            let t3 = br(&h, &br(&f, &g)).scale(&sign(r, q));
            add(&add(&t1, &t2), &t3).is_zero()
        }));
    }
    out
}
