mod common;

use proptest::prelude::*;

use common::{canonical_entropy, canonical_of, diag, h, svn};
use cstar_entropy::sampling::{
    haar_unitary, random_block_structure, random_density, random_element, random_probabilities, random_pure_state,
    random_state, rng_for,
};
use cstar_entropy::{
    commutant, convex_combine, doubly_stochastic_from_unitary, gns_construct, gns_state_entropy, is_irreducible,
    is_pure, majorizes, representative_density, shannon, state_entropy, state_from_density, AlgebraElement,
    BlockStructure, CMatrix32, CMatrix64, DensityMatrix, Majorization, StateFunctional, SubalgebraBasis,
};

fn structure(seed: u64) -> BlockStructure {
    random_block_structure(&mut rng_for(seed, 0), 8, 3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representative_is_a_fixed_point(seed in any::<u64>()) {
        let alg = structure(seed);
        let mut rng = rng_for(seed, 1);
        let d = alg.ambient_dim();
        let sigma = DensityMatrix::new(random_density::<f64, _>(&mut rng, d, d), 1e-9).unwrap();
        let rho = representative_density(&state_from_density(&sigma, &alg).unwrap(), &alg).unwrap();
        let (_, residual) = AlgebraElement::from_embedded(&alg, rho.matrix()).unwrap();
        prop_assert!(residual < 1e-10);
        let again = representative_density(&state_from_density(&rho, &alg).unwrap(), &alg).unwrap();
        prop_assert!((again.matrix() - rho.matrix()).norm() < 1e-10);
    }

    #[test]
    fn standard_values_determine_the_representative(seed in any::<u64>()) {
        let alg = structure(seed);
        let omega = random_state::<f64, _>(&mut rng_for(seed, 1), &alg);
        let values = omega.standard_values().unwrap();
        let other = StateFunctional::from_standard_values(alg.clone(), values).unwrap();
        let a = representative_density(&omega, &alg).unwrap();
        let b = representative_density(&other, &alg).unwrap();
        prop_assert!((a.matrix() - b.matrix()).norm() < 1e-10);
    }

    #[test]
    fn entropy_ignores_multiplicities(seed in any::<u64>()) {
        let alg = structure(seed);
        let omega = random_state::<f64, _>(&mut rng_for(seed, 1), &alg);
        let free = alg.multiplicity_free();
        let same = StateFunctional::canonical(free.clone(), canonical_of(&omega).clone(), 1e-9).unwrap();
        let s1 = state_entropy(&omega, &alg).unwrap().state_entropy;
        let s2 = state_entropy(&same, &free).unwrap().state_entropy;
        prop_assert!((s1 - s2).abs() < 1e-10);
        prop_assert!((s1 - canonical_entropy(canonical_of(&omega))).abs() < 1e-10);
    }

    #[test]
    fn entropy_is_concave(seed in any::<u64>(), t in 0.0f64..=1.0) {
        let alg = structure(seed);
        let mut rng = rng_for(seed, 1);
        let a = random_state::<f64, _>(&mut rng, &alg);
        let b = random_state::<f64, _>(&mut rng, &alg);
        let mix = convex_combine(&[a.clone(), b.clone()], &[t, 1.0 - t]).unwrap();
        let lhs = state_entropy(&mix, &alg).unwrap().state_entropy;
        let rhs = t * canonical_entropy(canonical_of(&a)) + (1.0 - t) * canonical_entropy(canonical_of(&b));
        prop_assert!(lhs >= rhs - 1e-9);
    }

    #[test]
    fn shannon_is_schur_concave(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = rng_for(seed, 1);
        let p = random_probabilities::<f64, _>(&mut rng, n);
        let u: CMatrix64 = haar_unitary(&mut rng, n);
        let b = doubly_stochastic_from_unitary(&u, 1e-9).unwrap();
        let q: Vec<f64> = (&b * nalgebra::DVector::from_vec(p.clone())).iter().copied().collect();
        let rel = majorizes(&p, &q, 1e-10).unwrap().relation;
        prop_assert!(matches!(rel, Majorization::Majorizes | Majorization::Equal));
        prop_assert!(shannon(&q).unwrap() >= shannon(&p).unwrap() - 1e-12);
        prop_assert!((shannon(&p).unwrap() - h(&p)).abs() < 1e-12);
    }

    #[test]
    fn double_commutant_returns_the_algebra(seed in any::<u64>()) {
        let alg = structure(seed);
        let v: CMatrix64 = haar_unitary(&mut rng_for(seed, 1), alg.ambient_dim());
        let sub = SubalgebraBasis::<f64>::from_structure(&alg).conjugated(&v);
        let c = commutant(&sub, 1e-9).unwrap();
        let mm: usize = alg.multiplicities().iter().map(|m| m * m).sum();
        prop_assert_eq!(c.dim(), mm);
        let cc = commutant(&c, 1e-9).unwrap();
        prop_assert_eq!(cc.dim(), sub.dim());
        for x in cc.elements() {
            prop_assert!(sub.residual(x) < 1e-8);
        }
    }

    #[test]
    fn purity_matches_irreducibility(seed in any::<u64>(), pure in any::<bool>()) {
        let alg = structure(seed);
        let mut rng = rng_for(seed, 1);
        let omega = if pure {
            random_pure_state::<f64, _>(&mut rng, &alg)
        } else {
            random_state::<f64, _>(&mut rng, &alg)
        };
        let g = gns_construct(&omega, &alg, 1e-9).unwrap();
        prop_assert_eq!(is_pure(&omega, &alg, 1e-9).unwrap(), is_irreducible(&g, 1e-9));
        let a = random_element::<f64, _>(&mut rng, &alg);
        prop_assert!((g.expectation(&a).unwrap() - omega.evaluate(&a).unwrap()).norm() < 1e-9);
        let s = gns_state_entropy(&omega, &alg).unwrap().state_entropy;
        prop_assert!((s - canonical_entropy(canonical_of(&omega))).abs() < 1e-9);
    }
}

#[test]
fn von_neumann_oracle_on_hand_spectrum() {
    assert!((svn(&diag(&[0.25, 0.75])) - 0.5623351446188083).abs() < 1e-15);
}

#[test]
fn single_precision_smoke() {
    let alg = BlockStructure::new([(1, 1), (1, 1)]).unwrap();
    let rho = CMatrix32::from_diagonal(&nalgebra::DVector::from_vec(vec![
        nalgebra::Complex::new(0.25f32, 0.0),
        nalgebra::Complex::new(0.75, 0.0),
    ]));
    let omega = state_from_density(&DensityMatrix::with_default_tol(rho).unwrap(), &alg).unwrap();
    let s = state_entropy(&omega, &alg).unwrap().state_entropy;
    assert!((s - 0.562_335_1).abs() < 1e-5);

    let alg = BlockStructure::new([(2, 2), (1, 1)]).unwrap();
    let omega = random_state::<f32, _>(&mut rng_for(3, 0), &alg);
    let direct = state_entropy(&omega, &alg).unwrap().state_entropy;
    let via_gns = gns_state_entropy(&omega, &alg).unwrap().state_entropy;
    assert!((direct - via_gns).abs() < 1e-3, "{direct} vs {via_gns}");
}
