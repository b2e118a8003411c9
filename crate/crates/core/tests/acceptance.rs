//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use rayon::prelude::*;

use common::{canonical_entropy, canonical_of, density_from_canonical, diag, h, svn};
use cstar_entropy::sampling::{
    haar_unitary, random_block_structure, random_density, random_element, random_pure_state, random_state, rng_for,
};
use cstar_entropy::thermo::heat_ledger;
use cstar_entropy::{
    block_decompose, convex_combine, doubly_stochastic_from_unitary, gas_entropy, generate_subalgebra, gns_construct,
    gns_state_entropy, infimum_oracle, is_irreducible, is_pure, majorizes, make_algebra, minimal_decomposition,
    representative_density, schrodinger_decomposition, shannon, state_entropy, state_from_density,
    zeno_success_probability, AlgebraElement, BlockStructure, CMatrix64, CanonicalForm, DensityMatrix, GasAccount,
    Majorization, StateFunctional, SubalgebraBasis,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn distinct_structures(seed: u64, count: usize, max_ambient: usize, max_dim: usize, max_mult: usize) -> Vec<BlockStructure> {
    let mut rng = rng_for(seed, 0);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let s = random_block_structure(&mut rng, max_ambient, max_dim, max_mult);
        if seen.insert(s.pairs()) {
            out.push(s);
        }
    }
    out
}

fn closed_form_vs_definition() -> Outcome {
    let structures = distinct_structures(101, 10, 8, 3, 2);
    let cases: Vec<(usize, u64)> = (0..10).flat_map(|s| (0..5).map(move |k| (s, k))).collect();
    let results: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|&(si, k)| {
            let alg = &structures[si];
            let omega = random_state::<f64, _>(&mut rng_for(1000 + si as u64, k), alg);
            let exact = canonical_entropy(canonical_of(&omega));
            let out = infimum_oracle(&omega, alg, 10_000, 7 + k).unwrap();
            (out.best_random - exact, (out.baseline - exact).abs())
        })
        .collect();
    let worst_gap = results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let worst_base = results.iter().map(|r| r.1).fold(0.0, f64::max);
    outcome(
        worst_gap >= -1e-9 && worst_base <= 1e-9,
        format!(
            "{} states over {} structures, 10^4 samples each: min(random − S) = {worst_gap:.3e}, |sample 0 − S| ≤ {worst_base:.1e}",
            results.len(),
            structures.len()
        ),
    )
}

fn von_neumann_equality() -> Outcome {
    let structures = distinct_structures(202, 40, 10, 3, 3);
    let mut worst_free: f64 = 0.0;
    let mut worst_mult: f64 = 0.0;
    let (mut n_free, mut n_mult) = (0, 0);
    for (si, alg) in structures.iter().enumerate() {
        for k in 0..5 {
            let omega = random_state::<f64, _>(&mut rng_for(2000 + si as u64, k), alg);
            let cf = canonical_of(&omega);
            let rep = state_entropy(&omega, alg).unwrap();
            let vn = svn(&density_from_canonical(cf, alg));
            let mult: f64 = cf
                .p
                .iter()
                .zip(alg.blocks())
                .map(|(p, b)| p * (b.multiplicity as f64).ln())
                .sum();
            if alg.is_multiplicity_free() {
                n_free += 1;
                worst_free = worst_free.max((rep.state_entropy - vn).abs());
            } else {
                n_mult += 1;
                worst_mult = worst_mult.max((vn - rep.state_entropy - mult).abs());
            }
        }
    }
    outcome(
        n_free > 0 && n_mult > 0 && worst_free <= 1e-9 && worst_mult <= 1e-9,
        format!(
            "{n_free} multiplicity-free states: |S − S_VN| ≤ {worst_free:.1e}; {n_mult} with multiplicities: |S_VN − S − Σp log m| ≤ {worst_mult:.1e}"
        ),
    )
}

fn schrodinger_suite() -> Outcome {
    let results: Vec<(f64, f64, f64, bool)> = (0..1000u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(303, k);
            let d = 1 + (k as usize % 6);
            let rank = 1 + (k as usize / 6) % d;
            let r = rank + (k as usize / 36) % 4;
            let rho = DensityMatrix::new(random_density::<f64, _>(&mut rng, d, rank), 1e-9).unwrap();
            let u: CMatrix64 = haar_unitary(&mut rng, r);
            let sd = schrodinger_decomposition(&rho, &u, 1e-9).unwrap();
            let recon = sd.decomposition.reconstruction_error(rho.matrix());
            let slack = shannon(&sd.decomposition.weights()).unwrap() - svn(rho.matrix());
            let b = doubly_stochastic_from_unitary(&u, 1e-9).unwrap();
            let mut bdefect: f64 = 0.0;
            for i in 0..r {
                bdefect = bdefect.max((b.row(i).sum() - 1.0).abs()).max((b.column(i).sum() - 1.0).abs());
            }
            let lam = nalgebra::DVector::from_vec(sd.eigenvalues.clone());
            let p = &b * lam;
            for (x, y) in p.iter().zip(&sd.weights) {
                bdefect = bdefect.max((x - y).abs());
            }
            let rel = majorizes(&sd.eigenvalues, &sd.weights, 1e-10).unwrap().relation;
            let majorized = matches!(rel, Majorization::Majorizes | Majorization::Equal);
            (recon, slack, bdefect, majorized)
        })
        .collect();
    let recon = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let slack = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let bdef = results.iter().map(|r| r.2).fold(0.0, f64::max);
    let maj = results.iter().filter(|r| r.3).count();
    outcome(
        recon <= 1e-9 && slack >= -1e-9 && bdef <= 1e-10 && maj == results.len(),
        format!(
            "{} (ρ, U), dim ≤ 6: reconstruction ≤ {recon:.1e}, min(H(p) − S_VN) = {slack:.3e}, ‖Bλ − p‖ and stochasticity ≤ {bdef:.1e}, λ ≻ p in {maj}/{}",
            results.len(),
            results.len()
        ),
    )
}

fn concavity_and_purity() -> Outcome {
    let structures = distinct_structures(404, 20, 8, 3, 2);
    let worst: f64 = (0..1000u64)
        .into_par_iter()
        .map(|k| {
            let alg = &structures[k as usize % structures.len()];
            let mut rng = rng_for(4040, k);
            let a = random_state::<f64, _>(&mut rng, alg);
            let b = random_state::<f64, _>(&mut rng, alg);
            let t = 0.05 + 0.9 * ((k as f64 * 0.618_033_988_75) % 1.0);
            let mix = convex_combine(&[a.clone(), b.clone()], &[t, 1.0 - t]).unwrap();
            let sa = canonical_entropy(canonical_of(&a));
            let sb = canonical_entropy(canonical_of(&b));
            let sm = state_entropy(&mix, alg).unwrap().state_entropy;
            t * sa + (1.0 - t) * sb - sm
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);

    let mut pure_max: f64 = 0.0;
    let mut pure_flagged = 0;
    let mut mixed_min = f64::INFINITY;
    for k in 0..200u64 {
        let alg = &structures[k as usize % structures.len()];
        let mut rng = rng_for(4041, k);
        let pure = random_pure_state::<f64, _>(&mut rng, alg);
        if is_pure(&pure, alg, 1e-9).unwrap() {
            pure_flagged += 1;
            pure_max = pure_max.max(state_entropy(&pure, alg).unwrap().state_entropy);
        }
        if alg.len() >= 2 {
            let a = 0.1 + 0.8 * ((k as f64 * 0.754_877_666) % 1.0);
            let mut p = vec![0.0; alg.len()];
            p[0] = a;
            p[1] = 1.0 - a;
            let rhos = alg
                .blocks()
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    (i < 2).then(|| {
                        let v = cstar_entropy::sampling::random_unit_vector::<f64, _>(&mut rng, b.dim);
                        &v * v.adjoint()
                    })
                })
                .collect();
            let omega = StateFunctional::canonical(alg.clone(), CanonicalForm { p, rhos }, 1e-9).unwrap();
            mixed_min = mixed_min.min(state_entropy(&omega, alg).unwrap().state_entropy);
        }
    }
    outcome(
        worst <= 1e-9 && pure_flagged == 200 && pure_max <= 1e-9 && mixed_min > 0.01,
        format!(
            "1000 pairs: max concavity violation = {worst:.3e}; {pure_flagged}/200 pure flagged, max S = {pure_max:.1e}; two-weight states min S = {mixed_min:.4}"
        ),
    )
}

fn gns_suite() -> Outcome {
    let structures = distinct_structures(505, 25, 12, 3, 3);
    let results: Vec<(f64, bool, f64)> = (0..100u64)
        .into_par_iter()
        .map(|k| {
            let alg = &structures[k as usize % structures.len()];
            let mut rng = rng_for(5050, k);
            let omega = if k % 2 == 0 {
                random_pure_state::<f64, _>(&mut rng, alg)
            } else {
                random_state::<f64, _>(&mut rng, alg)
            };
            let g = gns_construct(&omega, alg, 1e-9).unwrap();
            let mut repro: f64 = 0.0;
            for _ in 0..20 {
                let a = random_element::<f64, _>(&mut rng, alg);
                repro = repro.max((g.expectation(&a).unwrap() - omega.evaluate(&a).unwrap()).norm());
            }
            let agree = is_pure(&omega, alg, 1e-9).unwrap() == is_irreducible(&g, 1e-9);
            let exact = canonical_entropy(canonical_of(&omega));
            let gap = (gns_state_entropy(&omega, alg).unwrap().state_entropy - exact).abs();
            (repro, agree, gap)
        })
        .collect();
    let repro = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let agree = results.iter().filter(|r| r.1).count();
    let gap = results.iter().map(|r| r.2).fold(0.0, f64::max);
    outcome(
        repro <= 1e-9 && agree == results.len() && gap <= 1e-9,
        format!(
            "{} states (ambient ≤ 12): reproduction ≤ {repro:.1e}, purity ⇔ irreducibility {agree}/{}, |S_GNS − S| ≤ {gap:.1e}",
            results.len(),
            results.len()
        ),
    )
}

fn structure_discovery() -> Outcome {
    let results: Vec<(bool, bool)> = (0..100u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(606, k);
            let s = random_block_structure(&mut rng, 12, 4, 3);
            let d = s.ambient_dim();
            let v: CMatrix64 = haar_unitary(&mut rng, d);
            let gens: Vec<CMatrix64> = (0..2)
                .map(|_| &v * random_element::<f64, _>(&mut rng, &s).embed() * v.adjoint())
                .collect();
            let sub = generate_subalgebra(&gens, 1e-9).unwrap();
            let found = match block_decompose(&sub, 1e-9, k) {
                Ok(f) => f,
                Err(_) => return (false, false),
            };
            let same = found.structure.sorted_pairs() == s.sorted_pairs();
            let laws = found.structure.algebra_dim() == sub.dim() && found.structure.ambient_dim() == d;
            (same, laws)
        })
        .collect();
    let exact = results.iter().filter(|r| r.0).count();
    let laws = results.iter().filter(|r| r.1).count();
    outcome(
        exact == results.len() && laws == results.len(),
        format!(
            "{} conjugated algebras with Σnm ≤ 12: structure recovered {exact}/{}, dimension laws {laws}/{}",
            results.len(),
            results.len(),
            results.len()
        ),
    )
}

fn representative_uniqueness() -> Outcome {
    let structures = distinct_structures(707, 30, 10, 3, 3);
    let mut repro: f64 = 0.0;
    let mut proj: f64 = 0.0;
    let mut declared: f64 = 0.0;
    let mut count = 0;
    for (si, alg) in structures.iter().enumerate() {
        let projector = SubalgebraBasis::<f64>::from_structure(alg).projector();
        for k in 0..4 {
            let mut rng = rng_for(7070 + si as u64, k);
            let d = alg.ambient_dim();
            let sigma = random_density::<f64, _>(&mut rng, d, 1 + (k as usize) % d);
            let omega = state_from_density(&DensityMatrix::new(sigma.clone(), 1e-9).unwrap(), alg).unwrap();
            let rho = representative_density(&omega, alg).unwrap();
            for e in AlgebraElement::<f64>::standard_basis(alg) {
                let want = (&sigma * e.embed()).trace();
                let got = (rho.matrix() * e.embed()).trace();
                repro = repro.max((want - got).norm());
            }
            let vec_sigma = nalgebra::DVector::from_column_slice(sigma.as_slice());
            let projected = CMatrix64::from_column_slice(d, d, (&projector * vec_sigma).as_slice());
            proj = proj.max((projected - rho.matrix()).norm());

            // The same functional given on a random declared basis.
            let basis: Vec<AlgebraElement<f64>> =
                (0..alg.algebra_dim()).map(|_| random_element::<f64, _>(&mut rng, alg)).collect();
            let values = basis.iter().map(|b| (&sigma * b.embed()).trace()).collect();
            let other = StateFunctional::from_values(alg.clone(), basis, values).unwrap();
            let rho2 = representative_density(&other, alg).unwrap();
            declared = declared.max((rho2.matrix() - rho.matrix()).norm());
            count += 1;
        }
    }
    outcome(
        repro <= 1e-10 && proj <= 1e-10 && declared <= 1e-10,
        format!(
            "{count} states: reproduction on standard basis ≤ {repro:.1e}, distance to HS projection ≤ {proj:.1e}, declared-basis route ≤ {declared:.1e}"
        ),
    )
}

fn thermo_checks() -> Outcome {
    let p4 = zeno_success_probability::<f64>(10_000).unwrap();
    let mut grid: Vec<i64> = (0..=100).map(|j| 10f64.powf(j as f64 / 20.0).round() as i64).collect();
    grid.dedup();
    let probs: Vec<f64> = grid.iter().map(|&k| zeno_success_probability::<f64>(k).unwrap()).collect();
    let monotone = probs.windows(2).all(|w| w[1] >= w[0]);
    let bound = grid
        .iter()
        .zip(&probs)
        .filter(|(&k, _)| k >= 2)
        .all(|(&k, &p)| p >= 1.0 - std::f64::consts::PI.powi(2) / (4.0 * k as f64));

    let structures = distinct_structures(808, 20, 8, 3, 2);
    let mut closure: f64 = 0.0;
    let mut gas: f64 = 0.0;
    let mut n_free = 0;
    for (si, alg) in structures.iter().enumerate() {
        for k in 0..5 {
            let omega = random_state::<f64, _>(&mut rng_for(8080 + si as u64, k), alg);
            let acct = GasAccount::new(1000, 300.0, vec![0.0; alg.len()], 1.380649e-23).unwrap();
            let ledger = heat_ledger(&omega, alg, &acct).unwrap();
            let vn = svn(&density_from_canonical(canonical_of(&omega), alg));
            closure = closure.max((ledger.entropy - vn).abs());
            if alg.is_multiplicity_free() {
                n_free += 1;
                let g = gas_entropy(&omega, alg, &acct).unwrap();
                gas = gas.max((g.per_copy - canonical_entropy(canonical_of(&omega))).abs());
                let mut a = ledger.weights.clone();
                let mut b = minimal_decomposition(&omega, alg).unwrap().weights();
                a.sort_by(f64::total_cmp);
                b.sort_by(f64::total_cmp);
                if a.len() == b.len() {
                    for (x, y) in a.iter().zip(&b) {
                        closure = closure.max((x - y).abs());
                    }
                } else {
                    closure = f64::INFINITY;
                }
            }
        }
    }
    outcome(
        p4 >= 0.999 && monotone && bound && closure <= 1e-9 && gas <= 1e-9 && n_free > 0,
        format!(
            "P(10^4) = {p4:.6}; monotone on {} grid points to 10^5: {monotone}; bound 1 − π²/4k: {bound}; heat-ledger closure ≤ {closure:.1e}; gas entropy vs S on {n_free} states ≤ {gas:.1e}",
            grid.len()
        ),
    )
}

fn hand_values() -> Outcome {
    let alg = make_algebra(&[(1, 1), (1, 1)]).unwrap();
    let omega = state_from_density(&DensityMatrix::new(diag(&[0.25, 0.75]), 1e-9).unwrap(), &alg).unwrap();
    let s = state_entropy(&omega, &alg).unwrap().state_entropy;
    let quarter = (s - 0.5623351).abs();
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        let alg = make_algebra(&[(n, 1)]).unwrap();
        let omega = state_from_density(&DensityMatrix::<f64>::maximally_mixed(n), &alg).unwrap();
        let s = state_entropy(&omega, &alg).unwrap().state_entropy;
        worst = worst.max((s - (n as f64).ln()).abs());
    }
    let reference = h(&[0.25, 0.75]);
    outcome(
        quarter <= 1e-6 && worst <= 1e-12 && (s - reference).abs() <= 1e-12,
        format!("p = (¼, ¾): S = {s:.7} (|Δ| = {quarter:.1e}); 𝕀/n on M_n, n ≤ 8: |S − log n| ≤ {worst:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("closed form vs definition", closed_form_vs_definition),
        ("von Neumann equality up to multiplicity", von_neumann_equality),
        ("schrodinger suite", schrodinger_suite),
        ("concavity and purity", concavity_and_purity),
        ("gns suite", gns_suite),
        ("structure discovery", structure_discovery),
        ("representative uniqueness", representative_uniqueness),
        ("thermo checks", thermo_checks),
        ("hand values", hand_values),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.ok {
            failed += 1;
        }
        println!(
            "{} [{}] {name}: {} ({:.1}s)",
            if result.ok { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            started.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
