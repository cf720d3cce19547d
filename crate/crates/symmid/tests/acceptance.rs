//! Acceptance suite: one test per criterion, each printing a pass line
//! when it completes (run with `--nocapture` to see them live). Every
//! tolerance is exact equality; the expected values come from closed
//! formulas verified against independent oracles computed here.

use symmid::chains::{
    chain_stability_check, equivariant_hilbert_series, equivariant_poincare_series,
    hilbert_series_unreduced_variant,
};
use symmid::cli::{GRID_SEEDS, VERIFY_GRID};
use symmid::construction::{certify_seeded, orbit_span, psi_generators, random_alpha};
use symmid::duality::{ann_vs_reynolds_preimage, InvariantSubspace};
use symmid::exactla::{RankMode, RatMatrix};
use symmid::invariants::{
    betti_formula, betti_oracle, expected_general_hf, hilbert_function, minimal_hf_comparison,
    multiplicity, n_min, syzygy_report, wlp_check, ArtinianQuotient,
};
use symmid::partitions::{self, Partition};
use symmid::polyring::{big_m_basis, contract, m_basis, monomial_basis, Monomial, Polynomial};
use symmid::ratio::{rat, Rat};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn seeded_instance(n: usize, d: u32, r: usize, seed: u64) -> symmid::construction::CertifyOutcome {
    certify_seeded(n, d, r, seed, 100, RankMode::Exact)
}

#[test]
fn criterion_01_hilbert_function_on_grid() {
    for &(n, d, r) in &VERIFY_GRID {
        let expected = expected_general_hf(n, d, r);
        for seed in 1..=GRID_SEEDS {
            let outcome = seeded_instance(n, d, r, seed);
            assert_eq!(
                hilbert_function(&outcome.quotient),
                expected,
                "HF mismatch at (n,d,r)=({n},{d},{r}), seed {seed}"
            );
            // multiplicity closed form rides along
            let e = multiplicity(&outcome.quotient);
            assert_eq!(e, symmid::chains::multiplicity_formula(n, d, r));
        }
    }
    println!("criterion 01 (Hilbert function, grid x {GRID_SEEDS} seeds): PASS");
}

#[test]
fn criterion_02_betti_formula_vs_koszul_oracle() {
    for &(n, d, r) in &VERIFY_GRID {
        let formula = betti_formula(n, d, r);
        for seed in 1..=2u64 {
            let outcome = seeded_instance(n, d, r, seed);
            assert!(
                outcome.certificate.passed,
                "({n},{d},{r}) seed {seed} not general"
            );
            let oracle = betti_oracle(&outcome.quotient).expect("grid fits the oracle guard");
            assert_eq!(
                oracle.beta,
                formula.beta,
                "Betti mismatch at ({n},{d},{r}) seed {seed}:\nformula:\n{}\noracle:\n{}",
                formula.to_text(),
                oracle.to_text()
            );
            // table support is confined to rows 0, d-1, d
            for (&(i, j), _) in &oracle.beta {
                let row = j - i;
                assert!(
                    row == 0 || row == d as usize - 1 || row == d as usize,
                    "unexpected Betti row {row} at ({n},{d},{r})"
                );
            }
        }
    }
    println!("criterion 02 (Betti formula == Koszul oracle on grid): PASS");
}

#[test]
fn criterion_03_syzygy_dimension() {
    let mut points: Vec<(usize, u32, usize)> = VERIFY_GRID.to_vec();
    for r in 1..=3usize {
        for n in [5usize, 6] {
            points.push((n, 4, r));
        }
    }
    for (n, d, r) in points {
        let expected = partitions::count_with_max_parts(d, n)
            .saturating_sub(partitions::count_with_max_parts(d - 1, n) + r);
        for seed in 1..=GRID_SEEDS {
            let alphas = random_alpha(d, r, seed, 100);
            let u = InvariantSubspace::from_alpha_rows(n, d, &alphas);
            let report = syzygy_report(&symmid::duality::perp(&u));
            assert_eq!(
                report.dim_l, expected,
                "dim L mismatch at ({n},{d},{r}) seed {seed}"
            );
            assert!(
                report.property_p && report.property_q,
                "({n},{d},{r}) seed {seed}"
            );
        }
    }
    println!("criterion 03 (syzygy dimension, grid + quartic points): PASS");
}

#[test]
fn criterion_04_weak_lefschetz() {
    let mut rng = StdRng::seed_from_u64(0xac5e);
    for &(n, d, r) in &VERIFY_GRID {
        let outcome = seeded_instance(n, d, r, 1);
        assert!(outcome.certificate.passed);
        // the graded line with distinct small coefficients
        let graded: Vec<Rat> = (1..=n as i64).map(rat).collect();
        assert!(
            wlp_check(&outcome.quotient, &graded).maximal_rank,
            "({n},{d},{r}) graded line"
        );
        // five seeded lines, none a multiple of x_1 + ... + x_n
        let mut done = 0;
        while done < 5 {
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let first = coeffs.iter().find(|&&c| c != 0).copied().unwrap();
            if coeffs.iter().all(|&c| c == first) {
                continue;
            }
            let line: Vec<Rat> = coeffs.into_iter().map(rat).collect();
            let report = wlp_check(&outcome.quotient, &line);
            assert!(
                report.maximal_rank,
                "({n},{d},{r}) seeded line {done}: {report:?}"
            );
            done += 1;
        }
    }
    println!("criterion 04 (Weak Lefschetz, graded + 5 seeded lines per instance): PASS");
}

#[test]
fn criterion_05_generator_identity() {
    // small case: structured generators against both the annihilator
    // slice and the full orbit enumeration
    for seed in 1..=GRID_SEEDS {
        let alphas = random_alpha(2, 1, seed, 100);
        let u = InvariantSubspace::from_alpha_rows(4, 2, &alphas);
        let psi = psi_generators(&u, 4, RankMode::Exact).expect("slice identity at (4,2)");
        let forms: Vec<Polynomial> = psi.generators.iter().map(|g| g.f.clone()).collect();
        let orbit = orbit_span(&forms, 4, 2).unwrap();
        assert_eq!(orbit.space, psi.slice.space, "(4,2) seed {seed}");
    }
    // large case: 680 monomial columns; containment is exact contraction
    // and the dimension is pinned by a modular lower bound meeting it
    for seed in 1..=GRID_SEEDS {
        let alphas = random_alpha(3, 1, seed, 100);
        let u = InvariantSubspace::from_alpha_rows(15, 3, &alphas);
        let psi = psi_generators(&u, 15, RankMode::Fast).expect("slice identity at (15,3)");
        assert_eq!(
            psi.slice.dim(),
            symmid::duality::dim_graded_piece(15, 3) - 2
        );
    }
    println!("criterion 05 (generator identity at (4,2) and (15,3), 5 seeds each): PASS");
}

#[test]
fn criterion_06_duality_round_trips() {
    // dual bases pair to the identity matrix
    for n in 1..=7usize {
        for d in 1..=5u32 {
            let table = partitions::enumerate(d, n);
            for (i, a) in table.entries.iter().enumerate() {
                for (j, b) in table.entries.iter().enumerate() {
                    let pairing = contract(
                        &m_basis(a, n, false).unwrap(),
                        &big_m_basis(b, n, true).unwrap(),
                    );
                    let expected = if i == j {
                        Polynomial::monomial(n, true, Monomial::one(n), rat(1))
                    } else {
                        Polynomial::zero(n, true)
                    };
                    assert_eq!(pairing, expected, "n={n} d={d} {a:?} vs {b:?}");
                }
            }
        }
    }
    // annihilator of the complement equals the Reynolds preimage
    let mut rng = StdRng::seed_from_u64(0xd0a1);
    let p = partitions::count_with_max_parts(3, 5);
    for _ in 0..20 {
        let r = rng.gen_range(0..=p);
        let rows: Vec<Vec<Rat>> = (0..r)
            .map(|_| (0..p).map(|_| rat(rng.gen_range(-9..=9))).collect())
            .collect();
        let u = InvariantSubspace::from_m_rows(5, 3, rows);
        assert!(ann_vs_reynolds_preimage(&u));
    }
    println!("criterion 06 (dual bases identity d<=5 n<=7; Reynolds preimage x20): PASS");
}

#[test]
fn criterion_07_equivariant_hilbert_series() {
    for d in 1..=3u32 {
        for r in 1..=partitions::count(d) {
            let series = equivariant_hilbert_series(d, r).expand([8, d + 1, 0]);
            let variant = hilbert_series_unreduced_variant(d, r).expand([8, d + 1, 0]);
            let mut variant_matches = true;
            for n in n_min(d, r)..=8usize {
                // instance Hilbert function from an actual seeded ideal
                let outcome = seeded_instance(n, d, r, 7);
                let hf = hilbert_function(&outcome.quotient);
                assert_eq!(hf, expected_general_hf(n, d, r), "({n},{d},{r})");
                let poly = series.t_polynomial_at_s(n as u32);
                for (i, &h) in hf.iter().take(d as usize + 1).enumerate() {
                    assert_eq!(poly[i], rat(h as i64), "series ({n},{d},{r}) t^{i}");
                }
                let vpoly = variant.t_polynomial_at_s(n as u32);
                for (i, &h) in hf.iter().take(d as usize + 1).enumerate() {
                    if vpoly[i] != rat(h as i64) {
                        variant_matches = false;
                    }
                }
            }
            // the two written forms of the series differ; the reduced form
            // is the one the instances confirm
            assert!(
                !variant_matches,
                "unreduced variant unexpectedly matches d={d} r={r}"
            );
        }
    }
    println!("criterion 07 (equivariant Hilbert series vs instances; variant flagged): PASS");
}

#[test]
fn criterion_08_equivariant_poincare_series() {
    for d in 1..=3u32 {
        for r in 1..=partitions::count(d) {
            let series = equivariant_poincare_series(d, r).expand([8, 8, 11]);
            for n in n_min(d, r)..=6usize {
                let table = betti_formula(n, d, r);
                for i in 0..=n {
                    for j in i..=(i + d as usize) {
                        if i > 8 || j > 11 {
                            continue;
                        }
                        assert_eq!(
                            series.coeff([n as u32, i as u32, j as u32]),
                            rat(table.entry(i, j) as i64),
                            "(d,r)=({d},{r}) n={n} beta({i},{j})"
                        );
                    }
                }
            }
            // top-row columns: coefficient of t^i u^{i+d} is a s^i + l s^{i+1}
            let p = partitions::count(d);
            let a = (p - r) as i64;
            let ell = p.saturating_sub(partitions::count(d - 1) + r) as i64;
            for i in 1..=6u32 {
                let j = i + d;
                if j > 11 {
                    continue;
                }
                for se in 0..=8u32 {
                    let expected = if se == i {
                        rat(a)
                    } else if se == i + 1 {
                        rat(ell)
                    } else {
                        rat(0)
                    };
                    assert_eq!(
                        series.coeff([se, i, j]),
                        expected,
                        "(d,r)=({d},{r}) i={i} s^{se}"
                    );
                }
            }
        }
    }
    // oracle agreement where the oracle runs
    for (n, d, r) in [(3usize, 2u32, 1usize), (4, 2, 2), (5, 3, 1)] {
        let outcome = seeded_instance(n, d, r, 3);
        let oracle = betti_oracle(&outcome.quotient).unwrap();
        let series = equivariant_poincare_series(d, r).expand([n as u32, 8, 11]);
        for i in 0..=n {
            for j in i..=(i + d as usize) {
                assert_eq!(
                    series.coeff([n as u32, i as u32, j as u32]),
                    rat(oracle.entry(i, j) as i64),
                    "oracle ({n},{d},{r}) beta({i},{j})"
                );
            }
        }
    }
    println!(
        "criterion 08 (equivariant Poincare series vs formula, oracle, and row identity): PASS"
    );
}

#[test]
fn criterion_09_chain_stability() {
    let alpha = random_alpha(2, 1, 11, 100);
    let chain = chain_stability_check(&alpha, 2, 1, &[3, 4, 5, 6], RankMode::Exact);
    assert!(
        chain.all_passed(),
        "quadratic chain failed at {:?}",
        chain.first_failure
    );
    for stage in &chain.stages {
        assert_eq!(stage.betti_oracle_matches, Some(true), "n={}", stage.n);
        assert_eq!(stage.projective_dimension_is_n, Some(true), "n={}", stage.n);
        assert_eq!(stage.regularity_is_d, Some(true), "n={}", stage.n);
    }

    let alpha = random_alpha(3, 1, 11, 100);
    let chain = chain_stability_check(&alpha, 3, 1, &[5, 6], RankMode::Exact);
    assert!(
        chain.all_passed(),
        "cubic chain failed at {:?}",
        chain.first_failure
    );
    for stage in &chain.stages {
        assert_eq!(stage.regularity_is_d, Some(true), "n={}", stage.n);
        assert_eq!(stage.projective_dimension_is_n, Some(true), "n={}", stage.n);
    }

    let chain = chain_stability_check(&[vec![rat(1)]], 1, 1, &[2, 3, 4], RankMode::Exact);
    assert!(chain.all_passed());
    println!("criterion 09 (chain stability d=2 n=3..6, d=3 n=5..6, d=1): PASS");
}

#[test]
fn criterion_10_extremal_hilbert_function() {
    let mut rng = StdRng::seed_from_u64(0xeff);
    for &(n, d, r) in &VERIFY_GRID {
        let general = seeded_instance(n, d, r, 1);
        assert!(general.certificate.passed);
        let basis = monomial_basis(n, d);
        let mut tried = 0;
        while tried < 10 {
            let forms: Vec<Polynomial> = if tried % 2 == 0 {
                // r distinct monomial generators
                let mut picks = std::collections::BTreeSet::new();
                while picks.len() < r {
                    picks.insert(rng.gen_range(0..basis.len()));
                }
                picks
                    .into_iter()
                    .map(|i| Polynomial::monomial(n, false, basis[i].clone(), rat(1)))
                    .collect()
            } else {
                // r distinct invariant generators
                let table = partitions::enumerate(d, n);
                let mut picks = std::collections::BTreeSet::new();
                while picks.len() < r.min(table.len()) {
                    picks.insert(rng.gen_range(0..table.len()));
                }
                picks
                    .into_iter()
                    .map(|i| m_basis(&table.entries[i], n, false).unwrap())
                    .collect()
            };
            if forms.len() < r {
                tried += 1;
                continue;
            }
            let other = orbit_span(&forms, n, d).unwrap();
            assert!(
                minimal_hf_comparison(&general.quotient, &other),
                "domination failed at ({n},{d},{r}) sample {tried}"
            );
            tried += 1;
        }
    }
    println!("criterion 10 (extremal Hilbert function vs 10 orbit ideals per grid point): PASS");
}

#[test]
fn criterion_11_genericity_density() {
    let mut passed = 0usize;
    let total = 100usize;
    for seed in 0..total as u64 {
        let outcome = certify_seeded(5, 3, 1, seed, 100, RankMode::Exact);
        if outcome.certificate.passed {
            passed += 1;
        }
    }
    let rate = passed as f64 / total as f64;
    println!("criterion 11 (genericity density at (5,3,1)): observed pass rate {rate:.3} over {total} seeds");
    assert!(rate >= 0.95, "pass rate {rate} below 0.95");
    println!("criterion 11 (genericity density >= 0.95): PASS");
}

// supporting cross-checks required by the per-module invariants

#[test]
fn support_hf_domination_includes_pure_power_orbit() {
    // the orbit of x_1^d: dimension n, far from the general slice
    let n = 5;
    let d = 3;
    let f = Polynomial::monomial(
        n,
        false,
        Monomial::from_partition(&Partition::new(vec![3]), n).unwrap(),
        rat(1),
    );
    let other = orbit_span(&[f], n, d).unwrap();
    assert_eq!(other.dim(), 5);
    let general = seeded_instance(n, d, 1, 1);
    let other_q = ArtinianQuotient::from_slice(other.clone());
    assert_eq!(other_q.hf()[d as usize], 30);
    assert!(minimal_hf_comparison(&general.quotient, &other));
}

#[test]
fn support_random_alpha_rank_contract() {
    for seed in [0u64, 1, 99] {
        let rows = random_alpha(4, 3, seed, 100);
        assert_eq!(rows, random_alpha(4, 3, seed, 100));
        assert_eq!(RatMatrix::from_rows(rows).rank(), 3);
    }
}

#[test]
fn support_property_p_descends_to_subspaces() {
    // if linear syzygies of W are invariant, the same holds for subspaces
    let mut rng = StdRng::seed_from_u64(0x50b);
    let alphas = random_alpha(3, 1, 5, 100);
    let u = InvariantSubspace::from_alpha_rows(5, 3, &alphas);
    let w = symmid::duality::perp(&u);
    let report = syzygy_report(&w);
    assert!(report.property_p);
    let w_slice = w.to_inverse_system_slice();
    let dim = w_slice.dim();
    for _ in 0..10 {
        let k = rng.gen_range(1..=dim);
        let rows: Vec<Vec<Rat>> = (0..k)
            .map(|_| {
                let coefs: Vec<Rat> = (0..dim).map(|_| rat(rng.gen_range(-5..=5))).collect();
                let mut v = vec![rat(0); w.table.len()];
                for (c, r) in coefs.iter().zip(0..dim) {
                    for (slot, entry) in w.space.basis_matrix().row(r).iter().enumerate() {
                        v[slot] += c * entry;
                    }
                }
                v
            })
            .collect();
        let sub = symmid::duality::InvariantDualSubspace::from_theta_rows(5, 3, rows);
        let sub_report = syzygy_report(&sub);
        assert!(sub_report.property_p, "subspace of dim {k}");
    }
}

#[test]
fn support_socle_matches_formula_with_computed_syzygies() {
    // kernel socle equals the closed form with the computed dim L, on
    // instances certified general over the grid
    for &(n, d, r) in &VERIFY_GRID {
        let outcome = seeded_instance(n, d, r, 2);
        let soc = symmid::invariants::socle(&outcome.quotient);
        assert_eq!(
            soc,
            symmid::invariants::expected_general_socle(n, d, r),
            "({n},{d},{r})"
        );
    }
}
