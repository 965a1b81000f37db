//! Acceptance suite: each test exercises one acceptance criterion at its
//! stated tolerance (all criteria are exact) and prints one PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use schur_forge::azumaya::{
    bicommutant_check, commutant_algebra, matrix_algebra_sca, quaternion_algebra,
    regular_representation, zero_divisor_search, ZERO_DIVISOR_HEIGHT,
};
use schur_forge::brauer::{
    geometric_origin_report, hilbert_symbol_int, quadratic_origin_demo, DemoMode, OriginWitness,
    Place, QuaternionClass,
};
use schur_forge::descent::GaloisSetup;
use schur_forge::exactfield::{
    is_prime, is_squarefree_i64, rat, rat_int, Field, PrimeField, QuadField, Rational, Rationals,
};
use schur_forge::linalg::{self, EchelonSpan, Matrix};
use schur_forge::matrep::{
    are_isomorphic, commutant_basis, commutant_map_rank, is_absolutely_simple, is_schur,
    MatrixRep,
};
use schur_forge::ncpoly::{check_relations, FreePresentation, MatAlgebra};
use schur_forge::quiverkit::{
    matrep_to_quiver, quiver_to_matrep, right_ideal_dims_for_matrep, Quiver, QuiverRep,
};
use schur_forge::{Budget, SplitMix64};

fn squarefree_values(bound: i64) -> Vec<i64> {
    (-bound..=bound)
        .filter(|&n| n != 0 && is_squarefree_i64(n, 1_000_000).unwrap())
        .collect()
}

#[test]
fn criterion_01_quadratic_demo() {
    for lambda in [rat_int(3), rat_int(-3)] {
        assert!(quadratic_origin_demo(&lambda, DemoMode::RealSign).unwrap());
        assert!(quadratic_origin_demo(&lambda, DemoMode::RationalSquare).is_ok());
    }
    assert!(quadratic_origin_demo(&rat(5, 2), DemoMode::RealSign).unwrap());
    for lambda in [rat_int(1), rat_int(0), rat(-3, 2)] {
        assert!(!quadratic_origin_demo(&lambda, DemoMode::RealSign).unwrap());
    }
    println!("ACCEPTANCE 01 quadratic double-cover demo: PASS");
}

#[test]
fn criterion_02_commutant_exhaustive_over_f3_f5() {
    let mut checked = 0usize;
    for p in [3u64, 5] {
        let fp = PrimeField::new(p).unwrap();
        let pres = FreePresentation::free(&["t"]);
        let values: Vec<i64> = (0..p as i64).collect();
        // all p^4 one-generator representations of degree 2
        for &a in &values {
            for &b in &values {
                for &c in &values {
                    for &d in &values {
                        let t = Matrix::from_rows(vec![
                            vec![fp.elem(a), fp.elem(b)],
                            vec![fp.elem(c), fp.elem(d)],
                        ])
                        .unwrap();
                        let rep = MatrixRep::new(pres.clone(), fp, 2, vec![t.clone()]).unwrap();
                        let cb = commutant_basis(&rep);
                        let mut span = EchelonSpan::new(fp, 4);
                        for v in &cb.basis {
                            // each basis element must literally commute
                            assert_eq!(
                                linalg::mul(&fp, v, &t),
                                linalg::mul(&fp, &t, v)
                            );
                            span.insert(v.entries().to_vec());
                        }
                        assert_eq!(span.dim(), cb.dim());
                        // exhaustive enumeration of all commuting matrices
                        let mut count = 0u64;
                        for &x in &values {
                            for &y in &values {
                                for &z in &values {
                                    for &w in &values {
                                        let f = Matrix::from_rows(vec![
                                            vec![fp.elem(x), fp.elem(y)],
                                            vec![fp.elem(z), fp.elem(w)],
                                        ])
                                        .unwrap();
                                        if linalg::mul(&fp, &f, &t) == linalg::mul(&fp, &t, &f) {
                                            count += 1;
                                            assert!(span.contains(f.entries()));
                                        }
                                    }
                                }
                            }
                        }
                        // the commuting set is a vector space of size p^dim
                        assert_eq!(count, (p).pow(cb.dim() as u32));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(checked, 81 + 625);
    println!("ACCEPTANCE 02 commutant vs exhaustive enumeration over F3/F5 ({checked} reps): PASS");
}

fn random_matrix<F: Field>(field: &F, n: usize, rng: &mut SplitMix64) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |_, _| field.from_integer(rng.int_in(-3, 3)))
}

fn generated_reps<F: Field>(field: F, rng: &mut SplitMix64, per_degree: usize) -> Vec<MatrixRep<F>> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        for _ in 0..per_degree {
            let gens = rng.int_in(1, 2) as usize;
            let names: Vec<String> = (0..gens).map(|i| format!("t{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let images = (0..gens)
                .map(|_| random_matrix(&field, n, rng))
                .collect();
            out.push(
                MatrixRep::new(FreePresentation::free(&refs), field.clone(), n, images).unwrap(),
            );
        }
    }
    out
}

#[test]
fn criterion_03_absolutely_simple_implies_schur() {
    let mut rng = SplitMix64::new(0xACCE03);
    let mut total = 0usize;
    let mut simple_count = 0usize;
    fn run<F: Field>(
        reps: &[MatrixRep<F>],
        field_name: &str,
        total: &mut usize,
        simple_count: &mut usize,
    ) {
        for rep in reps {
            *total += 1;
            if is_absolutely_simple(rep) {
                *simple_count += 1;
                assert!(
                    is_schur(rep),
                    "absolutely simple but not Schur over {field_name}"
                );
            }
        }
    }
    let reps_q = generated_reps(Rationals, &mut rng, 14);
    run(&reps_q, "Q", &mut total, &mut simple_count);
    let reps_qi = generated_reps(QuadField::new(-1).unwrap(), &mut rng, 14);
    run(&reps_qi, "Q(i)", &mut total, &mut simple_count);
    let reps_f5 = generated_reps(PrimeField::new(5).unwrap(), &mut rng, 14);
    run(&reps_f5, "F5", &mut total, &mut simple_count);
    assert!(total >= 100, "need at least 100 generated representations");
    assert!(simple_count > 10, "the family must contain simple instances");
    println!(
        "ACCEPTANCE 03 absolutely simple => Schur on {total} reps ({simple_count} simple): PASS"
    );
}

#[test]
fn criterion_04_rank_identity() {
    let mut rng = SplitMix64::new(0xACCE04);
    let mut total = 0usize;
    fn check<F: Field>(reps: &[MatrixRep<F>], total: &mut usize) {
        for rep in reps {
            let nn = rep.degree() * rep.degree();
            assert_eq!(commutant_basis(rep).dim() + commutant_map_rank(rep), nn);
            *total += 1;
        }
    }
    check(&generated_reps(Rationals, &mut rng, 14), &mut total);
    check(
        &generated_reps(QuadField::new(-1).unwrap(), &mut rng, 14),
        &mut total,
    );
    check(
        &generated_reps(PrimeField::new(5).unwrap(), &mut rng, 14),
        &mut total,
    );
    println!("ACCEPTANCE 04 rank identity dim(commutant) + rank = n^2 on {total} reps: PASS");
}

fn gauss() -> GaloisSetup {
    GaloisSetup::new(QuadField::new(-1).unwrap())
}

fn quaternionic_pair() -> MatrixRep<QuadField> {
    let setup = gauss();
    let f = setup.extension();
    let d = Matrix::from_rows(vec![
        vec![f.elem(rat_int(0), rat_int(1)), f.zero()],
        vec![f.zero(), f.elem(rat_int(0), rat_int(-1))],
    ])
    .unwrap();
    let rot = Matrix::from_rows(vec![
        vec![f.zero(), f.one()],
        vec![f.elem(rat_int(-1), rat_int(0)), f.zero()],
    ])
    .unwrap();
    MatrixRep::new(
        FreePresentation::free(&["t0", "t1"]),
        *f,
        2,
        vec![d, rot],
    )
    .unwrap()
}

#[test]
fn criterion_05_twisting_round_trip() {
    use schur_forge::azumaya::is_schur_azu;
    use schur_forge::descent::{prepare_twist, twist_representation};
    let rep = quaternionic_pair();
    let cocycle = prepare_twist(&rep, 0).unwrap();
    let (twisted, azu) = twist_representation(&rep, &cocycle).unwrap();
    // rational form of dimension 4
    assert_eq!(twisted.algebra.dim(), 4);
    // structure constants match H(-1,-1) through an exact basis change
    let rec = twisted
        .quaternion
        .as_ref()
        .expect("twisted algebra recognized as a quaternion algebra");
    assert_eq!(rec.a, rat_int(-1));
    assert_eq!(rec.b, rat_int(-1));
    let hamilton = quaternion_algebra(&rat_int(-1), &rat_int(-1)).unwrap();
    // verify the recognized basis multiplies exactly like 1, i, j, k
    for (bi, hi) in rec.basis_coords.iter().zip(0..4) {
        for (bj, hj) in rec.basis_coords.iter().zip(0..4) {
            let lhs = twisted.algebra.mul_elems(bi, bj);
            let expected_coords = hamilton
                .sca()
                .mul_elems(&hamilton.sca().basis_elem(hi), &hamilton.sca().basis_elem(hj));
            // expand expected in the recognized basis
            let mut expected = vec![rat_int(0); 4];
            for (c, bk) in expected_coords.iter().zip(rec.basis_coords.iter()) {
                for (e, v) in expected.iter_mut().zip(bk) {
                    *e = &*e + &(c * v);
                }
            }
            assert_eq!(lhs, expected);
        }
    }
    // the twisted representation is Schur in the twisted algebra
    assert!(is_schur_azu(&azu));
    // re-embedding recovers the original generator images exactly
    for (orig, coords) in rep.images().iter().zip(azu.images()) {
        assert_eq!(&twisted.embed(coords), orig);
    }
    println!("ACCEPTANCE 05 twisting round trip through H(-1,-1): PASS");
}

fn random_rational_schur_rep(rng: &mut SplitMix64) -> MatrixRep<Rationals> {
    let q = Rationals;
    let diag = Matrix::from_rows(vec![
        vec![rat_int(1), rat_int(0)],
        vec![rat_int(0), rat_int(2)],
    ])
    .unwrap();
    let swap = Matrix::from_rows(vec![
        vec![rat_int(0), rat_int(1)],
        vec![rat_int(1), rat_int(0)],
    ])
    .unwrap();
    let c = loop {
        let cand = Matrix::from_fn(2, 2, |_, _| rat_int(rng.int_in(-4, 4)));
        if linalg::is_invertible(&q, &cand) {
            break cand;
        }
    };
    let cinv = linalg::inverse(&q, &c).unwrap();
    let conj = |m: &Matrix<Rational>| linalg::mul(&q, &linalg::mul(&q, &c, m), &cinv);
    MatrixRep::new(
        FreePresentation::free(&["t0", "t1"]),
        q,
        2,
        vec![conj(&diag), conj(&swap)],
    )
    .unwrap()
}

#[test]
fn criterion_06_obstruction_dichotomy() {
    let setup = gauss();
    let budget = Budget::default();
    let mut rng = SplitMix64::new(0xACCE06);
    for trial in 0..25 {
        let rep_q = random_rational_schur_rep(&mut rng);
        let rep = setup.extend_rep(&rep_q).unwrap();
        assert!(is_schur(&rep), "generated representation must be Schur");
        let report = geometric_origin_report(&rep, trial, &budget).unwrap();
        assert!(report.origin, "rational representation must have origin");
        match &report.witness {
            OriginWitness::Descended(w) => {
                // the witness is a valid representation over Q ...
                let amb = MatAlgebra::new(Rationals, w.degree());
                assert!(check_relations(&amb, w.presentation(), w.images()).unwrap());
                // ... isomorphic to the input after base change
                let back = setup.extend_rep(w).unwrap();
                assert!(are_isomorphic(&rep, &back, trial ^ 0xF00D).unwrap());
            }
            _ => panic!("expected a rational witness"),
        }
    }
    // the quaternionic pair is obstructed with class (-1, -1)
    let rep = quaternionic_pair();
    let report = geometric_origin_report(&rep, 9, &budget).unwrap();
    assert!(!report.origin);
    assert_eq!(report.class, QuaternionClass { a: -1, b: -1 });
    match &report.witness {
        OriginWitness::Twisted { algebra, rep: azu } => {
            assert_eq!(algebra.algebra.dim(), 4);
            assert!(schur_forge::azumaya::is_schur_azu(azu));
        }
        _ => panic!("expected a twisted witness"),
    }
    println!("ACCEPTANCE 06 obstruction dichotomy on 25 split + 1 obstructed reps: PASS");
}

#[test]
fn criterion_07_hilbert_reciprocity() {
    let values = squarefree_values(30);
    let mut pairs = 0usize;
    for &a in &values {
        for &b in &values {
            let mut product =
                hilbert_symbol_int(a, b, Place::Infinity) * hilbert_symbol_int(a, b, Place::Prime(2));
            let ab = (a as i128 * b as i128).unsigned_abs() as u64;
            for p in (3..=31u64).filter(|&p| is_prime(p)) {
                if ab.is_multiple_of(p) {
                    product *= hilbert_symbol_int(a, b, Place::Prime(p));
                }
            }
            assert_eq!(product, 1, "reciprocity fails at ({a}, {b})");
            pairs += 1;
        }
    }
    assert_eq!(pairs, values.len() * values.len());
    println!("ACCEPTANCE 07 Hilbert reciprocity on {pairs} squarefree pairs: PASS");
}

#[test]
fn criterion_08_split_agreement_with_zero_divisor_oracle() {
    let values = squarefree_values(7);
    let mut pairs = 0usize;
    for &a in &values {
        for &b in &values {
            let ra = rat_int(a);
            let rb = rat_int(b);
            let split = schur_forge::brauer::is_split(&ra, &rb, 1_000_000).unwrap();
            let witness =
                zero_divisor_search(&ra, &rb, ZERO_DIVISOR_HEIGHT, 1_000_000).unwrap();
            assert_eq!(
                split,
                witness.is_some(),
                "oracle disagreement at ({a}, {b})"
            );
            if let Some(q) = witness {
                let h = quaternion_algebra(&ra, &rb).unwrap();
                assert_eq!(h.reduced_norm(&q), rat_int(0));
                assert!(!h.sca().is_zero_elem(&q));
            }
            pairs += 1;
        }
    }
    println!("ACCEPTANCE 08 split decision vs zero-divisor oracle on {pairs} pairs: PASS");
}

#[test]
fn criterion_09_bicommutant_identity() {
    let q = Rationals;
    // full matrix algebras in their regular representations
    for n in [2usize, 3] {
        let alg = matrix_algebra_sca(&q, n);
        let reg = regular_representation(&alg);
        assert!(
            bicommutant_check(&q, alg.dim(), &reg.basis_matrices),
            "bicommutant fails for Mat_{n}"
        );
    }
    // quaternion algebras
    for (a, b) in [(-1i64, -1i64), (-1, -3), (2, 5)] {
        let h = quaternion_algebra(&rat_int(a), &rat_int(b)).unwrap();
        let reg = regular_representation(h.sca());
        assert!(
            bicommutant_check(&q, 4, &reg.basis_matrices),
            "bicommutant fails for H({a}, {b})"
        );
    }
    // the commutant of regular H(-1,-1) has dimension 4
    let h = quaternion_algebra(&rat_int(-1), &rat_int(-1)).unwrap();
    let reg = regular_representation(h.sca());
    let (sca, _) = commutant_algebra(&q, 4, &reg.basis_matrices);
    assert_eq!(sca.dim(), 4);
    println!("ACCEPTANCE 09 bicommutant identity for Mat2, Mat3 and three quaternion algebras: PASS");
}

fn random_quiver_rep(rng: &mut SplitMix64) -> QuiverRep<Rationals> {
    loop {
        let v = rng.int_in(1, 4) as usize;
        let arrows: Vec<(usize, usize)> = (0..rng.int_in(0, 5))
            .map(|_| {
                (
                    rng.int_in(0, v as i64 - 1) as usize,
                    rng.int_in(0, v as i64 - 1) as usize,
                )
            })
            .collect();
        let dims: Vec<usize> = (0..v).map(|_| rng.int_in(0, 3) as usize).collect();
        let total: usize = dims.iter().sum();
        if total == 0 || total > 6 {
            continue;
        }
        let q = Quiver::new(v, arrows.clone()).unwrap();
        let maps: Vec<Matrix<Rational>> = arrows
            .iter()
            .map(|&(s, t)| Matrix::from_fn(dims[t], dims[s], |_, _| rat_int(rng.int_in(-3, 3))))
            .collect();
        return QuiverRep::new(Rationals, q, dims, maps).unwrap();
    }
}

#[test]
fn criterion_10_morita_bookkeeping() {
    let mut rng = SplitMix64::new(0xACCE10);
    for _ in 0..50 {
        let qr = random_quiver_rep(&mut rng);
        let rep = quiver_to_matrep(&qr).unwrap();
        let n = rep.degree();
        // m_i = n * v_i
        let ideal_dims = right_ideal_dims_for_matrep(qr.quiver(), &rep).unwrap();
        let expected: Vec<usize> = qr.dims().iter().map(|&v| n * v).collect();
        assert_eq!(ideal_dims, expected);
        assert_eq!(ideal_dims.iter().sum::<usize>(), n * n);
        // exact round trip
        let (back, basis) = matrep_to_quiver(qr.quiver(), &rep).unwrap();
        assert_eq!(back, qr);
        assert_eq!(basis, linalg::identity(&Rationals, n));
    }
    println!("ACCEPTANCE 10 Morita bookkeeping m_i = n v_i on 50 quiver reps: PASS");
}
