use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use gscheme::exactalg::normal::{howell_mod, howell_via_lattice};
use gscheme::exactalg::ring::int;
use gscheme::exactalg::{canonical_form, inverse, kernel, snf, Elem, Matrix, Ring};
use gscheme::groups::{constant_group, diagonalizable_group, mu};
use gscheme::hopf::{cartier_dual, HopfAlgebra, Measure};

fn small_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

fn modulus() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![2i64, 4, 6, 8, 9, 12, 27, 30])
}

fn to_matrix(ring: &Ring, rows: &[Vec<i64>]) -> Matrix {
    let cols = rows[0].len();
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&x| ring.from_int(x)).collect())
        .collect();
    Matrix::from_rows(ring, cols, rows).unwrap()
}

fn to_big(rows: &[Vec<i64>], n: i64) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x.rem_euclid(n))).collect())
        .collect()
}

fn divides(ring: &Ring, a: &Elem, b: &Elem) -> bool {
    match ring.modulus() {
        None if a.is_zero() => b.is_zero(),
        None => (b / a).is_integer(),
        Some(n) => {
            let g = |x: &Elem| num_integer::Integer::gcd(&x.to_integer(), n);
            num_integer::Integer::is_multiple_of(&g(b), &g(a))
        }
    }
}

fn check_snf(ring: &Ring, m: &Matrix) -> Result<(), TestCaseError> {
    let f = snf(m).unwrap();
    prop_assert_eq!(&f.u.mul(&f.s).unwrap().mul(&f.v).unwrap(), m);
    prop_assert!(inverse(&f.u).is_some() && inverse(&f.v).is_some());
    for i in 0..f.s.rows() {
        for j in 0..f.s.cols() {
            if i != j {
                prop_assert!(f.s.get(i, j).is_zero());
            }
        }
    }
    let d = f.diagonal();
    for w in d.windows(2) {
        prop_assert!(divides(ring, &w[0], &w[1]), "{:?} does not divide {:?}", w[0], w[1]);
    }
    Ok(())
}

fn random_element(h: &HopfAlgebra, seed: &[i64]) -> Vec<Elem> {
    (0..h.rank()).map(|i| h.ring().from_int(seed[i % seed.len()])).collect()
}

fn groups(ring: &Ring) -> Vec<HopfAlgebra> {
    vec![
        mu(4, ring).unwrap(),
        constant_group(&[2, 3], ring).unwrap(),
        diagonalizable_group(&[2, 2], ring).unwrap(),
    ]
}

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop::sample::select(vec![0i64, 1, 4, 9, 8]).prop_map(|n| match n {
        0 => Ring::Integers,
        1 => Ring::Rationals,
        n => Ring::integers_mod(n).unwrap(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_over_integers(rows in small_matrix(4, 4, 20)) {
        let z = Ring::Integers;
        check_snf(&z, &to_matrix(&z, &rows))?;
    }

    #[test]
    fn snf_over_residue_rings(rows in small_matrix(4, 4, 40), n in modulus()) {
        let r = Ring::integers_mod(n).unwrap();
        check_snf(&r, &to_matrix(&r, &rows))?;
    }

    #[test]
    fn howell_routes_agree(rows in small_matrix(5, 4, 50), n in modulus()) {
        let big = BigInt::from(n);
        let ncols = rows[0].len();
        prop_assert_eq!(howell_mod(to_big(&rows, n), ncols, &big), howell_via_lattice(to_big(&rows, n), ncols, &big));
    }

    #[test]
    fn canonical_form_is_idempotent_and_basis_free(
        rows in small_matrix(4, 4, 12),
        ring in ring_strategy(),
        k in -5i64..=5,
    ) {
        let n = rows[0].len();
        let gens: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| ring.from_int(x)).collect()).collect();
        let s = canonical_form(&ring, n, &gens).unwrap();
        prop_assert_eq!(&canonical_form(&ring, n, s.rows()).unwrap(), &s);
        // Adding a multiple of the last generator to the first and reversing
        // the order does not change the row space.
        let mut moved = gens.clone();
        let last = gens[gens.len() - 1].clone();
        if moved.len() > 1 {
            for (x, y) in moved[0].iter_mut().zip(&last) {
                *x = ring.add(x, &ring.mul(&ring.from_int(k), y));
            }
        }
        moved.reverse();
        prop_assert_eq!(&canonical_form(&ring, n, &moved).unwrap(), &s);
        for g in &gens {
            prop_assert!(s.contains_vector(g).unwrap());
        }
    }

    #[test]
    fn integer_kernel_is_saturated(rows in small_matrix(5, 3, 9)) {
        let z = Ring::Integers;
        let m = to_matrix(&z, &rows);
        let k = kernel(&m);
        for v in k.rows() {
            prop_assert!(m.apply_row(v).iter().all(Zero::is_zero));
        }
        let image_rank = canonical_form(&z, m.cols(), &m.row_vecs()).unwrap().rank();
        prop_assert_eq!(k.rank() + image_rank, m.rows());
        prop_assert!(k.cotype().is_direct_summand);
    }

    #[test]
    fn residue_kernel_matches_enumeration(rows in small_matrix(3, 3, 20), n in prop::sample::select(vec![4i64, 6])) {
        let r = Ring::integers_mod(n).unwrap();
        let m = to_matrix(&r, &rows);
        let k = kernel(&m);
        let mut count = 0;
        let dim = m.rows();
        for code in 0..n.pow(dim as u32) {
            let v: Vec<Elem> = (0..dim).map(|i| int((code / n.pow(i as u32)) % n)).collect();
            let zero = m.apply_row(&v).iter().all(Zero::is_zero);
            prop_assert_eq!(zero, k.contains_vector(&v).unwrap());
            count += zero as i64;
        }
        prop_assert!(count >= 1);
    }

    #[test]
    fn group_algebra_laws(ring in ring_strategy(), a in prop::collection::vec(-6i64..=6, 1..6), b in prop::collection::vec(-6i64..=6, 1..6)) {
        for h in groups(&ring) {
            let alg = h.algebra();
            let (f, g) = (random_element(&h, &a), random_element(&h, &b));
            prop_assert_eq!(alg.multiply(&f, &g), alg.multiply(&g, &f));
            let fg = alg.multiply(&f, &g);
            prop_assert_eq!(h.aug().counit_of(&fg), ring.mul(&h.aug().counit_of(&f), &h.aug().counit_of(&g)));
            // J kills the augmentation ideal.
            let j = h.nonnull_ideal().unwrap();
            let eps = h.aug().counit_of(&f);
            let in_i: Vec<Elem> = f.iter().zip(h.unit()).map(|(x, u)| ring.sub(x, &ring.mul(&eps, u))).collect();
            for r in j.rows() {
                prop_assert!(alg.multiply(r, &in_i).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn convolution_is_associative_with_unit(ring in ring_strategy(), a in prop::collection::vec(-6i64..=6, 3), b in prop::collection::vec(-6i64..=6, 3)) {
        for h in groups(&ring) {
            let (x, y) = (Measure::new(random_element(&h, &a)), Measure::new(random_element(&h, &b)));
            let z = Measure::new(random_element(&h, &[1, 0, -1]));
            let lhs = h.star_measures(&h.star_measures(&x, &y), &z);
            let rhs = h.star_measures(&x, &h.star_measures(&y, &z));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(h.star_measures(&h.unit_measure(), &x), x.clone());
            // Invariant measures absorb: nu * mu = nu(1) mu.
            let d = h.invariant_measures().unwrap();
            let mu0 = Measure::new(d.rows()[0].clone());
            let nu1 = x.pair(&ring, h.unit());
            prop_assert_eq!(h.star_measures(&x, &mu0), mu0.scaled(&ring, &nu1));
        }
    }
}

#[test]
fn double_dual_is_identity() {
    for ring in [Ring::Integers, Ring::integers_mod(9).unwrap()] {
        for h in groups(&ring) {
            let dd = cartier_dual(&cartier_dual(&h).unwrap()).unwrap();
            assert!(dd.same_tensors(&h));
            assert_eq!(dd.labels(), h.labels());
        }
    }
}

#[test]
fn unit_measure_pairs_to_counit() {
    let h = mu(3, &Ring::Integers).unwrap();
    let e = h.unit_measure();
    for i in 0..3 {
        let mut f = vec![Elem::zero(); 3];
        f[i] = Elem::one();
        assert_eq!(e.pair(h.ring(), &f), h.counit()[i]);
    }
}
