//! The Hermitian eigensolver against a cyclic Jacobi solver run on the real
//! symmetric embedding `[[Re H, −Im H], [Im H, Re H]]`, whose spectrum is
//! that of `H` with every eigenvalue doubled.

use num_complex::Complex64;
use proptest::prelude::*;
use qcnr_core::linalg::{eigh, inner, HermitianMatrix};

#[allow(clippy::needless_range_loop)] // paired row updates read clearer with indices
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    d.sort_by(f64::total_cmp);
    d
}

fn random_hermitian(n: usize, entries: &[(f64, f64)]) -> HermitianMatrix {
    let mut h = HermitianMatrix::zeros(n);
    let mut it = entries.iter().cycle();
    for i in 0..n {
        for j in i..n {
            let &(re, im) = it.next().unwrap();
            let im = if i == j { 0.0 } else { im };
            h.set(i, j, Complex64::new(re, im));
        }
    }
    h
}

fn embedding(h: &HermitianMatrix) -> Vec<Vec<f64>> {
    let n = h.dim();
    let mut a = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            a[i][j] = z.re;
            a[i + n][j + n] = z.re;
            a[i][j + n] = -z.im;
            a[i + n][j] = z.im;
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenpairs_match_jacobi(n in 1usize..14, entries in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..200)) {
        let h = random_hermitian(n, &entries);
        let es = eigh(&h).unwrap();
        let norm = h.frobenius_norm().max(1e-300);

        let doubled = jacobi_eigenvalues(embedding(&h));
        for (k, &e) in es.values().iter().enumerate() {
            prop_assert!((e - doubled[2 * k]).abs() <= 1e-10 * norm);
            prop_assert!((e - doubled[2 * k + 1]).abs() <= 1e-10 * norm);
        }
        prop_assert!(es.values().windows(2).all(|w| w[0] <= w[1]));

        for (j, v) in es.vectors().enumerate() {
            let hv = h.mul_vec(v);
            let res: f64 = hv.iter().zip(v).map(|(a, b)| (a - b * es.values()[j]).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(res <= 1e-9 * norm, "residual {res}");
            let big = v.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).unwrap().0;
            prop_assert!(v[big].im == 0.0 && v[big].re > 0.0);
            for (k, u) in es.vectors().enumerate() {
                let want = if j == k { 1.0 } else { 0.0 };
                prop_assert!((inner(u, v) - Complex64::new(want, 0.0)).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn repeated_eigenvalues() {
    // a permuted diagonal with a triple eigenvalue and a complex rotation applied
    let n = 6;
    let d = [2.0, -1.0, 2.0, 5.0, 2.0, 0.5];
    let h0 = HermitianMatrix::from_diagonal(&d);
    let es = eigh(&h0).unwrap();
    assert_eq!(es.values(), &[-1.0, 0.5, 2.0, 2.0, 2.0, 5.0]);

    let mut h = HermitianMatrix::zeros(n);
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let u = |i: usize, j: usize| -> Complex64 {
        // block unitary mixing (0,1), (2,3), (4,5) with complex phases
        let (b, r) = (i / 2, i % 2);
        if j / 2 != b {
            return Complex64::new(0.0, 0.0);
        }
        let ph = Complex64::from_polar(1.0, 0.3 * b as f64);
        match (r, j % 2) {
            (0, 0) => Complex64::new(c, 0.0),
            (0, 1) => ph * c,
            (1, 0) => -ph.conj() * c,
            _ => Complex64::new(c, 0.0),
        }
    };
    for i in 0..n {
        for j in i..n {
            let v: Complex64 = (0..n).map(|k| u(i, k) * d[k] * u(j, k).conj()).sum();
            h.set(i, j, v);
        }
    }
    let es = eigh(&h).unwrap();
    for (got, want) in es.values().iter().zip([-1.0, 0.5, 2.0, 2.0, 2.0, 5.0]) {
        assert!((got - want).abs() < 1e-13, "{got} vs {want}");
    }
}
