//! Exact sparse linear algebra: fraction-free elimination over ℤ[q], ℤ and
//! 𝔽_p, kernels, ranks, and a modular shortcut for large kernels that is
//! accepted only when an exact check closes the gap.

mod domain;
mod elim;

pub use domain::{Domain, Exact, IntDomain, PolyDomain, PrimeDomain};
pub use elim::{dot, echelon, echelon_of, kernel, kernel_from, rank, Echelon, Pivot, Row};

use serde::{Deserialize, Serialize};

use crate::qfield::{CoeffField, ModP};

/// How a kernel basis was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub prime: u64,
    pub q_residue: u64,
    pub rows: usize,
    pub cols: usize,
    /// Rank of the system reduced mod p; a lower bound for the exact rank.
    pub rank_mod_p: Option<usize>,
    /// Rows eliminated exactly.
    pub rows_eliminated: usize,
    pub kernel_dim: usize,
    /// `true` when the exact kernel of the selected rows satisfied every row,
    /// which pins the kernel dimension to `cols - rank_mod_p`.
    pub modular_shortcut: bool,
}

/// Reduce a row mod p through ℚ(q); `None` if an entry has a pole there.
pub fn row_mod_p<F: CoeffField>(f: &F, probe: &ModP, row: &Row<F::Elem>) -> Option<Row<u64>> {
    let mut out = Vec::with_capacity(row.len());
    for (c, x) in row {
        let v = f.to_qrat(x).eval_mod(probe.q_residue(), probe.prime())?;
        if v != 0 {
            out.push((*c, v));
        }
    }
    Some(out)
}

/// Kernel of `rows` with a certificate.
///
/// The rows are reduced mod p at `probe` to find a maximal independent
/// subset. The kernel of that subset is computed exactly and checked against
/// every row. If the check passes, the kernel dimension equals
/// `cols - rank_mod_p` because specialization cannot raise the rank. If the
/// check fails, or a row has a pole at the probe, the whole system is
/// eliminated exactly instead.
pub fn certified_kernel<F: Exact>(f: &F, ncols: usize, rows: &[Row<F::Elem>], probe: &ModP) -> (Vec<Row<F::Elem>>, KernelCertificate) {
    let mut cert = KernelCertificate {
        prime: probe.prime(),
        q_residue: probe.q_residue(),
        rows: rows.len(),
        cols: ncols,
        rank_mod_p: None,
        rows_eliminated: rows.len(),
        kernel_dim: 0,
        modular_shortcut: false,
    };
    let reduced: Option<Vec<Row<u64>>> = rows.iter().map(|r| row_mod_p(f, probe, r)).collect();
    if let Some(red) = reduced {
        let e = echelon_of(probe, ncols, &red, false);
        cert.rank_mod_p = Some(e.rank());
        let picked: Vec<Row<F::Elem>> = e.independent_sources().into_iter().map(|i| rows[i].clone()).collect();
        let k = kernel(f, ncols, &picked);
        if k.len() == ncols - e.rank() && rows.iter().all(|r| k.iter().all(|v| f.is_zero(&dot(f, r, v)))) {
            cert.rows_eliminated = picked.len();
            cert.kernel_dim = k.len();
            cert.modular_shortcut = true;
            return (k, cert);
        }
    }
    let k = kernel(f, ncols, rows);
    cert.kernel_dim = k.len();
    (k, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{QRat, QSample, Sampled, Symbolic, DEFAULT_PRIME};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Textbook dense Gauss-Jordan over ℚ, independent of the sparse code.
    fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
        let ncols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let pv = m[r][c].clone();
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let k = &m[i][c] / &pv;
                    for j in 0..ncols {
                        let t = &m[r][j] * &k;
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn to_sparse(m: &[Vec<BigRational>]) -> Vec<Row<BigRational>> {
        m.iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect())
            .collect()
    }

    fn random_matrix(seed: u64, rows: usize, cols: usize, rank: usize) -> Vec<Vec<BigRational>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gen = |r: usize, c: usize| -> Vec<Vec<BigRational>> {
            (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| if rng.gen_bool(0.4) { BigRational::from_integer(BigInt::from(rng.gen_range(-5..=5))) } else { BigRational::zero() })
                        .collect()
                })
                .collect()
        };
        let a = gen(rows, rank);
        let b = gen(rank, cols);
        (0..rows)
            .map(|i| (0..cols).map(|j| (0..rank).map(|k| &a[i][k] * &b[k][j]).fold(BigRational::zero(), |x, y| x + y)).collect())
            .collect()
    }

    #[test]
    fn empty_system_has_full_kernel() {
        let f = Symbolic::new();
        let k = kernel(&f, 4, &[]);
        assert_eq!(k.len(), 4);
        assert_eq!(k[2], vec![(2, QRat::one())]);
    }

    #[test]
    fn sampled_rank_matches_dense_oracle() {
        let f = Sampled::new(QSample::from_ratio(7, 1).unwrap());
        for seed in 0..30 {
            let m = random_matrix(seed, 9, 11, (seed % 7) as usize + 1);
            let rows = to_sparse(&m);
            let r = rank(&f, 11, &rows);
            assert_eq!(r, dense_rank(m.clone()), "seed {seed}");
            let k = kernel(&f, 11, &rows);
            assert_eq!(k.len(), 11 - r);
            for v in &k {
                for row in &rows {
                    assert!(dot(&f, row, v).is_zero());
                }
            }
        }
    }

    #[test]
    fn symbolic_kernel_of_a_q_dependent_system() {
        let f = Symbolic::new();
        // x0 {2} - x1 (1+q) = 0 and x1 q - x2 = 0.
        let rows = vec![
            vec![(0, QRat::qnum(2)), (1, -QRat::one_plus_q_pow(1))],
            vec![(1, QRat::q()), (2, -QRat::one())],
        ];
        let k = kernel(&f, 3, &rows);
        assert_eq!(k.len(), 1);
        for r in &rows {
            assert!(dot(&f, r, &k[0]).is_zero());
        }
        // The same system has rank 1 at q = -1 where {2} and 1+q vanish.
        let bad = ModP::new(DEFAULT_PRIME, DEFAULT_PRIME - 1).unwrap();
        let red: Vec<_> = rows.iter().map(|r| row_mod_p(&f, &bad, r).unwrap()).collect();
        assert_eq!(rank(&bad, 3, &red), 1);
    }

    #[test]
    fn certified_kernel_falls_back_at_a_bad_probe() {
        let f = Symbolic::new();
        let rows = vec![vec![(0, QRat::qnum(2)), (1, -QRat::one_plus_q_pow(1))], vec![(0, QRat::one_plus_q_pow(1))]];
        let good = ModP::new(DEFAULT_PRIME, 1_234_567).unwrap();
        let (k, c) = certified_kernel(&f, 2, &rows, &good);
        assert!(k.is_empty() && c.modular_shortcut);
        let bad = ModP::new(DEFAULT_PRIME, DEFAULT_PRIME - 1).unwrap();
        let (k, c) = certified_kernel(&f, 2, &rows, &bad);
        assert!(k.is_empty());
        assert!(!c.modular_shortcut);
        assert_eq!(c.rank_mod_p, Some(0));
    }

    #[test]
    fn elimination_is_deterministic_across_thread_counts() {
        let f = Sampled::new(QSample::from_ratio(3, 2).unwrap());
        let rows = to_sparse(&random_matrix(99, 20, 16, 9));
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| echelon_of(&f, 16, &rows, true));
        let b = four.install(|| echelon_of(&f, 16, &rows, true));
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn modular_and_exact_ranks_agree_on_integer_matrices(seed in 0u64..10_000, rk in 1usize..6) {
            let m = random_matrix(seed, 8, 8, rk);
            let rows = to_sparse(&m);
            let f = Sampled::new(QSample::from_ratio(2, 1).unwrap());
            let probe = ModP::new(DEFAULT_PRIME, 2).unwrap();
            let (k, c) = certified_kernel(&f, 8, &rows, &probe);
            prop_assert_eq!(k.len(), 8 - dense_rank(m));
            prop_assert_eq!(c.kernel_dim, k.len());
        }
    }
}
