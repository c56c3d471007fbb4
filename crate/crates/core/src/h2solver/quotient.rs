use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::system::{build_system, check_admissible, coboundary_image_basis, probe_for};
use crate::cochains::{Cochain1, Window};
use crate::linalg::{certified_kernel, dot, rank, Exact, KernelCertificate, Row};
use crate::qfield::{CoeffField, Mode, ModP, Sampled, Symbolic};
use crate::qwitt::Parity;
use crate::Result;

/// Dimensions of the core projections of cocycles and coboundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub parity: Parity,
    pub s: i64,
    pub window: i64,
    pub core: i64,
    pub mode: Mode,
    pub rows: usize,
    pub cols: usize,
    /// Window cocycles.
    pub dim_z: usize,
    /// Coboundaries of window 1-cochains that are window cocycles.
    pub dim_bz: usize,
    pub dim_z_core: usize,
    /// Projection of the cocycle coboundaries onto the core.
    pub dim_b_core: usize,
    pub dim_h2_core: usize,
    /// Projection of all coboundaries, cocycles or not.
    pub dim_b_raw_core: usize,
    /// Whether every coboundary of the window is itself a window cocycle.
    pub coboundaries_closed: bool,
    pub cocycle_certificate: KernelCertificate,
    pub coboundary_certificate: Option<KernelCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

fn project<T: Clone>(v: &Row<T>, core: &[bool]) -> Row<T> {
    v.iter().filter(|(c, _)| core[*c]).cloned().collect()
}

fn combine<F: Exact>(f: &F, coeffs: &Row<F::Elem>, basis: &[Row<F::Elem>], ncols: usize) -> Row<F::Elem> {
    let mut acc: Vec<Option<F::Elem>> = vec![None; ncols];
    for (j, k) in coeffs {
        for (c, x) in &basis[*j] {
            let t = f.mul(k, x);
            acc[*c] = Some(match acc[*c].take() {
                None => t,
                Some(a) => f.add(&a, &t),
            });
        }
    }
    acc.into_iter().enumerate().filter_map(|(c, x)| x.filter(|x| !f.is_zero(x)).map(|x| (c, x))).collect()
}

/// Combinations of the unit 1-cochains whose coboundary satisfies every row
/// of `a`. `None` for the certificate means every coboundary already does.
fn closing_kernel<F: Exact>(f: &F, a: &[Row<F::Elem>], images: &[Row<F::Elem>], probe: &ModP) -> (Vec<Row<F::Elem>>, Option<KernelCertificate>) {
    let ad: Vec<Row<F::Elem>> = a
        .par_iter()
        .map(|r| images.iter().enumerate().filter_map(|(j, v)| Some((j, dot(f, r, v))).filter(|(_, x)| !f.is_zero(x))).collect())
        .collect();
    if ad.iter().all(|r| r.is_empty()) {
        let unit = (0..images.len()).map(|j| vec![(j, f.one())]).collect();
        return (unit, None);
    }
    let (k, c) = certified_kernel(f, images.len(), &ad, probe);
    (k, Some(c))
}

/// A basis of the 1-cochains whose coboundary is a window cocycle, the
/// preimage of `B ∩ Z`. Sampling it gives coboundaries that are cocycles
/// in every sector, unlike arbitrary 1-cochains.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedCoboundaries<T> {
    pub parity: Parity,
    pub s: i64,
    pub window: Window,
    pub basis: Vec<Cochain1<T>>,
}

impl<T: Clone + PartialEq> ClosedCoboundaries<T> {
    pub fn new<F: Exact<Elem = T>>(f: &F, parity: Parity, s: i64, window: &Window) -> Result<Self> {
        check_admissible(f, window)?;
        let sys = build_system(f, parity, s, window);
        let units = coboundary_image_basis(f, parity, s, window);
        let images: Vec<Row<T>> = units.iter().map(|(_, v)| v.clone()).collect();
        let (k, _) = closing_kernel(f, &sys.matrix(), &images, &probe_for(f));
        let basis = k
            .iter()
            .map(|kv| {
                let mut g = Cochain1::new(parity, s);
                for (j, x) in kv {
                    g.set(f, units[*j].0, x.clone());
                }
                g
            })
            .collect();
        Ok(ClosedCoboundaries { parity, s, window: *window, basis })
    }

    /// A combination of the basis with nonzero integer weights in `[-9, 9]`.
    pub fn sample<F: CoeffField<Elem = T>>(&self, f: &F, seed: u64) -> Cochain1<T> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weight = || {
            let k: i64 = rng.gen_range(1..=9);
            if rng.gen_bool(0.5) { -k } else { k }
        };
        self.basis.iter().fold(Cochain1::new(self.parity, self.s), |acc, g| acc.add(f, &g.scale(f, &f.from_i64(weight()))))
    }
}

/// `dim πZ - dim π(B ∩ Z)` on the core of the window.
pub fn h2_core_dimension<F: Exact>(f: &F, parity: Parity, s: i64, window: &Window) -> Result<QuotientReport> {
    check_admissible(f, window)?;
    let probe = probe_for(f);
    let sys = build_system(f, parity, s, window);
    let a = sys.matrix();
    let ncols = sys.ncols();
    let (z, zcert) = certified_kernel(f, ncols, &a, &probe);

    let images: Vec<Row<F::Elem>> = coboundary_image_basis(f, parity, s, window).into_iter().map(|(_, v)| v).collect();
    let (closing, bcert) = closing_kernel(f, &a, &images, &probe);
    let closed = bcert.is_none();
    let bz: Vec<Row<F::Elem>> = if closed { images.clone() } else { closing.par_iter().map(|kv| combine(f, kv, &images, ncols)).collect() };

    let mut core = vec![false; ncols];
    for c in sys.core_columns() {
        core[c] = true;
    }
    let pz: Vec<Row<F::Elem>> = z.iter().map(|v| project(v, &core)).collect();
    let pb: Vec<Row<F::Elem>> = bz.iter().map(|v| project(v, &core)).collect();
    let praw: Vec<Row<F::Elem>> = images.iter().map(|v| project(v, &core)).collect();
    let dim_z_core = rank(f, ncols, &pz);
    let dim_b_core = rank(f, ncols, &pb);
    let dim_bz = rank(f, ncols, &bz);
    Ok(QuotientReport {
        parity,
        s,
        window: window.n(),
        core: window.core(),
        mode: f.mode().unwrap_or(Mode::Symbolic),
        rows: a.len(),
        cols: ncols,
        dim_z: z.len(),
        dim_bz,
        dim_z_core,
        dim_b_core,
        dim_h2_core: dim_z_core - dim_b_core,
        dim_b_raw_core: rank(f, ncols, &praw),
        coboundaries_closed: closed,
        cocycle_certificate: zcert,
        coboundary_certificate: bcert,
        wall_time_ms: None,
    })
}

/// [`h2_core_dimension`] in the context named by `mode`, optionally timed.
pub fn h2_core_dimension_in(mode: &Mode, parity: Parity, s: i64, window: &Window, timing: bool) -> Result<QuotientReport> {
    let t0 = Instant::now();
    let mut r = match mode {
        Mode::Symbolic => h2_core_dimension(&Symbolic::new(), parity, s, window)?,
        Mode::Sampled(q) => h2_core_dimension(&Sampled::new(q.clone()), parity, s, window)?,
    };
    if timing {
        r.wall_time_ms = Some(t0.elapsed().as_millis());
    }
    Ok(r)
}

/// Run many sectors in parallel; output order follows the input order.
pub fn sweep(mode: &Mode, sectors: &[(Parity, i64)], window: &Window, timing: bool) -> Vec<Result<QuotientReport>> {
    sectors.par_iter().map(|(p, s)| h2_core_dimension_in(mode, *p, *s, window, timing)).collect()
}

pub const CSV_HEADER: [&str; 9] = ["parity", "s", "N", "N_core", "mode", "dim_Z_core", "dim_B_core", "dim_H2_core", "wall_time_ms"];

impl QuotientReport {
    pub fn csv_record(&self) -> [String; 9] {
        [
            self.parity.to_string(),
            self.s.to_string(),
            self.window.to_string(),
            self.core.to_string(),
            self.mode.to_string(),
            self.dim_z_core.to_string(),
            self.dim_b_core.to_string(),
            self.dim_h2_core.to_string(),
            self.wall_time_ms.map(|t| t.to_string()).unwrap_or_default(),
        ]
    }
}
