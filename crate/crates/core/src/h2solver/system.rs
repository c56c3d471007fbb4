use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::coboundary::{d1_form, d2_form, form_defined, LinForm};
use crate::cochains::{one_keys, window_pair_keys, Cochain2, OneKey, PairKey, TripleKey, Window};
use crate::linalg::{certified_kernel, Exact, KernelCertificate, Row};
use crate::qfield::{is_admissible, CoeffField, ModP, Mode, DEFAULT_PRIME};
use crate::qwitt::Parity;
use crate::{Error, Result};

/// Residue of `q` used to bound ranks in symbolic mode.
pub const SYMBOLIC_PROBE_Q: u64 = 1_000_003;

/// The cocycle equations of one `(parity, s)` sector on a window.
#[derive(Clone, Debug, Serialize)]
pub struct SparseSystem<T> {
    pub parity: Parity,
    pub degree: i64,
    pub window: Window,
    /// Unknowns in canonical order: `a`, then `b`, then `c`, each by `(n, p)`.
    pub columns: Vec<PairKey>,
    pub rows: Vec<(TripleKey, Row<T>)>,
    #[serde(skip)]
    index: HashMap<PairKey, usize>,
}

impl<T: Clone + PartialEq> SparseSystem<T> {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, k: &PairKey) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn row(&self, label: &TripleKey) -> Option<&Row<T>> {
        self.rows.iter().find(|(t, _)| t == label).map(|(_, r)| r)
    }

    pub fn matrix(&self) -> Vec<Row<T>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Convert a linear form over pair keys into a row; `None` if it leaves the columns.
    pub fn to_row(&self, form: &LinForm<PairKey, T>) -> Option<Row<T>> {
        let mut r = Vec::with_capacity(form.terms.len());
        for (k, v) in &form.terms {
            r.push((self.column(k)?, v.clone()));
        }
        r.sort_by_key(|(c, _)| *c);
        Some(r)
    }

    /// A coefficient vector as a cochain.
    pub fn to_cochain<F: CoeffField<Elem = T>>(&self, f: &F, v: &Row<T>) -> Cochain2<T> {
        let mut c = Cochain2::new(self.parity, self.degree, self.window.n());
        for (i, x) in v {
            c.set_key(f, self.columns[*i], x.clone());
        }
        c
    }

    /// A cochain as a coefficient vector over the columns.
    pub fn to_vector<F: CoeffField<Elem = T>>(&self, f: &F, c: &Cochain2<T>) -> Row<T> {
        let mut v: Row<T> = c
            .values()
            .iter()
            .filter_map(|(k, x)| self.column(k).map(|i| (i, x.clone())))
            .filter(|(_, x)| !f.is_zero(x))
            .collect();
        v.sort_by_key(|(c, _)| *c);
        v
    }

    /// Column indices of core pairs.
    pub fn core_columns(&self) -> Vec<usize> {
        (0..self.columns.len()).filter(|&i| self.columns[i].in_core(&self.window)).collect()
    }
}

fn make_index(columns: &[PairKey]) -> HashMap<PairKey, usize> {
    columns.iter().enumerate().map(|(i, k)| (*k, i)).collect()
}

/// One row per canonical triple whose referenced pairs all lie in the window.
/// Rows that vanish identically are dropped.
pub fn build_system<F: CoeffField>(f: &F, parity: Parity, s: i64, window: &Window) -> SparseSystem<F::Elem> {
    let columns = window_pair_keys(window);
    let index = make_index(&columns);
    let rows: Vec<(TripleKey, Row<F::Elem>)> = TripleKey::enumerate(window.n())
        .into_par_iter()
        .filter_map(|t| {
            let (x, y, z) = t.inputs();
            let (_, form) = d2_form(f, parity, s, x, y, z);
            if form.is_zero() || !form_defined(&form, None, window) {
                return None;
            }
            let mut r: Row<F::Elem> = form.terms.iter().map(|(k, v)| (index[k], v.clone())).collect();
            r.sort_by_key(|(c, _)| *c);
            Some((t, r))
        })
        .collect();
    SparseSystem { parity, degree: s, window: *window, columns, rows, index }
}

/// `δ¹` of every unit 1-cochain `e_k` with `|k| <= N`, as vectors over the
/// system columns. All window pairs are defined for these images.
pub fn coboundary_image_basis<F: CoeffField>(f: &F, parity: Parity, s: i64, window: &Window) -> Vec<(OneKey, Row<F::Elem>)> {
    let columns = window_pair_keys(window);
    let mut images: BTreeMap<OneKey, Row<F::Elem>> = one_keys(window.n()).into_iter().map(|k| (k, Vec::new())).collect();
    let forms: Vec<LinForm<OneKey, F::Elem>> = columns
        .par_iter()
        .map(|k| {
            let (x, y) = k.inputs();
            d1_form(f, parity, s, x, y).1
        })
        .collect();
    for (i, form) in forms.into_iter().enumerate() {
        for (ok, v) in form.terms {
            images.get_mut(&ok).expect("unit cochains cover the window").push((i, v));
        }
    }
    images.into_iter().collect()
}

/// Modular probe matched to the coefficient context.
pub fn probe_for<F: CoeffField>(f: &F) -> ModP {
    if let Some(Mode::Sampled(s)) = f.mode() {
        if let Ok(p) = ModP::for_sample(DEFAULT_PRIME, &s) {
            return p;
        }
    }
    ModP::new(DEFAULT_PRIME, SYMBOLIC_PROBE_Q).expect("probe residue is valid")
}

/// Reject samples at which the window computations can meet a pole.
pub fn check_admissible<F: CoeffField>(f: &F, window: &Window) -> Result<()> {
    if let Some(Mode::Sampled(s)) = f.mode() {
        if !is_admissible(&s, window) {
            return Err(Error::InadmissibleSample(format!("q = {s} is too close to a root of unity for N = {}", window.n())));
        }
    }
    Ok(())
}

/// A kernel basis of the system.
pub fn nullspace<F: Exact>(f: &F, system: &SparseSystem<F::Elem>) -> Result<(Vec<Row<F::Elem>>, KernelCertificate)> {
    check_admissible(f, &system.window)?;
    Ok(certified_kernel(f, system.ncols(), &system.matrix(), &probe_for(f)))
}
