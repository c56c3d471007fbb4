use rayon::prelude::*;

use super::domain::{Domain, Exact};

/// A sparse row: strictly increasing column indices, no zero entries.
pub type Row<T> = Vec<(usize, T)>;

/// One pivot of an echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct Pivot<E> {
    pub col: usize,
    /// Index of the input row this pivot row descends from.
    pub source: usize,
    pub row: Row<E>,
}

/// Result of a fraction-free elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<E> {
    pub ncols: usize,
    pub pivots: Vec<Pivot<E>>,
    /// Whether pivot columns were also cleared from earlier pivot rows.
    pub reduced: bool,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Source indices of the pivot rows; they span the row space.
    pub fn independent_sources(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivots.iter().map(|p| p.source).collect();
        v.sort_unstable();
        v
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivots.iter().map(|p| p.col).collect();
        v.sort_unstable();
        v
    }
}

fn entry<'a, E>(row: &'a Row<E>, col: usize) -> Option<&'a E> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `pv * row - a * pivot` with `a` the entry of `row` in the pivot column.
fn combine<D: Domain>(d: &D, row: &Row<D::E>, pivot: &Row<D::E>, col: usize) -> Row<D::E> {
    let a = entry(row, col).expect("row meets the pivot column");
    let pv = entry(pivot, col).expect("pivot entry");
    let (a, pv) = d.cancel(a, pv);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, d.mul(&pv, &row[i - 1].1))
        } else if cj < ci {
            j += 1;
            (cj, d.neg(&d.mul(&a, &pivot[j - 1].1)))
        } else {
            i += 1;
            j += 1;
            (ci, d.sub(&d.mul(&pv, &row[i - 1].1), &d.mul(&a, &pivot[j - 1].1)))
        };
        if c != col && !d.is_zero(&v) {
            out.push((c, v));
        }
    }
    d.normalize(&mut out);
    out
}

/// Fraction-free sparse elimination with a Markowitz pivot choice.
///
/// Pivot candidates are ranked by `(row_len - 1) * (col_count - 1)`, then by
/// entry size, then by column, then by source row, so the result does not
/// depend on thread scheduling. With `reduce`, each new pivot column is also
/// cleared from the earlier pivot rows.
pub fn echelon<D: Domain>(d: &D, ncols: usize, rows: Vec<Row<D::E>>, reduce: bool) -> Echelon<D::E> {
    let mut active: Vec<(usize, Row<D::E>)> = rows
        .into_iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .map(|(i, mut r)| {
            d.normalize(&mut r);
            (i, r)
        })
        .collect();
    let mut pivots: Vec<Pivot<D::E>> = Vec::new();
    let mut counts = vec![0usize; ncols];
    while !active.is_empty() {
        counts.iter_mut().for_each(|c| *c = 0);
        for (_, r) in &active {
            for (c, _) in r {
                counts[*c] += 1;
            }
        }
        let mut best: Option<((usize, usize, usize, usize), usize)> = None;
        for (k, (src, r)) in active.iter().enumerate() {
            let rl = r.len() - 1;
            for (c, e) in r {
                let key = (rl * (counts[*c] - 1), d.size(e), *c, *src);
                if best.as_ref().is_none_or(|(b, _)| key < *b) {
                    best = Some((key, k));
                }
            }
        }
        let ((_, _, col, _), k) = best.expect("active rows are nonempty");
        let (src, prow) = active.swap_remove(k);
        active = active
            .into_par_iter()
            .map(|(s, r)| if entry(&r, col).is_some() { (s, combine(d, &r, &prow, col)) } else { (s, r) })
            .filter(|(_, r)| !r.is_empty())
            .collect();
        active.sort_by_key(|(s, _)| *s);
        if reduce {
            pivots.par_iter_mut().for_each(|p| {
                if entry(&p.row, col).is_some() {
                    p.row = combine(d, &p.row, &prow, col);
                }
            });
        }
        pivots.push(Pivot { col, source: src, row: prow });
    }
    Echelon { ncols, pivots, reduced: reduce }
}

/// Clear and eliminate rows given over a field.
pub fn echelon_of<F: Exact>(f: &F, ncols: usize, rows: &[Row<F::Elem>], reduce: bool) -> Echelon<<F::D as Domain>::E> {
    let cleared: Vec<_> = rows.par_iter().map(|r| f.clear_row(r)).collect();
    echelon(&f.domain(), ncols, cleared, reduce)
}

pub fn rank<F: Exact>(f: &F, ncols: usize, rows: &[Row<F::Elem>]) -> usize {
    echelon_of(f, ncols, rows, false).rank()
}

/// Kernel basis by back-substitution: one vector per free column, with a
/// one in that column and zeros in the other free columns.
///
/// A pivot row never meets the columns of earlier pivots, so walking the
/// pivots in reverse determines each pivot coordinate from later ones. This
/// works on reduced and unreduced echelon forms alike and gives the same basis.
pub fn kernel_from<F: Exact>(f: &F, e: &Echelon<<F::D as Domain>::E>) -> Vec<Row<F::Elem>> {
    let mut is_pivot = vec![false; e.ncols];
    for p in &e.pivots {
        is_pivot[p.col] = true;
    }
    let free: Vec<usize> = (0..e.ncols).filter(|c| !is_pivot[*c]).collect();
    free.par_iter()
        .map(|&j| {
            let mut val: Vec<Option<F::Elem>> = vec![None; e.ncols];
            val[j] = Some(f.one());
            for p in e.pivots.iter().rev() {
                let pv = entry(&p.row, p.col).expect("pivot entry");
                let mut acc = f.zero();
                for (c, x) in &p.row {
                    if let Some(v) = val[*c].as_ref().filter(|_| *c != p.col) {
                        acc = f.add(&acc, &f.mul(&f.ratio(x, pv), v));
                    }
                }
                if !f.is_zero(&acc) {
                    val[p.col] = Some(f.neg(&acc));
                }
            }
            val.into_iter().enumerate().filter_map(|(c, v)| v.map(|v| (c, v))).collect()
        })
        .collect()
}

pub fn kernel<F: Exact>(f: &F, ncols: usize, rows: &[Row<F::Elem>]) -> Vec<Row<F::Elem>> {
    kernel_from(f, &echelon_of(f, ncols, rows, false))
}

/// `row · v` for sparse vectors.
pub fn dot<F: Exact>(f: &F, row: &Row<F::Elem>, v: &Row<F::Elem>) -> F::Elem {
    let (mut i, mut j, mut acc) = (0, 0, f.zero());
    while i < row.len() && j < v.len() {
        match row[i].0.cmp(&v[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = f.add(&acc, &f.mul(&row[i].1, &v[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    acc
}
