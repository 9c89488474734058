use super::Field;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Sparse vector: index to nonzero entry.
pub type SparseVec<F> = BTreeMap<usize, F>;

/// Sparse matrix over a single exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F> {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Sets an entry, dropping zeros.
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        if v.is_zero_elem() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &F)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn from_rows(rows: usize, cols: usize, data: &[Vec<F>]) -> Self {
        let mut m = Self::new(rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            t.entries.insert((*c, *r), v.clone());
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && self
                .entries
                .iter()
                .all(|((r, c), v)| self.get(*c, *r) == Some(v))
    }

    /// Sparse rows of the matrix.
    pub fn row_vecs(&self) -> Vec<SparseVec<F>> {
        let mut out = vec![SparseVec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            out[*r].insert(*c, v.clone());
        }
        out
    }

    /// Rejects matrices whose entries live in different fields.
    pub fn check_single_field(&self) -> Result<()> {
        let mut tags = self.entries.values().map(|v| v.field_tag());
        if let Some(t) = tags.next() {
            if let Some(u) = tags.find(|u| *u != t) {
                return Err(Error::MixedFields(format!("field tags {t} and {u}")));
            }
        }
        Ok(())
    }
}

/// Reduced row echelon form; returns pivot columns and the nonzero rows.
fn rref<F: Field>(mut rows: Vec<SparseVec<F>>, cols: usize) -> (Vec<usize>, Vec<SparseVec<F>>) {
    rows.retain(|r| !r.is_empty());
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        // sparsest row with an entry in column c
        let Some(p) = (top..rows.len())
            .filter(|i| rows[*i].contains_key(&c))
            .min_by_key(|i| rows[*i].len())
        else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][&c].inv_ref();
        for v in rows[top].values_mut() {
            *v = v.mul_ref(&inv);
        }
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top {
                continue;
            }
            let Some(f) = row.get(&c).cloned() else {
                continue;
            };
            for (k, pv) in &pivot_row {
                let t = pv.mul_ref(&f);
                let slot = row
                    .get(k)
                    .map(|x| x.sub_ref(&t))
                    .unwrap_or_else(|| t.neg_ref());
                if slot.is_zero_elem() {
                    row.remove(k);
                } else {
                    row.insert(*k, slot);
                }
            }
        }
        pivots.push(c);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    (pivots, rows)
}

/// Exact rank and a basis of the right null space.
pub fn rank_and_kernel<F: Field>(m: &ExactMatrix<F>) -> Result<(usize, Vec<SparseVec<F>>)> {
    m.check_single_field()?;
    let (pivots, rows) = rref(m.row_vecs(), m.cols);
    let mut kernel = Vec::new();
    if let Some(one) = m
        .entries
        .values()
        .next()
        .map(|v| v.one_like())
        .or_else(F::canonical_one)
    {
        for f in (0..m.cols).filter(|c| !pivots.contains(c)) {
            let mut x = SparseVec::new();
            x.insert(f, one.clone());
            for (row, pc) in rows.iter().zip(&pivots) {
                if let Some(v) = row.get(&f) {
                    x.insert(*pc, v.neg_ref());
                }
            }
            kernel.push(x);
        }
    } else if m.cols > 0 {
        return Err(Error::Precondition(
            "kernel of an all-zero matrix over an unspecified field".into(),
        ));
    }
    Ok((pivots.len(), kernel))
}

/// Pivot columns of the reduced row echelon form: a maximal set of
/// independent columns, chosen greedily from the left.
pub fn pivot_columns<F: Field>(m: &ExactMatrix<F>) -> Result<Vec<usize>> {
    m.check_single_field()?;
    Ok(rref(m.row_vecs(), m.cols).0)
}

/// Inverse of a square matrix.
pub fn inverse<F: Field>(m: &ExactMatrix<F>) -> Result<ExactMatrix<F>> {
    m.check_single_field()?;
    let n = m.rows;
    if m.cols != n {
        return Err(Error::LinearSystem("inverse of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(ExactMatrix::new(0, 0));
    }
    let one = m
        .entries
        .values()
        .next()
        .map(|v| v.one_like())
        .ok_or_else(|| Error::LinearSystem("singular matrix".into()))?;
    let mut rows = m.row_vecs();
    for (i, r) in rows.iter_mut().enumerate() {
        r.insert(n + i, one.clone());
    }
    let (pivots, rows) = rref(rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::LinearSystem("singular matrix".into()));
    }
    let mut inv = ExactMatrix::new(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (c, v) in row.range(n..) {
            inv.set(i, c - n, v.clone());
        }
    }
    Ok(inv)
}

/// Exact rank only (works for the zero matrix too).
pub fn rank<F: Field>(m: &ExactMatrix<F>) -> Result<usize> {
    m.check_single_field()?;
    Ok(rref(m.row_vecs(), m.cols).0.len())
}

/// Unique solution of `sum_j x_j columns[j] = target`, as a sparse vector.
pub fn solve_unique<F: Field>(
    columns: &[SparseVec<F>],
    target: &SparseVec<F>,
) -> Result<SparseVec<F>> {
    let k = columns.len();
    let mut keys: Vec<usize> = columns.iter().flat_map(|c| c.keys().copied()).collect();
    keys.extend(target.keys().copied());
    keys.sort_unstable();
    keys.dedup();
    let rows: Vec<SparseVec<F>> = keys
        .iter()
        .map(|key| {
            let mut r: SparseVec<F> = SparseVec::new();
            for (j, c) in columns.iter().enumerate() {
                if let Some(v) = c.get(key) {
                    r.insert(j, v.clone());
                }
            }
            if let Some(v) = target.get(key) {
                r.insert(k, v.clone());
            }
            r
        })
        .collect();
    let (pivots, rows) = rref(rows, k + 1);
    if pivots.last() == Some(&k) {
        return Err(Error::LinearSystem("inconsistent system".into()));
    }
    if pivots.len() != k {
        return Err(Error::LinearSystem(format!(
            "{} unknowns but rank {}",
            k,
            pivots.len()
        )));
    }
    let mut x = SparseVec::new();
    for (row, pc) in rows.iter().zip(&pivots) {
        if let Some(v) = row.get(&k) {
            x.insert(*pc, v.clone());
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, Rational};

    fn q(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        let data: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|x| rat(*x)).collect())
            .collect();
        ExactMatrix::from_rows(rows.len(), rows[0].len(), &data)
    }

    #[test]
    fn rank_examples() {
        let (r, k) = rank_and_kernel(&q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!((r, k.len()), (3, 0));
        assert_eq!(rank(&q(&[&[0, 0], &[0, 0]])).unwrap(), 0);
        let (r, k) = rank_and_kernel(&q(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!((r, k.len()), (1, 1));
    }

    #[test]
    fn unique_solve() {
        let c0: SparseVec<Rational> = [(0, rat(1)), (1, rat(1))].into_iter().collect();
        let c1: SparseVec<Rational> = [(1, rat(2))].into_iter().collect();
        let t: SparseVec<Rational> = [(0, rat(3)), (1, rat(7))].into_iter().collect();
        let x = solve_unique(&[c0.clone(), c1], &t).unwrap();
        assert_eq!(x[&0], rat(3));
        assert_eq!(x[&1], rat(2));
        assert!(solve_unique(&[c0.clone(), c0], &t).is_err());
    }
}
