//! Exact sparse rational linear algebra.
//!
//! Matrices are stored column-major with sparse columns, since the dominant
//! operation is applying a map to basis vectors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Q::one())] }
    }

    pub fn single(i: usize, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// From unsorted entries; duplicates are summed.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut acc = Accumulator::new();
        for (i, c) in entries {
            acc.add(i, &c);
        }
        acc.finish()
    }

    pub fn from_dense(values: &[Q]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, c: &Q) -> SparseVec {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let mut acc = Q::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += x * y;
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Reindex entries through `f`; the caller guarantees injectivity.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        let mut entries: Vec<(usize, Q)> = self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }

    /// Kronecker product with index `i * right_dim + j`.
    pub fn kron(&self, other: &SparseVec, right_dim: usize) -> SparseVec {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * right_dim + j, x * y));
            }
        }
        SparseVec { entries }
    }
}

/// Hash-based accumulator for building sparse vectors from many terms.
#[derive(Default)]
pub struct Accumulator {
    map: HashMap<usize, Q>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => *x += c,
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_vec(&mut self, c: &Q, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(i, &(x * c));
        }
    }

    pub fn finish(self) -> SparseVec {
        let mut entries: Vec<(usize, Q)> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }
}

/// Expand `v_1 ⊗ .. ⊗ v_m` in the mixed-radix basis with the given
/// dimensions (first factor most significant).
pub fn tensor_expand(vecs: &[&SparseVec], dims: &[usize]) -> SparseVec {
    debug_assert_eq!(vecs.len(), dims.len());
    let mut acc: Vec<(usize, Q)> = vec![(0, Q::one())];
    for (v, &d) in vecs.iter().zip(dims) {
        let mut next = Vec::with_capacity(acc.len() * v.nnz());
        for (idx, c) in &acc {
            for (i, x) in v.iter() {
                next.push((idx * d + i, c * x));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    SparseVec::from_entries(acc)
}

/// Flattened mixed-radix index of a basis tuple.
pub fn flat_index(indices: &[usize], dims: &[usize]) -> usize {
    indices.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// Inverse of [`flat_index`].
pub fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in dims.iter().enumerate().rev() {
        out[slot] = idx % d;
        idx /= d;
    }
    out
}

/// Exact rational matrix, column-major with sparse columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols: vec![SparseVec::zero(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        Matrix { rows, cols }
    }

    pub fn from_dense_rows(rows: &[Vec<Q>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let mut cols = vec![Vec::new(); c];
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        Ok(Matrix { rows: r, cols: cols.into_iter().map(|entries| SparseVec { entries }).collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_dense_rows(&rows).expect("rectangular")
    }

    /// Permutation matrix sending basis vector `j` to `images[j]`.
    pub fn permutation(images: &[usize]) -> Self {
        Matrix { rows: images.len(), cols: images.iter().map(|&i| SparseVec::unit(i)).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(i)
    }

    pub fn set(&mut self, i: usize, j: usize, value: Q) {
        let col = &self.cols[j];
        let delta = &value - col.get(i);
        self.cols[j] = col.add_scaled(&delta, &SparseVec::unit(i));
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.cols.iter().enumerate().all(|(j, c)| *c == SparseVec::unit(j))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    /// `self * v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        if v.nnz() == 1 {
            let (j, c) = v.iter().next().unwrap();
            return self.cols[j].scaled(c);
        }
        let mut acc = Accumulator::new();
        for (j, c) in v.iter() {
            acc.add_vec(c, &self.cols[j]);
        }
        acc.finish()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.ncols(),
                other.rows,
                other.ncols()
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        Matrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Matrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scaled(&-Q::one()))
    }

    pub fn scaled(&self, c: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols.iter().map(|x| x.scaled(c)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col.iter() {
                cols[i].push((j, x.clone()));
            }
        }
        Matrix { rows: self.ncols(), cols: cols.into_iter().map(|entries| SparseVec { entries }).collect() }
    }

    pub fn trace(&self) -> Q {
        let mut t = Q::zero();
        for (j, col) in self.cols.iter().enumerate() {
            t += col.get(j);
        }
        t
    }

    /// Kronecker product, basis `(i, j) -> i * other.dim + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for a in &self.cols {
            for b in &other.cols {
                cols.push(a.kron(b, other.rows));
            }
        }
        Matrix { rows: self.rows * other.rows, cols }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut cols = Vec::with_capacity(self.ncols() + other.ncols());
        cols.extend(self.cols.iter().cloned());
        let shift = self.rows;
        cols.extend(other.cols.iter().map(|c| c.reindex(|i| i + shift)));
        Matrix { rows: self.rows + other.rows, cols }
    }

    pub fn row_major(&self) -> Vec<SparseVec> {
        self.transpose().cols
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let (rref, pivots) = rref(self.row_major(), self.ncols());
        let pivot_set: HashMap<usize, usize> = pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols() {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut entries = vec![(free, Q::one())];
            for (r, &pc) in pivots.iter().enumerate() {
                let x = rref[r].get(free);
                if !x.is_zero() {
                    entries.push((pc, -x));
                }
            }
            basis.push(SparseVec::from_entries(entries));
        }
        basis
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut tracker = SpanTracker::new();
        for c in &self.cols {
            tracker.insert(c.clone())?;
        }
        let cols = (0..n).map(|i| tracker.coordinates(&SparseVec::unit(i)).expect("full rank")).collect();
        Some(Matrix { rows: n, cols })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.ncols())?;
        for row in self.row_major() {
            let dense = row.to_dense(self.ncols());
            let cells: Vec<String> = dense.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of the given rows; returns the nonzero rows
/// and their pivot columns.
pub fn rref(rows: Vec<SparseVec>, _ncols: usize) -> (Vec<SparseVec>, Vec<usize>) {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.into_reduced()
}

/// Incremental row echelon basis. Every stored row has leading entry 1 at
/// its pivot, and the pivot is the row's smallest index.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows. Returns the residual and the
    /// multiples of each stored row that were subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Q)>) {
        let mut w: BTreeMap<usize, Q> = v.iter().map(|(i, c)| (i, c.clone())).collect();
        let mut used = Vec::new();
        let mut cursor = 0;
        while let Some((&i, c)) = w.range(cursor..).next() {
            match self.pivot_row.get(&i) {
                Some(&r) => {
                    let c = c.clone();
                    for (j, x) in self.rows[r].iter() {
                        let entry = w.entry(j).or_insert_with(Q::zero);
                        *entry -= x * &c;
                        if entry.is_zero() {
                            w.remove(&j);
                        }
                    }
                    used.push((r, c));
                }
                None => cursor = i + 1,
            }
        }
        (SparseVec { entries: w.into_iter().collect() }, used)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Insert `v`; returns the new row index when `v` was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let (res, _) = self.reduce(&v);
        self.push_residual(res)
    }

    fn push_residual(&mut self, res: SparseVec) -> Option<usize> {
        let (pivot, lead) = {
            let (i, c) = res.iter().next()?;
            (i, c.clone())
        };
        let row = res.scaled(&lead.recip());
        let idx = self.rows.len();
        self.rows.push(row);
        self.pivot_row.insert(pivot, idx);
        Some(idx)
    }

    /// Fully reduced rows sorted by pivot, with the pivots.
    pub fn into_reduced(self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(&p, &r)| (p, r)).collect();
        order.sort();
        let mut rows: Vec<SparseVec> = order.iter().map(|&(_, r)| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&(p, _)| p).collect();
        // back-substitution, last pivot first
        for a in (0..rows.len()).rev() {
            for b in 0..a {
                let c = rows[b].get(pivots[a]);
                if !c.is_zero() {
                    rows[b] = rows[b].add_scaled(&-c, &rows[a]);
                }
            }
        }
        (rows, pivots)
    }
}

/// Echelon basis that remembers how each row was built from the inserted
/// vectors, so vectors in the span get coordinates in the inserted basis.
#[derive(Clone, Debug, Default)]
pub struct SpanTracker {
    echelon: Echelon,
    // row r of the echelon equals Σ expr[r][l] * inserted[l]
    expr: Vec<SparseVec>,
    count: usize,
}

impl SpanTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Insert `v` as the next basis vector if it is independent of the
    /// current span; returns its basis index.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let (res, used) = self.echelon.reduce(&v);
        let (_, lead) = res.iter().next()?;
        let lead_inv = lead.recip();
        // res = v - Σ c_r row_r  =>  row_new = res / lead
        let idx = self.count;
        let mut e = SparseVec::unit(idx);
        for (r, c) in &used {
            e = e.add_scaled(&-c.clone(), &self.expr[*r]);
        }
        self.expr.push(e.scaled(&lead_inv));
        self.echelon.push_residual(res);
        self.count += 1;
        Some(idx)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon.contains(v)
    }

    /// Coordinates of `v` in the inserted basis, or `None` if outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, used) = self.echelon.reduce(v);
        if !res.is_zero() {
            return None;
        }
        let mut acc = Accumulator::new();
        for (r, c) in &used {
            acc.add_vec(c, &self.expr[*r]);
        }
        Some(acc.finish())
    }
}
