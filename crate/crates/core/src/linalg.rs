//! Exact linear algebra over a [`Field`]: sparse vectors, reduced row-echelon
//! forms, kernels, and subspaces with intersection and complement.

use crate::error::{Error, Result};
use crate::field::Field;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: Clone> Default for SVec<E> {
    fn default() -> Self {
        SVec { entries: Vec::new() }
    }
}

impl<E: Clone + PartialEq> SVec<E> {
    pub fn zero() -> Self {
        SVec { entries: Vec::new() }
    }

    pub fn unit<K: Field<Elem = E>>(k: &K, i: usize) -> Self {
        SVec { entries: vec![(i, k.one())] }
    }

    pub fn single<K: Field<Elem = E>>(k: &K, i: usize, c: E) -> Self {
        if k.is_zero(&c) {
            Self::zero()
        } else {
            SVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<K: Field<Elem = E>>(k: &K, mut pairs: Vec<(usize, E)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, E)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = k.add(acc, &c),
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !k.is_zero(c));
        SVec { entries }
    }

    pub fn from_dense<K: Field<Elem = E>>(k: &K, dense: &[E]) -> Self {
        SVec { entries: dense.iter().enumerate().filter(|(_, c)| !k.is_zero(c)).map(|(i, c)| (i, c.clone())).collect() }
    }

    pub fn to_dense<K: Field<Elem = E>>(&self, k: &K, dim: usize) -> Vec<E> {
        let mut out = vec![k.zero(); dim];
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

    pub fn iter(&self) -> impl Iterator<Item = &(usize, E)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|pos| &self.entries[pos].1)
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        if k.is_zero(c) {
            return Self::zero();
        }
        SVec { entries: self.entries.iter().map(|(i, v)| (*i, k.mul(v, c))).collect() }
    }

    pub fn neg<K: Field<Elem = E>>(&self, k: &K) -> Self {
        SVec { entries: self.entries.iter().map(|(i, v)| (*i, k.neg(v))).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled<K: Field<Elem = E>>(&self, k: &K, c: &E, other: &Self) -> Self {
        if k.is_zero(c) || other.is_zero() {
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
                        out.push((*j, k.mul(c, y)));
                        b.next();
                    } else {
                        let s = k.add(x, &k.mul(c, y));
                        if !k.is_zero(&s) {
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
                    out.push((*j, k.mul(c, y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SVec { entries: out }
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        self.add_scaled(k, &k.one(), other)
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        self.add_scaled(k, &k.neg(&k.one()), other)
    }

    /// Re-indexes every entry by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        SVec { entries: self.entries.iter().map(|(i, c)| (i + offset, c.clone())).collect() }
    }

    /// Keeps entries with index in `lo..hi`, re-indexed to start at 0.
    pub fn window(&self, lo: usize, hi: usize) -> Self {
        SVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, c)| (i - lo, c.clone()))
                .collect(),
        }
    }

    /// Applies a linear map given by the images of basis vectors.
    pub fn map<K: Field<Elem = E>>(&self, k: &K, images: &[SVec<E>]) -> Self {
        let mut acc = Accumulator::new();
        for (i, c) in &self.entries {
            acc.add_scaled(k, c, &images[*i]);
        }
        acc.finish(k)
    }

    pub fn dot<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> E {
        let mut s = k.zero();
        for (i, c) in &self.entries {
            if let Some(d) = other.get(*i) {
                s = k.add(&s, &k.mul(c, d));
            }
        }
        s
    }
}

/// Collects scaled sparse vectors and merges them once at the end.
pub struct Accumulator<E> {
    pairs: Vec<(usize, E)>,
}

impl<E: Clone + PartialEq> Default for Accumulator<E> {
    fn default() -> Self {
        Self::new()
    }
}

impl<E: Clone + PartialEq> Accumulator<E> {
    pub fn new() -> Self {
        Accumulator { pairs: Vec::new() }
    }

    pub fn add_scaled<K: Field<Elem = E>>(&mut self, k: &K, c: &E, v: &SVec<E>) {
        if k.is_zero(c) {
            return;
        }
        if k.is_one(c) {
            self.pairs.extend(v.entries.iter().cloned());
        } else {
            self.pairs.extend(v.entries.iter().map(|(i, x)| (*i, k.mul(c, x))));
        }
    }

    pub fn push(&mut self, i: usize, c: E) {
        self.pairs.push((i, c));
    }

    pub fn finish<K: Field<Elem = E>>(self, k: &K) -> SVec<E> {
        SVec::from_pairs(k, self.pairs)
    }
}

/// A matrix with dense semantics, stored as sparse rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: Vec<SVec<E>>,
    pub cols: usize,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn new(rows: Vec<SVec<E>>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
        Matrix { rows, cols }
    }

    pub fn from_dense<K: Field<Elem = E>>(k: &K, rows: &[Vec<E>], cols: usize) -> Self {
        Matrix { rows: rows.iter().map(|r| SVec::from_dense(k, r)).collect(), cols }
    }

    pub fn from_i64<K: Field<Elem = E>>(k: &K, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<E>> = rows.iter().map(|r| r.iter().map(|x| k.from_i64(*x)).collect()).collect();
        Self::from_dense(k, &dense, cols)
    }

    pub fn identity<K: Field<Elem = E>>(k: &K, n: usize) -> Self {
        Matrix { rows: (0..n).map(|i| SVec::unit(k, i)).collect(), cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_dense<K: Field<Elem = E>>(&self, k: &K) -> Vec<Vec<E>> {
        self.rows.iter().map(|r| r.to_dense(k, self.cols)).collect()
    }

    /// `self * v` for a column vector `v`.
    pub fn apply<K: Field<Elem = E>>(&self, k: &K, v: &SVec<E>) -> SVec<E> {
        let pairs = self.rows.iter().enumerate().map(|(i, r)| (i, r.dot(k, v))).collect();
        SVec::from_pairs(k, pairs)
    }
}

/// Incrementally built row-echelon form (pivots normalized to 1, not back-substituted).
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    k: K,
    cols: usize,
    rows: Vec<SVec<K::Elem>>,
    pivot_row: Vec<Option<usize>>,
}

impl<K: Field> Echelon<K> {
    pub fn new(k: &K, cols: usize) -> Self {
        Echelon { k: k.clone(), cols, rows: Vec::new(), pivot_row: vec![None; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c].is_some()
    }

    /// Residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        let k = &self.k;
        if v.is_zero() || self.rows.is_empty() {
            return v.clone();
        }
        let start = v.leading().unwrap();
        let mut dense = v.to_dense(k, self.cols);
        for c in start..self.cols {
            if k.is_zero(&dense[c]) {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let coef = k.neg(&dense[c]);
                for (j, x) in self.rows[r].iter() {
                    dense[*j] = k.add(&dense[*j], &k.mul(&coef, x));
                }
            }
        }
        SVec::from_dense(k, &dense[start..]).shifted(start)
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &SVec<K::Elem>) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SVec<K::Elem>) -> bool {
        match r.leading() {
            None => false,
            Some(p) => {
                let inv = self.k.inv(r.get(p).unwrap());
                let row = r.scale(&self.k, &inv);
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    pub fn contains(&self, v: &SVec<K::Elem>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rows(&self) -> &[SVec<K::Elem>] {
        &self.rows
    }

    /// Back-substitutes into reduced row-echelon form.
    pub fn into_subspace(self) -> Subspace<K> {
        let k = self.k;
        let cols = self.cols;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].leading().unwrap());
        let pivots: Vec<usize> = order.iter().map(|&i| self.rows[i].leading().unwrap()).collect();
        let mut reduced: Vec<Option<SVec<K::Elem>>> = vec![None; order.len()];
        let mut pos_of_pivot = vec![None; cols];
        for (pos, &p) in pivots.iter().enumerate() {
            pos_of_pivot[p] = Some(pos);
        }
        for pos in (0..order.len()).rev() {
            let row = &self.rows[order[pos]];
            let mut acc = Accumulator::new();
            acc.add_scaled(&k, &k.one(), row);
            for (c, x) in row.iter() {
                if *c == pivots[pos] {
                    continue;
                }
                if let Some(q) = pos_of_pivot[*c] {
                    let lower = reduced[q].as_ref().expect("later rows reduced first");
                    acc.add_scaled(&k, &k.neg(x), lower);
                }
            }
            reduced[pos] = Some(acc.finish(&k));
        }
        Subspace { k, ambient: cols, rows: reduced.into_iter().map(Option::unwrap).collect(), pivots }
    }
}

/// Reduced row-echelon form of `m` and its pivot columns.
pub fn rref<K: Field>(k: &K, m: &Matrix<K::Elem>) -> (Matrix<K::Elem>, Vec<usize>) {
    let s = Subspace::from_vectors(k, m.cols, m.rows.iter());
    let pivots = s.pivots.clone();
    (Matrix::new(s.rows, m.cols), pivots)
}

pub fn rank<K: Field>(k: &K, m: &Matrix<K::Elem>) -> usize {
    let mut e = Echelon::new(k, m.cols);
    for r in &m.rows {
        e.insert(r);
    }
    e.rank()
}

/// Right null space `{v : m v = 0}`.
pub fn kernel<K: Field>(k: &K, m: &Matrix<K::Elem>) -> Subspace<K> {
    let (r, pivots) = rref(k, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut pairs = vec![(f, k.one())];
        for (row, &p) in r.rows.iter().zip(&pivots) {
            if let Some(x) = row.get(f) {
                pairs.push((p, k.neg(x)));
            }
        }
        vecs.push(SVec::from_pairs(k, pairs));
    }
    Subspace::from_vectors(k, m.cols, vecs.iter())
}

/// Left null space of a list of vectors: all coefficient vectors `c` with `sum c_i v_i = 0`.
pub fn left_kernel<K: Field>(k: &K, ambient: usize, vectors: &[SVec<K::Elem>]) -> Subspace<K> {
    let n = vectors.len();
    let mut e = Echelon::new(k, ambient + n);
    let mut relations = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let aug = v.add(k, &SVec::unit(k, ambient + i));
        let r = e.reduce(&aug);
        match r.leading() {
            Some(p) if p >= ambient => {
                relations.push(r.window(ambient, ambient + n));
            }
            _ => {}
        }
        e.push_reduced(r);
    }
    Subspace::from_vectors(k, n, relations.iter())
}

/// Expresses vectors in the span of a fixed independent family.
#[derive(Clone, Debug)]
pub struct SpanCoords<K: Field> {
    ambient: usize,
    count: usize,
    echelon: Echelon<K>,
}

impl<K: Field> SpanCoords<K> {
    /// Fails if the family is dependent.
    pub fn new(k: &K, ambient: usize, basis: &[SVec<K::Elem>]) -> Result<Self> {
        let n = basis.len();
        let mut echelon = Echelon::new(k, ambient + n);
        for (i, b) in basis.iter().enumerate() {
            let r = echelon.reduce(&b.add(k, &SVec::unit(k, ambient + i)));
            if r.leading().is_none_or(|p| p >= ambient) {
                return Err(Error::Dependent);
            }
            echelon.push_reduced(r);
        }
        Ok(SpanCoords { ambient, count: n, echelon })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Coefficients of `v` in the family, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &SVec<K::Elem>) -> Option<SVec<K::Elem>> {
        let r = self.echelon.reduce(v);
        if r.leading().is_some_and(|p| p < self.ambient) {
            return None;
        }
        Some(r.window(self.ambient, self.ambient + self.count).neg(&self.echelon.k))
    }
}

/// A subspace of `K^ambient`, stored by its reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<K: Field> {
    k: K,
    ambient: usize,
    rows: Vec<SVec<K::Elem>>,
    pivots: Vec<usize>,
}

impl<K: Field> PartialEq for Subspace<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl<K: Field> Subspace<K> {
    pub fn zero(k: &K, ambient: usize) -> Self {
        Subspace { k: k.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(k: &K, ambient: usize) -> Self {
        Subspace {
            k: k.clone(),
            ambient,
            rows: (0..ambient).map(|i| SVec::unit(k, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors<'a, I>(k: &K, ambient: usize, vecs: I) -> Self
    where
        I: IntoIterator<Item = &'a SVec<K::Elem>>,
    {
        let mut e = Echelon::new(k, ambient);
        for v in vecs {
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(k: &K, ambient: usize, indices: &[usize]) -> Self {
        let vecs: Vec<_> = indices.iter().map(|&i| SVec::unit(k, i)).collect();
        Self::from_vectors(k, ambient, vecs.iter())
    }

    pub fn field(&self) -> &K {
        &self.k
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[SVec<K::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon<K> {
        let mut pivot_row = vec![None; self.ambient];
        for (i, &p) in self.pivots.iter().enumerate() {
            pivot_row[p] = Some(i);
        }
        Echelon { k: self.k.clone(), cols: self.ambient, rows: self.rows.clone(), pivot_row }
    }

    /// Residue of `v` modulo the subspace: the unique representative vanishing on all pivots.
    pub fn reduce(&self, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        let k = &self.k;
        let mut acc = Accumulator::new();
        acc.add_scaled(k, &k.one(), v);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(x) = v.get(p) {
                acc.add_scaled(k, &k.neg(x), row);
            }
        }
        acc.finish(k)
    }

    pub fn contains(&self, v: &SVec<K::Elem>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients of `v` against [`basis`](Self::basis), if `v` lies in the subspace.
    pub fn coords(&self, v: &SVec<K::Elem>) -> Option<SVec<K::Elem>> {
        if !self.contains(v) {
            return None;
        }
        let pairs = self.pivots.iter().enumerate().filter_map(|(i, p)| v.get(*p).map(|x| (i, x.clone()))).collect();
        Some(SVec::from_pairs(&self.k, pairs))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r);
        }
        Ok(e.into_subspace())
    }

    /// Annihilator under the standard pairing `<u, v> = sum u_i v_i`.
    pub fn perp(&self) -> Self {
        kernel(&self.k, &Matrix::new(self.rows.clone(), self.ambient))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    /// The complement of `self` inside `inside` made of the vectors of `inside`
    /// vanishing on every pivot column of `self`.
    pub fn complement_in(&self, inside: &Self) -> Result<Self> {
        self.check_ambient(inside)?;
        if !inside.contains_subspace(self) {
            return Err(Error::NotContained);
        }
        let residues: Vec<_> = inside.rows.iter().map(|r| self.reduce(r)).collect();
        Ok(Self::from_vectors(&self.k, self.ambient, residues.iter()))
    }

    pub fn complement(&self) -> Self {
        self.complement_in(&Self::full(&self.k, self.ambient)).expect("full space contains everything")
    }

    /// Image under a linear map given by basis images into `K^target`.
    pub fn image(&self, images: &[SVec<K::Elem>], target: usize) -> Self {
        let vecs: Vec<_> = self.rows.iter().map(|r| r.map(&self.k, images)).collect();
        Self::from_vectors(&self.k, target, vecs.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        Matrix::from_i64(&Rationals, rows)
    }

    #[test]
    fn rref_rank_one() {
        let (r, piv) = rref(&Rationals, &q(&[&[2, 4], &[1, 2]]));
        assert_eq!(piv, vec![0]);
        assert_eq!(r, q(&[&[1, 2]]));
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(&Rationals, 3);
        let (r, piv) = rref(&Rationals, &id);
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn rref_char_two_duplicate_rows() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64(&f2, &[&[1, 1], &[1, 1]]);
        let (r, piv) = rref(&f2, &m);
        assert_eq!(piv, vec![0]);
        assert_eq!(r, Matrix::from_i64(&f2, &[&[1, 1]]));
    }

    #[test]
    fn kernel_examples() {
        let zero = Matrix::new(vec![SVec::zero(), SVec::zero()], 3);
        assert_eq!(kernel(&Rationals, &zero).dim(), 3);
        assert_eq!(kernel(&Rationals, &Matrix::identity(&Rationals, 4)).dim(), 0);
        let m = q(&[&[1, 1, 0]]);
        let ker = kernel(&Rationals, &m);
        assert_eq!(ker.dim(), 2);
        let v = SVec::from_dense(&Rationals, &[1i64, -1, 0].map(|x| Rationals.from_i64(x)));
        assert!(ker.contains(&v));
        for b in ker.basis() {
            assert!(m.apply(&Rationals, b).is_zero());
        }
    }

    #[test]
    fn intersection_examples() {
        let k = Rationals;
        let e1 = Subspace::coordinate(&k, 2, &[0]);
        let e2 = Subspace::coordinate(&k, 2, &[1]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        let m = q(&[&[1, 1], &[1, -1]]);
        let both = Subspace::from_vectors(&k, 2, m.rows.iter());
        assert_eq!(both.intersect(&e1).unwrap(), e1);
        let e3 = Subspace::zero(&k, 3);
        assert!(matches!(e1.intersect(&e3), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn complement_examples() {
        let k = Rationals;
        let full = Subspace::full(&k, 2);
        let zero = Subspace::zero(&k, 2);
        assert_eq!(zero.complement_in(&full).unwrap(), full);
        assert!(full.complement_in(&full).unwrap().is_zero());
        let diag = Subspace::from_vectors(&k, 2, q(&[&[1, 1]]).rows.iter());
        assert_eq!(diag.complement_in(&full).unwrap(), Subspace::coordinate(&k, 2, &[1]));
        let e1 = Subspace::coordinate(&k, 2, &[0]);
        assert!(matches!(diag.complement_in(&e1), Err(Error::NotContained)));
    }

    #[test]
    fn left_kernel_and_coords() {
        let k = Rationals;
        let m = q(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]);
        let lk = left_kernel(&k, 3, &m.rows);
        assert_eq!(lk.dim(), 1);
        let c = &lk.basis()[0];
        let combo = c.iter().fold(SVec::zero(), |acc, (i, x)| acc.add_scaled(&k, x, &m.rows[*i]));
        assert!(combo.is_zero());

        let sc = SpanCoords::new(&k, 3, &m.rows[..2]).unwrap();
        let coords = sc.coords(&m.rows[2]).unwrap();
        assert_eq!(coords, SVec::from_dense(&k, &[k.one(), k.one()]));
        assert!(sc.coords(&SVec::unit(&k, 0)).is_none());
        assert!(SpanCoords::new(&k, 3, &m.rows).is_err());
    }
}
