//! Truncated connected graded algebras generated in degree 1.
//!
//! Every basis element is a monomial in the degree-1 basis, so an algebra is
//! determined by its per-degree dimensions, a word for each basis element,
//! and left multiplication by each degree-1 generator. Right multiplication
//! and full multiplication tables are derived from these.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::{tensor_dim, TensorPoly};
use crate::linalg::{Accumulator, SVec, Subspace};

/// Default ceiling on `gens^N` tensor words.
pub const DEFAULT_WORD_CAP: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct GradedAlgebra<K: Field> {
    k: K,
    bound: usize,
    gen_names: Vec<String>,
    dims: Vec<usize>,
    words: Vec<Vec<Vec<usize>>>,
    left: Vec<Vec<Vec<SVec<K::Elem>>>>,
    right: Vec<Vec<Vec<SVec<K::Elem>>>>,
}

impl<K: Field> GradedAlgebra<K> {
    /// Assembles an algebra from its monomial basis and left generator action.
    ///
    /// `left[n][g][b]` is `g * e_b` for `e_b` in degree `n < bound`.
    pub fn from_left_action(
        k: &K,
        bound: usize,
        gen_names: Vec<String>,
        words: Vec<Vec<Vec<usize>>>,
        left: Vec<Vec<Vec<SVec<K::Elem>>>>,
    ) -> Self {
        let dims: Vec<usize> = words.iter().map(Vec::len).collect();
        assert_eq!(dims.len(), bound + 1);
        assert_eq!(dims[0], 1);
        let mut a = GradedAlgebra { k: k.clone(), bound, gen_names, dims, words, left, right: Vec::new() };
        a.right = a.derive_right();
        a
    }

    fn derive_right(&self) -> Vec<Vec<Vec<SVec<K::Elem>>>> {
        let d = self.gens();
        (0..self.bound)
            .map(|n| {
                (0..d)
                    .map(|g| {
                        (0..self.dims[n])
                            .map(|b| self.apply_word(&self.words[n][b], 1, &SVec::unit(&self.k, g)))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// The ground field as an algebra.
    pub fn trivial(k: &K, bound: usize) -> Self {
        let mut words = vec![vec![vec![]]];
        words.resize(bound + 1, vec![]);
        Self::from_left_action(k, bound, vec![], words, vec![vec![]; bound])
    }

    /// `T(V) / (relations)` through degree `bound`, with normal words as basis.
    ///
    /// Works degree by degree: `A_n` is `A_{n-1} (x) V` modulo the images of
    /// `w * r` for basis words `w` and relations `r`, so the coset basis is
    /// the lexicographically ordered set of non-pivot words.
    pub fn tensor_quotient(
        k: &K,
        gen_names: Vec<String>,
        relations: &[TensorPoly<K::Elem>],
        bound: usize,
        cap: u128,
    ) -> Result<Self> {
        let d = gen_names.len();
        let needed = (d as u128).checked_pow(bound as u32).unwrap_or(u128::MAX);
        if needed > cap {
            return Err(Error::CapExceeded { what: format!("{d}^{bound} tensor words"), needed, cap });
        }
        let mut words: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
        let mut parent: Vec<Vec<(usize, usize)>> = vec![vec![]];
        let mut right: Vec<Vec<Vec<SVec<K::Elem>>>> = Vec::new();
        if bound >= 1 {
            words.push((0..d).map(|g| vec![g]).collect());
            parent.push((0..d).map(|g| (0, g)).collect());
            right.push((0..d).map(|g| vec![SVec::unit(k, g)]).collect());
        }
        for n in 2..=bound {
            let prev = words[n - 1].len();
            let cols = prev * d;
            let mut rows = Vec::new();
            for r in relations.iter().filter(|r| r.degree <= n && !r.is_zero()) {
                let deg = r.degree;
                for w in 0..words[n - deg].len() {
                    let mut acc = Accumulator::new();
                    for (word, c) in r.terms() {
                        let mut v = SVec::unit(k, w);
                        for (t, &letter) in word[..deg - 1].iter().enumerate() {
                            v = v.map(k, &right[n - deg + t][letter]);
                        }
                        let last = word[deg - 1];
                        for (b, x) in v.iter() {
                            acc.push(b * d + last, k.mul(c, x));
                        }
                    }
                    rows.push(acc.finish(k));
                }
            }
            let rel = Subspace::from_vectors(k, cols, rows.iter());
            let mut pos = vec![None; cols];
            let mut deg_words = Vec::new();
            let mut deg_parent = Vec::new();
            let mut is_pivot = vec![false; cols];
            for &p in rel.pivots() {
                is_pivot[p] = true;
            }
            for c in 0..cols {
                if !is_pivot[c] {
                    pos[c] = Some(deg_words.len());
                    let (b, g) = (c / d, c % d);
                    let mut w = words[n - 1][b].clone();
                    w.push(g);
                    deg_words.push(w);
                    deg_parent.push((b, g));
                }
            }
            let mut table = vec![vec![SVec::zero(); prev]; d];
            for c in 0..cols {
                let (b, g) = (c / d, c % d);
                table[g][b] = match pos[c] {
                    Some(i) => SVec::unit(k, i),
                    None => {
                        let row_idx = rel.pivots().iter().position(|&p| p == c).unwrap();
                        let pairs = rel.basis()[row_idx]
                            .iter()
                            .filter(|(j, _)| *j != c)
                            .map(|(j, x)| (pos[*j].expect("rref row off pivots"), k.neg(x)))
                            .collect();
                        SVec::from_pairs(k, pairs)
                    }
                };
            }
            right.push(table);
            words.push(deg_words);
            parent.push(deg_parent);
        }
        // left[m][g][b] = g * e_b; with e_b = e_{b'} * h this is (g * e_{b'}) * h.
        let mut left: Vec<Vec<Vec<SVec<K::Elem>>>> = Vec::new();
        for m in 0..bound {
            let mut per_gen = Vec::with_capacity(d);
            for g in 0..d {
                let col: Vec<SVec<K::Elem>> = if m == 0 {
                    vec![SVec::unit(k, g)]
                } else {
                    (0..words[m].len())
                        .map(|b| {
                            let (bp, h) = parent[m][b];
                            let prev: &SVec<K::Elem> = &left[m - 1][g][bp];
                            prev.map(k, &right[m][h])
                        })
                        .collect()
                };
                per_gen.push(col);
            }
            left.push(per_gen);
        }
        let dims = words.iter().map(Vec::len).collect();
        Ok(GradedAlgebra { k: k.clone(), bound, gen_names, dims, words, left, right })
    }

    pub fn field(&self) -> &K {
        &self.k
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn gens(&self) -> usize {
        if self.bound == 0 {
            0
        } else {
            self.dims[1]
        }
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Hilbert series coefficients `h_0..h_N`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn word(&self, n: usize, b: usize) -> &[usize] {
        &self.words[n][b]
    }

    pub fn words(&self, n: usize) -> &[Vec<usize>] {
        &self.words[n]
    }

    pub fn label(&self, n: usize, b: usize) -> String {
        if n == 0 {
            return "1".into();
        }
        let short = self.gen_names.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = self.words[n][b].iter().map(|&g| self.gen_names[g].as_str()).collect();
        parts.join(if short { "" } else { " " })
    }

    /// `g * v` for `v` in degree `n`.
    pub fn left_gen(&self, g: usize, n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        if n >= self.bound {
            return SVec::zero();
        }
        v.map(&self.k, &self.left[n][g])
    }

    /// `v * g` for `v` in degree `n`.
    pub fn right_gen(&self, g: usize, n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        if n >= self.bound {
            return SVec::zero();
        }
        v.map(&self.k, &self.right[n][g])
    }

    /// `x * v` for `x` in degree 1.
    pub fn left_mul_deg1(&self, x: &SVec<K::Elem>, n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        let mut acc = Accumulator::new();
        for (g, c) in x.iter() {
            acc.add_scaled(&self.k, c, &self.left_gen(*g, n, v));
        }
        acc.finish(&self.k)
    }

    /// `v * x` for `x` in degree 1.
    pub fn right_mul_deg1(&self, v: &SVec<K::Elem>, n: usize, x: &SVec<K::Elem>) -> SVec<K::Elem> {
        let mut acc = Accumulator::new();
        for (g, c) in x.iter() {
            acc.add_scaled(&self.k, c, &self.right_gen(*g, n, v));
        }
        acc.finish(&self.k)
    }

    /// `[x, v] = x v - v x` for `x` in degree 1.
    pub fn bracket_deg1(&self, x: &SVec<K::Elem>, n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        self.left_mul_deg1(x, n, v).sub(&self.k, &self.right_mul_deg1(v, n, x))
    }

    /// Multiplies `v` (degree `n`) on the left by the monomial `word`.
    pub fn apply_word(&self, word: &[usize], n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        let mut out = v.clone();
        for (step, &g) in word.iter().rev().enumerate() {
            out = self.left_gen(g, n + step, &out);
        }
        out
    }

    pub fn mul_basis(&self, i: usize, a: usize, j: usize, b: usize) -> SVec<K::Elem> {
        if i + j > self.bound {
            return SVec::zero();
        }
        self.apply_word(&self.words[i][a], j, &SVec::unit(&self.k, b))
    }

    /// Product of homogeneous elements of degrees `i` and `j`.
    pub fn multiply(&self, i: usize, u: &SVec<K::Elem>, j: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        if i + j > self.bound {
            return SVec::zero();
        }
        let mut acc = Accumulator::new();
        for (a, c) in u.iter() {
            acc.add_scaled(&self.k, c, &self.apply_word(&self.words[i][*a], j, v));
        }
        acc.finish(&self.k)
    }

    /// `[u, v] = uv - vu`.
    pub fn commutator(&self, i: usize, u: &SVec<K::Elem>, j: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        self.multiply(i, u, j, v).sub(&self.k, &self.multiply(j, v, i, u))
    }

    /// Full table `e_a * e_b` for `a` in degree `i`, `b` in degree `j`.
    pub fn mult_table(&self, i: usize, j: usize) -> Vec<Vec<SVec<K::Elem>>> {
        (0..self.dim(i)).map(|a| (0..self.dim(j)).map(|b| self.mul_basis(i, a, j, b)).collect()).collect()
    }

    /// Element of `A_1` given by a generator index.
    pub fn generator(&self, g: usize) -> SVec<K::Elem> {
        SVec::unit(&self.k, g)
    }

    /// Checks `(ab)c = a(bc)` on all basis triples of total degree at most the bound.
    pub fn check_associativity(&self) -> Option<(usize, usize, usize)> {
        for i in 0..=self.bound {
            for j in 0..=self.bound - i {
                for l in 0..=self.bound - i - j {
                    for a in 0..self.dim(i) {
                        for b in 0..self.dim(j) {
                            let ab = self.mul_basis(i, a, j, b);
                            for c in 0..self.dim(l) {
                                let left = self.multiply(i + j, &ab, l, &SVec::unit(&self.k, c));
                                let bc = self.mul_basis(j, b, l, c);
                                let right = self.multiply(i, &SVec::unit(&self.k, a), j + l, &bc);
                                if left != right {
                                    return Some((i, j, l));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// `A_n = A_1 A_{n-1}` for all `n`; returns the first degree where this fails.
    pub fn one_generated_failure(&self) -> Option<usize> {
        for n in 2..=self.bound {
            let vecs: Vec<SVec<K::Elem>> = (0..self.gens())
                .flat_map(|g| (0..self.dim(n - 1)).map(move |b| (g, b)))
                .map(|(g, b)| self.left[n - 1][g][b].clone())
                .collect();
            if Subspace::from_vectors(&self.k, self.dim(n), vecs.iter()).dim() != self.dim(n) {
                return Some(n);
            }
        }
        None
    }

    /// Checks `ab = (-1)^{ij} ba` on basis pairs and, in characteristic 2,
    /// `a^2 = 0` for odd-degree basis elements.
    pub fn graded_commutativity_failure(&self) -> Option<String> {
        let k = &self.k;
        for i in 1..=self.bound {
            for j in i..=self.bound - i {
                for a in 0..self.dim(i) {
                    for b in 0..self.dim(j) {
                        let ab = self.mul_basis(i, a, j, b);
                        let ba = self.mul_basis(j, b, i, a);
                        if ab != ba.scale(k, &k.sign(i * j)) {
                            return Some(format!("{} * {}", self.label(i, a), self.label(j, b)));
                        }
                    }
                }
            }
        }
        if k.characteristic() == 2 {
            for i in (1..=self.bound / 2).filter(|i| i % 2 == 1) {
                for a in 0..self.dim(i) {
                    if !self.mul_basis(i, a, i, a).is_zero() {
                        return Some(format!("({})^2", self.label(i, a)));
                    }
                }
            }
        }
        None
    }

    pub fn is_graded_commutative(&self) -> bool {
        self.graded_commutativity_failure().is_none()
    }

    /// Restricts to degrees `<= n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.bound);
        GradedAlgebra {
            k: self.k.clone(),
            bound: n,
            gen_names: if n == 0 { vec![] } else { self.gen_names.clone() },
            dims: self.dims[..=n].to_vec(),
            words: self.words[..=n].to_vec(),
            left: self.left[..n].to_vec(),
            right: self.right[..n].to_vec(),
        }
    }

    /// Replaces one entry of the left action table. Used by negative controls.
    #[doc(hidden)]
    pub fn corrupt_left_action(&mut self, n: usize, g: usize, b: usize, value: SVec<K::Elem>) {
        self.left[n][g][b] = value;
        self.right = self.derive_right();
    }

    /// Checks that a tensor word evaluates to zero (for relation checks).
    pub fn evaluate_tensor(&self, t: &TensorPoly<K::Elem>) -> SVec<K::Elem> {
        let mut acc = Accumulator::new();
        for (word, c) in t.terms() {
            let v = self.apply_word(&word, 0, &SVec::unit(&self.k, 0));
            acc.add_scaled(&self.k, c, &v);
        }
        acc.finish(&self.k)
    }
}

/// Words of degree `n` over `d` letters, in lexicographic order.
pub fn all_words(d: usize, n: usize) -> Vec<Vec<usize>> {
    let total = tensor_dim(d, n).unwrap_or(0);
    (0..total).map(|i| crate::lie::word_from_index(d, n, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::lie::Bracket;

    fn names(d: usize) -> Vec<String> {
        (0..d).map(|i| ((b'x' + i as u8) as char).to_string()).collect()
    }

    #[test]
    fn free_algebra_dims() {
        let a = GradedAlgebra::tensor_quotient(&Rationals, names(2), &[], 3, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(a.dims(), &[1, 2, 4, 8]);
        assert!(a.check_associativity().is_none());
    }

    #[test]
    fn polynomial_ring_two_vars() {
        let k = Rationals;
        let comm = Bracket::pair(Bracket::Gen(0), Bracket::Gen(1)).expand(&k, 2);
        let a = GradedAlgebra::tensor_quotient(&k, names(2), &[comm], 4, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(a.dims(), &[1, 2, 3, 4, 5]);
        assert!(a.check_associativity().is_none());
        assert!(a.graded_commutativity_failure().is_some());
        // x*y == y*x
        assert_eq!(a.mul_basis(1, 0, 1, 1), a.mul_basis(1, 1, 1, 0));
        assert_eq!(a.label(2, 0), "xx");
    }

    #[test]
    fn exterior_algebra_is_graded_commutative() {
        let k = PrimeField::new(3).unwrap();
        let mut rels = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                let ij = TensorPoly::letter(&k, 3, i).mul(&k, &TensorPoly::letter(&k, 3, j));
                let ji = TensorPoly::letter(&k, 3, j).mul(&k, &TensorPoly::letter(&k, 3, i));
                rels.push(if i == j { ij } else { ij.add_scaled(&k, &1, &ji) });
            }
        }
        let a = GradedAlgebra::tensor_quotient(&k, names(3), &rels, 4, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(a.dims(), &[1, 3, 3, 1, 0]);
        assert!(a.is_graded_commutative());
        assert!(a.one_generated_failure().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let e = GradedAlgebra::tensor_quotient(&Rationals, names(4), &[], 10, DEFAULT_WORD_CAP).unwrap_err();
        assert!(matches!(e, Error::CapExceeded { .. }));
    }

    #[test]
    fn relation_words_reduce_to_zero() {
        let k = Rationals;
        let r = Bracket::pair(Bracket::Gen(0), Bracket::pair(Bracket::Gen(0), Bracket::Gen(1))).expand(&k, 2);
        let a = GradedAlgebra::tensor_quotient(&k, names(2), std::slice::from_ref(&r), 5, DEFAULT_WORD_CAP).unwrap();
        assert!(a.evaluate_tensor(&r).is_zero());
        let yr = TensorPoly::letter(&k, 2, 1).mul(&k, &r);
        assert!(a.evaluate_tensor(&yr).is_zero());
        assert!(a.check_associativity().is_none());
    }
}
