//! Bracket words, their expansion into the tensor algebra, and Hall bases of
//! free Lie algebras.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::field::{format_rational, Field};
use crate::linalg::SVec;

/// A bracket monomial over numbered generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bracket {
    Gen(usize),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn pair(a: Bracket, b: Bracket) -> Bracket {
        Bracket::Pair(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            Bracket::Gen(_) => 1,
            Bracket::Pair(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn max_generator(&self) -> usize {
        match self {
            Bracket::Gen(g) => *g,
            Bracket::Pair(a, b) => a.max_generator().max(b.max_generator()),
        }
    }

    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> Bracket {
        match self {
            Bracket::Gen(g) => Bracket::Gen(f(*g)),
            Bracket::Pair(a, b) => Bracket::pair(a.relabel(f), b.relabel(f)),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Bracket::Gen(g) => names[*g].clone(),
            Bracket::Pair(a, b) => format!("[{},{}]", a.render(names), b.render(names)),
        }
    }

    /// Fully expanded tensor polynomial: `[u, v] = u v - v u`.
    pub fn expand<K: Field>(&self, k: &K, gens: usize) -> TensorPoly<K::Elem> {
        match self {
            Bracket::Gen(g) => TensorPoly::letter(k, gens, *g),
            Bracket::Pair(a, b) => {
                let (ta, tb) = (a.expand(k, gens), b.expand(k, gens));
                ta.mul(k, &tb).sub(k, &tb.mul(k, &ta))
            }
        }
    }
}

/// A formal linear combination of bracket monomials with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieExpr {
    pub terms: Vec<(BigRational, Bracket)>,
}

impl LieExpr {
    pub fn bracket(b: Bracket) -> Self {
        LieExpr { terms: vec![(BigRational::one(), b)] }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct degrees occurring in the expression.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.iter().map(|(_, b)| b.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Degree of a homogeneous expression.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Combines equal monomials and reduces coefficients into `k` (dropping zeros).
    pub fn normalized<K: Field>(&self, k: &K) -> Option<LieExpr> {
        let mut terms: Vec<(BigRational, Bracket)> = Vec::new();
        for (c, b) in &self.terms {
            let c = k.to_rational(&k.from_rational(c)?);
            match terms.iter_mut().find(|(_, b2)| b2 == b) {
                Some((acc, _)) => *acc = k.to_rational(&k.from_rational(&(acc.clone() + c))?),
                None => terms.push((c, b.clone())),
            }
        }
        terms.retain(|(c, _)| !c.is_zero());
        Some(LieExpr { terms })
    }

    pub fn expand<K: Field>(&self, k: &K, gens: usize) -> Option<TensorPoly<K::Elem>> {
        let degree = self.degree()?;
        let mut acc = TensorPoly::zero(gens, degree);
        for (c, b) in &self.terms {
            let c = k.from_rational(c)?;
            acc = acc.add_scaled(k, &c, &b.expand(k, gens));
        }
        Some(acc)
    }

    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> LieExpr {
        LieExpr { terms: self.terms.iter().map(|(c, b)| (c.clone(), b.relabel(f))).collect() }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (c, b)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(&b.render(names));
        }
        out
    }
}

/// Index of a word of length `word.len()` over `gens` letters, first letter most significant.
pub fn word_index(gens: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &g| acc * gens + g)
}

pub fn word_from_index(gens: usize, degree: usize, mut index: usize) -> Vec<usize> {
    let mut w = vec![0; degree];
    for slot in w.iter_mut().rev() {
        *slot = index % gens;
        index /= gens;
    }
    w
}

/// `gens^degree`, or `None` on overflow.
pub fn tensor_dim(gens: usize, degree: usize) -> Option<usize> {
    (gens as u128).checked_pow(degree as u32).filter(|&n| n <= usize::MAX as u128).map(|n| n as usize)
}

/// A homogeneous element of the tensor algebra on `gens` letters.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorPoly<E> {
    pub gens: usize,
    pub degree: usize,
    pub coeffs: SVec<E>,
}

impl<E: Clone + PartialEq> TensorPoly<E> {
    pub fn zero(gens: usize, degree: usize) -> Self {
        TensorPoly { gens, degree, coeffs: SVec::zero() }
    }

    pub fn letter<K: Field<Elem = E>>(k: &K, gens: usize, g: usize) -> Self {
        TensorPoly { gens, degree: 1, coeffs: SVec::unit(k, g) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn mul<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        let scale = tensor_dim(self.gens, other.degree).expect("tensor index overflow");
        let mut pairs = Vec::with_capacity(self.coeffs.nnz() * other.coeffs.nnz());
        for (i, a) in self.coeffs.iter() {
            for (j, b) in other.coeffs.iter() {
                pairs.push((i * scale + j, k.mul(a, b)));
            }
        }
        TensorPoly { gens: self.gens, degree: self.degree + other.degree, coeffs: SVec::from_pairs(k, pairs) }
    }

    pub fn add_scaled<K: Field<Elem = E>>(&self, k: &K, c: &E, other: &Self) -> Self {
        debug_assert_eq!(self.degree, other.degree);
        TensorPoly { gens: self.gens, degree: self.degree, coeffs: self.coeffs.add_scaled(k, c, &other.coeffs) }
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        self.add_scaled(k, &k.neg(&k.one()), other)
    }

    /// Terms as `(word, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &E)> + '_ {
        self.coeffs.iter().map(move |(i, c)| (word_from_index(self.gens, self.degree, *i), c))
    }

    pub fn render<K: Field<Elem = E>>(&self, k: &K, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(w, c)| {
                let word: String = w.iter().map(|&g| names[g].as_str()).collect::<Vec<_>>().join("");
                if k.is_one(c) {
                    word
                } else {
                    format!("{}*{}", k.display(c), word)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Moebius function.
pub fn moebius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`n` part of the free Lie algebra on `d` generators
/// (the number of primitive necklaces).
pub fn necklace_count(d: usize, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut total: i128 = 0;
    for k in 1..=n {
        if n.is_multiple_of(k) {
            total += moebius(k) as i128 * (d as i128).pow((n / k) as u32);
        }
    }
    (total / n as i128) as usize
}

/// A Hall basis of the free Lie algebra on `gens` generators, through degree `max_degree`.
///
/// Elements are ordered by degree, then by creation. `[u, v]` is a Hall element
/// when `u < v` and either `v` is a generator or `v = [v', v'']` with `v' <= u`.
#[derive(Clone, Debug)]
pub struct HallBasis {
    pub gens: usize,
    elements: Vec<HallElement>,
    by_degree: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct HallElement {
    bracket: Bracket,
    degree: usize,
    parts: Option<(usize, usize)>,
}

impl HallBasis {
    pub fn new(gens: usize, max_degree: usize) -> Self {
        let mut elements = Vec::new();
        let mut by_degree = vec![Vec::new(); max_degree + 1];
        if max_degree >= 1 {
            for g in 0..gens {
                by_degree[1].push(elements.len());
                elements.push(HallElement { bracket: Bracket::Gen(g), degree: 1, parts: None });
            }
        }
        for n in 2..=max_degree {
            let mut fresh = Vec::new();
            for du in 1..n {
                let dv = n - du;
                for &u in &by_degree[du] {
                    for &v in &by_degree[dv] {
                        if u >= v {
                            continue;
                        }
                        let ok = match elements[v].parts {
                            None => true,
                            Some((v1, _)) => v1 <= u,
                        };
                        if ok {
                            fresh.push((u, v));
                        }
                    }
                }
            }
            for (u, v) in fresh {
                let bracket = Bracket::pair(elements[u].bracket.clone(), elements[v].bracket.clone());
                by_degree[n].push(elements.len());
                elements.push(HallElement { bracket, degree: n, parts: Some((u, v)) });
            }
        }
        HallBasis { gens, elements, by_degree }
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len().saturating_sub(1)
    }

    pub fn count(&self, degree: usize) -> usize {
        self.by_degree.get(degree).map_or(0, Vec::len)
    }

    /// Brackets of the given degree, in Hall order.
    pub fn degree(&self, degree: usize) -> Vec<&Bracket> {
        self.by_degree
            .get(degree)
            .map(|ids| ids.iter().map(|&i| &self.elements[i].bracket).collect())
            .unwrap_or_default()
    }

    /// Global indices of the two factors of each element of the given degree (`None` for generators).
    pub fn factors(&self, degree: usize) -> Vec<Option<(usize, usize)>> {
        self.by_degree[degree].iter().map(|&i| self.elements[i].parts).collect()
    }

    /// Position of a global index inside its degree list.
    pub fn ids(&self, degree: usize) -> &[usize] {
        &self.by_degree[degree]
    }

    pub fn element(&self, id: usize) -> (&Bracket, usize) {
        (&self.elements[id].bracket, self.elements[id].degree)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Convenience: the Hall brackets of one degree.
pub fn hall_basis(gens: usize, degree: usize) -> Vec<Bracket> {
    HallBasis::new(gens, degree).degree(degree).into_iter().cloned().collect()
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Gen(g) => write!(f, "g{g}"),
            Bracket::Pair(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::linalg::Subspace;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn expand_commutator() {
        let k = Rationals;
        let xy = Bracket::pair(Bracket::Gen(0), Bracket::Gen(1));
        assert_eq!(xy.expand(&k, 2).render(&k, &names(&["x", "y"])), "xy + -1*yx");
    }

    #[test]
    fn expand_double_bracket() {
        let k = Rationals;
        let e = Bracket::pair(Bracket::Gen(0), Bracket::pair(Bracket::Gen(0), Bracket::Gen(1)));
        let t = e.expand(&k, 2);
        let n = names(&["x", "y"]);
        assert_eq!(t.render(&k, &n), "xxy + -2*xyx + yxx");
    }

    #[test]
    fn scalar_three_in_char_two() {
        let f2 = PrimeField::new(2).unwrap();
        let xy = Bracket::pair(Bracket::Gen(0), Bracket::Gen(1));
        let expr = LieExpr { terms: vec![(BigRational::from_integer(3.into()), xy)] };
        let t = expr.expand(&f2, 2).unwrap();
        assert_eq!(t.render(&f2, &names(&["x", "y"])), "xy + yx");
    }

    #[test]
    fn hall_small_degrees() {
        assert_eq!(hall_basis(2, 1).len(), 2);
        let deg2 = hall_basis(2, 2);
        assert_eq!(deg2, vec![Bracket::pair(Bracket::Gen(0), Bracket::Gen(1))]);
        assert_eq!(hall_basis(2, 5).len(), 6);
    }

    #[test]
    fn necklace_numbers() {
        let free2: Vec<usize> = (1..=6).map(|n| necklace_count(2, n)).collect();
        assert_eq!(free2, vec![2, 1, 2, 3, 6, 9]);
        let free3: Vec<usize> = (1..=4).map(|n| necklace_count(3, n)).collect();
        assert_eq!(free3, vec![3, 3, 8, 18]);
    }

    /// Brute-force oracle: the rank of all left-normed brackets of degree `n`
    /// inside the tensor algebra.
    fn left_normed_rank(d: usize, n: usize) -> usize {
        let k = Rationals;
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            words = words.into_iter().flat_map(|w| (0..d).map(move |g| [w.clone(), vec![g]].concat())).collect();
        }
        let vecs: Vec<_> = words
            .iter()
            .map(|w| {
                let mut b = Bracket::Gen(w[n - 1]);
                for &g in w[..n - 1].iter().rev() {
                    b = Bracket::pair(Bracket::Gen(g), b);
                }
                b.expand(&k, d).coeffs
            })
            .collect();
        Subspace::from_vectors(&k, tensor_dim(d, n).unwrap(), vecs.iter()).dim()
    }

    #[test]
    fn hall_counts_match_left_normed_span() {
        for d in 1..=3 {
            let max = if d == 3 { 5 } else { 6 };
            let hb = HallBasis::new(d, max);
            for n in 1..=max {
                assert_eq!(hb.count(n), left_normed_rank(d, n), "d={d} n={n}");
                assert_eq!(hb.count(n), necklace_count(d, n));
            }
        }
    }

    #[test]
    fn hall_elements_are_independent() {
        let k = Rationals;
        let hb = HallBasis::new(3, 4);
        for n in 1..=4 {
            let vecs: Vec<_> = hb.degree(n).iter().map(|b| b.expand(&k, 3).coeffs).collect();
            let s = Subspace::from_vectors(&k, tensor_dim(3, n).unwrap(), vecs.iter());
            assert_eq!(s.dim(), vecs.len());
        }
    }

    #[test]
    fn word_index_roundtrip() {
        for i in 0..27 {
            assert_eq!(word_index(3, &word_from_index(3, 3, i)), i);
        }
    }

    #[test]
    fn render_expression() {
        let n = names(&["x", "y"]);
        let xy = Bracket::pair(Bracket::Gen(0), Bracket::Gen(1));
        let e = LieExpr {
            terms: vec![
                (BigRational::from_integer((-2).into()), xy.clone()),
                (BigRational::new(1.into(), 3.into()), xy),
            ],
        };
        assert_eq!(e.render(&n), "-2*[x,y] + 1/3*[x,y]");
        assert_eq!(e.normalized(&Rationals).unwrap().render(&n), "-5/3*[x,y]");
    }
}
