//! Truncated graded left modules over a [`GradedAlgebra`], described by the
//! action of the degree-1 generators.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Accumulator, Echelon, SVec, Subspace};

/// Anything a degree-1 generator can act on, degree by degree.
pub trait LeftAction<K: Field> {
    fn field(&self) -> &K;
    fn bound(&self) -> usize;
    fn dim(&self, n: usize) -> usize;
    /// `g * v` for `v` in degree `n`; zero past the bound.
    fn act(&self, g: usize, n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem>;

    /// Applies a monomial, rightmost letter first.
    fn act_word(&self, word: &[usize], n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        let mut out = v.clone();
        for (step, &g) in word.iter().rev().enumerate() {
            if out.is_zero() {
                break;
            }
            out = self.act(g, n + step, &out);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct GradedModule<K: Field> {
    k: K,
    bound: usize,
    gens: usize,
    dims: Vec<usize>,
    act: Vec<Vec<Vec<SVec<K::Elem>>>>,
}

impl<K: Field> LeftAction<K> for GradedModule<K> {
    fn field(&self) -> &K {
        &self.k
    }

    fn bound(&self) -> usize {
        self.bound
    }

    fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    fn act(&self, g: usize, n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        if n >= self.bound {
            return SVec::zero();
        }
        v.map(&self.k, &self.act[n][g])
    }
}

impl<K: Field> GradedModule<K> {
    /// `act[n][g][b]` is `g * e_b` for `e_b` in degree `n < bound`.
    pub fn from_action(k: &K, gens: usize, dims: Vec<usize>, act: Vec<Vec<Vec<SVec<K::Elem>>>>) -> Self {
        let bound = dims.len() - 1;
        assert_eq!(act.len(), bound);
        GradedModule { k: k.clone(), bound, gens, dims, act }
    }

    /// The ground field in degree 0.
    pub fn trivial(a: &GradedAlgebra<K>) -> Self {
        let mut dims = vec![0; a.bound() + 1];
        dims[0] = 1;
        Self::zero_action(a, dims)
    }

    fn zero_action(a: &GradedAlgebra<K>, dims: Vec<usize>) -> Self {
        let act = (0..a.bound()).map(|n| vec![vec![SVec::zero(); dims[n]]; a.gens()]).collect();
        Self::from_action(a.field(), a.gens(), dims, act)
    }

    /// `A` as a left module over itself.
    pub fn regular(a: &GradedAlgebra<K>) -> Self {
        let k = a.field();
        let act = (0..a.bound())
            .map(|n| {
                (0..a.gens()).map(|g| (0..a.dim(n)).map(|b| a.left_gen(g, n, &SVec::unit(k, b))).collect()).collect()
            })
            .collect();
        Self::from_action(k, a.gens(), a.dims().to_vec(), act)
    }

    /// Free module with one generator in each listed degree.
    pub fn free(a: &GradedAlgebra<K>, gen_degrees: &[usize]) -> Self {
        let layout = FreeModule::new(a, gen_degrees.to_vec());
        layout.materialize()
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `M[m]`: the copy of `M` moved up by `m` degrees, truncated at the same bound.
    pub fn shift_up(&self, m: usize) -> Self {
        let mut dims = vec![0; self.bound + 1];
        for (n, d) in self.dims.iter().enumerate() {
            if n + m <= self.bound {
                dims[n + m] = *d;
            }
        }
        let act =
            (0..self.bound).map(|n| if n >= m { self.act[n - m].clone() } else { vec![vec![]; self.gens] }).collect();
        Self::from_action(&self.k, self.gens, dims, act)
    }

    /// `M (+) N`, with the basis of `M` first in every degree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.bound != other.bound || self.gens != other.gens {
            return Err(Error::Incompatible);
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let act = (0..self.bound)
            .map(|n| {
                (0..self.gens)
                    .map(|g| {
                        let mut col = self.act[n][g].clone();
                        col.extend(other.act[n][g].iter().map(|v| v.shifted(self.dims[n + 1])));
                        col
                    })
                    .collect()
            })
            .collect();
        Ok(Self::from_action(&self.k, self.gens, dims, act))
    }

    /// Smallest submodule containing the given vectors (indexed by degree).
    pub fn generated_submodule(&self, seeds: &[Vec<SVec<K::Elem>>]) -> Vec<Subspace<K>> {
        let mut out: Vec<Subspace<K>> = Vec::with_capacity(self.bound + 1);
        for n in 0..=self.bound {
            let mut e = Echelon::new(&self.k, self.dims[n]);
            if let Some(s) = seeds.get(n) {
                for v in s {
                    e.insert(v);
                }
            }
            if n > 0 {
                for v in out[n - 1].basis() {
                    for g in 0..self.gens {
                        e.insert(&self.act(g, n - 1, v));
                    }
                }
            }
            out.push(e.into_subspace());
        }
        out
    }

    pub fn is_submodule(&self, family: &[Subspace<K>]) -> bool {
        (0..self.bound).all(|n| {
            family[n].basis().iter().all(|v| (0..self.gens).all(|g| family[n + 1].contains(&self.act(g, n, v))))
        })
    }

    /// Quotient `M / U` with coset basis on the non-pivot coordinates of `U`.
    pub fn quotient(&self, family: &[Subspace<K>]) -> Result<(Self, ModuleMap<K>)> {
        if !self.is_submodule(family) {
            return Err(Error::InvalidModule("quotient by a non-submodule".into()));
        }
        let k = &self.k;
        let mut keep: Vec<Vec<usize>> = Vec::new();
        let mut proj: Vec<Vec<SVec<K::Elem>>> = Vec::new();
        for n in 0..=self.bound {
            let u = &family[n];
            let mut pos = vec![None; self.dims[n]];
            let mut kept = Vec::new();
            for c in 0..self.dims[n] {
                if !u.pivots().contains(&c) {
                    pos[c] = Some(kept.len());
                    kept.push(c);
                }
            }
            let images = (0..self.dims[n])
                .map(|c| {
                    let r = u.reduce(&SVec::unit(k, c));
                    SVec::from_pairs(k, r.iter().map(|(i, x)| (pos[*i].expect("reduced"), x.clone())).collect())
                })
                .collect();
            keep.push(kept);
            proj.push(images);
        }
        let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
        let act = (0..self.bound)
            .map(|n| {
                (0..self.gens)
                    .map(|g| keep[n].iter().map(|&c| self.act[n][g][c].map(k, &proj[n + 1])).collect())
                    .collect()
            })
            .collect();
        let q = Self::from_action(k, self.gens, dims.clone(), act);
        Ok((q, ModuleMap::new(self.dims.clone(), dims, proj)))
    }

    /// The submodule `U` with the RREF basis of each component.
    pub fn submodule(&self, family: &[Subspace<K>]) -> Result<(Self, ModuleMap<K>)> {
        if !self.is_submodule(family) {
            return Err(Error::InvalidModule("family is not closed under the action".into()));
        }
        let dims: Vec<usize> = family.iter().map(Subspace::dim).collect();
        let act = (0..self.bound)
            .map(|n| {
                (0..self.gens)
                    .map(|g| {
                        family[n]
                            .basis()
                            .iter()
                            .map(|v| family[n + 1].coords(&self.act(g, n, v)).expect("closed"))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let incl = family.iter().map(|f| f.basis().to_vec()).collect();
        Ok((Self::from_action(&self.k, self.gens, dims.clone(), act), ModuleMap::new(dims, self.dims.clone(), incl)))
    }

    /// Checks that the generator action satisfies the relations of `a`.
    pub fn validate(&self, a: &GradedAlgebra<K>) -> Result<()> {
        if a.gens() != self.gens || a.bound() < self.bound {
            return Err(Error::Incompatible);
        }
        let k = &self.k;
        for j in 0..=self.bound {
            for m in 0..self.dims[j] {
                let mv = SVec::unit(k, m);
                // images of every basis monomial of A_i on e_m
                let mut prev: Vec<SVec<K::Elem>> = vec![mv.clone()];
                for i in 1..=self.bound - j {
                    let cur: Vec<SVec<K::Elem>> = (0..a.dim(i)).map(|b| self.act_word(a.word(i, b), j, &mv)).collect();
                    for g in 0..self.gens {
                        for (b, p) in prev.iter().enumerate() {
                            let direct = self.act(g, j + i - 1, p);
                            let via = a.left_gen(g, i - 1, &SVec::unit(k, b));
                            let mut acc = Accumulator::new();
                            for (c, x) in via.iter() {
                                acc.add_scaled(k, x, &cur[*c]);
                            }
                            if direct != acc.finish(k) {
                                return Err(Error::InvalidModule(format!(
                                    "action on degree {j} element violates a relation in degree {i}"
                                )));
                            }
                        }
                    }
                    prev = cur;
                }
            }
        }
        Ok(())
    }
}

/// A degree-preserving linear map between graded modules, by basis images.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<K: Field> {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub images: Vec<Vec<SVec<K::Elem>>>,
}

impl<K: Field> ModuleMap<K> {
    pub fn new(source_dims: Vec<usize>, target_dims: Vec<usize>, images: Vec<Vec<SVec<K::Elem>>>) -> Self {
        ModuleMap { source_dims, target_dims, images }
    }

    pub fn identity(k: &K, dims: &[usize]) -> Self {
        let images = dims.iter().map(|&d| (0..d).map(|i| SVec::unit(k, i)).collect()).collect();
        Self::new(dims.to_vec(), dims.to_vec(), images)
    }

    pub fn zero(source_dims: &[usize], target_dims: &[usize]) -> Self {
        let images = source_dims.iter().map(|&d| vec![SVec::zero(); d]).collect();
        Self::new(source_dims.to_vec(), target_dims.to_vec(), images)
    }

    pub fn apply(&self, k: &K, n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        v.map(k, &self.images[n])
    }

    pub fn image(&self, k: &K, n: usize) -> Subspace<K> {
        Subspace::from_vectors(k, self.target_dims[n], self.images[n].iter())
    }

    pub fn kernel(&self, k: &K, n: usize) -> Subspace<K> {
        crate::linalg::left_kernel(k, self.target_dims[n], &self.images[n])
    }

    pub fn compose(&self, k: &K, after: &Self) -> Self {
        let images =
            self.images.iter().enumerate().map(|(n, col)| col.iter().map(|v| after.apply(k, n, v)).collect()).collect();
        Self::new(self.source_dims.clone(), after.target_dims.clone(), images)
    }

    /// Checks `f(g * v) = g * f(v)` on all basis vectors.
    pub fn commutes_with_action(&self, source: &GradedModule<K>, target: &GradedModule<K>) -> bool {
        let k = source.field();
        (0..source.bound()).all(|n| {
            (0..source.dim(n)).all(|b| {
                (0..source.gens()).all(|g| {
                    let lhs = self.apply(k, n + 1, &source.act(g, n, &SVec::unit(k, b)));
                    let rhs = target.act(g, n, &self.images[n][b]);
                    lhs == rhs
                })
            })
        })
    }
}

/// Free module over `A` on homogeneous generators, laid out as one block of
/// `A_{n - deg e}` per generator `e` in every degree `n`.
#[derive(Clone, Debug)]
pub struct FreeModule<'a, K: Field> {
    a: &'a GradedAlgebra<K>,
    gen_degrees: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl<'a, K: Field> FreeModule<'a, K> {
    pub fn new(a: &'a GradedAlgebra<K>, gen_degrees: Vec<usize>) -> Self {
        let n = a.bound();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut dims = Vec::with_capacity(n + 1);
        for deg in 0..=n {
            let mut off = Vec::with_capacity(gen_degrees.len());
            let mut total = 0;
            for &e in &gen_degrees {
                off.push(total);
                if e <= deg {
                    total += a.dim(deg - e);
                }
            }
            offsets.push(off);
            dims.push(total);
        }
        FreeModule { a, gen_degrees, offsets, dims }
    }

    pub fn algebra(&self) -> &'a GradedAlgebra<K> {
        self.a
    }

    pub fn gen_degrees(&self) -> &[usize] {
        &self.gen_degrees
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Block containing column `c` of degree `n`: `(generator, index in A_{n - deg})`.
    pub fn locate(&self, n: usize, c: usize) -> (usize, usize) {
        let off = &self.offsets[n];
        // empty blocks share their offset with the next block, so the last match is non-empty
        let e = off.partition_point(|&o| o <= c) - 1;
        (e, c - off[e])
    }

    /// The generator `e` itself, as an element of degree `deg e`.
    pub fn generator(&self, e: usize) -> SVec<K::Elem> {
        SVec::unit(self.a.field(), self.offsets[self.gen_degrees[e]][e])
    }

    pub fn materialize(&self) -> GradedModule<K> {
        let k = self.a.field();
        let n = self.a.bound();
        let act = (0..n)
            .map(|deg| {
                (0..self.a.gens())
                    .map(|g| (0..self.dims[deg]).map(|b| self.act(g, deg, &SVec::unit(k, b))).collect())
                    .collect()
            })
            .collect();
        GradedModule::from_action(k, self.a.gens(), self.dims.clone(), act)
    }
}

impl<K: Field> LeftAction<K> for FreeModule<'_, K> {
    fn field(&self) -> &K {
        self.a.field()
    }

    fn bound(&self) -> usize {
        self.a.bound()
    }

    fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    fn act(&self, g: usize, n: usize, v: &SVec<K::Elem>) -> SVec<K::Elem> {
        if n >= self.a.bound() || v.is_zero() {
            return SVec::zero();
        }
        let k = self.a.field();
        let mut acc = Accumulator::new();
        for (e, &deg) in self.gen_degrees.iter().enumerate() {
            if deg > n {
                continue;
            }
            let lo = self.offsets[n][e];
            let hi = lo + self.a.dim(n - deg);
            let block = v.window(lo, hi);
            if block.is_zero() {
                continue;
            }
            let img = self.a.left_gen(g, n - deg, &block).shifted(self.offsets[n + 1][e]);
            acc.add_scaled(k, &k.one(), &img);
        }
        acc.finish(k)
    }
}

/// Left ideal `A * I1` (or two-sided `A * I1 * A`) as a family of subspaces of `A_n`.
pub fn ideal_from_degree_one<K: Field>(a: &GradedAlgebra<K>, i1: &Subspace<K>, two_sided: bool) -> Vec<Subspace<K>> {
    let k = a.field();
    let mut out = vec![Subspace::zero(k, 1)];
    if a.bound() == 0 {
        return out;
    }
    out.push(i1.clone());
    for n in 2..=a.bound() {
        let mut e = Echelon::new(k, a.dim(n));
        for v in out[n - 1].basis() {
            for g in 0..a.gens() {
                e.insert(&a.left_gen(g, n - 1, v));
                if two_sided {
                    e.insert(&a.right_gen(g, n - 1, v));
                }
            }
        }
        out.push(e.into_subspace());
    }
    out
}

/// The augmentation ideal `A_+`.
pub fn augmentation_ideal<K: Field>(a: &GradedAlgebra<K>) -> Vec<Subspace<K>> {
    let k = a.field();
    (0..=a.bound()).map(|n| if n == 0 { Subspace::zero(k, 1) } else { Subspace::full(k, a.dim(n)) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_WORD_CAP;
    use crate::enveloping::build_enveloping;
    use crate::field::{FieldSpec, Rationals};
    use crate::presentation::LiePresentation;

    fn poly2() -> GradedAlgebra<Rationals> {
        build_enveloping(&Rationals, &LiePresentation::abelian(FieldSpec::Rational, 2, 4), DEFAULT_WORD_CAP).unwrap()
    }

    #[test]
    fn regular_and_trivial_are_valid() {
        let a = poly2();
        GradedModule::regular(&a).validate(&a).unwrap();
        GradedModule::trivial(&a).validate(&a).unwrap();
    }

    #[test]
    fn quotient_by_ideal() {
        let a = poly2();
        let k = Rationals;
        let x = Subspace::from_vectors(&k, 2, [SVec::unit(&k, 0)].iter());
        let ideal = ideal_from_degree_one(&a, &x, false);
        assert_eq!(ideal.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        let (q, proj) = GradedModule::regular(&a).quotient(&ideal).unwrap();
        assert_eq!(q.dims(), &[1, 1, 1, 1, 1]);
        q.validate(&a).unwrap();
        assert!(proj.commutes_with_action(&GradedModule::regular(&a), &q));
    }

    #[test]
    fn bad_action_is_rejected() {
        let a = poly2();
        let k = Rationals;
        // k[x,y] acting on a 2-dim module with x, y non-commuting
        let act = vec![
            vec![vec![SVec::unit(&k, 0)], vec![SVec::zero()]],
            vec![vec![SVec::unit(&k, 0)], vec![SVec::zero()]],
            vec![vec![SVec::zero()], vec![SVec::unit(&k, 0)]],
            vec![vec![]; 2],
        ];
        let m = GradedModule::from_action(&k, 2, vec![1, 1, 1, 0, 0], act);
        assert!(m.validate(&a).is_err());
    }

    #[test]
    fn free_module_layout() {
        let a = poly2();
        let f = FreeModule::new(&a, vec![0, 1, 1]);
        assert_eq!(f.dims(), &[1, 4, 7, 10, 13]);
        assert_eq!(f.locate(2, 3), (1, 0));
        assert_eq!(f.locate(2, 6), (2, 1));
        f.materialize().validate(&a).unwrap();
        let shifted = GradedModule::regular(&a).shift_up(1);
        assert_eq!(shifted.dims(), &[0, 1, 2, 3, 4]);
        shifted.validate(&a).unwrap();
    }
}
