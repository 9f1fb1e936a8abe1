//! Free products of presented Lie algebras and of connected algebras,
//! induced modules, and the Mayer-Vietoris exactness check.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::enveloping::build_enveloping;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::module::{ideal_from_degree_one, GradedModule, ModuleMap};
use crate::homology::{minimal_resolution, BettiTable};
use crate::lie::LieExpr;
use crate::linalg::{Accumulator, Echelon, SVec, Subspace};
use crate::presentation::LiePresentation;
use crate::series;

/// Concatenated generator names; on any clash every name gets an `A_`/`B_` prefix.
pub fn disjoint_names(a: &[String], b: &[String]) -> Vec<String> {
    if a.iter().any(|g| b.contains(g)) {
        a.iter().map(|g| format!("A_{g}")).chain(b.iter().map(|g| format!("B_{g}"))).collect()
    } else {
        a.iter().chain(b).cloned().collect()
    }
}

/// Disjoint union of generators and relations. Clashing names get `A_`/`B_` prefixes.
pub fn free_product_lie(p: &LiePresentation, q: &LiePresentation) -> Result<LiePresentation> {
    if p.field != q.field || p.truncation != q.truncation {
        return Err(Error::Incompatible);
    }
    let gens = disjoint_names(&p.generators, &q.generators);
    let shift = p.gens();
    let mut rels = p.relations.clone();
    rels.extend(q.relations.iter().map(|r: &LieExpr| r.relabel(&|i| i + shift)));
    LiePresentation::new(format!("{}_{}", p.name, q.name), p.field, gens, rels, p.truncation)
}

/// Free product of two connected algebras. Basis: alternating concatenations
/// of basis words of the factors; letters of `B` are numbered after those of `A`.
#[derive(Clone, Debug)]
pub struct FreeProductAlgebra<K: Field> {
    pub algebra: GradedAlgebra<K>,
    pub left_gens: usize,
}

impl<K: Field> FreeProductAlgebra<K> {
    /// Basis indices in degree `n` whose letters all come from the first factor.
    pub fn pure_left(&self, n: usize) -> Vec<usize> {
        (0..self.algebra.dim(n)).filter(|&b| self.algebra.word(n, b).iter().all(|&g| g < self.left_gens)).collect()
    }

    pub fn pure_right(&self, n: usize) -> Vec<usize> {
        (0..self.algebra.dim(n)).filter(|&b| self.algebra.word(n, b).iter().all(|&g| g >= self.left_gens)).collect()
    }
}

pub fn free_product_algebra<K: Field>(a: &GradedAlgebra<K>, b: &GradedAlgebra<K>) -> Result<FreeProductAlgebra<K>> {
    if a.field().spec() != b.field().spec() {
        return Err(Error::Incompatible);
    }
    let k = a.field();
    let n = a.bound().min(b.bound());
    let da = a.gens();
    let factor_words = |alg: &GradedAlgebra<K>, shift: usize| -> Vec<Vec<Vec<usize>>> {
        (0..=n).map(|m| alg.words(m).iter().map(|w| w.iter().map(|g| g + shift).collect()).collect()).collect()
    };
    let wa = factor_words(a, 0);
    let wb = factor_words(b, da);
    // starts[0][m]: words starting with an A-letter, starts[1][m]: with a B-letter
    let mut starts: [Vec<Vec<Vec<usize>>>; 2] = [vec![vec![]; n + 1], vec![vec![]; n + 1]];
    for m in 1..=n {
        for side in 0..2 {
            let own = if side == 0 { &wa } else { &wb };
            let mut list = Vec::new();
            for len in 1..=m {
                for w in &own[len] {
                    if len == m {
                        list.push(w.clone());
                    } else {
                        for t in &starts[1 - side][m - len] {
                            let mut x = w.clone();
                            x.extend_from_slice(t);
                            list.push(x);
                        }
                    }
                }
            }
            starts[side][m] = list;
        }
    }
    let mut words: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for m in 1..=n {
        let mut all: Vec<Vec<usize>> = starts[0][m].iter().chain(&starts[1][m]).cloned().collect();
        all.sort();
        words.push(all);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        words.iter().map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()).collect();
    let factor_index = |alg: &GradedAlgebra<K>| -> Vec<HashMap<Vec<usize>, usize>> {
        (0..=n).map(|m| alg.words(m).iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()).collect()
    };
    let ia = factor_index(a);
    let ib = factor_index(b);
    let gens = da + b.gens();
    let mut left = Vec::with_capacity(n);
    for m in 0..n {
        let mut per_gen = Vec::with_capacity(gens);
        for g in 0..gens {
            let (alg, fidx, local, lo, hi) = if g < da { (a, &ia, g, 0, da) } else { (b, &ib, g - da, da, gens) };
            let col: Vec<SVec<K::Elem>> = words[m]
                .iter()
                .map(|w| {
                    let plen = w.iter().take_while(|&&x| x >= lo && x < hi).count();
                    let (prefix, rest) = w.split_at(plen);
                    let local_prefix: Vec<usize> = prefix.iter().map(|x| x - lo).collect();
                    let pi = fidx[plen][&local_prefix];
                    let prod = alg.left_gen(local, plen, &SVec::unit(k, pi));
                    let mut acc = Accumulator::new();
                    for (c, x) in prod.iter() {
                        let mut nw: Vec<usize> = alg.word(plen + 1, *c).iter().map(|y| y + lo).collect();
                        nw.extend_from_slice(rest);
                        acc.push(index[m + 1][&nw], x.clone());
                    }
                    acc.finish(k)
                })
                .collect();
            per_gen.push(col);
        }
        left.push(per_gen);
    }
    let names = disjoint_names(a.gen_names(), b.gen_names());
    let algebra = GradedAlgebra::from_left_action(k, n, names, words, left);
    Ok(FreeProductAlgebra { algebra, left_gens: da })
}

/// `U(L) / U(L) H_1`, the module induced from the trivial module of the
/// subalgebra generated by `h1`, with its quotient map from `U(L)`.
pub fn induced_module<K: Field>(u: &GradedAlgebra<K>, h1: &Subspace<K>) -> Result<(GradedModule<K>, ModuleMap<K>)> {
    if h1.ambient() != u.gens() {
        return Err(Error::AmbientMismatch { left: h1.ambient(), right: u.gens() });
    }
    let ideal = ideal_from_degree_one(u, h1, false);
    GradedModule::regular(u).quotient(&ideal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvDegree {
    pub n: usize,
    pub dim_u: usize,
    pub dim_ind_a: usize,
    pub dim_ind_b: usize,
    pub rank: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvReport {
    pub per_degree: Vec<MvDegree>,
    pub first_failure: Option<usize>,
}

impl MvReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks that `0 -> U(L) -> ind_A k (+) ind_B k -> k -> 0` is exact in every degree.
pub fn mayer_vietoris_check<K: Field>(u: &GradedAlgebra<K>, a1: &Subspace<K>, b1: &Subspace<K>) -> Result<MvReport> {
    let k = u.field();
    let (_, pa) = induced_module(u, a1)?;
    let (_, pb) = induced_module(u, b1)?;
    let mut per_degree = Vec::new();
    for n in 0..=u.bound() {
        let da = pa.target_dims[n];
        let db = pb.target_dims[n];
        let images: Vec<SVec<K::Elem>> =
            (0..u.dim(n)).map(|b| pa.images[n][b].add(k, &pb.images[n][b].shifted(da))).collect();
        let mut e = Echelon::new(k, da + db);
        for v in &images {
            e.insert(v);
        }
        let rank = e.rank();
        // the augmentation difference is only nonzero in degree 0
        let (eps_rank, composite_zero) = if n == 0 {
            let eps = |v: &SVec<K::Elem>| k.sub(v.get(0).unwrap_or(&k.zero()), v.get(da).unwrap_or(&k.zero()));
            (1, images.iter().all(|v| k.is_zero(&eps(v))))
        } else {
            (0, true)
        };
        let kernel_dim = da + db - eps_rank;
        let passed = composite_zero && rank == u.dim(n) && rank == kernel_dim;
        per_degree.push(MvDegree { n, dim_u: u.dim(n), dim_ind_a: da, dim_ind_b: db, rank, passed });
    }
    let first_failure = per_degree.iter().find(|d| !d.passed).map(|d| d.n);
    Ok(MvReport { per_degree, first_failure })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologySumReport {
    pub product: BettiTable,
    pub expected: BettiTable,
    pub passed: bool,
}

/// Betti table of the free product against the entrywise sum of the factor
/// tables in positive homological degree.
pub fn cohomology_sum_check<K: Field>(
    k: &K,
    p: &LiePresentation,
    q: &LiePresentation,
    cap: u128,
) -> Result<CohomologySumReport> {
    let table = |x: &LiePresentation| -> Result<BettiTable> {
        let a = build_enveloping(k, x, cap)?;
        minimal_resolution(&a, &GradedModule::trivial(&a))
    };
    let fp = free_product_lie(p, q)?;
    let product = table(&fp)?;
    let mut expected = table(p)?.add(&table(q)?);
    expected.set(0, 0, 1);
    let passed = product == expected;
    Ok(CohomologySumReport { product, expected, passed })
}

/// First degree where `1/h_F = 1/h_A + 1/h_B - 1` fails.
pub fn hilbert_identity_failure(f: &[usize], a: &[usize], b: &[usize]) -> Option<usize> {
    let n = f.len().min(a.len()).min(b.len()) - 1;
    series::free_product_failure(f, a, b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_WORD_CAP;
    use crate::field::{FieldSpec, PrimeField, Rationals};

    const Q: FieldSpec = FieldSpec::Rational;

    fn env(p: &LiePresentation) -> GradedAlgebra<Rationals> {
        build_enveloping(&Rationals, p, DEFAULT_WORD_CAP).unwrap()
    }

    #[test]
    fn lie_free_products() {
        let ab1 = LiePresentation::abelian(Q, 1, 4);
        let fp = free_product_lie(&ab1, &ab1).unwrap();
        assert_eq!(fp.generators, vec!["A_a1", "B_a1"]);
        assert!(fp.relations.is_empty());
        let f = free_product_lie(&LiePresentation::one_relator(Q, 1, 4), &LiePresentation::abelian(Q, 2, 4)).unwrap();
        assert_eq!(f.gens(), 4);
        assert_eq!(f.relations.len(), 2);
        assert_eq!(f.relations[1].render(&f.generators), "[a1,a2]");
        let bad = free_product_lie(&ab1, &LiePresentation::abelian(Q, 1, 5));
        assert_eq!(bad.unwrap_err(), Error::Incompatible);
    }

    #[test]
    fn algebra_free_product_matches_lie_side() {
        let p = LiePresentation::one_relator(Q, 1, 4);
        let q = LiePresentation::abelian(Q, 2, 4);
        let fa = free_product_algebra(&env(&p), &env(&q)).unwrap();
        let direct = env(&free_product_lie(&p, &q).unwrap());
        assert_eq!(fa.algebra.dims(), direct.dims());
        assert!(fa.algebra.check_associativity().is_none());
        // degree-2 formula
        let (a, b) = (env(&p), env(&q));
        assert_eq!(fa.algebra.dim(2), a.dim(2) + 2 * a.dim(1) * b.dim(1) + b.dim(2));
        assert_eq!(hilbert_identity_failure(fa.algebra.dims(), a.dims(), b.dims()), None);
        assert_eq!(fa.pure_left(2).len(), a.dim(2));
    }

    #[test]
    fn trivial_factor_is_neutral() {
        let b = env(&LiePresentation::abelian(Q, 2, 4));
        let t = GradedAlgebra::trivial(&Rationals, 4);
        let fa = free_product_algebra(&t, &b).unwrap();
        assert_eq!(fa.algebra.dims(), b.dims());
    }

    #[test]
    fn induced_module_dims() {
        let k = Rationals;
        let u = env(&free_product_lie(&LiePresentation::abelian(Q, 1, 4), &LiePresentation::abelian(Q, 2, 4)).unwrap());
        let (all, _) = induced_module(&u, &Subspace::full(&k, 3)).unwrap();
        assert_eq!(all.dims(), &[1, 0, 0, 0, 0]);
        let (none, _) = induced_module(&u, &Subspace::zero(&k, 3)).unwrap();
        assert_eq!(none.dims(), u.dims());
        // ind from the first factor: words not ending in its letter
        let fa =
            free_product_algebra(&env(&LiePresentation::abelian(Q, 1, 4)), &env(&LiePresentation::abelian(Q, 2, 4)))
                .unwrap();
        let (ind, _) = induced_module(&u, &Subspace::coordinate(&k, 3, &[0])).unwrap();
        for n in 0..=4 {
            let count =
                (0..fa.algebra.dim(n)).filter(|&b| fa.algebra.word(n, b).last().is_none_or(|&g| g != 0)).count();
            assert_eq!(ind.dims()[n], count);
        }
    }

    #[test]
    fn mayer_vietoris() {
        let k = Rationals;
        let free = env(&LiePresentation::free(Q, 2, 5));
        let x = Subspace::coordinate(&k, 2, &[0]);
        let y = Subspace::coordinate(&k, 2, &[1]);
        assert!(mayer_vietoris_check(&free, &x, &y).unwrap().passed());
        let ab = env(&LiePresentation::abelian(Q, 2, 5));
        assert_eq!(mayer_vietoris_check(&ab, &x, &y).unwrap().first_failure, Some(2));
    }

    #[test]
    fn cohomology_of_free_products() {
        let f2 = PrimeField::new(2).unwrap();
        let fq = FieldSpec::Prime(2);
        let r = cohomology_sum_check(
            &f2,
            &LiePresentation::free(fq, 1, 4),
            &LiePresentation::free(fq, 1, 4),
            DEFAULT_WORD_CAP,
        )
        .unwrap();
        assert!(r.passed);
        assert_eq!(r.product.get(1, 1), 2);
        let r = cohomology_sum_check(
            &Rationals,
            &LiePresentation::one_relator(Q, 2, 4),
            &LiePresentation::abelian(Q, 2, 4),
            DEFAULT_WORD_CAP,
        )
        .unwrap();
        assert!(r.passed);
        assert_eq!((r.product.get(1, 1), r.product.get(2, 2)), (6, 2));
    }
}
