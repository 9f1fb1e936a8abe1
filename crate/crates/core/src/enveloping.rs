//! Universal enveloping algebras of presented Lie algebras, their Lie
//! components, and the PBW dimension check.

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, SVec, Subspace};
use crate::presentation::LiePresentation;
use crate::series;

/// Enveloping algebra of `p` through degree `p.truncation`.
///
/// The relations are expanded to tensors; in characteristic 2 the
/// alternating law `[u,u] = 0` holds automatically for commutators in the
/// associative algebra, so no extra relations are needed.
pub fn build_enveloping<K: Field>(k: &K, p: &LiePresentation, cap: u128) -> Result<GradedAlgebra<K>> {
    if k.spec() != p.field {
        return Err(Error::Incompatible);
    }
    let d = p.gens();
    let rels = p
        .relations
        .iter()
        .map(|r| r.expand(k, d).ok_or_else(|| Error::BadCoefficient(r.render(&p.generators))))
        .collect::<Result<Vec<_>>>()?;
    GradedAlgebra::tensor_quotient(k, p.generators.clone(), &rels, p.truncation, cap)
}

/// One subspace per degree `0..=N` of a graded algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSubspaceFamily<K: Field> {
    pub components: Vec<Subspace<K>>,
    /// Set when the family was built as a Lie subalgebra under commutators.
    pub lie: bool,
}

impl<K: Field> GradedSubspaceFamily<K> {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    pub fn bound(&self) -> usize {
        self.components.len() - 1
    }

    pub fn get(&self, n: usize) -> &Subspace<K> {
        &self.components[n]
    }

    /// Checks `[F_i, F_j] <= F_{i+j}` on basis pairs.
    pub fn bracket_closed(&self, a: &GradedAlgebra<K>) -> bool {
        let n = self.bound();
        for i in 1..=n {
            for j in i..=n - i {
                for u in self.components[i].basis() {
                    for v in self.components[j].basis() {
                        if !self.components[i + j].contains(&a.commutator(i, u, j, v)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The Lie subalgebra of `a` generated by the degree-1 subspace `s`:
/// `M_1 = S` and `M_n = [S, M_{n-1}]`, which equals `sum_k [M_k, M_{n-k}]` by Jacobi.
pub fn generated_lie_family<K: Field>(a: &GradedAlgebra<K>, s: &Subspace<K>) -> GradedSubspaceFamily<K> {
    let k = a.field();
    let n = a.bound();
    let mut components = vec![Subspace::zero(k, 1)];
    if n >= 1 {
        components.push(s.clone());
    }
    for deg in 2..=n {
        let prev = &components[deg - 1];
        let mut e = Echelon::new(k, a.dim(deg));
        for x in s.basis() {
            for v in prev.basis() {
                e.insert(&a.bracket_deg1(x, deg - 1, v));
            }
        }
        components.push(e.into_subspace());
    }
    GradedSubspaceFamily { components, lie: true }
}

/// The graded Lie algebra inside its enveloping algebra, generated by `A_1`.
pub fn lie_components<K: Field>(a: &GradedAlgebra<K>) -> GradedSubspaceFamily<K> {
    let full = Subspace::full(a.field(), a.gens());
    generated_lie_family(a, &full)
}

/// Same family computed from all splittings `sum_{k<n} [L_k, L_{n-k}]`.
pub fn lie_components_all_splittings<K: Field>(a: &GradedAlgebra<K>) -> GradedSubspaceFamily<K> {
    let k = a.field();
    let n = a.bound();
    let mut components = vec![Subspace::zero(k, 1)];
    if n >= 1 {
        components.push(Subspace::full(k, a.gens()));
    }
    for deg in 2..=n {
        let mut e = Echelon::new(k, a.dim(deg));
        for i in 1..deg {
            for u in components[i].basis() {
                for v in components[deg - i].basis() {
                    e.insert(&a.commutator(i, u, deg - i, v));
                }
            }
        }
        components.push(e.into_subspace());
    }
    GradedSubspaceFamily { components, lie: true }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwReport {
    pub algebra_dims: Vec<usize>,
    pub lie_dims: Vec<usize>,
    pub predicted: Vec<i128>,
    pub first_failure: Option<usize>,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Compares `dim A_n` with the coefficients of `prod_m (1 - t^m)^{-l_m}`.
pub fn pbw_hilbert_check<K: Field>(a: &GradedAlgebra<K>) -> PbwReport {
    let lie_dims = lie_components(a).dims();
    pbw_report(a.dims(), &lie_dims)
}

pub fn pbw_report(algebra_dims: &[usize], lie_dims: &[usize]) -> PbwReport {
    let n = algebra_dims.len() - 1;
    let predicted = series::pbw_product(lie_dims, n);
    let first_failure = (0..=n).find(|&i| predicted[i] != algebra_dims[i] as i128);
    PbwReport { algebra_dims: algebra_dims.to_vec(), lie_dims: lie_dims.to_vec(), predicted, first_failure }
}

/// Jacobi and antisymmetry on all basis triples of the Lie components.
pub fn lie_identities_hold<K: Field>(a: &GradedAlgebra<K>, fam: &GradedSubspaceFamily<K>) -> bool {
    let k = a.field();
    let n = a.bound();
    let basis: Vec<(usize, &SVec<K::Elem>)> =
        (1..=n).flat_map(|d| fam.components[d].basis().iter().map(move |v| (d, v))).collect();
    for &(i, u) in &basis {
        for &(j, v) in &basis {
            if i + j > n {
                continue;
            }
            if !a.commutator(i, u, j, v).add(k, &a.commutator(j, v, i, u)).is_zero() {
                return false;
            }
            for &(l, w) in &basis {
                if i + j + l > n {
                    continue;
                }
                let uv = a.commutator(i, u, j, v);
                let vw = a.commutator(j, v, l, w);
                let wu = a.commutator(l, w, i, u);
                let s = a
                    .commutator(i + j, &uv, l, w)
                    .add(k, &a.commutator(j + l, &vw, i, u))
                    .add(k, &a.commutator(l + i, &wu, j, v));
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_WORD_CAP;
    use crate::field::{FieldSpec, PrimeField, Rationals};
    use crate::lie::necklace_count;

    fn env(p: &LiePresentation) -> GradedAlgebra<Rationals> {
        build_enveloping(&Rationals, p, DEFAULT_WORD_CAP).unwrap()
    }

    #[test]
    fn enveloping_dims() {
        let q = FieldSpec::Rational;
        assert_eq!(env(&LiePresentation::free(q, 2, 3)).dims(), &[1, 2, 4, 8]);
        assert_eq!(env(&LiePresentation::abelian(q, 2, 3)).dims(), &[1, 2, 3, 4]);
        assert_eq!(env(&LiePresentation::one_relator(q, 2, 3)).dims(), &[1, 4, 15, 56]);
    }

    #[test]
    fn lie_component_dims() {
        let q = FieldSpec::Rational;
        let free = env(&LiePresentation::free(q, 2, 5));
        let dims = lie_components(&free).dims();
        assert_eq!(&dims[1..], &[2, 1, 2, 3, 6]);
        for n in 1..=5 {
            assert_eq!(dims[n], necklace_count(2, n));
        }
        let ab = env(&LiePresentation::abelian(q, 2, 4));
        assert_eq!(&lie_components(&ab).dims()[1..], &[2, 0, 0, 0]);
        let one = env(&LiePresentation::one_relator(q, 1, 3));
        assert_eq!(&lie_components(&one).dims()[1..], &[2, 0, 0]);
    }

    #[test]
    fn splitting_forms_agree() {
        let a = env(&LiePresentation::one_relator(FieldSpec::Rational, 2, 4));
        let fam = lie_components(&a);
        assert_eq!(fam, lie_components_all_splittings(&a));
        assert!(fam.bracket_closed(&a));
        assert!(lie_identities_hold(&a, &fam));
    }

    #[test]
    fn pbw_passes_on_fixtures() {
        let q = FieldSpec::Rational;
        for p in
            [LiePresentation::free(q, 2, 5), LiePresentation::abelian(q, 3, 4), LiePresentation::one_relator(q, 2, 4)]
        {
            assert!(pbw_hilbert_check(&env(&p)).passed(), "{}", p.name);
        }
        let f2 = PrimeField::new(2).unwrap();
        let p = LiePresentation::one_relator(FieldSpec::Prime(2), 1, 5);
        let a = build_enveloping(&f2, &p, DEFAULT_WORD_CAP).unwrap();
        assert!(pbw_hilbert_check(&a).passed());
    }

    #[test]
    fn corrupted_table_fails_at_its_degree() {
        let mut a = env(&LiePresentation::free(FieldSpec::Rational, 2, 4));
        // make x*y equal y*x, so the degree-2 bracket dies
        let yx = a.mul_basis(1, 1, 1, 0);
        a.corrupt_left_action(1, 0, 1, yx);
        let report = pbw_hilbert_check(&a);
        assert_eq!(report.first_failure, Some(2));
    }

    #[test]
    fn adding_relations_never_grows() {
        let q = FieldSpec::Rational;
        let free = env(&LiePresentation::free(q, 2, 4));
        let one = env(&LiePresentation::one_relator(q, 1, 4));
        for n in 0..=4 {
            assert!(one.dim(n) <= free.dim(n));
        }
    }
}
