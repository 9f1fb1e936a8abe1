//! Koszul, universally Koszul and Bloch-Kato deciders, all certified only
//! through the truncation bound.

use serde::Serialize;

use super::module::{ideal_from_degree_one, GradedModule};
use super::resolution::{minimal_resolution, BettiEntry, BettiTable};
use crate::algebra::GradedAlgebra;
use crate::enveloping::build_enveloping;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kurosh::{render_vectors, subalgebra_presentation};
use crate::linalg::Subspace;
use crate::presentation::LiePresentation;
use crate::series;
use crate::strategy::{par_map, subspaces, Coverage, Strategy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulCertificate {
    pub bound: usize,
    pub koszul: bool,
    /// First off-diagonal nonzero Betti number.
    pub witness: Option<BettiEntry>,
    pub betti: BettiTable,
}

impl KoszulCertificate {
    pub fn verdict(&self) -> String {
        if self.koszul {
            format!("koszul-up-to-{}", self.bound)
        } else {
            "fails".into()
        }
    }
}

pub fn is_koszul<K: Field>(a: &GradedAlgebra<K>) -> Result<KoszulCertificate> {
    if let Some(degree) = a.one_generated_failure() {
        return Err(Error::NotOneGenerated { degree, count: 0 });
    }
    let betti = minimal_resolution(a, &GradedModule::trivial(a))?;
    if let Some(j) = (2..=a.bound()).find(|&j| betti.get(1, j) != 0) {
        return Err(Error::NotOneGenerated { degree: j, count: betti.get(1, j) });
    }
    let witness = betti.off_diagonal(0);
    Ok(KoszulCertificate { bound: a.bound(), koszul: witness.is_none(), witness, betti })
}

/// Betti table of `A / (I_1)` over `A`. The ideal is two-sided unless `A`
/// is graded-commutative, where the left ideal already is.
pub fn ext_of_quotient<K: Field>(a: &GradedAlgebra<K>, i1: &Subspace<K>) -> Result<BettiTable> {
    if i1.ambient() != a.gens() {
        return Err(Error::AmbientMismatch { left: i1.ambient(), right: a.gens() });
    }
    let ideal = ideal_from_degree_one(a, i1, !a.is_graded_commutative());
    let (m, _) = GradedModule::regular(a).quotient(&ideal)?;
    minimal_resolution(a, &m)
}

/// A failing subspace with the reason it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceWitness {
    pub basis: Vec<Vec<String>>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub bound: usize,
    pub strategy: Strategy,
    pub coverage: Coverage,
    pub tested: usize,
    pub passed: bool,
    pub witness: Option<SubspaceWitness>,
}

impl UniversalReport {
    /// `proved-up-to-N`, `sampled-up-to-N` or `fails`.
    pub fn verdict(&self) -> String {
        match (self.passed, self.coverage) {
            (false, _) => "fails".into(),
            (true, Coverage::Exhaustive) => format!("proved-up-to-{}", self.bound),
            (true, Coverage::Sampled) => format!("sampled-up-to-{}", self.bound),
        }
    }
}

fn first_witness(results: Vec<Result<Option<SubspaceWitness>>>) -> Result<Option<SubspaceWitness>> {
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Every quotient by a degree-1 generated ideal from `strategy` has a linear resolution.
pub fn is_universally_koszul<K: Field>(a: &GradedAlgebra<K>, strategy: Strategy, cap: u128) -> Result<UniversalReport> {
    if let Some(why) = a.graded_commutativity_failure() {
        return Err(Error::NotGradedCommutative(why));
    }
    let k = a.field();
    let cands = subspaces(k, a.gens(), strategy, cap)?;
    let tested = cands.len();
    let results = par_map(cands, |s| {
        let t = ext_of_quotient(a, &s)?;
        Ok(t.off_diagonal(0).map(|e| SubspaceWitness {
            basis: render_vectors(k, a.gens(), s.basis()),
            reason: format!("b[{}][{}] = {}", e.i, e.j, e.b),
        }))
    });
    let witness = first_witness(results)?;
    Ok(UniversalReport {
        bound: a.bound(),
        strategy,
        coverage: strategy.coverage(),
        tested,
        passed: witness.is_none(),
        witness,
    })
}

pub type BlochKatoReport = UniversalReport;

/// Every subalgebra generated by a subspace of `L_1` from `strategy` is Koszul.
pub fn is_bloch_kato<K: Field>(k: &K, p: &LiePresentation, strategy: Strategy, cap: u128) -> Result<BlochKatoReport> {
    let u = build_enveloping(k, p, cap)?;
    let cands = subspaces(k, p.gens(), strategy, cap)?;
    let tested = cands.len();
    let u_ref = &u;
    let results = par_map(cands, |s| -> Result<Option<SubspaceWitness>> {
        if s.is_zero() {
            return Ok(None);
        }
        let witness = |reason: String| SubspaceWitness { basis: render_vectors(k, p.gens(), s.basis()), reason };
        let (sub, report) = subalgebra_presentation(u_ref, &s, cap)?;
        if let Some(n) = report.relation_counts.iter().enumerate().position(|(n, &c)| c > 0 && n != 2) {
            return Ok(Some(witness(format!("minimal relation in degree {n}"))));
        }
        let cert = is_koszul(&build_enveloping(k, &sub, cap)?)?;
        Ok(cert.witness.map(|e| witness(format!("b[{}][{}] = {}", e.i, e.j, e.b))))
    });
    let witness = first_witness(results)?;
    Ok(UniversalReport {
        bound: p.truncation,
        strategy,
        coverage: strategy.coverage(),
        tested,
        passed: witness.is_none(),
        witness,
    })
}

pub fn hilbert_series<K: Field>(a: &GradedAlgebra<K>) -> Vec<usize> {
    a.dims().to_vec()
}

/// First degree `n >= 1` where `h_A(t) h_{A^!}(-t)` has a nonzero coefficient.
/// Necessary for Koszulity, never sufficient.
pub fn koszul_series_check(h: &[usize], h_dual: &[usize]) -> Option<usize> {
    let n = h.len().min(h_dual.len()).saturating_sub(1);
    series::koszul_series_failure(h, h_dual, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_WORD_CAP;
    use crate::field::{FieldSpec, PrimeField, Rationals};
    use crate::lie::TensorPoly;
    use crate::linalg::SVec;
    use crate::presentation::parse_presentation;

    const Q: FieldSpec = FieldSpec::Rational;

    fn env<K: Field>(k: &K, p: &LiePresentation) -> GradedAlgebra<K> {
        build_enveloping(k, p, DEFAULT_WORD_CAP).unwrap()
    }

    /// `F (+) V` with `V_+^2 = 0` on `d` generators.
    fn square_zero<K: Field>(k: &K, d: usize, bound: usize) -> GradedAlgebra<K> {
        let names = crate::presentation::numbered("v", d);
        let rels: Vec<TensorPoly<K::Elem>> =
            (0..d * d).map(|i| TensorPoly { gens: d, degree: 2, coeffs: SVec::unit(k, i) }).collect();
        GradedAlgebra::tensor_quotient(k, names, &rels, bound, DEFAULT_WORD_CAP).unwrap()
    }

    #[test]
    fn koszul_fixtures() {
        let k = Rationals;
        let free = is_koszul(&env(&k, &LiePresentation::free(Q, 2, 6))).unwrap();
        assert!(free.koszul);
        assert_eq!(free.verdict(), "koszul-up-to-6");
        let cubic = parse_presentation("generators x,y; relations [x,[x,y]]; truncation 5;").unwrap();
        let c = is_koszul(&env(&k, &cubic)).unwrap();
        assert!(!c.koszul);
        assert_eq!(c.witness, Some(BettiEntry { i: 2, j: 3, b: 1 }));
    }

    #[test]
    fn quotients() {
        let k = Rationals;
        let a = env(&k, &LiePresentation::abelian(Q, 2, 4));
        let zero = ext_of_quotient(&a, &Subspace::zero(&k, 2)).unwrap();
        assert_eq!(zero.entries().len(), 1);
        let all = ext_of_quotient(&a, &Subspace::full(&k, 2)).unwrap();
        assert_eq!(all, minimal_resolution(&a, &GradedModule::trivial(&a)).unwrap());
        let c = square_zero(&k, 2, 4);
        let line = ext_of_quotient(&c, &Subspace::coordinate(&k, 2, &[0])).unwrap();
        assert!(line.is_linear());
        // A/(v1) is F + F v2, resolved by A <- A(-1) <- A(-2)^2 <- ...
        assert_eq!(line.diagonal(), vec![1, 1, 2, 4, 8]);
    }

    #[test]
    fn universal_koszul_small() {
        let f2 = PrimeField::new(2).unwrap();
        let c = square_zero(&f2, 2, 4);
        let r = is_universally_koszul(&c, Strategy::Exhaustive, 1000).unwrap();
        assert!(r.passed);
        assert_eq!(r.tested, 5);
        assert_eq!(r.verdict(), "proved-up-to-4");
        let t = GradedAlgebra::trivial(&f2, 4);
        assert!(is_universally_koszul(&t, Strategy::Exhaustive, 1000).unwrap().passed);
        let free = env(&f2, &LiePresentation::free(FieldSpec::Prime(2), 2, 3));
        assert!(matches!(
            is_universally_koszul(&free, Strategy::Exhaustive, 1000),
            Err(Error::NotGradedCommutative(_))
        ));
    }

    #[test]
    fn bloch_kato_fixtures() {
        let f2 = PrimeField::new(2).unwrap();
        let fq = FieldSpec::Prime(2);
        for p in [LiePresentation::abelian(fq, 2, 5), LiePresentation::free(fq, 2, 5)] {
            let r = is_bloch_kato(&f2, &p, Strategy::Exhaustive, 1000).unwrap();
            assert!(r.passed, "{}", p.name);
            assert_eq!(r.coverage, Coverage::Exhaustive);
        }
        let cubic =
            parse_presentation("field = F2\nalgebra C { generators = x,y; relations = [x,[x,y]]; truncation = 4; }")
                .unwrap();
        let r = is_bloch_kato(&f2, &cubic, Strategy::Exhaustive, 1000).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness.unwrap().reason, "minimal relation in degree 3");
    }

    #[test]
    fn series_check() {
        assert_eq!(koszul_series_check(&[1, 2, 4, 8, 16], &[1, 2, 0, 0, 0]), None);
        assert_eq!(koszul_series_check(&[1, 2, 3, 4, 5], &[1, 2, 1, 0, 0]), None);
        assert_eq!(koszul_series_check(&[1, 2, 3, 4], &[1, 2, 0, 0]), Some(2));
    }
}
