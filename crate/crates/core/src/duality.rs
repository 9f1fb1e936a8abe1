//! Quadratic data, quadratic duals of algebras and modules, skew extensions,
//! direct sums, and the passage between quadratic Lie algebras and quadratic
//! graded-commutative algebras.
//!
//! Tensors in `V (x) V` use the index `i * d + j` for `v_i (x) v_j`. Dual
//! spaces carry the dual basis under the same names, so the pairing is the
//! standard dot product of coordinate vectors.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::module::{FreeModule, GradedModule};
use crate::lie::{Bracket, LieExpr, TensorPoly};
use crate::linalg::{left_kernel, SVec, Subspace};
use crate::presentation::LiePresentation;
use crate::products::disjoint_names;

/// `Q(V, W) = T(V) / (W)` with `W <= V (x) V`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticData<K: Field> {
    pub names: Vec<String>,
    pub relations: Subspace<K>,
}

impl<K: Field> QuadraticData<K> {
    pub fn new(names: Vec<String>, relations: Subspace<K>) -> Result<Self> {
        let d = names.len();
        if relations.ambient() != d * d {
            return Err(Error::AmbientMismatch { left: relations.ambient(), right: d * d });
        }
        Ok(QuadraticData { names, relations })
    }

    pub fn field(&self) -> &K {
        self.relations.field()
    }

    pub fn gens(&self) -> usize {
        self.names.len()
    }

    /// Relations of `A` in degree 2: the kernel of `V (x) V -> A_2`.
    pub fn from_algebra(a: &GradedAlgebra<K>) -> Result<Self> {
        if a.bound() < 2 {
            return Err(Error::Incompatible);
        }
        let k = a.field();
        let d = a.gens();
        let images: Vec<SVec<K::Elem>> = (0..d * d).map(|t| a.left_gen(t / d, 1, &SVec::unit(k, t % d))).collect();
        Self::new(a.gen_names().to_vec(), left_kernel(k, a.dim(2), &images))
    }

    /// `Q(V*, W^perp)`.
    pub fn dual(&self) -> Self {
        QuadraticData { names: self.names.clone(), relations: self.relations.perp() }
    }

    pub fn algebra(&self, bound: usize, cap: u128) -> Result<GradedAlgebra<K>> {
        let d = self.gens();
        let rels: Vec<TensorPoly<K::Elem>> =
            self.relations.basis().iter().map(|v| TensorPoly { gens: d, degree: 2, coeffs: v.clone() }).collect();
        GradedAlgebra::tensor_quotient(self.field(), self.names.clone(), &rels, bound, cap)
    }
}

/// First degree where `A` differs from the quadratic algebra on its degree-2 relations.
pub fn quadratic_failure<K: Field>(a: &GradedAlgebra<K>, cap: u128) -> Result<Option<usize>> {
    let q = QuadraticData::from_algebra(a)?.algebra(a.bound(), cap)?;
    Ok((0..=a.bound()).find(|&n| q.dim(n) != a.dim(n)))
}

/// `Q_A(H, K) = (A (x) H) / A K` with `K <= A_1 (x) H`, index `g * h + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticModuleData<K: Field> {
    pub names: Vec<String>,
    pub relations: Subspace<K>,
}

impl<K: Field> QuadraticModuleData<K> {
    pub fn new(names: Vec<String>, relations: Subspace<K>) -> Self {
        QuadraticModuleData { names, relations }
    }

    /// The module over `a`, whose degree-1 part must match the relation ambient.
    pub fn module(&self, a: &GradedAlgebra<K>) -> Result<GradedModule<K>> {
        let k = a.field();
        let (d, h) = (a.gens(), self.names.len());
        if self.relations.ambient() != d * h {
            return Err(Error::AmbientMismatch { left: self.relations.ambient(), right: d * h });
        }
        let free = FreeModule::new(a, vec![0; h]).materialize();
        // free module layout in degree 1: generator block j, then the letter g
        let to_free: Vec<SVec<K::Elem>> = (0..d * h).map(|t| SVec::unit(k, (t % h) * d + t / h)).collect();
        let mut seeds = vec![Vec::new(); a.bound() + 1];
        if a.bound() >= 1 {
            seeds[1] = self.relations.basis().iter().map(|v| v.map(k, &to_free)).collect();
        }
        let sub = free.generated_submodule(&seeds);
        Ok(free.quotient(&sub)?.0)
    }

    pub fn dual(&self) -> Self {
        QuadraticModuleData { names: self.names.clone(), relations: self.relations.perp() }
    }
}

/// `(A^!, M^!)`.
pub fn quadratic_dual_module<K: Field>(
    m: &QuadraticModuleData<K>,
    q: &QuadraticData<K>,
) -> (QuadraticData<K>, QuadraticModuleData<K>) {
    (q.dual(), m.dual())
}

/// Ordered pairs `p < q` indexing the exterior square.
pub fn exterior_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|p| (p + 1..d).map(move |q| (p, q))).collect()
}

/// `Λ(V) / (Ω)` with `Ω` in exterior-square coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CommQuadraticAlgebra<K: Field> {
    pub names: Vec<String>,
    pub omega: Subspace<K>,
}

impl<K: Field> CommQuadraticAlgebra<K> {
    pub fn new(names: Vec<String>, omega: Subspace<K>) -> Result<Self> {
        let e = exterior_pairs(names.len()).len();
        if omega.ambient() != e {
            return Err(Error::AmbientMismatch { left: omega.ambient(), right: e });
        }
        Ok(CommQuadraticAlgebra { names, omega })
    }

    pub fn exterior(k: &K, names: Vec<String>) -> Self {
        let e = exterior_pairs(names.len()).len();
        CommQuadraticAlgebra { names, omega: Subspace::zero(k, e) }
    }

    /// All of `Λ^2` killed: `F (+) V`.
    pub fn square_zero(k: &K, names: Vec<String>) -> Self {
        let e = exterior_pairs(names.len()).len();
        CommQuadraticAlgebra { names, omega: Subspace::full(k, e) }
    }

    pub fn field(&self) -> &K {
        self.omega.field()
    }

    /// `lift(Ω) (+) span{v_i v_i, v_i v_j + v_j v_i}`.
    pub fn quadratic_data(&self) -> QuadraticData<K> {
        let k = self.field();
        let d = self.names.len();
        let pairs = exterior_pairs(d);
        let lifts: Vec<SVec<K::Elem>> = self
            .omega
            .basis()
            .iter()
            .map(|w| SVec::from_pairs(k, w.iter().map(|(i, c)| (pairs[*i].0 * d + pairs[*i].1, c.clone())).collect()))
            .collect();
        let mut vecs = lifts;
        for p in 0..d {
            vecs.push(SVec::unit(k, p * d + p));
            for q in p + 1..d {
                vecs.push(SVec::from_pairs(k, vec![(p * d + q, k.one()), (q * d + p, k.one())]));
            }
        }
        QuadraticData { names: self.names.clone(), relations: Subspace::from_vectors(k, d * d, vecs.iter()) }
    }

    pub fn algebra(&self, bound: usize, cap: u128) -> Result<GradedAlgebra<K>> {
        self.quadratic_data().algebra(bound, cap)
    }

    /// Reads `Ω` off quadratic data whose relations contain every symmetrizer.
    pub fn from_quadratic(q: &QuadraticData<K>) -> Result<Self> {
        let k = q.field();
        let d = q.gens();
        let sym = Self::exterior(k, q.names.clone()).quadratic_data();
        if !q.relations.contains_subspace(&sym.relations) {
            return Err(Error::NotGradedCommutative("relations miss a symmetrizer".into()));
        }
        let pairs = exterior_pairs(d);
        let images: Vec<SVec<K::Elem>> = (0..d * d)
            .map(|t| {
                let (p, r) = (t / d, t % d);
                match pairs.iter().position(|&x| x == (p.min(r), p.max(r))) {
                    Some(i) if p < r => SVec::unit(k, i),
                    Some(i) => SVec::single(k, i, k.neg(&k.one())),
                    None => SVec::zero(),
                }
            })
            .collect();
        Self::new(q.names.clone(), q.relations.image(&images, pairs.len()))
    }
}

/// `U(L)^!` for quadratic `L`, as `Λ(V*) / (Ω)`.
pub fn lie_to_comm<K: Field>(k: &K, p: &LiePresentation) -> Result<CommQuadraticAlgebra<K>> {
    if k.spec() != p.field {
        return Err(Error::Incompatible);
    }
    if let Some(i) = p.relations.iter().position(|r| r.degree() != Some(2)) {
        return Err(Error::NotQuadratic(i));
    }
    let d = p.gens();
    let tensors = p
        .relations
        .iter()
        .map(|r| r.expand(k, d).map(|t| t.coeffs).ok_or_else(|| Error::BadCoefficient(r.render(&p.generators))))
        .collect::<Result<Vec<_>>>()?;
    let w = QuadraticData::new(p.generators.clone(), Subspace::from_vectors(k, d * d, tensors.iter()))?;
    let c = CommQuadraticAlgebra::from_quadratic(&w.dual())?;
    let check = c.algebra(p.truncation.min(3), u128::MAX)?;
    if let Some(why) = check.graded_commutativity_failure() {
        return Err(Error::Verification(why));
    }
    Ok(c)
}

/// The quadratic Lie algebra whose envelope has `C` as quadratic dual.
///
/// With `Ω` in reduced echelon form, the pivot pair `(p_i, q_i)` of `ω_i`
/// gives `x_i = e_{p_i}`, `y_i = e_{q_i}` with `ω_j(x_i, y_i) = δ_ij`; every
/// other pair `(a, b)` contributes `[e_a, e_b] - Σ ω_i(a, b) [x_i, y_i]`.
pub fn comm_to_lie<K: Field>(c: &CommQuadraticAlgebra<K>, truncation: usize) -> Result<LiePresentation> {
    let k = c.field();
    let d = c.names.len();
    let pairs = exterior_pairs(d);
    let pivots = c.omega.pivots();
    let mut relations = Vec::new();
    for (t, &(a, b)) in pairs.iter().enumerate() {
        if pivots.contains(&t) {
            continue;
        }
        let mut terms = vec![(k.to_rational(&k.one()), Bracket::pair(Bracket::Gen(a), Bracket::Gen(b)))];
        for (w, &piv) in c.omega.basis().iter().zip(pivots) {
            if let Some(x) = w.get(t) {
                let (p, q) = pairs[piv];
                terms.push((k.to_rational(&k.neg(x)), Bracket::pair(Bracket::Gen(p), Bracket::Gen(q))));
            }
        }
        relations.push(LieExpr { terms });
    }
    let lie = LiePresentation::new("dual", k.spec(), c.names.clone(), relations, truncation)?;
    // the relation space must be exactly the annihilator of R
    let tensors: Vec<SVec<K::Elem>> = lie.relations.iter().filter_map(|r| r.expand(k, d)).map(|t| t.coeffs).collect();
    let w = Subspace::from_vectors(k, d * d, tensors.iter());
    if w != c.quadratic_data().relations.perp() {
        return Err(Error::Verification("relation space differs from the annihilator".into()));
    }
    Ok(lie)
}

fn fresh_name(names: &[String], base: &str) -> String {
    let mut s = base.to_string();
    while names.contains(&s) {
        s.push('\'');
    }
    s
}

/// `A[x] = A (+) A x` with `|x| = 1`, `x a = (-1)^{|a|} a x` and `x^2 = 0`.
pub fn skew_extension<K: Field>(a: &GradedAlgebra<K>) -> Result<GradedAlgebra<K>> {
    if let Some(why) = a.graded_commutativity_failure() {
        return Err(Error::NotGradedCommutative(why));
    }
    let k = a.field();
    let d = a.gens();
    let n_max = a.bound();
    let mut names = a.gen_names().to_vec();
    names.push(fresh_name(&names, "x"));
    let words: Vec<Vec<Vec<usize>>> = (0..=n_max)
        .map(|n| {
            let mut ws = a.words(n).to_vec();
            if n >= 1 {
                ws.extend(a.words(n - 1).iter().map(|w| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                }));
            }
            ws
        })
        .collect();
    let left = (0..n_max)
        .map(|n| {
            let (plain, plain_next) = (a.dim(n), a.dim(n + 1));
            (0..=d)
                .map(|g| {
                    (0..words[n].len())
                        .map(|b| {
                            let tail = b >= plain;
                            match (g == d, tail) {
                                (false, false) => a.left_gen(g, n, &SVec::unit(k, b)),
                                (false, true) => a.left_gen(g, n - 1, &SVec::unit(k, b - plain)).shifted(plain_next),
                                (true, false) => SVec::single(k, plain_next + b, k.sign(n)),
                                (true, true) => SVec::zero(),
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(GradedAlgebra::from_left_action(k, n_max, names, words, left))
}

/// `A ⊓ B`: `A_n (+) B_n` in positive degrees, cross products zero.
pub fn direct_sum<K: Field>(a: &GradedAlgebra<K>, b: &GradedAlgebra<K>) -> Result<GradedAlgebra<K>> {
    if a.field().spec() != b.field().spec() {
        return Err(Error::Incompatible);
    }
    let k = a.field();
    let n_max = a.bound().min(b.bound());
    let da = a.gens();
    let words: Vec<Vec<Vec<usize>>> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                return vec![vec![]];
            }
            let mut ws = a.words(n).to_vec();
            ws.extend(b.words(n).iter().map(|w| w.iter().map(|g| g + da).collect()));
            ws
        })
        .collect();
    let left = (0..n_max)
        .map(|n| {
            (0..da + b.gens())
                .map(|g| {
                    (0..words[n].len())
                        .map(|t| {
                            if n == 0 {
                                return SVec::unit(k, g);
                            }
                            match (g < da, t < a.dim(n)) {
                                (true, true) => a.left_gen(g, n, &SVec::unit(k, t)),
                                (false, false) => {
                                    b.left_gen(g - da, n, &SVec::unit(k, t - a.dim(n))).shifted(a.dim(n + 1))
                                }
                                _ => SVec::zero(),
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let names = disjoint_names(a.gen_names(), b.gen_names());
    Ok(GradedAlgebra::from_left_action(k, n_max, names, words, left))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_WORD_CAP;
    use crate::enveloping::build_enveloping;
    use crate::field::{FieldSpec, PrimeField, Rationals};
    use crate::homology::{is_koszul, minimal_resolution};
    use crate::presentation::numbered;
    use crate::series;

    const Q: FieldSpec = FieldSpec::Rational;
    const CAP: u128 = DEFAULT_WORD_CAP;

    fn env<K: Field>(k: &K, p: &LiePresentation) -> GradedAlgebra<K> {
        build_enveloping(k, p, CAP).unwrap()
    }

    #[test]
    fn duals_of_free_and_polynomial() {
        let k = Rationals;
        let free = QuadraticData::from_algebra(&env(&k, &LiePresentation::free(Q, 3, 4))).unwrap();
        assert!(free.relations.is_zero());
        assert_eq!(free.dual().algebra(4, CAP).unwrap().dims(), &[1, 3, 0, 0, 0]);
        let poly = QuadraticData::from_algebra(&env(&k, &LiePresentation::abelian(Q, 2, 4))).unwrap();
        assert_eq!(poly.dual().algebra(3, CAP).unwrap().dims(), &[1, 2, 1, 0]);
        assert_eq!(poly.dual().dual(), poly);
        assert_eq!(poly.relations.dim() + poly.dual().relations.dim(), 4);
    }

    #[test]
    fn module_dual_matches_diagonal_ext() {
        let k = Rationals;
        let a = env(&k, &LiePresentation::abelian(Q, 2, 4));
        let q = QuadraticData::from_algebra(&a).unwrap();
        // M = A / A x1
        let m = QuadraticModuleData::new(vec!["h".into()], Subspace::coordinate(&k, 2, &[0]));
        let module = m.module(&a).unwrap();
        assert_eq!(module.dims(), &[1, 1, 1, 1, 1]);
        let diag = minimal_resolution(&a, &module).unwrap().diagonal();
        let (qd, md) = quadratic_dual_module(&m, &q);
        let ad = qd.algebra(4, CAP).unwrap();
        assert_eq!(md.module(&ad).unwrap().dims(), &diag[..]);
        let full = QuadraticModuleData::new(vec!["h".into()], Subspace::full(&k, 2));
        assert!(full.dual().relations.is_zero());
    }

    #[test]
    fn skew_extensions() {
        let k = Rationals;
        let x = skew_extension(&GradedAlgebra::trivial(&k, 3)).unwrap();
        assert_eq!(x.dims(), &[1, 1, 0, 0]);
        let c = CommQuadraticAlgebra::square_zero(&k, numbered("v", 2)).algebra(3, CAP).unwrap();
        let s = skew_extension(&c).unwrap();
        assert_eq!(s.dims(), &[1, 3, 2, 0]);
        assert!(s.check_associativity().is_none());
        assert!(s.is_graded_commutative());
        let e = CommQuadraticAlgebra::exterior(&k, numbered("v", 2)).algebra(4, CAP).unwrap();
        let s = skew_extension(&e).unwrap();
        let times = series::mul(&series::from_dims(e.dims()), &[1, 1], 4);
        assert_eq!(series::from_dims(s.dims()), times);
        assert_eq!(s.dims(), &[1, 3, 3, 1, 0]);
        let f2 = PrimeField::new(2).unwrap();
        let s2 = skew_extension(&GradedAlgebra::trivial(&f2, 2)).unwrap();
        assert!(s2.is_graded_commutative());
        assert!(matches!(
            skew_extension(&env(&k, &LiePresentation::free(Q, 2, 3))),
            Err(Error::NotGradedCommutative(_))
        ));
    }

    #[test]
    fn direct_sums() {
        let k = Rationals;
        let t = GradedAlgebra::trivial(&k, 3);
        assert_eq!(direct_sum(&t, &t).unwrap().dims(), &[1, 0, 0, 0]);
        let a = CommQuadraticAlgebra::exterior(&k, numbered("v", 2)).algebra(3, CAP).unwrap();
        let b = env(&k, &LiePresentation::abelian(Q, 1, 3));
        let s = direct_sum(&a, &b).unwrap();
        assert_eq!(s.dims(), &[1, 3, 2, 1]);
        assert!(s.check_associativity().is_none());
        assert_eq!(s.gen_names(), &["v1", "v2", "a1"]);
    }

    #[test]
    fn lie_to_comm_dims() {
        let k = Rationals;
        let cases = [
            (LiePresentation::abelian(Q, 2, 4), vec![1, 2, 1, 0, 0]),
            (LiePresentation::free(Q, 2, 4), vec![1, 2, 0, 0, 0]),
            (LiePresentation::one_relator(Q, 2, 4), vec![1, 4, 1, 0, 0]),
        ];
        for (p, dims) in cases {
            let c = lie_to_comm(&k, &p).unwrap();
            assert_eq!(c.algebra(4, CAP).unwrap().dims(), &dims[..], "{}", p.name);
        }
        let cubic = crate::presentation::parse_presentation("generators x,y; relations [x,[x,y]];").unwrap();
        assert_eq!(lie_to_comm(&k, &cubic).unwrap_err(), Error::NotQuadratic(0));
    }

    #[test]
    fn comm_to_lie_cases() {
        let k = Rationals;
        let free = comm_to_lie(&CommQuadraticAlgebra::square_zero(&k, numbered("x", 2)), 4).unwrap();
        assert!(free.relations.is_empty());
        let ab = comm_to_lie(&CommQuadraticAlgebra::exterior(&k, numbered("a", 3)), 4).unwrap();
        assert_eq!(env(&k, &ab).dims(), env(&k, &LiePresentation::abelian(Q, 3, 4)).dims());
        let p = LiePresentation::one_relator(Q, 2, 5);
        let back = comm_to_lie(&lie_to_comm(&k, &p).unwrap(), 5).unwrap();
        assert_eq!(back.relations.len(), 1);
        assert_eq!(env(&k, &back).dims(), env(&k, &p).dims());
    }

    #[test]
    fn koszul_dual_dims_are_the_diagonal() {
        let k = Rationals;
        for p in [LiePresentation::one_relator(Q, 2, 5), LiePresentation::abelian(Q, 3, 5)] {
            let a = env(&k, &p);
            let cert = is_koszul(&a).unwrap();
            let dual = QuadraticData::from_algebra(&a).unwrap().dual().algebra(5, CAP).unwrap();
            assert_eq!(dual.dims(), &cert.betti.diagonal()[..]);
            assert_eq!(quadratic_failure(&a, CAP).unwrap(), None);
        }
    }
}
