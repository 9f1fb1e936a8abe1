use graded_lie::algebra::DEFAULT_WORD_CAP;
use graded_lie::enveloping::{build_enveloping, lie_components};
use graded_lie::homology::module::ideal_from_degree_one;
use graded_lie::homology::{minimal_resolution, GradedModule};
use graded_lie::lie::{hall_basis, necklace_count, tensor_dim, Bracket, LieExpr};
use graded_lie::linalg::{kernel, rank, Echelon, Matrix, SVec, Subspace};
use graded_lie::presentation::{numbered, parse_presentation, LiePresentation};
use graded_lie::series::pbw_product;
use graded_lie::{Field, FieldSpec, PrimeField, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn vectors<K: Field>(k: &K, rows: &[Vec<i64>]) -> Vec<SVec<K::Elem>> {
    rows.iter().map(|r| SVec::from_dense(k, &r.iter().map(|&x| k.from_i64(x)).collect::<Vec<_>>())).collect()
}

fn rows(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=max)
}

fn span<K: Field>(k: &K, n: usize, rows: &[Vec<i64>]) -> Subspace<K> {
    Subspace::from_vectors(k, n, vectors(k, rows).iter())
}

/// Quadratic relations `sum c_ij [x_i, x_j]` with small integer coefficients.
fn quadratic(field: FieldSpec, d: usize, rels: &[Vec<i64>], n: usize) -> LiePresentation {
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let relations = rels
        .iter()
        .map(|c| LieExpr {
            terms: pairs
                .iter()
                .zip(c)
                .filter(|(_, &c)| c != 0)
                .map(|(&(i, j), &c)| {
                    (BigRational::from_integer(BigInt::from(c)), Bracket::pair(Bracket::Gen(i), Bracket::Gen(j)))
                })
                .collect(),
        })
        .collect();
    LiePresentation::new("R", field, numbered("x", d), relations, n).unwrap()
}

/// Runs the body once over Q and once over F3.
macro_rules! for_both {
    (|$k:ident| $body:block) => {{
        {
            let $k = &Rationals;
            $body
        }
        {
            let $k = &f3();
            $body
        }
    }};
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grassmann(u in rows(5, 4), v in rows(5, 4)) {
        for_both!(|k| {
            let (u, v) = (span(k, 5, &u), span(k, 5, &v));
            let sum = u.sum(&v).unwrap();
            let meet = u.intersect(&v).unwrap();
            assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
            assert!(sum.contains_subspace(&u) && u.contains_subspace(&meet) && v.contains_subspace(&meet));
        });
    }

    #[test]
    fn rank_nullity(m in rows(6, 5)) {
        for_both!(|k| {
            let mat = Matrix::new(vectors(k, &m), 6);
            let ker = kernel(k, &mat);
            assert_eq!(ker.dim() + rank(k, &mat), 6);
            for z in ker.basis() {
                assert!(mat.apply(k, z).is_zero());
            }
        });
    }

    #[test]
    fn perp_is_an_involution(u in rows(5, 4)) {
        for_both!(|k| {
            let u = span(k, 5, &u);
            let p = u.perp();
            assert_eq!(u.dim() + p.dim(), 5);
            assert_eq!(p.perp(), u);
            for a in u.basis() {
                for b in p.basis() {
                    assert!(k.is_zero(&a.dot(k, b)));
                }
            }
        });
    }

    #[test]
    fn complement_is_deterministic(u in rows(5, 3), extra in rows(5, 3)) {
        for_both!(|k| {
            let small = span(k, 5, &u);
            let mut all = u.clone();
            all.extend(extra.iter().cloned());
            let big = span(k, 5, &all);
            let c = small.complement_in(&big).unwrap();
            assert_eq!(c.dim() + small.dim(), big.dim());
            assert_eq!(small.intersect(&c).unwrap().dim(), 0);
            assert_eq!(small.sum(&c).unwrap(), big);
            // any other spanning set of the same spaces gives the same answer
            let mut shuffled = all.clone();
            shuffled.reverse();
            let big2 = span(k, 5, &shuffled);
            let small2 = Subspace::from_vectors(k, 5, small.basis().iter().rev());
            assert_eq!(small2.complement_in(&big2).unwrap(), c);
        });
    }

    #[test]
    fn enveloping_identities(d in 2usize..=3, rels in prop::collection::vec(prop::collection::vec(-1i64..=1, 3), 0..=2), p in prop::sample::select(vec![2u32, 3])) {
        let pres = quadratic(FieldSpec::Prime(p), d, &rels, 4);
        let k = PrimeField::new(p).unwrap();
        let u = build_enveloping(&k, &pres, DEFAULT_WORD_CAP).unwrap();
        prop_assert_eq!(u.check_associativity(), None);
        let lie = lie_components(&u).dims();
        let pbw = pbw_product(&lie, 4);
        prop_assert_eq!(pbw, u.dims().iter().map(|&x| x as i128).collect::<Vec<_>>());
        // h_U(t) * sum (-1)^i b_ij t^j = 1 through the bound
        let t = minimal_resolution(&u, &GradedModule::trivial(&u)).unwrap();
        let mut euler = [0i128; 5];
        for e in t.entries() {
            prop_assert!(e.i <= e.j);
            euler[e.j] += if e.i % 2 == 0 { e.b as i128 } else { -(e.b as i128) };
        }
        for n in 0..=4 {
            let c: i128 = (0..=n).map(|j| euler[j] * u.dim(n - j) as i128).sum();
            prop_assert_eq!(c, i128::from(n == 0), "degree {}", n);
        }
    }

    #[test]
    fn shift_covariance(mask in 1usize..4, s in 1usize..=2) {
        let k = f3();
        let pres = LiePresentation::one_relator(FieldSpec::Prime(3), 1, 4);
        let u = build_enveloping(&k, &pres, DEFAULT_WORD_CAP).unwrap();
        let idx: Vec<usize> = (0..2).filter(|i| mask >> i & 1 == 1).collect();
        let ideal = ideal_from_degree_one(&u, &Subspace::coordinate(&k, 2, &idx), false);
        let (m, _) = GradedModule::regular(&u).quotient(&ideal).unwrap();
        let base = minimal_resolution(&u, &m).unwrap();
        let shifted = minimal_resolution(&u, &m.shift_up(s)).unwrap();
        prop_assert_eq!(shifted, base.shifted(s));
    }

    #[test]
    fn source_round_trip(d in 2usize..=3, rels in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..=2), n in 2usize..=6) {
        let pres = quadratic(FieldSpec::Rational, d, &rels, n);
        let back = parse_presentation(&pres.to_source()).unwrap();
        prop_assert_eq!(back, pres);
    }
}

/// Spans of all left-normed brackets `[..[[a1,a2],a3]..,an]`, computed in the
/// tensor algebra with no reference to the Hall construction.
fn left_normed_rank<K: Field>(k: &K, d: usize, n: usize) -> usize {
    let dim = tensor_dim(d, n).unwrap();
    let mut e = Echelon::new(k, dim);
    let mut words = vec![vec![]];
    for _ in 0..n {
        words = words.iter().flat_map(|w: &Vec<usize>| (0..d).map(move |g| [w.clone(), vec![g]].concat())).collect();
    }
    for w in words {
        let mut b = Bracket::Gen(w[0]);
        for &g in &w[1..] {
            b = Bracket::pair(b, Bracket::Gen(g));
        }
        e.insert(&b.expand(k, d).coeffs);
    }
    e.rank()
}

#[test]
fn hall_basis_matches_left_normed_span() {
    let q = Rationals;
    for d in 1..=3 {
        for n in 1..=5 {
            if d == 3 && n == 5 {
                continue;
            }
            let hall = hall_basis(d, n);
            let expected = left_normed_rank(&q, d, n);
            assert_eq!(hall.len(), expected, "d = {d}, n = {n}");
            assert_eq!(necklace_count(d, n), expected);
            let mut e = Echelon::new(&q, tensor_dim(d, n).unwrap());
            assert!(hall.iter().all(|b| e.insert(&b.expand(&q, d).coeffs)), "Hall elements dependent");
        }
    }
    assert_eq!(hall_basis(2, 5).len(), 6);
}
