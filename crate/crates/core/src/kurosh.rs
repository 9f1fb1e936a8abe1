//! Degree-1 generated subalgebras: minimal presentations, freeness,
//! distinguished bases in free products, and the subalgebra decomposition
//! `<H_1> = <H_1 ∩ A> ⨿ <H_1 ∩ B> ⨿ Free(W)` with its verification.

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::enveloping::{build_enveloping, generated_lie_family, lie_components, GradedSubspaceFamily};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::decide::{is_bloch_kato, BlochKatoReport};
use crate::homology::module::{ideal_from_degree_one, GradedModule};
use crate::homology::{minimal_resolution, BettiEntry, BettiTable};
use crate::lie::{necklace_count, tensor_dim, HallBasis, LieExpr};
use crate::linalg::{left_kernel, Accumulator, Echelon, SVec, Subspace};
use crate::presentation::{numbered, LiePresentation};
use crate::products::{free_product_algebra, free_product_lie, induced_module, mayer_vietoris_check, MvReport};
use crate::strategy::{Coverage, Strategy};

/// The Lie subalgebra generated by `s <= A_1`, degree by degree.
pub fn generate_subalgebra<K: Field>(a: &GradedAlgebra<K>, s: &Subspace<K>) -> GradedSubspaceFamily<K> {
    generated_lie_family(a, s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraReport {
    /// `dims[n] = dim <S>_n`; `dims[0] = 0`.
    pub dims: Vec<usize>,
    /// Minimal relations per degree.
    pub relation_counts: Vec<usize>,
    pub quadratic: bool,
}

impl SubalgebraReport {
    pub fn relation_total(&self) -> usize {
        self.relation_counts.iter().sum()
    }
}

/// Names for a basis of a subspace of `A_1`: a unit vector keeps its
/// generator name, anything else is numbered with `prefix`.
pub fn basis_names<K: Field>(a: &GradedAlgebra<K>, basis: &[SVec<K::Elem>], prefix: &str) -> Vec<String> {
    let k = a.field();
    let names: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(i, v)| match v.entries() {
            [(g, c)] if k.is_one(c) => a.gen_names()[*g].clone(),
            _ => format!("{prefix}{}", i + 1),
        })
        .collect();
    let distinct = names.iter().enumerate().all(|(i, n)| !names[..i].contains(n));
    if distinct {
        names
    } else {
        numbered(prefix, basis.len())
    }
}

/// Minimal presentation of the subalgebra generated by an independent
/// family in `A_1`, valid through `A.bound()`.
///
/// The free Lie algebra on the family maps onto the subalgebra through Hall
/// brackets; its kernel `R_n` is found degree by degree, and the minimal
/// relations in degree `n` are those of `R_n` outside `[F_1, R_{n-1}]`, which
/// is the part of the relation ideal coming from lower degrees. That
/// comparison happens in tensor coordinates.
pub fn presentation_on_basis<K: Field>(
    a: &GradedAlgebra<K>,
    basis: &[SVec<K::Elem>],
    names: Vec<String>,
    name: &str,
    cap: u128,
) -> Result<(LiePresentation, SubalgebraReport)> {
    let k = a.field();
    let r = basis.len();
    let n_max = a.bound();
    if Subspace::from_vectors(k, a.gens(), basis.iter()).dim() != r {
        return Err(Error::Dependent);
    }
    let needed = (r as u128).checked_pow(n_max as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { what: format!("{r}^{n_max} tensor words"), needed, cap });
    }
    let hall = HallBasis::new(r, n_max);
    let mut image: Vec<SVec<K::Elem>> = Vec::with_capacity(hall.len());
    let mut tensor: Vec<SVec<K::Elem>> = Vec::with_capacity(hall.len());
    let mut dims = vec![0; n_max + 1];
    let mut counts = vec![0; n_max + 1];
    let mut relations = Vec::new();
    let mut prev_kernel: Vec<SVec<K::Elem>> = Vec::new();
    for n in 1..=n_max {
        for (pos, parts) in hall.factors(n).into_iter().enumerate() {
            let id = hall.ids(n)[pos];
            debug_assert_eq!(id, image.len());
            match parts {
                None => {
                    image.push(basis[pos].clone());
                    tensor.push(SVec::unit(k, pos));
                }
                Some((u, v)) => {
                    let (du, dv) = (hall.element(u).1, hall.element(v).1);
                    image.push(a.commutator(du, &image[u], dv, &image[v]));
                    let uv = concat(k, &tensor[u], &tensor[v], r, dv);
                    let vu = concat(k, &tensor[v], &tensor[u], r, du);
                    tensor.push(uv.sub(k, &vu));
                }
            }
        }
        let ids = hall.ids(n);
        let imgs: Vec<SVec<K::Elem>> = ids.iter().map(|&i| image[i].clone()).collect();
        let ker = left_kernel(k, a.dim(n), &imgs);
        dims[n] = ids.len() - ker.dim();
        let cols = tensor_dim(r, n).expect("bounded by cap");
        let mut lower = Echelon::new(k, cols);
        for v in &prev_kernel {
            for g in 0..r {
                let gv = concat(k, &SVec::unit(k, g), v, r, n - 1);
                let vg = concat(k, v, &SVec::unit(k, g), r, 1);
                lower.insert(&gv.sub(k, &vg));
            }
        }
        let mut kernel_tensors = Vec::with_capacity(ker.dim());
        for c in ker.basis() {
            let mut acc = Accumulator::new();
            for (pos, x) in c.iter() {
                acc.add_scaled(k, x, &tensor[ids[*pos]]);
            }
            let t = acc.finish(k);
            if lower.insert(&t) {
                counts[n] += 1;
                let terms = c.iter().map(|(pos, x)| (k.to_rational(x), hall.element(ids[*pos]).0.clone())).collect();
                relations.push(LieExpr { terms });
            }
            kernel_tensors.push(t);
        }
        prev_kernel = kernel_tensors;
    }
    let quadratic = counts.iter().enumerate().all(|(n, &c)| c == 0 || n == 2);
    let p = LiePresentation::new(name, k.spec(), names, relations, n_max)?;
    Ok((p, SubalgebraReport { dims, relation_counts: counts, quadratic }))
}

/// `u (x) v` for `v` of degree `dv` in tensor coordinates on `r` letters.
fn concat<K: Field>(k: &K, u: &SVec<K::Elem>, v: &SVec<K::Elem>, r: usize, dv: usize) -> SVec<K::Elem> {
    let scale = tensor_dim(r, dv).expect("bounded by cap");
    let mut pairs = Vec::with_capacity(u.nnz() * v.nnz());
    for (i, a) in u.iter() {
        for (j, b) in v.iter() {
            pairs.push((i * scale + j, k.mul(a, b)));
        }
    }
    SVec::from_pairs(k, pairs)
}

/// [`presentation_on_basis`] on the reduced basis of `s`.
pub fn subalgebra_presentation<K: Field>(
    a: &GradedAlgebra<K>,
    s: &Subspace<K>,
    cap: u128,
) -> Result<(LiePresentation, SubalgebraReport)> {
    let names = basis_names(a, s.basis(), "s");
    presentation_on_basis(a, s.basis(), names, "sub", cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub bound: usize,
    pub rank: usize,
    pub free: bool,
    /// First nonzero `b[2][j]`.
    pub witness: Option<BettiEntry>,
    /// First degree where `dim L_n` differs from the free count.
    pub count_mismatch: Option<usize>,
}

impl FreenessReport {
    /// Both criteria agree.
    pub fn consistent(&self) -> bool {
        self.free == self.count_mismatch.is_none()
    }
}

/// Freeness through `H^2 = 0`, cross-checked against necklace counts.
pub fn freeness_check<K: Field>(u: &GradedAlgebra<K>) -> Result<FreenessReport> {
    let betti = minimal_resolution(u, &GradedModule::trivial(u))?;
    let witness = (0..=u.bound()).find(|&j| betti.get(2, j) != 0).map(|j| BettiEntry { i: 2, j, b: betti.get(2, j) });
    let lie = lie_components(u).dims();
    let rank = u.gens();
    let count_mismatch = (1..=u.bound()).find(|&n| lie[n] != necklace_count(rank, n));
    Ok(FreenessReport { bound: u.bound(), rank, free: witness.is_none(), witness, count_mismatch })
}

/// Coordinate vectors rendered in the field, for reports.
pub fn render_vectors<K: Field>(k: &K, dim: usize, vecs: &[SVec<K::Elem>]) -> Vec<Vec<String>> {
    vecs.iter().map(|v| v.to_dense(k, dim).iter().map(|x| k.display(x)).collect()).collect()
}

#[derive(Clone, Debug)]
pub struct DistinguishedBasis<K: Field> {
    pub left: Vec<SVec<K::Elem>>,
    pub right: Vec<SVec<K::Elem>>,
    pub mixed: Vec<SVec<K::Elem>>,
}

impl<K: Field> DistinguishedBasis<K> {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len() + self.mixed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `B_A`, then `B_B`, then the mixed vectors.
    pub fn ordered(&self) -> Vec<SVec<K::Elem>> {
        self.left.iter().chain(&self.right).chain(&self.mixed).cloned().collect()
    }

    /// The projections of the mixed vectors together with `B_A` are
    /// independent in `A_1`, and symmetrically for `B`.
    pub fn projections_independent(&self, k: &K, da: usize, db: usize) -> bool {
        let pa: Vec<SVec<K::Elem>> = self.left.iter().chain(&self.mixed).map(|w| w.window(0, da)).collect();
        let pb: Vec<SVec<K::Elem>> = self.right.iter().chain(&self.mixed).map(|w| w.window(da, da + db)).collect();
        left_kernel(k, da, &pa).is_zero() && left_kernel(k, db, &pb).is_zero()
    }
}

/// Splits `h1 <= A_1 (+) B_1` (first `da` coordinates from `A`) as
/// `(h1 ∩ A_1) (+) (h1 ∩ B_1) (+) W`.
pub fn distinguished_basis<K: Field>(h1: &Subspace<K>, da: usize) -> Result<DistinguishedBasis<K>> {
    let k = h1.field();
    let n = h1.ambient();
    if da > n {
        return Err(Error::AmbientMismatch { left: da, right: n });
    }
    let ca = Subspace::coordinate(k, n, &(0..da).collect::<Vec<_>>());
    let cb = Subspace::coordinate(k, n, &(da..n).collect::<Vec<_>>());
    let left = h1.intersect(&ca)?;
    let right = h1.intersect(&cb)?;
    let mixed = left.sum(&right)?.complement_in(h1)?;
    Ok(DistinguishedBasis { left: left.basis().to_vec(), right: right.basis().to_vec(), mixed: mixed.basis().to_vec() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    /// `(n, dim <H_1>_n, dim(<H_1>_n ∩ A_n), dim(<H_1>_n ∩ B_n))`.
    pub per_degree: Vec<(usize, usize, usize, usize)>,
    pub passed: bool,
}

/// For `h1` meeting both factors trivially in degree 1, checks that the
/// generated subalgebra meets `U(A)` and `U(B)` trivially in every degree,
/// using the tagged words of the free product.
pub fn intersection_triviality_check<K: Field>(
    a: &GradedAlgebra<K>,
    b: &GradedAlgebra<K>,
    h1: &Subspace<K>,
) -> Result<IntersectionReport> {
    let k = a.field();
    let fp = free_product_algebra(a, b)?;
    let l = &fp.algebra;
    if h1.ambient() != l.gens() {
        return Err(Error::AmbientMismatch { left: h1.ambient(), right: l.gens() });
    }
    let basis = distinguished_basis(h1, fp.left_gens)?;
    if !basis.left.is_empty() || !basis.right.is_empty() {
        return Err(Error::Precondition("H_1 meets a factor in degree 1".into()));
    }
    let fam = generated_lie_family(l, h1);
    let mut per_degree = Vec::new();
    for n in 1..=l.bound() {
        let pa = Subspace::coordinate(k, l.dim(n), &fp.pure_left(n));
        let pb = Subspace::coordinate(k, l.dim(n), &fp.pure_right(n));
        let h = fam.get(n);
        per_degree.push((n, h.dim(), h.intersect(&pa)?.dim(), h.intersect(&pb)?.dim()));
    }
    let passed = per_degree.iter().all(|&(_, _, x, y)| x == 0 && y == 0);
    Ok(IntersectionReport { per_degree, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub n: usize,
    pub dim_subalgebra: usize,
    pub dim_model: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KuroshVerdict {
    Verified,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityLadder {
    /// `(U(H) W)_n ∩ (U(H) P_1)_n = 0` for `n <= 2`.
    pub injective_low_degrees: bool,
    pub mayer_vietoris: MvReport,
    pub cokernel_dims: Vec<usize>,
    pub cokernel_betti: BettiTable,
    pub cokernel_linear: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KuroshDecomposition {
    #[serde(rename = "B_A")]
    pub b_a: Vec<Vec<String>>,
    #[serde(rename = "B_B")]
    pub b_b: Vec<Vec<String>>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<String>>,
    pub model_presentation: String,
    pub per_degree: Vec<DegreeComparison>,
    pub first_mismatch: Option<usize>,
    pub projections_independent: bool,
    pub ladder: InjectivityLadder,
    pub verdict: KuroshVerdict,
    pub conditional_flags: Vec<String>,
}

impl KuroshDecomposition {
    pub fn verified(&self) -> bool {
        self.verdict == KuroshVerdict::Verified
    }
}

/// Flags recording how far the Bloch-Kato hypothesis on the factors was checked.
pub fn bloch_kato_flags<K: Field>(
    k: &K,
    a: &LiePresentation,
    b: &LiePresentation,
    strategy: Strategy,
    cap: u128,
) -> Result<Vec<String>> {
    let mut flags = Vec::new();
    for (tag, p) in [("A", a), ("B", b)] {
        let r: BlochKatoReport = is_bloch_kato(k, p, strategy, cap)?;
        if !r.passed {
            flags.push(format!("factor {tag} is not Bloch-Kato"));
        } else if r.coverage == Coverage::Sampled {
            flags.push(format!("factor {tag} Bloch-Kato only sampled"));
        }
    }
    Ok(flags)
}

/// Full pipeline: Bloch-Kato hypothesis on the factors, then [`decompose`].
pub fn kurosh_decompose<K: Field>(
    k: &K,
    a: &LiePresentation,
    b: &LiePresentation,
    h1: &Subspace<K>,
    strategy: Strategy,
    cap: u128,
) -> Result<KuroshDecomposition> {
    let flags = bloch_kato_flags(k, a, b, strategy, cap)?;
    decompose(k, a, b, h1, flags, cap)
}

/// The decomposition and its verification, with precomputed hypothesis flags.
pub fn decompose<K: Field>(
    k: &K,
    a: &LiePresentation,
    b: &LiePresentation,
    h1: &Subspace<K>,
    conditional_flags: Vec<String>,
    cap: u128,
) -> Result<KuroshDecomposition> {
    if a.field != b.field || a.truncation != b.truncation {
        return Err(Error::Incompatible);
    }
    let (da, db) = (a.gens(), b.gens());
    if h1.ambient() != da + db {
        return Err(Error::WrongLength { got: h1.ambient(), expected: da + db });
    }
    let ua = build_enveloping(k, a, cap)?;
    let ub = build_enveloping(k, b, cap)?;
    let fp = free_product_algebra(&ua, &ub)?;
    let l = &fp.algebra;
    let basis = distinguished_basis(h1, da)?;

    // model: <H_1 ∩ A> ⨿ <H_1 ∩ B> ⨿ Free(W)
    let left_in_a: Vec<SVec<K::Elem>> = basis.left.iter().map(|v| v.window(0, da)).collect();
    let right_in_b: Vec<SVec<K::Elem>> = basis.right.iter().map(|v| v.window(da, da + db)).collect();
    let (pa, _) = presentation_on_basis(&ua, &left_in_a, basis_names(&ua, &left_in_a, "u"), "HA", cap)?;
    let (pb, _) = presentation_on_basis(&ub, &right_in_b, basis_names(&ub, &right_in_b, "v"), "HB", cap)?;
    let free_w = LiePresentation::new("W", a.field, numbered("w", basis.mixed.len()), vec![], a.truncation)?;
    let model = free_product_lie(&free_product_lie(&pa, &pb)?, &free_w)?;
    let model_dims = lie_components(&build_enveloping(k, &model, cap)?).dims();
    let sub_dims = generated_lie_family(l, h1).dims();
    let per_degree: Vec<DegreeComparison> = (1..=l.bound())
        .map(|n| DegreeComparison { n, dim_subalgebra: sub_dims[n], dim_model: model_dims[n] })
        .collect();
    let first_mismatch = per_degree.iter().find(|c| c.dim_subalgebra != c.dim_model).map(|c| c.n);

    // the envelope U(H) on the ordered basis B_A, B_B, W
    let ordered = basis.ordered();
    let names = numbered("h", ordered.len());
    let (ph, _) = presentation_on_basis(l, &ordered, names, "H", cap)?;
    let e = build_enveloping(k, &ph, cap)?;
    let ladder = injectivity_ladder(&e, basis.left.len() + basis.right.len())?;

    let ok = first_mismatch.is_none() && ladder.injective_low_degrees && ladder.mayer_vietoris.passed();
    Ok(KuroshDecomposition {
        b_a: render_vectors(k, da + db, &basis.left),
        b_b: render_vectors(k, da + db, &basis.right),
        w: render_vectors(k, da + db, &basis.mixed),
        model_presentation: model.to_stanza(),
        per_degree,
        first_mismatch,
        projections_independent: basis.projections_independent(k, da, db),
        ladder,
        verdict: if ok { KuroshVerdict::Verified } else { KuroshVerdict::Mismatch },
        conditional_flags,
    })
}

/// `U(H) -> ind_F k (+) ind_P k` for `P_1` the first `p` generators of `e`
/// and `F_1 = W` the rest.
fn injectivity_ladder<K: Field>(e: &GradedAlgebra<K>, p: usize) -> Result<InjectivityLadder> {
    let k = e.field();
    let h = e.gens();
    let p1 = Subspace::coordinate(k, h, &(0..p).collect::<Vec<_>>());
    let w = Subspace::coordinate(k, h, &(p..h).collect::<Vec<_>>());
    let iw = ideal_from_degree_one(e, &w, false);
    let ip = ideal_from_degree_one(e, &p1, false);
    let mut injective_low_degrees = true;
    for n in 0..=e.bound().min(2) {
        if !iw[n].intersect(&ip[n])?.is_zero() {
            injective_low_degrees = false;
        }
    }
    let mayer_vietoris = mayer_vietoris_check(e, &w, &p1)?;
    let (ind_w, map_w) = induced_module(e, &w)?;
    let (ind_p, map_p) = induced_module(e, &p1)?;
    let sum = ind_w.direct_sum(&ind_p)?;
    let image: Vec<Subspace<K>> = (0..=e.bound())
        .map(|n| {
            let off = ind_w.dims()[n];
            let vecs: Vec<SVec<K::Elem>> =
                (0..e.dim(n)).map(|b| map_w.images[n][b].add(k, &map_p.images[n][b].shifted(off))).collect();
            Subspace::from_vectors(k, sum.dims()[n], vecs.iter())
        })
        .collect();
    let (coker, _) = sum.quotient(&image)?;
    let cokernel_betti = minimal_resolution(e, &coker)?;
    Ok(InjectivityLadder {
        injective_low_degrees,
        mayer_vietoris,
        cokernel_dims: coker.dims().to_vec(),
        cokernel_linear: cokernel_betti.is_linear(),
        cokernel_betti,
    })
}
