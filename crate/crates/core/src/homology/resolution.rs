//! Minimal graded free resolutions and Betti tables.
//!
//! Step `i` resolves the syzygy module `Z^{i-1}` degree by degree. Exactness
//! gives `dim Z^i_j = dim F_{i,j} - dim Z^{i-1}_j` for free, so the span of
//! `A_1 * Z^i_{j-1}` is grown only until it reaches that rank; a kernel is
//! solved for only when a deficit shows that new generators are needed.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::module::{FreeModule, GradedModule, LeftAction};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{left_kernel, Echelon, SVec};

/// `b[i][j] = dim Ext^{i,j}(M, k)` for `0 <= i, j <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(from = "BettiJson")]
pub struct BettiTable {
    bound: usize,
    b: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct BettiJson {
    bound: usize,
    rows: Vec<BettiEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub b: usize,
}

impl From<BettiJson> for BettiTable {
    fn from(j: BettiJson) -> Self {
        let mut t = BettiTable::zero(j.bound);
        for e in j.rows {
            if e.i <= j.bound && e.j <= j.bound {
                t.b[e.i][e.j] = e.b;
            }
        }
        t
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BettiTable", 2)?;
        st.serialize_field("bound", &self.bound)?;
        st.serialize_field("rows", &self.entries())?;
        st.end()
    }
}

impl BettiTable {
    pub fn zero(bound: usize) -> Self {
        BettiTable { bound, b: vec![vec![0; bound + 1]; bound + 1] }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.b.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: usize) {
        self.b[i][j] = v;
    }

    /// Nonzero entries, ordered by `(i, j)`.
    pub fn entries(&self) -> Vec<BettiEntry> {
        let mut out = Vec::new();
        for (i, row) in self.b.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    out.push(BettiEntry { i, j, b });
                }
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..=self.bound).map(|i| self.get(i, i)).collect()
    }

    /// Diagonal with trailing zeros removed.
    pub fn diagonal_trimmed(&self) -> Vec<usize> {
        let mut d = self.diagonal();
        while d.len() > 1 && d.last() == Some(&0) {
            d.pop();
        }
        d
    }

    /// First nonzero entry with `j != i + shift`, scanning by `j` then `i`.
    pub fn off_diagonal(&self, shift: usize) -> Option<BettiEntry> {
        for j in 0..=self.bound {
            for i in 0..=self.bound {
                let b = self.get(i, j);
                if b != 0 && j != i + shift {
                    return Some(BettiEntry { i, j, b });
                }
            }
        }
        None
    }

    pub fn is_linear(&self) -> bool {
        self.off_diagonal(0).is_none()
    }

    /// Table of `M[m]` given the table of `M`.
    pub fn shifted(&self, m: usize) -> Self {
        let mut t = BettiTable::zero(self.bound);
        for e in self.entries() {
            if e.j + m <= self.bound {
                t.b[e.i][e.j + m] = e.b;
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let mut t = BettiTable::zero(bound);
        for i in 0..=bound {
            for j in 0..=bound {
                t.b[i][j] = self.get(i, j) + other.get(i, j);
            }
        }
        t
    }

    pub fn max_homological_degree(&self) -> usize {
        self.entries().iter().map(|e| e.i).max().unwrap_or(0)
    }

    /// Fixed-width text rendering with `i` down and `j` across.
    pub fn render(&self) -> String {
        let rows = self.max_homological_degree();
        let width = self.entries().iter().map(|e| e.b.to_string().len()).max().unwrap_or(1).max(2);
        let mut s = format!("{:>4} |", "i\\j");
        for j in 0..=self.bound {
            s.push_str(&format!(" {:>width$}", j));
        }
        s.push('\n');
        s.push_str(&format!("{}\n", "-".repeat(6 + (width + 1) * (self.bound + 1))));
        for i in 0..=rows {
            s.push_str(&format!("{i:>4} |"));
            for j in 0..=self.bound {
                let b = self.get(i, j);
                if b == 0 {
                    s.push_str(&format!(" {:>width$}", "."));
                } else {
                    s.push_str(&format!(" {b:>width$}"));
                }
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Generators of one step of the resolution: degrees and their images in the
/// previous module.
#[derive(Clone, Debug)]
pub struct Step<K: Field> {
    pub gen_degrees: Vec<usize>,
    pub images: Vec<SVec<K::Elem>>,
}

#[derive(Clone, Debug)]
pub struct Resolution<K: Field> {
    pub steps: Vec<Step<K>>,
    pub betti: BettiTable,
}

/// Minimal free resolution of `m` over `a` through the common truncation bound.
pub fn minimal_resolution<K: Field>(a: &GradedAlgebra<K>, m: &GradedModule<K>) -> Result<BettiTable> {
    Ok(resolve(a, m, usize::MAX)?.betti)
}

/// Resolution stopping after homological degree `max_i`.
pub fn resolve<K: Field>(a: &GradedAlgebra<K>, m: &GradedModule<K>, max_i: usize) -> Result<Resolution<K>> {
    if a.gens() != m.gens() || m.bound() > a.bound() {
        return Err(Error::Incompatible);
    }
    let n = m.bound();
    let a = if a.bound() > n { std::borrow::Cow::Owned(a.truncate(n)) } else { std::borrow::Cow::Borrowed(a) };
    let a: &GradedAlgebra<K> = &a;
    let k = a.field();
    let mut betti = BettiTable::zero(n);

    // Minimal generators of M: complement of A_1 * M_{j-1} in coordinates.
    let mut step0 = Step { gen_degrees: vec![], images: vec![] };
    for j in 0..=n {
        let mut e = Echelon::new(k, m.dim(j));
        if j > 0 {
            'outer: for b in 0..m.dim(j - 1) {
                for g in 0..a.gens() {
                    e.insert(&m.act(g, j - 1, &SVec::unit(k, b)));
                    if e.rank() == m.dim(j) {
                        break 'outer;
                    }
                }
            }
        }
        for c in 0..m.dim(j) {
            if !e.is_pivot(c) {
                step0.gen_degrees.push(j);
                step0.images.push(SVec::unit(k, c));
            }
        }
    }
    for &d in &step0.gen_degrees {
        betti.b[0][d] += 1;
    }
    let mut steps = vec![step0];
    // dims of the image of the current differential, i.e. of the previous syzygies
    let mut image_dims: Vec<usize> = (0..=n).map(|j| m.dim(j)).collect();
    let mut i = 0;
    while i < max_i && i < n {
        let step = &steps[i];
        if step.gen_degrees.is_empty() {
            break;
        }
        let source = FreeModule::new(a, step.gen_degrees.clone());
        let next = if i == 0 {
            syzygy_generators(&source, m, &step.images, &image_dims)?
        } else {
            let target = FreeModule::new(a, steps[i - 1].gen_degrees.clone());
            syzygy_generators(&source, &target, &step.images, &image_dims)?
        };
        image_dims = (0..=n).map(|j| source.dims()[j] - image_dims[j]).collect();
        for &d in &next.gen_degrees {
            betti.b[i + 1][d] += 1;
        }
        steps.push(next);
        i += 1;
    }
    Ok(Resolution { steps, betti })
}

/// Minimal generators of `ker(d: F -> T)`, where `d` sends generator `e` to `images[e]`.
fn syzygy_generators<K: Field, T: LeftAction<K>>(
    source: &FreeModule<'_, K>,
    target: &T,
    images: &[SVec<K::Elem>],
    image_dims: &[usize],
) -> Result<Step<K>> {
    let k = target.field();
    let n = target.bound();
    let a_gens = source.algebra().gens();
    let mut out = Step { gen_degrees: vec![], images: vec![] };
    let mut prev_basis: Vec<SVec<K::Elem>> = Vec::new();
    for j in 0..=n {
        let fdim = source.dims()[j];
        let zdim = fdim.checked_sub(image_dims[j]).ok_or_else(|| {
            Error::Verification(format!("image of dimension {} exceeds source {fdim} in degree {j}", image_dims[j]))
        })?;
        let mut e = Echelon::new(k, fdim);
        if j > 0 && zdim > 0 {
            'outer: for v in &prev_basis {
                for g in 0..a_gens {
                    e.insert(&source.act(g, j - 1, v));
                    if e.rank() == zdim {
                        break 'outer;
                    }
                }
            }
        }
        let mut basis: Vec<SVec<K::Elem>> = e.rows().to_vec();
        if e.rank() < zdim {
            let cols: Vec<usize> = (0..fdim).filter(|&c| !e.is_pivot(c)).collect();
            let vals: Vec<SVec<K::Elem>> = cols
                .iter()
                .map(|&c| {
                    let (gen, b) = source.locate(j, c);
                    let deg = source.gen_degrees()[gen];
                    target.act_word(source.algebra().word(j - deg, b), deg, &images[gen])
                })
                .collect();
            let ker = left_kernel(k, target.dim(j), &vals);
            if ker.dim() + e.rank() != zdim {
                return Err(Error::Verification(format!(
                    "syzygy rank mismatch in degree {j}: {} + {} != {zdim}",
                    ker.dim(),
                    e.rank()
                )));
            }
            for v in ker.basis() {
                let lifted = SVec::from_pairs(k, v.iter().map(|(i, x)| (cols[*i], x.clone())).collect());
                out.gen_degrees.push(j);
                out.images.push(lifted.clone());
                basis.push(lifted);
            }
        }
        prev_basis = basis;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_WORD_CAP;
    use crate::enveloping::build_enveloping;
    use crate::field::{FieldSpec, PrimeField, Rationals};
    use crate::presentation::LiePresentation;

    fn trivial_betti(p: &LiePresentation) -> BettiTable {
        crate::with_field!(p.field, |k| {
            let a = build_enveloping(&k, p, DEFAULT_WORD_CAP).unwrap();
            minimal_resolution(&a, &GradedModule::trivial(&a)).unwrap()
        })
    }

    #[test]
    fn free_lie_table() {
        let t = trivial_betti(&LiePresentation::free(FieldSpec::Rational, 2, 5));
        assert_eq!(t.entries(), vec![BettiEntry { i: 0, j: 0, b: 1 }, BettiEntry { i: 1, j: 1, b: 2 }]);
    }

    #[test]
    fn abelian_tables_are_binomial() {
        for d in 1..=3 {
            let t = trivial_betti(&LiePresentation::abelian(FieldSpec::Rational, d, 4));
            let binom = [[1, 1, 0, 0, 0], [1, 2, 1, 0, 0], [1, 3, 3, 1, 0]];
            assert_eq!(t.diagonal(), binom[d - 1].to_vec());
            assert!(t.is_linear());
        }
    }

    #[test]
    fn one_relator_d1_over_f2() {
        let t = trivial_betti(&LiePresentation::one_relator(FieldSpec::Prime(2), 1, 5));
        assert_eq!(t.diagonal_trimmed(), vec![1, 2, 1]);
        assert!(t.is_linear());
    }

    #[test]
    fn cubic_relation_is_not_koszul() {
        let p = crate::presentation::parse_presentation("generators x,y; relations [x,[x,y]]; truncation 5;").unwrap();
        let t = trivial_betti(&p);
        assert_eq!(t.get(2, 3), 1);
        assert_eq!(t.off_diagonal(0), Some(BettiEntry { i: 2, j: 3, b: 1 }));
    }

    #[test]
    fn regular_module_is_free() {
        let k = PrimeField::new(3).unwrap();
        let a =
            build_enveloping(&k, &LiePresentation::one_relator(FieldSpec::Prime(3), 1, 4), DEFAULT_WORD_CAP).unwrap();
        let t = minimal_resolution(&a, &GradedModule::regular(&a)).unwrap();
        assert_eq!(t.entries(), vec![BettiEntry { i: 0, j: 0, b: 1 }]);
    }

    #[test]
    fn shift_covariance() {
        let a = build_enveloping(&Rationals, &LiePresentation::abelian(FieldSpec::Rational, 2, 5), DEFAULT_WORD_CAP)
            .unwrap();
        let m = GradedModule::trivial(&a);
        let t = minimal_resolution(&a, &m).unwrap();
        for s in 0..3 {
            assert_eq!(minimal_resolution(&a, &m.shift_up(s)).unwrap(), t.shifted(s));
        }
    }

    #[test]
    fn json_roundtrip() {
        let t = trivial_betti(&LiePresentation::abelian(FieldSpec::Rational, 2, 3));
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with("{\"bound\":3,\"rows\":["));
        let back: BettiTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
