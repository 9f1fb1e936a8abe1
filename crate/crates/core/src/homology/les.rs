//! Euler characteristic check for the long exact Ext sequence of a short
//! exact sequence of modules.

use serde::Serialize;

use super::module::{ideal_from_degree_one, GradedModule, LeftAction, ModuleMap};
use super::resolution::minimal_resolution;
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;

/// `0 -> L -f-> M -g-> N -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact<K: Field> {
    pub left: GradedModule<K>,
    pub middle: GradedModule<K>,
    pub right: GradedModule<K>,
    pub f: ModuleMap<K>,
    pub g: ModuleMap<K>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub bound: usize,
    /// `sum_i (-1)^i (b_L - b_M + b_N)[i][j]` for each `j`.
    pub euler: Vec<i64>,
    pub passed: bool,
}

impl<K: Field> ShortExact<K> {
    /// Checks that both maps are module maps and the sequence is exact in every degree.
    pub fn verify(&self) -> Result<()> {
        let k = self.middle.field();
        if !self.f.commutes_with_action(&self.left, &self.middle)
            || !self.g.commutes_with_action(&self.middle, &self.right)
        {
            return Err(Error::NotExact("maps do not commute with the action".into()));
        }
        for n in 0..=self.middle.bound() {
            let im_f = self.f.image(k, n);
            if im_f.dim() != self.left.dim(n) {
                return Err(Error::NotExact(format!("first map not injective in degree {n}")));
            }
            if self.g.image(k, n).dim() != self.right.dim(n) {
                return Err(Error::NotExact(format!("second map not surjective in degree {n}")));
            }
            if self.g.kernel(k, n) != im_f {
                return Err(Error::NotExact(format!("image differs from kernel in degree {n}")));
            }
        }
        Ok(())
    }
}

pub fn les_euler_check<K: Field>(a: &GradedAlgebra<K>, seq: &ShortExact<K>) -> Result<LesReport> {
    seq.verify()?;
    let bl = minimal_resolution(a, &seq.left)?;
    let bm = minimal_resolution(a, &seq.middle)?;
    let bn = minimal_resolution(a, &seq.right)?;
    let bound = bm.bound();
    let euler: Vec<i64> = (0..=bound)
        .map(|j| {
            (0..=bound)
                .map(|i| {
                    let v = bl.get(i, j) as i64 - bm.get(i, j) as i64 + bn.get(i, j) as i64;
                    if i % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .sum()
        })
        .collect();
    let passed = euler.iter().all(|&e| e == 0);
    Ok(LesReport { bound, euler, passed })
}

/// `0 -> I -> A -> A/I -> 0` for the ideal generated by `i1`.
pub fn ideal_sequence<K: Field>(a: &GradedAlgebra<K>, i1: &Subspace<K>) -> Result<ShortExact<K>> {
    let two_sided = !a.is_graded_commutative();
    let ideal = ideal_from_degree_one(a, i1, two_sided);
    submodule_sequence(&GradedModule::regular(a), &ideal)
}

/// `0 -> U -> M -> M/U -> 0`.
pub fn submodule_sequence<K: Field>(m: &GradedModule<K>, family: &[Subspace<K>]) -> Result<ShortExact<K>> {
    let (sub, f) = m.submodule(family)?;
    let (quot, g) = m.quotient(family)?;
    Ok(ShortExact { left: sub, middle: m.clone(), right: quot, f, g })
}

/// `0 -> M -> M -> 0 -> 0`.
pub fn identity_sequence<K: Field>(m: &GradedModule<K>) -> ShortExact<K> {
    let k = m.field();
    let zero_dims = vec![0; m.dims().len()];
    let zero = GradedModule::from_action(
        k,
        m.gens(),
        zero_dims.clone(),
        (0..m.bound()).map(|_| vec![vec![]; m.gens()]).collect(),
    );
    ShortExact {
        left: m.clone(),
        middle: m.clone(),
        right: zero,
        f: ModuleMap::identity(k, m.dims()),
        g: ModuleMap::zero(m.dims(), &zero_dims),
    }
}
