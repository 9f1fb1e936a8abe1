//! Ext through the normalized bar complex `A_+^{(x) i} (x) M`, used as an
//! independent check on minimal resolutions.

use std::collections::HashMap;

use super::module::{GradedModule, LeftAction};
use super::resolution::BettiTable;
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Accumulator, Echelon, SVec};

/// Default ceiling on the total dimension of the bar chains.
pub const DEFAULT_BAR_CAP: u128 = 200_000;

/// Chains of homological degree `i` and internal degree `j`.
struct Chains {
    /// Degrees `(n_1, .., n_i, m)` of each tensor shape with its offset and size.
    shapes: Vec<(Vec<usize>, usize, usize)>,
    index: HashMap<Vec<usize>, usize>,
    dim: usize,
}

fn compositions(total: usize, parts: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for first in 1..=total.saturating_sub(parts - 1) {
        cur.push(first);
        compositions(total - first, parts - 1, out, cur);
        cur.pop();
    }
}

fn chains<K: Field>(a: &GradedAlgebra<K>, m: &GradedModule<K>, i: usize, j: usize) -> Chains {
    let mut shapes = Vec::new();
    let mut index = HashMap::new();
    let mut dim = 0;
    for mdeg in 0..=j {
        if m.dim(mdeg) == 0 || j - mdeg < i {
            continue;
        }
        let mut comps = Vec::new();
        if i == 0 {
            if mdeg == j {
                comps.push(vec![]);
            }
        } else {
            compositions(j - mdeg, i, &mut comps, &mut Vec::new());
        }
        for mut c in comps {
            let size = c.iter().map(|&n| a.dim(n)).product::<usize>() * m.dim(mdeg);
            if size == 0 {
                continue;
            }
            c.push(mdeg);
            index.insert(c.clone(), shapes.len());
            shapes.push((c, dim, size));
            dim += size;
        }
    }
    Chains { shapes, index, dim }
}

fn split_index(degs: &[usize], dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; degs.len()];
    for s in (0..degs.len()).rev() {
        out[s] = idx % dims[s];
        idx /= dims[s];
    }
    out
}

fn join_index(dims: &[usize], parts: &[usize]) -> usize {
    parts.iter().zip(dims).fold(0, |acc, (p, d)| acc * d + p)
}

fn shape_dims<K: Field>(a: &GradedAlgebra<K>, m: &GradedModule<K>, degs: &[usize]) -> Vec<usize> {
    let l = degs.len();
    degs.iter().enumerate().map(|(s, &n)| if s + 1 == l { m.dim(n) } else { a.dim(n) }).collect()
}

/// Rows of the bar differential `C_{i,j} -> C_{i-1,j}`.
fn differential<K: Field>(
    a: &GradedAlgebra<K>,
    m: &GradedModule<K>,
    src: &Chains,
    dst: &Chains,
    i: usize,
) -> Vec<SVec<K::Elem>> {
    let k = a.field();
    let mut rows = Vec::with_capacity(src.dim);
    for (degs, _, size) in &src.shapes {
        let dims = shape_dims(a, m, degs);
        for local in 0..*size {
            let parts = split_index(degs, &dims, local);
            let mut acc = Accumulator::new();
            // a_s a_{s+1} for s = 1..i-1, sign (-1)^s
            for s in 0..i.saturating_sub(1) {
                let prod = a.mul_basis(degs[s], parts[s], degs[s + 1], parts[s + 1]);
                if prod.is_zero() {
                    continue;
                }
                let mut nd = degs[..s].to_vec();
                nd.push(degs[s] + degs[s + 1]);
                nd.extend_from_slice(&degs[s + 2..]);
                let Some(&t) = dst.index.get(&nd) else {
                    continue;
                };
                let (_, off, _) = &dst.shapes[t];
                let ndims = shape_dims(a, m, &nd);
                let sign = k.sign(s + 1);
                for (c, x) in prod.iter() {
                    let mut np = parts[..s].to_vec();
                    np.push(*c);
                    np.extend_from_slice(&parts[s + 2..]);
                    acc.push(off + join_index(&ndims, &np), k.mul(&sign, x));
                }
            }
            // a_i m, sign (-1)^i
            let mdeg = degs[i];
            let am = m.act_word(a.word(degs[i - 1], parts[i - 1]), mdeg, &SVec::unit(k, parts[i]));
            if !am.is_zero() {
                let mut nd = degs[..i - 1].to_vec();
                nd.push(mdeg + degs[i - 1]);
                if let Some(&t) = dst.index.get(&nd) {
                    let (_, off, _) = &dst.shapes[t];
                    let ndims = shape_dims(a, m, &nd);
                    let sign = k.sign(i);
                    for (c, x) in am.iter() {
                        let mut np = parts[..i - 1].to_vec();
                        np.push(*c);
                        acc.push(off + join_index(&ndims, &np), k.mul(&sign, x));
                    }
                }
            }
            rows.push(acc.finish(k));
        }
    }
    rows
}

fn rank<K: Field>(k: &K, cols: usize, rows: &[SVec<K::Elem>]) -> usize {
    let mut e = Echelon::new(k, cols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// `dim Ext^{i,j}(M, k)` for `j <= bound`, from the homology of the bar complex.
pub fn bar_ext_oracle<K: Field>(
    a: &GradedAlgebra<K>,
    m: &GradedModule<K>,
    bound: usize,
    cap: u128,
) -> Result<BettiTable> {
    if bound > m.bound() || bound > a.bound() || a.gens() != m.gens() {
        return Err(Error::Incompatible);
    }
    let k = a.field();
    let mut table = BettiTable::zero(bound);
    let mut used: u128 = 0;
    for j in 0..=bound {
        let cs: Vec<Chains> = (0..=j + 1).map(|i| chains(a, m, i, j)).collect();
        used += cs.iter().map(|c| c.dim as u128).sum::<u128>();
        if used > cap {
            return Err(Error::CapExceeded { what: "bar complex chains".into(), needed: used, cap });
        }
        // ranks[i] = rank of the differential leaving C_i
        let mut ranks = vec![0; j + 2];
        for i in 1..=j {
            let rows = differential(a, m, &cs[i], &cs[i - 1], i);
            ranks[i] = rank(k, cs[i - 1].dim, &rows);
        }
        for i in 0..=j {
            let h = cs[i].dim - ranks[i] - ranks[i + 1];
            table.set(i, j, h);
        }
    }
    Ok(table)
}
