//! Truncated integer power series.

/// Coefficients of `prod_{m>=1} (1 - t^m)^{-l_m}` up to `t^n`.
pub fn pbw_product(lie_dims: &[usize], n: usize) -> Vec<i128> {
    let mut s = vec![0i128; n + 1];
    s[0] = 1;
    for m in 1..=n {
        let l = lie_dims.get(m).copied().unwrap_or(0);
        for _ in 0..l {
            // multiply by 1/(1 - t^m)
            for i in m..=n {
                s[i] += s[i - m];
            }
        }
    }
    s
}

pub fn from_dims(dims: &[usize]) -> Vec<i128> {
    dims.iter().map(|&d| d as i128).collect()
}

pub fn mul(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `f(-t)`.
pub fn alternate(a: &[i128]) -> Vec<i128> {
    a.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).collect()
}

/// Inverse of a series with constant term 1.
pub fn inverse(a: &[i128], n: usize) -> Vec<i128> {
    assert_eq!(a.first(), Some(&1), "constant term must be 1");
    let mut inv = vec![0i128; n + 1];
    inv[0] = 1;
    for i in 1..=n {
        let mut s = 0;
        for j in 1..=i.min(a.len() - 1) {
            s += a[j] * inv[i - j];
        }
        inv[i] = -s;
    }
    inv
}

/// First degree `1..=n` where `h_A(t) h_{A!}(-t)` has a nonzero coefficient.
pub fn koszul_series_failure(h: &[usize], h_dual: &[usize], n: usize) -> Option<usize> {
    let p = mul(&from_dims(h), &alternate(&from_dims(h_dual)), n);
    (1..=n).find(|&i| p[i] != 0)
}

/// First degree where `1/h_F = 1/h_A + 1/h_B - 1` fails.
pub fn free_product_failure(hf: &[usize], ha: &[usize], hb: &[usize], n: usize) -> Option<usize> {
    let lhs = inverse(&from_dims(hf), n);
    let ia = inverse(&from_dims(ha), n);
    let ib = inverse(&from_dims(hb), n);
    (0..=n).find(|&i| {
        let rhs = ia[i] + ib[i] - if i == 0 { 1 } else { 0 };
        lhs[i] != rhs
    })
}
