//! Small helpers on coefficient vectors.

use crate::field::{Fe, Field};

pub fn zero(n: usize) -> Vec<Fe> {
    vec![Fe::ZERO; n]
}

pub fn unit(n: usize, i: usize) -> Vec<Fe> {
    let mut v = zero(n);
    v[i] = Fe::ONE;
    v
}

pub fn is_zero(v: &[Fe]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `y += a * x`
#[inline]
pub fn axpy(f: Field, y: &mut [Fe], a: Fe, x: &[Fe]) {
    if a.is_zero() {
        return;
    }
    if a == Fe::ONE {
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi += xi;
        }
    } else {
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi += f.mul(a, xi);
        }
    }
}

pub fn add(x: &[Fe], y: &[Fe]) -> Vec<Fe> {
    x.iter().zip(y).map(|(&a, &b)| a + b).collect()
}

pub fn scale(f: Field, a: Fe, x: &[Fe]) -> Vec<Fe> {
    x.iter().map(|&v| f.mul(a, v)).collect()
}

/// Linear combination of `vectors` with `coeffs`.
pub fn combine(f: Field, n: usize, coeffs: &[Fe], vectors: &[Vec<Fe>]) -> Vec<Fe> {
    let mut out = zero(n);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(f, &mut out, *c, v);
    }
    out
}

/// 0/1 vector from the low bits of `mask`.
pub fn from_mask(n: usize, mask: u64) -> Vec<Fe> {
    (0..n).map(|i| Fe(((mask >> i) & 1) as u16)).collect()
}

/// Compact text form: GF(2) entries as a bit string, otherwise integers.
pub fn display(v: &[Fe]) -> String {
    if v.iter().all(|x| x.0 <= 1) {
        v.iter().map(|x| if x.0 == 1 { '1' } else { '0' }).collect()
    } else {
        let parts: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}
