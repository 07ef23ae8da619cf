//! Fixture generators. Every generator verifies its output before returning.
//!
//! Graded fixtures use the basis `t_1..t_r`, then `n`, then root vectors, with
//! `[t_i, x] = lambda_i x` for a root vector `x` of root `lambda` and
//! `t_i^[2] = t_i`. Matrix fixtures take a GF(2) basis of matrices closed under
//! commutator and square, with the 2-map given by matrix squaring.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::{vector, Matrix};
use crate::restricted::{solve, verify_two_map, TwoMap};
use crate::rootspace::{Root, ALPHA as A, BETA as B, GAMMA as C};

pub type Fixture = (LieAlgebra, TwoMap);

fn verified(name: &str, g: LieAlgebra, tm: TwoMap) -> Result<Fixture> {
    let lie = g.verify_lie();
    if !lie.is_clean() {
        return Err(Error::FixtureUnverified { name: name.into(), detail: format!("{:?}", lie.violations) });
    }
    let two = verify_two_map(&g, &tm);
    if !two.is_clean() {
        return Err(Error::FixtureUnverified { name: name.into(), detail: format!("{:?}", two.violations) });
    }
    Ok((g.with_name(name), tm))
}

/// Abelian algebra with `t_i^[2] = t_i`.
pub fn torus(r: usize) -> Result<Fixture> {
    let g = LieAlgebra::abelian(Field::GF2, r);
    let tm = TwoMap::new((0..r).map(|i| vector::unit(r, i)).collect());
    verified(&format!("torus{r}"), g, tm)
}

/// A torus of rank `rank`, a nilpotent part of dimension `nil`, and one root
/// vector per entry of `roots`. `extra` adds `[b_i, b_j] = b_m` and
/// `squares` sets `b_i^[2] = b_m`, both in global indices.
pub fn graded(
    name: &str,
    rank: usize,
    nil: usize,
    roots: &[Root],
    extra: &[(usize, usize, usize)],
    squares: &[(usize, usize)],
) -> Result<Fixture> {
    let n = rank + nil + roots.len();
    let mut g = LieAlgebra::abelian(Field::GF2, n);
    let set = |g: &mut LieAlgebra, i: usize, j: usize, v: &[Fe]| -> Result<()> {
        g.set_bracket(i, j, v)?;
        g.set_bracket(j, i, v)
    };
    for (k, &lambda) in roots.iter().enumerate() {
        let x = rank + nil + k;
        for i in 0..rank {
            if lambda >> i & 1 == 1 {
                set(&mut g, i, x, &vector::unit(n, x))?;
            }
        }
    }
    for &(i, j, m) in extra {
        let mut v = g.structure(i, j).to_vec();
        v[m] += Fe::ONE;
        set(&mut g, i, j, &v)?;
    }
    let mut images: Vec<Vec<Fe>> = (0..n).map(|i| if i < rank { vector::unit(n, i) } else { vector::zero(n) }).collect();
    for &(i, m) in squares {
        images[i] = vector::unit(n, m);
    }
    verified(name, g, TwoMap::new(images))
}

/// `Delta_1` with one-dimensional root spaces: basis `t1 t2 t3 x_a x_b x_c`.
pub fn f6() -> Result<Fixture> {
    graded("F6", 3, 0, &[A, B, C], &[], &[])
}

/// `Delta_0` with one-dimensional root spaces, dimension 10.
pub fn f7() -> Result<Fixture> {
    graded("F7", 3, 0, &[1, 2, 3, 4, 5, 6, 7], &[], &[])
}

/// F6 with a two-dimensional `g_a` and a 2-nilpotent `z` in the Cartan
/// subalgebra acting by `x_a1 -> x_a2`. Basis `t1 t2 t3 z x_a1 x_a2 x_b x_c`.
pub fn f6n() -> Result<Fixture> {
    graded("F6n", 3, 1, &[A, A, B, C], &[(3, 4, 5)], &[])
}

/// `Delta_2`: F6 plus `x_{a+b} = [x_a, x_b]`.
pub fn delta2() -> Result<Fixture> {
    graded("Delta2", 3, 0, &[A, B, C, A ^ B], &[(3, 4, 6)], &[])
}

/// `Delta_0`, `dim g_a = 2`, every other root space one-dimensional.
pub fn u1() -> Result<Fixture> {
    graded("U1", 3, 0, &[A, A, B, C, A ^ B, A ^ C, B ^ C, A ^ B ^ C], &[], &[])
}

/// `Delta_0` with `dims[lambda - 1]` root vectors for `lambda = 1..7` and no
/// brackets between root vectors.
pub fn pattern(dims: [usize; 7]) -> Result<Fixture> {
    let mut roots = Vec::new();
    for (i, &d) in dims.iter().enumerate() {
        roots.extend(std::iter::repeat_n((i + 1) as Root, d));
    }
    let name = format!("pattern{}", dims.iter().map(|d| d.to_string()).collect::<String>());
    graded(&name, 3, 0, &roots, &[], &[])
}

/// Build a restricted algebra from GF(2) matrices (each `m x m`, row-major
/// 0/1 entries) closed under commutator and square.
pub fn matrix_algebra(name: &str, m: usize, basis: &[Vec<u8>]) -> Result<Fixture> {
    let n = basis.len();
    let f = Field::GF2;
    let as_fe = |a: &[u8]| -> Vec<Fe> { a.iter().map(|&x| Fe(x as u16)).collect() };
    let cols: Vec<Vec<Fe>> = basis.iter().map(|b| as_fe(b)).collect();
    let frame = Matrix::from_columns(f, m * m, &cols)?;
    if frame.rank() != n {
        return Err(Error::InvalidParams(format!("{name}: basis matrices are dependent")));
    }
    let mul = |a: &[u8], b: &[u8]| -> Vec<u8> {
        let mut out = vec![0u8; m * m];
        for i in 0..m {
            for k in 0..m {
                if a[i * m + k] == 1 {
                    for j in 0..m {
                        out[i * m + j] ^= b[k * m + j];
                    }
                }
            }
        }
        out
    };
    let coords = |v: &[u8]| -> Result<Vec<Fe>> {
        solve(&frame, &as_fe(v))?.ok_or_else(|| Error::FixtureUnverified {
            name: name.into(),
            detail: "span not closed under commutator or square".into(),
        })
    };
    let mut g = LieAlgebra::abelian(f, n);
    for i in 0..n {
        for j in i + 1..n {
            let ab = mul(&basis[i], &basis[j]);
            let ba = mul(&basis[j], &basis[i]);
            let comm: Vec<u8> = ab.iter().zip(&ba).map(|(x, y)| x ^ y).collect();
            let c = coords(&comm)?;
            g.set_bracket(i, j, &c)?;
            g.set_bracket(j, i, &c)?;
        }
    }
    let images = basis.iter().map(|b| coords(&mul(b, b))).collect::<Result<Vec<_>>>()?;
    verified(name, g, TwoMap::new(images))
}

fn unit_matrix(m: usize, i: usize, j: usize) -> Vec<u8> {
    let mut e = vec![0u8; m * m];
    e[i * m + j] = 1;
    e
}

/// `gl(n)` over GF(2), basis `E_11, E_12, .., E_nn` row by row.
pub fn gl(n: usize) -> Result<Fixture> {
    if n == 0 {
        return Err(Error::InvalidParams("gl needs n >= 1".into()));
    }
    let basis: Vec<Vec<u8>> = (0..n).flat_map(|i| (0..n).map(move |j| unit_matrix(n, i, j))).collect();
    matrix_algebra(&format!("gl{n}"), n, &basis)
}

/// Trace-zero matrices: off-diagonal `E_ij`, then `E_ii + E_nn`.
pub fn sl(n: usize) -> Result<Fixture> {
    if n < 2 {
        return Err(Error::InvalidParams("sl needs n >= 2".into()));
    }
    let mut basis: Vec<Vec<u8>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(unit_matrix(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        let mut d = unit_matrix(n, i, i);
        d[(n - 1) * n + n - 1] = 1;
        basis.push(d);
    }
    matrix_algebra(&format!("sl{n}"), n, &basis)
}

/// Diagonal torus coloured by `colors` plus strictly upper-triangular
/// matrices. Torus element `t_i` is the diagonal matrix of bit `i` of the
/// colours, so `E_jk` has root `colors[j] + colors[k]`.
pub fn upper_triangular(colors: &[Root]) -> Result<Fixture> {
    let m = colors.len();
    let mut basis = Vec::new();
    for i in 0..3 {
        let mut t = vec![0u8; m * m];
        for (j, &c) in colors.iter().enumerate() {
            t[j * m + j] = c >> i & 1;
        }
        basis.push(t);
    }
    for j in 0..m {
        for k in j + 1..m {
            basis.push(unit_matrix(m, j, k));
        }
    }
    let name = format!("upper{}", colors.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("_"));
    matrix_algebra(&name, m, &basis)
}

/// `Delta_0` with `dim g_{a+b} = dim g_{a+c} = dim g_{b+c} = 2` and
/// nonzero brackets between root spaces; dimension 13.
pub fn u2() -> Result<Fixture> {
    let (g, tm) = upper_triangular(&[0, A, B, C, A ^ B ^ C])?;
    Ok((g.with_name("U2"), tm))
}

/// Roots `a, b, c, a+b, a+c, b+c`; dimension 9.
pub fn delta6() -> Result<Fixture> {
    let (g, tm) = upper_triangular(&[0, A, B, C])?;
    Ok((g.with_name("Delta6"), tm))
}

/// Jacobson-Witt algebra `W(m;1)`: derivations `x^a d_i` of the truncated
/// polynomial ring in `m` variables with `x_j^2 = 0`, as matrices on its
/// monomial basis. Basis ordered by `i`, then by the exponent mask `a`.
pub fn witt(m: usize) -> Result<Fixture> {
    if m == 0 || m > 3 {
        return Err(Error::InvalidParams("witt needs 1 <= m <= 3".into()));
    }
    let size = 1usize << m;
    let mut basis = Vec::new();
    for i in 0..m {
        for a in 0..size {
            let mut d = vec![0u8; size * size];
            for b in 0..size {
                if b >> i & 1 == 1 {
                    let rest = b ^ (1 << i);
                    if a & rest == 0 {
                        d[(a | rest) * size + b] = 1;
                    }
                }
            }
            basis.push(d);
        }
    }
    matrix_algebra(&format!("W{m}"), size, &basis)
}

/// Look up a fixture by specification string: `torus:R`, `gl:N`, `sl:N`,
/// `witt:M`, `pattern:DDDDDDD`, `upper:C,C,..`, or one of `F6`, `F7`, `F6n`,
/// `U1`, `U2`, `Delta2`, `Delta6`.
pub fn by_name(spec: &str) -> Result<Fixture> {
    let (name, param) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let number = || -> Result<usize> {
        param
            .ok_or_else(|| Error::InvalidParams(format!("`{name}` needs a parameter")))?
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad parameter for `{name}`")))
    };
    match name {
        "torus" => torus(number()?),
        "gl" => gl(number()?),
        "sl" => sl(number()?),
        "witt" | "W" => witt(number()?),
        "pattern" => {
            let p = param.unwrap_or_default();
            let digits: Vec<usize> = p.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect();
            if digits.len() != 7 || p.len() != 7 {
                return Err(Error::InvalidParams("pattern needs seven digits".into()));
            }
            pattern(digits.try_into().expect("seven digits"))
        }
        "upper" => {
            let colors = param
                .unwrap_or_default()
                .split(',')
                .map(|c| c.trim().parse::<Root>().ok().filter(|&r| r < 8))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidParams("colours must be integers 0..7".into()))?;
            upper_triangular(&colors)
        }
        "F6" => f6(),
        "F7" => f7(),
        "F6n" => f6n(),
        "U1" => u1(),
        "U2" => u2(),
        "Delta2" => delta2(),
        "Delta6" => delta6(),
        _ => Err(Error::UnknownFixture(spec.into())),
    }
}

/// The named fixtures shipped with the project, in suite order.
pub const SHIPPED: &[&str] = &[
    "torus:1", "torus:2", "torus:3", "torus:4", "F6", "F7", "F6n", "U1", "U2", "Delta2", "Delta6", "gl:2", "gl:3",
    "sl:2", "witt:2",
];

/// Dimension patterns in `{1,2}^7` with total dimension at most 16.
pub fn small_patterns() -> Vec<[usize; 7]> {
    let mut out = Vec::new();
    for m in 0u32..128 {
        let dims: [usize; 7] = std::array::from_fn(|i| 1 + (m >> i & 1) as usize);
        if 3 + dims.iter().sum::<usize>() <= 16 {
            out.push(dims);
        }
    }
    out
}
