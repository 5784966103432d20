// SPDX-License-Identifier: MIT OR Apache-2.0

//! Weighted polygons in exact rational arithmetic and the action of `{±1} × 𝒯` on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::geometry::SystemParams;
use crate::{Error, Result};

/// A point with exact rational coordinates.
pub type RationalPoint = (BigRational, BigRational);

/// Rational convex polygon with a vertical cut line `x = cut_abscissa`, the cut direction
/// `eps` (`+1` upward, `−1` downward) and the relative twisting index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPolygon {
    /// Vertices in clockwise order starting from the lexicographically smallest one.
    pub vertices: Vec<RationalPoint>,
    /// Abscissa of the cut through the focus-focus value.
    pub cut_abscissa: BigRational,
    /// Cut direction.
    pub eps: i8,
    /// Twisting index relative to the first polygon.
    pub twist_offset: i64,
}

/// Exact rational value of a finite `f64`.
pub fn rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or(Error::NonFinite("polygon coordinate"))
}

fn cross(o: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> BigRational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

fn twice_signed_area(v: &[RationalPoint]) -> BigRational {
    let n = v.len();
    (0..n).fold(BigRational::zero(), |acc, i| {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        acc + (&a.0 * &b.1 - &b.0 * &a.1)
    })
}

/// Drops repeated and collinear vertices, orients clockwise and rotates so that the
/// lexicographically smallest vertex comes first.
pub fn canonical_vertices(vertices: Vec<RationalPoint>) -> Result<Vec<RationalPoint>> {
    let mut v: Vec<RationalPoint> = Vec::with_capacity(vertices.len());
    for p in vertices {
        if v.last() != Some(&p) {
            v.push(p);
        }
    }
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    loop {
        let n = v.len();
        if n < 3 {
            return Err(Error::Admissibility(format!("polygon degenerates to {n} vertices")));
        }
        match (0..n).find(|&i| cross(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]).is_zero()) {
            Some(i) => {
                v.remove(i);
            }
            None => break,
        }
    }
    if twice_signed_area(&v).is_positive() {
        v.reverse();
    }
    let start = (0..v.len()).min_by(|&a, &b| v[a].cmp(&v[b])).expect("at least three vertices");
    v.rotate_left(start);
    Ok(v)
}

/// True when consecutive vertices always turn clockwise.
pub fn is_convex(v: &[RationalPoint]) -> bool {
    let n = v.len();
    n >= 3 && (0..n).all(|i| cross(&v[i], &v[(i + 1) % n], &v[(i + 2) % n]).is_negative())
}

fn point(x: f64, y: f64) -> Result<RationalPoint> {
    Ok((rational(x)?, rational(y)?))
}

/// `Δ₁` (cut upward) and `Δ₂` (cut downward) at `t = 1/2`.
pub fn polygons(params: &SystemParams) -> Result<[WeightedPolygon; 2]> {
    params.require_half()?;
    let (r1, r2) = (params.r1(), params.r2());
    let cut = rational(r1 - r2)?;
    let d1 = vec![point(-(r1 + r2), 0.0)?, point(r1 - r2, 2.0 * r1)?, point(r1 + r2, 2.0 * r1)?, point(r2 - r1, 0.0)?];
    let d2 = vec![point(-(r1 + r2), 0.0)?, point(r1 + r2, 0.0)?, point(r2 - r1, -2.0 * r1)?, point(r1 - r2, -2.0 * r1)?];
    Ok([
        WeightedPolygon { vertices: canonical_vertices(d1)?, cut_abscissa: cut.clone(), eps: 1, twist_offset: 0 },
        WeightedPolygon { vertices: canonical_vertices(d2)?, cut_abscissa: cut, eps: -1, twist_offset: -1 },
    ])
}

/// `(δ, τ)·(Δ, ℓ, ε) = (t_ℓⁿ(τ(Δ)), ℓ, δε)` with `n = (ε − δε)/2` and
/// `τ(x, y) = (x, y + k_shift·x + v_shift)`; `t_ℓⁿ` adds `n(x − x₀)` to `y` right of the cut `x = x₀`.
pub fn polygon_group_action(wp: &WeightedPolygon, delta: i8, k_shift: i64, v_shift: &BigRational) -> Result<WeightedPolygon> {
    if delta != 1 && delta != -1 {
        return Err(Error::InvalidParams(format!("delta must be +1 or -1, got {delta}")));
    }
    let k = BigRational::from_integer(BigInt::from(k_shift));
    let moved: Vec<RationalPoint> =
        wp.vertices.iter().map(|(x, y)| (x.clone(), y + &k * x + v_shift)).collect();
    let n = (i64::from(wp.eps) - i64::from(delta) * i64::from(wp.eps)) / 2;
    let x0 = &wp.cut_abscissa;
    let mut split = Vec::with_capacity(moved.len() + 2);
    for i in 0..moved.len() {
        let (a, b) = (&moved[i], &moved[(i + 1) % moved.len()]);
        split.push(a.clone());
        if (&a.0 < x0 && &b.0 > x0) || (&a.0 > x0 && &b.0 < x0) {
            let s = (x0 - &a.0) / (&b.0 - &a.0);
            split.push((x0.clone(), &a.1 + s * (&b.1 - &a.1)));
        }
    }
    let nq = BigRational::from_integer(BigInt::from(n));
    let sheared: Vec<RationalPoint> = split
        .into_iter()
        .map(|(x, y)| if &x > x0 { let dy = &nq * (&x - x0); (x, y + dy) } else { (x, y) })
        .collect();
    let vertices = canonical_vertices(sheared)?;
    if !is_convex(&vertices) {
        return Err(Error::Admissibility("group action produced a non-convex polygon".into()));
    }
    Ok(WeightedPolygon { vertices, cut_abscissa: x0.clone(), eps: delta * wp.eps, twist_offset: wp.twist_offset + k_shift })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_polygon_from_first() {
        let p = SystemParams::new(1.0, 2.5, 0.5).unwrap();
        let [d1, d2] = polygons(&p).unwrap();
        let got = polygon_group_action(&d1, -1, -1, &rational(-3.5).unwrap()).unwrap();
        assert_eq!(got, d2);
    }

    #[test]
    fn identity_action() {
        let p = SystemParams::new(1.0, 2.5, 0.5).unwrap();
        let [d1, _] = polygons(&p).unwrap();
        assert_eq!(polygon_group_action(&d1, 1, 0, &BigRational::zero()).unwrap(), d1);
    }
}
