//! Independent model of the three curves for oracle tests.
//!
//! Matrices are recovered from complex floating-point multiplication and rounded;
//! points are integer pairs over 12.
#![allow(dead_code)]

use toroidal_orbifold::CurveOrder;

pub type Pt = (i64, i64);

pub fn zeta(n: CurveOrder) -> [[i64; 2]; 2] {
    use std::f64::consts::PI;
    let (wr, wi) = match n {
        CurveOrder::Four => (0.0, 1.0),
        _ => ((PI / 3.0).cos(), (PI / 3.0).sin()),
    };
    let arg = 2.0 * PI / n.n() as f64;
    let (zr, zi) = (arg.cos(), arg.sin());
    // coordinates of a complex number in the basis (1, ω)
    let coords = |re: f64, im: f64| {
        let b = im / wi;
        let a = re - b * wr;
        (a.round() as i64, b.round() as i64)
    };
    let (a, b) = coords(zr, zi);
    let (c, d) = coords(zr * wr - zi * wi, zr * wi + zi * wr);
    [[a, c], [b, d]]
}

pub fn mat_pow(m: [[i64; 2]; 2], e: u32) -> [[i64; 2]; 2] {
    let mut r = [[1, 0], [0, 1]];
    for _ in 0..e {
        r = [
            [
                r[0][0] * m[0][0] + r[0][1] * m[1][0],
                r[0][0] * m[0][1] + r[0][1] * m[1][1],
            ],
            [
                r[1][0] * m[0][0] + r[1][1] * m[1][0],
                r[1][0] * m[0][1] + r[1][1] * m[1][1],
            ],
        ];
    }
    r
}

fn apply(m: [[i64; 2]; 2], p: Pt) -> Pt {
    (
        (m[0][0] * p.0 + m[0][1] * p.1).rem_euclid(12),
        (m[1][0] * p.0 + m[1][1] * p.1).rem_euclid(12),
    )
}

/// Smallest nonzero point of order dividing `k` fixed by `ζ`, or the origin for `n = 6`.
pub fn torsion(n: CurveOrder) -> Pt {
    let k = n.shift_modulus() as i64;
    if k == 1 {
        return (0, 0);
    }
    let z = zeta(n);
    let step = 12 / k;
    let mut best = None;
    for x in 0..k {
        for y in 0..k {
            let p = (x * step, y * step);
            if p != (0, 0) && apply(z, p) == p && best.is_none_or(|b| p < b) {
                best = Some(p);
            }
        }
    }
    best.expect("torsion point")
}

/// `ζ^m p + a t`.
pub fn act(n: CurveOrder, m: u8, a: u8, p: Pt) -> Pt {
    let q = apply(mat_pow(zeta(n), m as u32), p);
    let t = torsion(n);
    (
        (q.0 + a as i64 * t.0).rem_euclid(12),
        (q.1 + a as i64 * t.1).rem_euclid(12),
    )
}

pub fn grid() -> impl Iterator<Item = Pt> {
    (0..12).flat_map(|x| (0..12).map(move |y| (x, y)))
}

/// Precomputed `act` table: `[m][a][x*12+y]`.
pub struct Table {
    pub n: CurveOrder,
    act: Vec<Vec<Vec<usize>>>,
}

impl Table {
    pub fn new(n: CurveOrder) -> Self {
        let act = (0..n.n())
            .map(|m| {
                (0..n.shift_modulus())
                    .map(|a| {
                        grid()
                            .map(|p| {
                                let q = act(n, m, a, p);
                                (q.0 * 12 + q.1) as usize
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Table { n, act }
    }

    pub fn image(&self, m: u8, a: u8, p: usize) -> usize {
        self.act[m as usize][a as usize][p]
    }

    /// Fixed grid points as a 144-bit mask.
    pub fn fixed_mask(&self, m: u8, a: u8) -> Mask144 {
        let mut mask = Mask144::default();
        for p in 0..144 {
            if self.image(m, a, p) == p {
                mask.set(p);
            }
        }
        mask
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct Mask144(pub u128, pub u32);

impl Mask144 {
    pub fn set(&mut self, i: usize) {
        if i < 128 {
            self.0 |= 1 << i;
        } else {
            self.1 |= 1 << (i - 128);
        }
    }

    pub fn and_count(&self, o: &Mask144) -> u32 {
        (self.0 & o.0).count_ones() + (self.1 & o.1).count_ones()
    }
}

use toroidal_orbifold::{GroupElement, Subgroup};

/// Orbifold Euler number `(1/|G|) Σ_{g,h} e(X^g ∩ X^h)` by counting common fixed points.
pub fn stringy_euler(table: &Table, g: &Subgroup) -> i64 {
    let masks: Vec<[Mask144; 3]> = g
        .iter()
        .map(|x| std::array::from_fn(|j| table.fixed_mask(x.twist()[j], x.shift()[j])))
        .collect();
    let twists: Vec<[u8; 3]> = g.iter().map(|x| x.twist()).collect();
    let mut total = 0i64;
    for (a, ma) in masks.iter().enumerate() {
        for (b, mb) in masks.iter().enumerate() {
            let mut term = 1i64;
            for j in 0..3 {
                // a whole curve in the common fixed set contributes e(E) = 0
                if twists[a][j] == 0 && twists[b][j] == 0 {
                    term = 0;
                    break;
                }
                term *= ma[j].and_count(&mb[j]) as i64;
            }
            total += term;
        }
    }
    assert_eq!(total % g.order() as i64, 0);
    total / g.order() as i64
}

/// Shift-change tables `m ↦ (ζ^m − 1)λ / t` over all grid points `λ`, sorted and deduplicated.
pub fn character_scan(n: CurveOrder) -> Vec<Vec<u8>> {
    let t = torsion(n);
    let k = n.shift_modulus();
    let multiples: Vec<Pt> = (0..k as i64)
        .map(|a| ((a * t.0).rem_euclid(12), (a * t.1).rem_euclid(12)))
        .collect();
    let mut out: Vec<Vec<u8>> = grid()
        .filter_map(|l| {
            (0..n.n())
                .map(|m| {
                    let q = act(n, m, 0, l);
                    let d = ((q.0 - l.0).rem_euclid(12), (q.1 - l.1).rem_euclid(12));
                    multiples.iter().position(|&s| s == d).map(|a| a as u8)
                })
                .collect::<Option<Vec<u8>>>()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Acts on grid indices with `x·12 + y` encoding.
pub fn act_element(table: &Table, g: &GroupElement, j: usize, p: usize) -> usize {
    table.image(g.twist()[j], g.shift()[j], p)
}
