//! The elliptic curves `E_n = ℂ / (ℤ ⊕ ω_n ℤ)` with their order-`n` automorphism.
//!
//! Points are kept in lattice coordinates `(x, y)`, meaning `x + y·ω_n`, reduced
//! modulo `ℤ²`. Every torsion datum needed for `n ∈ {3, 4, 6}` lives in
//! `(1/12)Λ/Λ`, so a point is stored as a pair of numerators over 12. Multiplication
//! by `ζ_n^m` is an integer matrix acting on column vectors `(x, y)`.
//!
//! Lattice basis: `ω_3 = ω_6 = e^{iπ/3}`, `ω_4 = i`. The curve `E_6` is the same
//! lattice as `E_3`; only the automorphism order differs.

use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Denominator of the working grid.
pub const GRID: u8 = 12;
/// Number of points on the working grid of one curve.
pub const GRID_POINTS: usize = (GRID as usize) * (GRID as usize);

/// The three supported curve orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum CurveOrder {
    Three,
    Four,
    Six,
}

impl CurveOrder {
    pub const ALL: [CurveOrder; 3] = [CurveOrder::Three, CurveOrder::Four, CurveOrder::Six];

    pub fn n(self) -> u8 {
        match self {
            CurveOrder::Three => 3,
            CurveOrder::Four => 4,
            CurveOrder::Six => 6,
        }
    }

    /// `k_n`, the order of the torsion translation `t_n` (1 when `T_n` is trivial).
    pub fn shift_modulus(self) -> u8 {
        match self {
            CurveOrder::Three => 3,
            CurveOrder::Four => 2,
            CurveOrder::Six => 1,
        }
    }

    /// `|V_n| = n² · k_n³`.
    pub fn vafa_witten_order(self) -> usize {
        let n = self.n() as usize;
        let k = self.shift_modulus() as usize;
        n * n * k * k * k
    }

    /// Roman label used in table case ids: `III`, `IV`, `VI`.
    pub fn roman(self) -> &'static str {
        match self {
            CurveOrder::Three => "III",
            CurveOrder::Four => "IV",
            CurveOrder::Six => "VI",
        }
    }
}

impl TryFrom<u8> for CurveOrder {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        CurveOrder::try_from(n as i64)
    }
}

impl TryFrom<i64> for CurveOrder {
    type Error = Error;

    fn try_from(n: i64) -> Result<Self> {
        match n {
            3 => Ok(CurveOrder::Three),
            4 => Ok(CurveOrder::Four),
            6 => Ok(CurveOrder::Six),
            other => Err(Error::UnsupportedOrder(other)),
        }
    }
}

impl From<CurveOrder> for u8 {
    fn from(n: CurveOrder) -> u8 {
        n.n()
    }
}

impl fmt::Display for CurveOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())
    }
}

/// A point of `E_n` on the 1/12 grid, in lattice coordinates.
///
/// Ordering is lexicographic on `(x, y)`, which coincides with the ordering of the
/// underlying residues in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    x: u8,
    y: u8,
}

impl TorusPoint {
    pub const ORIGIN: TorusPoint = TorusPoint { x: 0, y: 0 };

    /// Builds a point from numerators over 12, reducing them mod 12.
    pub fn from_twelfths(x: i64, y: i64) -> Self {
        let g = GRID as i64;
        TorusPoint {
            x: x.rem_euclid(g) as u8,
            y: y.rem_euclid(g) as u8,
        }
    }

    /// Builds a point from arbitrary rationals; fails unless both denominators divide 12.
    pub fn new(x: Ratio<i64>, y: Ratio<i64>) -> Result<Self> {
        let on_grid = |r: Ratio<i64>| -> Result<i64> {
            let scaled = r * Ratio::from_integer(GRID as i64);
            if scaled.is_integer() {
                Ok(scaled.to_integer())
            } else {
                Err(Error::OffGrid(r.to_string()))
            }
        };
        Ok(Self::from_twelfths(on_grid(x)?, on_grid(y)?))
    }

    pub fn x(self) -> Ratio<i64> {
        Ratio::new(self.x as i64, GRID as i64)
    }

    pub fn y(self) -> Ratio<i64> {
        Ratio::new(self.y as i64, GRID as i64)
    }

    pub fn twelfths(self) -> (u8, u8) {
        (self.x, self.y)
    }

    pub fn is_origin(self) -> bool {
        self == Self::ORIGIN
    }

    /// Dense index into the 144-point grid.
    pub fn grid_index(self) -> usize {
        self.x as usize * GRID as usize + self.y as usize
    }

    pub fn from_grid_index(i: usize) -> Self {
        debug_assert!(i < GRID_POINTS);
        TorusPoint {
            x: (i / GRID as usize) as u8,
            y: (i % GRID as usize) as u8,
        }
    }

    pub fn add(self, other: TorusPoint) -> TorusPoint {
        Self::from_twelfths(
            self.x as i64 + other.x as i64,
            self.y as i64 + other.y as i64,
        )
    }

    pub fn scale(self, k: i64) -> TorusPoint {
        Self::from_twelfths(self.x as i64 * k, self.y as i64 * k)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x(), self.y())
    }
}

/// Every point of the 1/12 grid, in ascending order.
pub fn grid_points() -> impl Iterator<Item = TorusPoint> {
    (0..GRID_POINTS).map(TorusPoint::from_grid_index)
}

/// A 2×2 integer matrix acting on column vectors `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub rows: [[i64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        rows: [[1, 0], [0, 1]],
    };

    pub fn new(rows: [[i64; 2]; 2]) -> Self {
        Mat2 { rows }
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.rows;
        let b = &other.rows;
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2 { rows: out }
    }

    pub fn pow(&self, e: u32) -> Mat2 {
        (0..e).fold(Mat2::IDENTITY, |acc, _| acc.mul(self))
    }

    pub fn det(&self) -> i64 {
        self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]
    }

    pub fn minus_identity(&self) -> Mat2 {
        let mut rows = self.rows;
        rows[0][0] -= 1;
        rows[1][1] -= 1;
        Mat2 { rows }
    }

    pub fn apply(&self, p: TorusPoint) -> TorusPoint {
        let (x, y) = (p.x as i64, p.y as i64);
        TorusPoint::from_twelfths(
            self.rows[0][0] * x + self.rows[0][1] * y,
            self.rows[1][0] * x + self.rows[1][1] * y,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rows;
        write!(f, "[[{},{}],[{},{}]]", r[0][0], r[0][1], r[1][0], r[1][1])
    }
}

/// Multiplication by `ζ_n` in the basis `(1, ω_n)`.
fn zeta_generator(n: CurveOrder) -> Mat2 {
    match n {
        // ζ₃·1 = ω − 1, ζ₃·ω = −1
        CurveOrder::Three => Mat2::new([[-1, -1], [1, 0]]),
        // i·1 = i, i·i = −1
        CurveOrder::Four => Mat2::new([[0, -1], [1, 0]]),
        // ω·1 = ω, ω·ω = ω − 1
        CurveOrder::Six => Mat2::new([[0, -1], [1, 1]]),
    }
}

fn check_twist(n: CurveOrder, m: u8) -> Result<()> {
    if m >= n.n() {
        return Err(Error::OutOfRange {
            what: "twist",
            value: m as i64,
            bound: n.n() as i64,
        });
    }
    Ok(())
}

fn check_shift(n: CurveOrder, a: u8) -> Result<()> {
    if n.shift_modulus() == 1 && a != 0 {
        return Err(Error::TorsionTrivial);
    }
    if a >= n.shift_modulus() {
        return Err(Error::OutOfRange {
            what: "shift",
            value: a as i64,
            bound: n.shift_modulus() as i64,
        });
    }
    Ok(())
}

/// Integer matrix of multiplication by `ζ_n^m`.
pub fn zeta_matrix(n: CurveOrder, m: u8) -> Result<Mat2> {
    check_twist(n, m)?;
    Ok(zeta_generator(n).pow(m as u32))
}

/// The lexicographically smallest nonzero generator of `ker(ζ_n − 1)` on `E_n`.
///
/// Found by scanning the points of order dividing `k_n`. Fails for `n = 6`, where the
/// kernel is trivial.
pub fn torsion_translation(n: CurveOrder) -> Result<TorusPoint> {
    if n.shift_modulus() == 1 {
        return Err(Error::TorsionTrivial);
    }
    let shifted = zeta_generator(n).minus_identity();
    let k = n.shift_modulus() as i64;
    grid_points()
        .filter(|p| !p.is_origin())
        .filter(|p| p.scale(k).is_origin())
        .find(|p| shifted.apply(*p).is_origin())
        .ok_or_else(|| Error::Consistency(format!("no torsion translation for n = {n}")))
}

/// Static description of one curve `E_n` with its automorphism and translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub n: CurveOrder,
    pub zeta_order: u8,
    pub shift_modulus: u8,
    /// Coordinates of `t_n`; the origin when `k_n = 1`.
    pub t_coords: TorusPoint,
}

impl CurveModel {
    pub fn new(n: CurveOrder) -> Self {
        CurveModel {
            n,
            zeta_order: n.n(),
            shift_modulus: n.shift_modulus(),
            t_coords: torsion_translation(n).unwrap_or(TorusPoint::ORIGIN),
        }
    }
}

/// Precomputed action and fixed-point tables for one curve order.
struct Tables {
    /// `act[m][a][p]`: grid index of `ζ^m p + a t`.
    act: Vec<Vec<Vec<u8>>>,
    /// `fixed[m][a]`: sorted fixed points of `p ↦ ζ^m p + a t`, for `m ≠ 0`.
    fixed: Vec<Vec<Vec<TorusPoint>>>,
}

fn tables(n: CurveOrder) -> &'static Tables {
    static CELLS: [OnceLock<Tables>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = match n {
        CurveOrder::Three => 0,
        CurveOrder::Four => 1,
        CurveOrder::Six => 2,
    };
    CELLS[idx].get_or_init(|| build_tables(n))
}

fn build_tables(n: CurveOrder) -> Tables {
    let t = CurveModel::new(n).t_coords;
    let k = n.shift_modulus();
    let mut act = Vec::with_capacity(n.n() as usize);
    let mut fixed = Vec::with_capacity(n.n() as usize);
    for m in 0..n.n() {
        let z = zeta_generator(n).pow(m as u32);
        let mut by_shift = Vec::with_capacity(k as usize);
        let mut fixed_by_shift = Vec::with_capacity(k as usize);
        for a in 0..k {
            let offset = t.scale(a as i64);
            let row: Vec<u8> = grid_points()
                .map(|p| z.apply(p).add(offset).grid_index() as u8)
                .collect();
            let fix: Vec<TorusPoint> = grid_points()
                .filter(|p| row[p.grid_index()] as usize == p.grid_index())
                .collect();
            by_shift.push(row);
            fixed_by_shift.push(fix);
        }
        act.push(by_shift);
        fixed.push(fixed_by_shift);
    }
    Tables { act, fixed }
}

/// `ζ_n^m p + a t_n`, unchecked; `m < n`, `a < k_n`.
#[inline]
pub(crate) fn act_raw(n: CurveOrder, m: u8, a: u8, p: TorusPoint) -> TorusPoint {
    TorusPoint::from_grid_index(tables(n).act[m as usize][a as usize][p.grid_index()] as usize)
}

/// Fixed points of `p ↦ ζ^m p + a t`, unchecked, `m ≠ 0`.
pub(crate) fn fixed_raw(n: CurveOrder, m: u8, a: u8) -> &'static [TorusPoint] {
    &tables(n).fixed[m as usize][a as usize]
}

/// Applies the affine map `p ↦ ζ_n^m p + a·t_n`, reduced mod `ℤ²`.
pub fn act_affine(n: CurveOrder, m: u8, a: u8, p: TorusPoint) -> Result<TorusPoint> {
    check_twist(n, m)?;
    check_shift(n, a)?;
    Ok(act_raw(n, m, a, p))
}

/// All solutions of `(ζ_n^m − 1) p ≡ −a·t_n (mod ℤ²)`, in ascending order.
///
/// Solved by exhaustive scan of the 1/12 grid; `m = 0` is rejected because the fixed
/// set is then the whole curve or empty.
pub fn solve_twisted_fixed_points(n: CurveOrder, m: u8, a: u8) -> Result<Vec<TorusPoint>> {
    check_twist(n, m)?;
    check_shift(n, a)?;
    if m == 0 {
        return Err(Error::Contract(
            "untwisted map: fixed set is the whole curve or empty".into(),
        ));
    }
    Ok(fixed_raw(n, m, a).to_vec())
}
