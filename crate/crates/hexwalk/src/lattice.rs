//! Exact geometry of the honeycomb lattice and its mid-edge graph.
//!
//! The embedding fixes every edge of the hexagonal lattice to length
//! sqrt(3)/3 with the origin at the midpoint of a vertical edge.  All
//! coordinates live on an integer grid: x in units of 1/4, y in units of
//! sqrt(3)/12.  On that grid
//!
//!   * vertical-edge midpoints have even `xq`, `yq = 0 (mod 6)` and the
//!     coupling `xq = yq/3 (mod 4)`;
//!   * slanted-edge midpoints have odd `xq` and `yq = 3 (mod 6)` (both odd
//!     residues of `xq` occur; the residue picks the slant direction);
//!   * lattice vertices have even `xq`, `yq = ±2 (mod 6)` and the coupling
//!     `xq = (yq ∓ 2)/3 (mod 4)`.
//!
//! Every predicate below is an integer sign test; no floating point.

use std::cmp::Ordering;

use num::rational::BigRational;
use num::{BigInt, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid coordinate (x in units of 1/4, y in units of sqrt(3)/12).
pub type Coord = i64;

// ---------------------------------------------------------------------------
// Mid-edges
// ---------------------------------------------------------------------------

/// Which kind of lattice edge a mid-edge sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MidKind {
    /// Midpoint of a vertical edge.
    Vertical,
    /// Midpoint of a slanted edge running lower-left to upper-right ("/").
    SlantUp,
    /// Midpoint of a slanted edge running upper-left to lower-right ("\").
    SlantDown,
}

/// A mid-edge of the hexagonal lattice: a vertex of the walk graph H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct MidEdge {
    pub xq: Coord,
    pub yq: Coord,
}

impl From<MidEdge> for (i64, i64) {
    fn from(m: MidEdge) -> Self {
        (m.xq, m.yq)
    }
}

impl TryFrom<(i64, i64)> for MidEdge {
    type Error = Error;
    fn try_from(p: (i64, i64)) -> Result<Self> {
        MidEdge::new(p.0, p.1)
    }
}

impl MidEdge {
    pub const ORIGIN: MidEdge = MidEdge { xq: 0, yq: 0 };

    pub fn new(xq: Coord, yq: Coord) -> Result<MidEdge> {
        if Self::valid_coords(xq, yq) {
            Ok(MidEdge { xq, yq })
        } else {
            Err(Error::InvalidMidEdge(xq, yq))
        }
    }

    pub fn valid_coords(xq: Coord, yq: Coord) -> bool {
        match yq.rem_euclid(6) {
            0 => xq.rem_euclid(2) == 0 && (xq - yq / 3).rem_euclid(4) == 0,
            3 => xq.rem_euclid(2) == 1,
            _ => false,
        }
    }

    pub fn kind(&self) -> MidKind {
        if self.yq.rem_euclid(6) == 0 {
            MidKind::Vertical
        } else {
            let n = (self.yq - 3).div_euclid(6);
            if (self.xq - (2 * n + 1)).rem_euclid(4) == 0 {
                MidKind::SlantUp
            } else {
                MidKind::SlantDown
            }
        }
    }

    /// The two lattice vertices bounding this mid-edge's edge, sorted.
    pub fn endpoints(&self) -> [LatticeVertex; 2] {
        let (x, y) = (self.xq, self.yq);
        let raw = match self.kind() {
            MidKind::Vertical => [(x, y - 2), (x, y + 2)],
            MidKind::SlantUp => [(x - 1, y - 1), (x + 1, y + 1)],
            MidKind::SlantDown => [(x - 1, y + 1), (x + 1, y - 1)],
        };
        let mut vs = [
            LatticeVertex { xq: raw[0].0, yq: raw[0].1 },
            LatticeVertex { xq: raw[1].0, yq: raw[1].1 },
        ];
        if (vs[1].xq, vs[1].yq) < (vs[0].xq, vs[0].yq) {
            vs.swap(0, 1);
        }
        vs
    }

    /// The four adjacent mid-edges, each paired with the shared lattice
    /// vertex, in lexicographic (xq, yq) order of the neighbor.
    pub fn neighbors(&self) -> [(MidEdge, LatticeVertex); 4] {
        let (x, y) = (self.xq, self.yq);
        // (neighbor, shared vertex), assembled already sorted by neighbor.
        let raw: [((Coord, Coord), (Coord, Coord)); 4] = match self.kind() {
            MidKind::Vertical => [
                ((x - 1, y - 3), (x, y - 2)),
                ((x - 1, y + 3), (x, y + 2)),
                ((x + 1, y - 3), (x, y - 2)),
                ((x + 1, y + 3), (x, y + 2)),
            ],
            MidKind::SlantUp => [
                ((x - 2, y), (x - 1, y - 1)),
                ((x - 1, y - 3), (x - 1, y - 1)),
                ((x + 1, y + 3), (x + 1, y + 1)),
                ((x + 2, y), (x + 1, y + 1)),
            ],
            MidKind::SlantDown => [
                ((x - 2, y), (x - 1, y + 1)),
                ((x - 1, y + 3), (x - 1, y + 1)),
                ((x + 1, y - 3), (x + 1, y - 1)),
                ((x + 2, y), (x + 1, y - 1)),
            ],
        };
        raw.map(|((mx, my), (vx, vy))| {
            debug_assert!(MidEdge::valid_coords(mx, my), "neighbor off-grid");
            debug_assert!(LatticeVertex::valid_coords(vx, vy), "vertex off-grid");
            (MidEdge { xq: mx, yq: my }, LatticeVertex { xq: vx, yq: vy })
        })
    }

    pub fn is_adjacent(&self, other: &MidEdge) -> bool {
        self.neighbors().iter().any(|(m, _)| m == other)
    }

    /// Exact embedded coordinates: (xq/4, (yq/12)*sqrt(3)).
    pub fn embed(&self) -> EmbedPoint {
        EmbedPoint::from_grid(self.xq, self.yq)
    }

    /// 3*dx^2 + dy^2: the squared Euclidean distance in units of 1/48.
    pub fn dist2_num(&self, other: &MidEdge) -> i64 {
        let dx = self.xq - other.xq;
        let dy = self.yq - other.yq;
        3 * dx * dx + dy * dy
    }
}

// ---------------------------------------------------------------------------
// Lattice vertices
// ---------------------------------------------------------------------------

/// Whether a vertex is the top or the bottom endpoint of its vertical edge.
/// Top vertices carry two slant edges above, bottom vertices two below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Top,
    Bottom,
}

/// A vertex of the hexagonal lattice (meets exactly 3 edges / 3 mid-edges).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct LatticeVertex {
    pub xq: Coord,
    pub yq: Coord,
}

impl From<LatticeVertex> for (i64, i64) {
    fn from(v: LatticeVertex) -> Self {
        (v.xq, v.yq)
    }
}

impl TryFrom<(i64, i64)> for LatticeVertex {
    type Error = Error;
    fn try_from(p: (i64, i64)) -> Result<Self> {
        LatticeVertex::new(p.0, p.1)
    }
}

impl LatticeVertex {
    pub fn new(xq: Coord, yq: Coord) -> Result<LatticeVertex> {
        if Self::valid_coords(xq, yq) {
            Ok(LatticeVertex { xq, yq })
        } else {
            Err(Error::InvalidVertex(xq, yq))
        }
    }

    pub fn valid_coords(xq: Coord, yq: Coord) -> bool {
        if xq.rem_euclid(2) != 0 {
            return false;
        }
        match yq.rem_euclid(6) {
            2 => (xq - (yq - 2) / 3).rem_euclid(4) == 0,
            4 => (xq - (yq + 2) / 3).rem_euclid(4) == 0,
            _ => false,
        }
    }

    pub fn kind(&self) -> VertexKind {
        if self.yq.rem_euclid(6) == 2 {
            VertexKind::Top
        } else {
            VertexKind::Bottom
        }
    }

    /// The three mid-edges incident to this vertex, sorted.
    pub fn mid_edges(&self) -> [MidEdge; 3] {
        let (x, y) = (self.xq, self.yq);
        let raw = match self.kind() {
            VertexKind::Top => [(x - 1, y + 1), (x, y - 2), (x + 1, y + 1)],
            VertexKind::Bottom => [(x - 1, y - 1), (x, y + 2), (x + 1, y - 1)],
        };
        let mut ms = raw.map(|(mx, my)| {
            debug_assert!(MidEdge::valid_coords(mx, my));
            MidEdge { xq: mx, yq: my }
        });
        ms.sort();
        ms
    }

    pub fn embed(&self) -> EmbedPoint {
        EmbedPoint::from_grid(self.xq, self.yq)
    }
}

// ---------------------------------------------------------------------------
// Steps and turns
// ---------------------------------------------------------------------------

/// The lattice vertex shared by an adjacent pair, i.e. the vertex the curve
/// passes through on the step a -> b.
pub fn step_vertex(a: &MidEdge, b: &MidEdge) -> Result<LatticeVertex> {
    for (m, v) in a.neighbors() {
        if &m == b {
            return Ok(v);
        }
    }
    Err(Error::NotAdjacent(*a, *b))
}

/// Turn sign of the step a -> b: the curve travels along a's edge into the
/// shared vertex and rotates onto b's edge by +pi/3 (counterclockwise, +1)
/// or -pi/3 (-1).  Computed as an exact cross-product sign.
pub fn step_turn(a: &MidEdge, b: &MidEdge) -> Result<i8> {
    let v = step_vertex(a, b)?;
    // Incoming half-edge vector v - a, outgoing half-edge vector b - v; the
    // anisotropic grid scaling is positive-diagonal so the sign is the grid
    // cross product's sign.
    let (ux, uy) = (v.xq - a.xq, v.yq - a.yq);
    let (wx, wy) = (b.xq - v.xq, b.yq - v.yq);
    let cross = ux * wy - uy * wx;
    debug_assert!(cross != 0, "consecutive half-edges are never collinear");
    Ok(if cross > 0 { 1 } else { -1 })
}

/// Turn sign at the second step of the 2-step segment a -> b -> c.
pub fn turn_sign(a: &MidEdge, b: &MidEdge, c: &MidEdge) -> Result<i8> {
    let v_in = step_vertex(a, b)?;
    let v_out = step_vertex(b, c)?;
    if v_in == v_out {
        return Err(Error::InvalidWalk(format!(
            "backtracking triple through vertex ({}, {})",
            v_in.xq, v_in.yq
        )));
    }
    if a == c {
        return Err(Error::InvalidWalk("triple revisits its first mid-edge".into()));
    }
    step_turn(b, c)
}

// ---------------------------------------------------------------------------
// Walks
// ---------------------------------------------------------------------------

/// A self-avoiding walk on mid-edges.  Invariants (all checked on
/// construction): consecutive mid-edges adjacent, all mid-edges distinct,
/// and consecutive steps pass through the two distinct endpoints of the
/// middle mid-edge's lattice edge (curve self-avoidance).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<MidEdge>", into = "Vec<MidEdge>")]
pub struct Walk {
    mids: Vec<MidEdge>,
}

impl From<Walk> for Vec<MidEdge> {
    fn from(w: Walk) -> Self {
        w.mids
    }
}

impl TryFrom<Vec<MidEdge>> for Walk {
    type Error = Error;
    fn try_from(mids: Vec<MidEdge>) -> Result<Self> {
        Walk::new(mids)
    }
}

impl Walk {
    pub fn new(mids: Vec<MidEdge>) -> Result<Walk> {
        if mids.is_empty() {
            return Err(Error::InvalidWalk("empty mid-edge sequence".into()));
        }
        let mut seen = std::collections::HashSet::with_capacity(mids.len());
        for m in &mids {
            if !seen.insert(*m) {
                return Err(Error::InvalidWalk(format!(
                    "mid-edge ({}, {}) visited twice",
                    m.xq, m.yq
                )));
            }
        }
        let mut prev_vertex: Option<LatticeVertex> = None;
        for i in 1..mids.len() {
            let v = step_vertex(&mids[i - 1], &mids[i])?;
            if prev_vertex == Some(v) {
                return Err(Error::InvalidWalk(format!(
                    "consecutive steps reuse lattice vertex ({}, {})",
                    v.xq, v.yq
                )));
            }
            prev_vertex = Some(v);
        }
        Ok(Walk { mids })
    }

    pub fn trivial(start: MidEdge) -> Walk {
        Walk { mids: vec![start] }
    }

    /// Construct without re-validating.  For internal use where the
    /// invariants hold by construction (e.g. the enumerator's DFS stack).
    pub(crate) fn from_mids_unchecked(mids: Vec<MidEdge>) -> Walk {
        debug_assert!(Walk::new(mids.clone()).is_ok());
        Walk { mids }
    }

    pub fn mids(&self) -> &[MidEdge] {
        &self.mids
    }

    /// Walk length: the number of steps (= lattice vertices traversed).
    /// The trivial walk has length 0.
    pub fn len(&self) -> usize {
        self.mids.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.mids.len() == 1
    }

    pub fn start(&self) -> MidEdge {
        self.mids[0]
    }

    pub fn end(&self) -> MidEdge {
        *self.mids.last().unwrap()
    }

    pub fn steps(&self) -> impl Iterator<Item = (&MidEdge, &MidEdge)> {
        self.mids.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Winding number in units of pi/3: the sum of the turn signs at the
    /// lattice vertices the curve traverses, one per step.
    pub fn winding(&self) -> i64 {
        self.steps()
            .map(|(a, b)| step_turn(a, b).expect("validated walk") as i64)
            .sum()
    }

    pub fn reverse(&self) -> Walk {
        let mut mids = self.mids.clone();
        mids.reverse();
        Walk { mids }
    }

    pub fn translate(&self, tx: Coord, ty: Coord) -> Result<Walk> {
        if !is_lattice_translation(tx, ty) {
            return Err(Error::Contract(format!(
                "({tx}, {ty}) is not a lattice translation"
            )));
        }
        Ok(Walk {
            mids: self
                .mids
                .iter()
                .map(|m| MidEdge { xq: m.xq + tx, yq: m.yq + ty })
                .collect(),
        })
    }

    /// Rotate the whole walk by pi about a mid-edge (a lattice symmetry).
    pub fn rotate180_about(&self, c: &MidEdge) -> Walk {
        Walk {
            mids: self
                .mids
                .iter()
                .map(|m| MidEdge { xq: 2 * c.xq - m.xq, yq: 2 * c.yq - m.yq })
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Lattice symmetries
// ---------------------------------------------------------------------------

/// Translations of the honeycomb are generated by (4, 0) and (2, 6); the
/// valid vectors satisfy ty = 0 (mod 6) and tx = ty/3 (mod 4).
pub fn is_lattice_translation(tx: Coord, ty: Coord) -> bool {
    ty.rem_euclid(6) == 0 && (tx - ty / 3).rem_euclid(4) == 0
}

/// Hexagon centers sit at (2 + 4m + 2n, 6n).
pub fn is_hexagon_center(cx: Coord, cy: Coord) -> bool {
    cy.rem_euclid(6) == 0 && (cx - cy / 3 - 2).rem_euclid(4) == 0
}

/// Rotate a grid point by k*60 degrees counterclockwise about the origin.
/// Exact on the grid whenever xq = yq (mod 2), which holds for mid-edges,
/// vertices, hexagon centers and their differences.
pub fn rotate60_grid(xq: Coord, yq: Coord, k: i32) -> (Coord, Coord) {
    debug_assert!((xq - yq).rem_euclid(2) == 0);
    let (mut x, mut y) = (xq, yq);
    let steps = k.rem_euclid(6);
    for _ in 0..steps {
        let nx = (x - y) / 2;
        let ny = (3 * x + y) / 2;
        x = nx;
        y = ny;
    }
    (x, y)
}

/// Rotate a mid-edge by k*60 degrees about a hexagon center.  Only a
/// symmetry of the lattice when (cx, cy) is a hexagon center.
pub fn rotate_about_hex_center(
    c: (Coord, Coord),
    m: &MidEdge,
    k: i32,
) -> Result<MidEdge> {
    if !is_hexagon_center(c.0, c.1) {
        return Err(Error::Contract(format!(
            "({}, {}) is not a hexagon center",
            c.0, c.1
        )));
    }
    let (dx, dy) = rotate60_grid(m.xq - c.0, m.yq - c.1, k);
    MidEdge::new(c.0 + dx, c.1 + dy)
}

// ---------------------------------------------------------------------------
// Exact embedding
// ---------------------------------------------------------------------------

/// An exact embedded point (x, y_s3 * sqrt(3)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedPoint {
    pub x: BigRational,
    pub y_s3: BigRational,
}

impl EmbedPoint {
    pub fn from_grid(xq: Coord, yq: Coord) -> EmbedPoint {
        EmbedPoint {
            x: BigRational::new(BigInt::from(xq), BigInt::from(4)),
            y_s3: BigRational::new(BigInt::from(yq), BigInt::from(12)),
        }
    }

    /// Squared Euclidean distance (exact rational): dx^2 + 3*dys^2.
    pub fn dist2(&self, other: &EmbedPoint) -> BigRational {
        let dx = &self.x - &other.x;
        let dy = &self.y_s3 - &other.y_s3;
        &dx * &dx + BigRational::from(BigInt::from(3)) * &dy * &dy
    }
}

/// Supported projection directions e^{i theta}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjAxis {
    PiOver2,
    PiOver6,
}

/// An exact element of Q + Q*sqrt(3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactProj {
    pub rat: BigRational,
    pub s3: BigRational,
}

impl ExactProj {
    pub fn zero() -> ExactProj {
        ExactProj { rat: BigRational::zero(), s3: BigRational::zero() }
    }

    /// Exact sign of rat + s3*sqrt(3).
    pub fn sign(&self) -> Ordering {
        let (r, s) = (&self.rat, &self.s3);
        if r.is_zero() && s.is_zero() {
            return Ordering::Equal;
        }
        if !r.is_negative() && !s.is_negative() {
            return Ordering::Greater;
        }
        if !r.is_positive() && !s.is_positive() {
            return Ordering::Less;
        }
        // Opposite strict signs: compare r^2 with 3 s^2.
        let r2 = r * r;
        let s2 = BigRational::from(BigInt::from(3)) * s * s;
        if r.is_positive() {
            if r2 > s2 { Ordering::Greater } else { Ordering::Less }
        } else if s2 > r2 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

/// Exact inner product of an embedded point with e^{i theta}.
pub fn project(p: &EmbedPoint, theta: ProjAxis) -> ExactProj {
    match theta {
        // (0,1) . (x, y_s3*sqrt3) = y_s3 * sqrt3
        ProjAxis::PiOver2 => ExactProj { rat: BigRational::zero(), s3: p.y_s3.clone() },
        // (sqrt3/2, 1/2) . (x, y_s3*sqrt3) = (x + y_s3)/2 * sqrt3
        ProjAxis::PiOver6 => ExactProj {
            rat: BigRational::zero(),
            s3: (&p.x + &p.y_s3) / BigRational::from(BigInt::from(2)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn me(x: i64, y: i64) -> MidEdge {
        MidEdge::new(x, y).unwrap()
    }

    #[test]
    fn origin_is_a_vertical_mid_edge() {
        let o = MidEdge::ORIGIN;
        assert_eq!(o.kind(), MidKind::Vertical);
        assert!(MidEdge::new(2, 0).is_err());
        assert!(MidEdge::new(1, 3).is_ok());
        assert!(MidEdge::new(2, 6).is_ok());
        assert!(MidEdge::new(0, 6).is_err());
    }

    #[test]
    fn embed_examples() {
        // (1,3) -> (1/4, sqrt3/4); (2,6) -> (1/2, sqrt3/2)
        let p = me(1, 3).embed();
        assert_eq!(p.x, BigRational::from_f64(0.25).unwrap());
        assert_eq!(p.y_s3, BigRational::from_f64(0.25).unwrap());
        let q = me(2, 6).embed();
        assert_eq!(q.x, BigRational::from_f64(0.5).unwrap());
        assert_eq!(q.y_s3, BigRational::from_f64(0.5).unwrap());
    }

    #[test]
    fn neighbors_are_four_at_distance_half() {
        let quarter = BigRational::from_f64(0.25).unwrap();
        for m in [me(0, 0), me(1, 3), me(3, 3), me(2, 6), me(-1, -3)] {
            let ns = m.neighbors();
            for (n, v) in &ns {
                assert_eq!(m.embed().dist2(&n.embed()), quarter);
                // shared vertex at distance sqrt(3)/6 => squared 1/12
                assert_eq!(
                    m.embed().dist2(&v.embed()),
                    BigRational::new(BigInt::from(1), BigInt::from(12))
                );
                assert!(n.neighbors().iter().any(|(b, _)| b == &m));
            }
            // two through each endpoint
            let eps = m.endpoints();
            for e in &eps {
                assert_eq!(ns.iter().filter(|(_, v)| v == e).count(), 2);
            }
        }
    }

    #[test]
    fn four_regular_in_radius_20_ball() {
        let mut count = 0;
        for x in -80..=80i64 {
            for y in -80..=80i64 {
                if !MidEdge::valid_coords(x, y) {
                    continue;
                }
                let m = MidEdge { xq: x, yq: y };
                let ns = m.neighbors();
                assert_eq!(ns.len(), 4);
                for (n, _) in &ns {
                    assert!(MidEdge::valid_coords(n.xq, n.yq));
                }
                count += 1;
            }
        }
        assert!(count > 1000);
    }

    #[test]
    fn vertex_meets_three_mid_edges() {
        for v in [LatticeVertex::new(0, 2).unwrap(), LatticeVertex::new(2, 4).unwrap()] {
            let ms = v.mid_edges();
            for m in &ms {
                assert!(m.endpoints().contains(&v));
            }
        }
    }

    #[test]
    fn clockwise_hexagon_turns() {
        // Clockwise around the hexagon centered at (2, 0).
        let loop5 = vec![me(0, 0), me(1, 3), me(3, 3), me(4, 0), me(3, -3), me(1, -3)];
        let w = Walk::new(loop5).unwrap();
        for (a, b) in w.steps() {
            assert_eq!(step_turn(a, b).unwrap(), -1);
        }
        assert_eq!(w.winding(), -5);
        assert_eq!(w.reverse().winding(), 5);
    }

    #[test]
    fn turn_sign_examples() {
        // origin -> (1,3) continuing clockwise -> (3,3): turn -1
        assert_eq!(turn_sign(&me(0, 0), &me(1, 3), &me(3, 3)).unwrap(), -1);
        // zigzag alternates
        let zig = Walk::new(vec![me(0, 0), me(1, 3), me(2, 6), me(3, 9)]).unwrap();
        let turns: Vec<i8> = zig
            .steps()
            .map(|(a, b)| step_turn(a, b).unwrap())
            .collect();
        assert_eq!(turns, vec![-1, 1, -1]);
        // reversal negates in reverse order
        let rev = zig.reverse();
        let rturns: Vec<i8> = rev.steps().map(|(a, b)| step_turn(a, b).unwrap()).collect();
        assert_eq!(rturns, vec![1, -1, 1]);
        // backtracking triple is rejected
        assert!(turn_sign(&me(1, 3), &me(0, 0), &me(-1, 3)).is_err());
    }

    #[test]
    fn walk_rejects_vertex_reuse() {
        // (1,3) and (-1,3) share vertex (0,2) with the origin edge.
        assert!(Walk::new(vec![me(0, 0), me(1, 3), me(-1, 3)]).is_err());
        assert!(Walk::new(vec![me(0, 0), me(1, 3), me(3, 3)]).is_ok());
    }

    #[test]
    fn winding_additivity_under_split() {
        let w = Walk::new(vec![me(0, 0), me(1, 3), me(3, 3), me(4, 0), me(5, -3)]).unwrap();
        for cut in 1..w.mids().len() - 1 {
            let pre = Walk::new(w.mids()[..=cut].to_vec()).unwrap();
            let suf = Walk::new(w.mids()[cut..].to_vec()).unwrap();
            assert_eq!(w.winding(), pre.winding() + suf.winding());
        }
    }

    #[test]
    fn trivial_and_single_step_winding() {
        assert_eq!(Walk::trivial(MidEdge::ORIGIN).winding(), 0);
        // The 1-step walk turns once: the curve convention that makes the
        // parafermionic vertex relation exact.
        assert_eq!(Walk::new(vec![me(0, 0), me(1, 3)]).unwrap().winding(), -1);
        assert_eq!(Walk::new(vec![me(0, 0), me(-1, 3)]).unwrap().winding(), 1);
    }

    #[test]
    fn projections() {
        let p = me(1, 3).embed();
        let v = project(&p, ProjAxis::PiOver2);
        assert_eq!(v.s3, BigRational::from_f64(0.25).unwrap());
        let w = project(&p, ProjAxis::PiOver6);
        assert_eq!(w.s3, BigRational::from_f64(0.25).unwrap());
        let o = project(&MidEdge::ORIGIN.embed(), ProjAxis::PiOver2);
        assert_eq!(o.sign(), Ordering::Equal);
    }

    #[test]
    fn rotation_about_hexagon_center_preserves_walks_and_winding() {
        assert!(is_hexagon_center(2, 0));
        assert!(is_hexagon_center(4, 6));
        assert!(!is_hexagon_center(0, 0));
        let w = Walk::new(vec![me(0, 0), me(1, 3), me(3, 3), me(4, 0)]).unwrap();
        for k in 1..6 {
            let mids: Vec<MidEdge> = w
                .mids()
                .iter()
                .map(|m| rotate_about_hex_center((2, 0), m, k).unwrap())
                .collect();
            let rw = Walk::new(mids).unwrap();
            assert_eq!(rw.winding(), w.winding());
        }
    }

    #[test]
    fn serde_walks_as_pairs() {
        let w = Walk::new(vec![me(0, 0), me(1, 3)]).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "[[0,0],[1,3]]");
        let back: Walk = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Walk>("[[0,0],[2,0]]").is_err());
    }
}
