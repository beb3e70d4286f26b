//! Domain families: exact membership predicates, boundaries and side labels.
//!
//! Bounded domains are realized two ways and the test-suite asserts they
//! agree: (1) closed sign tests on the integer grid (used for walk
//! containment), and (2) the vertex-set construction — pick the lattice
//! vertices V inside the region, take the mid-edges of all edges meeting V,
//! and call a mid-edge boundary when its edge has exactly one endpoint in V.
//! The observable works on the second form.
//!
//! Grid forms of the defining lines (x in 1/4, y in sqrt(3)/12):
//!   * Strip_k:          0 <= y <= 6k
//!   * Tria_{2k+1}:      y >= 0,  3x + y <= 12k+6,  -3x + y <= 12k+6
//!   * renewal line i:   3x + y = 12i + 6  (parallel to the right side)
//! Rotated families map the query point back by the inverse rotation, which
//! is exact on the grid.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{rotate60_grid, Coord, LatticeVertex, MidEdge, VertexKind};

/// Labels for the boundary pieces of the built-in domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideLabel {
    RealAxis,
    BottomSide,
    RightSide,
    LeftSide,
    TopSide,
    TopLine(i64),
    Generic,
}

impl SideLabel {
    /// Tie-break priority for corner mid-edges: RealAxis/BottomSide first,
    /// then Right, Left, Top.
    fn priority(&self) -> u8 {
        match self {
            SideLabel::RealAxis | SideLabel::BottomSide => 0,
            SideLabel::RightSide => 1,
            SideLabel::LeftSide => 2,
            SideLabel::TopSide => 3,
            SideLabel::TopLine(_) => 4,
            SideLabel::Generic => 5,
        }
    }
}

/// A domain of the mid-edge graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    /// The whole lattice.
    Full,
    /// Strip_k between y = 0 and y = (sqrt3/2) k.
    Strip { k: u32 },
    /// The equilateral triangle Tria_{2k+1}.
    Triangle { k: u32 },
    /// Tria_{2i+1, x} = x + e^{-i pi/3} Tria_{2i+1} for x on a right side.
    RotatedTriangle { i: u32, x: MidEdge },
    /// Trap_{2i+1, x} = Tria_{2i+1, x} intersected with the upper half-plane.
    Trapezoid { i: u32, x: MidEdge },
    /// The closed upper half-plane U.
    HalfPlane,
    /// T_{k,i}: Tria_{2k+1} cut by the renewal line 3x + y = 12i + 6.
    OffsetTriangle { k: u32, i: u32 },
    /// y + e^{4 pi i/3} Tria_{2r}, with 2r stored (a positive integer).
    /// The anchor y must be a slant-down mid-edge (the right side of a
    /// trapezoid consists of those); then the defining map is a rotation
    /// about a lattice vertex and carries the lattice to itself.
    SmallTriangleAt { y: MidEdge, r2: u32 },
    /// A domain given by an explicit set of lattice vertices.
    Explicit { verts: BTreeSet<(Coord, Coord)> },
    /// A domain given by an explicit set of mid-edges (internal form used
    /// for enumerating inside a vertex-built Omega).
    ExplicitMids { mids: BTreeSet<MidEdge> },
}

/// Triangle region of side s in grid form (apex up, base on y = 0).
fn tria_region(s: i64, a: Coord, b: Coord) -> bool {
    b >= 0 && 3 * a + b <= 6 * s && -3 * a + b <= 6 * s
}

/// Map a point into the frame of the unrotated triangle for the rotated
/// families.  `ccw_steps` is the inverse rotation in 60-degree units.
fn unrotate(p: (Coord, Coord), origin: &MidEdge, ccw_steps: i32) -> (Coord, Coord) {
    rotate60_grid(p.0 - origin.xq, p.1 - origin.yq, ccw_steps)
}

impl Domain {
    /// Side length of the small triangle: D(Tria_{2r}) means the walk set of
    /// Tria_{2r-1} when 2r is even.
    fn small_side(r2: u32) -> i64 {
        if r2 % 2 == 1 {
            r2 as i64
        } else {
            r2 as i64 - 1
        }
    }

    /// Closed-region membership for an arbitrary grid point.
    pub fn contains_point(&self, a: Coord, b: Coord) -> bool {
        match self {
            Domain::Full => true,
            Domain::Strip { k } => b >= 0 && b <= 6 * *k as i64,
            Domain::Triangle { k } => tria_region(2 * *k as i64 + 1, a, b),
            Domain::RotatedTriangle { i, x } => {
                let (ua, ub) = unrotate((a, b), x, 1);
                tria_region(2 * *i as i64 + 1, ua, ub)
            }
            Domain::Trapezoid { i, x } => {
                let (ua, ub) = unrotate((a, b), x, 1);
                b >= 0 && tria_region(2 * *i as i64 + 1, ua, ub)
            }
            Domain::HalfPlane => b >= 0,
            Domain::OffsetTriangle { k, i } => {
                tria_region(2 * *k as i64 + 1, a, b) && 3 * a + b <= 12 * *i as i64 + 6
            }
            Domain::SmallTriangleAt { y, r2 } => {
                let (ua, ub) = unrotate((a, b), y, 2);
                tria_region(Self::small_side(*r2), ua, ub)
            }
            Domain::Explicit { .. } | Domain::ExplicitMids { .. } => {
                unreachable!("explicit domains have no region form")
            }
        }
    }

    /// Walk containment test for a mid-edge.
    pub fn contains_mid(&self, m: &MidEdge) -> bool {
        match self {
            Domain::Explicit { verts } => m
                .endpoints()
                .iter()
                .any(|v| verts.contains(&(v.xq, v.yq))),
            Domain::ExplicitMids { mids } => mids.contains(m),
            _ => self.contains_point(m.xq, m.yq),
        }
    }

    /// Membership of a lattice vertex in V(Omega).
    pub fn contains_vertex(&self, v: &LatticeVertex) -> bool {
        match self {
            Domain::Explicit { verts } => verts.contains(&(v.xq, v.yq)),
            Domain::ExplicitMids { .. } => {
                v.mid_edges().iter().all(|m| self.contains_mid(m))
            }
            _ => self.contains_point(v.xq, v.yq),
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, Domain::Full | Domain::Strip { .. } | Domain::HalfPlane)
    }

    /// Grid bounding box (x_lo, x_hi, y_lo, y_hi) of a bounded domain.
    pub fn bbox(&self) -> Result<(Coord, Coord, Coord, Coord)> {
        fn hull(pts: &[(Coord, Coord)]) -> (Coord, Coord, Coord, Coord) {
            let xs: Vec<_> = pts.iter().map(|p| p.0).collect();
            let ys: Vec<_> = pts.iter().map(|p| p.1).collect();
            (
                *xs.iter().min().unwrap(),
                *xs.iter().max().unwrap(),
                *ys.iter().min().unwrap(),
                *ys.iter().max().unwrap(),
            )
        }
        fn tria_corners(s: i64) -> [(Coord, Coord); 3] {
            [(-(2 * s), 0), (2 * s, 0), (0, 6 * s)]
        }
        match self {
            Domain::Triangle { k } => Ok(hull(&tria_corners(2 * *k as i64 + 1))),
            Domain::OffsetTriangle { k, .. } => Ok(hull(&tria_corners(2 * *k as i64 + 1))),
            Domain::RotatedTriangle { i, x } | Domain::Trapezoid { i, x } => {
                let s = 2 * *i as i64 + 1;
                let pts: Vec<(Coord, Coord)> = tria_corners(s)
                    .iter()
                    .map(|&(a, b)| {
                        let (ra, rb) = rotate60_grid(a, b, 5); // clockwise 60
                        (ra + x.xq, rb + x.yq)
                    })
                    .collect();
                let (xl, xh, yl, yh) = hull(&pts);
                if matches!(self, Domain::Trapezoid { .. }) {
                    Ok((xl, xh, yl.max(0), yh))
                } else {
                    Ok((xl, xh, yl, yh))
                }
            }
            Domain::SmallTriangleAt { y, r2 } => {
                let s = Self::small_side(*r2);
                let pts: Vec<(Coord, Coord)> = tria_corners(s)
                    .iter()
                    .map(|&(a, b)| {
                        let (ra, rb) = rotate60_grid(a, b, 4); // -120 degrees
                        (ra + y.xq, rb + y.yq)
                    })
                    .collect();
                Ok(hull(&pts))
            }
            Domain::Explicit { verts } => {
                if verts.is_empty() {
                    return Err(Error::Contract("empty explicit vertex set".into()));
                }
                let (xl, xh, yl, yh) = hull(&verts.iter().cloned().collect::<Vec<_>>());
                Ok((xl - 2, xh + 2, yl - 2, yh + 2))
            }
            Domain::ExplicitMids { mids } => {
                if mids.is_empty() {
                    return Err(Error::Contract("empty explicit mid-edge set".into()));
                }
                let pts: Vec<_> = mids.iter().map(|m| (m.xq, m.yq)).collect();
                Ok(hull(&pts))
            }
            _ => Err(Error::UnboundedDomain),
        }
    }

    /// Which defining side (if any) a mid-edge lies on; ties resolved by
    /// the fixed priority order.
    pub fn side_label(&self, m: &MidEdge) -> Option<SideLabel> {
        if !self.contains_mid(m) {
            return None;
        }
        let (a, b) = (m.xq, m.yq);
        let mut labels: Vec<SideLabel> = Vec::new();
        match self {
            Domain::Strip { k } => {
                if b == 0 {
                    labels.push(SideLabel::RealAxis);
                }
                if b == 6 * *k as i64 {
                    labels.push(SideLabel::TopLine(*k as i64));
                }
            }
            Domain::HalfPlane => {
                if b == 0 {
                    labels.push(SideLabel::RealAxis);
                }
            }
            Domain::Triangle { k } => {
                let s = 2 * *k as i64 + 1;
                if b == 0 {
                    labels.push(SideLabel::RealAxis);
                }
                if 3 * a + b == 6 * s {
                    labels.push(SideLabel::RightSide);
                }
                if -3 * a + b == 6 * s {
                    labels.push(SideLabel::LeftSide);
                }
            }
            Domain::OffsetTriangle { k, i } => {
                let s = 2 * *k as i64 + 1;
                if b == 0 {
                    labels.push(SideLabel::RealAxis);
                }
                if 3 * a + b == 12 * *i as i64 + 6 {
                    labels.push(SideLabel::RightSide);
                }
                if -3 * a + b == 6 * s {
                    labels.push(SideLabel::LeftSide);
                }
            }
            Domain::RotatedTriangle { i, x } => {
                let s = 2 * *i as i64 + 1;
                let (ua, ub) = unrotate((a, b), x, 1);
                if ub == 0 {
                    labels.push(SideLabel::BottomSide);
                }
                if 3 * ua + ub == 6 * s {
                    labels.push(SideLabel::RightSide);
                }
                if -3 * ua + ub == 6 * s {
                    labels.push(SideLabel::LeftSide);
                }
            }
            Domain::Trapezoid { i, x } => {
                let s = 2 * *i as i64 + 1;
                let (ua, ub) = unrotate((a, b), x, 1);
                if b == 0 {
                    labels.push(SideLabel::BottomSide);
                }
                if 3 * ua + ub == 6 * s {
                    labels.push(SideLabel::RightSide);
                }
                // image of the original bottom side: the side containing x
                if ub == 0 {
                    labels.push(SideLabel::LeftSide);
                }
                // image of the original left side: horizontal top
                if -3 * ua + ub == 6 * s {
                    labels.push(SideLabel::TopSide);
                }
            }
            Domain::SmallTriangleAt { y, r2 } => {
                let s = Self::small_side(*r2);
                let (ua, ub) = unrotate((a, b), y, 2);
                if ub == 0 {
                    labels.push(SideLabel::BottomSide);
                }
                if 3 * ua + ub == 6 * s {
                    labels.push(SideLabel::RightSide);
                }
                if -3 * ua + ub == 6 * s {
                    labels.push(SideLabel::LeftSide);
                }
            }
            Domain::Full | Domain::Explicit { .. } | Domain::ExplicitMids { .. } => {}
        }
        labels.into_iter().min_by_key(|l| l.priority())
    }

    /// The vertex-set structure (V(Omega), Omega, boundary) of a bounded
    /// domain.
    pub fn observable_domain(&self) -> Result<ObsDomain> {
        let verts: Vec<LatticeVertex> = match self {
            Domain::Explicit { verts } => {
                let mut out = Vec::with_capacity(verts.len());
                for &(a, b) in verts {
                    out.push(LatticeVertex::new(a, b)?);
                }
                out
            }
            _ => {
                let (xl, xh, yl, yh) = self.bbox()?;
                let mut out = Vec::new();
                for b in yl..=yh {
                    for a in xl..=xh {
                        if LatticeVertex::valid_coords(a, b) {
                            let v = LatticeVertex { xq: a, yq: b };
                            if self.contains_vertex(&v) {
                                out.push(v);
                            }
                        }
                    }
                }
                out
            }
        };
        ObsDomain::from_vertices(verts)
    }

    /// Finite mid-edge list of a bounded domain (the Omega of the
    /// vertex-set construction).
    pub fn mid_edges(&self) -> Result<Vec<MidEdge>> {
        if let Domain::ExplicitMids { mids } = self {
            return Ok(mids.iter().cloned().collect());
        }
        Ok(self.observable_domain()?.mids)
    }

    /// Brute-force scan of the sign-test membership over the bounding box.
    /// Oracle counterpart of `mid_edges`; the two must agree on the
    /// built-in bounded families.
    pub fn scan_mids(&self) -> Result<Vec<MidEdge>> {
        let (xl, xh, yl, yh) = self.bbox()?;
        let mut out = Vec::new();
        for b in yl..=yh {
            for a in xl..=xh {
                if MidEdge::valid_coords(a, b) {
                    let m = MidEdge { xq: a, yq: b };
                    if self.contains_mid(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Map from boundary mid-edges to side labels (bounded domains).
    pub fn boundary_sides(&self) -> Result<BTreeMap<MidEdge, SideLabel>> {
        let obs = self.observable_domain()?;
        let mut out = BTreeMap::new();
        for (m, _) in &obs.boundary {
            out.insert(*m, self.side_label(m).unwrap_or(SideLabel::Generic));
        }
        Ok(out)
    }

    /// Tria_{2i+1, x} = x + e^{-i pi/3} Tria_{2i+1}.  The map is a rotation
    /// about a hexagon center whenever x is a right-side slant mid-edge, so
    /// it carries the lattice to itself.
    pub fn rotate_translate_triangle(i: u32, x: MidEdge) -> Result<Domain> {
        if x.kind() != crate::lattice::MidKind::SlantUp {
            return Err(Error::Contract(format!(
                "x = ({}, {}) must be a right-side (slant-up) mid-edge",
                x.xq, x.yq
            )));
        }
        Ok(Domain::RotatedTriangle { i, x })
    }

    /// y + e^{4 pi i/3} Tria_{2r}: the small triangle glued at the endpoint
    /// of a trapezoid's right side.  y must be slant-down so the map is a
    /// rotation about a lattice vertex.
    pub fn small_triangle_at(y: MidEdge, r2: u32) -> Result<Domain> {
        if y.kind() != crate::lattice::MidKind::SlantDown {
            return Err(Error::Contract(format!(
                "y = ({}, {}) must be a slant-down mid-edge",
                y.xq, y.yq
            )));
        }
        if r2 == 0 {
            return Err(Error::Contract("small triangle needs 2r >= 1".into()));
        }
        Ok(Domain::SmallTriangleAt { y, r2 })
    }

    /// Load an explicit domain from "x y" integer pairs, one per line.
    pub fn explicit_from_text(text: &str) -> Result<Domain> {
        let mut verts = BTreeSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<i64> {
                tok.ok_or_else(|| {
                    Error::Parse(format!("line {}: expected `x y`", lineno + 1))
                })?
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("line {}: {}", lineno + 1, e)))
            };
            let a = parse(it.next())?;
            let b = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse(format!(
                    "line {}: trailing tokens after `x y`",
                    lineno + 1
                )));
            }
            if !LatticeVertex::valid_coords(a, b) {
                return Err(Error::Parse(format!(
                    "line {}: ({a}, {b}) is not a lattice vertex",
                    lineno + 1
                )));
            }
            verts.insert((a, b));
        }
        if verts.is_empty() {
            return Err(Error::Parse("no vertices in input".into()));
        }
        Ok(Domain::Explicit { verts })
    }
}

/// The paper's (V(Omega), Omega, dOmega) structure for a bounded domain.
#[derive(Debug, Clone)]
pub struct ObsDomain {
    pub verts: Vec<LatticeVertex>,
    pub mids: Vec<MidEdge>,
    /// Boundary mid-edges paired with the endpoint of their edge that lies
    /// inside V(Omega).
    pub boundary: Vec<(MidEdge, LatticeVertex)>,
}

impl ObsDomain {
    pub fn from_vertices(mut verts: Vec<LatticeVertex>) -> Result<ObsDomain> {
        verts.sort();
        verts.dedup();
        if verts.is_empty() {
            return Err(Error::Contract("domain has no lattice vertices".into()));
        }
        let vset: BTreeSet<LatticeVertex> = verts.iter().cloned().collect();
        let mut mids = BTreeSet::new();
        for v in &verts {
            for m in v.mid_edges() {
                mids.insert(m);
            }
        }
        let mut boundary = Vec::new();
        for m in &mids {
            let eps = m.endpoints();
            let inside: Vec<&LatticeVertex> =
                eps.iter().filter(|v| vset.contains(v)).collect();
            debug_assert!(!inside.is_empty());
            if inside.len() == 1 {
                boundary.push((*m, *inside[0]));
            }
        }
        Ok(ObsDomain {
            verts,
            mids: mids.into_iter().collect(),
            boundary,
        })
    }

    pub fn mids_domain(&self) -> Domain {
        Domain::ExplicitMids { mids: self.mids.iter().cloned().collect() }
    }

    pub fn contains_mid(&self, m: &MidEdge) -> bool {
        self.mids.binary_search(m).is_ok()
    }

    /// Best-effort simple-connectivity check: V(Omega) spans a connected
    /// subgraph of the lattice.
    pub fn vertex_set_connected(&self) -> bool {
        if self.verts.is_empty() {
            return false;
        }
        let vset: BTreeSet<LatticeVertex> = self.verts.iter().cloned().collect();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.verts[0]);
        queue.push_back(self.verts[0]);
        while let Some(v) = queue.pop_front() {
            let (x, y) = (v.xq, v.yq);
            let nbrs = match v.kind() {
                VertexKind::Top => [(x, y - 4), (x - 2, y + 2), (x + 2, y + 2)],
                VertexKind::Bottom => [(x, y + 4), (x - 2, y - 2), (x + 2, y - 2)],
            };
            for (nx, ny) in nbrs {
                if LatticeVertex::valid_coords(nx, ny) {
                    let w = LatticeVertex { xq: nx, yq: ny };
                    if vset.contains(&w) && seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        seen.len() == self.verts.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn me(x: i64, y: i64) -> MidEdge {
        MidEdge::new(x, y).unwrap()
    }

    #[test]
    fn tria1_members() {
        let d = Domain::Triangle { k: 0 };
        let mids = d.mid_edges().unwrap();
        assert_eq!(mids, vec![me(-1, 3), me(0, 0), me(1, 3)]);
        assert_eq!(d.scan_mids().unwrap(), mids);
        let obs = d.observable_domain().unwrap();
        assert_eq!(obs.verts.len(), 1);
        assert_eq!(obs.boundary.len(), 3);
    }

    #[test]
    fn tria1_side_labels() {
        let d = Domain::Triangle { k: 0 };
        assert_eq!(d.side_label(&me(1, 3)), Some(SideLabel::RightSide));
        assert_eq!(d.side_label(&me(-1, 3)), Some(SideLabel::LeftSide));
        assert_eq!(d.side_label(&me(0, 0)), Some(SideLabel::RealAxis));
    }

    #[test]
    fn strip0_contains_only_row_zero() {
        let d = Domain::Strip { k: 0 };
        assert!(d.contains_mid(&me(0, 0)));
        assert!(d.contains_mid(&me(4, 0)));
        assert!(!d.contains_mid(&me(1, 3)));
        assert!(!d.contains_mid(&me(1, -3)));
    }

    #[test]
    fn strip_top_line_label() {
        let d = Domain::Strip { k: 1 };
        assert_eq!(d.side_label(&me(2, 6)), Some(SideLabel::TopLine(1)));
        assert_eq!(d.side_label(&me(0, 0)), Some(SideLabel::RealAxis));
        assert_eq!(d.side_label(&me(1, 3)), None);
    }

    #[test]
    fn half_plane() {
        let d = Domain::HalfPlane;
        assert!(d.contains_mid(&me(0, 0)));
        assert!(!d.contains_mid(&me(1, -3)));
        assert!(!d.is_bounded());
        assert!(d.boundary_sides().is_err());
    }

    #[test]
    fn scan_equals_vertex_construction_on_builtins() {
        let domains = [
            Domain::Triangle { k: 0 },
            Domain::Triangle { k: 1 },
            Domain::Triangle { k: 2 },
            Domain::OffsetTriangle { k: 2, i: 1 },
            Domain::RotatedTriangle { i: 1, x: me(1, 3) },
            Domain::Trapezoid { i: 1, x: me(1, 3) },
            Domain::Trapezoid { i: 2, x: me(5, 3) },
            Domain::small_triangle_at(me(7, 3), 3).unwrap(),
            Domain::small_triangle_at(me(5, -3), 4).unwrap(),
        ];
        for d in &domains {
            let a = d.mid_edges().unwrap();
            let b = d.scan_mids().unwrap();
            assert_eq!(a, b, "mismatch for {d:?}");
        }
    }

    #[test]
    fn triangle_nesting_and_trapezoid_intersection() {
        for k in 0..3u32 {
            let small = Domain::Triangle { k };
            let big = Domain::Triangle { k: k + 1 };
            for m in small.mid_edges().unwrap() {
                assert!(big.contains_mid(&m));
            }
            let s_small = Domain::Strip { k };
            let s_big = Domain::Strip { k: k + 1 };
            for b in [0, 3, 6, 9] {
                for a in -9..9 {
                    if MidEdge::valid_coords(a, b) {
                        let m = MidEdge { xq: a, yq: b };
                        if s_small.contains_mid(&m) {
                            assert!(s_big.contains_mid(&m));
                        }
                    }
                }
            }
        }
        // OffsetTriangle(k,i) is inside Triangle(k)
        let off = Domain::OffsetTriangle { k: 2, i: 0 };
        let tri = Domain::Triangle { k: 2 };
        for m in off.mid_edges().unwrap() {
            assert!(tri.contains_mid(&m));
        }
        // Trapezoid = RotatedTriangle intersect HalfPlane, pointwise
        let rot = Domain::RotatedTriangle { i: 1, x: me(1, 3) };
        let trap = Domain::Trapezoid { i: 1, x: me(1, 3) };
        let (xl, xh, yl, yh) = rot.bbox().unwrap();
        for b in yl..=yh {
            for a in xl..=xh {
                if MidEdge::valid_coords(a, b) {
                    let m = MidEdge { xq: a, yq: b };
                    assert_eq!(
                        trap.contains_mid(&m),
                        rot.contains_mid(&m) && Domain::HalfPlane.contains_mid(&m)
                    );
                }
            }
        }
    }

    #[test]
    fn rotated_triangle_dips_below_axis() {
        // x = (5,3) on the right side of Tria_3; i = 2: the rotated triangle
        // must contain a mid-edge with y < 0.
        let d = Domain::RotatedTriangle { i: 2, x: me(5, 3) };
        let mids = d.mid_edges().unwrap();
        assert!(mids.contains(&me(5, 3)));
        assert!(mids.iter().any(|m| m.yq < 0), "no intersection with lower half-plane");
        // and the origin-rooted one contains its root
        let d0 = Domain::RotatedTriangle { i: 0, x: me(1, 3) };
        assert!(d0.contains_mid(&me(1, 3)));
    }

    #[test]
    fn rotated_triangle_walks_match_upright_triangle() {
        // The defining map is a lattice rotation about a hexagon center, so
        // the mid-edge counts agree with the upright triangle.
        for (i, x) in [(0u32, me(1, 3)), (1, me(1, 3)), (1, me(5, 3)), (2, me(3, 9))] {
            let rot = Domain::RotatedTriangle { i, x };
            let tri = Domain::Triangle { k: i };
            assert_eq!(
                rot.mid_edges().unwrap().len(),
                tri.mid_edges().unwrap().len(),
                "i={i} x={x:?}"
            );
        }
    }

    #[test]
    fn explicit_from_text_and_connectivity() {
        let d = Domain::explicit_from_text("0 2\n2 4\n").unwrap();
        let obs = d.observable_domain().unwrap();
        assert!(obs.vertex_set_connected());
        assert_eq!(obs.verts.len(), 2);
        // (0,2) and (2,4) share the edge with midpoint (1,3): Omega has
        // 3 + 3 - 1 = 5 mid-edges, and (1,3) is interior.
        assert_eq!(obs.mids.len(), 5);
        assert_eq!(obs.boundary.len(), 4);
        assert!(Domain::explicit_from_text("0 0\n").is_err());
        assert!(Domain::explicit_from_text("1 2 3\n").is_err());
    }

    #[test]
    fn serde_tagged() {
        let d = Domain::Trapezoid { i: 1, x: me(1, 3) };
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"kind\":\"trapezoid\""));
        let back: Domain = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
