//! The parafermionic observable F(z) and its exact local and contour
//! identities.
//!
//! F(z) = sum over SAWs a -> z inside Omega of e^{-i sigma W} x^len.  At
//! (x_c, sigma = 5/8) the local relation
//!
//!     (p - v) F(p) + (q - v) F(q) + (r - v) F(r) = 0
//!
//! holds at every vertex v of V(Omega), where p, q, r are the three
//! mid-edges around v and (p - v) is the complex direction factor
//! (sqrt3/6) zeta^d.  Summing the relation over V(Omega) telescopes to a
//! boundary sum; both routes are implemented independently and compared
//! exactly.

use std::collections::BTreeMap;

use num::BigInt;

use crate::cyclo::{constant, Constant, Cyc, Sigma};
use crate::domain::{Domain, ObsDomain};
use crate::enumerate::{
    parallel_enumerate, power_table, weighted_sum, AccumSet, EnumSpec, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVertex, MidEdge, VertexKind};

/// The observable on a domain: exact values per mid-edge plus the winding
/// bookkeeping needed for the boundary checks.
#[derive(Debug, Clone)]
pub struct Observable {
    pub domain: Domain,
    pub start: MidEdge,
    pub sigma: Sigma,
    pub x: Cyc,
    pub cap: usize,
    /// True iff the domain is bounded and no walk hit the cap: the values
    /// are then the complete sums.
    pub exact: bool,
    /// Present for bounded domains.
    pub obs: Option<ObsDomain>,
    values: BTreeMap<MidEdge, Cyc>,
    /// Per endpoint: (min, max) winding over contributing walks.
    windings: BTreeMap<MidEdge, (i64, i64)>,
    pub walks_visited: u64,
}

/// Compute the observable field.  For bounded domains the default cap is
/// the mid-edge count of Omega, which makes the sums complete.
pub fn compute_observable(
    domain: &Domain,
    a: MidEdge,
    sigma: Sigma,
    x: &Cyc,
    cap: Option<usize>,
    workers: usize,
    budget: u64,
) -> Result<Observable> {
    let (enum_domain, obs) = if domain.is_bounded() {
        let obs = domain.observable_domain()?;
        if !obs.contains_mid(&a) {
            return Err(Error::StartOutsideDomain(a));
        }
        (obs.mids_domain(), Some(obs))
    } else {
        if cap.is_none() {
            return Err(Error::Contract(
                "unbounded domain needs an explicit length cap".into(),
            ));
        }
        (domain.clone(), None)
    };
    let cap = cap.unwrap_or_else(|| obs.as_ref().unwrap().mids.len());
    let mut spec = EnumSpec::new(enum_domain, a, cap);
    spec.budget = budget;
    spec.accum = AccumSet { weight: true, phase: true, ..AccumSet::default() };
    let raw = parallel_enumerate(&spec, workers)?;
    let exact = domain.is_bounded() && !raw.truncated;

    let powers = power_table(x, cap);
    let mut values = BTreeMap::new();
    let mut windings = BTreeMap::new();
    for (m, cell) in raw.phase.as_ref().unwrap() {
        let mut acc = Cyc::zero();
        for (w, counts) in &cell.by_w {
            let s = weighted_sum(counts, &powers);
            acc = &acc + &(&sigma.phase(*w) * &s);
        }
        values.insert(*m, acc);
        windings.insert(*m, (cell.w_min, cell.w_max));
    }
    Ok(Observable {
        domain: domain.clone(),
        start: a,
        sigma,
        x: x.clone(),
        cap,
        exact,
        obs,
        values,
        windings,
        walks_visited: raw.walks_visited,
    })
}

impl Observable {
    /// F(z).  Zero when no walk reaches z (exact for complete fields).
    pub fn value(&self, z: &MidEdge) -> Cyc {
        self.values.get(z).cloned().unwrap_or_else(Cyc::zero)
    }

    pub fn values(&self) -> &BTreeMap<MidEdge, Cyc> {
        &self.values
    }

    pub fn winding_range(&self, z: &MidEdge) -> Option<(i64, i64)> {
        self.windings.get(z).copied()
    }

    fn require_exact(&self) -> Result<()> {
        if !self.exact {
            return Err(Error::Contract(
                "identity checks need a complete field (bounded domain, no truncation)".into(),
            ));
        }
        Ok(())
    }

    fn obs_domain(&self) -> Result<&ObsDomain> {
        self.obs
            .as_ref()
            .ok_or(Error::UnboundedDomain)
    }

    /// The exact value of (p-v)F(p) + (q-v)F(q) + (r-v)F(r) at a vertex of
    /// V(Omega).
    pub fn vertex_residual(&self, v: &LatticeVertex) -> Result<Cyc> {
        self.require_exact()?;
        let obs = self.obs_domain()?;
        if obs.verts.binary_search(v).is_err() {
            return Err(Error::Contract(format!(
                "vertex ({}, {}) is not in V(Omega)",
                v.xq, v.yq
            )));
        }
        let mut acc = Cyc::zero();
        for m in v.mid_edges() {
            if !obs.contains_mid(&m) {
                return Err(Error::Contract(format!(
                    "mid-edge ({}, {}) around the vertex is outside Omega",
                    m.xq, m.yq
                )));
            }
            acc = &acc + &(&direction_factor(v, &m)? * &self.value(&m));
        }
        Ok(acc)
    }

    /// Contour integral as the sum of vertex residuals over V(Omega).
    pub fn contour_integral(&self) -> Result<Cyc> {
        self.require_exact()?;
        let obs = self.obs_domain()?;
        self.require_start_on_boundary(obs)?;
        let mut acc = Cyc::zero();
        for v in obs.verts.clone() {
            acc = &acc + &self.vertex_residual(&v)?;
        }
        Ok(acc)
    }

    /// Contour integral computed the other way: the direct boundary sum
    /// of (m - v_m) F(m) over boundary mid-edges, v_m the inner endpoint.
    /// Independent code path from [`Self::contour_integral`]; the two must
    /// agree exactly.
    pub fn boundary_contour(&self) -> Result<Cyc> {
        self.require_exact()?;
        let obs = self.obs_domain()?;
        self.require_start_on_boundary(obs)?;
        let mut acc = Cyc::zero();
        for (m, v_in) in &obs.boundary {
            acc = &acc + &(&direction_factor(v_in, m)? * &self.value(m));
        }
        Ok(acc)
    }

    fn require_start_on_boundary(&self, obs: &ObsDomain) -> Result<()> {
        if obs.boundary.iter().any(|(m, _)| *m == self.start) {
            Ok(())
        } else {
            Err(Error::Contract(format!(
                "contour claims need the start ({}, {}) on the domain boundary",
                self.start.xq, self.start.yq
            )))
        }
    }

    /// Boundary winding determinism: every boundary mid-edge reached by
    /// some walk has a single winding value, and unit-dephased F lands on
    /// the nonnegative real axis.  Returns the offending mid-edge if any.
    pub fn check_boundary_windings(&self) -> Result<Option<MidEdge>> {
        self.require_exact()?;
        let obs = self.obs_domain()?;
        for (m, _) in &obs.boundary {
            let Some(&(w_min, w_max)) = self.windings.get(m) else {
                continue;
            };
            if w_min != w_max {
                return Ok(Some(*m));
            }
            let dephased = &self.value(m) * &self.sigma.phase(-w_min);
            if !dephased.is_real()
                || crate::cyclo::real_sign(&dephased)? == std::cmp::Ordering::Less
            {
                return Ok(Some(*m));
            }
        }
        Ok(None)
    }
}

/// The complex direction factor (m - v) as an exact field element:
/// (sqrt3/6) * zeta^d with d determined by the vertex class and the offset.
pub fn direction_factor(v: &LatticeVertex, m: &MidEdge) -> Result<Cyc> {
    let dx = m.xq - v.xq;
    let dy = m.yq - v.yq;
    let d = match v.kind() {
        VertexKind::Top => match (dx, dy) {
            (0, -2) => 36, // straight down
            (1, 1) => 4,   // 30 degrees
            (-1, 1) => 20, // 150 degrees
            _ => {
                return Err(Error::Contract(format!(
                    "({}, {}) is not a mid-edge of vertex ({}, {})",
                    m.xq, m.yq, v.xq, v.yq
                )))
            }
        },
        VertexKind::Bottom => match (dx, dy) {
            (0, 2) => 12,   // straight up
            (1, -1) => 44,  // -30 degrees
            (-1, -1) => 28, // -150 degrees
            _ => {
                return Err(Error::Contract(format!(
                    "({}, {}) is not a mid-edge of vertex ({}, {})",
                    m.xq, m.yq, v.xq, v.yq
                )))
            }
        },
    };
    let sixth = num::rational::BigRational::new(BigInt::from(1), BigInt::from(6));
    Ok(constant(Constant::Sqrt3).scale(&sixth) * Cyc::zeta_pow(d))
}

/// An embedded grid point as the complex field element x + i y.
pub fn embed_as_cyc(xq: i64, yq: i64) -> Cyc {
    // x = xq/4;  i*y = (yq/12) * (sqrt3 i), and sqrt3 i = 2 zeta^8 - 1.
    let x = Cyc::from_rational(num::rational::BigRational::new(
        BigInt::from(xq),
        BigInt::from(4),
    ));
    let s3i = &Cyc::zeta_pow(8).scale_int(&BigInt::from(2)) - &Cyc::one();
    let y = s3i.scale(&num::rational::BigRational::new(
        BigInt::from(yq),
        BigInt::from(12),
    ));
    &x + &y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::x_critical;

    fn me(x: i64, y: i64) -> MidEdge {
        MidEdge::new(x, y).unwrap()
    }

    fn field(domain: Domain, x: &Cyc) -> Observable {
        compute_observable(
            &domain,
            MidEdge::ORIGIN,
            Sigma::FIVE_EIGHTHS,
            x,
            None,
            2,
            DEFAULT_BUDGET,
        )
        .unwrap()
    }

    #[test]
    fn direction_factors_match_the_embedding() {
        // (m - v) as a field element equals the embedded difference.
        for v in [
            LatticeVertex::new(0, 2).unwrap(),
            LatticeVertex::new(2, 4).unwrap(),
            LatticeVertex::new(-4, 2).unwrap(),
            LatticeVertex::new(0, -2).unwrap(),
        ] {
            for m in v.mid_edges() {
                let lhs = direction_factor(&v, &m).unwrap();
                let rhs = &embed_as_cyc(m.xq, m.yq) - &embed_as_cyc(v.xq, v.yq);
                assert_eq!(lhs, rhs, "v={v:?} m={m:?}");
            }
        }
    }

    #[test]
    fn tria1_field_values() {
        let f = field(Domain::Triangle { k: 0 }, &x_critical());
        assert!(f.exact);
        assert_eq!(f.value(&me(0, 0)), Cyc::one());
        let xc = x_critical();
        assert_eq!(f.value(&me(1, 3)), &Cyc::zeta_pow(5) * &xc);
        assert_eq!(f.value(&me(-1, 3)), &Cyc::zeta_pow(-5) * &xc);
        // the single vertex relation
        let v = LatticeVertex::new(0, 2).unwrap();
        assert!(f.vertex_residual(&v).unwrap().is_zero());
        assert!(f.contour_integral().unwrap().is_zero());
    }

    #[test]
    fn tria3_vertex_relation_exact_zero() {
        let f = field(Domain::Triangle { k: 1 }, &x_critical());
        let obs = f.obs.clone().unwrap();
        for v in &obs.verts {
            assert!(
                f.vertex_residual(v).unwrap().is_zero(),
                "residual nonzero at {v:?}"
            );
        }
        assert!(f.contour_integral().unwrap().is_zero());
        assert_eq!(f.contour_integral().unwrap(), f.boundary_contour().unwrap());
        assert_eq!(f.check_boundary_windings().unwrap(), None);
    }

    #[test]
    fn off_critical_weight_has_nonzero_residual() {
        let half = Cyc::from_ratio(1, 2).unwrap();
        let f = field(Domain::Triangle { k: 1 }, &half);
        let obs = f.obs.clone().unwrap();
        let nonzero = obs
            .verts
            .iter()
            .any(|v| !f.vertex_residual(v).unwrap().is_zero());
        assert!(nonzero, "x = 1/2 should break the vertex relation");
    }

    #[test]
    fn sigma_zero_x_one_counts_walks() {
        let one = Cyc::one();
        let f = compute_observable(
            &Domain::Triangle { k: 1 },
            MidEdge::ORIGIN,
            Sigma::ZERO,
            &one,
            None,
            1,
            DEFAULT_BUDGET,
        )
        .unwrap();
        // F(z) = number of SAWs 0 -> z; compare against the oracle.
        let walks = crate::oracle::enumerate_in_domain(
            &Domain::Triangle { k: 1 },
            MidEdge::ORIGIN,
            18,
        );
        let mut counts: BTreeMap<MidEdge, i64> = BTreeMap::new();
        for w in &walks {
            *counts.entry(w.end()).or_insert(0) += 1;
        }
        for (m, c) in counts {
            assert_eq!(f.value(&m), Cyc::from_int(c), "at {m:?}");
        }
    }

    #[test]
    fn unbounded_needs_cap_and_refuses_contours() {
        assert!(compute_observable(
            &Domain::HalfPlane,
            MidEdge::ORIGIN,
            Sigma::FIVE_EIGHTHS,
            &x_critical(),
            None,
            1,
            DEFAULT_BUDGET,
        )
        .is_err());
        let f = compute_observable(
            &Domain::HalfPlane,
            MidEdge::ORIGIN,
            Sigma::FIVE_EIGHTHS,
            &x_critical(),
            Some(4),
            1,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(!f.exact);
        assert!(f.contour_integral().is_err());
    }

    #[test]
    fn trapezoid_contour_is_zero() {
        let d = Domain::Trapezoid { i: 1, x: me(1, 3) };
        let f = compute_observable(
            &d,
            me(1, 3),
            Sigma::FIVE_EIGHTHS,
            &x_critical(),
            None,
            2,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(f.exact);
        for v in &f.obs.clone().unwrap().verts {
            assert!(f.vertex_residual(v).unwrap().is_zero(), "at {v:?}");
        }
        assert!(f.contour_integral().unwrap().is_zero());
        assert_eq!(f.contour_integral().unwrap(), f.boundary_contour().unwrap());
    }
}
