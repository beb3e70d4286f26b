//! Pruned depth-first enumeration of self-avoiding walks in a domain.
//!
//! The hot loop works on an arena of arena-local indices with precomputed
//! adjacency, exit/entry sides (for curve self-avoidance) and per-step turn
//! signs.  Accumulators record plain integer counts — counts of walks per
//! (endpoint, winding, length, renewal count) cell — and the exact field
//! values are assembled only at the end, so the inner loop never touches a
//! big rational.
//!
//! Parallelism partitions the DFS tree at a fixed prefix depth.  The task
//! list and the merge order are functions of the spec alone, and every merge
//! is an exact commutative integer sum, so serial and parallel runs produce
//! bitwise-identical results for any worker count.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyc, Sigma};
use crate::domain::{Domain, SideLabel};
use crate::error::{Error, Result};
use crate::lattice::{step_turn, step_vertex, MidEdge, Walk};

/// Hard default cap on walk length.
pub const DEFAULT_LENGTH_CAP: usize = 40;
/// Default budget on walks visited; exceeding it is a loud resource error.
pub const DEFAULT_BUDGET: u64 = 4_000_000_000;

/// Endpoint predicate applied when accumulating a visited walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "filter", rename_all = "snake_case")]
pub enum FilterKind {
    Any,
    OnSides { sides: Vec<SideLabel> },
    OnRow { yq: i64 },
    At { mid: MidEdge },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointFilter {
    pub kind: FilterKind,
    /// Minimum length (0 admits the trivial walk).
    pub min_len: usize,
}

impl EndpointFilter {
    pub fn any() -> EndpointFilter {
        EndpointFilter { kind: FilterKind::Any, min_len: 0 }
    }

    pub fn on_sides(sides: Vec<SideLabel>) -> EndpointFilter {
        EndpointFilter { kind: FilterKind::OnSides { sides }, min_len: 0 }
    }

    pub fn on_row(yq: i64, min_len: usize) -> EndpointFilter {
        EndpointFilter { kind: FilterKind::OnRow { yq }, min_len }
    }

    fn passes_mid(&self, domain: &Domain, m: &MidEdge) -> bool {
        match &self.kind {
            FilterKind::Any => true,
            FilterKind::OnSides { sides } => domain
                .side_label(m)
                .map(|l| sides.contains(&l))
                .unwrap_or(false),
            FilterKind::OnRow { yq } => m.yq == *yq,
            FilterKind::At { mid } => m == mid,
        }
    }
}

/// Which integer-count tables to maintain during the sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccumSet {
    /// Filter-passing walk counts by length (WeightSum).
    pub weight: bool,
    /// Per-endpoint counts by length (PerEndpointWeight).
    pub per_endpoint: bool,
    /// Per-endpoint counts by (winding mod 48, length) plus winding range
    /// (PhaseWeightedSum).
    pub phase: bool,
    /// Renewal-time statistics against the triangle lines 0..=k
    /// (RenewalCounter).
    pub renewal: Option<u32>,
    /// Collect filter-passing walks, capped (WalkCollector).
    pub collect: Option<usize>,
}

impl AccumSet {
    pub fn weight_only() -> AccumSet {
        AccumSet { weight: true, ..AccumSet::default() }
    }
    pub fn endpoints() -> AccumSet {
        AccumSet { weight: true, per_endpoint: true, ..AccumSet::default() }
    }
}

/// A full enumeration request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub domain: Domain,
    pub start: MidEdge,
    pub max_len: usize,
    pub filter: EndpointFilter,
    pub accum: AccumSet,
    pub budget: u64,
}

impl EnumSpec {
    pub fn new(domain: Domain, start: MidEdge, max_len: usize) -> EnumSpec {
        EnumSpec {
            domain,
            start,
            max_len,
            filter: EndpointFilter::any(),
            accum: AccumSet::weight_only(),
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Winding-resolved counts for a single endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseCell {
    pub w_min: i64,
    pub w_max: i64,
    /// (winding mod 48, counts by length)
    pub by_w: Vec<(i64, Vec<u64>)>,
}

/// The exact integer-count outcome of an enumeration.  This is the
/// cacheable, mergeable form; field values are derived from it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EnumRaw {
    /// Filter-passing walk counts indexed by length.
    pub counts_by_len: Vec<u64>,
    pub per_endpoint: Option<Vec<(MidEdge, Vec<u64>)>>,
    pub phase: Option<Vec<(MidEdge, PhaseCell)>>,
    /// Sum of renewal counts N over filter-passing walks, by length.
    pub renewal_sum_by_len: Option<Vec<u64>>,
    /// Per endpoint: counts by (N, length) for filter-passing walks.
    pub per_endpoint_renewal: Option<Vec<(MidEdge, Vec<(u32, Vec<u64>)>)>>,
    pub walks: Option<Vec<Walk>>,
    pub walks_visited: u64,
    pub truncated: bool,
}

impl EnumRaw {
    /// Total filter-passing walks.
    pub fn total_count(&self) -> u64 {
        self.counts_by_len.iter().sum()
    }
}

// ---------------------------------------------------------------------------
// Arena
// ---------------------------------------------------------------------------

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct ArenaNbr {
    to: u32,
    /// Side of the *current* mid-edge this step exits through (0/1).
    exit_side: u8,
    /// Side of the *target* mid-edge the step enters through (0/1).
    entry_side: u8,
    turn: i8,
}

struct Arena {
    mids: Vec<MidEdge>,
    nbrs: Vec<[ArenaNbr; 4]>,
    /// Renewal-line index (3x + y = 12i + 6) or -1.
    line_of: Vec<i32>,
    filter_pass: Vec<bool>,
    start_idx: u32,
    n_lines: usize,
}

impl Arena {
    fn build(spec: &EnumSpec) -> Result<Arena> {
        if !spec.domain.contains_mid(&spec.start) {
            return Err(Error::StartOutsideDomain(spec.start));
        }
        // Reachable set: BFS within the domain.  One ring beyond max_len is
        // included so the truncation check can see legal extensions past
        // the cap; those mid-edges are never pushed.
        let mut dist: HashMap<MidEdge, usize> = HashMap::new();
        dist.insert(spec.start, 0);
        let mut frontier = vec![spec.start];
        let mut d = 0usize;
        while !frontier.is_empty() && d < spec.max_len + 1 {
            d += 1;
            let mut next = Vec::new();
            for m in frontier {
                for (n, _) in m.neighbors() {
                    if spec.domain.contains_mid(&n) && !dist.contains_key(&n) {
                        dist.insert(n, d);
                        next.push(n);
                    }
                }
            }
            frontier = next;
        }
        let mut mids: Vec<MidEdge> = dist.keys().cloned().collect();
        mids.sort();
        let index: HashMap<MidEdge, u32> =
            mids.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();

        let n_lines = spec.accum.renewal.map(|k| k as usize + 1).unwrap_or(0);
        let mut nbrs = Vec::with_capacity(mids.len());
        let mut line_of = Vec::with_capacity(mids.len());
        let mut filter_pass = Vec::with_capacity(mids.len());
        for m in &mids {
            let eps = m.endpoints();
            let mut slots = [ArenaNbr { to: NONE, exit_side: 0, entry_side: 0, turn: 0 }; 4];
            for (s, (n, v)) in m.neighbors().iter().enumerate() {
                if let Some(&to) = index.get(n) {
                    let exit_side = u8::from(*v == eps[1]);
                    let n_eps = n.endpoints();
                    let entry_side = u8::from(*v == n_eps[1]);
                    let turn = step_turn(m, n).expect("adjacent by construction");
                    slots[s] = ArenaNbr { to, exit_side, entry_side, turn };
                }
            }
            nbrs.push(slots);
            let f = 3 * m.xq + m.yq - 6;
            let li = if n_lines > 0 && f >= 0 && f % 12 == 0 && (f / 12) < n_lines as i64 {
                (f / 12) as i32
            } else {
                -1
            };
            line_of.push(li);
            filter_pass.push(spec.filter.passes_mid(&spec.domain, m));
        }
        Ok(Arena {
            start_idx: index[&spec.start],
            mids,
            nbrs,
            line_of,
            filter_pass,
            n_lines,
        })
    }
}

// ---------------------------------------------------------------------------
// Hot accumulator
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct HotAcc {
    counts: Vec<u64>,
    pe: Option<Vec<u64>>,
    ph: Option<Vec<u64>>,
    wrange: Option<Vec<(i32, i32)>>,
    ren_sum: Option<Vec<u64>>,
    pe_ren: Option<Vec<u64>>,
    walks: Option<Vec<Vec<u32>>>,
    visited_ct: u64,
    truncated: bool,
}

impl HotAcc {
    fn new(arena: &Arena, spec: &EnumSpec) -> HotAcc {
        let n = arena.mids.len();
        let stride = spec.max_len + 1;
        let nren = arena.n_lines + 1;
        HotAcc {
            counts: vec![0; stride],
            pe: spec.accum.per_endpoint.then(|| vec![0; n * stride]),
            ph: spec.accum.phase.then(|| vec![0; n * 48 * stride]),
            wrange: spec.accum.phase.then(|| vec![(i32::MAX, i32::MIN); n]),
            ren_sum: spec.accum.renewal.map(|_| vec![0; stride]),
            pe_ren: spec.accum.renewal.map(|_| vec![0; n * nren * stride]),
            walks: spec.accum.collect.map(|_| Vec::new()),
            visited_ct: 0,
            truncated: false,
        }
    }

    fn merge(&mut self, other: HotAcc) {
        fn addv(a: &mut Vec<u64>, b: &[u64]) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += *y;
            }
        }
        addv(&mut self.counts, &other.counts);
        if let (Some(a), Some(b)) = (self.pe.as_mut(), other.pe.as_ref()) {
            addv(a, b);
        }
        if let (Some(a), Some(b)) = (self.ph.as_mut(), other.ph.as_ref()) {
            addv(a, b);
        }
        if let (Some(a), Some(b)) = (self.wrange.as_mut(), other.wrange.as_ref()) {
            for (x, y) in a.iter_mut().zip(b) {
                x.0 = x.0.min(y.0);
                x.1 = x.1.max(y.1);
            }
        }
        if let (Some(a), Some(b)) = (self.ren_sum.as_mut(), other.ren_sum.as_ref()) {
            addv(a, b);
        }
        if let (Some(a), Some(b)) = (self.pe_ren.as_mut(), other.pe_ren.as_ref()) {
            addv(a, b);
        }
        if let (Some(a), Some(b)) = (self.walks.as_mut(), other.walks) {
            a.extend(b);
        }
        self.visited_ct += other.visited_ct;
        self.truncated |= other.truncated;
    }
}

// ---------------------------------------------------------------------------
// DFS
// ---------------------------------------------------------------------------

struct Frame {
    idx: u32,
    entry: u8, // 2 = unconstrained (walk start)
    slot: u8,
    turn: i8,
}

struct BudgetGuard<'a> {
    shared: &'a AtomicU64,
    exceeded: &'a AtomicBool,
    limit: u64,
    local: u64,
}

impl<'a> BudgetGuard<'a> {
    const FLUSH: u64 = 1024;

    fn new(shared: &'a AtomicU64, exceeded: &'a AtomicBool, limit: u64) -> Self {
        BudgetGuard { shared, exceeded, limit, local: 0 }
    }

    /// Count one visit; true while within budget.
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local >= Self::FLUSH {
            let prev = self.shared.fetch_add(self.local, AtomicOrdering::Relaxed);
            if prev + self.local > self.limit {
                self.exceeded.store(true, AtomicOrdering::Relaxed);
            }
            self.local = 0;
        }
        !self.exceeded.load(AtomicOrdering::Relaxed)
    }

    fn flush(&mut self) {
        let prev = self.shared.fetch_add(self.local, AtomicOrdering::Relaxed);
        if prev + self.local > self.limit {
            self.exceeded.store(true, AtomicOrdering::Relaxed);
        }
        self.local = 0;
    }
}

/// One DFS sweep.  `prefix` is the path already fixed (at least the start
/// mid-edge).  Nodes at depth >= `accumulate_from` are accumulated; when
/// `collect_prefixes_at` is set, paths reaching that depth are recorded as
/// tasks instead of being visited or descended into.
#[allow(clippy::too_many_arguments)]
fn dfs(
    arena: &Arena,
    spec: &EnumSpec,
    acc: &mut HotAcc,
    prefix: &[u32],
    accumulate_from: usize,
    collect_prefixes_at: Option<usize>,
    out_prefixes: Option<&mut Vec<Vec<u32>>>,
    budget: &mut BudgetGuard,
) -> Result<()> {
    let cap = spec.max_len;
    let n = arena.mids.len();
    let mut visited = vec![0u64; n.div_ceil(64)];
    let mut winding: i32 = 0;
    let mut line_cnt = vec![0u32; arena.n_lines];
    let mut n1: u32 = 0;
    let mut stack: Vec<Frame> = Vec::with_capacity(cap + 1);
    let mut prefixes = out_prefixes;

    macro_rules! bit_set {
        ($i:expr) => {
            visited[($i as usize) >> 6] |= 1u64 << (($i as usize) & 63)
        };
    }
    macro_rules! bit_clear {
        ($i:expr) => {
            visited[($i as usize) >> 6] &= !(1u64 << (($i as usize) & 63))
        };
    }
    macro_rules! bit_get {
        ($i:expr) => {
            visited[($i as usize) >> 6] & (1u64 << (($i as usize) & 63)) != 0
        };
    }

    macro_rules! renewal_push {
        ($idx:expr) => {
            if arena.n_lines > 0 {
                let li = arena.line_of[$idx as usize];
                if li >= 0 {
                    let c = &mut line_cnt[li as usize];
                    *c += 1;
                    if *c == 1 {
                        n1 += 1;
                    } else if *c == 2 {
                        n1 -= 1;
                    }
                }
            }
        };
    }
    macro_rules! renewal_pop {
        ($idx:expr) => {
            if arena.n_lines > 0 {
                let li = arena.line_of[$idx as usize];
                if li >= 0 {
                    let c = &mut line_cnt[li as usize];
                    if *c == 1 {
                        n1 -= 1;
                    } else if *c == 2 {
                        n1 += 1;
                    }
                    *c -= 1;
                }
            }
        };
    }

    macro_rules! visit {
        ($idx:expr, $depth:expr) => {{
            if !budget.tick() {
                return Err(Error::Resource(format!(
                    "walk budget of {} visits exceeded",
                    spec.budget
                )));
            }
            acc.visited_ct += 1;
            let idx = $idx as usize;
            let depth = $depth as usize;
            let stride = cap + 1;
            let pass = arena.filter_pass[idx] && depth >= spec.filter.min_len;
            if pass {
                if spec.accum.weight {
                    acc.counts[depth] += 1;
                }
                if let Some(pe) = acc.pe.as_mut() {
                    pe[idx * stride + depth] += 1;
                }
                if let Some(ph) = acc.ph.as_mut() {
                    let w48 = (winding.rem_euclid(48)) as usize;
                    ph[(idx * 48 + w48) * stride + depth] += 1;
                    let wr = &mut acc.wrange.as_mut().unwrap()[idx];
                    wr.0 = wr.0.min(winding);
                    wr.1 = wr.1.max(winding);
                }
                if let Some(rs) = acc.ren_sum.as_mut() {
                    rs[depth] += n1 as u64;
                }
                if let Some(pr) = acc.pe_ren.as_mut() {
                    let nren = arena.n_lines + 1;
                    pr[(idx * nren + n1 as usize) * stride + depth] += 1;
                }
                if let Some(walks) = acc.walks.as_mut() {
                    let cap_walks = spec.accum.collect.unwrap();
                    if walks.len() >= cap_walks {
                        return Err(Error::Resource(format!(
                            "walk collector cap of {cap_walks} exceeded"
                        )));
                    }
                    let mut path: Vec<u32> = stack.iter().map(|f| f.idx).collect();
                    path.push($idx);
                    walks.push(path);
                }
            }
        }};
    }

    // Replay the prefix.
    debug_assert!(!prefix.is_empty() && prefix[0] == arena.start_idx);
    for (d, &idx) in prefix.iter().enumerate() {
        let (entry, turn) = if d == 0 {
            (2u8, 0i8)
        } else {
            let from = prefix[d - 1];
            let nb = arena.nbrs[from as usize]
                .iter()
                .find(|nb| nb.to == idx)
                .expect("prefix step must be an arena edge");
            (nb.entry_side, nb.turn)
        };
        bit_set!(idx);
        winding += turn as i32;
        renewal_push!(idx);
        if d >= accumulate_from && Some(d) != collect_prefixes_at {
            visit!(idx, d);
        }
        stack.push(Frame { idx, entry, slot: 0, turn });
    }

    loop {
        let depth = stack.len() - 1;
        let (idx, entry, slot) = {
            let f = stack.last_mut().unwrap();
            if f.slot == 4 {
                let f = stack.pop().unwrap();
                bit_clear!(f.idx);
                winding -= f.turn as i32;
                renewal_pop!(f.idx);
                if stack.len() < prefix.len() {
                    budget.flush();
                    return Ok(());
                }
                continue;
            }
            let s = f.slot;
            f.slot += 1;
            (f.idx, f.entry, s)
        };
        let nb = arena.nbrs[idx as usize][slot as usize];
        if nb.to == NONE {
            continue;
        }
        if entry != 2 && nb.exit_side == entry {
            continue;
        }
        if bit_get!(nb.to) {
            continue;
        }
        if depth == cap {
            // a legal extension exists beyond the cap
            acc.truncated = true;
            continue;
        }
        let d = depth + 1;
        if Some(d) == collect_prefixes_at {
            if let Some(out) = prefixes.as_deref_mut() {
                let mut path: Vec<u32> = stack.iter().map(|f| f.idx).collect();
                path.push(nb.to);
                out.push(path);
            }
            continue;
        }
        bit_set!(nb.to);
        winding += nb.turn as i32;
        renewal_push!(nb.to);
        // visit before pushing the frame: the collector reads the stack as
        // the path prefix
        visit!(nb.to, d);
        stack.push(Frame { idx: nb.to, entry: nb.entry_side, slot: 0, turn: nb.turn });
    }
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

fn finalize(arena: &Arena, spec: &EnumSpec, acc: HotAcc) -> EnumRaw {
    let stride = spec.max_len + 1;
    let nonzero = |v: &[u64]| v.iter().any(|&x| x != 0);
    let per_endpoint = acc.pe.map(|pe| {
        let mut out = Vec::new();
        for (i, m) in arena.mids.iter().enumerate() {
            let row = &pe[i * stride..(i + 1) * stride];
            if nonzero(row) {
                out.push((*m, row.to_vec()));
            }
        }
        out
    });
    let phase = acc.ph.map(|ph| {
        let wrange = acc.wrange.as_ref().unwrap();
        let mut out = Vec::new();
        for (i, m) in arena.mids.iter().enumerate() {
            let mut by_w = Vec::new();
            for w in 0..48usize {
                let row = &ph[(i * 48 + w) * stride..(i * 48 + w + 1) * stride];
                if nonzero(row) {
                    by_w.push((w as i64, row.to_vec()));
                }
            }
            if !by_w.is_empty() {
                out.push((
                    *m,
                    PhaseCell {
                        w_min: wrange[i].0 as i64,
                        w_max: wrange[i].1 as i64,
                        by_w,
                    },
                ));
            }
        }
        out
    });
    let per_endpoint_renewal = acc.pe_ren.map(|pr| {
        let nren = arena.n_lines + 1;
        let mut out = Vec::new();
        for (i, m) in arena.mids.iter().enumerate() {
            let mut by_n = Vec::new();
            for nv in 0..nren {
                let row = &pr[(i * nren + nv) * stride..(i * nren + nv + 1) * stride];
                if nonzero(row) {
                    by_n.push((nv as u32, row.to_vec()));
                }
            }
            if !by_n.is_empty() {
                out.push((*m, by_n));
            }
        }
        out
    });
    let walks = acc.walks.map(|ws| {
        let mut walks: Vec<Walk> = ws
            .into_iter()
            .map(|path| {
                Walk::from_mids_unchecked(
                    path.iter().map(|&i| arena.mids[i as usize]).collect(),
                )
            })
            .collect();
        // canonical DFS preorder: lexicographic on the mid-edge sequence
        walks.sort();
        walks
    });
    EnumRaw {
        counts_by_len: acc.counts,
        per_endpoint,
        phase,
        renewal_sum_by_len: acc.ren_sum,
        per_endpoint_renewal,
        walks,
        walks_visited: acc.visited_ct,
        truncated: acc.truncated,
    }
}

fn run(spec: &EnumSpec, workers: usize) -> Result<EnumRaw> {
    let arena = Arena::build(spec)?;
    let shared = AtomicU64::new(0);
    let exceeded = AtomicBool::new(false);
    let dsplit = spec.max_len.min(4);

    // Root pass: accumulate nodes at depth < dsplit, collect task prefixes.
    let mut root_acc = HotAcc::new(&arena, spec);
    let mut prefixes: Vec<Vec<u32>> = Vec::new();
    {
        let mut guard = BudgetGuard::new(&shared, &exceeded, spec.budget);
        dfs(
            &arena,
            spec,
            &mut root_acc,
            &[arena.start_idx],
            0,
            Some(dsplit),
            Some(&mut prefixes),
            &mut guard,
        )?;
        guard.flush();
    }
    if dsplit == 0 {
        // max_len == 0: the root pass visited nothing; treat the start as
        // the single task below.
        prefixes = vec![vec![arena.start_idx]];
        root_acc = HotAcc::new(&arena, spec);
    }

    let task = |prefix: &Vec<u32>| -> Result<HotAcc> {
        let mut acc = HotAcc::new(&arena, spec);
        let mut guard = BudgetGuard::new(&shared, &exceeded, spec.budget);
        dfs(
            &arena,
            spec,
            &mut acc,
            prefix,
            prefix.len() - 1,
            None,
            None,
            &mut guard,
        )?;
        guard.flush();
        Ok(acc)
    };

    let results: Vec<Result<HotAcc>> = if workers <= 1 {
        prefixes.iter().map(task).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Contract(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            prefixes.par_iter().map(task).collect()
        })
    };

    let mut acc = root_acc;
    for r in results {
        acc.merge(r?);
    }
    Ok(finalize(&arena, spec, acc))
}

/// Visit every SAW from the start of length <= max_len inside the domain,
/// exactly once, updating the requested accumulators.
pub fn enumerate(spec: &EnumSpec) -> Result<EnumRaw> {
    run(spec, 1)
}

/// Identical results to [`enumerate`] (bitwise, for every accumulator), with
/// the DFS tree split at a fixed prefix depth across a worker pool.
pub fn parallel_enumerate(spec: &EnumSpec, workers: usize) -> Result<EnumRaw> {
    if workers == 0 {
        return Err(Error::Contract("workers must be positive".into()));
    }
    run(spec, workers)
}

/// Exact number of SAWs of length exactly n from the origin mid-edge.
pub fn count_saws(n: usize, len_cap: usize, budget: u64) -> Result<u64> {
    if n > len_cap {
        return Err(Error::Resource(format!(
            "count_saws({n}) exceeds the configured cap {len_cap}"
        )));
    }
    let mut spec = EnumSpec::new(Domain::Full, MidEdge::ORIGIN, n);
    spec.budget = budget;
    let raw = parallel_enumerate(&spec, rayon::current_num_threads())?;
    Ok(raw.counts_by_len[n])
}

// ---------------------------------------------------------------------------
// Field-valued views
// ---------------------------------------------------------------------------

/// Powers x^0..x^max of a field element.
pub fn power_table(x: &Cyc, max: usize) -> Vec<Cyc> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Cyc::one());
    for i in 1..=max {
        out.push(&out[i - 1] * x);
    }
    out
}

/// Sum of counts[l] * x^l.
pub fn weighted_sum(counts: &[u64], powers: &[Cyc]) -> Cyc {
    let mut acc = Cyc::zero();
    for (l, &c) in counts.iter().enumerate() {
        if c != 0 {
            acc = &acc + &powers[l].scale_int(&num::BigInt::from(c));
        }
    }
    acc
}

/// The spec-facing result bundle: exact field values assembled from the raw
/// integer counts at a given weight x (and phase exponent sigma).
#[derive(Debug, Clone)]
pub struct EnumResult {
    pub raw: EnumRaw,
    pub weight_sum: Option<Cyc>,
    pub per_endpoint_weight: Option<Vec<(MidEdge, Cyc)>>,
    /// Observable values: sum over walks of phase(winding) * x^len.
    pub phase_weighted: Option<Vec<(MidEdge, Cyc)>>,
    /// Sum over filter-passing walks of N(walk) * x^len.
    pub renewal_weighted: Option<Cyc>,
}

impl EnumResult {
    pub fn from_raw(raw: EnumRaw, x: &Cyc, sigma: Sigma, max_len: usize) -> EnumResult {
        let powers = power_table(x, max_len);
        let weight_sum = Some(weighted_sum(&raw.counts_by_len, &powers));
        let per_endpoint_weight = raw.per_endpoint.as_ref().map(|pe| {
            pe.iter()
                .map(|(m, counts)| (*m, weighted_sum(counts, &powers)))
                .collect()
        });
        let phase_weighted = raw.phase.as_ref().map(|ph| {
            ph.iter()
                .map(|(m, cell)| {
                    let mut acc = Cyc::zero();
                    for (w, counts) in &cell.by_w {
                        let s = weighted_sum(counts, &powers);
                        acc = &acc + &(&sigma.phase(*w) * &s);
                    }
                    (*m, acc)
                })
                .collect()
        });
        let renewal_weighted = raw
            .renewal_sum_by_len
            .as_ref()
            .map(|rs| weighted_sum(rs, &powers));
        EnumResult {
            raw,
            weight_sum,
            per_endpoint_weight,
            phase_weighted,
            renewal_weighted,
        }
    }

    pub fn walks_visited(&self) -> u64 {
        self.raw.walks_visited
    }

    pub fn truncated(&self) -> bool {
        self.raw.truncated
    }
}

/// Sum the per-endpoint count rows over the endpoints passing a predicate;
/// the workhorse for deriving several partition functions from one sweep.
pub fn sum_rows_where<F: Fn(&MidEdge) -> bool>(
    per_endpoint: &[(MidEdge, Vec<u64>)],
    stride: usize,
    pred: F,
) -> Vec<u64> {
    let mut out = vec![0u64; stride];
    for (m, row) in per_endpoint {
        if pred(m) {
            for (i, &c) in row.iter().enumerate() {
                out[i] += c;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{constant, x_critical, Constant};

    fn me(x: i64, y: i64) -> MidEdge {
        MidEdge::new(x, y).unwrap()
    }

    #[test]
    fn full_lattice_small_counts() {
        // L = 1: 4 walks of length 1 plus the trivial walk.
        let spec = EnumSpec::new(Domain::Full, MidEdge::ORIGIN, 1);
        let raw = enumerate(&spec).unwrap();
        assert_eq!(raw.counts_by_len, vec![1, 4]);
        assert_eq!(raw.walks_visited, 5);
        assert!(raw.truncated);
        // L = 2: each length-1 walk extends through the far endpoint to 2.
        let spec = EnumSpec::new(Domain::Full, MidEdge::ORIGIN, 2);
        let raw = enumerate(&spec).unwrap();
        assert_eq!(raw.counts_by_len, vec![1, 4, 8]);
    }

    #[test]
    fn count_saws_basics() {
        assert_eq!(count_saws(0, 40, 1 << 20).unwrap(), 1);
        assert_eq!(count_saws(1, 40, 1 << 20).unwrap(), 4);
        assert_eq!(count_saws(2, 40, 1 << 20).unwrap(), 8);
        assert!(count_saws(50, 40, 1 << 20).is_err());
    }

    #[test]
    fn budget_is_loud() {
        let mut spec = EnumSpec::new(Domain::Full, MidEdge::ORIGIN, 12);
        spec.budget = 100;
        match enumerate(&spec) {
            Err(Error::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn tria1_right_left_weight_sum() {
        let domain = Domain::Triangle { k: 0 };
        let mut spec = EnumSpec::new(domain.clone(), MidEdge::ORIGIN, 3);
        spec.filter = EndpointFilter::on_sides(vec![SideLabel::RightSide, SideLabel::LeftSide]);
        spec.accum.collect = Some(16);
        let raw = enumerate(&spec).unwrap();
        assert_eq!(raw.total_count(), 2);
        let walks = raw.walks.clone().unwrap();
        assert_eq!(walks.len(), 2);
        assert!(walks.iter().all(|w| w.len() == 1));
        // WeightSum = 2 x_c, and Eq. (2.2) forces cos(pi/8) * 2 x_c = 1.
        let xc = x_critical();
        let res = EnumResult::from_raw(raw, &xc, Sigma::FIVE_EIGHTHS, 3);
        let two_xc = xc.scale_int(&num::BigInt::from(2));
        assert_eq!(res.weight_sum.clone().unwrap(), two_xc);
        let lhs = &constant(Constant::CosPi8) * &res.weight_sum.unwrap();
        assert_eq!(lhs, Cyc::one());
    }

    #[test]
    fn start_outside_domain_errors() {
        let spec = EnumSpec::new(Domain::Triangle { k: 0 }, me(4, 0), 2);
        assert!(matches!(enumerate(&spec), Err(Error::StartOutsideDomain(_))));
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let domain = Domain::Triangle { k: 2 };
        let mut spec = EnumSpec::new(domain, MidEdge::ORIGIN, 45);
        spec.accum = AccumSet {
            weight: true,
            per_endpoint: true,
            phase: true,
            renewal: Some(2),
            collect: None,
        };
        let serial = enumerate(&spec).unwrap();
        for workers in [1, 2, 4, 8] {
            let par = parallel_enumerate(&spec, workers).unwrap();
            assert_eq!(
                serde_json::to_string(&par).unwrap(),
                serde_json::to_string(&serial).unwrap(),
                "workers={workers}"
            );
        }
    }

    #[test]
    fn collector_is_deterministic_and_ordered() {
        let mut spec = EnumSpec::new(Domain::Triangle { k: 1 }, MidEdge::ORIGIN, 6);
        spec.accum.collect = Some(100_000);
        let a = enumerate(&spec).unwrap();
        let b = parallel_enumerate(&spec, 4).unwrap();
        assert_eq!(a.walks, b.walks);
        let walks = a.walks.unwrap();
        let mut sorted = walks.clone();
        sorted.sort();
        assert_eq!(walks, sorted);
        // prefix property: every proper prefix of a collected walk is also
        // a collected walk (filter = Any)
        use std::collections::HashSet;
        let set: HashSet<&[MidEdge]> = walks.iter().map(|w| w.mids()).collect();
        for w in &walks {
            for l in 1..w.mids().len() {
                assert!(set.contains(&w.mids()[..l]));
            }
        }
    }

    #[test]
    fn truncation_flag_honest() {
        // Tria_1 admits no walk longer than 1, so L = 2 is complete.
        let spec = EnumSpec::new(Domain::Triangle { k: 0 }, MidEdge::ORIGIN, 2);
        let raw = enumerate(&spec).unwrap();
        assert!(!raw.truncated);
        assert_eq!(raw.counts_by_len, vec![1, 2, 0]);
        let spec = EnumSpec::new(Domain::Triangle { k: 1 }, MidEdge::ORIGIN, 1);
        assert!(enumerate(&spec).unwrap().truncated);
    }

    #[test]
    fn weight_sum_monotone_in_cap() {
        let xc = x_critical();
        let mut prev = Cyc::zero();
        for cap in [2usize, 4, 6, 8] {
            let spec = EnumSpec::new(Domain::Triangle { k: 1 }, MidEdge::ORIGIN, cap);
            let raw = enumerate(&spec).unwrap();
            let s = EnumResult::from_raw(raw, &xc, Sigma::FIVE_EIGHTHS, cap)
                .weight_sum
                .unwrap();
            let diff = &s - &prev;
            assert_ne!(
                crate::cyclo::real_sign(&diff).unwrap(),
                std::cmp::Ordering::Less
            );
            prev = s;
        }
    }

    #[test]
    fn per_endpoint_rows_partition_total() {
        let mut spec = EnumSpec::new(Domain::Triangle { k: 1 }, MidEdge::ORIGIN, 18);
        spec.accum = AccumSet::endpoints();
        let raw = enumerate(&spec).unwrap();
        let pe = raw.per_endpoint.as_ref().unwrap();
        let total: u64 = pe
            .iter()
            .map(|(_, row)| row.iter().sum::<u64>())
            .sum();
        assert_eq!(total, raw.walks_visited);
    }
}
