//! Exact finite balls of Cayley graphs built from an element oracle,
//! and the graph-level queries used throughout: girth, per-edge
//! shortest-cycle spectra, Baumslag-Solitar sheet properties, root
//! stabilizer search, and edge-isoperimetric upper bounds.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use hashbrown::HashMap;

use crate::oracle::{oracle_moves, Element, ElementOracle};
use crate::words::Letter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CayleyError {
    VertexCapExceeded { cap: usize },
    RadiusTooSmall { need: u32, have: u32 },
    AutomorphismSearchTooLarge { vertices: usize, cap: usize },
    AutomorphismCapExceeded { cap: usize },
    DegreeAnomaly { vertex: u32 },
    WrongGroup { expected: &'static str },
}

impl fmt::Display for CayleyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CayleyError::VertexCapExceeded { cap } => {
                write!(f, "ball exceeds the vertex cap {cap}")
            }
            CayleyError::RadiusTooSmall { need, have } => {
                write!(f, "ball radius {have} too small (need >= {need})")
            }
            CayleyError::AutomorphismSearchTooLarge { vertices, cap } => {
                write!(f, "ball has {vertices} vertices, above the search cap {cap}")
            }
            CayleyError::AutomorphismCapExceeded { cap } => {
                write!(f, "more than {cap} automorphisms; raise the cap to enumerate")
            }
            CayleyError::DegreeAnomaly { vertex } => {
                write!(f, "vertex {vertex} violates the degree invariant")
            }
            CayleyError::WrongGroup { expected } => {
                write!(f, "this check requires a ball built from `{expected}`")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CayleyError {}

/// Resource limits for ball construction.
#[derive(Debug, Clone, Copy)]
pub struct BallLimits {
    pub max_vertices: usize,
}

impl Default for BallLimits {
    fn default() -> Self {
        BallLimits {
            max_vertices: 8_000_000,
        }
    }
}

pub const ROOT: u32 = 0;

/// A finite rooted portion of a Cayley graph: every vertex at distance
/// <= radius from the identity, every edge between such vertices, exact
/// BFS distances, and generator-labelled adjacency. The root has index
/// 0. Simple by construction: no loops, no parallel edges.
pub struct Ball {
    radius: u32,
    degree: usize,
    moves: Vec<Letter>,
    gen_names: Vec<String>,
    /// CSR adjacency: edges[offsets[v]..offsets[v+1]] = (neighbor, move index).
    offsets: Vec<u32>,
    edges: Vec<(u32, u8)>,
    dist: Vec<u32>,
    /// BFS parent edge (parent vertex, move index); the root stores (0, 255).
    parent: Vec<(u32, u8)>,
    layers: Vec<usize>,
    index: HashMap<Box<[u8]>, u32>,
    transitive: bool,
}

impl Ball {
    /// BFS from the identity through the oracle. Vertices are
    /// deduplicated by canonical key; the result contains all vertices
    /// at distance <= radius and all edges between them.
    pub fn build(
        o: &dyn ElementOracle,
        radius: u32,
        limits: &BallLimits,
    ) -> Result<Ball, CayleyError> {
        assert!(radius >= 1, "radius must be >= 1");
        let moves = oracle_moves(o);
        let degree = moves.len();
        let gen_names = o
            .presentation()
            .generators
            .iter()
            .map(|g| g.name.clone())
            .collect();

        let mut index: HashMap<Box<[u8]>, u32> = HashMap::new();
        let mut elems: Vec<Element> = Vec::new();
        let mut dist: Vec<u32> = Vec::new();
        let mut parent: Vec<(u32, u8)> = Vec::new();

        let id = o.identity();
        index.insert(o.canonical_key(&id).into_boxed_slice(), 0);
        elems.push(id);
        dist.push(0);
        parent.push((0, 255));

        let mut offsets: Vec<u32> = Vec::with_capacity(16);
        let mut edges: Vec<(u32, u8)> = Vec::new();
        offsets.push(0);

        let mut u = 0usize;
        while u < elems.len() {
            let du = dist[u];
            for (mi, &m) in moves.iter().enumerate() {
                let next = o.multiply(&elems[u], m);
                let key = o.canonical_key(&next).into_boxed_slice();
                match index.get(&key) {
                    Some(&v) => edges.push((v, mi as u8)),
                    None if du < radius => {
                        if elems.len() >= limits.max_vertices {
                            return Err(CayleyError::VertexCapExceeded {
                                cap: limits.max_vertices,
                            });
                        }
                        let v = elems.len() as u32;
                        index.insert(key, v);
                        elems.push(next);
                        dist.push(du + 1);
                        parent.push((u as u32, mi as u8));
                        edges.push((v, mi as u8));
                    }
                    None => {} // neighbour outside the ball
                }
            }
            offsets.push(edges.len() as u32);
            u += 1;
        }
        drop(elems);

        let mut layers = alloc::vec![0usize; radius as usize + 1];
        for &d in &dist {
            layers[d as usize] += 1;
        }

        let ball = Ball {
            radius,
            degree,
            moves,
            gen_names,
            offsets,
            edges,
            dist,
            parent,
            layers,
            index,
            transitive: true,
        };
        ball.check_invariants()?;
        Ok(ball)
    }

    /// Service constructor for tests and irregular fixtures: an explicit
    /// connected simple graph rooted at vertex 0, edges given as
    /// undirected pairs with a move label per direction
    /// (u, v, label u->v, label v->u). Transitivity is not assumed.
    pub fn from_adjacency(
        n: usize,
        undirected_edges: &[(u32, u32, u8, u8)],
        moves: Vec<Letter>,
        gen_names: Vec<String>,
    ) -> Ball {
        let mut adj: Vec<Vec<(u32, u8)>> = alloc::vec![Vec::new(); n];
        for &(u, v, luv, lvu) in undirected_edges {
            assert!(u != v, "no loops");
            adj[u as usize].push((v, luv));
            adj[v as usize].push((u, lvu));
        }
        let mut dist = alloc::vec![u32::MAX; n];
        let mut parent = alloc::vec![(0u32, 255u8); n];
        let mut queue = VecDeque::new();
        dist[0] = 0;
        queue.push_back(0u32);
        while let Some(u) = queue.pop_front() {
            for &(v, mi) in &adj[u as usize] {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    parent[v as usize] = (u, mi);
                    queue.push_back(v);
                }
            }
        }
        assert!(dist.iter().all(|&d| d != u32::MAX), "graph must be connected");
        let radius = *dist.iter().max().unwrap();
        let mut layers = alloc::vec![0usize; radius as usize + 1];
        for &d in &dist {
            layers[d as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut edges = Vec::new();
        offsets.push(0u32);
        for row in &adj {
            edges.extend_from_slice(row);
            offsets.push(edges.len() as u32);
        }
        Ball {
            radius,
            degree: moves.len(),
            moves,
            gen_names,
            offsets,
            edges,
            dist,
            parent,
            layers,
            index: HashMap::new(),
            transitive: false,
        }
    }

    fn check_invariants(&self) -> Result<(), CayleyError> {
        for v in 0..self.vertex_count() as u32 {
            let row = self.neighbors(v);
            // interior vertices see the full move set (transitivity check)
            if self.dist(v) < self.radius && row.len() != self.degree {
                return Err(CayleyError::DegreeAnomaly { vertex: v });
            }
            // simple: no loops, no parallel edges
            for (i, &(w, _)) in row.iter().enumerate() {
                if w == v || row[..i].iter().any(|&(w2, _)| w2 == w) {
                    return Err(CayleyError::DegreeAnomaly { vertex: v });
                }
            }
        }
        Ok(())
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vertex_count(&self) -> usize {
        self.dist.len()
    }

    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn moves(&self) -> &[Letter] {
        &self.moves
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Whether this ball came from an oracle (degree-uniform Cayley ball).
    pub fn from_oracle(&self) -> bool {
        self.transitive
    }

    pub fn dist(&self, v: u32) -> u32 {
        self.dist[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[(u32, u8)] {
        let a = self.offsets[v as usize] as usize;
        let b = self.offsets[v as usize + 1] as usize;
        &self.edges[a..b]
    }

    /// Display name of a move: generator name, `^-1`-suffixed for the
    /// inverse direction.
    pub fn move_name(&self, mi: u8) -> String {
        let l = self.moves[mi as usize];
        let base = &self.gen_names[l.gen as usize];
        if l.inv {
            alloc::format!("{base}^-1")
        } else {
            base.clone()
        }
    }

    /// Generator index (edge "type") of a move, sign ignored.
    pub fn move_type(&self, mi: u8) -> u16 {
        self.moves[mi as usize].gen
    }

    pub fn find_key(&self, key: &[u8]) -> Option<u32> {
        self.index.get(key).copied()
    }

    /// The BFS word of a vertex (moves from the root); freely reduced
    /// because BFS distances strictly increase along parent chains.
    pub fn vertex_word(&self, v: u32) -> Vec<Letter> {
        let mut rev = Vec::new();
        let mut cur = v;
        while cur != ROOT {
            let (p, mi) = self.parent[cur as usize];
            rev.push(self.moves[mi as usize]);
            cur = p;
        }
        rev.reverse();
        rev
    }

    /// The move label of the directed edge (u, v), if present.
    pub fn edge_move(&self, u: u32, v: u32) -> Option<u8> {
        self.neighbors(u).iter().find(|&&(w, _)| w == v).map(|&(_, m)| m)
    }

    /// Iterate all directed edges as (src, dst, move index).
    pub fn directed_edges(&self) -> impl Iterator<Item = (u32, u32, u8)> + '_ {
        (0..self.vertex_count() as u32)
            .flat_map(move |u| self.neighbors(u).iter().map(move |&(v, m)| (u, v, m)))
    }

    #[cfg(test)]
    pub(crate) fn corrupt_edge_label_for_test(&mut self, u: u32, v: u32, new_move: u8) {
        let a = self.offsets[u as usize] as usize;
        let b = self.offsets[u as usize + 1] as usize;
        for e in &mut self.edges[a..b] {
            if e.0 == v {
                e.1 = new_move;
            }
        }
    }
}

// ---------------------------------------------------------------------
// Girth
// ---------------------------------------------------------------------

/// Result of the shortest-cycle search through the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GirthReport {
    /// Shortest cycle length found through the root, or None if the
    /// ball shows no cycle at all (girth > 2*radius, e.g. trees).
    pub length: Option<u32>,
    /// The reported length is certified as the girth of the infinite
    /// graph when it is at most the ball radius.
    pub exact: bool,
}

/// Shortest cycle through the root: minimum over root edges (root, v)
/// of 1 + dist(root, v) in the ball with that edge removed. On a
/// transitive graph every shortest cycle translates to one through the
/// root, so this is the girth as far as the ball can certify.
pub fn girth(b: &Ball) -> GirthReport {
    let mut best: Option<u32> = None;
    for &(v, _) in b.neighbors(ROOT) {
        let mut dist = alloc::vec![u32::MAX; b.vertex_count()];
        let mut queue = VecDeque::new();
        dist[ROOT as usize] = 0;
        queue.push_back(ROOT);
        'bfs: while let Some(u) = queue.pop_front() {
            for &(w, _) in b.neighbors(u) {
                if (u == ROOT && w == v) || (u == v && w == ROOT) {
                    continue; // the removed edge
                }
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    if w == v {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if dist[v as usize] != u32::MAX {
            let cycle = dist[v as usize] + 1;
            best = Some(best.map_or(cycle, |b0| b0.min(cycle)));
        }
    }
    GirthReport {
        length: best,
        exact: best.is_some_and(|l| l <= b.radius),
    }
}

// ---------------------------------------------------------------------
// Cycles through edges
// ---------------------------------------------------------------------

/// All simple directed cycles of exactly `len` edges starting with the
/// directed edge (u, v), as vertex sequences of length `len` (the
/// closing edge back to u is implicit).
pub fn directed_cycles_from_edge(b: &Ball, u: u32, v: u32, len: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if len < 3 {
        return out;
    }
    let mut path = alloc::vec![u, v];
    let mut on_path = alloc::vec![false; b.vertex_count()];
    on_path[u as usize] = true;
    on_path[v as usize] = true;
    dfs_cycles(b, u, len, &mut path, &mut on_path, &mut out);
    out
}

fn dfs_cycles(
    b: &Ball,
    origin: u32,
    len: u32,
    path: &mut Vec<u32>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<u32>>,
) {
    let cur = *path.last().unwrap();
    if path.len() as u32 == len {
        if b.neighbors(cur).iter().any(|&(w, _)| w == origin) {
            out.push(path.clone());
        }
        return;
    }
    for &(w, _) in b.neighbors(cur) {
        if !on_path[w as usize] {
            path.push(w);
            on_path[w as usize] = true;
            dfs_cycles(b, origin, len, path, on_path, out);
            on_path[w as usize] = false;
            path.pop();
        }
    }
}

/// Shortest-cycle lengths with multiplicities through each directed
/// edge at the root, up to a length cap.
#[derive(Debug, Clone)]
pub struct CycleSpectrum {
    pub cap: u32,
    pub per_edge: Vec<EdgeCycles>,
}

#[derive(Debug, Clone)]
pub struct EdgeCycles {
    pub move_idx: u8,
    pub neighbor: u32,
    /// (cycle length, number of distinct simple cycles of that length
    /// through the undirected edge), ascending.
    pub counts: Vec<(u32, u64)>,
    /// Lengths up to this are certified exact (the ball cannot hide a
    /// shorter cycle through a root edge below 2*radius).
    pub certified_up_to: u32,
}

pub fn edge_cycle_spectrum(b: &Ball, cap: u32) -> CycleSpectrum {
    let mut per_edge = Vec::new();
    for &(v, mi) in b.neighbors(ROOT) {
        let mut counts = Vec::new();
        for len in 3..=cap {
            let n = directed_cycles_from_edge(b, ROOT, v, len).len() as u64;
            if n > 0 {
                counts.push((len, n));
            }
        }
        per_edge.push(EdgeCycles {
            move_idx: mi,
            neighbor: v,
            counts,
            certified_up_to: 2 * b.radius,
        });
    }
    CycleSpectrum { cap, per_edge }
}

// ---------------------------------------------------------------------
// Baumslag-Solitar sheet properties
// ---------------------------------------------------------------------

/// Canonical form of an undirected simple cycle given as a vertex
/// sequence: rotate the minimum vertex to the front, then pick the
/// direction with the lexicographically smaller continuation.
fn canonical_cycle(c: &[u32]) -> Vec<u32> {
    let n = c.len();
    let (mi, _) = c.iter().enumerate().min_by_key(|&(_, &v)| v).unwrap();
    let fwd: Vec<u32> = (0..n).map(|i| c[(mi + i) % n]).collect();
    let bwd: Vec<u32> = (0..n).map(|i| c[(mi + n - i) % n]).collect();
    if fwd <= bwd {
        fwd
    } else {
        bwd
    }
}

/// All simple 5-cycles through a vertex, deduplicated.
fn five_cycles_at(b: &Ball, v: u32) -> Vec<Vec<u32>> {
    let mut seen: Vec<Vec<u32>> = Vec::new();
    for &(w, _) in b.neighbors(v) {
        for cyc in directed_cycles_from_edge(b, v, w, 5) {
            let canon = canonical_cycle(&cyc);
            if !seen.contains(&canon) {
                seen.push(canon);
            }
        }
    }
    seen
}

/// Edge types of a cycle in order (type = generator index of the label).
fn cycle_types(b: &Ball, cyc: &[u32]) -> Vec<u16> {
    let n = cyc.len();
    (0..n)
        .map(|i| {
            let m = b
                .edge_move(cyc[i], cyc[(i + 1) % n])
                .expect("cycle edge present");
            b.move_type(m)
        })
        .collect()
}

/// Verification report for the BS(1,2) sheet properties, checked over
/// every vertex at distance <= radius - 5 so that all relevant
/// 5-cycles lie inside the ball.
#[derive(Debug, Clone)]
pub struct BsSheetReport {
    /// Every x-type / y-type edge pair at a vertex shares a 5-cycle.
    pub common_five_cycle: bool,
    /// The third edge of any directed 5-cycle beginning [g, gx> has type y.
    pub third_edge_after_x: bool,
    /// The third edge of any directed 5-cycle beginning [g, gx^-1> has type x.
    pub third_edge_after_x_inv: bool,
    /// Every 5-cycle has two consecutive y edges and no two consecutive x edges.
    pub consecutive_types: bool,
    /// Every x-type edge lies in exactly 2 five-cycles; every y-type edge in 3.
    pub cycle_counts: bool,
    /// Every 5-cycle consists of exactly 2 x edges and 3 y edges.
    pub census_two_x_three_y: bool,
    pub vertices_checked: usize,
    pub five_cycles_seen: usize,
}

impl BsSheetReport {
    pub fn all_pass(&self) -> bool {
        self.common_five_cycle
            && self.third_edge_after_x
            && self.third_edge_after_x_inv
            && self.consecutive_types
            && self.cycle_counts
            && self.census_two_x_three_y
    }
}

/// Check the sheet properties on a ball built from the bs12 oracle
/// (generators x, y; edge types 0 = x, 1 = y).
pub fn verify_bs_sheet(b: &Ball) -> Result<BsSheetReport, CayleyError> {
    if b.degree != 4 || b.gen_names != ["x", "y"] {
        return Err(CayleyError::WrongGroup { expected: "bs12" });
    }
    if b.radius < 6 {
        return Err(CayleyError::RadiusTooSmall {
            need: 6,
            have: b.radius,
        });
    }
    let x_type = 0u16;
    let y_type = 1u16;

    let mut report = BsSheetReport {
        common_five_cycle: true,
        third_edge_after_x: true,
        third_edge_after_x_inv: true,
        consecutive_types: true,
        cycle_counts: true,
        census_two_x_three_y: true,
        vertices_checked: 0,
        five_cycles_seen: 0,
    };
    let mut all_cycles: Vec<Vec<u32>> = Vec::new();

    for v in 0..b.vertex_count() as u32 {
        if b.dist(v) + 5 > b.radius {
            continue;
        }
        report.vertices_checked += 1;
        let cycles = five_cycles_at(b, v);

        // each signed x move paired with each signed y move
        for &(w1, m1) in b.neighbors(v) {
            if b.move_type(m1) != x_type {
                continue;
            }
            for &(w2, m2) in b.neighbors(v) {
                if b.move_type(m2) != y_type {
                    continue;
                }
                let found = cycles.iter().any(|c| {
                    let i = c.iter().position(|&u| u == v).unwrap();
                    let prev = c[(i + c.len() - 1) % c.len()];
                    let next = c[(i + 1) % c.len()];
                    (prev == w1 && next == w2) || (prev == w2 && next == w1)
                });
                if !found {
                    report.common_five_cycle = false;
                }
            }
        }

        for &(w, m) in b.neighbors(v) {
            let directed = directed_cycles_from_edge(b, v, w, 5);
            if b.move_type(m) == x_type {
                let positive = !b.moves[m as usize].inv;
                for cyc in &directed {
                    let third = b.edge_move(cyc[2], cyc[3]).expect("edge");
                    let t = b.move_type(third);
                    if positive && t != y_type {
                        report.third_edge_after_x = false;
                    }
                    if !positive && t != x_type {
                        report.third_edge_after_x_inv = false;
                    }
                }
            }
            let expected = if b.move_type(m) == x_type { 2 } else { 3 };
            if directed.len() != expected {
                report.cycle_counts = false;
            }
        }

        for c in cycles {
            if !all_cycles.contains(&c) {
                all_cycles.push(c);
            }
        }
    }

    report.five_cycles_seen = all_cycles.len();
    for cyc in &all_cycles {
        let types = cycle_types(b, cyc);
        let n = types.len();
        let has_yy = (0..n).any(|i| types[i] == y_type && types[(i + 1) % n] == y_type);
        let has_xx = (0..n).any(|i| types[i] == x_type && types[(i + 1) % n] == x_type);
        if !has_yy || has_xx {
            report.consecutive_types = false;
        }
        let x_count = types.iter().filter(|&&t| t == x_type).count();
        if x_count != 2 || n - x_count != 3 {
            report.census_two_x_three_y = false;
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// Root stabilizer search
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct StabLimits {
    pub max_vertices: usize,
    pub max_automorphisms: usize,
}

impl Default for StabLimits {
    fn default() -> Self {
        StabLimits {
            max_vertices: 5000,
            max_automorphisms: 1_000_000,
        }
    }
}

/// A graph automorphism of the ball fixing the root, as a vertex
/// permutation, with a generator-type transport report.
#[derive(Debug, Clone)]
pub struct BallAutomorphism {
    pub perm: Vec<u32>,
    /// Per generator: does every edge of that type map to an edge of
    /// the same type?
    pub preserves_type: Vec<bool>,
}

impl BallAutomorphism {
    pub fn is_trivial(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }
}

#[derive(Debug, Clone)]
pub struct StabilizerReport {
    pub automorphisms: Vec<BallAutomorphism>,
}

struct StabSearch<'a> {
    b: &'a Ball,
    words: usize,
    adj: Vec<u64>,
    perm: Vec<u32>,
    used: Vec<bool>,
    found: Vec<Vec<u32>>,
    cap: usize,
}

impl StabSearch<'_> {
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn backtrack(&mut self, v: usize) -> Result<(), CayleyError> {
        let n = self.b.vertex_count();
        if v == n {
            if self.found.len() >= self.cap {
                return Err(CayleyError::AutomorphismCapExceeded { cap: self.cap });
            }
            self.found.push(self.perm.clone());
            return Ok(());
        }
        let dv = self.b.dist(v as u32);
        let deg_v = self.b.neighbors(v as u32).len();
        for w in 0..n {
            if self.used[w]
                || self.b.dist(w as u32) != dv
                || self.b.neighbors(w as u32).len() != deg_v
            {
                continue;
            }
            // preserve adjacency and non-adjacency with all mapped vertices
            let ok = (0..v).all(|u| self.adjacent(u, v) == self.adjacent(self.perm[u] as usize, w));
            if !ok {
                continue;
            }
            self.perm[v] = w as u32;
            self.used[w] = true;
            self.backtrack(v + 1)?;
            self.used[w] = false;
            self.perm[v] = u32::MAX;
        }
        Ok(())
    }
}

/// Enumerate all graph automorphisms of the ball that fix the root
/// (label-blind: only adjacency is used), by backtracking in BFS
/// order. These over-approximate the restrictions to the ball of
/// root-fixing automorphisms of the infinite graph.
pub fn root_stabilizer_search(
    b: &Ball,
    limits: &StabLimits,
) -> Result<StabilizerReport, CayleyError> {
    let n = b.vertex_count();
    if n > limits.max_vertices {
        return Err(CayleyError::AutomorphismSearchTooLarge {
            vertices: n,
            cap: limits.max_vertices,
        });
    }
    let words = n.div_ceil(64);
    let mut adj = alloc::vec![0u64; n * words];
    for (u, v, _) in b.directed_edges() {
        adj[u as usize * words + v as usize / 64] |= 1 << (v % 64);
    }
    let mut search = StabSearch {
        b,
        words,
        adj,
        perm: alloc::vec![u32::MAX; n],
        used: alloc::vec![false; n],
        found: Vec::new(),
        cap: limits.max_automorphisms,
    };
    search.perm[0] = 0;
    search.used[0] = true;
    search.backtrack(1)?;

    let gens = b.gen_names.len();
    let automorphisms = search
        .found
        .into_iter()
        .map(|perm| {
            let mut preserves = alloc::vec![true; gens];
            for (u, v, m) in b.directed_edges() {
                let t = b.move_type(m) as usize;
                match b.edge_move(perm[u as usize], perm[v as usize]) {
                    Some(m2) if b.move_type(m2) as usize == t => {}
                    _ => preserves[t] = false,
                }
            }
            BallAutomorphism {
                perm,
                preserves_type: preserves,
            }
        })
        .collect();
    Ok(StabilizerReport { automorphisms })
}

// ---------------------------------------------------------------------
// Edge-isoperimetric upper bounds
// ---------------------------------------------------------------------

/// An evaluated vertex set: boundary edge count against degree * size.
#[derive(Debug, Clone)]
pub struct SetRatio {
    pub boundary: u64,
    pub size: u64,
    /// True when every vertex of the set has distance < radius, so the
    /// whole edge boundary is visible inside the ball.
    pub certified: bool,
}

impl SetRatio {
    pub fn ratio(&self, degree: usize) -> f64 {
        self.boundary as f64 / (degree as f64 * self.size as f64)
    }

    fn better_than(&self, other: &SetRatio) -> bool {
        // self.boundary / self.size < other.boundary / other.size
        (self.boundary as u128) * (other.size as u128)
            < (other.boundary as u128) * (self.size as u128)
    }
}

/// Boundary ratio of an explicit vertex set (direct count). Edges
/// missing at the ball boundary necessarily leave the set and are
/// counted; the certification flag still requires the set to stay
/// strictly inside the ball.
pub fn phi_ratio_of_set(b: &Ball, set: &[u32]) -> SetRatio {
    let mut inset = alloc::vec![false; b.vertex_count()];
    for &v in set {
        inset[v as usize] = true;
    }
    let mut boundary = 0u64;
    let mut certified = true;
    for &v in set {
        if b.dist(v) >= b.radius {
            certified = false;
        }
        for &(w, _) in b.neighbors(v) {
            if !inset[w as usize] {
                boundary += 1;
            }
        }
        boundary += (b.degree - b.neighbors(v).len()) as u64;
    }
    SetRatio {
        boundary,
        size: set.len() as u64,
        certified,
    }
}

#[derive(Debug, Clone)]
pub struct PhiReport {
    pub best: SetRatio,
    pub witness: Vec<u32>,
    /// Sets up to this size were enumerated exhaustively; larger sizes
    /// (when requested) were explored greedily.
    pub exhaustive_up_to: usize,
    pub sets_examined: u64,
}

/// Exhaustive-enumeration cutoff for connected vertex sets.
pub const PHI_EXHAUSTIVE_LIMIT: usize = 12;

fn explore_connected_sets(
    b: &Ball,
    limit: usize,
    set: &mut Vec<u32>,
    inset: &mut [bool],
    forbidden: &mut [bool],
    frontier: &[u32],
    best: &mut SetRatio,
    best_set: &mut Vec<u32>,
    examined: &mut u64,
) {
    if set.len() >= limit {
        return;
    }
    for (i, &c) in frontier.iter().enumerate() {
        set.push(c);
        inset[c as usize] = true;
        let rated = phi_ratio_of_set(b, set);
        *examined += 1;
        if rated.certified && rated.better_than(best) {
            *best = rated;
            *best_set = set.clone();
        }
        let mut next_frontier: Vec<u32> = frontier[i + 1..].to_vec();
        for &(w, _) in b.neighbors(c) {
            if !inset[w as usize]
                && !forbidden[w as usize]
                && !next_frontier.contains(&w)
                && !frontier[..i].contains(&w)
            {
                next_frontier.push(w);
            }
        }
        // candidates skipped at this level stay excluded inside the branch
        for &f in &frontier[..i] {
            forbidden[f as usize] = true;
        }
        explore_connected_sets(
            b,
            limit,
            set,
            inset,
            forbidden,
            &next_frontier,
            best,
            best_set,
            examined,
        );
        for &f in &frontier[..i] {
            forbidden[f as usize] = false;
        }
        inset[c as usize] = false;
        set.pop();
    }
}

/// Minimize |edge boundary| / (degree * |W|) over connected vertex sets
/// W containing the root: exhaustively for |W| <= min(max_set_size, 12),
/// then greedily up to max_set_size. The result is a certified upper
/// bound on the edge-isoperimetric constant whenever the witness stays
/// strictly inside the ball.
pub fn phi_upper_bound(b: &Ball, max_set_size: usize) -> PhiReport {
    let exhaustive_up_to = max_set_size.min(PHI_EXHAUSTIVE_LIMIT);
    let mut best_set = alloc::vec![ROOT];
    let mut best = phi_ratio_of_set(b, &best_set);
    let mut examined = 1u64;

    let mut inset = alloc::vec![false; b.vertex_count()];
    let mut forbidden = alloc::vec![false; b.vertex_count()];
    inset[ROOT as usize] = true;
    let frontier: Vec<u32> = b.neighbors(ROOT).iter().map(|&(w, _)| w).collect();
    let mut set = alloc::vec![ROOT];
    explore_connected_sets(
        b,
        exhaustive_up_to,
        &mut set,
        &mut inset,
        &mut forbidden,
        &frontier,
        &mut best,
        &mut best_set,
        &mut examined,
    );

    if max_set_size > exhaustive_up_to {
        // greedy growth: repeatedly add the frontier vertex minimizing
        // the resulting boundary
        let mut set: Vec<u32> = alloc::vec![ROOT];
        let mut inset = alloc::vec![false; b.vertex_count()];
        inset[ROOT as usize] = true;
        while set.len() < max_set_size {
            let mut frontier: Vec<u32> = Vec::new();
            for &v in &set {
                for &(w, _) in b.neighbors(v) {
                    if !inset[w as usize] && !frontier.contains(&w) {
                        frontier.push(w);
                    }
                }
            }
            let mut candidate: Option<(u64, u32)> = None;
            for &w in &frontier {
                set.push(w);
                let r = phi_ratio_of_set(b, &set);
                examined += 1;
                set.pop();
                match candidate {
                    Some((bnd, _)) if bnd <= r.boundary => {}
                    _ => candidate = Some((r.boundary, w)),
                }
            }
            let Some((_, w)) = candidate else { break };
            set.push(w);
            inset[w as usize] = true;
            let rated = phi_ratio_of_set(b, &set);
            if rated.certified && rated.better_than(&best) {
                best = rated;
                best_set = set.clone();
            }
        }
    }

    PhiReport {
        best,
        witness: best_set,
        exhaustive_up_to,
        sets_examined: examined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_for, Builtin};
    use alloc::string::ToString;

    fn ball(b: Builtin, r: u32) -> Ball {
        let o = oracle_for(b).unwrap();
        Ball::build(o.as_ref(), r, &BallLimits::default()).unwrap()
    }

    #[test]
    fn layer_sizes() {
        assert_eq!(ball(Builtin::Grigorchuk, 2).layers(), &[1, 3, 5]);
        assert_eq!(ball(Builtin::Tree(3), 3).layers(), &[1, 3, 6, 12]);
        assert_eq!(ball(Builtin::Zd(2), 2).layers(), &[1, 4, 8]);
    }

    #[test]
    fn girth_values() {
        let z2 = ball(Builtin::Zd(2), 4);
        let g = girth(&z2);
        assert_eq!(g.length, Some(4));
        assert!(g.exact);
        for r in 2..=5 {
            assert_eq!(girth(&ball(Builtin::Zd(2), r)).length, Some(4));
        }
        let t3 = ball(Builtin::Tree(3), 4);
        assert_eq!(girth(&t3).length, None);
        let grig = ball(Builtin::Grigorchuk, 4);
        let g = girth(&grig);
        assert_eq!(g.length, Some(4));
        assert!(g.exact);
    }

    #[test]
    fn bs12_edge_spectrum() {
        let b = ball(Builtin::Bs12, 6);
        let spec = edge_cycle_spectrum(&b, 5);
        assert_eq!(spec.per_edge.len(), 4);
        for e in &spec.per_edge {
            let t = b.move_type(e.move_idx);
            let expected = if t == 0 { 2 } else { 3 };
            assert_eq!(e.counts.first(), Some(&(5, expected)), "type {t}");
        }
    }

    #[test]
    fn grig_a_edge_has_no_short_cycle() {
        let b = ball(Builtin::Grigorchuk, 4);
        let spec = edge_cycle_spectrum(&b, 4);
        for e in &spec.per_edge {
            let name = b.move_name(e.move_idx);
            if name == "a" {
                assert!(e.counts.is_empty(), "a-edge should lie in no cycle of length <= 4");
            } else {
                assert_eq!(e.counts.first(), Some(&(4, 1)), "{name}-edge");
            }
        }
    }

    #[test]
    fn tree_spectrum_empty() {
        let b = ball(Builtin::Tree(3), 4);
        let spec = edge_cycle_spectrum(&b, 8);
        assert!(spec.per_edge.iter().all(|e| e.counts.is_empty()));
    }

    #[test]
    fn bs_sheet_properties() {
        for r in [6, 7] {
            let b = ball(Builtin::Bs12, r);
            let rep = verify_bs_sheet(&b).unwrap();
            assert!(rep.all_pass(), "radius {r}: {rep:?}");
            assert!(rep.vertices_checked > 0);
        }
        assert!(verify_bs_sheet(&ball(Builtin::Bs12, 5)).is_err());
        assert!(verify_bs_sheet(&ball(Builtin::Zd(2), 6)).is_err());
    }

    #[test]
    fn bs_sheet_mutation_control() {
        let mut b = ball(Builtin::Bs12, 6);
        // mislabel one x edge as a y move; type-sequence checks must fail
        let (v, y_move) = {
            let x_edge = b
                .neighbors(ROOT)
                .iter()
                .find(|&&(_, m)| b.move_type(m) == 0)
                .copied()
                .unwrap();
            let y_move = (0..b.degree() as u8).find(|&m| b.move_type(m) == 1).unwrap();
            (x_edge.0, y_move)
        };
        b.corrupt_edge_label_for_test(ROOT, v, y_move);
        b.corrupt_edge_label_for_test(v, ROOT, y_move);
        let rep = verify_bs_sheet(&b).unwrap();
        assert!(!rep.all_pass());
    }

    #[test]
    fn stabilizer_counts() {
        let z2 = ball(Builtin::Zd(2), 2);
        let rep = root_stabilizer_search(&z2, &StabLimits::default()).unwrap();
        assert_eq!(rep.automorphisms.len(), 8);

        let t3 = ball(Builtin::Tree(3), 2);
        let rep = root_stabilizer_search(&t3, &StabLimits::default()).unwrap();
        assert_eq!(rep.automorphisms.len(), 48);
    }

    #[test]
    fn stabilizer_cap() {
        let t3 = ball(Builtin::Tree(3), 2);
        let err = root_stabilizer_search(
            &t3,
            &StabLimits {
                max_vertices: 5000,
                max_automorphisms: 10,
            },
        );
        assert!(matches!(err, Err(CayleyError::AutomorphismCapExceeded { .. })));
    }

    #[test]
    fn grig_stabilizer_fixes_a_edge() {
        let b = ball(Builtin::Grigorchuk, 4);
        let a_vertex = b
            .neighbors(ROOT)
            .iter()
            .find(|&&(_, m)| b.move_name(m) == "a")
            .unwrap()
            .0;
        let rep = root_stabilizer_search(&b, &StabLimits::default()).unwrap();
        assert!(!rep.automorphisms.is_empty());
        for auto in &rep.automorphisms {
            assert_eq!(auto.perm[a_vertex as usize], a_vertex);
        }
    }

    #[test]
    fn phi_singleton_and_boxes() {
        let b = ball(Builtin::Zd(2), 6);
        let single = phi_ratio_of_set(&b, &[ROOT]);
        assert_eq!(single.boundary, 4);
        assert_eq!(single.ratio(b.degree()), 1.0);

        // n x n boxes containing the root have edge boundary 4n
        for n in 2..=3i32 {
            let mut set = Vec::new();
            for v in 0..b.vertex_count() as u32 {
                let mut x = 0i32;
                let mut y = 0i32;
                for l in b.vertex_word(v) {
                    let delta = if l.inv { -1 } else { 1 };
                    if l.gen == 0 {
                        x += delta;
                    } else {
                        y += delta;
                    }
                }
                if (0..n).contains(&x) && (0..n).contains(&y) {
                    set.push(v);
                }
            }
            assert_eq!(set.len(), (n * n) as usize);
            let r = phi_ratio_of_set(&b, &set);
            assert_eq!(r.boundary as i32, 4 * n);
            assert!(r.certified);
            assert!((r.ratio(4) - 1.0 / n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_tree_lower_bound() {
        let b = ball(Builtin::Tree(3), 6);
        let rep = phi_upper_bound(&b, 7);
        // connected subtrees of size s have edge boundary s + 2
        assert_eq!(rep.best.boundary, rep.best.size + 2);
        assert!(rep.best.ratio(3) >= 1.0 / 3.0);
        assert!(rep.best.certified);
    }

    #[test]
    fn phi_exhaustive_finds_square() {
        let b = ball(Builtin::Zd(2), 6);
        let rep = phi_upper_bound(&b, 4);
        assert_eq!(rep.best.size, 4);
        assert_eq!(rep.best.boundary, 8);
    }

    #[test]
    fn vertex_cap_respected() {
        let o = oracle_for(Builtin::Tree(3)).unwrap();
        let err = Ball::build(o.as_ref(), 6, &BallLimits { max_vertices: 10 });
        assert!(matches!(err, Err(CayleyError::VertexCapExceeded { .. })));
    }

    #[test]
    fn from_adjacency_path_graph() {
        let b = Ball::from_adjacency(
            3,
            &[(0, 1, 0, 0), (1, 2, 0, 0)],
            alloc::vec![Letter::new(0, false)],
            alloc::vec!["s".to_string()],
        );
        assert_eq!(b.dist(2), 2);
        assert_eq!(b.layers(), &[1, 1, 1]);
        assert!(!b.from_oracle());
    }
}
