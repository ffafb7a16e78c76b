//! The face-growth enumerator at the heart of every search.
//!
//! Rotations and signatures are constructed by tracing faces. A face
//! starts at the smallest unclaimed transition slot and is extended one
//! arc at a time; committing succ[v][u] = w means "a walk arriving at v
//! from u leaves toward w". A walk state carries a local side bit that
//! flips across twisted edges: with side 0 the walk consumes a transition
//! forward, with side 1 it consumes the transition whose value points back
//! at it. Every transition is claimed by exactly one traced face, so face
//! lengths always sum to twice the edge count and each complete assignment
//! is a valid signed rotation system whose faces are exactly the traced
//! ones.
//!
//! Seeded transitions (canonical first-vertex rotations) and symmetry
//! copies (period-p shift classes) are walked through without branching,
//! keeping the enumeration deterministic for a fixed seed.

pub const MAXN: usize = 18;
const NONE: u8 = u8::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Budget {
    Unlimited,
    Nodes(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Stats {
    pub nodes: u64,
    pub prunes: u64,
    pub emitted: u64,
}

/// A complete embedding produced by the searcher.
#[derive(Clone, Debug)]
pub struct RawEmbedding {
    pub n: usize,
    /// succ[v][u] = w
    pub succ: Vec<[u8; MAXN]>,
    /// twisted edges as bitmasks: bit u of twisted[v]
    pub twisted: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FaceBudget {
    /// remaining face count per length (index = length)
    pub remaining: Vec<u32>,
    pub max_len: usize,
    /// face lengths that must be Hamiltonian (every vertex exactly once)
    pub hamiltonian: Vec<usize>,
}

impl FaceBudget {
    pub fn all_of_length(len: usize, count: usize) -> FaceBudget {
        let mut remaining = vec![0; len + 1];
        remaining[len] = count as u32;
        FaceBudget {
            remaining,
            max_len: len,
            hamiltonian: Vec::new(),
        }
    }

    pub fn from_counts(counts: &[(usize, usize)]) -> FaceBudget {
        let max_len = counts.iter().map(|&(l, _)| l).max().unwrap_or(0);
        let mut remaining = vec![0; max_len + 1];
        for &(l, c) in counts {
            remaining[l] += c as u32;
        }
        FaceBudget {
            remaining,
            max_len,
            hamiltonian: Vec::new(),
        }
    }

    fn total_len(&self) -> usize {
        self.remaining
            .iter()
            .enumerate()
            .map(|(l, &c)| l * c as usize)
            .sum()
    }
}

pub struct Searcher<'a> {
    pub n: usize,
    edge_count: usize,
    adj: [u32; MAXN],
    deg: [u8; MAXN],
    tree: [u32; MAXN],
    period: usize,
    period_span: usize,
    orientable_only: bool,

    succ: [[u8; MAXN]; MAXN],
    pred: [[u8; MAXN]; MAXN],
    claimed: [[bool; MAXN]; MAXN],
    unclaimed: usize,
    // chain structure per vertex: valid at chain heads/tails only
    chain_tail: [[u8; MAXN]; MAXN],
    chain_head: [[u8; MAXN]; MAXN],
    placed: [u8; MAXN],
    /// -1 unknown, 0 normal, 1 twisted
    lambda: [[i8; MAXN]; MAXN],

    budget: FaceBudget,
    cur_face: Vec<u8>,

    trail: Vec<TrailOp>,
    pub stats: Stats,
    node_budget: u64,
    pub out_of_budget: bool,
    emit: Box<dyn FnMut(&RawEmbedding) -> bool + 'a>,
    stopped: bool,
    path: Vec<u32>,
    resume_path: Option<Vec<u32>>,
    pub checkpoint: Option<Vec<u32>>,
    /// debug aid: a known-good assignment; rejections on its path panic
    pub debug_target: Option<Vec<[u8; MAXN]>>,
    deviations: u32,
}

#[derive(Clone, Copy, Debug)]
enum TrailOp {
    Succ(u8, u8, u8, u8), // v, u, head1, tail2
    Lambda(u8, u8),
    Claim(u8, u8),
}

impl<'a> Searcher<'a> {
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        budget: FaceBudget,
        emit: Box<dyn FnMut(&RawEmbedding) -> bool + 'a>,
    ) -> Searcher<'a> {
        assert!(n <= MAXN);
        let mut adj = [0u32; MAXN];
        let mut deg = [0u8; MAXN];
        for &(u, v) in edges {
            assert!(u != v && u < n && v < n);
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        for v in 0..n {
            deg[v] = adj[v].count_ones() as u8;
        }
        let mut tree = [0u32; MAXN];
        let mut seen = 1u32;
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let v = queue[qi];
            qi += 1;
            let mut m = adj[v] & !seen;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                seen |= 1 << u;
                tree[v] |= 1 << u;
                tree[u] |= 1 << v;
                queue.push(u);
            }
        }
        let unclaimed = 2 * edges.len();
        Searcher {
            n,
            edge_count: edges.len(),
            adj,
            deg,
            tree,
            period: 1,
            period_span: 0,
            orientable_only: true,
            succ: [[NONE; MAXN]; MAXN],
            pred: [[NONE; MAXN]; MAXN],
            claimed: [[false; MAXN]; MAXN],
            unclaimed,
            chain_tail: [[NONE; MAXN]; MAXN],
            chain_head: [[NONE; MAXN]; MAXN],
            placed: [0; MAXN],
            lambda: [[-1; MAXN]; MAXN],
            budget,
            cur_face: Vec::new(),
            trail: Vec::new(),
            stats: Stats::default(),
            node_budget: u64::MAX,
            out_of_budget: false,
            emit,
            stopped: false,
            path: Vec::new(),
            resume_path: None,
            checkpoint: None,
            debug_target: None,
            deviations: 0,
        }
    }

    pub fn set_node_budget(&mut self, b: Budget) {
        self.node_budget = match b {
            Budget::Unlimited => u64::MAX,
            Budget::Nodes(k) => k,
        };
    }

    pub fn stopped(&self) -> bool {
        self.stopped
    }

    pub fn finished_early(&self) -> bool {
        self.stopped || self.out_of_budget
    }

    /// Clears all assignment state (for the next seed) but keeps the
    /// statistics and budget counters.
    pub fn reset_keep_stats(&mut self) {
        self.succ = [[NONE; MAXN]; MAXN];
        self.pred = [[NONE; MAXN]; MAXN];
        self.claimed = [[false; MAXN]; MAXN];
        self.chain_tail = [[NONE; MAXN]; MAXN];
        self.chain_head = [[NONE; MAXN]; MAXN];
        self.placed = [0; MAXN];
        self.lambda = [[-1; MAXN]; MAXN];
        self.unclaimed = 2 * self.edge_count;
        self.trail.clear();
        self.path.clear();
        self.cur_face.clear();
        debug_assert!(self.budget.remaining.iter().all(|&c| c > 0 || c == 0));
    }

    pub fn set_resume_path(&mut self, path: Vec<u32>) {
        self.resume_path = Some(path);
    }

    /// Explore edge signatures too (nonorientable targets). Spanning-tree
    /// edges stay pinned normal, which quotients by vertex resigning.
    pub fn explore_signatures(&mut self) {
        self.orientable_only = false;
    }

    /// Cyclic symmetry: rotations of numbered vertices i and i+period agree
    /// up to adding period (mod span).
    pub fn set_symmetry(&mut self, period: usize, span: usize) {
        assert!(span % period == 0);
        self.period = period;
        self.period_span = span;
    }

    /// Pins an edge signature ahead of the run.
    pub fn seed_lambda(&mut self, u: usize, v: usize, twisted: bool) {
        self.lambda[u][v] = twisted as i8;
        self.lambda[v][u] = twisted as i8;
    }

    /// Pins the full rotation of a vertex as a canonical seed.
    pub fn seed_rotation(&mut self, v: usize, ring: &[usize]) {
        for i in 0..ring.len() {
            let u = ring[i] as u8;
            let w = ring[(i + 1) % ring.len()] as u8;
            let ok = self.set_succ(v as u8, u, w);
            assert!(ok, "seed rotation conflicts");
        }
    }

    pub fn run(&mut self) {
        // pin signatures: everything normal in orientable mode, spanning
        // tree normal otherwise
        for v in 0..self.n {
            let mask = if self.orientable_only {
                self.adj[v]
            } else {
                self.tree[v]
            };
            let mut m = mask;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                self.lambda[v][u] = 0;
            }
        }
        let frontier = self.resume_path.take();
        self.start_next_face(frontier.as_deref());
    }

    fn start_next_face(&mut self, frontier: Option<&[u32]>) {
        if self.stopped || self.out_of_budget {
            return;
        }
        let Some((v, u)) = self.first_unclaimed() else {
            if self.budget.remaining.iter().all(|&c| c == 0) {
                self.emit_current();
            }
            return;
        };
        if self.budget.total_len() != self.unclaimed {
            self.stats.prunes += 1;
            return;
        }
        debug_assert!(self.cur_face.is_empty());
        self.walk(v, u, false, v, u, 0, frontier);
    }

    fn first_unclaimed(&self) -> Option<(u8, u8)> {
        for v in 0..self.n {
            let mut m = self.adj[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                if !self.claimed[v][u] {
                    return Some((v as u8, u as u8));
                }
            }
        }
        None
    }

    /// Processes the walk state "at v, arrived from u, local side s"; the
    /// face started at transition (sv, su) and has consumed `len` slots.
    /// `frontier` is the remaining checkpoint path being resumed, active
    /// only along the leftmost replayed branch.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        &mut self,
        v: u8,
        u: u8,
        s: bool,
        sv: u8,
        su: u8,
        len: usize,
        frontier: Option<&[u32]>,
    ) {
        if self.stopped || self.out_of_budget {
            return;
        }
        if !s && v == sv && u == su && len > 0 {
            self.close_face(len, frontier);
            return;
        }
        if len >= self.budget.max_len {
            if self.debug_target.is_some() && self.deviations == 0 {
                panic!("target walk exceeded max face length at v={v} u={u} s={s} len={len}");
            }
            self.stats.prunes += 1;
            return;
        }
        let (vi, ui) = (v as usize, u as usize);
        // forced continuation through an already-set transition
        let forced = if !s {
            self.succ[vi][ui]
        } else {
            self.pred[vi][ui]
        };
        if forced != NONE {
            let w = forced;
            let slot = if !s { u } else { w };
            if self.claimed[vi][slot as usize] {
                if self.debug_target.is_some() && self.deviations == 0 {
                    panic!("target forced continuation claimed at v={v} slot={slot} s={s} len={len}");
                }
                self.stats.prunes += 1;
                return;
            }
            if self.lambda[vi][w as usize] >= 0 {
                let mark = self.trail_mark();
                self.claim(v, slot);
                self.step_to(w, v, s, sv, su, len, frontier);
                self.rollback(mark);
                return;
            }
            // forced continuation over an edge with an open signature:
            // still a decision node
            self.stats.nodes += 1;
            if self.stats.nodes > self.node_budget {
                self.out_of_budget = true;
                self.checkpoint = Some(self.path.clone());
                return;
            }
            let skip_until = frontier.and_then(|f| f.first().copied()).unwrap_or(0);
            for (ci, lchoice) in [0i8, 1].into_iter().enumerate() {
                if (ci as u32) < skip_until {
                    continue;
                }
                let child_frontier = match frontier {
                    Some(f) if !f.is_empty() && ci as u32 == f[0] => Some(&f[1..]),
                    _ => None,
                };
                let mark = self.trail_mark();
                self.claim(v, slot);
                self.set_lambda(v, w, lchoice);
                self.path.push(ci as u32);
                self.step_to(w, v, s, sv, su, len, child_frontier);
                self.path.pop();
                self.rollback(mark);
                if self.stopped || self.out_of_budget {
                    return;
                }
            }
            return;
        }
        // branching: choose the continuation w (and the signature of the
        // next edge when it is undecided)
        self.stats.nodes += 1;
        if self.stats.nodes > self.node_budget {
            self.out_of_budget = true;
            self.checkpoint = Some(self.path.clone());
            return;
        }
        let skip_until = frontier.and_then(|f| f.first().copied()).unwrap_or(0);
        // closure lookahead: a candidate either closes the face right now
        // or extends it, and an extension must still be able to close at
        // some open length; when len+2 is the only one left, the
        // continuation has to neighbor the start vertex
        let ext_can_close = self.smallest_open_length(len + 2).is_some();
        let ext_must_close_next = ext_can_close && self.smallest_open_length(len + 3).is_none();
        let mut ci = 0u32;
        let mut m = self.adj[vi];
        while m != 0 {
            let w = m.trailing_zeros() as u8;
            m &= m - 1;
            let closes_now = w == sv && v == su;
            if !closes_now {
                if !ext_can_close
                    || (ext_must_close_next && self.adj[w as usize] & (1 << sv) == 0)
                {
                    if self.debug_target.as_ref().is_some_and(|t| {
                        self.deviations == 0
                            && (if !s { t[vi][u as usize] == w } else { t[vi][w as usize] == u })
                    }) {
                        panic!(
                            "target candidate killed by closure lookahead at v={v} u={u} w={w} len={len}"
                        );
                    }
                    continue;
                }
            }
            let lam = self.lambda[vi][w as usize];
            let lams: &[i8] = if lam >= 0 { &[-1] } else { &[0, 1] };
            for &lchoice in lams {
                if ci < skip_until {
                    ci += 1;
                    continue;
                }
                let child_frontier = match frontier {
                    Some(f) if !f.is_empty() && ci == f[0] => Some(&f[1..]),
                    _ => None,
                };
                let on_target = self.debug_target.as_ref().is_some_and(|t| {
                    self.deviations == 0
                        && (if !s { t[vi][u as usize] == w } else { t[vi][w as usize] == u })
                });
                let mark = self.trail_mark();
                let ok = if !s {
                    self.set_succ_sym(v, u, w)
                } else {
                    self.set_succ_sym(v, w, u)
                };
                if !ok {
                    if on_target {
                        panic!("target candidate rejected by set_succ at v={v} u={u} w={w} s={s}");
                    }
                    self.rollback(mark);
                    self.stats.prunes += 1;
                    ci += 1;
                    continue;
                }
                let slot = if !s { u } else { w };
                if self.claimed[vi][slot as usize] {
                    if on_target {
                        panic!("target candidate slot already claimed at v={v} slot={slot} s={s}");
                    }
                    self.rollback(mark);
                    self.stats.prunes += 1;
                    ci += 1;
                    continue;
                }
                self.claim(v, slot);
                if lchoice >= 0 {
                    self.set_lambda(v, w, lchoice);
                }
                self.path.push(ci);
                self.step_to(w, v, s, sv, su, len, child_frontier);
                self.path.pop();
                self.rollback(mark);
                if self.stopped || self.out_of_budget {
                    return;
                }
                ci += 1;
            }
        }
    }

    /// Traverses the arc (v -> w) after its transition was consumed.
    #[allow(clippy::too_many_arguments)]
    fn step_to(
        &mut self,
        w: u8,
        v: u8,
        s: bool,
        sv: u8,
        su: u8,
        len: usize,
        frontier: Option<&[u32]>,
    ) {
        let lam = self.lambda[v as usize][w as usize];
        debug_assert!(lam >= 0);
        let s2 = s ^ (lam == 1);
        self.cur_face.push(w);
        self.walk(w, v, s2, sv, su, len + 1, frontier);
        self.cur_face.pop();
    }

    fn smallest_open_length(&self, from: usize) -> Option<usize> {
        (from..=self.budget.max_len).find(|&l| self.budget.remaining[l] > 0)
    }

    fn close_face(&mut self, len: usize, frontier: Option<&[u32]>) {
        if len > self.budget.max_len || self.budget.remaining[len] == 0 {
            if self.debug_target.is_some() && self.deviations == 0 {
                panic!("target face closure rejected at len={len}");
            }
            self.stats.prunes += 1;
            return;
        }
        if self.budget.hamiltonian.contains(&len) {
            let mut seen = 0u32;
            for &x in &self.cur_face {
                seen |= 1 << x;
            }
            if seen.count_ones() as usize != len {
                self.stats.prunes += 1;
                return;
            }
        }
        self.budget.remaining[len] -= 1;
        let saved = std::mem::take(&mut self.cur_face);
        self.start_next_face(frontier);
        self.cur_face = saved;
        self.budget.remaining[len] += 1;
    }

    // -- low-level state -------------------------------------------------

    fn claim(&mut self, v: u8, slot: u8) {
        debug_assert!(!self.claimed[v as usize][slot as usize]);
        self.claimed[v as usize][slot as usize] = true;
        self.unclaimed -= 1;
        self.trail.push(TrailOp::Claim(v, slot));
    }

    fn set_succ(&mut self, v: u8, u: u8, w: u8) -> bool {
        let (vi, ui, wi) = (v as usize, u as usize, w as usize);
        if self.succ[vi][ui] != NONE || self.pred[vi][wi] != NONE {
            return false;
        }
        let mut head1 = NONE;
        let mut tail2 = NONE;
        if u == w {
            if self.deg[vi] != 1 {
                return false;
            }
        } else {
            let head = if self.chain_head[vi][ui] != NONE {
                self.chain_head[vi][ui]
            } else {
                u
            };
            let tail = if self.chain_tail[vi][wi] != NONE {
                self.chain_tail[vi][wi]
            } else {
                w
            };
            if head == w {
                // closing the vertex cycle early is only legal at full degree
                if self.placed[vi] + 1 != self.deg[vi] {
                    return false;
                }
            } else {
                self.chain_head[vi][tail as usize] = head;
                self.chain_tail[vi][head as usize] = tail;
                head1 = head;
                tail2 = tail;
            }
        }
        self.succ[vi][ui] = w;
        self.pred[vi][wi] = u;
        self.placed[vi] += 1;
        if let Some(t) = &self.debug_target {
            if t[vi][ui] != w {
                self.deviations += 1;
            }
        }
        self.trail.push(TrailOp::Succ(v, u, head1, tail2));
        true
    }

    fn set_succ_sym(&mut self, v: u8, u: u8, w: u8) -> bool {
        if self.period <= 1 {
            return self.set_succ(v, u, w);
        }
        let span = self.period_span as u8;
        let shift = |x: u8, j: u8| -> u8 {
            if x >= span {
                x
            } else {
                (x + j) % span
            }
        };
        let copies = self.period_span / self.period;
        for c in 0..copies {
            let j = (c * self.period) as u8;
            let (v2, u2, w2) = (shift(v, j), shift(u, j), shift(w, j));
            if self.succ[v2 as usize][u2 as usize] == w2 {
                continue;
            }
            if !self.set_succ(v2, u2, w2) {
                return false;
            }
        }
        true
    }

    fn set_lambda(&mut self, u: u8, v: u8, val: i8) {
        self.lambda[u as usize][v as usize] = val;
        self.lambda[v as usize][u as usize] = val;
        self.trail.push(TrailOp::Lambda(u, v));
    }

    fn trail_mark(&self) -> usize {
        self.trail.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                TrailOp::Succ(v, u, head1, tail2) => {
                    let (vi, ui) = (v as usize, u as usize);
                    let w = self.succ[vi][ui];
                    if let Some(t) = &self.debug_target {
                        if t[vi][ui] != w {
                            self.deviations -= 1;
                        }
                    }
                    self.succ[vi][ui] = NONE;
                    self.pred[vi][w as usize] = NONE;
                    self.placed[vi] -= 1;
                    if head1 != NONE {
                        self.chain_head[vi][tail2 as usize] = if tail2 == w { NONE } else { w };
                        self.chain_tail[vi][head1 as usize] = if head1 == u { NONE } else { u };
                    }
                }
                TrailOp::Lambda(u, v) => {
                    self.lambda[u as usize][v as usize] = -1;
                    self.lambda[v as usize][u as usize] = -1;
                }
                TrailOp::Claim(v, slot) => {
                    self.claimed[v as usize][slot as usize] = false;
                    self.unclaimed += 1;
                }
            }
        }
    }

    fn emit_current(&mut self) {
        self.stats.emitted += 1;
        let raw = RawEmbedding {
            n: self.n,
            succ: self.succ[..self.n].to_vec(),
            twisted: {
                let mut t = vec![0u32; self.n];
                for v in 0..self.n {
                    for u in 0..self.n {
                        if self.lambda[v][u] == 1 {
                            t[v] |= 1 << u;
                        }
                    }
                }
                t
            },
        };
        if !(self.emit)(&raw) {
            self.stopped = true;
        }
    }
}
