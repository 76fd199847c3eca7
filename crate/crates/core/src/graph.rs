//! Labeled directed multigraphs and the structural transforms on them:
//! trimming, strongly connected components, subset construction and
//! follower-set minimization.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::alphabet::{Alphabet, Sym};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Sym,
}

/// A labeled directed multigraph. Its bi-infinite walks, read through the
/// labels, present a sofic shift.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    // out-edge indices per vertex, sorted by (label, target)
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.vertices == other.vertices
            && self.sorted_edges() == other.sorted_edges()
    }
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidSpec(format!("duplicate vertex {v:?}")));
            }
        }
        for e in &edges {
            if e.from >= vertices.len() || e.to >= vertices.len() {
                return Err(Error::InvalidSpec(format!(
                    "edge endpoint out of range: {} -> {}",
                    e.from, e.to
                )));
            }
            if e.label as usize >= alphabet.len() {
                return Err(Error::InvalidSpec(format!("edge label {} out of range", e.label)));
            }
        }
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
            inc[e.to].push(i);
        }
        for list in out.iter_mut() {
            list.sort_by_key(|&i| (edges[i].label, edges[i].to, i));
        }
        for list in inc.iter_mut() {
            list.sort_by_key(|&i| (edges[i].from, edges[i].label, i));
        }
        Ok(LabeledGraph {
            alphabet,
            vertices,
            edges,
            out,
            inc,
        })
    }

    /// Builds a graph from named vertices and `(from, to, label)` triples.
    pub fn from_names(alphabet: Alphabet, vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let lookup = |v: &str| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| Error::InvalidSpec(format!("unknown vertex {v:?}")))
        };
        let edges = edges
            .iter()
            .map(|(f, t, l)| {
                Ok(Edge {
                    from: lookup(f)?,
                    to: lookup(t)?,
                    label: alphabet.sym(l)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, vertices.iter().map(|v| v.to_string()).collect(), edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.out[v].iter().map(move |&i| &self.edges[i])
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.inc[v].iter().map(move |&i| &self.edges[i])
    }

    /// Indices into `edges()` of the edges leaving `v`, by label.
    pub fn out_edge_ids(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_edge_ids(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    fn sorted_edges(&self) -> Vec<Edge> {
        let mut e = self.edges.clone();
        e.sort();
        e
    }

    pub fn is_right_resolving(&self) -> bool {
        self.resolving_violation().is_none()
    }

    fn resolving_violation(&self) -> Option<usize> {
        (0..self.vertex_count()).find(|&v| {
            self.out[v]
                .windows(2)
                .any(|w| self.edges[w[0]].label == self.edges[w[1]].label)
        })
    }

    pub(crate) fn require_right_resolving(&self) -> Result<()> {
        match self.resolving_violation() {
            Some(v) => Err(Error::NotRightResolving(self.vertices[v].clone())),
            None => Ok(()),
        }
    }

    /// Target of the `label`-edge out of `v` (first one in a non-resolving graph).
    pub fn step(&self, v: usize, label: Sym) -> Option<usize> {
        self.out_edges(v).find(|e| e.label == label).map(|e| e.to)
    }

    /// Follows a word from `v` in a right-resolving graph.
    pub fn walk(&self, v: usize, word: &[Sym]) -> Option<usize> {
        word.iter().try_fold(v, |u, &a| self.step(u, a))
    }

    /// Set of vertices reached from `set` along an `a`-labeled edge.
    pub fn successors(&self, set: &VertexSet, a: Sym) -> VertexSet {
        let mut next = VertexSet::new(self.vertex_count());
        for v in set.iter() {
            for e in self.out_edges(v) {
                if e.label == a {
                    next.insert(e.to);
                }
            }
        }
        next
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Terminal vertices of paths labeled `word` starting anywhere in `start`.
    pub fn read_from(&self, start: &VertexSet, word: &[Sym]) -> VertexSet {
        word.iter().fold(start.clone(), |s, &a| self.successors(&s, a))
    }

    /// True when `word` labels some path of the graph.
    pub fn accepts(&self, word: &[Sym]) -> bool {
        let mut s = self.all_vertices();
        for &a in word {
            s = self.successors(&s, a);
            if s.is_empty() {
                return false;
            }
        }
        !s.is_empty()
    }

    /// True when some closed path is labeled `cycle`, i.e. the periodic
    /// point `cycle^∞` is presented.
    pub fn has_cycle_labeled(&self, cycle: &[Sym]) -> bool {
        if cycle.is_empty() {
            return false;
        }
        let n = self.vertex_count();
        (0..n).any(|v| {
            let mut s = VertexSet::new(n);
            s.insert(v);
            self.read_from(&s, cycle).contains(v)
        })
    }

    /// True when `cycle^∞` is a point of the presented shift. This holds iff
    /// some power `cycle^j` labels a closed path, which shows up as a cycle
    /// of the relation "`u` reaches `u'` reading `cycle`".
    pub fn presents_periodic(&self, cycle: &[Sym]) -> bool {
        if cycle.is_empty() {
            return false;
        }
        let n = self.vertex_count();
        let reach: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut s = VertexSet::new(n);
                s.insert(v);
                self.read_from(&s, cycle).iter().collect()
            })
            .collect();
        // Kahn's algorithm: a cycle exists iff some vertex is never freed
        let mut indeg = vec![0usize; n];
        reach.iter().flatten().for_each(|&t| indeg[t] += 1);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut freed = 0;
        while let Some(v) = ready.pop() {
            freed += 1;
            for &t in &reach[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        freed < n
    }

    /// Subgraph induced on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> LabeledGraph {
        let mut map = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e.from] != usize::MAX && map[e.to] != usize::MAX)
            .map(|e| Edge {
                from: map[e.from],
                to: map[e.to],
                label: e.label,
            })
            .collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        LabeledGraph::new(self.alphabet.clone(), vertices, edges).expect("induced subgraph is valid")
    }

    /// Vertices lying on some bi-infinite path, in index order.
    pub fn essential_vertices(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut alive = vec![true; n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &self.edges {
            outdeg[e.from] += 1;
            indeg[e.to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0 || outdeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for e in self.out_edges(v) {
                if alive[e.to] {
                    indeg[e.to] -= 1;
                    if indeg[e.to] == 0 {
                        queue.push_back(e.to);
                    }
                }
            }
            for e in self.in_edges(v) {
                if alive[e.from] {
                    outdeg[e.from] -= 1;
                    if outdeg[e.from] == 0 {
                        queue.push_back(e.from);
                    }
                }
            }
        }
        (0..n).filter(|&v| alive[v]).collect()
    }

    /// Removes every vertex and edge not on a bi-infinite path.
    pub fn trim(&self) -> LabeledGraph {
        let keep = self.essential_vertices();
        if keep.len() == self.vertex_count() {
            return self.clone();
        }
        self.induced(&keep)
    }

    /// Vertex sets of the strongly connected components that carry at least
    /// one edge, ordered by smallest member.
    pub fn scc_components(&self) -> Vec<Vec<usize>> {
        let mut comps: Vec<Vec<usize>> = tarjan(self)
            .into_iter()
            .filter(|c| c.len() > 1 || self.out_edges(c[0]).any(|e| e.to == c[0]))
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        comps.sort();
        comps
    }

    /// Maximal irreducible subgraphs. Acyclic graphs give an empty list.
    pub fn scc_decompose(&self) -> Vec<LabeledGraph> {
        self.scc_components().iter().map(|c| self.induced(c)).collect()
    }

    /// Strongly connected with at least one edge.
    pub fn is_irreducible(&self) -> bool {
        let comps = self.scc_components();
        comps.len() == 1 && comps[0].len() == self.vertex_count()
    }

    /// Right-resolving presentation of the same shift via the subset
    /// construction started from the set of all vertices, then trimmed.
    pub fn determinize(&self, state_cap: usize) -> Result<LabeledGraph> {
        let g = self.trim();
        if g.vertex_count() == 0 {
            return Err(Error::EmptyShift("presentation has no bi-infinite path".into()));
        }
        let start = g.all_vertices();
        let mut states = vec![start.clone()];
        let mut ids: HashMap<VertexSet, usize> = HashMap::from([(start, 0)]);
        let mut edges = Vec::new();
        let mut i = 0;
        while i < states.len() {
            for a in g.alphabet.iter() {
                let next = g.successors(&states[i], a);
                if next.is_empty() {
                    continue;
                }
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= state_cap {
                            return Err(Error::blowup("subset construction", state_cap));
                        }
                        ids.insert(next.clone(), states.len());
                        states.push(next);
                        states.len() - 1
                    }
                };
                edges.push(Edge {
                    from: i,
                    to: id,
                    label: a,
                });
            }
            i += 1;
        }
        let names = states.iter().map(|s| g.subset_name(s)).collect();
        Ok(LabeledGraph::new(g.alphabet.clone(), names, edges)?.trim())
    }

    /// Canonical `{a,b,..}` name of a vertex subset, members sorted by name.
    pub fn subset_name(&self, s: &VertexSet) -> String {
        let mut names: Vec<&str> = s.iter().map(|v| self.vertices[v].as_str()).collect();
        names.sort_unstable();
        format!("{{{}}}", names.join(","))
    }

    /// Merges vertices with equal follower sets by iterated partition
    /// refinement. Requires a right-resolving irreducible graph.
    pub fn minimize_right_resolving(&self) -> Result<LabeledGraph> {
        self.require_right_resolving()?;
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible(
                "minimization needs a strongly connected graph".into(),
            ));
        }
        let class = &self.follower_classes();
        let count = class.iter().max().map_or(0, |m| m + 1);
        if count == self.vertex_count() {
            return Ok(self.clone());
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &c) in class.iter().enumerate() {
            members[c].push(v);
        }
        let names = members
            .iter()
            .map(|m| {
                if m.len() == 1 {
                    self.vertices[m[0]].clone()
                } else {
                    let mut s = VertexSet::new(self.vertex_count());
                    m.iter().for_each(|&v| s.insert(v));
                    self.subset_name(&s)
                }
            })
            .collect();
        let edges = members
            .iter()
            .enumerate()
            .flat_map(|(c, m)| {
                self.out_edges(m[0]).map(move |e| Edge {
                    from: c,
                    to: class[e.to],
                    label: e.label,
                })
            })
            .collect::<Vec<_>>();
        LabeledGraph::new(self.alphabet.clone(), names, edges)
    }

    /// Moore refinement: vertex -> class id, classes numbered by first member.
    fn follower_classes(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut class = vec![0usize; n];
        loop {
            let mut sig_ids: BTreeMap<Vec<(Sym, usize)>, usize> = BTreeMap::new();
            let mut keyed: Vec<(usize, Vec<(Sym, usize)>)> = Vec::with_capacity(n);
            for v in 0..n {
                let mut sig = vec![(Sym::MAX, class[v])];
                sig.extend(self.out_edges(v).map(|e| (e.label, class[e.to])));
                keyed.push((v, sig));
            }
            let mut next = vec![0usize; n];
            for (v, sig) in keyed {
                let len = sig_ids.len();
                next[v] = *sig_ids.entry(sig).or_insert(len);
            }
            let before = class.iter().collect::<HashSet<_>>().len();
            let after = sig_ids.len();
            class = next;
            if after == before {
                return class;
            }
        }
    }

    /// Adjacency matrix with multiplicities.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0u64; n]; n];
        for e in &self.edges {
            a[e.from][e.to] += 1;
        }
        a
    }

    /// BFS distances from `v` (None when unreachable).
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for e in self.out_edges(u) {
                if dist[e.to].is_none() {
                    dist[e.to] = Some(d + 1);
                    queue.push_back(e.to);
                }
            }
        }
        dist
    }

    /// Maximum over ordered vertex pairs of the shortest path length.
    /// None when some pair is disconnected.
    pub fn shortest_path_diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.vertex_count() {
            for d in self.distances_from(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Label of the lexicographically least shortest path from `from` to
    /// any vertex satisfying `goal`, together with its end vertex.
    pub fn shortest_labeled_path(&self, from: usize, goal: impl Fn(usize) -> bool) -> Option<(Vec<Sym>, usize)> {
        // Layered search keeping, per vertex, the lexicographically least
        // label sequence of minimal length.
        let mut best: Vec<Option<Vec<Sym>>> = vec![None; self.vertex_count()];
        best[from] = Some(Vec::new());
        let mut frontier = vec![from];
        loop {
            let mut hits: Vec<(Vec<Sym>, usize)> = frontier
                .iter()
                .filter(|&&v| goal(v))
                .map(|&v| (best[v].clone().unwrap(), v))
                .collect();
            if !hits.is_empty() {
                hits.sort();
                return hits.into_iter().next();
            }
            let mut layer: BTreeMap<usize, Vec<Sym>> = BTreeMap::new();
            for &u in &frontier {
                let base = best[u].clone().unwrap();
                for e in self.out_edges(u) {
                    if best[e.to].is_some() {
                        continue;
                    }
                    let mut cand = base.clone();
                    cand.push(e.label);
                    match layer.get(&e.to) {
                        Some(cur) if *cur <= cand => {}
                        _ => {
                            layer.insert(e.to, cand);
                        }
                    }
                }
            }
            if layer.is_empty() {
                return None;
            }
            frontier = layer.keys().copied().collect();
            for (v, p) in layer {
                best[v] = Some(p);
            }
        }
    }
}

/// Iterative Tarjan; returns all components including trivial ones.
fn tarjan(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next_index = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, position in its out list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < g.out[v].len() {
                let w = g.edges[g.out[v][*pos]].to;
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}
