//! Planarity via biconnected blocks and the path-embedding algorithm of
//! Demoucron, Malgrange and Pertuiset.

use std::collections::{BTreeSet, VecDeque};

/// Whether the undirected graph given by adjacency masks is planar.
pub fn is_planar(adj: &[u64]) -> bool {
    blocks(adj).into_iter().all(|edges| block_planar(&edges))
}

/// Edge sets of the biconnected components (recursive Tarjan; inputs have
/// at most 64 vertices).
fn blocks(adj: &[u64]) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        adj: &'a [u64],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut St, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        let mut rest = s.adj[u];
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, Some(u));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if Some(v) != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = adj.len();
    let mut s = St {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for u in 0..n {
        if s.disc[u] == 0 {
            dfs(&mut s, u, None);
        }
    }
    s.out
}

fn block_planar(edges: &[(usize, usize)]) -> bool {
    let mut names: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    names.sort_unstable();
    names.dedup();
    let n = names.len();
    if n <= 4 {
        return true;
    }
    if edges.len() > 3 * n - 6 {
        return false;
    }
    let idx = |x: usize| names.binary_search(&x).unwrap();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        let (u, v) = (idx(u), idx(v));
        adj[u].push(v);
        adj[v].push(u);
    }
    Embedder::new(adj).run()
}

struct Embedder {
    adj: Vec<Vec<usize>>,
    placed: Vec<bool>,
    placed_edges: BTreeSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

struct Fragment {
    contacts: BTreeSet<usize>,
    /// Either a single edge or the vertices of a component off the embedding.
    inner: Vec<usize>,
    edge: Option<(usize, usize)>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Embedder {
    fn new(adj: Vec<Vec<usize>>) -> Embedder {
        let n = adj.len();
        Embedder {
            adj,
            placed: vec![false; n],
            placed_edges: BTreeSet::new(),
            faces: Vec::new(),
        }
    }

    fn place_path(&mut self, path: &[usize]) {
        for &v in path {
            self.placed[v] = true;
        }
        for w in path.windows(2) {
            self.placed_edges.insert(key(w[0], w[1]));
        }
    }

    /// A cycle through the edge `0 - adj[0][0]`: the shortest path between
    /// its endpoints that avoids the edge itself.
    fn cycle(&self) -> Vec<usize> {
        let (s, t) = (0, self.adj[0][0]);
        let mut prev = vec![usize::MAX; self.adj.len()];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if prev[v] == usize::MAX && !(u == s && v == t) {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut c = vec![t];
        while *c.last().unwrap() != s {
            c.push(prev[*c.last().unwrap()]);
        }
        c
    }

    fn fragments(&self) -> Vec<Fragment> {
        let n = self.adj.len();
        let mut out = Vec::new();
        for u in 0..n {
            for &v in &self.adj[u] {
                if u < v && self.placed[u] && self.placed[v] && !self.placed_edges.contains(&key(u, v)) {
                    out.push(Fragment {
                        contacts: [u, v].into_iter().collect(),
                        inner: Vec::new(),
                        edge: Some((u, v)),
                    });
                }
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.placed[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            let mut contacts = BTreeSet::new();
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if self.placed[v] {
                        contacts.insert(v);
                    } else if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            out.push(Fragment {
                contacts,
                inner: comp,
                edge: None,
            });
        }
        out
    }

    /// A path through the fragment between two distinct contacts.
    fn fragment_path(&self, f: &Fragment) -> Vec<usize> {
        if let Some((u, v)) = f.edge {
            return vec![u, v];
        }
        let u = *f.contacts.iter().next().unwrap();
        let inside: BTreeSet<usize> = f.inner.iter().copied().collect();
        let mut prev = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::new();
        for &s in &self.adj[u] {
            if inside.contains(&s) && prev[s] == usize::MAX {
                prev[s] = u;
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            if let Some(&w) = self.adj[x].iter().find(|&&w| w != u && self.placed[w]) {
                let mut path = vec![w, x];
                let mut y = x;
                while prev[y] != u {
                    y = prev[y];
                    path.push(y);
                }
                path.push(u);
                path.reverse();
                return path;
            }
            for &y in &self.adj[x] {
                if inside.contains(&y) && prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        unreachable!("fragments of a biconnected block have two contacts")
    }

    fn run(mut self) -> bool {
        let c = self.cycle();
        let mut closed = c.clone();
        closed.push(c[0]);
        self.place_path(&closed);
        self.faces = vec![c.clone(), c];
        loop {
            let frags = self.fragments();
            if frags.is_empty() {
                return true;
            }
            let mut choice = None;
            for (i, f) in frags.iter().enumerate() {
                let ok: Vec<usize> = (0..self.faces.len())
                    .filter(|&j| f.contacts.iter().all(|v| self.faces[j].contains(v)))
                    .collect();
                match ok.len() {
                    0 => return false,
                    1 => {
                        choice = Some((i, ok[0]));
                        break;
                    }
                    _ => {
                        if choice.is_none() {
                            choice = Some((i, ok[0]));
                        }
                    }
                }
            }
            let (i, j) = choice.unwrap();
            let path = self.fragment_path(&frags[i]);
            self.split(j, &path);
            self.place_path(&path);
        }
    }

    fn split(&mut self, j: usize, path: &[usize]) {
        let face = self.faces.swap_remove(j);
        let (u, w) = (path[0], *path.last().unwrap());
        let k = face.len();
        let iu = face.iter().position(|&x| x == u).unwrap();
        let iw = face.iter().position(|&x| x == w).unwrap();
        let arc = |from: usize, to: usize| {
            let mut out = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % k;
                out.push(face[i]);
            }
            out
        };
        let interior = &path[1..path.len() - 1];
        let mut one = arc(iu, iw);
        one.extend(interior.iter().rev());
        let mut two = arc(iw, iu);
        two.extend(interior.iter());
        self.faces.push(one);
        self.faces.push(two);
    }
}
