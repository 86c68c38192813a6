use super::regex::Regex;

/// Thompson automaton over `{a,b}` with ε-moves.
#[derive(Clone, Debug, Default)]
pub struct Nfa {
    pub(crate) eps: Vec<Vec<usize>>,
    pub(crate) step: Vec<[Vec<usize>; 2]>,
    pub(crate) start: usize,
    pub(crate) accept: usize,
}

/// Index of a symbol of `{a,b}`; any other byte is `None`.
pub fn symbol(c: u8) -> Option<usize> {
    match c {
        b'a' => Some(0),
        b'b' => Some(1),
        _ => None,
    }
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.step.push([Vec::new(), Vec::new()]);
        self.eps.len() - 1
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    /// ε-closure of a set of states, returned sorted.
    pub fn closure(&self, states: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = states.into_iter().collect();
        let mut out = Vec::new();
        while let Some(s) = stack.pop() {
            if std::mem::replace(&mut seen[s], true) {
                continue;
            }
            out.push(s);
            stack.extend(self.eps[s].iter().copied());
        }
        out.sort_unstable();
        out
    }

    pub fn accepts(&self, w: &str) -> bool {
        let mut cur = self.closure([self.start]);
        for c in w.bytes() {
            let Some(x) = symbol(c) else { return false };
            cur = self.closure(cur.iter().flat_map(|&s| self.step[s][x].iter().copied()));
        }
        cur.contains(&self.accept)
    }
}

/// Thompson construction.
pub fn to_nfa(r: &Regex) -> Nfa {
    let mut nfa = Nfa::default();
    let (s, f) = build(&mut nfa, r);
    nfa.start = s;
    nfa.accept = f;
    nfa
}

fn build(nfa: &mut Nfa, r: &Regex) -> (usize, usize) {
    match r {
        Regex::Epsilon => {
            let s = nfa.state();
            let f = nfa.state();
            nfa.eps[s].push(f);
            (s, f)
        }
        Regex::Lit(c) => {
            let s = nfa.state();
            let f = nfa.state();
            if let Some(x) = symbol(*c) {
                nfa.step[s][x].push(f);
            }
            (s, f)
        }
        Regex::Concat(parts) => {
            let s = nfa.state();
            let mut last = s;
            for p in parts {
                let (ps, pf) = build(nfa, p);
                nfa.eps[last].push(ps);
                last = pf;
            }
            (s, last)
        }
        Regex::Union(alts) => {
            let s = nfa.state();
            let f = nfa.state();
            for a in alts {
                let (as_, af) = build(nfa, a);
                nfa.eps[s].push(as_);
                nfa.eps[af].push(f);
            }
            (s, f)
        }
        Regex::Star(inner) | Regex::Plus(inner) | Regex::Optional(inner) => {
            let s = nfa.state();
            let f = nfa.state();
            let (is, if_) = build(nfa, inner);
            nfa.eps[s].push(is);
            nfa.eps[if_].push(f);
            if !matches!(r, Regex::Plus(_)) {
                nfa.eps[s].push(f);
            }
            if !matches!(r, Regex::Optional(_)) {
                nfa.eps[if_].push(is);
            }
            (s, f)
        }
    }
}
