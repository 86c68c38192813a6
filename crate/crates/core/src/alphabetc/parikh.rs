use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use super::LetterDfa;
use crate::semilinear::expr::NodeBudget;
use crate::semilinear::{LetterRegex, SemilinearSet};
use crate::{Config, Result};

/// Parikh image of a letter automaton by state elimination.
///
/// States are eliminated cheapest first, where the cost of a state is the
/// product of its in- and out-degree.
pub(super) fn parikh_image(ld: &LetterDfa, cfg: &Config) -> Result<SemilinearSet> {
    let dim = ld.alphabet().len();
    let regex = to_regex(ld, cfg.max_regex_nodes)?;
    regex.parikh(dim, cfg.star_pieces)
}

pub(super) fn to_regex(ld: &LetterDfa, max_nodes: usize) -> Result<Rc<LetterRegex>> {
    let mut budget = NodeBudget::new(max_nodes);
    let n = ld.len();
    // Nodes 0..n are automaton states, n is the fresh source, n+1 the sink.
    let (src, dst) = (n, n + 1);
    let mut out: Vec<BTreeMap<usize, Rc<LetterRegex>>> = vec![BTreeMap::new(); n + 2];
    let mut inc: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 2];

    fn add_edge(
        out: &mut [BTreeMap<usize, Rc<LetterRegex>>],
        inc: &mut [BTreeSet<usize>],
        from: usize,
        to: usize,
        r: Rc<LetterRegex>,
        budget: &mut NodeBudget,
    ) -> Result<()> {
        let merged = match out[from].get(&to) {
            Some(old) => LetterRegex::union(old, &r, budget)?,
            None => r,
        };
        out[from].insert(to, merged);
        inc[to].insert(from);
        Ok(())
    }

    add_edge(&mut out, &mut inc, src, ld.start() as usize, LetterRegex::epsilon(), &mut budget)?;
    for (q, row) in ld.transitions().iter().enumerate() {
        for (z, r) in row.iter().enumerate() {
            if let Some(r) = r {
                add_edge(&mut out, &mut inc, q, *r as usize, LetterRegex::letter(z), &mut budget)?;
            }
        }
        if ld.is_accepting(q as u32) {
            add_edge(&mut out, &mut inc, q, dst, LetterRegex::epsilon(), &mut budget)?;
        }
    }

    let mut alive: BTreeSet<usize> = (0..n).collect();
    while !alive.is_empty() {
        let k = *alive
            .iter()
            .min_by_key(|&&k| {
                let ins = inc[k].iter().filter(|&&i| i != k).count();
                let outs = out[k].keys().filter(|&&j| j != k).count();
                (ins * outs, k)
            })
            .unwrap();
        alive.remove(&k);
        let loop_re = match out[k].remove(&k) {
            Some(r) => LetterRegex::star(&r, &mut budget)?,
            None => LetterRegex::epsilon(),
        };
        inc[k].remove(&k);
        let preds: Vec<usize> = inc[k].iter().copied().collect();
        let succs: Vec<(usize, Rc<LetterRegex>)> = std::mem::take(&mut out[k]).into_iter().collect();
        for &i in &preds {
            let into = out[i].remove(&k).expect("predecessor edge");
            let head = LetterRegex::concat(&into, &loop_re, &mut budget)?;
            for (j, from) in &succs {
                let path = LetterRegex::concat(&head, from, &mut budget)?;
                add_edge(&mut out, &mut inc, i, *j, path, &mut budget)?;
            }
        }
        for (j, _) in &succs {
            inc[*j].remove(&k);
        }
        inc[k].clear();
    }
    Ok(out[src].get(&dst).cloned().unwrap_or_else(LetterRegex::empty))
}
