use std::collections::HashMap;
use std::rc::Rc;

use super::SemilinearSet;
use crate::error::{Error, Result};

/// Regular expression over abstract letters `0..d`, shared as a DAG.
///
/// Built by state elimination; the smart constructors fold `∅` and `ε`.
#[derive(Debug, PartialEq, Eq)]
pub enum LetterRegex {
    Empty,
    Epsilon,
    Letter(usize),
    Concat(Rc<LetterRegex>, Rc<LetterRegex>),
    Union(Rc<LetterRegex>, Rc<LetterRegex>),
    Star(Rc<LetterRegex>),
}

/// Counts nodes created so far and refuses to exceed a cap.
#[derive(Debug)]
pub struct NodeBudget {
    used: usize,
    cap: usize,
}

impl NodeBudget {
    pub fn new(cap: usize) -> Self {
        NodeBudget { used: 0, cap }
    }

    fn take(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::resource(format!("letter expression exceeds {} nodes", self.cap)));
        }
        Ok(())
    }

    pub fn used(&self) -> usize {
        self.used
    }
}

impl LetterRegex {
    pub fn empty() -> Rc<Self> {
        Rc::new(LetterRegex::Empty)
    }

    pub fn epsilon() -> Rc<Self> {
        Rc::new(LetterRegex::Epsilon)
    }

    pub fn letter(z: usize) -> Rc<Self> {
        Rc::new(LetterRegex::Letter(z))
    }

    pub fn concat(x: &Rc<Self>, y: &Rc<Self>, budget: &mut NodeBudget) -> Result<Rc<Self>> {
        Ok(match (&**x, &**y) {
            (LetterRegex::Empty, _) | (_, LetterRegex::Empty) => Self::empty(),
            (LetterRegex::Epsilon, _) => y.clone(),
            (_, LetterRegex::Epsilon) => x.clone(),
            _ => {
                budget.take()?;
                Rc::new(LetterRegex::Concat(x.clone(), y.clone()))
            }
        })
    }

    pub fn union(x: &Rc<Self>, y: &Rc<Self>, budget: &mut NodeBudget) -> Result<Rc<Self>> {
        Ok(match (&**x, &**y) {
            (LetterRegex::Empty, _) => y.clone(),
            (_, LetterRegex::Empty) => x.clone(),
            _ if Rc::ptr_eq(x, y) || x == y => x.clone(),
            _ => {
                budget.take()?;
                Rc::new(LetterRegex::Union(x.clone(), y.clone()))
            }
        })
    }

    pub fn star(x: &Rc<Self>, budget: &mut NodeBudget) -> Result<Rc<Self>> {
        Ok(match &**x {
            LetterRegex::Empty | LetterRegex::Epsilon => Self::epsilon(),
            LetterRegex::Star(_) => x.clone(),
            _ => {
                budget.take()?;
                Rc::new(LetterRegex::Star(x.clone()))
            }
        })
    }

    /// Whether the empty word is denoted.
    pub fn nullable(&self) -> bool {
        match self {
            LetterRegex::Empty | LetterRegex::Letter(_) => false,
            LetterRegex::Epsilon | LetterRegex::Star(_) => true,
            LetterRegex::Concat(x, y) => x.nullable() && y.nullable(),
            LetterRegex::Union(x, y) => x.nullable() || y.nullable(),
        }
    }

    /// Parikh image over `ℕ^dim`, evaluated bottom-up with sharing.
    pub fn parikh(self: &Rc<Self>, dim: usize, star_cap: usize) -> Result<SemilinearSet> {
        let mut memo: HashMap<*const LetterRegex, SemilinearSet> = HashMap::new();
        eval(self, dim, star_cap, &mut memo)
    }
}

fn eval(
    r: &Rc<LetterRegex>,
    dim: usize,
    star_cap: usize,
    memo: &mut HashMap<*const LetterRegex, SemilinearSet>,
) -> Result<SemilinearSet> {
    let key = Rc::as_ptr(r);
    if let Some(s) = memo.get(&key) {
        return Ok(s.clone());
    }
    let s = match &**r {
        LetterRegex::Empty => SemilinearSet::empty(dim),
        LetterRegex::Epsilon => SemilinearSet::zero(dim),
        LetterRegex::Letter(z) => SemilinearSet::unit(dim, *z),
        LetterRegex::Concat(x, y) => eval(x, dim, star_cap, memo)?.sum(&eval(y, dim, star_cap, memo)?)?,
        LetterRegex::Union(x, y) => eval(x, dim, star_cap, memo)?.union(&eval(y, dim, star_cap, memo)?)?,
        LetterRegex::Star(x) => eval(x, dim, star_cap, memo)?.star(star_cap)?,
    };
    memo.insert(key, s.clone());
    Ok(s)
}
