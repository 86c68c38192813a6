use std::fmt;

use crate::error::{Error, Result};

/// Regular expression over `{a,b}`.
///
/// Bounded repetition is expanded by the parser, so it never appears here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Epsilon,
    Lit(u8),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
}

/// Largest repetition bound accepted in `{m,n}`.
const MAX_REPEAT: usize = 1000;

/// Parses the `--lang` syntax: `a`, `b`, `|`, juxtaposition, `*`, `+`, `?`,
/// `{m}`, `{m,}`, `{m,n}` and parentheses. `()` denotes the empty word.
/// Whitespace is ignored.
pub fn parse_regex(text: &str) -> Result<Regex> {
    let mut p = Parser {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        len: text.len(),
    };
    let r = p.union()?;
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        return Err(Error::parse(at, format!("unexpected {c:?}")));
    }
    Ok(r)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut alts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            alts.push(self.concat()?);
        }
        let mut alts: Vec<Regex> = alts
            .into_iter()
            .flat_map(|r| match r {
                Regex::Union(inner) => inner,
                other => vec![other],
            })
            .collect();
        Ok(if alts.len() == 1 { alts.pop().unwrap() } else { Regex::Union(alts) })
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            match self.postfix()? {
                Regex::Concat(inner) => parts.extend(inner),
                Regex::Epsilon => {}
                other => parts.push(other),
            }
        }
        Ok(match parts.len() {
            0 => Regex::Epsilon,
            1 => parts.pop().unwrap(),
            _ => Regex::Concat(parts),
        })
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => r = Regex::Star(Box::new(r)),
                Some('+') => r = Regex::Plus(Box::new(r)),
                Some('?') => r = Regex::Optional(Box::new(r)),
                Some('{') => {
                    let at = self.offset();
                    self.pos += 1;
                    let (m, n) = self.bounds(at)?;
                    r = expand_repeat(r, m, n);
                    continue;
                }
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value.saturating_mul(10).saturating_add(d as usize);
            self.pos += 1;
        }
        (self.pos > start).then_some(value)
    }

    /// Parses `m}`, `m,}` or `m,n}` after an opening brace at `at`.
    fn bounds(&mut self, at: usize) -> Result<(usize, Option<usize>)> {
        let m = self
            .number()
            .ok_or_else(|| Error::parse(self.offset(), "expected repetition count"))?;
        let n = if self.peek() == Some(',') {
            self.pos += 1;
            self.number()
        } else {
            Some(m)
        };
        if self.peek() != Some('}') {
            return Err(Error::parse(self.offset(), "expected '}'"));
        }
        self.pos += 1;
        if let Some(n) = n {
            if m > n {
                return Err(Error::parse(at, format!("repetition {{{m},{n}}} has m > n")));
            }
        }
        if m.max(n.unwrap_or(0)) > MAX_REPEAT {
            return Err(Error::parse(at, format!("repetition bound above {MAX_REPEAT}")));
        }
        Ok((m, n))
    }

    fn atom(&mut self) -> Result<Regex> {
        let at = self.offset();
        match self.peek() {
            Some('a') => {
                self.pos += 1;
                Ok(Regex::Lit(b'a'))
            }
            Some('b') => {
                self.pos += 1;
                Ok(Regex::Lit(b'b'))
            }
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) => Err(Error::parse(at, format!("unexpected {c:?}"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

fn expand_repeat(r: Regex, m: usize, n: Option<usize>) -> Regex {
    let mut parts: Vec<Regex> = std::iter::repeat_n(r.clone(), m).collect();
    match n {
        None => parts.push(Regex::Star(Box::new(r))),
        Some(n) => {
            // r{m,n} = r^m (r (r (...)?)?)? with n-m nested options.
            let mut tail: Option<Regex> = None;
            for _ in m..n {
                let inner = match tail.take() {
                    None => r.clone(),
                    Some(t) => Regex::Concat(vec![r.clone(), t]),
                };
                tail = Some(Regex::Optional(Box::new(inner)));
            }
            parts.extend(tail);
        }
    }
    match parts.len() {
        0 => Regex::Epsilon,
        1 => parts.pop().unwrap(),
        _ => Regex::Concat(parts),
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atomic(r: &Regex) -> bool {
            matches!(r, Regex::Lit(_) | Regex::Epsilon)
        }
        match self {
            Regex::Epsilon => write!(f, "()"),
            Regex::Lit(c) => write!(f, "{}", *c as char),
            Regex::Concat(parts) => {
                for p in parts {
                    if matches!(p, Regex::Union(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            Regex::Union(alts) => {
                let s: Vec<String> = alts.iter().map(|a| a.to_string()).collect();
                write!(f, "{}", s.join("|"))
            }
            Regex::Star(r) | Regex::Plus(r) | Regex::Optional(r) => {
                let op = match self {
                    Regex::Star(_) => '*',
                    Regex::Plus(_) => '+',
                    _ => '?',
                };
                if atomic(r) {
                    write!(f, "{r}{op}")
                } else {
                    write!(f, "({r}){op}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_forms() {
        assert_eq!(parse_regex("a").unwrap(), Regex::Lit(b'a'));
        assert_eq!(parse_regex("()").unwrap(), Regex::Epsilon);
        assert_eq!(parse_regex("").unwrap(), Regex::Epsilon);
        assert!(matches!(parse_regex("(ab+a)*").unwrap(), Regex::Star(_)));
        assert!(matches!(parse_regex("a | b").unwrap(), Regex::Union(_)));
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_regex("ab)").unwrap_err(), Error::parse(2, "unexpected ')'"));
        assert!(matches!(parse_regex("(ab"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_regex("ac"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_regex("a{3,1}"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_regex("a{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_reparses() {
        for text in ["(ab+aaab+a)+", "(abaaabbb*a)*(aba)", "a{2,4}b?", "(a|b)*|()"] {
            let r = parse_regex(text).unwrap();
            assert_eq!(parse_regex(&r.to_string()).unwrap(), r, "{text}");
        }
    }
}
