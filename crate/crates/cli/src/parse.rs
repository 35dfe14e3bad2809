//! The line-oriented instance language.
//!
//! ```text
//! # comment
//! torus k=2                 (or: ptorus p=3 l=2)
//! V = 2*(1,0) + 1*(1,-3)    (p-torus terms use brackets: 1*[1,2])
//! W = 1*(2,0) + 2*(0,1)
//! ```

use std::fmt;

use equimap_core::intlinalg::IntVector;
use equimap_core::numtheory::is_prime;
use equimap_core::ptorus::PTorusRep;
use equimap_core::torusrep::{TorusRep, Weight};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Group {
    Torus { k: usize },
    PTorus { p: u64, l: usize },
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Torus { k } => write!(f, "torus k={k}"),
            Group::PTorus { p, l } => write!(f, "ptorus p={p} l={l}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProblemInstance {
    Torus { v: TorusRep, w: TorusRep },
    PTorus { v: PTorusRep, w: PTorusRep },
}

impl ProblemInstance {
    pub fn group(&self) -> Group {
        match self {
            ProblemInstance::Torus { v, .. } => Group::Torus { k: v.rank() },
            ProblemInstance::PTorus { v, .. } => Group::PTorus { p: v.p(), l: v.rank() },
        }
    }

    pub fn v_text(&self) -> String {
        match self {
            ProblemInstance::Torus { v, .. } => v.to_string(),
            ProblemInstance::PTorus { v, .. } => v.to_string(),
        }
    }

    pub fn w_text(&self) -> String {
        match self {
            ProblemInstance::Torus { w, .. } => w.to_string(),
            ProblemInstance::PTorus { w, .. } => w.to_string(),
        }
    }
}

/// Canonical source text; `parse_spec(&render(x)) == Ok(x)`.
pub fn render(instance: &ProblemInstance) -> String {
    format!("{}\nV = {}\nW = {}\n", instance.group(), instance.v_text(), instance.w_text())
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ParseErrorKind {
    #[error("expected {0}")]
    Syntax(String),
    #[error("missing header line `torus k=<int>` or `ptorus p=<int> l=<int>`")]
    MissingHeader,
    #[error("missing line for {0}")]
    MissingRep(char),
    #[error("{0} is defined twice")]
    Duplicate(char),
    #[error("zero weight")]
    ZeroWeight,
    #[error("weight has {found} entries, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("multiplicity must be a positive integer")]
    BadMultiplicity,
    #[error("rank must be at least 1")]
    ZeroRank,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}, column {column}: {kind} (at `{token}`)")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub kind: ParseErrorKind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Sym(c) => write!(f, "{c}"),
            Tok::End => write!(f, "end of line"),
        }
    }
}

struct Line {
    number: usize,
    toks: Vec<(usize, Tok)>,
    end_column: usize,
    pos: usize,
}

fn lex(number: usize, text: &str) -> Result<Line, ParseError> {
    let text = text.split('#').next().unwrap_or("");
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            toks.push((column, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((column, Tok::Ident(chars[start..i].iter().collect())));
        } else if "=*+-()[],".contains(c) {
            toks.push((column, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                line: number,
                column,
                token: c.to_string(),
                kind: ParseErrorKind::Syntax("a number, name or one of = * + - ( ) [ ] ,".into()),
            });
        }
    }
    Ok(Line { number, toks, end_column: chars.len() + 1, pos: 0 })
}

impl Line {
    fn peek(&self) -> (usize, Tok) {
        self.toks.get(self.pos).cloned().unwrap_or((self.end_column, Tok::End))
    }

    fn next(&mut self) -> (usize, Tok) {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn error_at(&self, column: usize, tok: &Tok, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.number, column, token: tok.to_string(), kind }
    }

    fn syntax(&self, column: usize, tok: &Tok, expected: &str) -> ParseError {
        self.error_at(column, tok, ParseErrorKind::Syntax(expected.into()))
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.next() {
            (_, Tok::Sym(d)) if d == c => Ok(()),
            (col, t) => Err(self.syntax(col, &t, &format!("`{c}`"))),
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), ParseError> {
        match self.next() {
            (_, Tok::Ident(s)) if s == name => Ok(()),
            (col, t) => Err(self.syntax(col, &t, &format!("`{name}`"))),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.next() {
            (_, Tok::End) => Ok(()),
            (col, t) => Err(self.syntax(col, &t, "end of line")),
        }
    }

    /// Optionally signed integer; returns the column of its first token.
    fn signed_int(&mut self) -> Result<(usize, BigInt), ParseError> {
        let (col, t) = self.next();
        match t {
            Tok::Int(n) => Ok((col, n)),
            Tok::Sym('-') => match self.next() {
                (_, Tok::Int(n)) => Ok((col, -n)),
                (c, t) => Err(self.syntax(c, &t, "an integer")),
            },
            t => Err(self.syntax(col, &t, "an integer")),
        }
    }

    fn small(&self, column: usize, n: &BigInt, kind: ParseErrorKind) -> Result<u64, ParseError> {
        n.to_u64().ok_or_else(|| self.error_at(column, &Tok::Int(n.clone()), kind))
    }
}

struct Term {
    mult: u64,
    coords: Vec<BigInt>,
    column: usize,
    text: String,
}

/// `<name> = <term> (+ <term>)*`; the name has already been consumed.
fn rep_terms(line: &mut Line, open: char, close: char, rank: usize) -> Result<Vec<Term>, ParseError> {
    line.expect_sym('=')?;
    let mut terms = Vec::new();
    loop {
        let (column, mult) = line.signed_int()?;
        if mult <= BigInt::zero() {
            return Err(line.error_at(column, &Tok::Int(mult), ParseErrorKind::BadMultiplicity));
        }
        let mult = line.small(column, &mult, ParseErrorKind::BadMultiplicity)?;
        line.expect_sym('*')?;
        line.expect_sym(open)?;
        let mut coords = vec![line.signed_int()?.1];
        loop {
            match line.next() {
                (_, Tok::Sym(',')) => coords.push(line.signed_int()?.1),
                (_, Tok::Sym(c)) if c == close => break,
                (col, t) => return Err(line.syntax(col, &t, &format!("`,` or `{close}`"))),
            }
        }
        let text = format!(
            "{mult}*{open}{}{close}",
            coords.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        );
        if coords.len() != rank {
            return Err(ParseError {
                line: line.number,
                column,
                token: text,
                kind: ParseErrorKind::RankMismatch { expected: rank, found: coords.len() },
            });
        }
        terms.push(Term { mult, coords, column, text });
        match line.next() {
            (_, Tok::Sym('+')) => {}
            (_, Tok::End) => return Ok(terms),
            (col, t) => return Err(line.syntax(col, &t, "`+` or end of line")),
        }
    }
}

/// A comma-separated list of vectors such as `(2,0),(0,3)`; the empty string
/// is the empty list.
pub fn parse_generators(text: &str, open: char, close: char, rank: usize) -> Result<Vec<Vec<BigInt>>, ParseError> {
    let mut line = lex(1, text)?;
    let mut out = Vec::new();
    if line.toks.is_empty() {
        return Ok(out);
    }
    loop {
        let (column, _) = line.peek();
        line.expect_sym(open)?;
        let mut coords = vec![line.signed_int()?.1];
        loop {
            match line.next() {
                (_, Tok::Sym(',')) => coords.push(line.signed_int()?.1),
                (_, Tok::Sym(c)) if c == close => break,
                (col, t) => return Err(line.syntax(col, &t, &format!("`,` or `{close}`"))),
            }
        }
        if coords.len() != rank {
            let token = coords.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            return Err(ParseError {
                line: 1,
                column,
                token: format!("{open}{token}{close}"),
                kind: ParseErrorKind::RankMismatch { expected: rank, found: coords.len() },
            });
        }
        out.push(coords);
        match line.next() {
            (_, Tok::Sym(',')) => {}
            (_, Tok::End) => return Ok(out),
            (col, t) => return Err(line.syntax(col, &t, "`,` or end of input")),
        }
    }
}

fn zero_weight(line: usize, term: &Term) -> ParseError {
    ParseError { line, column: term.column, token: term.text.clone(), kind: ParseErrorKind::ZeroWeight }
}

fn torus_rep(line: usize, k: usize, terms: &[Term]) -> Result<TorusRep, ParseError> {
    let mut rep = TorusRep::zero(k).expect("k >= 1");
    for term in terms {
        let w = Weight::new(IntVector::new(term.coords.clone())).map_err(|_| zero_weight(line, term))?;
        rep.add(w, term.mult).expect("validated term");
    }
    Ok(rep)
}

fn ptorus_rep(line: usize, p: u64, l: usize, terms: &[Term]) -> Result<PTorusRep, ParseError> {
    let pb = BigInt::from(p);
    let mut rep = PTorusRep::zero(p, l).expect("validated p and l");
    for term in terms {
        let coords: Vec<i64> =
            term.coords.iter().map(|c| c.mod_floor(&pb).to_i64().expect("reduced below p")).collect();
        let single = PTorusRep::from_terms(p, l, [(term.mult, coords.as_slice())]).map_err(|_| zero_weight(line, term))?;
        for (c, m) in single.iter() {
            rep.add(c.clone(), m).expect("validated term");
        }
    }
    Ok(rep)
}

fn header(line: &mut Line) -> Result<Group, ParseError> {
    let (col, t) = line.next();
    let group = match &t {
        Tok::Ident(s) if s == "torus" => {
            line.expect_ident("k")?;
            line.expect_sym('=')?;
            let (c, k) = line.signed_int()?;
            let k = line.small(c, &k, ParseErrorKind::ZeroRank)? as usize;
            if k == 0 {
                return Err(line.error_at(c, &Tok::Int(BigInt::zero()), ParseErrorKind::ZeroRank));
            }
            Group::Torus { k }
        }
        Tok::Ident(s) if s == "ptorus" => {
            line.expect_ident("p")?;
            line.expect_sym('=')?;
            let (c, p) = line.signed_int()?;
            let not_prime = ParseErrorKind::NotPrime(p.to_string());
            let p = line.small(c, &p, not_prime.clone())?;
            if !is_prime(p) {
                return Err(line.error_at(c, &Tok::Int(p.into()), not_prime));
            }
            line.expect_ident("l")?;
            line.expect_sym('=')?;
            let (c, l) = line.signed_int()?;
            let l = line.small(c, &l, ParseErrorKind::ZeroRank)? as usize;
            if l == 0 {
                return Err(line.error_at(c, &Tok::Int(BigInt::zero()), ParseErrorKind::ZeroRank));
            }
            Group::PTorus { p, l }
        }
        _ => return Err(line.error_at(col, &t, ParseErrorKind::MissingHeader)),
    };
    line.expect_end()?;
    Ok(group)
}

pub fn parse_spec(text: &str) -> Result<ProblemInstance, ParseError> {
    let mut group = None;
    let mut lines_vw: [Option<(usize, Vec<Term>)>; 2] = [None, None];
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let mut line = lex(i + 1, raw)?;
        last_line = i + 1;
        if line.toks.is_empty() {
            continue;
        }
        let Some(g) = group else {
            group = Some(header(&mut line)?);
            continue;
        };
        let (col, t) = line.next();
        let slot = match &t {
            Tok::Ident(s) if s == "V" => 0,
            Tok::Ident(s) if s == "W" => 1,
            _ => return Err(line.syntax(col, &t, "`V` or `W`")),
        };
        if lines_vw[slot].is_some() {
            return Err(line.error_at(col, &t, ParseErrorKind::Duplicate(['V', 'W'][slot])));
        }
        let (open, close, rank) = match g {
            Group::Torus { k } => ('(', ')', k),
            Group::PTorus { l, .. } => ('[', ']', l),
        };
        lines_vw[slot] = Some((line.number, rep_terms(&mut line, open, close, rank)?));
    }
    let eof = |kind| ParseError { line: last_line + 1, column: 1, token: "end of input".into(), kind };
    let group = group.ok_or_else(|| eof(ParseErrorKind::MissingHeader))?;
    let [v, w] = lines_vw;
    let (v_line, v_terms) = v.ok_or_else(|| eof(ParseErrorKind::MissingRep('V')))?;
    let (w_line, w_terms) = w.ok_or_else(|| eof(ParseErrorKind::MissingRep('W')))?;
    Ok(match group {
        Group::Torus { k } => {
            ProblemInstance::Torus { v: torus_rep(v_line, k, &v_terms)?, w: torus_rep(w_line, k, &w_terms)? }
        }
        Group::PTorus { p, l } => ProblemInstance::PTorus {
            v: ptorus_rep(v_line, p, l, &v_terms)?,
            w: ptorus_rep(w_line, p, l, &w_terms)?,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let inst = parse_spec("torus k=1\nV = 2*(3) + 1*(5)\nW = 1*(18) + 2*(5)").unwrap();
        let ProblemInstance::Torus { v, w } = &inst else { panic!("torus expected") };
        assert_eq!(v.to_string(), "2*(3) + 1*(5)");
        assert_eq!(w.to_string(), "2*(5) + 1*(18)");

        let inst = parse_spec("torus k=2\nV = 1*(1,0)\nW = 1*(1,0)").unwrap();
        let ProblemInstance::Torus { v, w } = &inst else { panic!("torus expected") };
        assert_eq!(v, w);

        let inst = parse_spec("ptorus p=2 l=2\nV = 1*[1,0]\nW = 1*[1,0] + 1*[0,1]").unwrap();
        assert_eq!(inst.group(), Group::PTorus { p: 2, l: 2 });
        assert_eq!(inst.w_text(), "1*[0,1] + 1*[1,0]");
    }

    #[test]
    fn normalizes_and_ignores_comments() {
        let inst = parse_spec("# demo\n  torus   k = 2 # two\n\nW=1*(0,1)\nV = 1*( -2 , 4 ) + 2*(2,-4)\n").unwrap();
        assert_eq!(inst.v_text(), "3*(2,-4)");
        let inst = parse_spec("ptorus p=5 l=1\nV = 1*[4] + 1*[6]\nW = 1*[2]").unwrap();
        assert_eq!(inst.v_text(), "2*[1]");
    }

    #[test]
    fn reports_positions() {
        let e = parse_spec("torus k=2\nV = 1*(1,0) + 1*(0,0)\nW = 1*(1,0)").unwrap_err();
        assert_eq!((e.line, e.column, e.kind.clone()), (2, 15, ParseErrorKind::ZeroWeight));
        assert_eq!(e.token, "1*(0,0)");

        let e = parse_spec("torus k=2\nV = 1*(1,0,2)\nW = 1*(1,0)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::RankMismatch { expected: 2, found: 3 });

        let e = parse_spec("ptorus p=4 l=2\nV = 1*[1,0]\nW = 1*[1,0]").unwrap_err();
        assert_eq!((e.line, e.column, e.kind), (1, 10, ParseErrorKind::NotPrime("4".into())));

        let e = parse_spec("torus k=1\nV = 0*(1)\nW = 1*(1)").unwrap_err();
        assert_eq!((e.column, e.kind), (5, ParseErrorKind::BadMultiplicity));
        let e = parse_spec("torus k=1\nV = -2*(1)\nW = 1*(1)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadMultiplicity);

        let e = parse_spec("torus k=1\nV = 1*(1) 1*(2)\nW = 1*(1)").unwrap_err();
        assert_eq!((e.line, e.column, e.token.as_str()), (2, 11, "1"));

        let e = parse_spec("torus k=1\nV = 1*(1)\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingRep('W'));
        let e = parse_spec("V = 1*(1)\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingHeader);
        let e = parse_spec("torus k=1\nV = 1*(1)\nV = 1*(2)").unwrap_err();
        assert_eq!((e.line, e.kind), (3, ParseErrorKind::Duplicate('V')));
        let e = parse_spec("torus k=1\nV = 1*(1;)\n").unwrap_err();
        assert_eq!((e.line, e.column, e.token.as_str()), (2, 9, ";"));
    }

    #[test]
    fn render_round_trips() {
        for text in ["torus k=3\nV = 1*(1,-2,3) + 2*(0,0,6)\nW = 3*(-1,2,-3)", "ptorus p=3 l=2\nV = 2*[2,1]\nW = 1*[0,1]"] {
            let inst = parse_spec(text).unwrap();
            assert_eq!(parse_spec(&render(&inst)).unwrap(), inst);
        }
    }

    #[test]
    fn big_entries_are_exact() {
        let inst = parse_spec("torus k=1\nV = 1*(123456789012345678901234567890)\nW = 1*(1)").unwrap();
        assert_eq!(inst.v_text(), "1*(123456789012345678901234567890)");
    }
}
