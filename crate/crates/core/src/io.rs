//! Plain-text instance files.
//!
//! ```text
//! QSPP 1
//! n 3
//! m 2
//! s 0
//! t 2
//! arc 0 0 1
//! arc 1 1 2
//! c
//! 0 1/2
//! Q sparse 1
//! 0 1 3
//! ```
//!
//! `Q sparse k` lists `k` entries `e f value` and is closed symmetrically;
//! `Q dense` is followed by `m` rows of `m` values. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, VertexId};
use crate::instance::{CostVector, InteractionMatrix, QsppInstance};
use crate::rational::{format_rational, parse_rational, Rational};

/// Writes `inst`; `Q` is written sparse when symmetric with zero diagonal and
/// dense otherwise.
pub fn emit_instance(inst: &QsppInstance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "QSPP 1").unwrap();
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    writeln!(out, "m {}", g.arc_count()).unwrap();
    writeln!(out, "s {}", inst.s).unwrap();
    writeln!(out, "t {}", inst.t).unwrap();
    for e in g.arc_ids() {
        let (u, v) = g.ends(e);
        writeln!(out, "arc {e} {u} {v}").unwrap();
    }
    writeln!(out, "c").unwrap();
    writeln!(out, "{}", inst.c.to_line()).unwrap();
    if inst.q.is_symmetric() && inst.q.has_zero_diagonal() {
        let entries = inst.q.upper_nonzeros();
        writeln!(out, "Q sparse {}", entries.len()).unwrap();
        for (e, f, v) in entries {
            writeln!(out, "{e} {f} {}", format_rational(&v)).unwrap();
        }
    } else {
        writeln!(out, "Q dense").unwrap();
        for e in g.arc_ids() {
            let row: Vec<String> = inst.q.row(e).iter().map(format_rational).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
    out
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    next: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .flat_map(|(k, line)| {
                let line = line.split('#').next().unwrap_or("");
                line.split_whitespace().map(move |tok| (k + 1, tok))
            })
            .collect();
        Tokens { items, next: 0 }
    }

    fn position(&self) -> String {
        match self.items.get(self.next) {
            Some((line, _)) => format!("line {line}"),
            None => "end of input".into(),
        }
    }

    fn word(&mut self) -> Result<&'a str> {
        let pos = self.position();
        let tok = self.items.get(self.next).map(|&(_, t)| t).ok_or_else(|| Error::parse(pos, "unexpected end of input"))?;
        self.next += 1;
        Ok(tok)
    }

    fn expect(&mut self, keyword: &str) -> Result<()> {
        let pos = self.position();
        let tok = self.word()?;
        if tok != keyword {
            return Err(Error::parse(pos, format!("expected {keyword:?}, found {tok:?}")));
        }
        Ok(())
    }

    fn usize(&mut self) -> Result<usize> {
        let pos = self.position();
        let tok = self.word()?;
        tok.parse().map_err(|_| Error::parse(pos, format!("expected a nonnegative integer, found {tok:?}")))
    }

    fn rational(&mut self) -> Result<Rational> {
        let pos = self.position();
        let tok = self.word()?;
        parse_rational(tok).ok_or_else(|| Error::parse(pos, format!("expected a rational, found {tok:?}")))
    }

    fn keyed(&mut self, key: &str) -> Result<usize> {
        self.expect(key)?;
        self.usize()
    }
}

pub fn parse_instance(text: &str) -> Result<QsppInstance> {
    let mut tok = Tokens::new(text);
    tok.expect("QSPP")?;
    tok.expect("1")?;
    let n = tok.keyed("n")?;
    let m = tok.keyed("m")?;
    let s = tok.keyed("s")?;
    let t = tok.keyed("t")?;
    let mut arcs = Vec::with_capacity(m);
    for k in 0..m {
        let pos = tok.position();
        tok.expect("arc")?;
        let id = tok.usize()?;
        if id != k {
            return Err(Error::parse(pos, format!("arc ids must be dense and ordered: expected {k}, found {id}")));
        }
        arcs.push((tok.usize()?, tok.usize()?));
    }
    let pos = tok.position();
    let graph = Digraph::new(n, arcs).map_err(|e| Error::parse(pos, e))?;
    tok.expect("c")?;
    let c = CostVector((0..m).map(|_| tok.rational()).collect::<Result<_>>()?);
    tok.expect("Q")?;
    let pos = tok.position();
    let mut q = InteractionMatrix::zeros(m);
    match tok.word()? {
        "sparse" => {
            let k = tok.usize()?;
            let mut seen: HashMap<(usize, usize), Rational> = HashMap::new();
            for _ in 0..k {
                let pos = tok.position();
                let e = tok.usize()?;
                let f = tok.usize()?;
                let v = tok.rational()?;
                if e >= m || f >= m {
                    return Err(Error::parse(pos, format!("arc index out of range in entry {e} {f}")));
                }
                if e == f && !v.is_zero() {
                    return Err(Error::parse(pos, format!("nonzero diagonal entry at {e}")));
                }
                let key = (e.min(f), e.max(f));
                if let Some(old) = seen.get(&key) {
                    if *old != v {
                        return Err(Error::parse(pos, format!("conflicting values for pair {e} {f}")));
                    }
                }
                seen.insert(key, v.clone());
                q.set_sym(ArcId(e), ArcId(f), v);
            }
        }
        "dense" => {
            for e in 0..m {
                for f in 0..m {
                    q.set(ArcId(e), ArcId(f), tok.rational()?);
                }
            }
        }
        other => return Err(Error::parse(pos, format!("expected \"sparse\" or \"dense\", found {other:?}"))),
    }
    if tok.next < tok.items.len() {
        return Err(Error::parse(tok.position(), "trailing input"));
    }
    QsppInstance::new(graph, VertexId(s), VertexId(t), c, q).map_err(|e| Error::parse("header", e))
}
