use std::sync::Arc;

use super::{DiagramDecl, Kind, Loc, ParseError, Workspace, ZigzagDecl};
use crate::lattice::Lattice;
use crate::lemma::Assertion;
use crate::slominski::{Algebra, Hom};
use crate::table::{TableForm, TableMor, TableObject};
use crate::zigzag::Dir;

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    s: &'a str,
    col: usize,
}

/// The tokens of one line, with a position to blame when they run out.
struct Line<'a> {
    file: &'a str,
    line: usize,
    toks: Vec<Tok<'a>>,
    pos: usize,
    end: usize,
}

impl<'a> Line<'a> {
    fn new(file: &'a str, line: usize, text: &'a str) -> Self {
        let text = text.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (i, c) in text.char_indices().chain([(text.len(), ' ')]) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    toks.push(Tok { s: &text[s..i], col: text[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        let end = text.trim_end().chars().count() + 1;
        Line { file, line, toks, pos: 0, end }
    }

    fn loc(&self, col: usize) -> Loc {
        Loc { file: self.file.to_string(), line: self.line, col }
    }

    fn err_at(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { loc: self.loc(col), msg: msg.into() }
    }

    fn err(&self, t: Tok, msg: impl Into<String>) -> ParseError {
        self.err_at(t.col, msg)
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<Tok<'a>, ParseError> {
        let t = self.peek().ok_or_else(|| self.err_at(self.end, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.s != kw {
            return Err(self.err(t, format!("expected `{kw}`, found `{}`", t.s)));
        }
        Ok(())
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        let t = self.next(what)?;
        t.s.parse().map_err(|_| self.err(t, format!("expected {what}, found `{}`", t.s)))
    }

    fn done(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) => Err(self.err(t, format!("unexpected `{}`", t.s))),
            None => Ok(()),
        }
    }

    /// The rest of the line as text, starting at the next token.
    fn rest(&mut self, raw: &'a str) -> Option<(Tok<'a>, &'a str)> {
        let t = self.peek()?;
        self.pos = self.toks.len();
        let start = raw.char_indices().nth(t.col - 1).map_or(raw.len(), |(i, _)| i);
        let raw = raw.split('#').next().unwrap_or("");
        Some((t, raw[start.min(raw.len())..].trim()))
    }

    /// `n` rows of `n` numbers separated by `/`.
    fn rows(&mut self, n: usize, kw: Tok) -> Result<Vec<Vec<usize>>, ParseError> {
        let mut rows = vec![Vec::new()];
        while let Some(t) = self.peek() {
            self.pos += 1;
            if t.s == "/" {
                rows.push(Vec::new());
                continue;
            }
            let v: usize = t.s.parse().map_err(|_| self.err(t, format!("expected an index, found `{}`", t.s)))?;
            if v >= n {
                return Err(self.err(t, format!("index {v} out of range for size {n}")));
            }
            rows.last_mut().unwrap().push(v);
        }
        if rows.len() != n {
            return Err(self.err(kw, format!("ragged table: {} rows, expected {n}", rows.len())));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(self.err(kw, format!("ragged table: row {i} has {} entries, expected {n}", r.len())));
        }
        Ok(rows)
    }
}

struct ObjB {
    name: String,
    keys: Vec<String>,
    order: Vec<(usize, usize)>,
    loc: Loc,
}

struct MorB {
    name: String,
    dom: usize,
    cod: usize,
    dimg: Vec<Option<usize>>,
    iimg: Vec<Option<usize>>,
    loc: Loc,
}

struct FormB {
    name: String,
    loc: Loc,
    objects: Vec<ObjB>,
    morphisms: Vec<MorB>,
}

struct AlgB {
    name: String,
    loc: Loc,
    size: usize,
    zero: usize,
    group: bool,
    p: Option<Vec<Vec<usize>>>,
    d: Option<Vec<Vec<usize>>>,
    elements: Option<Vec<String>>,
}

struct HomB {
    name: String,
    dom: (String, Loc),
    cod: (String, Loc),
    map: Vec<usize>,
    loc: Loc,
}

#[derive(Default)]
enum Block {
    #[default]
    None,
    Form(FormB),
    Algebra(AlgB),
    Diagram(String, DiagramDecl),
}

#[derive(Default)]
pub(super) struct Parser {
    ws: Workspace,
    block: Block,
    homs: Vec<HomB>,
}

impl Parser {
    fn declare(&mut self, kind: Kind, name: &str, loc: Loc) -> Result<(), ParseError> {
        if let Some(prev) = self.ws.sources.get(&(kind, name.to_string())) {
            return Err(ParseError { msg: format!("{kind} `{name}` already declared at {prev}"), loc });
        }
        self.ws.sources.insert((kind, name.to_string()), loc);
        Ok(())
    }

    pub(super) fn source(&mut self, file: &str, text: &str) -> Result<(), ParseError> {
        for (i, raw) in text.lines().enumerate() {
            let mut l = Line::new(file, i + 1, raw);
            let Some(head) = l.peek() else { continue };
            l.pos = 1;
            match head.s {
                "form" | "algebra" | "group" | "hom" | "zigzag" | "diagram" => {
                    self.close()?;
                    self.top(head, &mut l)?;
                }
                _ => self.inner(head, &mut l, raw)?,
            }
        }
        self.close()
    }

    fn top<'a>(&mut self, head: Tok<'a>, l: &mut Line<'a>) -> Result<(), ParseError> {
        let loc = l.loc(head.col);
        match head.s {
            "form" => {
                let name = l.next("a form name")?.s.to_string();
                l.done()?;
                self.declare(Kind::Form, &name, loc.clone())?;
                self.block = Block::Form(FormB { name, loc, objects: Vec::new(), morphisms: Vec::new() });
            }
            "algebra" | "group" => {
                let group = head.s == "group";
                let name = l.next("an algebra name")?.s.to_string();
                l.keyword("size")?;
                let size = l.number("a size")?;
                l.keyword(if group { "id" } else { "zero" })?;
                let zt = l.peek();
                let zero = l.number("an element index")?;
                if zero >= size.max(1) {
                    return Err(l.err(zt.unwrap(), format!("index {zero} out of range for size {size}")));
                }
                l.done()?;
                self.declare(Kind::Algebra, &name, loc.clone())?;
                self.block =
                    Block::Algebra(AlgB { name, loc, size, zero, group, p: None, d: None, elements: None });
            }
            "hom" => {
                let name = l.next("a hom name")?.s.to_string();
                let a = l.next("a domain")?;
                l.keyword("->")?;
                let b = l.next("a codomain")?;
                l.keyword("map")?;
                let mut map = Vec::new();
                while l.peek().is_some() {
                    map.push(l.number("an element index")?);
                }
                self.declare(Kind::Hom, &name, loc.clone())?;
                self.homs.push(HomB {
                    name,
                    dom: (a.s.to_string(), l.loc(a.col)),
                    cod: (b.s.to_string(), l.loc(b.col)),
                    map,
                    loc,
                });
            }
            "zigzag" => {
                let name = l.next("a zigzag name")?.s.to_string();
                l.keyword(":")?;
                let z = zigzag_body(l)?;
                self.declare(Kind::Zigzag, &name, loc)?;
                self.ws.zigzags.insert(name, z);
            }
            "diagram" => {
                let name = l.next("a diagram name")?.s.to_string();
                l.keyword("over")?;
                let over = l.next("a form name")?.s.to_string();
                l.done()?;
                self.declare(Kind::Diagram, &name, loc)?;
                let d = DiagramDecl { over, uses: Vec::new(), facts: Vec::new(), conclusions: Vec::new() };
                self.block = Block::Diagram(name, d);
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn inner<'a>(&mut self, head: Tok<'a>, l: &mut Line<'a>, raw: &'a str) -> Result<(), ParseError> {
        match &mut self.block {
            Block::Form(f) => form_line(f, head, l),
            Block::Algebra(a) => algebra_line(a, head, l),
            Block::Diagram(_, d) => diagram_line(d, head, l, raw),
            Block::None => Err(l.err(head, format!("unknown declaration `{}`", head.s))),
        }
    }

    fn close(&mut self) -> Result<(), ParseError> {
        match std::mem::take(&mut self.block) {
            Block::None => Ok(()),
            Block::Form(f) => {
                let name = f.name.clone();
                let form = finish_form(f)?;
                self.ws.forms.insert(name, form);
                Ok(())
            }
            Block::Algebra(a) => {
                let (name, elements) = (a.name.clone(), a.elements.clone());
                let alg = finish_algebra(a)?;
                self.ws.algebras.insert(name.clone(), alg);
                if let Some(e) = elements {
                    self.ws.elements.insert(name, e);
                }
                Ok(())
            }
            Block::Diagram(name, d) => {
                self.ws.diagrams.insert(name, d);
                Ok(())
            }
        }
    }

    pub(super) fn finish(mut self) -> Result<Workspace, ParseError> {
        self.close()?;
        for h in std::mem::take(&mut self.homs) {
            let find = |(n, loc): &(String, Loc)| {
                self.ws.algebras.get(n).cloned().ok_or_else(|| ParseError {
                    loc: loc.clone(),
                    msg: format!("no algebra named `{n}`"),
                })
            };
            let (a, b) = (find(&h.dom)?, find(&h.cod)?);
            let hom = Hom::new(h.name.clone(), a, b, h.map).map_err(|e| ParseError { loc: h.loc, msg: e.to_string() })?;
            self.ws.homs.insert(h.name, hom);
        }
        let ws = self.ws;
        for name in ws.zigzags.keys() {
            if let Err(e) = ws.zigzag(name) {
                return Err(ParseError { loc: ws.sources[&(Kind::Zigzag, name.clone())].clone(), msg: e.to_string() });
            }
        }
        for name in ws.diagrams.keys() {
            if let Err(e) = ws.diagram(name) {
                return Err(ParseError { loc: ws.sources[&(Kind::Diagram, name.clone())].clone(), msg: e.to_string() });
            }
        }
        Ok(ws)
    }
}

fn dir_of(s: &str) -> Option<Dir> {
    match s {
        ">" => Some(Dir::Right),
        "<" => Some(Dir::Left),
        _ => None,
    }
}

/// `X0 f:> X1 ...`, `X0 > f X1 ...` or `X0 f > X1 ...`.
fn zigzag_body(l: &mut Line) -> Result<ZigzagDecl, ParseError> {
    let mut nodes = vec![l.next("a start node")?.s.to_string()];
    let mut edges = Vec::new();
    while let Some(t) = l.peek() {
        l.pos += 1;
        let edge = if let Some(d) = dir_of(t.s) {
            (l.next("a morphism name")?.s.to_string(), d)
        } else if let Some((m, d)) = t.s.rsplit_once(':') {
            let d = dir_of(d).ok_or_else(|| l.err(t, format!("expected `>` or `<` after `{m}:`")))?;
            (m.to_string(), d)
        } else {
            let d = l.next("`>` or `<`")?;
            (t.s.to_string(), dir_of(d.s).ok_or_else(|| l.err(d, format!("expected `>` or `<`, found `{}`", d.s)))?)
        };
        edges.push(edge);
        nodes.push(l.next("a node")?.s.to_string());
    }
    Ok(ZigzagDecl { nodes, edges })
}

fn key(l: &Line, o: &ObjB, t: Tok) -> Result<usize, ParseError> {
    o.keys.iter().position(|k| k == t.s).ok_or_else(|| l.err(t, format!("`{}` is not a subobject of {}", t.s, o.name)))
}

fn form_line(f: &mut FormB, head: Tok, l: &mut Line) -> Result<(), ParseError> {
    let object = |f: &FormB, l: &Line, t: Tok| {
        f.objects.iter().position(|o| o.name == t.s).ok_or_else(|| l.err(t, format!("no object `{}` in this form", t.s)))
    };
    match head.s {
        "object" => {
            let name = l.next("an object name")?;
            if f.objects.iter().any(|o| o.name == name.s) {
                return Err(l.err(name, format!("object `{}` already declared", name.s)));
            }
            l.keyword("subobjects")?;
            let mut keys: Vec<String> = Vec::new();
            while let Some(t) = l.peek() {
                l.pos += 1;
                if keys.iter().any(|k| k == t.s) {
                    return Err(l.err(t, format!("subobject `{}` listed twice", t.s)));
                }
                keys.push(t.s.to_string());
            }
            if keys.is_empty() {
                return Err(l.err_at(l.end, "expected subobject keys"));
            }
            f.objects.push(ObjB { name: name.s.to_string(), keys, order: Vec::new(), loc: l.loc(head.col) });
        }
        "order" => {
            let x = l.next("an object name")?;
            let x = object(f, l, x)?;
            let a = l.next("a subobject")?;
            let a = key(l, &f.objects[x], a)?;
            l.keyword("<=")?;
            let b = l.next("a subobject")?;
            let b = key(l, &f.objects[x], b)?;
            l.done()?;
            f.objects[x].order.push((a, b));
        }
        "morphism" => {
            let name = l.next("a morphism name")?;
            if f.morphisms.iter().any(|m| m.name == name.s) {
                return Err(l.err(name, format!("morphism `{}` already declared", name.s)));
            }
            let d = l.next("a domain")?;
            let d = object(f, l, d)?;
            l.keyword("->")?;
            let c = l.next("a codomain")?;
            let c = object(f, l, c)?;
            l.done()?;
            f.morphisms.push(MorB {
                name: name.s.to_string(),
                dom: d,
                cod: c,
                dimg: vec![None; f.objects[d].keys.len()],
                iimg: vec![None; f.objects[c].keys.len()],
                loc: l.loc(head.col),
            });
        }
        "dimg" | "iimg" => {
            let Some(m) = f.morphisms.last_mut() else {
                return Err(l.err(head, format!("`{}` outside a morphism", head.s)));
            };
            let (from, to) = if head.s == "dimg" { (m.dom, m.cod) } else { (m.cod, m.dom) };
            let a = l.next("a subobject")?;
            let a = key(l, &f.objects[from], a)?;
            l.keyword("->")?;
            let b = l.next("a subobject")?;
            let b = key(l, &f.objects[to], b)?;
            l.done()?;
            let slot = if head.s == "dimg" { &mut m.dimg[a] } else { &mut m.iimg[a] };
            if slot.is_some() {
                return Err(l.err(head, format!("{} of `{}` given twice", head.s, f.objects[from].keys[a])));
            }
            *slot = Some(b);
        }
        _ => return Err(l.err(head, format!("unexpected `{}` in a form", head.s))),
    }
    Ok(())
}

fn finish_form(f: FormB) -> Result<TableForm, ParseError> {
    let mut objects = Vec::new();
    for o in &f.objects {
        let n = o.keys.len();
        let lattice = Lattice::from_relation(n, |a, b| a == 0 || b == n - 1 || o.order.contains(&(a, b)))
            .map_err(|e| ParseError { loc: o.loc.clone(), msg: format!("object {}: {e}", o.name) })?;
        objects.push(TableObject { name: o.name.clone(), keys: o.keys.clone(), lattice });
    }
    let mut morphisms = Vec::new();
    for m in &f.morphisms {
        let total = |v: &[Option<usize>], obj: usize, which: &str| {
            v.iter()
                .enumerate()
                .map(|(i, x)| {
                    x.ok_or_else(|| ParseError {
                        loc: m.loc.clone(),
                        msg: format!("{which} of `{}` missing for {}", f.objects[obj].keys[i], m.name),
                    })
                })
                .collect::<Result<Vec<usize>, ParseError>>()
        };
        morphisms.push(TableMor {
            name: m.name.clone(),
            dom: m.dom,
            cod: m.cod,
            dimg: total(&m.dimg, m.dom, "dimg")?,
            iimg: total(&m.iimg, m.cod, "iimg")?,
        });
    }
    TableForm::new(f.name, objects, morphisms).map_err(|e| ParseError { loc: f.loc, msg: e.to_string() })
}

fn algebra_line(a: &mut AlgB, head: Tok, l: &mut Line) -> Result<(), ParseError> {
    let slot = match (head.s, a.group) {
        ("p", false) => &mut a.p,
        ("d", false) => &mut a.d,
        ("table", true) => &mut a.p,
        ("elements", _) => {
            let mut names = Vec::new();
            while let Some(t) = l.peek() {
                l.pos += 1;
                names.push(t.s.to_string());
            }
            if names.len() != a.size {
                return Err(l.err(head, format!("{} element names for size {}", names.len(), a.size)));
            }
            a.elements = Some(names);
            return Ok(());
        }
        _ => return Err(l.err(head, format!("unexpected `{}` in {}", head.s, if a.group { "a group" } else { "an algebra" }))),
    };
    if slot.is_some() {
        return Err(l.err(head, format!("`{}` given twice", head.s)));
    }
    *slot = Some(l.rows(a.size, head)?);
    Ok(())
}

fn finish_algebra(a: AlgB) -> Result<Arc<Algebra>, ParseError> {
    let err = |msg: String| ParseError { loc: a.loc.clone(), msg };
    let r = if a.group {
        let t = a.p.as_ref().ok_or_else(|| err("missing `table`".into()))?;
        Algebra::from_group(a.name.clone(), t, a.zero)
    } else {
        let p = a.p.as_ref().ok_or_else(|| err("missing `p`".into()))?;
        let d = a.d.as_ref().ok_or_else(|| err("missing `d`".into()))?;
        Algebra::new(a.name.clone(), a.zero, p, d)
    };
    r.map_err(|e| err(e.to_string()))
}

fn diagram_line<'a>(d: &mut DiagramDecl, head: Tok<'a>, l: &mut Line<'a>, raw: &'a str) -> Result<(), ParseError> {
    let assertion = |l: &mut Line<'a>, prefix: &str| -> Result<Assertion, ParseError> {
        let (t, text) = l.rest(raw).ok_or_else(|| l.err_at(l.end, "expected an assertion"))?;
        Assertion::parse(&format!("{prefix}{text}")).map_err(|e| l.err(t, e.to_string()))
    };
    match head.s {
        "use" => {
            let name = l.next("a name")?.s.to_string();
            l.keyword("as")?;
            let role = l.next("a role")?;
            l.done()?;
            if d.uses.iter().any(|(_, r)| r == role.s) {
                return Err(l.err(role, format!("role `{}` bound twice", role.s)));
            }
            d.uses.push((name, role.s.to_string()));
        }
        "commute" => d.facts.push(assertion(l, "commute ")?),
        "assert" => d.facts.push(assertion(l, "")?),
        "conclude" => d.conclusions.push(assertion(l, "")?),
        _ => return Err(l.err(head, format!("unexpected `{}` in a diagram", head.s))),
    }
    Ok(())
}
