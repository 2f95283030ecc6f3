//! Line-oriented text formats for forms, algebras, homs, zigzags and
//! diagrams, all loaded into one [`Workspace`].
//!
//! ```text
//! form F
//! object X subobjects bot mid top
//! order X bot <= mid
//! morphism f X -> X
//!   dimg bot -> bot
//!   ...
//! group Z2 size 2 id 0
//! table 0 1 / 1 0
//! hom swap Z2 -> Z2 map 0 1
//! zigzag z : Z2 swap:> Z2
//! diagram d over slominski
//! use swap as f
//! assert iso f
//! ```
//!
//! `#` starts a comment. A declaration runs until the next top-level
//! keyword.

mod parse;
mod write;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::form::{Form, SubId};
use crate::lemma::{Assertion, Diagram};
use crate::slominski::{mask_of, Algebra, Hom, SlominskiForm};
use crate::table::{TableForm, TableMor};
use crate::zigzag::{Dir, Edge, Zigzag};

/// The name a diagram uses in `over` to mean the algebras and homs of the
/// workspace.
pub const SLOMINSKI: &str = "slominski";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Loc {
    pub file: String,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{loc}: {msg}")]
pub struct ParseError {
    pub loc: Loc,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Form,
    Algebra,
    Hom,
    Zigzag,
    Diagram,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Form => "form",
            Kind::Algebra => "algebra",
            Kind::Hom => "hom",
            Kind::Zigzag => "zigzag",
            Kind::Diagram => "diagram",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagDecl {
    pub nodes: Vec<String>,
    /// Morphism name and direction of each edge.
    pub edges: Vec<(String, Dir)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramDecl {
    pub over: String,
    /// `(workspace name, role)`.
    pub uses: Vec<(String, String)>,
    pub facts: Vec<Assertion>,
    pub conclusions: Vec<Assertion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("no {0} named `{1}`")]
    Unknown(Kind, String),
    #[error("`{0}` names no morphism or object of {1}")]
    UnknownName(String, String),
    #[error("`{0}` is declared by more than one form")]
    Ambiguous(String),
    #[error("node {index} should be `{expected}`, the edges give `{found}`")]
    WrongNode { index: usize, expected: String, found: String },
    #[error("{0}")]
    Form(#[from] crate::form::FormError),
}

/// A zigzag bound to the form its morphisms live in.
#[derive(Debug, Clone)]
pub enum BoundZigzag<'a> {
    Table(&'a TableForm, Zigzag<usize, TableMor>),
    Slominski(Zigzag<Arc<Algebra>, Hom>),
}

#[derive(Debug, Clone)]
pub enum BoundDiagram<'a> {
    Table(&'a TableForm, Diagram<usize, TableMor>),
    Slominski(Diagram<Arc<Algebra>, Hom>),
}

/// Everything loaded from a set of files, by name.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub forms: BTreeMap<String, TableForm>,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    /// Optional element names of an algebra, in carrier order.
    pub elements: BTreeMap<String, Vec<String>>,
    pub homs: BTreeMap<String, Hom>,
    pub zigzags: BTreeMap<String, ZigzagDecl>,
    pub diagrams: BTreeMap<String, DiagramDecl>,
    pub sources: BTreeMap<(Kind, String), Loc>,
}

impl PartialEq for Workspace {
    /// Source locations do not take part.
    fn eq(&self, other: &Self) -> bool {
        self.forms == other.forms
            && self.algebras == other.algebras
            && self.elements == other.elements
            && self.homs.len() == other.homs.len()
            && self.homs.iter().zip(&other.homs).all(|((n, f), (m, g))| n == m && f == g && f.name() == g.name())
            && self.zigzags == other.zigzags
            && self.diagrams == other.diagrams
    }
}

trait Scope {
    type O: Clone;
    type M: Clone;
    fn mor(&self, name: &str) -> Option<Self::M>;
    fn obj(&self, name: &str) -> Option<Self::O>;
    fn describe(&self) -> String;
}

struct TableScope<'a>(&'a TableForm);

impl Scope for TableScope<'_> {
    type O = usize;
    type M = TableMor;
    fn mor(&self, name: &str) -> Option<TableMor> {
        self.0.morphism(name).cloned()
    }
    fn obj(&self, name: &str) -> Option<usize> {
        self.0.object_index(name)
    }
    fn describe(&self) -> String {
        format!("form {}", self.0.name)
    }
}

struct AlgebraScope<'a>(&'a Workspace);

impl Scope for AlgebraScope<'_> {
    type O = Arc<Algebra>;
    type M = Hom;
    fn mor(&self, name: &str) -> Option<Hom> {
        self.0.homs.get(name).cloned()
    }
    fn obj(&self, name: &str) -> Option<Arc<Algebra>> {
        self.0.algebras.get(name).cloned()
    }
    fn describe(&self) -> String {
        "the workspace algebras".into()
    }
}

fn build_zigzag<F: Form>(
    form: &F,
    scope: &impl Scope<O = F::Obj, M = F::Mor>,
    d: &ZigzagDecl,
) -> Result<Zigzag<F::Obj, F::Mor>, ResolveError> {
    let start = scope.obj(&d.nodes[0]).ok_or_else(|| ResolveError::UnknownName(d.nodes[0].clone(), scope.describe()))?;
    let mut edges = Vec::new();
    for (name, dir) in &d.edges {
        let m = scope.mor(name).ok_or_else(|| ResolveError::UnknownName(name.clone(), scope.describe()))?;
        edges.push(Edge { mor: m, dir: *dir });
    }
    let z = Zigzag::new(form, start, edges)?;
    for (i, (x, want)) in z.nodes().iter().zip(&d.nodes).enumerate() {
        let found = form.obj_name(x);
        if &found != want {
            return Err(ResolveError::WrongNode { index: i, expected: want.clone(), found });
        }
    }
    Ok(z)
}

fn build_diagram<S: Scope>(scope: &S, name: &str, d: &DiagramDecl) -> Result<Diagram<S::O, S::M>, ResolveError> {
    let mut out = Diagram::new(name);
    for (n, role) in &d.uses {
        if let Some(m) = scope.mor(n) {
            out.arrows.insert(role.clone(), m);
        } else if let Some(o) = scope.obj(n) {
            out.objects.insert(role.clone(), o);
        } else {
            return Err(ResolveError::UnknownName(n.clone(), scope.describe()));
        }
    }
    // Names in assertions resolve to roles first, then to the workspace.
    for a in d.facts.iter().chain(&d.conclusions) {
        for n in a.arrows() {
            if !out.arrows.contains_key(&n) {
                let m = scope.mor(&n).ok_or_else(|| ResolveError::UnknownName(n.clone(), scope.describe()))?;
                out.arrows.insert(n, m);
            }
        }
        for n in a.objects() {
            if !out.objects.contains_key(&n) {
                let o = scope.obj(&n).ok_or_else(|| ResolveError::UnknownName(n.clone(), scope.describe()))?;
                out.objects.insert(n, o);
            }
        }
    }
    out.facts = d.facts.clone();
    out.conclusions = d.conclusions.clone();
    Ok(out)
}

impl Workspace {
    /// Parses and resolves a set of `(file name, contents)` sources.
    pub fn parse(sources: &[(&str, &str)]) -> Result<Workspace, ParseError> {
        let mut p = parse::Parser::default();
        for (file, text) in sources {
            p.source(file, text)?;
        }
        p.finish()
    }

    pub fn parse_str(text: &str) -> Result<Workspace, ParseError> {
        Workspace::parse(&[("<input>", text)])
    }

    /// Reads and parses files. I/O errors are reported at line 0.
    pub fn load(paths: &[impl AsRef<std::path::Path>]) -> Result<Workspace, ParseError> {
        let mut texts = Vec::new();
        for p in paths {
            let p = p.as_ref();
            let name = p.display().to_string();
            let text = std::fs::read_to_string(p).map_err(|e| ParseError {
                loc: Loc { file: name.clone(), line: 0, col: 0 },
                msg: e.to_string(),
            })?;
            texts.push((name, text));
        }
        let refs: Vec<(&str, &str)> = texts.iter().map(|(n, t)| (n.as_str(), t.as_str())).collect();
        Workspace::parse(&refs)
    }

    /// Serialises everything in sorted order. Parsing the output gives an
    /// equal workspace.
    pub fn to_text(&self) -> String {
        write::workspace(self)
    }

    pub fn source(&self, kind: Kind, name: &str) -> Option<&Loc> {
        self.sources.get(&(kind, name.to_string()))
    }

    /// The single declaration of a kind, when there is exactly one.
    pub fn only(&self, kind: Kind) -> Option<String> {
        let names: Vec<&String> = match kind {
            Kind::Form => self.forms.keys().collect(),
            Kind::Algebra => self.algebras.keys().collect(),
            Kind::Hom => self.homs.keys().collect(),
            Kind::Zigzag => self.zigzags.keys().collect(),
            Kind::Diagram => self.diagrams.keys().collect(),
        };
        match names.as_slice() {
            [one] => Some((*one).clone()),
            _ => None,
        }
    }

    /// Forms declaring a morphism of this name.
    fn forms_with(&self, mor: &str) -> Vec<&TableForm> {
        self.forms.values().filter(|f| f.morphism(mor).is_some()).collect()
    }

    pub fn zigzag(&self, name: &str) -> Result<BoundZigzag<'_>, ResolveError> {
        let d = self.zigzags.get(name).ok_or_else(|| ResolveError::Unknown(Kind::Zigzag, name.to_string()))?;
        // The first edge decides the form; a bare node is looked up the
        // same way among objects.
        let key = d.edges.first().map(|e| e.0.as_str());
        let on_algebras = match key {
            Some(m) => self.homs.contains_key(m),
            None => self.algebras.contains_key(&d.nodes[0]),
        };
        if on_algebras {
            return Ok(BoundZigzag::Slominski(build_zigzag(&SlominskiForm::open(), &AlgebraScope(self), d)?));
        }
        let forms: Vec<&TableForm> = match key {
            Some(m) => self.forms_with(m),
            None => self.forms.values().filter(|f| f.object_index(&d.nodes[0]).is_some()).collect(),
        };
        match forms.as_slice() {
            [] => Err(ResolveError::UnknownName(key.unwrap_or(&d.nodes[0]).to_string(), "any form".into())),
            [f] => Ok(BoundZigzag::Table(f, build_zigzag(*f, &TableScope(f), d)?)),
            _ => Err(ResolveError::Ambiguous(key.unwrap_or(&d.nodes[0]).to_string())),
        }
    }

    pub fn diagram(&self, name: &str) -> Result<BoundDiagram<'_>, ResolveError> {
        let d = self.diagrams.get(name).ok_or_else(|| ResolveError::Unknown(Kind::Diagram, name.to_string()))?;
        if d.over == SLOMINSKI {
            return Ok(BoundDiagram::Slominski(build_diagram(&AlgebraScope(self), name, d)?));
        }
        let f = self.forms.get(&d.over).ok_or_else(|| ResolveError::Unknown(Kind::Form, d.over.clone()))?;
        Ok(BoundDiagram::Table(f, build_diagram(&TableScope(f), name, d)?))
    }

    /// Adds a diagram over algebras together with its algebras and homs.
    /// The homs are named `<name>_<role>`.
    pub fn insert_instance(&mut self, name: &str, d: &Diagram<Arc<Algebra>, Hom>) -> Result<(), String> {
        let mut uses = Vec::new();
        for (role, h) in &d.arrows {
            for a in [h.dom(), h.cod()] {
                match self.algebras.get(a.name()) {
                    Some(b) if b != a => return Err(format!("a different algebra is already named {}", a.name())),
                    Some(_) => {}
                    None => {
                        self.algebras.insert(a.name().to_string(), a.clone());
                    }
                }
            }
            let hname: String =
                format!("{name}_{role}").chars().map(|c| if c == '\'' { 'p' } else { c }).collect();
            if self.homs.contains_key(&hname) {
                return Err(format!("hom {hname} already exists"));
            }
            self.homs.insert(hname.clone(), h.clone().with_name(hname.clone()));
            uses.push((hname, role.clone()));
        }
        let decl = DiagramDecl {
            over: SLOMINSKI.into(),
            uses,
            facts: d.facts.clone(),
            conclusions: d.conclusions.clone(),
        };
        self.diagrams.insert(name.to_string(), decl);
        Ok(())
    }

    /// A subobject of an algebra by key: `top`, `bot`, or a set of
    /// elements such as `{0,4}` or `{e,b}` given by index or name.
    pub fn algebra_sub(&self, a: &Algebra, key: &str) -> Option<SubId> {
        match key {
            "top" => return a.sub_index(a.full_mask()),
            "bot" => return a.sub_index(1 << a.zero()),
            _ => {}
        }
        let inner = key.strip_prefix('{').and_then(|k| k.strip_suffix('}')).unwrap_or(key);
        let names = self.elements.get(a.name());
        let mut elems = Vec::new();
        for t in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let e = match t.parse::<usize>() {
                Ok(i) => i,
                Err(_) => names?.iter().position(|n| n == t)?,
            };
            if e >= a.order() {
                return None;
            }
            elems.push(e);
        }
        a.sub_index(mask_of(&elems))
    }

    /// A subobject of a table-form object by key, with `top` and `bot`
    /// as fallbacks when no key has that name.
    pub fn table_sub(form: &TableForm, x: usize, key: &str) -> Option<SubId> {
        form.key_index(x, key).or(match key {
            "top" => Some(form.top(&x)),
            "bot" => Some(form.bottom(&x)),
            _ => None,
        })
    }

    /// Element-named label of a subobject of an algebra.
    pub fn algebra_label(&self, a: &Algebra, s: SubId) -> String {
        let mask = a.sub_mask(s);
        let elems = crate::slominski::mask_elements(mask);
        let parts: Vec<String> = match self.elements.get(a.name()) {
            Some(names) => elems.map(|e| names[e].clone()).collect(),
            None => elems.map(|e| e.to_string()).collect(),
        };
        format!("{{{}}}", parts.join(","))
    }
}

/// Subobjects as they are written in files: parsed from keys and shown
/// with element names where the workspace has them.
pub trait Named: Form {
    fn parse_sub(&self, ws: &Workspace, x: &Self::Obj, key: &str) -> Option<SubId>;
    fn show_sub(&self, ws: &Workspace, x: &Self::Obj, s: SubId) -> String;
    /// A short size description of an object.
    fn size(&self, x: &Self::Obj) -> String;
}

impl Named for TableForm {
    fn parse_sub(&self, _: &Workspace, x: &usize, key: &str) -> Option<SubId> {
        Workspace::table_sub(self, *x, key)
    }
    fn show_sub(&self, _: &Workspace, x: &usize, s: SubId) -> String {
        self.sub_label(x, s)
    }
    fn size(&self, x: &usize) -> String {
        format!("{} subobjects", self.sub_count(x))
    }
}

impl Named for SlominskiForm {
    fn parse_sub(&self, ws: &Workspace, x: &Arc<Algebra>, key: &str) -> Option<SubId> {
        ws.algebra_sub(x, key)
    }
    fn show_sub(&self, ws: &Workspace, x: &Arc<Algebra>, s: SubId) -> String {
        ws.algebra_label(x, s)
    }
    fn size(&self, x: &Arc<Algebra>) -> String {
        format!("order {}", x.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# two copies of Z2
group Z2 size 2 id 0
elements e t
table 0 1 / 1 0

algebra Y size 2 zero 0
p 0 1 / 1 0
d 0 1 / 1 0

hom f Z2 -> Y map 0 1
hom z Z2 -> Z2 map 0 0
zigzag w : Z2 f:> Y f:< Z2
zigzag v : Z2 > f Y f < Z2

form F
object X subobjects 0 a 1
morphism id X -> X
  dimg 0 -> 0
  dimg a -> a
  dimg 1 -> 1
  iimg 0 -> 0
  iimg a -> a
  iimg 1 -> 1

diagram d over slominski
use f as g
commute g = g
assert injective g
conclude iso g.z
";

    #[test]
    fn parse_and_round_trip() {
        let ws = Workspace::parse_str(SAMPLE).unwrap();
        assert_eq!(ws.algebras.len(), 2);
        assert_eq!(ws.zigzags["w"], ws.zigzags["v"]);
        assert_eq!(ws.forms["F"].objects[0].keys, ["0", "a", "1"]);
        let again = Workspace::parse_str(&ws.to_text()).unwrap();
        assert_eq!(ws, again);
        assert_eq!(again.to_text(), ws.to_text());
        assert!(matches!(ws.zigzag("w").unwrap(), BoundZigzag::Slominski(_)));
        let BoundDiagram::Slominski(d) = ws.diagram("d").unwrap() else { panic!() };
        assert_eq!(d.arrows.len(), 2);
        let z2 = &ws.algebras["Z2"];
        assert_eq!(ws.algebra_sub(z2, "{e,t}"), ws.algebra_sub(z2, "top"));
        assert_eq!(ws.algebra_label(z2, ws.algebra_sub(z2, "{0}").unwrap()), "{e}");
    }

    fn error(text: &str) -> ParseError {
        Workspace::parse_str(text).unwrap_err()
    }

    #[test]
    fn errors_carry_positions() {
        let e = error("group G size 2 id 0\ntable 0 1 / 1\n");
        assert_eq!((e.loc.line, e.loc.col), (2, 1));
        assert!(e.msg.contains("ragged"), "{}", e.msg);
        let e = error("algebra A size 1 zero 0\np 0\nd 0\nhom f A -> B map 0\n");
        assert_eq!((e.loc.line, e.loc.col), (4, 12));
        let e = error("group G size 1 id 0\ntable 0\ngroup G size 1 id 0\ntable 0\n");
        assert!(e.msg.contains("already"), "{}", e.msg);
        let e = error("frobnicate\n");
        assert_eq!((e.loc.line, e.loc.col), (1, 1));
        let e = error("group G size 1 id 0\ntable 0\nzigzag z : G f:> G\n");
        assert!(e.msg.contains("`f`"), "{}", e.msg);
        let e = error("form F\nobject X subobjects a b\norder X a <= c\n");
        assert_eq!((e.loc.line, e.loc.col), (3, 14));
    }
}
