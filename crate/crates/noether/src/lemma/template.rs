//! Lemma templates: named object and arrow roles, global hypotheses and
//! numbered parts, each with its own extra hypotheses and conclusions.
//!
//! ```text
//! lemma four
//! object A B C D A' B' C' D'
//! arrow f A B
//! assume exact f g
//! part i
//! conclude eq img(g,ker(t)) = ker(u)
//! ```

use std::collections::BTreeSet;
use std::fmt;

use super::expr::{is_name, Assertion, Path, SubExpr, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub name: String,
    pub hypotheses: Vec<Assertion>,
    pub conclusions: Vec<Assertion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub hypotheses: Vec<Assertion>,
    pub parts: Vec<Part>,
}

fn err<T>(line: usize, msg: impl fmt::Display) -> Result<T, SyntaxError> {
    Err(SyntaxError(format!("line {line}: {msg}")))
}

impl Template {
    pub fn parse(text: &str) -> Result<Template, SyntaxError> {
        let mut t = Template {
            name: String::new(),
            objects: Vec::new(),
            arrows: Vec::new(),
            hypotheses: Vec::new(),
            parts: Vec::new(),
        };
        for (no, raw) in text.lines().enumerate() {
            let no = no + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "lemma" => t.name = rest.to_string(),
                "object" => {
                    for o in rest.split_whitespace() {
                        if !is_name(o) {
                            return err(no, format!("bad object name `{o}`"));
                        }
                        t.objects.push(o.to_string());
                    }
                }
                "arrow" => {
                    let v: Vec<&str> = rest.split_whitespace().collect();
                    let [name, dom, cod] = v.as_slice() else {
                        return err(no, "expected `arrow <name> <dom> <cod>`");
                    };
                    if !is_name(name) {
                        return err(no, format!("bad arrow name `{name}`"));
                    }
                    t.arrows.push(ArrowDecl { name: name.to_string(), dom: dom.to_string(), cod: cod.to_string() });
                }
                "part" => t.parts.push(Part { name: rest.to_string(), hypotheses: Vec::new(), conclusions: Vec::new() }),
                "assume" | "conclude" => {
                    let a = Assertion::parse(rest).or_else(|e| err(no, e))?;
                    match (head, t.parts.last_mut()) {
                        ("assume", None) => t.hypotheses.push(a),
                        ("assume", Some(p)) => p.hypotheses.push(a),
                        (_, Some(p)) => p.conclusions.push(a),
                        (_, None) => return err(no, "conclusion outside a part"),
                    }
                }
                other => return err(no, format!("unknown keyword `{other}`")),
            }
        }
        if t.name.is_empty() {
            return err(0, "missing `lemma` line");
        }
        t.check()?;
        Ok(t)
    }

    pub fn arrow(&self, name: &str) -> Option<&ArrowDecl> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn part(&self, name: &str) -> Option<&Part> {
        self.parts.iter().find(|p| p.name == name)
    }

    /// Endpoints of a path, if it composes.
    pub fn path_type(&self, p: &Path) -> Result<(String, String), SyntaxError> {
        let mut ends: Option<(String, String)> = None;
        for n in p.applied() {
            let a = self.arrow(n).ok_or_else(|| SyntaxError(format!("unknown arrow `{n}`")))?;
            ends = Some(match ends {
                None => (a.dom.clone(), a.cod.clone()),
                Some((d, c)) if c == a.dom => (d, a.cod.clone()),
                Some((_, c)) => return Err(SyntaxError(format!("path {p} does not compose at {c}"))),
            });
        }
        Ok(ends.expect("paths are non-empty"))
    }

    /// Object owning the subobject.
    pub fn sub_type(&self, e: &SubExpr) -> Result<String, SyntaxError> {
        let obj = |x: &String| {
            if self.objects.contains(x) {
                Ok(x.clone())
            } else {
                Err(SyntaxError(format!("unknown object `{x}`")))
            }
        };
        match e {
            SubExpr::Ker(p) => Ok(self.path_type(p)?.0),
            SubExpr::Im(p) => Ok(self.path_type(p)?.1),
            SubExpr::Img(p, x) | SubExpr::Pre(p, x) => {
                let (d, c) = self.path_type(p)?;
                let (from, to) = if matches!(e, SubExpr::Img(..)) { (d, c) } else { (c, d) };
                let inner = self.sub_type(x)?;
                if inner != from {
                    return Err(SyntaxError(format!("{x} lives in {inner}, not {from}")));
                }
                Ok(to)
            }
            SubExpr::Top(x) | SubExpr::Bot(x) => obj(x),
            SubExpr::Join(a, b) | SubExpr::Meet(a, b) => {
                let (l, r) = (self.sub_type(a)?, self.sub_type(b)?);
                if l != r {
                    return Err(SyntaxError(format!("{a} and {b} live in different objects")));
                }
                Ok(l)
            }
        }
    }

    fn check_assertion(&self, a: &Assertion) -> Result<(), SyntaxError> {
        let ctx = |e: SyntaxError| SyntaxError(format!("{a}: {}", e.0));
        match a {
            Assertion::Commute(p, q) => {
                if self.path_type(p).map_err(ctx)? != self.path_type(q).map_err(ctx)? {
                    return Err(ctx(SyntaxError("paths are not parallel".into())));
                }
            }
            Assertion::Exact(f, g) | Assertion::ShortExact(f, g) => {
                let (_, c) = self.path_type(f).map_err(ctx)?;
                let (d, _) = self.path_type(g).map_err(ctx)?;
                if c != d {
                    return Err(ctx(SyntaxError("paths do not meet".into())));
                }
            }
            Assertion::Prop(_, p) => {
                self.path_type(p).map_err(ctx)?;
            }
            Assertion::Eq(l, r) | Assertion::RelNormal(l, r) => {
                if self.sub_type(l).map_err(ctx)? != self.sub_type(r).map_err(ctx)? {
                    return Err(ctx(SyntaxError("sides live in different objects".into())));
                }
            }
            Assertion::Normal(e) | Assertion::Conormal(e) => {
                self.sub_type(e).map_err(ctx)?;
            }
        }
        Ok(())
    }

    fn check(&self) -> Result<(), SyntaxError> {
        let mut seen = BTreeSet::new();
        for o in &self.objects {
            if !seen.insert(o.as_str()) {
                return Err(SyntaxError(format!("object `{o}` declared twice")));
            }
        }
        for a in &self.arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(SyntaxError(format!("name `{}` declared twice", a.name)));
            }
            for end in [&a.dom, &a.cod] {
                if !self.objects.contains(end) {
                    return Err(SyntaxError(format!("arrow {} uses unknown object `{end}`", a.name)));
                }
            }
        }
        let all = self.hypotheses.iter().chain(self.parts.iter().flat_map(|p| p.hypotheses.iter().chain(&p.conclusions)));
        for a in all {
            self.check_assertion(a)?;
        }
        Ok(())
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lemma {}", self.name)?;
        writeln!(f, "object {}", self.objects.join(" "))?;
        for a in &self.arrows {
            writeln!(f, "arrow {} {} {}", a.name, a.dom, a.cod)?;
        }
        for h in &self.hypotheses {
            writeln!(f, "assume {h}")?;
        }
        for p in &self.parts {
            writeln!(f, "part {}", p.name)?;
            for h in &p.hypotheses {
                writeln!(f, "assume {h}")?;
            }
            for c in &p.conclusions {
                writeln!(f, "conclude {c}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "lemma t\nobject A B C\narrow f A B\narrow g B C\nassume exact f g\npart i\nassume injective f\nconclude eq ker(g.f) = top(A)\n";

    #[test]
    fn parse_and_print() {
        let t = Template::parse(SMALL).unwrap();
        assert_eq!(t.parts.len(), 1);
        assert_eq!(Template::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn ill_typed() {
        let bad = SMALL.replace("ker(g.f)", "ker(f.g)");
        assert!(Template::parse(&bad).is_err());
        let bad = SMALL.replace("eq ker(g.f) = top(A)", "eq ker(g) = ker(f)");
        assert!(Template::parse(&bad).is_err());
    }
}
