//! The assertion language shared by lemma templates and diagram files.
//!
//! Paths are written in composition order: `t.f` means `t` after `f`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct SyntaxError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError(msg.into()))
}

/// A composite of named arrows, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<String>);

impl Path {
    pub fn parse(s: &str) -> Result<Path, SyntaxError> {
        let parts: Vec<String> = s.split('.').map(|p| p.trim().to_string()).collect();
        if parts.iter().any(|p| !is_name(p)) {
            return err(format!("bad path `{s}`"));
        }
        Ok(Path(parts))
    }

    pub fn single(name: &str) -> Path {
        Path(vec![name.to_string()])
    }

    /// Arrow names in the order they are applied.
    pub fn applied(&self) -> impl Iterator<Item = &str> {
        self.0.iter().rev().map(String::as_str)
    }

    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Path {
        Path(self.0.iter().map(|n| f(n)).collect())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("."))
    }
}

pub(crate) fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && !s.starts_with(|c: char| c.is_ascii_digit())
}

/// A subobject built from kernels, images and chasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubExpr {
    Ker(Path),
    Im(Path),
    /// Direct image along a path.
    Img(Path, Box<SubExpr>),
    /// Inverse image along a path.
    Pre(Path, Box<SubExpr>),
    Top(String),
    Bot(String),
    Join(Box<SubExpr>, Box<SubExpr>),
    Meet(Box<SubExpr>, Box<SubExpr>),
}

impl SubExpr {
    pub fn parse(s: &str) -> Result<SubExpr, SyntaxError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.ws();
        if p.pos != p.src.len() {
            return err(format!("trailing input in `{s}`"));
        }
        Ok(e)
    }

    pub fn rename(&self, obj: &impl Fn(&str) -> String, arr: &impl Fn(&str) -> String) -> SubExpr {
        let b = |e: &SubExpr| Box::new(e.rename(obj, arr));
        match self {
            SubExpr::Ker(p) => SubExpr::Ker(p.rename(arr)),
            SubExpr::Im(p) => SubExpr::Im(p.rename(arr)),
            SubExpr::Img(p, e) => SubExpr::Img(p.rename(arr), b(e)),
            SubExpr::Pre(p, e) => SubExpr::Pre(p.rename(arr), b(e)),
            SubExpr::Top(x) => SubExpr::Top(obj(x)),
            SubExpr::Bot(x) => SubExpr::Bot(obj(x)),
            SubExpr::Join(l, r) => SubExpr::Join(b(l), b(r)),
            SubExpr::Meet(l, r) => SubExpr::Meet(b(l), b(r)),
        }
    }

    /// The same subobject read in the dual form.
    pub fn dual(&self) -> SubExpr {
        let b = |e: &SubExpr| Box::new(e.dual());
        match self {
            SubExpr::Ker(p) => SubExpr::Im(p.clone()),
            SubExpr::Im(p) => SubExpr::Ker(p.clone()),
            SubExpr::Img(p, e) => SubExpr::Pre(p.clone(), b(e)),
            SubExpr::Pre(p, e) => SubExpr::Img(p.clone(), b(e)),
            SubExpr::Top(x) => SubExpr::Bot(x.clone()),
            SubExpr::Bot(x) => SubExpr::Top(x.clone()),
            SubExpr::Join(l, r) => SubExpr::Meet(b(l), b(r)),
            SubExpr::Meet(l, r) => SubExpr::Join(b(l), b(r)),
        }
    }
}

impl fmt::Display for SubExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubExpr::Ker(p) => write!(f, "ker({p})"),
            SubExpr::Im(p) => write!(f, "im({p})"),
            SubExpr::Img(p, e) => write!(f, "img({p},{e})"),
            SubExpr::Pre(p, e) => write!(f, "pre({p},{e})"),
            SubExpr::Top(x) => write!(f, "top({x})"),
            SubExpr::Bot(x) => write!(f, "bot({x})"),
            SubExpr::Join(l, r) => write!(f, "join({l},{r})"),
            SubExpr::Meet(l, r) => write!(f, "meet({l},{r})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<(), SyntaxError> {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            err(format!("expected `{}` at offset {}", c as char, self.pos))
        }
    }

    fn word(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c == b'(' || c == b')' || c == b',' || c.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn expr(&mut self) -> Result<SubExpr, SyntaxError> {
        let head = self.word();
        self.eat(b'(')?;
        let out = match head.as_str() {
            "ker" => SubExpr::Ker(Path::parse(&self.word())?),
            "im" => SubExpr::Im(Path::parse(&self.word())?),
            "img" | "pre" => {
                let p = Path::parse(&self.word())?;
                self.eat(b',')?;
                let e = Box::new(self.expr()?);
                if head == "img" {
                    SubExpr::Img(p, e)
                } else {
                    SubExpr::Pre(p, e)
                }
            }
            "top" | "bot" => {
                let x = self.word();
                if !is_name(&x) {
                    return err(format!("bad object name `{x}`"));
                }
                if head == "top" {
                    SubExpr::Top(x)
                } else {
                    SubExpr::Bot(x)
                }
            }
            "join" | "meet" => {
                let l = Box::new(self.expr()?);
                self.eat(b',')?;
                let r = Box::new(self.expr()?);
                if head == "join" {
                    SubExpr::Join(l, r)
                } else {
                    SubExpr::Meet(l, r)
                }
            }
            other => return err(format!("unknown subobject former `{other}`")),
        };
        self.eat(b')')?;
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorProp {
    Injective,
    Surjective,
    Iso,
    Zero,
}

impl MorProp {
    fn word(self) -> &'static str {
        match self {
            MorProp::Injective => "injective",
            MorProp::Surjective => "surjective",
            MorProp::Iso => "iso",
            MorProp::Zero => "zero",
        }
    }

    pub fn dual(self) -> MorProp {
        match self {
            MorProp::Injective => MorProp::Surjective,
            MorProp::Surjective => MorProp::Injective,
            p => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Assertion {
    Commute(Path, Path),
    /// `Im f = Ker g`.
    Exact(Path, Path),
    ShortExact(Path, Path),
    Prop(MorProp, Path),
    Eq(SubExpr, SubExpr),
    Normal(SubExpr),
    Conormal(SubExpr),
    /// First is normal relative to the second.
    RelNormal(SubExpr, SubExpr),
}

impl Assertion {
    pub fn parse(s: &str) -> Result<Assertion, SyntaxError> {
        let s = s.trim();
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let rest = rest.trim();
        let two_paths = |rest: &str| -> Result<(Path, Path), SyntaxError> {
            let v: Vec<&str> = rest.split_whitespace().collect();
            match v.as_slice() {
                [a, b] => Ok((Path::parse(a)?, Path::parse(b)?)),
                _ => err(format!("expected two paths in `{s}`")),
            }
        };
        let eq_sides = |rest: &str| -> Result<(String, String), SyntaxError> {
            match rest.split_once('=') {
                Some((a, b)) => Ok((a.trim().to_string(), b.trim().to_string())),
                None => err(format!("expected `=` in `{s}`")),
            }
        };
        let prop = |p| -> Result<Assertion, SyntaxError> {
            if rest.split_whitespace().count() != 1 {
                return err(format!("expected one path in `{s}`"));
            }
            Ok(Assertion::Prop(p, Path::parse(rest)?))
        };
        match head {
            "commute" => {
                let (a, b) = eq_sides(rest)?;
                Ok(Assertion::Commute(Path::parse(&a)?, Path::parse(&b)?))
            }
            "exact" => two_paths(rest).map(|(f, g)| Assertion::Exact(f, g)),
            "short-exact" => two_paths(rest).map(|(f, g)| Assertion::ShortExact(f, g)),
            "injective" => prop(MorProp::Injective),
            "surjective" => prop(MorProp::Surjective),
            "iso" => prop(MorProp::Iso),
            "zero" => prop(MorProp::Zero),
            "eq" => {
                let (a, b) = eq_sides(rest)?;
                Ok(Assertion::Eq(SubExpr::parse(&a)?, SubExpr::parse(&b)?))
            }
            "normal" => Ok(Assertion::Normal(SubExpr::parse(rest)?)),
            "conormal" => Ok(Assertion::Conormal(SubExpr::parse(rest)?)),
            "relnormal" => match rest.rsplit_once(" in ") {
                Some((a, b)) => Ok(Assertion::RelNormal(SubExpr::parse(a)?, SubExpr::parse(b)?)),
                None => err(format!("expected `in` in `{s}`")),
            },
            other => err(format!("unknown assertion `{other}`")),
        }
    }

    /// Short name used in reports.
    pub fn label(&self) -> String {
        match self {
            Assertion::Commute(a, b) => format!("commute({a}={b})"),
            Assertion::Exact(f, g) => format!("exact({f},{g})"),
            Assertion::ShortExact(f, g) => format!("short-exact({f},{g})"),
            Assertion::Prop(p, x) => format!("{}({x})", p.word()),
            Assertion::Eq(a, b) => format!("eq({a}={b})"),
            Assertion::Normal(e) => format!("normal({e})"),
            Assertion::Conormal(e) => format!("conormal({e})"),
            Assertion::RelNormal(a, b) => format!("relnormal({a} in {b})"),
        }
    }

    pub fn rename(&self, obj: &impl Fn(&str) -> String, arr: &impl Fn(&str) -> String) -> Assertion {
        let e = |x: &SubExpr| x.rename(obj, arr);
        match self {
            Assertion::Commute(a, b) => Assertion::Commute(a.rename(arr), b.rename(arr)),
            Assertion::Exact(f, g) => Assertion::Exact(f.rename(arr), g.rename(arr)),
            Assertion::ShortExact(f, g) => Assertion::ShortExact(f.rename(arr), g.rename(arr)),
            Assertion::Prop(p, x) => Assertion::Prop(*p, x.rename(arr)),
            Assertion::Eq(a, b) => Assertion::Eq(e(a), e(b)),
            Assertion::Normal(x) => Assertion::Normal(e(x)),
            Assertion::Conormal(x) => Assertion::Conormal(e(x)),
            Assertion::RelNormal(a, b) => Assertion::RelNormal(e(a), e(b)),
        }
    }

    /// Arrow names mentioned by the assertion.
    pub fn arrows(&self) -> Vec<String> {
        fn sub(e: &SubExpr, out: &mut Vec<String>) {
            match e {
                SubExpr::Ker(p) | SubExpr::Im(p) => out.extend(p.0.iter().cloned()),
                SubExpr::Img(p, x) | SubExpr::Pre(p, x) => {
                    out.extend(p.0.iter().cloned());
                    sub(x, out);
                }
                SubExpr::Top(_) | SubExpr::Bot(_) => {}
                SubExpr::Join(a, b) | SubExpr::Meet(a, b) => {
                    sub(a, out);
                    sub(b, out);
                }
            }
        }
        let mut out = Vec::new();
        match self {
            Assertion::Commute(a, b) | Assertion::Exact(a, b) | Assertion::ShortExact(a, b) => {
                out.extend(a.0.iter().cloned());
                out.extend(b.0.iter().cloned());
            }
            Assertion::Prop(_, x) => out.extend(x.0.iter().cloned()),
            Assertion::Eq(a, b) | Assertion::RelNormal(a, b) => {
                sub(a, &mut out);
                sub(b, &mut out);
            }
            Assertion::Normal(x) | Assertion::Conormal(x) => sub(x, &mut out),
        }
        out.sort();
        out.dedup();
        out
    }

    /// Object names mentioned through `top` and `bot`.
    pub fn objects(&self) -> Vec<String> {
        fn sub(e: &SubExpr, out: &mut Vec<String>) {
            match e {
                SubExpr::Top(x) | SubExpr::Bot(x) => out.push(x.clone()),
                SubExpr::Img(_, x) | SubExpr::Pre(_, x) => sub(x, out),
                SubExpr::Join(l, r) | SubExpr::Meet(l, r) => {
                    sub(l, out);
                    sub(r, out);
                }
                SubExpr::Ker(_) | SubExpr::Im(_) => {}
            }
        }
        let mut out = Vec::new();
        match self {
            Assertion::Eq(l, r) | Assertion::RelNormal(l, r) => {
                sub(l, &mut out);
                sub(r, &mut out);
            }
            Assertion::Normal(e) | Assertion::Conormal(e) => sub(e, &mut out),
            _ => {}
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Commute(a, b) => write!(f, "commute {a} = {b}"),
            Assertion::Exact(a, b) => write!(f, "exact {a} {b}"),
            Assertion::ShortExact(a, b) => write!(f, "short-exact {a} {b}"),
            Assertion::Prop(p, x) => write!(f, "{} {x}", p.word()),
            Assertion::Eq(a, b) => write!(f, "eq {a} = {b}"),
            Assertion::Normal(e) => write!(f, "normal {e}"),
            Assertion::Conormal(e) => write!(f, "conormal {e}"),
            Assertion::RelNormal(a, b) => write!(f, "relnormal {a} in {b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "commute t.f = x.s",
            "exact f g",
            "short-exact f g",
            "injective u",
            "zero y.x",
            "eq img(g,ker(t)) = ker(u)",
            "eq pre(y,im(u)) = im(t)",
            "relnormal im(b.l) in meet(im(b),im(l'))",
            "normal join(ker(b),ker(m))",
        ] {
            let a = Assertion::parse(s).unwrap();
            assert_eq!(a.to_string(), s);
            assert_eq!(Assertion::parse(&a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn rejects() {
        assert!(Assertion::parse("exact f").is_err());
        assert!(Assertion::parse("eq ker(f)").is_err());
        assert!(Assertion::parse("eq ker(f) = foo(g)").is_err());
        assert!(Assertion::parse("bogus f").is_err());
        assert!(Path::parse("a..b").is_err());
    }

    #[test]
    fn path_order() {
        let p = Path::parse("t.f").unwrap();
        assert_eq!(p.applied().collect::<Vec<_>>(), ["f", "t"]);
    }
}
