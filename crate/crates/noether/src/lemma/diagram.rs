//! Concrete diagrams and their evaluation against a form.

use std::collections::BTreeMap;

use thiserror::Error;

use super::expr::{Assertion, MorProp, Path, SubExpr};
use super::template::Template;
use crate::form::{Form, FormError, SubId};
use crate::report::{Line, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("missing arrow `{0}`")]
    MissingArrow(String),
    #[error("missing object `{0}`")]
    MissingObject(String),
    #[error("arrow `{arrow}` should run {expected}, runs {found}")]
    WrongEnds { arrow: String, expected: String, found: String },
    #[error("`{0}` does not compose")]
    Composition(String),
    #[error("{0}")]
    Form(#[from] FormError),
}

/// Objects and arrows bound to role names, plus the facts and
/// conclusions a diagram file states about them.
#[derive(Debug, Clone)]
pub struct Diagram<O, M> {
    pub name: String,
    pub objects: BTreeMap<String, O>,
    pub arrows: BTreeMap<String, M>,
    pub facts: Vec<Assertion>,
    pub conclusions: Vec<Assertion>,
}

impl<O: Clone, M: Clone> Diagram<O, M> {
    pub fn new(name: impl Into<String>) -> Self {
        Diagram {
            name: name.into(),
            objects: BTreeMap::new(),
            arrows: BTreeMap::new(),
            facts: Vec::new(),
            conclusions: Vec::new(),
        }
    }

    pub fn object(mut self, role: &str, x: O) -> Self {
        self.objects.insert(role.to_string(), x);
        self
    }

    pub fn arrow(mut self, role: &str, f: M) -> Self {
        self.arrows.insert(role.to_string(), f);
        self
    }

    pub fn fact(mut self, a: Assertion) -> Self {
        self.facts.push(a);
        self
    }

    /// The same objects and arrows under new role names. Roles missing
    /// from the maps keep their names.
    pub fn rebind(&self, objects: &BTreeMap<String, String>, arrows: &BTreeMap<String, String>) -> Self {
        let o = |n: &str| objects.get(n).cloned().unwrap_or_else(|| n.to_string());
        let a = |n: &str| arrows.get(n).cloned().unwrap_or_else(|| n.to_string());
        Diagram {
            name: self.name.clone(),
            objects: self.objects.iter().map(|(k, v)| (o(k), v.clone())).collect(),
            arrows: self.arrows.iter().map(|(k, v)| (a(k), v.clone())).collect(),
            facts: self.facts.iter().map(|f| f.rename(&o, &a)).collect(),
            conclusions: self.conclusions.iter().map(|f| f.rename(&o, &a)).collect(),
        }
    }
}

/// Result of checking one assertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    /// The computed values behind the verdict.
    pub detail: String,
}

/// Evaluates paths, subobject expressions and assertions.
pub struct Eval<'a, F: Form> {
    pub form: &'a F,
    pub diagram: &'a Diagram<F::Obj, F::Mor>,
}

impl<'a, F: Form> Eval<'a, F> {
    pub fn new(form: &'a F, diagram: &'a Diagram<F::Obj, F::Mor>) -> Self {
        Eval { form, diagram }
    }

    pub fn path(&self, p: &Path) -> Result<F::Mor, ShapeError> {
        let mut acc: Option<F::Mor> = None;
        for n in p.applied() {
            let f = self.diagram.arrows.get(n).ok_or_else(|| ShapeError::MissingArrow(n.to_string()))?;
            acc = Some(match acc {
                None => f.clone(),
                Some(g) => self.form.compose(f, &g).map_err(|_| ShapeError::Composition(p.to_string()))?,
            });
        }
        acc.ok_or_else(|| ShapeError::Composition(p.to_string()))
    }

    fn object(&self, x: &str) -> Result<F::Obj, ShapeError> {
        self.diagram.objects.get(x).cloned().ok_or_else(|| ShapeError::MissingObject(x.to_string()))
    }

    pub fn sub(&self, e: &SubExpr) -> Result<(F::Obj, SubId), ShapeError> {
        let form = self.form;
        Ok(match e {
            SubExpr::Ker(p) => {
                let f = self.path(p)?;
                (form.dom(&f), form.kernel(&f))
            }
            SubExpr::Im(p) => {
                let f = self.path(p)?;
                (form.cod(&f), form.image(&f))
            }
            SubExpr::Img(p, x) => {
                let f = self.path(p)?;
                let (o, s) = self.sub(x)?;
                form.check_owner(&form.dom(&f), &o)?;
                (form.cod(&f), form.dimg(&f, s))
            }
            SubExpr::Pre(p, x) => {
                let f = self.path(p)?;
                let (o, s) = self.sub(x)?;
                form.check_owner(&form.cod(&f), &o)?;
                (form.dom(&f), form.iimg(&f, s))
            }
            SubExpr::Top(x) => {
                let o = self.object(x)?;
                let t = form.top(&o);
                (o, t)
            }
            SubExpr::Bot(x) => {
                let o = self.object(x)?;
                let b = form.bottom(&o);
                (o, b)
            }
            SubExpr::Join(a, b) | SubExpr::Meet(a, b) => {
                let (o, l) = self.sub(a)?;
                let (o2, r) = self.sub(b)?;
                form.check_owner(&o, &o2)?;
                let s = if matches!(e, SubExpr::Join(..)) { form.join(&o, l, r) } else { form.meet(&o, l, r) };
                (o, s)
            }
        })
    }

    fn label(&self, x: &F::Obj, s: SubId) -> String {
        self.form.sub_label(x, s)
    }

    fn exact(&self, f: &Path, g: &Path) -> Result<(bool, F::Mor, F::Mor, String), ShapeError> {
        let (f, g) = (self.path(f)?, self.path(g)?);
        let mid = self.form.cod(&f);
        self.form.check_owner(&self.form.dom(&g), &mid)?;
        let (im, ker) = (self.form.image(&f), self.form.kernel(&g));
        let detail = format!("im={} ker={}", self.label(&mid, im), self.label(&mid, ker));
        Ok((im == ker, f, g, detail))
    }

    pub fn check(&self, a: &Assertion) -> Result<Check, ShapeError> {
        let form = self.form;
        Ok(match a {
            Assertion::Commute(p, q) => {
                let (f, g) = (self.path(p)?, self.path(q)?);
                if form.dom(&f) != form.dom(&g) || form.cod(&f) != form.cod(&g) {
                    return Err(ShapeError::Composition(format!("{p} and {q} are not parallel")));
                }
                let holds = form.same_morphism(&f, &g);
                Check { holds, detail: if holds { String::new() } else { "paths differ".into() } }
            }
            Assertion::Exact(f, g) => {
                let (holds, _, _, detail) = self.exact(f, g)?;
                Check { holds, detail }
            }
            Assertion::ShortExact(f, g) => {
                let (ex, f, g, detail) = self.exact(f, g)?;
                let (inj, surj) = (form.is_injective(&f), form.is_surjective(&g));
                Check { holds: ex && inj && surj, detail: format!("{detail} injective={inj} surjective={surj}") }
            }
            Assertion::Prop(p, x) => {
                let f = self.path(x)?;
                let (d, c) = (form.dom(&f), form.cod(&f));
                let (k, i) = (form.kernel(&f), form.image(&f));
                let holds = match p {
                    MorProp::Injective => form.is_injective(&f),
                    MorProp::Surjective => form.is_surjective(&f),
                    MorProp::Iso => form.is_isomorphism(&f),
                    MorProp::Zero => form.is_zero(&f),
                };
                Check { holds, detail: format!("ker={} im={}", self.label(&d, k), self.label(&c, i)) }
            }
            Assertion::Eq(l, r) => {
                let (o, x) = self.sub(l)?;
                let (o2, y) = self.sub(r)?;
                form.check_owner(&o, &o2)?;
                Check { holds: x == y, detail: format!("{} vs {}", self.label(&o, x), self.label(&o, y)) }
            }
            Assertion::Normal(e) => {
                let (o, x) = self.sub(e)?;
                Check { holds: form.is_normal(&o, x), detail: self.label(&o, x) }
            }
            Assertion::Conormal(e) => {
                let (o, x) = self.sub(e)?;
                Check { holds: form.is_conormal(&o, x), detail: self.label(&o, x) }
            }
            Assertion::RelNormal(l, r) => {
                let (o, x) = self.sub(l)?;
                let (o2, y) = self.sub(r)?;
                form.check_owner(&o, &o2)?;
                Check {
                    holds: form.is_relatively_normal(&o, x, y),
                    detail: format!("{} in {}", self.label(&o, x), self.label(&o, y)),
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartOutcome {
    pub name: String,
    /// The global and part hypotheses hold.
    pub applicable: bool,
    /// Every conclusion holds; vacuously true when not applicable.
    pub holds: bool,
    /// Details of the conclusions, in order, when applicable.
    pub details: Vec<String>,
}

impl PartOutcome {
    pub fn refuted(&self) -> bool {
        self.applicable && !self.holds
    }
}

#[derive(Debug, Clone)]
pub struct LemmaOutcome {
    pub lemma: String,
    pub hypotheses: bool,
    pub parts: Vec<PartOutcome>,
    pub report: Report,
}

impl LemmaOutcome {
    pub fn part(&self, name: &str) -> Option<&PartOutcome> {
        self.parts.iter().find(|p| p.name == name)
    }

    pub fn refuted(&self) -> bool {
        self.parts.iter().any(PartOutcome::refuted)
    }
}

/// Binding of a diagram to a template: every arrow role is present and
/// runs between the objects its roles name. Object roles not bound
/// explicitly are taken from the arrows.
pub fn bind<O: Clone + PartialEq, M: Clone, F: Form<Obj = O, Mor = M>>(
    form: &F,
    t: &Template,
    d: &Diagram<O, M>,
) -> Result<Diagram<O, M>, ShapeError> {
    let mut out = d.clone();
    for a in &t.arrows {
        let f = d.arrows.get(&a.name).ok_or_else(|| ShapeError::MissingArrow(a.name.clone()))?;
        for (role, x) in [(&a.dom, form.dom(f)), (&a.cod, form.cod(f))] {
            match out.objects.get(role) {
                Some(y) if *y != x => {
                    return Err(ShapeError::WrongEnds {
                        arrow: a.name.clone(),
                        expected: format!("{} -> {}", a.dom, a.cod),
                        found: format!("{} -> {}", form.obj_name(&form.dom(f)), form.obj_name(&form.cod(f))),
                    })
                }
                Some(_) => {}
                None => {
                    out.objects.insert(role.clone(), x);
                }
            }
        }
    }
    if let Some(o) = t.objects.iter().find(|o| !out.objects.contains_key(*o)) {
        return Err(ShapeError::MissingObject(o.clone()));
    }
    Ok(out)
}

/// Checks the template on a diagram. Facts stated by the diagram itself
/// are checked as extra hypotheses.
pub fn verify_lemma<F: Form>(
    form: &F,
    t: &Template,
    d: &Diagram<F::Obj, F::Mor>,
) -> Result<LemmaOutcome, ShapeError> {
    let d = bind(form, t, d)?;
    let ev = Eval::new(form, &d);
    let mut report = Report::new();
    let mut ok = true;
    for h in d.facts.iter().chain(&t.hypotheses) {
        let c = ev.check(h)?;
        ok &= c.holds;
        report.push(Line::check(format!("hyp:{}", h.label()), c.holds, || c.detail.clone()));
    }
    let mut parts = Vec::new();
    for p in &t.parts {
        let mut applicable = ok;
        for h in &p.hypotheses {
            let name = format!("{}:hyp:{}", p.name, h.label());
            if !ok {
                report.push(Line::skip(name, "hypotheses unmet"));
                continue;
            }
            let c = ev.check(h)?;
            applicable &= c.holds;
            report.push(if c.holds { Line::pass(name) } else { Line::skip(name, format!("unmet {}", c.detail)) });
        }
        let mut holds = true;
        let mut details = Vec::new();
        for c in &p.conclusions {
            let name = format!("{}:{}", p.name, c.label());
            if !applicable {
                report.push(Line::skip(name, "hypotheses unmet"));
                continue;
            }
            let r = ev.check(c)?;
            holds &= r.holds;
            report.push(Line::check(name, r.holds, || format!("REFUTED {}", r.detail)));
            details.push(r.detail);
        }
        parts.push(PartOutcome { name: p.name.clone(), applicable, holds, details });
    }
    Ok(LemmaOutcome { lemma: t.name.clone(), hypotheses: ok, parts, report })
}

/// Checks a diagram's own conclusions under its own facts.
pub fn verify_generic<F: Form>(
    form: &F,
    d: &Diagram<F::Obj, F::Mor>,
    conclusions: &[Assertion],
) -> Result<LemmaOutcome, ShapeError> {
    let t = Template {
        name: d.name.clone(),
        objects: Vec::new(),
        arrows: Vec::new(),
        hypotheses: Vec::new(),
        parts: vec![super::template::Part {
            name: "c".into(),
            hypotheses: Vec::new(),
            conclusions: conclusions.to_vec(),
        }],
    };
    verify_lemma(form, &t, d)
}

/// `Im f = Ker g`.
pub fn is_exact_at<F: Form>(form: &F, f: &F::Mor, g: &F::Mor) -> Result<bool, FormError> {
    form.check_owner(&form.dom(g), &form.cod(f))?;
    Ok(form.image(f) == form.kernel(g))
}

pub fn is_short_exact<F: Form>(form: &F, f: &F::Mor, g: &F::Mor) -> Result<bool, FormError> {
    Ok(is_exact_at(form, f, g)? && form.is_injective(f) && form.is_surjective(g))
}
