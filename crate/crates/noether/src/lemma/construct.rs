//! Six-term sequences built from induced morphisms: the snake, the
//! generalized snail and the salamander, plus Goursat's isomorphism.

use super::diagram::{bind, is_exact_at, verify_lemma, Diagram, LemmaOutcome, ShapeError};
use super::library::template;
use crate::form::{Form, FormError};
use crate::pyramid::{quotient_iso, QuotientIso};
use crate::report::{Line, Report};
use crate::subquotient::{induce_sequence, subquotient, InducedSequence, Subquotient, Undefined};
use crate::zigzag::Edge;

/// A report together with the sequence, when it could be built.
#[derive(Debug, Clone)]
pub struct SequenceOutcome<O, M> {
    pub names: Vec<String>,
    pub report: Report,
    pub sequence: Option<InducedSequence<O, M>>,
}

impl<O, M> SequenceOutcome<O, M> {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.sequence.is_some()
    }
}

type Nodes<O, M> = Vec<Result<Subquotient<O, M>, Undefined>>;

fn six_term<F: Form>(
    form: &F,
    mut report: Report,
    names: &[&str],
    nodes: Nodes<F::Obj, F::Mor>,
    middles: &[Vec<Edge<F::Mor>>],
) -> SequenceOutcome<F::Obj, F::Mor> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let mut ok = Vec::new();
    for (n, x) in names.iter().zip(nodes) {
        match x {
            Ok(s) => {
                report.push(Line::pass(format!("defined:{n}")));
                ok.push(s);
            }
            Err(u) => report.push(Line::fail(format!("defined:{n}"), u.to_string())),
        }
    }
    if ok.len() < names.len() {
        return SequenceOutcome { names, report, sequence: None };
    }
    let seq = match induce_sequence(form, ok, middles) {
        Ok(s) => s,
        Err(e) => {
            report.push(Line::fail("induce", format!("REFUTED {e}")));
            return SequenceOutcome { names, report, sequence: None };
        }
    };
    for k in 1..names.len() - 1 {
        let (holds, detail) = seq.exact_at(form, k);
        report.push(Line::check(format!("exact:{}", names[k]), holds, || format!("REFUTED {detail}")));
    }
    SequenceOutcome { names, report, sequence: Some(seq) }
}

fn hypotheses<F: Form>(
    form: &F,
    lemma: &str,
    d: &Diagram<F::Obj, F::Mor>,
) -> Result<(LemmaOutcome, Diagram<F::Obj, F::Mor>), ShapeError> {
    let t = template(lemma).expect("built-in");
    let d = bind(form, &t, d)?;
    Ok((verify_lemma(form, &t, &d)?, d))
}

fn kernel_node<F: Form>(form: &F, f: &F::Mor) -> Result<Subquotient<F::Obj, F::Mor>, Undefined> {
    let x = form.dom(f);
    subquotient(form, &x, form.kernel(f), form.bottom(&x))
}

fn cokernel_node<F: Form>(form: &F, f: &F::Mor) -> Result<Subquotient<F::Obj, F::Mor>, Undefined> {
    let x = form.cod(f);
    subquotient(form, &x, form.top(&x), form.image(f))
}

/// The snake sequence `Ker alpha -> Ker beta -> Ker gamma -> Coker alpha
/// -> Coker beta -> Coker gamma` of a two-row diagram with roles `f g f'
/// g' alpha beta gamma`.
pub fn snake<F: Form>(
    form: &F,
    d: &Diagram<F::Obj, F::Mor>,
) -> Result<SequenceOutcome<F::Obj, F::Mor>, ShapeError> {
    let names = ["ker(alpha)", "ker(beta)", "ker(gamma)", "coker(alpha)", "coker(beta)", "coker(gamma)"];
    let (hyp, d) = hypotheses(form, "snake", d)?;
    if !hyp.hypotheses {
        return Ok(SequenceOutcome { names: names.map(String::from).to_vec(), report: hyp.report, sequence: None });
    }
    let a = |r: &str| d.arrows[r].clone();
    let (f, g, f1, g1) = (a("f"), a("g"), a("f'"), a("g'"));
    let (al, be, ga) = (a("alpha"), a("beta"), a("gamma"));
    let nodes = vec![
        kernel_node(form, &al),
        kernel_node(form, &be),
        kernel_node(form, &ga),
        cokernel_node(form, &al),
        cokernel_node(form, &be),
        cokernel_node(form, &ga),
    ];
    let middles = vec![
        vec![Edge::right(f)],
        vec![Edge::right(g.clone())],
        vec![Edge::left(g), Edge::right(be), Edge::left(f1.clone())],
        vec![Edge::right(f1)],
        vec![Edge::right(g1)],
    ];
    Ok(six_term(form, hyp.report, &names, nodes, &middles))
}

/// `Ker gamma -> Ker alpha -> Ker beta' -> Coker gamma -> Coker alpha ->
/// Coker beta'` for `alpha = beta' . gamma`.
pub fn generalized_snail<F: Form>(
    form: &F,
    d: &Diagram<F::Obj, F::Mor>,
) -> Result<SequenceOutcome<F::Obj, F::Mor>, ShapeError> {
    let names = ["ker(gamma)", "ker(alpha)", "ker(beta')", "coker(gamma)", "coker(alpha)", "coker(beta')"];
    let (hyp, d) = hypotheses(form, "generalized-snail", d)?;
    if !hyp.hypotheses {
        return Ok(SequenceOutcome { names: names.map(String::from).to_vec(), report: hyp.report, sequence: None });
    }
    let a = |r: &str| d.arrows[r].clone();
    let (al, ga, bp) = (a("alpha"), a("gamma"), a("beta'"));
    let nodes = vec![
        kernel_node(form, &ga),
        kernel_node(form, &al),
        kernel_node(form, &bp),
        cokernel_node(form, &ga),
        cokernel_node(form, &al),
        cokernel_node(form, &bp),
    ];
    let middles = vec![vec![], vec![Edge::right(ga)], vec![], vec![Edge::right(bp)], vec![]];
    Ok(six_term(form, hyp.report, &names, nodes, &middles))
}

/// Local data of a homology object at one node of a double complex.
#[derive(Debug, Clone)]
pub enum Homology<M> {
    /// `Ker out / Im into`.
    Horizontal { into: M, out: M },
    /// `Ker diagonal / (Im vertical v Im horizontal)`, arrows into the node
    /// and the diagonal out of it.
    Box { vertical: M, horizontal: M, diagonal: M },
    /// `(Ker horizontal ^ Ker vertical) / Im diagonal`, arrows out of the
    /// node and the diagonal into it.
    CoBox { horizontal: M, vertical: M, diagonal: M },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    Malformed(FormError),
    Undefined(Undefined),
}

pub fn homology_object<F: Form>(
    form: &F,
    h: &Homology<F::Mor>,
) -> Result<Subquotient<F::Obj, F::Mor>, HomologyError> {
    let same = |x: &F::Obj, y: &F::Obj| form.check_owner(x, y).map_err(HomologyError::Malformed);
    let (x, upper, lower) = match h {
        Homology::Horizontal { into, out } => {
            let x = form.cod(into);
            same(&x, &form.dom(out))?;
            (x, form.kernel(out), form.image(into))
        }
        Homology::Box { vertical, horizontal, diagonal } => {
            let x = form.cod(vertical);
            same(&x, &form.cod(horizontal))?;
            same(&x, &form.dom(diagonal))?;
            let lower = form.join(&x, form.image(vertical), form.image(horizontal));
            (x, form.kernel(diagonal), lower)
        }
        Homology::CoBox { horizontal, vertical, diagonal } => {
            let x = form.dom(horizontal);
            same(&x, &form.dom(vertical))?;
            same(&x, &form.cod(diagonal))?;
            let upper = form.meet(&x, form.kernel(horizontal), form.kernel(vertical));
            (x, upper, form.image(diagonal))
        }
    };
    subquotient(form, &x, upper, lower).map_err(HomologyError::Undefined)
}

/// `C_box -> A_h -> A_box -> box_B -> B_h -> box_D` for one cell of a
/// double complex (roles as in the `double-complex` template).
pub fn salamander<F: Form>(
    form: &F,
    d: &Diagram<F::Obj, F::Mor>,
) -> Result<SequenceOutcome<F::Obj, F::Mor>, ShapeError> {
    let names = ["C_box", "A_h", "A_box", "box_B", "B_h", "box_D"];
    let (hyp, d) = hypotheses(form, "double-complex", d)?;
    let mut report = hyp.report;
    let a = |r: &str| d.arrows[r].clone();
    let c = a("c");
    let im_c = form.image(&c);
    let normal = form.is_normal(&form.cod(&c), im_c);
    report.push(Line::check("hyp:normal(im(c))", normal, || form.sub_label(&form.cod(&c), im_c)));
    if !hyp.hypotheses || !normal {
        return Ok(SequenceOutcome { names: names.map(String::from).to_vec(), report, sequence: None });
    }
    let ec = form.compose(&a("e"), &c)?;
    let ge = form.compose(&a("g"), &a("e"))?;
    let objects = [
        Homology::Box { vertical: a("m"), horizontal: a("a"), diagonal: ec.clone() },
        Homology::Horizontal { into: a("d"), out: a("e") },
        Homology::Box { vertical: c.clone(), horizontal: a("d"), diagonal: ge.clone() },
        Homology::CoBox { horizontal: a("s"), vertical: a("g"), diagonal: ec },
        Homology::Horizontal { into: a("e"), out: a("s") },
        Homology::CoBox { horizontal: a("t"), vertical: a("u"), diagonal: ge },
    ];
    let mut nodes = Vec::new();
    for h in &objects {
        nodes.push(match homology_object(form, h) {
            Ok(s) => Ok(s),
            Err(HomologyError::Undefined(u)) => Err(u),
            Err(HomologyError::Malformed(e)) => return Err(e.into()),
        });
    }
    let middles = vec![vec![Edge::right(c)], vec![], vec![Edge::right(a("e"))], vec![], vec![Edge::right(a("g"))]];
    Ok(six_term(form, report, &names, nodes, &middles))
}

#[derive(Debug, Clone)]
pub struct GoursatOutcome<O, M> {
    pub report: Report,
    pub iso: Option<QuotientIso<O, M>>,
}

/// Checks the relative normality claims and builds
/// `(Im beta ^ Im l')/Im(beta.l) ~ Ker(gamma.m)/(Ker beta v Ker m)` from
/// the quotient isomorphism along `beta`.
pub fn goursat<F: Form>(
    form: &F,
    d: &Diagram<F::Obj, F::Mor>,
) -> Result<GoursatOutcome<F::Obj, F::Mor>, ShapeError> {
    let (hyp, d) = hypotheses(form, "goursat", d)?;
    let mut report = hyp.report;
    if !hyp.hypotheses {
        return Ok(GoursatOutcome { report, iso: None });
    }
    let a = |r: &str| d.arrows[r].clone();
    let (l, m, l1, beta, gamma) = (a("l"), a("m"), a("l'"), a("beta"), a("gamma"));
    let b = form.dom(&beta);
    let e = form.cod(&beta);
    let x = form.kernel(&form.compose(&gamma, &m)?);
    let w = form.join(&b, form.kernel(&beta), form.kernel(&m));
    let q = quotient_iso(form, &beta, w, x)?;
    let top = form.meet(&e, form.image(&beta), form.image(&l1));
    let bottom = form.image(&form.compose(&beta, &l)?);
    report.push(Line::check("ii:eq(img(beta,ker(gamma.m))=meet(im(beta),im(l')))", q.fx == top, || {
        format!("{} vs {}", form.sub_label(&e, q.fx), form.sub_label(&e, top))
    }));
    report.push(Line::check("ii:eq(img(beta,join(ker(beta),ker(m)))=im(beta.l))", q.fw == bottom, || {
        format!("{} vs {}", form.sub_label(&e, q.fw), form.sub_label(&e, bottom))
    }));
    report.push(Line::check("ii:iso", q.w_normal && q.fw_normal && q.iso.is_some(), || {
        format!("w_normal={} fw_normal={}", q.w_normal, q.fw_normal)
    }));
    Ok(GoursatOutcome { report, iso: Some(q) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StronglyShortExact {
    /// Exact at the three interior nodes.
    pub exact: bool,
    pub short_exact: bool,
}

impl StronglyShortExact {
    pub fn refuted(&self) -> bool {
        self.exact && !self.short_exact
    }
}

/// `0 -> A -> B -> C -> 0'` with both ends having a single subobject.
pub fn strongly_short_exact_check<F: Form>(
    form: &F,
    o: &F::Mor,
    f: &F::Mor,
    g: &F::Mor,
    o1: &F::Mor,
) -> Result<StronglyShortExact, FormError> {
    for end in [form.dom(o), form.cod(o1)] {
        if form.sub_count(&end) != 1 {
            return Err(FormError::Invalid(format!("{} is not trivial", form.obj_name(&end))));
        }
    }
    let exact = is_exact_at(form, o, f)? && is_exact_at(form, f, g)? && is_exact_at(form, g, o1)?;
    let short_exact = super::diagram::is_short_exact(form, f, g)?;
    Ok(StronglyShortExact { exact, short_exact })
}
