//! Exhaustive checks of the form axioms over a finite form.
//!
//! Every entry is checked over all declared objects and morphisms; a
//! failing entry carries the first counterexample found.

use std::collections::HashMap;

use crate::form::{FiniteForm, SubId};
use crate::report::{Line, Report};

/// Entry names, in report order.
pub const ENTRIES: [&str; 14] = [
    "P1", "P2", "P3", "BL", "G", "I", "A", "F1", "F2", "axiom2", "axiom3", "axiom4", "axiom5", "axiom6",
];

struct Ctx<'a, F: FiniteForm> {
    form: &'a F,
    objs: Vec<F::Obj>,
    mors: Vec<F::Mor>,
    dom: Vec<usize>,
    cod: Vec<usize>,
}

impl<'a, F: FiniteForm> Ctx<'a, F> {
    fn new(form: &'a F) -> Self {
        let objs = form.objects();
        let pos: HashMap<F::Obj, usize> = objs.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let mors = form.morphisms();
        let dom = mors.iter().map(|f| pos.get(&form.dom(f)).copied().unwrap_or(usize::MAX)).collect();
        let cod = mors.iter().map(|f| pos.get(&form.cod(f)).copied().unwrap_or(usize::MAX)).collect();
        Ctx { form, objs, mors, dom, cod }
    }

    fn sub(&self, x: &F::Obj, a: SubId) -> String {
        format!("{}:{}", self.form.obj_name(x), self.form.sub_label(x, a))
    }
}

/// Runs the suite. Axiom 6 is reported as SKIP unless requested.
pub fn axiom_suite<F: FiniteForm>(form: &F, with_axiom6: bool) -> Report {
    let c = Ctx::new(form);
    let mut r = Report::new();
    if let Some(i) = c.dom.iter().chain(&c.cod).position(|&p| p == usize::MAX) {
        let f = &c.mors[i % c.mors.len()];
        r.push(Line::fail("I", format!("{} touches an undeclared object", form.mor_name(f))));
        return r;
    }
    r.push(order_check(&c, "P1"));
    r.push(order_check(&c, "P2"));
    r.push(order_check(&c, "P3"));
    r.push(bounded_lattice(&c));
    r.push(galois(&c));
    let (table, closure) = composition_table(&c);
    r.push(identities(&c));
    r.push(match closure {
        Some(w) => Line::fail("A", w),
        None => associativity(&c, &table),
    });
    r.push(functor_identity(&c));
    r.push(functor_composition(&c, &table));
    r.push(axiom2(&c));
    r.push(axiom3(&c));
    r.push(axiom4(&c));
    r.push(axiom5(&c));
    if with_axiom6 {
        r.push(axiom6(&c));
    } else {
        r.push(Line::skip("axiom6", "not requested"));
    }
    r
}

fn order_check<F: FiniteForm>(c: &Ctx<F>, which: &str) -> Line {
    let f = c.form;
    for x in &c.objs {
        let n = f.sub_count(x);
        for a in 0..n {
            if which == "P1" && !f.leq(x, a, a) {
                return Line::fail(which, format!("{} is not below itself", c.sub(x, a)));
            }
            for b in 0..n {
                if which == "P2" && a != b && f.leq(x, a, b) && f.leq(x, b, a) {
                    return Line::fail(which, format!("{} and {} are distinct but equivalent", c.sub(x, a), c.sub(x, b)));
                }
                if which == "P3" && f.leq(x, a, b) {
                    if let Some(d) = (0..n).find(|&d| f.leq(x, b, d) && !f.leq(x, a, d)) {
                        return Line::fail(
                            which,
                            format!("{} <= {} <= {} fails transitivity", c.sub(x, a), c.sub(x, b), c.sub(x, d)),
                        );
                    }
                }
            }
        }
    }
    Line::pass(which)
}

fn bounded_lattice<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for x in &c.objs {
        let n = f.sub_count(x);
        let (bot, top) = (f.bottom(x), f.top(x));
        for a in 0..n {
            if !f.leq(x, bot, a) || !f.leq(x, a, top) {
                return Line::fail("BL", format!("{} escapes the bounds", c.sub(x, a)));
            }
            for b in 0..n {
                let (j, m) = (f.join(x, a, b), f.meet(x, a, b));
                let upper = f.leq(x, a, j) && f.leq(x, b, j);
                let lower = f.leq(x, m, a) && f.leq(x, m, b);
                let least = (0..n).all(|u| !(f.leq(x, a, u) && f.leq(x, b, u)) || f.leq(x, j, u));
                let greatest = (0..n).all(|l| !(f.leq(x, l, a) && f.leq(x, l, b)) || f.leq(x, l, m));
                if !(upper && lower && least && greatest) {
                    return Line::fail(
                        "BL",
                        format!("join or meet of {} and {} is wrong", c.sub(x, a), c.sub(x, b)),
                    );
                }
            }
        }
    }
    Line::pass("BL")
}

fn galois<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for m in &c.mors {
        let (d, k) = (f.dom(m), f.cod(m));
        for a in f.subs(&d) {
            for b in f.subs(&k) {
                if f.leq(&k, f.dimg(m, a), b) != f.leq(&d, a, f.iimg(m, b)) {
                    return Line::fail(
                        "G",
                        format!("{} at {} and {}", f.mor_name(m), c.sub(&d, a), c.sub(&k, b)),
                    );
                }
            }
        }
    }
    Line::pass("G")
}

type Table = Vec<u32>;
const NONE: u32 = u32::MAX;

/// `t[i * n + j]` is the index of `mors[j] . mors[i]`, when composable.
fn composition_table<F: FiniteForm>(c: &Ctx<F>) -> (Table, Option<String>) {
    let f = c.form;
    let n = c.mors.len();
    let index: HashMap<(usize, usize, Vec<usize>), u32> = c
        .mors
        .iter()
        .enumerate()
        .map(|(i, m)| ((c.dom[i], c.cod[i], f.mor_key(m)), i as u32))
        .collect();
    let mut t = vec![NONE; n * n];
    for i in 0..n {
        for j in 0..n {
            if c.cod[i] != c.dom[j] {
                continue;
            }
            let comp = f.compose_unchecked(&c.mors[j], &c.mors[i]);
            match index.get(&(c.dom[i], c.cod[j], f.mor_key(&comp))) {
                Some(&k) => t[i * n + j] = k,
                None => {
                    return (
                        t,
                        Some(format!(
                            "composite {}.{} is not declared",
                            f.mor_name(&c.mors[j]),
                            f.mor_name(&c.mors[i])
                        )),
                    )
                }
            }
        }
    }
    (t, None)
}

fn associativity<F: FiniteForm>(c: &Ctx<F>, t: &Table) -> Line {
    let n = c.mors.len();
    for i in 0..n {
        for j in 0..n {
            let ij = t[i * n + j];
            if ij == NONE {
                continue;
            }
            for k in 0..n {
                let jk = t[j * n + k];
                if jk == NONE {
                    continue;
                }
                if t[ij as usize * n + k] != t[i * n + jk as usize] {
                    let nm = |x: usize| c.form.mor_name(&c.mors[x]);
                    return Line::fail("A", format!("({}.{}).{}", nm(k), nm(j), nm(i)));
                }
            }
        }
    }
    Line::pass("A")
}

fn identities<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for x in &c.objs {
        let id = f.identity(x);
        if !c.mors.iter().any(|m| f.same_morphism(m, &id)) {
            return Line::fail("I", format!("identity of {} is not declared", f.obj_name(x)));
        }
        for m in &c.mors {
            if f.dom(m) == *x && !f.same_morphism(&f.compose_unchecked(m, &id), m) {
                return Line::fail("I", format!("{} . id_{} differs", f.mor_name(m), f.obj_name(x)));
            }
            if f.cod(m) == *x && !f.same_morphism(&f.compose_unchecked(&id, m), m) {
                return Line::fail("I", format!("id_{} . {} differs", f.obj_name(x), f.mor_name(m)));
            }
        }
    }
    Line::pass("I")
}

fn functor_identity<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for x in &c.objs {
        let id = f.identity(x);
        for a in f.subs(x) {
            if f.dimg(&id, a) != a || f.iimg(&id, a) != a {
                return Line::fail("F1", format!("identity moves {}", c.sub(x, a)));
            }
        }
    }
    Line::pass("F1")
}

fn functor_composition<F: FiniteForm>(c: &Ctx<F>, t: &Table) -> Line {
    let f = c.form;
    let n = c.mors.len();
    // Image maps of every declared morphism; composites are looked up in
    // the composition table, falling back to composing when undeclared.
    let dimg: Vec<Vec<SubId>> = c.mors.iter().map(|m| f.subs(&f.dom(m)).map(|a| f.dimg(m, a)).collect()).collect();
    let iimg: Vec<Vec<SubId>> = c.mors.iter().map(|m| f.subs(&f.cod(m)).map(|b| f.iimg(m, b)).collect()).collect();
    for (i, m) in c.mors.iter().enumerate() {
        for (j, g) in c.mors.iter().enumerate() {
            if c.cod[i] != c.dom[j] {
                continue;
            }
            let (gm_d, gm_i) = match t.get(i * n + j) {
                Some(&k) if k != NONE => (dimg[k as usize].clone(), iimg[k as usize].clone()),
                _ => {
                    let gm = f.compose_unchecked(g, m);
                    (
                        f.subs(&f.dom(m)).map(|a| f.dimg(&gm, a)).collect(),
                        f.subs(&f.cod(g)).map(|b| f.iimg(&gm, b)).collect(),
                    )
                }
            };
            let bad_d = (0..gm_d.len()).find(|&a| gm_d[a] != dimg[j][dimg[i][a]]);
            let bad_i = (0..gm_i.len()).find(|&b| gm_i[b] != iimg[i][iimg[j][b]]);
            if let Some(a) = bad_d {
                return Line::fail("F2", format!("direct image of {}.{} at {}", f.mor_name(g), f.mor_name(m), c.sub(&f.dom(m), a)));
            }
            if let Some(b) = bad_i {
                return Line::fail("F2", format!("inverse image of {}.{} at {}", f.mor_name(g), f.mor_name(m), c.sub(&f.cod(g), b)));
            }
        }
    }
    Line::pass("F2")
}

fn axiom2<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for m in &c.mors {
        let (d, k) = (f.dom(m), f.cod(m));
        let (im, ker) = (f.image(m), f.kernel(m));
        for b in f.subs(&k) {
            if f.dimg(m, f.iimg(m, b)) != f.meet(&k, b, im) {
                return Line::fail("axiom2", format!("ff^-1 at {} for {}", c.sub(&k, b), f.mor_name(m)));
            }
        }
        for a in f.subs(&d) {
            if f.iimg(m, f.dimg(m, a)) != f.join(&d, a, ker) {
                return Line::fail("axiom2", format!("f^-1f at {} for {}", c.sub(&d, a), f.mor_name(m)));
            }
        }
    }
    Line::pass("axiom2")
}

fn axiom3<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for x in &c.objs {
        for s in f.subs(x) {
            if f.is_conormal(x, s) {
                let i = match f.embedding_of(x, s) {
                    Ok(i) => i,
                    Err(e) => return Line::fail("axiom3", format!("embedding of {}: {e}", c.sub(x, s))),
                };
                if f.cod(&i) != *x || f.image(&i) != s || !f.is_injective(&i) {
                    return Line::fail("axiom3", format!("embedding of {} has wrong image or kernel", c.sub(x, s)));
                }
                for g in c.mors.iter().filter(|g| f.cod(g) == *x && f.leq(x, f.image(g), s)) {
                    if f.count_lifts(&i, g) != 1 {
                        return Line::fail(
                            "axiom3",
                            format!("{} does not factor uniquely through the embedding of {}", f.mor_name(g), c.sub(x, s)),
                        );
                    }
                }
            }
            if f.is_normal(x, s) {
                let p = match f.projection_of(x, s) {
                    Ok(p) => p,
                    Err(e) => return Line::fail("axiom3", format!("projection of {}: {e}", c.sub(x, s))),
                };
                if f.dom(&p) != *x || f.kernel(&p) != s || !f.is_surjective(&p) {
                    return Line::fail("axiom3", format!("projection of {} has wrong kernel or image", c.sub(x, s)));
                }
                for g in c.mors.iter().filter(|g| f.dom(g) == *x && f.leq(x, s, f.kernel(g))) {
                    if f.count_descents(&p, g) != 1 {
                        return Line::fail(
                            "axiom3",
                            format!("{} does not factor uniquely through the projection of {}", f.mor_name(g), c.sub(x, s)),
                        );
                    }
                }
            }
        }
    }
    Line::pass("axiom3")
}

fn axiom4<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for m in &c.mors {
        let fac = match f.factorize(m) {
            Ok(fac) => fac,
            Err(e) => return Line::fail("axiom4", format!("{}: {e}", f.mor_name(m))),
        };
        let ok = f.kernel(&fac.e) == f.kernel(m)
            && f.is_surjective(&fac.e)
            && f.image(&fac.m) == f.image(m)
            && f.is_injective(&fac.m)
            && f.is_isomorphism(&fac.h)
            && f.same_morphism(&f.compose_unchecked(&fac.m, &f.compose_unchecked(&fac.h, &fac.e)), m);
        if !ok {
            return Line::fail("axiom4", format!("factorization of {} is wrong", f.mor_name(m)));
        }
    }
    Line::pass("axiom4")
}

fn axiom5<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for x in &c.objs {
        let n = f.sub_count(x);
        for a in 0..n {
            for b in a..n {
                if f.is_normal(x, a) && f.is_normal(x, b) && !f.is_normal(x, f.join(x, a, b)) {
                    return Line::fail("axiom5", format!("join of normal {} and {}", c.sub(x, a), c.sub(x, b)));
                }
                if f.is_conormal(x, a) && f.is_conormal(x, b) && !f.is_conormal(x, f.meet(x, a, b)) {
                    return Line::fail("axiom5", format!("meet of conormal {} and {}", c.sub(x, a), c.sub(x, b)));
                }
            }
        }
    }
    Line::pass("axiom5")
}

fn axiom6<F: FiniteForm>(c: &Ctx<F>) -> Line {
    let f = c.form;
    for x in &c.objs {
        if !f.is_conormal(x, f.bottom(x)) {
            return Line::fail("axiom6", format!("bottom of {} is not conormal", f.obj_name(x)));
        }
        if !f.is_normal(x, f.top(x)) {
            return Line::fail("axiom6", format!("top of {} is not normal", f.obj_name(x)));
        }
    }
    Line::pass("axiom6")
}
