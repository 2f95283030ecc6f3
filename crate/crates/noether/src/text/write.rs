use std::fmt::Write;

use super::Workspace;
use crate::lemma::Assertion;
use crate::slominski::Algebra;
use crate::table::TableForm;
use crate::zigzag::Dir;

fn rows(out: &mut String, kw: &str, n: usize, f: impl Fn(usize, usize) -> usize) {
    let rows: Vec<String> =
        (0..n).map(|x| (0..n).map(|y| f(x, y).to_string()).collect::<Vec<_>>().join(" ")).collect();
    let _ = writeln!(out, "{kw} {}", rows.join(" / "));
}

fn algebra(out: &mut String, a: &Algebra, elements: Option<&Vec<String>>) {
    let n = a.order();
    let _ = writeln!(out, "algebra {} size {n} zero {}", a.name(), a.zero());
    if let Some(e) = elements {
        let _ = writeln!(out, "elements {}", e.join(" "));
    }
    rows(out, "p", n, |x, y| a.p(x, y));
    rows(out, "d", n, |x, y| a.d(x, y));
}

fn form(out: &mut String, f: &TableForm) {
    let _ = writeln!(out, "form {}", f.name);
    for o in &f.objects {
        let _ = writeln!(out, "object {} subobjects {}", o.name, o.keys.join(" "));
    }
    for o in &f.objects {
        let l = &o.lattice;
        let n = l.len();
        // Bottom-first, top-last objects get those relations for free.
        let implied = l.bottom() == 0 && l.top() == n - 1;
        let lt = |a: usize, b: usize| a != b && l.leq(a, b);
        for a in 0..n {
            for b in 0..n {
                let cover = lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b));
                if cover && !(implied && (a == 0 || b == n - 1)) {
                    let _ = writeln!(out, "order {} {} <= {}", o.name, o.keys[a], o.keys[b]);
                }
            }
        }
    }
    for m in &f.morphisms {
        let (d, c) = (&f.objects[m.dom], &f.objects[m.cod]);
        let _ = writeln!(out, "morphism {} {} -> {}", m.name, d.name, c.name);
        for (a, &b) in m.dimg.iter().enumerate() {
            let _ = writeln!(out, "  dimg {} -> {}", d.keys[a], c.keys[b]);
        }
        for (b, &a) in m.iimg.iter().enumerate() {
            let _ = writeln!(out, "  iimg {} -> {}", c.keys[b], d.keys[a]);
        }
    }
}

pub(super) fn workspace(ws: &Workspace) -> String {
    let mut out = String::new();
    let mut blocks: Vec<String> = Vec::new();
    for f in ws.forms.values() {
        let mut s = String::new();
        form(&mut s, f);
        blocks.push(s);
    }
    for (name, a) in &ws.algebras {
        let mut s = String::new();
        algebra(&mut s, a, ws.elements.get(name));
        blocks.push(s);
    }
    if !ws.homs.is_empty() {
        let mut s = String::new();
        for (name, h) in &ws.homs {
            let map: Vec<String> = h.map().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "hom {name} {} -> {} map {}", h.dom().name(), h.cod().name(), map.join(" "));
        }
        blocks.push(s);
    }
    if !ws.zigzags.is_empty() {
        let mut s = String::new();
        for (name, z) in &ws.zigzags {
            let _ = write!(s, "zigzag {name} : {}", z.nodes[0]);
            for ((m, d), x) in z.edges.iter().zip(&z.nodes[1..]) {
                let d = if *d == Dir::Right { '>' } else { '<' };
                let _ = write!(s, " {m}:{d} {x}");
            }
            s.push('\n');
        }
        blocks.push(s);
    }
    for (name, d) in &ws.diagrams {
        let mut s = String::new();
        let _ = writeln!(s, "diagram {name} over {}", d.over);
        for (n, r) in &d.uses {
            let _ = writeln!(s, "use {n} as {r}");
        }
        for a in &d.facts {
            match a {
                Assertion::Commute(..) => {
                    let _ = writeln!(s, "{a}");
                }
                _ => {
                    let _ = writeln!(s, "assert {a}");
                }
            }
        }
        for a in &d.conclusions {
            let _ = writeln!(s, "conclude {a}");
        }
        blocks.push(s);
    }
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(b);
    }
    out
}
