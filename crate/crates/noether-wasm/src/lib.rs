//! Browser bindings: each export takes the text of a workspace file and
//! returns plain text for the page to show.

use std::fmt::Write;

use wasm_bindgen::prelude::*;

use noether::form::Form;
use noether::lemma::snake;
use noether::pyramid::{build_pyramid, BuildOptions};
use noether::slominski::SlominskiForm;
use noether::text::{BoundDiagram, BoundZigzag, Kind, Named, Workspace};
use noether::zigzag::{chase_backward_traced, chase_forward_traced, Zigzag};

fn parse(text: &str) -> Result<Workspace, String> {
    Workspace::parse(&[("input", text)]).map_err(|e| e.to_string())
}

fn pick(ws: &Workspace, kind: Kind, name: &str) -> Result<String, String> {
    if !name.is_empty() {
        return Ok(name.to_string());
    }
    ws.only(kind).ok_or_else(|| format!("give the {kind} a name; the input does not declare exactly one"))
}

fn trace<F: Named>(ws: &Workspace, form: &F, z: &Zigzag<F::Obj, F::Mor>, key: &str, backward: bool) -> Result<String, String> {
    let x = if backward { z.end() } else { z.start() };
    let s = form
        .parse_sub(ws, x, key)
        .ok_or_else(|| format!("`{key}` is not a subobject of {}", form.obj_name(x)))?;
    let trail = if backward { chase_backward_traced(form, z, s) } else { chase_forward_traced(form, z, s) };
    let mut out = String::new();
    for (i, (x, &s)) in z.nodes().iter().zip(&trail).enumerate() {
        let _ = writeln!(out, "{i} {}: {}", form.obj_name(x), form.show_sub(ws, x, s));
    }
    Ok(out)
}

/// Chases `subobject` along the zigzag, one line per node.
pub fn chase_text(text: &str, zigzag: &str, subobject: &str, backward: bool) -> Result<String, String> {
    let ws = parse(text)?;
    let name = pick(&ws, Kind::Zigzag, zigzag)?;
    match ws.zigzag(&name).map_err(|e| e.to_string())? {
        BoundZigzag::Table(f, z) => trace(&ws, f, &z, subobject, backward),
        BoundZigzag::Slominski(z) => trace(&ws, &SlominskiForm::open(), &z, subobject, backward),
    }
}

fn dot<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>) -> Result<String, String> {
    let p = build_pyramid(form, z, BuildOptions::default()).map_err(|e| e.to_string())?;
    Ok(p.to_dot(form))
}

/// Graphviz source of the pyramid over the zigzag.
pub fn pyramid_text(text: &str, zigzag: &str) -> Result<String, String> {
    let ws = parse(text)?;
    let name = pick(&ws, Kind::Zigzag, zigzag)?;
    match ws.zigzag(&name).map_err(|e| e.to_string())? {
        BoundZigzag::Table(f, z) => dot(f, &z),
        BoundZigzag::Slominski(z) => dot(&SlominskiForm::open(), &z),
    }
}

fn snake_report<F: Named>(form: &F, d: &noether::lemma::Diagram<F::Obj, F::Mor>) -> Result<String, String> {
    let s = snake(form, d).map_err(|e| e.to_string())?;
    let mut out = String::new();
    if let Some(seq) = &s.sequence {
        for (n, node) in s.names.iter().zip(&seq.nodes) {
            let _ = writeln!(out, "{n}: {}", form.size(&node.object(form)));
        }
    }
    let _ = write!(out, "{}", s.report);
    Ok(out)
}

/// The snake sequence of the diagram and its check report.
pub fn snake_text(text: &str, diagram: &str) -> Result<String, String> {
    let ws = parse(text)?;
    let name = pick(&ws, Kind::Diagram, diagram)?;
    match ws.diagram(&name).map_err(|e| e.to_string())? {
        BoundDiagram::Table(f, d) => snake_report(f, &d),
        BoundDiagram::Slominski(d) => snake_report(&SlominskiForm::open(), &d),
    }
}

#[wasm_bindgen]
pub fn chase(text: &str, zigzag: &str, subobject: &str, backward: bool) -> Result<String, JsError> {
    chase_text(text, zigzag, subobject, backward).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pyramid(text: &str, zigzag: &str) -> Result<String, JsError> {
    pyramid_text(text, zigzag).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn snake_sequence(text: &str, diagram: &str) -> Result<String, JsError> {
    snake_text(text, diagram).map_err(|e| JsError::new(&e))
}
