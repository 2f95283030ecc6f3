//! Subquotients `U/L` of an object and zigzags between them.
//!
//! `U/L` is realised as the embedding `U/1 -> X` followed by the
//! projection `U/1 -> U/L`. Both exist when `U` is conormal and `L` is
//! normal relative to `U`.

use std::fmt;

use crate::form::{Form, FormError, SubId};
use crate::zigzag::{decide_induction, Edge, Induced, Induction, InductionFailure, Zigzag};

#[derive(Debug, Clone)]
pub struct Subquotient<O, M> {
    pub base: O,
    pub upper: SubId,
    pub lower: SubId,
    /// `U/1 -> base`.
    pub emb: M,
    /// `U/1 -> U/L`.
    pub proj: M,
}

/// Why a subquotient does not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Undefined {
    pub object: String,
    pub upper: String,
    pub lower: String,
    pub reason: String,
}

impl fmt::Display for Undefined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} in {} undefined: {}", self.upper, self.lower, self.object, self.reason)
    }
}

impl<O: Clone, M: Clone> Subquotient<O, M> {
    pub fn object<F: Form<Obj = O, Mor = M>>(&self, form: &F) -> O {
        form.cod(&self.proj)
    }
}

pub fn subquotient<F: Form>(
    form: &F,
    x: &F::Obj,
    upper: SubId,
    lower: SubId,
) -> Result<Subquotient<F::Obj, F::Mor>, Undefined> {
    let undefined = |reason: &str| Undefined {
        object: form.obj_name(x),
        upper: form.sub_label(x, upper),
        lower: form.sub_label(x, lower),
        reason: reason.to_string(),
    };
    if !form.leq(x, lower, upper) {
        return Err(undefined("lower is not below upper"));
    }
    if !form.is_conormal(x, upper) {
        return Err(undefined("upper is not conormal"));
    }
    if !form.is_relatively_normal(x, lower, upper) {
        return Err(undefined("lower is not normal in upper"));
    }
    let emb = form.embedding_of(x, upper).map_err(|e| undefined(&e.to_string()))?;
    let inner = form.iimg(&emb, lower);
    let proj = form.projection_of(&form.dom(&emb), inner).map_err(|e| undefined(&e.to_string()))?;
    Ok(Subquotient { base: x.clone(), upper, lower, emb, proj })
}

fn is_identity<F: Form>(form: &F, f: &F::Mor) -> bool {
    let d = form.dom(f);
    d == form.cod(f) && form.same_morphism(f, &form.identity(&d))
}

/// `from <- U/1 -> base ... base' <- U'/1 -> to`, with the middle edges
/// running between the two bases. Identity edges are dropped.
pub fn connect<F: Form>(
    form: &F,
    from: &Subquotient<F::Obj, F::Mor>,
    middle: &[Edge<F::Mor>],
    to: &Subquotient<F::Obj, F::Mor>,
) -> Result<Zigzag<F::Obj, F::Mor>, FormError> {
    let mut edges = vec![Edge::left(from.proj.clone()), Edge::right(from.emb.clone())];
    edges.extend(middle.iter().cloned());
    edges.push(Edge::left(to.emb.clone()));
    edges.push(Edge::right(to.proj.clone()));
    edges.retain(|e| !is_identity(form, &e.mor));
    Zigzag::new(form, from.object(form), edges)
}

/// A sequence of subquotients joined by induced morphisms.
#[derive(Debug, Clone)]
pub struct InducedSequence<O, M> {
    pub nodes: Vec<Subquotient<O, M>>,
    pub zigzags: Vec<Zigzag<O, M>>,
    pub maps: Vec<Induced<O>>,
}

impl<O: Clone + PartialEq, M: Clone> InducedSequence<O, M> {
    /// `Im` of the incoming map equals `Ker` of the outgoing one at each
    /// interior node.
    pub fn exact_at<F: Form<Obj = O, Mor = M>>(&self, form: &F, k: usize) -> (bool, String) {
        let x = self.nodes[k].object(form);
        let im = self.maps[k - 1].image(form.top(&self.nodes[k - 1].object(form)));
        let ker = self.maps[k].kernel(form.bottom(&self.nodes[k + 1].object(form)));
        (im == ker, format!("im={} ker={}", form.sub_label(&x, im), form.sub_label(&x, ker)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceError {
    Build { index: usize, error: FormError },
    NoInduction { index: usize, failure: InductionFailure },
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::Build { index, error } => write!(f, "map {index}: {error}"),
            SequenceError::NoInduction { index, failure } => write!(
                f,
                "map {index}: no induced morphism ({:?} at node {})",
                failure.obstruction, failure.node
            ),
        }
    }
}

/// Builds the zigzag between consecutive nodes and decides induction on
/// each. Fails with the index of the first zigzag that does not induce.
pub fn induce_sequence<F: Form>(
    form: &F,
    nodes: Vec<Subquotient<F::Obj, F::Mor>>,
    middles: &[Vec<Edge<F::Mor>>],
) -> Result<InducedSequence<F::Obj, F::Mor>, SequenceError> {
    let mut zigzags = Vec::new();
    let mut maps = Vec::new();
    for (k, mid) in middles.iter().enumerate() {
        let z = connect(form, &nodes[k], mid, &nodes[k + 1]).map_err(|error| SequenceError::Build { index: k, error })?;
        match decide_induction(form, &z) {
            Induction::Induced(m) => maps.push(m),
            Induction::Fails(failure) => return Err(SequenceError::NoInduction { index: k, failure }),
        }
        zigzags.push(z);
    }
    Ok(InducedSequence { nodes, zigzags, maps })
}
