//! Zigzags: finite chains of morphisms pointing either way, and the
//! chases that push subobjects along them.

use std::sync::Arc;

use crate::form::{Form, FormError, SubId};
use crate::slominski::{Algebra, Hom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    /// The morphism runs from the left node to the right node.
    Right,
    /// The morphism runs from the right node to the left node.
    Left,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Right => Dir::Left,
            Dir::Left => Dir::Right,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Dir::Right => '>',
            Dir::Left => '<',
        }
    }
}

#[derive(Debug, Clone)]
pub struct Edge<M> {
    pub mor: M,
    pub dir: Dir,
}

impl<M> Edge<M> {
    pub fn right(mor: M) -> Self {
        Edge { mor, dir: Dir::Right }
    }

    pub fn left(mor: M) -> Self {
        Edge { mor, dir: Dir::Left }
    }
}

#[derive(Debug, Clone)]
pub struct Zigzag<O, M> {
    nodes: Vec<O>,
    edges: Vec<Edge<M>>,
}

impl<O: Clone + PartialEq, M: Clone> Zigzag<O, M> {
    /// Builds the zigzag starting at `start`, checking that consecutive
    /// edges meet.
    pub fn new<F>(form: &F, start: O, edges: Vec<Edge<M>>) -> Result<Self, FormError>
    where
        F: Form<Obj = O, Mor = M>,
    {
        let mut nodes = vec![start];
        for e in &edges {
            let here = nodes.last().unwrap();
            let (from, to) = match e.dir {
                Dir::Right => (form.dom(&e.mor), form.cod(&e.mor)),
                Dir::Left => (form.cod(&e.mor), form.dom(&e.mor)),
            };
            if from != *here {
                return Err(FormError::ObjectMismatch {
                    expected: form.obj_name(here),
                    found: form.obj_name(&from),
                });
            }
            nodes.push(to);
        }
        Ok(Zigzag { nodes, edges })
    }

    /// Builds from edges alone; the first edge fixes the start node.
    pub fn from_edges<F>(form: &F, edges: Vec<Edge<M>>) -> Result<Self, FormError>
    where
        F: Form<Obj = O, Mor = M>,
    {
        let first = edges
            .first()
            .ok_or_else(|| FormError::Invalid("a zigzag needs a start node or an edge".into()))?;
        let start = match first.dir {
            Dir::Right => form.dom(&first.mor),
            Dir::Left => form.cod(&first.mor),
        };
        Zigzag::new(form, start, edges)
    }

    pub fn trivial(node: O) -> Self {
        Zigzag { nodes: vec![node], edges: Vec::new() }
    }

    pub fn nodes(&self) -> &[O] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge<M>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> &O {
        &self.nodes[0]
    }

    pub fn end(&self) -> &O {
        self.nodes.last().unwrap()
    }

    /// The same zigzag read from right to left.
    pub fn opposite(&self) -> Self {
        Zigzag {
            nodes: self.nodes.iter().rev().cloned().collect(),
            edges: self
                .edges
                .iter()
                .rev()
                .map(|e| Edge { mor: e.mor.clone(), dir: e.dir.flip() })
                .collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self, FormError> {
        if self.end() != other.start() {
            return Err(FormError::Invalid("zigzags do not meet".into()));
        }
        let mut out = self.clone();
        out.nodes.extend(other.nodes[1..].iter().cloned());
        out.edges.extend(other.edges.iter().cloned());
        Ok(out)
    }
}

/// Subobject at every node when chasing `a` from the first node.
pub fn chase_forward_traced<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>, a: SubId) -> Vec<SubId> {
    let mut out = vec![a];
    let mut cur = a;
    for e in &z.edges {
        cur = match e.dir {
            Dir::Right => form.dimg(&e.mor, cur),
            Dir::Left => form.iimg(&e.mor, cur),
        };
        out.push(cur);
    }
    out
}

/// Subobject at every node when chasing `b` from the last node; the
/// result is indexed by node.
pub fn chase_backward_traced<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>, b: SubId) -> Vec<SubId> {
    let mut out = vec![b];
    let mut cur = b;
    for e in z.edges.iter().rev() {
        cur = match e.dir {
            Dir::Right => form.iimg(&e.mor, cur),
            Dir::Left => form.dimg(&e.mor, cur),
        };
        out.push(cur);
    }
    out.reverse();
    out
}

pub fn chase_forward<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>, a: SubId) -> SubId {
    *chase_forward_traced(form, z, a).last().unwrap()
}

pub fn chase_backward<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>, b: SubId) -> SubId {
    chase_backward_traced(form, z, b)[0]
}

/// Every left-pointing edge is an isomorphism.
pub fn is_collapsible<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>) -> bool {
    z.edges.iter().all(|e| e.dir == Dir::Right || form.is_isomorphism(&e.mor))
}

/// Composite of a collapsible zigzag, left edges contributing inverses.
pub fn collapse<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>) -> Result<F::Mor, FormError> {
    let mut acc = form.identity(z.start());
    for e in &z.edges {
        let step = match e.dir {
            Dir::Right => e.mor.clone(),
            Dir::Left => form.inverse(&e.mor)?,
        };
        acc = form.compose(&step, &acc)?;
    }
    Ok(acc)
}

/// Left edges are embeddings and right edges are projections.
pub fn is_subquotient<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>) -> bool {
    z.edges.iter().all(|e| match e.dir {
        Dir::Left => form.is_injective(&e.mor),
        Dir::Right => form.is_surjective(&e.mor),
    })
}

/// A morphism known only through its image maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced<O> {
    pub dom: O,
    pub cod: O,
    pub dimg: Vec<SubId>,
    pub iimg: Vec<SubId>,
}

impl<O> Induced<O> {
    pub fn kernel(&self, cod_bottom: SubId) -> SubId {
        self.iimg[cod_bottom]
    }

    pub fn image(&self, dom_top: SubId) -> SubId {
        self.dimg[dom_top]
    }
}

/// Image maps of a form morphism, for comparison with chased maps.
pub fn image_maps<F: Form>(form: &F, f: &F::Mor) -> Induced<F::Obj> {
    let (d, c) = (form.dom(f), form.cod(f));
    Induced {
        dimg: form.subs(&d).map(|a| form.dimg(f, a)).collect(),
        iimg: form.subs(&c).map(|b| form.iimg(f, b)).collect(),
        dom: d,
        cod: c,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// The chased bottom grew above bottom at this node.
    BottomGrows,
    /// The chased top fell below top at this node.
    TopShrinks,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionFailure {
    pub node: usize,
    pub obstruction: Obstruction,
    pub found: SubId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Induction<O> {
    Induced(Induced<O>),
    Fails(InductionFailure),
}

impl<O> Induction<O> {
    pub fn induces(&self) -> bool {
        matches!(self, Induction::Induced(_))
    }

    pub fn morphism(&self) -> Option<&Induced<O>> {
        match self {
            Induction::Induced(m) => Some(m),
            Induction::Fails(_) => None,
        }
    }
}

/// A zigzag induces a morphism exactly when chasing bottom forward ends
/// at bottom and chasing top backward ends at top.
pub fn decide_induction<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>) -> Induction<F::Obj> {
    let (x0, xn) = (z.start().clone(), z.end().clone());
    let fwd = chase_forward_traced(form, z, form.bottom(&x0));
    let bwd = chase_backward_traced(form, z, form.top(&xn));
    let ok_fwd = *fwd.last().unwrap() == form.bottom(&xn);
    let ok_bwd = bwd[0] == form.top(&x0);
    if !ok_fwd {
        let node = (0..fwd.len()).find(|&i| fwd[i] != form.bottom(&z.nodes[i])).unwrap();
        return Induction::Fails(InductionFailure { node, obstruction: Obstruction::BottomGrows, found: fwd[node] });
    }
    if !ok_bwd {
        let node = (0..bwd.len()).rev().find(|&i| bwd[i] != form.top(&z.nodes[i])).unwrap();
        return Induction::Fails(InductionFailure { node, obstruction: Obstruction::TopShrinks, found: bwd[node] });
    }
    Induction::Induced(Induced {
        dimg: form.subs(&x0).map(|a| chase_forward(form, z, a)).collect(),
        iimg: form.subs(&xn).map(|b| chase_backward(form, z, b)).collect(),
        dom: x0,
        cod: xn,
    })
}

/// The zigzag induces an isomorphism: it induces a morphism and so does
/// its opposite. Returns the forward induced morphism.
pub fn decide_isomorphism<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>) -> Option<Induced<F::Obj>> {
    let fwd = decide_induction(form, z);
    let bwd = decide_induction(form, &z.opposite());
    match (fwd, bwd) {
        (Induction::Induced(m), Induction::Induced(_)) => Some(m),
        _ => None,
    }
}

/// A relation between two finite carriers; `rows[x]` is the set of
/// elements related to `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub rows: Vec<u64>,
    pub cod_order: usize,
}

impl Relation {
    pub fn identity(n: usize) -> Self {
        Relation { rows: (0..n).map(|x| 1u64 << x).collect(), cod_order: n }
    }

    pub fn graph(f: &Hom) -> Self {
        Relation { rows: f.map().iter().map(|&y| 1u64 << y).collect(), cod_order: f.cod().order() }
    }

    pub fn opposite_graph(f: &Hom) -> Self {
        let mut rows = vec![0u64; f.cod().order()];
        for (x, &y) in f.map().iter().enumerate() {
            rows[y] |= 1 << x;
        }
        Relation { rows, cod_order: f.dom().order() }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Relation) -> Relation {
        let rows = self
            .rows
            .iter()
            .map(|&r| (0..64).filter(|&y| r >> y & 1 == 1).fold(0, |acc, y| acc | next.rows[y]))
            .collect();
        Relation { rows, cod_order: next.cod_order }
    }

    pub fn is_function(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones() == 1)
    }

    pub fn as_map(&self) -> Option<Vec<usize>> {
        self.is_function()
            .then(|| self.rows.iter().map(|r| r.trailing_zeros() as usize).collect())
    }

    pub fn image(&self, mask: u64) -> u64 {
        (0..self.rows.len()).filter(|&x| mask >> x & 1 == 1).fold(0, |acc, x| acc | self.rows[x])
    }

    pub fn preimage(&self, mask: u64) -> u64 {
        (0..self.rows.len()).filter(|&x| self.rows[x] & mask != 0).fold(0, |acc, x| acc | 1 << x)
    }
}

/// Relational composite of the zigzag, using the opposite graph for
/// left-pointing edges.
pub fn induced_relation(z: &Zigzag<Arc<Algebra>, Hom>) -> Relation {
    let mut acc = Relation::identity(z.start().order());
    for e in &z.edges {
        let step = match e.dir {
            Dir::Right => Relation::graph(&e.mor),
            Dir::Left => Relation::opposite_graph(&e.mor),
        };
        acc = acc.then(&step);
    }
    acc
}
