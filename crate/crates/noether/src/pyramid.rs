//! The pyramid over a zigzag.
//!
//! Node `(i, j)` with `i <= j` sits on layer `j - i`; the base layer is
//! the zigzag itself. Node `(i, j)` is joined to `(i, j - 1)` below-left
//! and to `(i + 1, j)` below-right. An edge is either an upward
//! projection or a downward embedding.

use std::fmt::Write;

use crate::form::{Form, FormError, SubId};
use crate::report::{Line, Report};
use crate::subquotient::{connect, subquotient, Undefined};
use crate::zigzag::{
    chase_backward, chase_forward, collapse, decide_induction, decide_isomorphism, Dir, Edge, Induced, Zigzag,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arrow {
    /// From the lower node to the upper node.
    Up,
    /// From the upper node to the lower node.
    Down,
}

#[derive(Debug, Clone)]
pub struct PEdge<M> {
    pub mor: M,
    pub arrow: Arrow,
}

/// Order in which apexes are filled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildOrder {
    /// Layer by layer, left to right.
    Layered,
    /// Column by column along the right-hand diagonals.
    Diagonal,
}

/// Which end of a factorization becomes the new node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Apex {
    /// The codomain of the projection.
    Quotient,
    /// The domain of the embedding.
    Image,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub order: BuildOrder,
    pub apex: Apex,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { order: BuildOrder::Layered, apex: Apex::Quotient }
    }
}

#[derive(Debug, Clone)]
pub struct Pyramid<O, M> {
    n: usize,
    nodes: Vec<Option<O>>,
    /// Edge from `(i, j)` down-left to `(i, j - 1)`.
    left: Vec<Option<PEdge<M>>>,
    /// Edge from `(i, j)` down-right to `(i + 1, j)`.
    right: Vec<Option<PEdge<M>>>,
    base: Vec<Edge<M>>,
}

impl<O: Clone + PartialEq, M: Clone> Pyramid<O, M> {
    fn idx(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j <= self.n, "no node ({i}, {j})");
        i * (self.n + 1) + j
    }

    /// Length of the base zigzag.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn node(&self, i: usize, j: usize) -> &O {
        self.nodes[self.idx(i, j)].as_ref().expect("pyramid is complete")
    }

    pub fn left_edge(&self, i: usize, j: usize) -> &PEdge<M> {
        self.left[self.idx(i, j)].as_ref().expect("node above the base")
    }

    pub fn right_edge(&self, i: usize, j: usize) -> &PEdge<M> {
        self.right[self.idx(i, j)].as_ref().expect("node above the base")
    }

    pub fn base(&self) -> &[Edge<M>] {
        &self.base
    }

    pub fn apex(&self) -> &O {
        self.node(0, self.n)
    }

    /// From `(0, 0)` up the left side to the apex, then down the right
    /// side to `(n, n)`.
    pub fn principal_horizontal<F: Form<Obj = O, Mor = M>>(&self, form: &F) -> Zigzag<O, M> {
        let mut edges = self.left_side_edges();
        for i in 0..self.n {
            let e = self.right_edge(i, self.n);
            edges.push(Edge {
                mor: e.mor.clone(),
                dir: if e.arrow == Arrow::Down { Dir::Right } else { Dir::Left },
            });
        }
        Zigzag::new(form, self.node(0, 0).clone(), edges).expect("pyramid edges meet")
    }

    /// From `(0, 0)` up the left side to the apex.
    pub fn principal_vertical_left<F: Form<Obj = O, Mor = M>>(&self, form: &F) -> Zigzag<O, M> {
        Zigzag::new(form, self.node(0, 0).clone(), self.left_side_edges()).expect("pyramid edges meet")
    }

    /// From `(n, n)` up the right side to the apex.
    pub fn principal_vertical_right<F: Form<Obj = O, Mor = M>>(&self, form: &F) -> Zigzag<O, M> {
        let edges = (0..self.n)
            .rev()
            .map(|i| {
                let e = self.right_edge(i, self.n);
                Edge {
                    mor: e.mor.clone(),
                    dir: if e.arrow == Arrow::Up { Dir::Right } else { Dir::Left },
                }
            })
            .collect();
        Zigzag::new(form, self.node(self.n, self.n).clone(), edges).expect("pyramid edges meet")
    }

    fn left_side_edges(&self) -> Vec<Edge<M>> {
        (1..=self.n)
            .map(|j| {
                let e = self.left_edge(0, j);
                Edge {
                    mor: e.mor.clone(),
                    dir: if e.arrow == Arrow::Up { Dir::Right } else { Dir::Left },
                }
            })
            .collect()
    }

    /// Two-edge zigzag from `start`; each flag says whether that edge is
    /// traversed upward.
    fn wedge<F: Form<Obj = O, Mor = M>>(
        &self,
        form: &F,
        start: &O,
        first: &PEdge<M>,
        first_up: bool,
        second: &PEdge<M>,
        second_up: bool,
    ) -> Zigzag<O, M> {
        let dir = |e: &PEdge<M>, upward: bool| match (e.arrow, upward) {
            (Arrow::Up, true) | (Arrow::Down, false) => Dir::Right,
            _ => Dir::Left,
        };
        let edges = vec![
            Edge { mor: first.mor.clone(), dir: dir(first, first_up) },
            Edge { mor: second.mor.clone(), dir: dir(second, second_up) },
        ];
        Zigzag::new(form, start.clone(), edges).expect("wedge edges meet")
    }

    /// Every upward arrow is surjective, every downward arrow injective,
    /// every base triangle recovers its edge, and every diamond commutes
    /// under exhaustive chasing in both directions.
    pub fn check_invariants<F: Form<Obj = O, Mor = M>>(&self, form: &F) -> Report {
        let mut r = Report::new();
        let mut bad_arrow = None;
        for layer in 1..=self.n {
            for i in 0..=(self.n - layer) {
                let j = i + layer;
                for e in [self.left_edge(i, j), self.right_edge(i, j)] {
                    let ok = match e.arrow {
                        Arrow::Up => form.is_surjective(&e.mor),
                        Arrow::Down => form.is_injective(&e.mor),
                    };
                    if !ok && bad_arrow.is_none() {
                        bad_arrow = Some(format!("{} at ({i}, {j})", form.mor_name(&e.mor)));
                    }
                }
            }
        }
        r.push(Line::check("arrows", bad_arrow.is_none(), || bad_arrow.clone().unwrap()));

        let mut bad_tri = None;
        for k in 1..=self.n {
            let top = self.node(k - 1, k);
            let via = self.wedge(form, self.node(k - 1, k - 1), self.left_edge(k - 1, k), true, self.right_edge(k - 1, k), false);
            debug_assert!(via.nodes()[1] == *top);
            let direct = Zigzag::new(form, self.node(k - 1, k - 1).clone(), vec![self.base[k - 1].clone()])
                .expect("base edge");
            if !same_chases(form, &via, &direct) && bad_tri.is_none() {
                bad_tri = Some(format!("base edge {k}"));
            }
        }
        r.push(Line::check("triangles", bad_tri.is_none(), || bad_tri.clone().unwrap()));

        let mut bad_diamond = None;
        for layer in 2..=self.n {
            for i in 0..=(self.n - layer) {
                let j = i + layer;
                let (l, b) = (self.node(i, j - 1), self.node(i + 1, j - 1));
                let bottom = self.wedge(form, l, self.right_edge(i, j - 1), false, self.left_edge(i + 1, j), true);
                debug_assert!(bottom.nodes()[1] == *b);
                let top = self.wedge(form, l, self.left_edge(i, j), true, self.right_edge(i, j), false);
                if !same_chases(form, &bottom, &top) && bad_diamond.is_none() {
                    bad_diamond = Some(format!("diamond under ({i}, {j})"));
                }
            }
        }
        r.push(Line::check("diamonds", bad_diamond.is_none(), || bad_diamond.clone().unwrap()));
        r
    }

    /// Graphviz rendering: one rank per layer, upward arrows solid,
    /// downward arrows dashed, base edges bold.
    pub fn to_dot<F: Form<Obj = O, Mor = M>>(&self, form: &F) -> String {
        let mut s = String::from("digraph pyramid {\n  rankdir=BT;\n  node [shape=box];\n");
        let name = |i: usize, j: usize| format!("X_{i}_{j}");
        for layer in 0..=self.n {
            let _ = write!(s, "  {{ rank=same;");
            for i in 0..=(self.n - layer) {
                let _ = write!(s, " {};", name(i, i + layer));
            }
            s.push_str(" }\n");
        }
        for j in 0..=self.n {
            for i in 0..=j {
                let _ = writeln!(
                    s,
                    "  {} [label=\"X_{}^{}\\n{}\"];",
                    name(i, j),
                    i,
                    j,
                    form.obj_name(self.node(i, j)).replace('"', "'")
                );
            }
        }
        for (k, e) in self.base.iter().enumerate() {
            let (a, b) = (name(k, k), name(k + 1, k + 1));
            let (from, to) = if e.dir == Dir::Right { (a, b) } else { (b, a) };
            let _ = writeln!(s, "  {from} -> {to} [style=bold, constraint=false];");
        }
        for layer in 1..=self.n {
            for i in 0..=(self.n - layer) {
                let j = i + layer;
                for (e, low) in [(self.left_edge(i, j), name(i, j - 1)), (self.right_edge(i, j), name(i + 1, j))] {
                    let up = name(i, j);
                    match e.arrow {
                        Arrow::Up => {
                            let _ = writeln!(s, "  {low} -> {up};");
                        }
                        Arrow::Down => {
                            let _ = writeln!(s, "  {up} -> {low} [style=dashed];");
                        }
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn same_chases<F: Form>(form: &F, a: &Zigzag<F::Obj, F::Mor>, b: &Zigzag<F::Obj, F::Mor>) -> bool {
    let (x, y) = (a.start(), a.end());
    form.subs(x).all(|s| chase_forward(form, a, s) == chase_forward(form, b, s))
        && form.subs(y).all(|s| chase_backward(form, a, s) == chase_backward(form, b, s))
}

/// Builds the pyramid over `z`.
pub fn build_pyramid<F: Form>(
    form: &F,
    z: &Zigzag<F::Obj, F::Mor>,
    opts: BuildOptions,
) -> Result<Pyramid<F::Obj, F::Mor>, FormError> {
    let n = z.len();
    let size = (n + 1) * (n + 1);
    let mut p = Pyramid {
        n,
        nodes: vec![None; size],
        left: vec![None; size],
        right: vec![None; size],
        base: z.edges().to_vec(),
    };
    for (k, x) in z.nodes().iter().enumerate() {
        let i = p.idx(k, k);
        p.nodes[i] = Some(x.clone());
    }
    for (k, e) in z.edges().iter().enumerate() {
        let (up, down, top) = split(form, &e.mor, opts.apex)?;
        let t = p.idx(k, k + 1);
        p.nodes[t] = Some(top);
        let up = PEdge { mor: up, arrow: Arrow::Up };
        let down = PEdge { mor: down, arrow: Arrow::Down };
        match e.dir {
            Dir::Right => {
                p.left[t] = Some(up);
                p.right[t] = Some(down);
            }
            Dir::Left => {
                p.left[t] = Some(down);
                p.right[t] = Some(up);
            }
        }
    }
    let mut todo = Vec::new();
    match opts.order {
        BuildOrder::Layered => {
            for layer in 2..=n {
                for i in 0..=(n - layer) {
                    todo.push((i, i + layer));
                }
            }
        }
        BuildOrder::Diagonal => {
            for j in 2..=n {
                for i in (0..=(j - 2)).rev() {
                    todo.push((i, j));
                }
            }
        }
    }
    for (i, j) in todo {
        complete_wedge(form, &mut p, i, j, opts.apex)?;
    }
    Ok(p)
}

/// Splits `f` into an upward projection and a downward embedding through
/// a new node.
fn split<F: Form>(form: &F, f: &F::Mor, apex: Apex) -> Result<(F::Mor, F::Mor, F::Obj), FormError> {
    let fac = form.factorize(f)?;
    Ok(match apex {
        Apex::Quotient => {
            let top = form.cod(&fac.e);
            (fac.e.clone(), form.compose(&fac.m, &fac.h)?, top)
        }
        Apex::Image => {
            let top = form.dom(&fac.m);
            (form.compose(&fac.h, &fac.e)?, fac.m.clone(), top)
        }
    })
}

fn complete_wedge<F: Form>(
    form: &F,
    p: &mut Pyramid<F::Obj, F::Mor>,
    i: usize,
    j: usize,
    apex: Apex,
) -> Result<(), FormError> {
    let lb = p.right_edge(i, j - 1).clone();
    let rb = p.left_edge(i + 1, j).clone();
    let bnode = p.node(i + 1, j - 1).clone();
    let (top, left, right) = match (lb.arrow, rb.arrow) {
        (Arrow::Up, Arrow::Up) => {
            // B -> L and B -> R: quotient B by both kernels.
            let k = form.join(&bnode, form.kernel(&lb.mor), form.kernel(&rb.mor));
            let q = form.projection_of(&bnode, k)?;
            let x = form.descend_through_projection(&lb.mor, &q)?;
            let y = form.descend_through_projection(&rb.mor, &q)?;
            (form.cod(&q), PEdge { mor: x, arrow: Arrow::Up }, PEdge { mor: y, arrow: Arrow::Up })
        }
        (Arrow::Down, Arrow::Down) => {
            // L -> B and R -> B: intersect both images.
            let s = form.meet(&bnode, form.image(&lb.mor), form.image(&rb.mor));
            let m = form.embedding_of(&bnode, s)?;
            let x = form.lift_through_embedding(&lb.mor, &m)?;
            let y = form.lift_through_embedding(&rb.mor, &m)?;
            (form.dom(&m), PEdge { mor: x, arrow: Arrow::Down }, PEdge { mor: y, arrow: Arrow::Down })
        }
        (Arrow::Down, Arrow::Up) => {
            // L -> B -> R
            let c = form.compose(&rb.mor, &lb.mor)?;
            let (up, down, top) = split(form, &c, apex)?;
            (top, PEdge { mor: up, arrow: Arrow::Up }, PEdge { mor: down, arrow: Arrow::Down })
        }
        (Arrow::Up, Arrow::Down) => {
            // R -> B -> L
            let c = form.compose(&lb.mor, &rb.mor)?;
            let (up, down, top) = split(form, &c, apex)?;
            (top, PEdge { mor: down, arrow: Arrow::Down }, PEdge { mor: up, arrow: Arrow::Up })
        }
    };
    let t = p.idx(i, j);
    p.nodes[t] = Some(top);
    p.left[t] = Some(left);
    p.right[t] = Some(right);
    Ok(())
}

/// The morphism induced by `z`, realised as the composite of the
/// principal horizontal zigzag of its pyramid.
pub fn induced_morphism<F: Form>(
    form: &F,
    z: &Zigzag<F::Obj, F::Mor>,
    opts: BuildOptions,
) -> Result<F::Mor, FormError> {
    if !decide_induction(form, z).induces() {
        return Err(FormError::Invalid("zigzag does not induce a morphism".into()));
    }
    let p = build_pyramid(form, z, opts)?;
    collapse(form, &p.principal_horizontal(form))
}

/// Outcome of the quotient isomorphism check for `f: A -> B` and
/// `Ker f <= W <= X` in `A`.
#[derive(Debug, Clone)]
pub struct QuotientIso<O, M> {
    pub w_normal: bool,
    pub fw_normal: bool,
    pub fw: SubId,
    pub fx: SubId,
    /// `X/W <- X/1 -> A -> B <- fX/1 -> fX/fW`, when both quotients exist.
    pub zigzag: Option<Zigzag<O, M>>,
    /// The isomorphism induced by the zigzag.
    pub iso: Option<Induced<O>>,
}

impl<O, M> QuotientIso<O, M> {
    /// Normality transfers in both directions, and an isomorphism is
    /// induced whenever it does.
    pub fn holds(&self) -> bool {
        self.w_normal == self.fw_normal && (!self.w_normal || self.iso.is_some())
    }
}

pub fn quotient_iso<F: Form>(
    form: &F,
    f: &F::Mor,
    w: SubId,
    x: SubId,
) -> Result<QuotientIso<F::Obj, F::Mor>, FormError> {
    let (a, b) = (form.dom(f), form.cod(f));
    if !form.leq(&a, form.kernel(f), w) {
        return Err(FormError::Invalid(format!("kernel of {} is not below W", form.mor_name(f))));
    }
    if !form.leq(&a, w, x) {
        return Err(FormError::Invalid("W is not below X".into()));
    }
    if !form.is_conormal(&a, x) {
        return Err(FormError::NotConormal { object: form.obj_name(&a), sub: form.sub_label(&a, x) });
    }
    let (fw, fx) = (form.dimg(f, w), form.dimg(f, x));
    let w_normal = form.is_relatively_normal(&a, w, x);
    let fw_normal = form.is_relatively_normal(&b, fw, fx);
    let mut out = QuotientIso { w_normal, fw_normal, fw, fx, zigzag: None, iso: None };
    if w_normal && fw_normal {
        let undefined = |u: Undefined| FormError::Invalid(u.to_string());
        let from = subquotient(form, &a, x, w).map_err(undefined)?;
        let to = subquotient(form, &b, fx, fw).map_err(undefined)?;
        let z = connect(form, &from, &[Edge::right(f.clone())], &to)?;
        out.iso = decide_isomorphism(form, &z);
        out.zigzag = Some(z);
    }
    Ok(out)
}
