//! Seeded random instances over small groups: zigzags, subobject
//! triples, and a constraint sampler for diagrams of a given shape.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::form::Form;
use crate::groups;
use crate::slominski::{enumerate_homs, Algebra, Hom, SlominskiForm};
use crate::zigzag::{Edge, Zigzag};

/// A fixed family of algebras with cached hom-sets.
pub struct Pool {
    algebras: Vec<Arc<Algebra>>,
    homs: HashMap<(usize, usize), Arc<Vec<Hom>>>,
}

impl Pool {
    pub fn new(algebras: Vec<Arc<Algebra>>) -> Self {
        Pool { algebras, homs: HashMap::new() }
    }

    /// Every group of order at most 8.
    pub fn small_groups() -> Self {
        Pool::new(groups::groups_up_to_8())
    }

    /// Elementary abelian 2-groups of rank at most 3.
    pub fn elementary_abelian() -> Self {
        Pool::new((0..=3).map(groups::elementary_abelian_2).collect())
    }

    /// Elementary abelian 2-groups, cyclic groups up to order 8 and D8.
    pub fn lemma_pool() -> Self {
        Pool::new(vec![
            groups::trivial(),
            groups::cyclic(2),
            groups::cyclic(3),
            groups::cyclic(4),
            groups::elementary_abelian_2(2),
            groups::cyclic(6),
            groups::cyclic(8),
            groups::elementary_abelian_2(3),
            groups::product(&groups::cyclic(4), &groups::cyclic(2)),
            groups::d8(),
        ])
    }

    pub fn algebras(&self) -> &[Arc<Algebra>] {
        &self.algebras
    }

    pub fn len(&self) -> usize {
        self.algebras.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebras.is_empty()
    }

    pub fn homs(&mut self, a: usize, b: usize) -> &[Hom] {
        self.hom_set(a, b);
        &self.homs[&(a, b)]
    }

    /// Shared handle on the hom-set, for callers that keep borrowing the
    /// pool.
    pub fn hom_set(&mut self, a: usize, b: usize) -> Arc<Vec<Hom>> {
        let (x, y) = (self.algebras[a].clone(), self.algebras[b].clone());
        self.homs
            .entry((a, b))
            .or_insert_with(|| {
                Arc::new(
                    enumerate_homs(&x, &y)
                        .into_iter()
                        .enumerate()
                        .map(|(i, h)| h.with_name(format!("{}_{}_{}", x.name(), y.name(), i)))
                        .collect(),
                )
            })
            .clone()
    }

    pub fn random_hom(&mut self, rng: &mut impl Rng, a: usize, b: usize) -> Hom {
        self.homs(a, b).choose(rng).expect("zero hom exists").clone()
    }
}

/// A random zigzag with `len` edges over the pool.
pub fn random_zigzag(rng: &mut impl Rng, pool: &mut Pool, len: usize) -> Zigzag<Arc<Algebra>, Hom> {
    let form = SlominskiForm::open();
    let mut cur = rng.gen_range(0..pool.len());
    let start = pool.algebras()[cur].clone();
    let mut edges = Vec::new();
    for k in 0..len {
        // Staying on the same algebra half the time makes isomorphisms
        // common enough for chains to induce.
        let next = if rng.gen_bool(0.5) { cur } else { rng.gen_range(0..pool.len()) };
        let e = if rng.gen_bool(0.5) {
            Edge::right(pool.random_hom(rng, cur, next).with_name(format!("f{}", k + 1)))
        } else {
            Edge::left(pool.random_hom(rng, next, cur).with_name(format!("f{}", k + 1)))
        };
        edges.push(e);
        cur = next;
    }
    Zigzag::new(&form, start, edges).expect("edges chosen to meet")
}

/// A random hom `f: A -> B` with `Ker f <= W <= X` in `A`, `X` any
/// subalgebra. Returns `(f, W, X)` as subobject indices of `A`.
pub fn random_quotient_triple(rng: &mut impl Rng, pool: &mut Pool) -> (Hom, usize, usize) {
    let form = SlominskiForm::open();
    let a = rng.gen_range(0..pool.len());
    let b = rng.gen_range(0..pool.len());
    let f = pool.random_hom(rng, a, b);
    let dom = f.dom().clone();
    let ker = form.kernel(&f);
    let above: Vec<usize> = form.subs(&dom).filter(|&s| form.leq(&dom, ker, s)).collect();
    let x = *above.choose(rng).unwrap();
    let between: Vec<usize> = above.iter().copied().filter(|&s| form.leq(&dom, s, x)).collect();
    let w = *between.choose(rng).unwrap();
    (f, w, x)
}
