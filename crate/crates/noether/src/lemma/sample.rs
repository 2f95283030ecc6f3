//! Random instances of a template over a pool of algebras, found by
//! backtracking: arrows are assigned one at a time and every hypothesis
//! is checked as soon as everything it mentions is assigned.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::diagram::{Diagram, Eval};
use super::expr::Assertion;
use super::template::Template;
use crate::gen::Pool;
use crate::slominski::{Algebra, Hom, SlominskiForm};

pub type Instance = Diagram<Arc<Algebra>, Hom>;

#[derive(Debug, Clone, Copy)]
pub struct SampleOptions {
    /// Hom assignments tried per attempt before restarting.
    pub budget: usize,
    pub attempts: usize,
    /// Most distinct algebras used by one instance.
    pub max_algebras: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { budget: 2000, attempts: 200, max_algebras: 3 }
    }
}

/// Arrows in search order, and for each step the constraints that become
/// checkable there.
struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<Assertion>>,
    /// Constraints mentioning no arrow.
    upfront: Vec<Assertion>,
}

fn plan(t: &Template, constraints: &[Assertion]) -> Plan {
    let arrow_ix = |n: &str| t.arrows.iter().position(|a| a.name == n).expect("template is checked");
    let needs: Vec<BTreeSet<usize>> =
        constraints.iter().map(|c| c.arrows().iter().map(|n| arrow_ix(n)).collect()).collect();
    let touches = |a: usize, o: &str| t.arrows[a].dom == o || t.arrows[a].cod == o;
    let mut done: BTreeSet<usize> = BTreeSet::new();
    let mut order = Vec::new();
    while order.len() < t.arrows.len() {
        // Prefer the arrow completing the most constraints, then one
        // attached to what is already placed.
        let best = (0..t.arrows.len())
            .filter(|a| !done.contains(a))
            .max_by_key(|&a| {
                let completes = needs
                    .iter()
                    .filter(|n| n.contains(&a) && n.iter().all(|b| *b == a || done.contains(b)))
                    .count();
                let attached = done.iter().any(|&b| {
                    touches(b, &t.arrows[a].dom) || touches(b, &t.arrows[a].cod)
                });
                (completes, attached, std::cmp::Reverse(a))
            })
            .unwrap();
        done.insert(best);
        order.push(best);
    }
    let pos = |a: usize| order.iter().position(|&b| b == a).unwrap();
    let first_touch = |o: &str| (0..order.len()).find(|&k| touches(order[k], o));
    let mut checks = vec![Vec::new(); order.len()];
    let mut upfront = Vec::new();
    for (c, n) in constraints.iter().zip(&needs) {
        let mut at: Option<usize> = n.iter().map(|&a| pos(a)).max();
        for o in c.objects() {
            if let Some(k) = first_touch(&o) {
                at = Some(at.map_or(k, |x| x.max(k)));
            }
        }
        match at {
            Some(k) => checks[k].push(c.clone()),
            None => upfront.push(c.clone()),
        }
    }
    Plan { order, checks, upfront }
}

struct Search<'a, R: Rng> {
    t: &'a Template,
    plan: &'a Plan,
    pool: &'a mut Pool,
    chosen: Vec<usize>,
    rng: &'a mut R,
    form: SlominskiForm,
    diagram: Instance,
    /// Pool index bound to each object role.
    objects: Vec<Option<usize>>,
    nodes: usize,
    budget: usize,
}

impl<R: Rng> Search<'_, R> {
    fn obj_ix(&self, name: &str) -> usize {
        self.t.objects.iter().position(|o| o == name).unwrap()
    }

    fn holds(&self, cs: &[Assertion]) -> bool {
        let ev = Eval::new(&self.form, &self.diagram);
        cs.iter().all(|c| ev.check(c).map(|r| r.holds).unwrap_or(false))
    }

    fn bind_object(&mut self, o: usize, alg: usize) {
        self.objects[o] = Some(alg);
        self.diagram.objects.insert(self.t.objects[o].clone(), self.pool.algebras()[alg].clone());
    }

    fn unbind_object(&mut self, o: usize) {
        self.objects[o] = None;
        self.diagram.objects.remove(&self.t.objects[o]);
    }

    /// Choices for an object: its binding, or every chosen algebra.
    fn choices(&mut self, o: usize) -> Vec<usize> {
        match self.objects[o] {
            Some(a) => vec![a],
            None => {
                let mut v = self.chosen.clone();
                v.shuffle(self.rng);
                v
            }
        }
    }

    fn dfs(&mut self, step: usize) -> bool {
        if step == self.plan.order.len() {
            return true;
        }
        let decl = &self.t.arrows[self.plan.order[step]];
        let (name, d, c) = (decl.name.clone(), self.obj_ix(&decl.dom), self.obj_ix(&decl.cod));
        let (d_free, c_free) = (self.objects[d].is_none(), self.objects[c].is_none());
        for da in self.choices(d) {
            if d_free {
                self.bind_object(d, da);
            }
            for ca in self.choices(c) {
                if c_free && c != d {
                    self.bind_object(c, ca);
                } else if c == d && ca != da {
                    continue;
                }
                let homs = self.pool.hom_set(da, ca);
                let mut idx: Vec<usize> = (0..homs.len()).collect();
                idx.shuffle(self.rng);
                for i in idx {
                    self.nodes += 1;
                    if self.nodes > self.budget {
                        return false;
                    }
                    self.diagram.arrows.insert(name.clone(), homs[i].clone().with_name(name.clone()));
                    if self.holds(&self.plan.checks[step]) && self.dfs(step + 1) {
                        return true;
                    }
                    if self.nodes > self.budget {
                        return false;
                    }
                }
                self.diagram.arrows.remove(&name);
                if c_free && c != d {
                    self.unbind_object(c);
                }
            }
            if d_free {
                self.unbind_object(d);
            }
        }
        false
    }
}

/// A random instance of `t` satisfying its hypotheses and those of
/// `part`, or `None` when the search gives up.
pub fn sample_instance(
    rng: &mut impl Rng,
    pool: &mut Pool,
    t: &Template,
    part: Option<&str>,
    opts: SampleOptions,
) -> Option<Instance> {
    let mut constraints = t.hypotheses.clone();
    if let Some(p) = part {
        constraints.extend(t.part(p)?.hypotheses.iter().cloned());
    }
    let plan = plan(t, &constraints);
    for _ in 0..opts.attempts {
        let k = rng.gen_range(1..=opts.max_algebras.min(pool.len()));
        let mut all: Vec<usize> = (0..pool.len()).collect();
        all.shuffle(rng);
        all.truncate(k);
        let mut s = Search {
            t,
            plan: &plan,
            pool: &mut *pool,
            chosen: all,
            rng: &mut *rng,
            form: SlominskiForm::open(),
            diagram: Diagram::new(t.name.clone()),
            objects: vec![None; t.objects.len()],
            nodes: 0,
            budget: opts.budget,
        };
        // Objects no arrow touches are bound up front.
        for o in 0..t.objects.len() {
            if !t.arrows.iter().any(|a| a.dom == t.objects[o] || a.cod == t.objects[o]) {
                let a = *s.chosen.choose(s.rng).unwrap();
                s.bind_object(o, a);
            }
        }
        if !s.holds(&plan.upfront) {
            continue;
        }
        if s.dfs(0) {
            return Some(s.diagram);
        }
    }
    None
}
