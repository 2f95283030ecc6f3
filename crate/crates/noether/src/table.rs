//! Forms given by data: each object lists its subobjects and their order,
//! each morphism lists its direct and inverse image maps.
//!
//! Such a form is closed. Embeddings, projections and the morphisms
//! promised by their universal properties are found by searching the
//! declared morphisms; when the search comes up empty the operation
//! reports [`FormError::Unsupported`].

use crate::form::{FiniteForm, Form, FormError, SubId};
use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableObject {
    pub name: String,
    pub keys: Vec<String>,
    pub lattice: Lattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMor {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
    pub dimg: Vec<SubId>,
    pub iimg: Vec<SubId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableForm {
    pub name: String,
    pub objects: Vec<TableObject>,
    pub morphisms: Vec<TableMor>,
}

impl TableForm {
    /// Checks shapes only: every map must be total and land in the right
    /// lattice. No axiom is checked here.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<TableObject>,
        morphisms: Vec<TableMor>,
    ) -> Result<Self, FormError> {
        for o in &objects {
            if o.keys.len() != o.lattice.len() {
                return Err(FormError::Invalid(format!("object {} has mismatched keys", o.name)));
            }
        }
        for m in &morphisms {
            let bad = |why: &str| FormError::Invalid(format!("morphism {}: {why}", m.name));
            let (Some(d), Some(c)) = (objects.get(m.dom), objects.get(m.cod)) else {
                return Err(bad("unknown endpoint"));
            };
            if m.dimg.len() != d.lattice.len() || m.dimg.iter().any(|&b| b >= c.lattice.len()) {
                return Err(bad("direct image map is not total on the domain"));
            }
            if m.iimg.len() != c.lattice.len() || m.iimg.iter().any(|&a| a >= d.lattice.len()) {
                return Err(bad("inverse image map is not total on the codomain"));
            }
        }
        Ok(TableForm { name: name.into(), objects, morphisms })
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.name == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&TableMor> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    pub fn key_index(&self, obj: usize, key: &str) -> Option<SubId> {
        self.objects[obj].keys.iter().position(|k| k == key)
    }

    fn lat(&self, x: usize) -> &Lattice {
        &self.objects[x].lattice
    }

    /// Number of extensionally distinct morphisms in `ms`.
    fn distinct(&self, ms: Vec<&TableMor>) -> usize {
        let mut keys: Vec<Vec<usize>> = ms.iter().map(|m| self.mor_key(m)).collect();
        keys.sort();
        keys.dedup();
        keys.len()
    }

    fn is_declared(&self, f: &TableMor) -> bool {
        self.morphisms.iter().any(|g| self.same_morphism(f, g))
    }

    fn search(&self, dom: usize, cod: usize, pred: impl Fn(&TableMor) -> bool) -> Vec<&TableMor> {
        self.morphisms.iter().filter(|m| m.dom == dom && m.cod == cod && pred(m)).collect()
    }
}

impl Form for TableForm {
    type Obj = usize;
    type Mor = TableMor;

    fn obj_name(&self, x: &usize) -> String {
        self.objects[*x].name.clone()
    }
    fn sub_count(&self, x: &usize) -> usize {
        self.lat(*x).len()
    }
    fn sub_label(&self, x: &usize, a: SubId) -> String {
        self.objects[*x].keys[a].clone()
    }
    fn leq(&self, x: &usize, a: SubId, b: SubId) -> bool {
        self.lat(*x).leq(a, b)
    }
    fn join(&self, x: &usize, a: SubId, b: SubId) -> SubId {
        self.lat(*x).join(a, b)
    }
    fn meet(&self, x: &usize, a: SubId, b: SubId) -> SubId {
        self.lat(*x).meet(a, b)
    }
    fn bottom(&self, x: &usize) -> SubId {
        self.lat(*x).bottom()
    }
    fn top(&self, x: &usize) -> SubId {
        self.lat(*x).top()
    }
    fn mor_name(&self, f: &TableMor) -> String {
        f.name.clone()
    }
    fn dom(&self, f: &TableMor) -> usize {
        f.dom
    }
    fn cod(&self, f: &TableMor) -> usize {
        f.cod
    }
    fn dimg(&self, f: &TableMor, a: SubId) -> SubId {
        f.dimg[a]
    }
    fn iimg(&self, f: &TableMor, b: SubId) -> SubId {
        f.iimg[b]
    }
    fn identity(&self, x: &usize) -> TableMor {
        let n = self.lat(*x).len();
        TableMor {
            name: format!("id_{}", self.objects[*x].name),
            dom: *x,
            cod: *x,
            dimg: (0..n).collect(),
            iimg: (0..n).collect(),
        }
    }
    fn compose_unchecked(&self, g: &TableMor, f: &TableMor) -> TableMor {
        TableMor {
            name: format!("{}.{}", g.name, f.name),
            dom: f.dom,
            cod: g.cod,
            dimg: f.dimg.iter().map(|&b| g.dimg[b]).collect(),
            iimg: g.iimg.iter().map(|&b| f.iimg[b]).collect(),
        }
    }
    fn is_normal(&self, x: &usize, s: SubId) -> bool {
        self.morphisms.iter().any(|m| m.dom == *x && self.kernel(m) == s)
    }
    fn is_conormal(&self, x: &usize, s: SubId) -> bool {
        self.morphisms.iter().any(|m| m.cod == *x && self.image(m) == s)
    }
    fn embedding_of(&self, x: &usize, s: SubId) -> Result<TableMor, FormError> {
        let into: Vec<&TableMor> = self.morphisms.iter().filter(|m| m.cod == *x).collect();
        into.iter()
            .find(|m| {
                self.image(m) == s
                    && self.is_injective(m)
                    && into
                        .iter()
                        .filter(|g| self.leq(x, self.image(g), s))
                        .all(|g| self.count_lifts(m, g) == 1)
            })
            .map(|m| (*m).clone())
            .ok_or_else(|| {
                FormError::Unsupported(format!(
                    "no declared embedding for {} in {}",
                    self.sub_label(x, s),
                    self.obj_name(x)
                ))
            })
    }
    fn projection_of(&self, x: &usize, s: SubId) -> Result<TableMor, FormError> {
        let from: Vec<&TableMor> = self.morphisms.iter().filter(|m| m.dom == *x).collect();
        from.iter()
            .find(|e| {
                self.kernel(e) == s
                    && self.is_surjective(e)
                    && from
                        .iter()
                        .filter(|g| self.leq(x, s, self.kernel(g)))
                        .all(|g| self.count_descents(e, g) == 1)
            })
            .map(|e| (*e).clone())
            .ok_or_else(|| {
                FormError::Unsupported(format!(
                    "no declared projection for {} in {}",
                    self.sub_label(x, s),
                    self.obj_name(x)
                ))
            })
    }
    fn lift_through_embedding(&self, m: &TableMor, f: &TableMor) -> Result<TableMor, FormError> {
        self.check_owner(&m.cod, &f.cod)?;
        self.search(f.dom, m.dom, |u| self.same_morphism(&self.compose_unchecked(m, u), f))
            .first()
            .map(|u| (*u).clone())
            .ok_or_else(|| FormError::Unsupported(format!("{} does not factor through {}", f.name, m.name)))
    }
    fn descend_through_projection(
        &self,
        e: &TableMor,
        f: &TableMor,
    ) -> Result<TableMor, FormError> {
        self.check_owner(&e.dom, &f.dom)?;
        self.search(e.cod, f.cod, |v| self.same_morphism(&self.compose_unchecked(v, e), f))
            .first()
            .map(|v| (*v).clone())
            .ok_or_else(|| FormError::Unsupported(format!("{} does not factor through {}", f.name, e.name)))
    }
    fn inverse(&self, f: &TableMor) -> Result<TableMor, FormError> {
        if !self.is_isomorphism(f) {
            return Err(FormError::NotIsomorphism(f.name.clone()));
        }
        let (id_d, id_c) = (self.identity(&f.dom), self.identity(&f.cod));
        self.search(f.cod, f.dom, |g| {
            self.same_morphism(&self.compose_unchecked(g, f), &id_d)
                && self.same_morphism(&self.compose_unchecked(f, g), &id_c)
        })
        .first()
        .map(|g| (*g).clone())
        .ok_or_else(|| FormError::Unsupported(format!("no declared inverse for {}", f.name)))
    }
}

impl FiniteForm for TableForm {
    fn objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }
    fn morphisms(&self) -> Vec<TableMor> {
        self.morphisms.clone()
    }
    fn count_lifts(&self, m: &TableMor, f: &TableMor) -> usize {
        self.distinct(self.search(f.dom, m.dom, |u| self.same_morphism(&self.compose_unchecked(m, u), f)))
    }
    fn count_descents(&self, e: &TableMor, f: &TableMor) -> usize {
        self.distinct(self.search(e.cod, f.cod, |v| self.same_morphism(&self.compose_unchecked(v, e), f)))
    }
}

impl TableForm {
    /// Whether composition stays inside the declared set.
    pub fn is_closed(&self) -> bool {
        self.morphisms.iter().all(|f| {
            self.morphisms
                .iter()
                .filter(|g| g.dom == f.cod)
                .all(|g| self.is_declared(&self.compose_unchecked(g, f)))
        })
    }
}
