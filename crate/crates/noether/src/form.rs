//! The form interface: objects with subobject lattices, morphisms acting
//! on them through direct and inverse images.
//!
//! Subobjects are plain indices into the lattice of their owner. The
//! checked operations take a [`Subobject`] so that the owner travels with
//! the index.

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub type SubId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },
    #[error("subobject {sub} of {object} is not normal")]
    NotNormal { object: String, sub: String },
    #[error("subobject {sub} of {object} is not conormal")]
    NotConormal { object: String, sub: String },
    #[error("{0} is not an isomorphism")]
    NotIsomorphism(String),
    #[error("unsupported by this form: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// A subobject together with the object owning it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subobject<O> {
    pub owner: O,
    pub id: SubId,
}

impl<O> Subobject<O> {
    pub fn new(owner: O, id: SubId) -> Self {
        Subobject { owner, id }
    }
}

/// `f = m . h . e` with `e` the projection of `Ker f`, `h` an isomorphism
/// and `m` the embedding of `Im f`.
#[derive(Debug, Clone)]
pub struct Factorization<M> {
    pub e: M,
    pub h: M,
    pub m: M,
}

pub trait Form {
    type Obj: Clone + Eq + Hash + Debug;
    type Mor: Clone + Debug;

    fn obj_name(&self, x: &Self::Obj) -> String;
    fn sub_count(&self, x: &Self::Obj) -> usize;
    fn sub_label(&self, x: &Self::Obj, a: SubId) -> String;
    fn leq(&self, x: &Self::Obj, a: SubId, b: SubId) -> bool;
    fn join(&self, x: &Self::Obj, a: SubId, b: SubId) -> SubId;
    fn meet(&self, x: &Self::Obj, a: SubId, b: SubId) -> SubId;
    fn bottom(&self, x: &Self::Obj) -> SubId;
    fn top(&self, x: &Self::Obj) -> SubId;

    fn mor_name(&self, f: &Self::Mor) -> String;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn dimg(&self, f: &Self::Mor, a: SubId) -> SubId;
    fn iimg(&self, f: &Self::Mor, b: SubId) -> SubId;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g . f`; the caller guarantees `cod f == dom g`.
    fn compose_unchecked(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn is_normal(&self, x: &Self::Obj, s: SubId) -> bool;
    fn is_conormal(&self, x: &Self::Obj, s: SubId) -> bool;
    fn embedding_of(&self, x: &Self::Obj, s: SubId) -> Result<Self::Mor, FormError>;
    fn projection_of(&self, x: &Self::Obj, s: SubId) -> Result<Self::Mor, FormError>;
    /// The unique `u` with `f = m . u`, for `m` an embedding and `Im f <= Im m`.
    fn lift_through_embedding(&self, m: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, FormError>;
    /// The unique `v` with `f = v . e`, for `e` a projection and `Ker e <= Ker f`.
    fn descend_through_projection(
        &self,
        e: &Self::Mor,
        f: &Self::Mor,
    ) -> Result<Self::Mor, FormError>;

    /// Hashable identity of a morphism; two morphisms are the same iff
    /// their keys are equal.
    fn mor_key(&self, f: &Self::Mor) -> Vec<usize> {
        let d = self.dom(f);
        let c = self.cod(f);
        let mut key: Vec<usize> = (0..self.sub_count(&d)).map(|a| self.dimg(f, a)).collect();
        key.extend((0..self.sub_count(&c)).map(|b| self.iimg(f, b)));
        key
    }

    /// Equality of parallel morphisms. Extensional by default.
    fn same_morphism(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        self.dom(f) == self.dom(g) && self.cod(f) == self.cod(g) && self.mor_key(f) == self.mor_key(g)
    }

    fn inverse(&self, f: &Self::Mor) -> Result<Self::Mor, FormError> {
        if !self.is_isomorphism(f) {
            return Err(FormError::NotIsomorphism(self.mor_name(f)));
        }
        let id = self.identity(&self.cod(f));
        self.lift_through_embedding(f, &id)
    }

    // ---- provided operations ----

    fn subs(&self, x: &Self::Obj) -> std::ops::Range<SubId> {
        0..self.sub_count(x)
    }

    fn kernel(&self, f: &Self::Mor) -> SubId {
        let c = self.cod(f);
        self.iimg(f, self.bottom(&c))
    }

    fn image(&self, f: &Self::Mor) -> SubId {
        let d = self.dom(f);
        self.dimg(f, self.top(&d))
    }

    fn is_injective(&self, f: &Self::Mor) -> bool {
        self.kernel(f) == self.bottom(&self.dom(f))
    }

    fn is_surjective(&self, f: &Self::Mor) -> bool {
        self.image(f) == self.top(&self.cod(f))
    }

    fn is_isomorphism(&self, f: &Self::Mor) -> bool {
        self.is_injective(f) && self.is_surjective(f)
    }

    fn is_zero(&self, f: &Self::Mor) -> bool {
        self.image(f) == self.bottom(&self.cod(f))
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, FormError> {
        let (c, d) = (self.cod(f), self.dom(g));
        if c != d {
            return Err(FormError::ObjectMismatch {
                expected: self.obj_name(&d),
                found: self.obj_name(&c),
            });
        }
        Ok(self.compose_unchecked(g, f))
    }

    fn check_owner(&self, expected: &Self::Obj, found: &Self::Obj) -> Result<(), FormError> {
        if expected == found {
            Ok(())
        } else {
            Err(FormError::ObjectMismatch {
                expected: self.obj_name(expected),
                found: self.obj_name(found),
            })
        }
    }

    fn direct_image(
        &self,
        f: &Self::Mor,
        a: &Subobject<Self::Obj>,
    ) -> Result<Subobject<Self::Obj>, FormError> {
        self.check_owner(&self.dom(f), &a.owner)?;
        Ok(Subobject::new(self.cod(f), self.dimg(f, a.id)))
    }

    fn inverse_image(
        &self,
        f: &Self::Mor,
        b: &Subobject<Self::Obj>,
    ) -> Result<Subobject<Self::Obj>, FormError> {
        self.check_owner(&self.cod(f), &b.owner)?;
        Ok(Subobject::new(self.dom(f), self.iimg(f, b.id)))
    }

    fn join_checked(
        &self,
        a: &Subobject<Self::Obj>,
        b: &Subobject<Self::Obj>,
    ) -> Result<Subobject<Self::Obj>, FormError> {
        self.check_owner(&a.owner, &b.owner)?;
        Ok(Subobject::new(a.owner.clone(), self.join(&a.owner, a.id, b.id)))
    }

    fn meet_checked(
        &self,
        a: &Subobject<Self::Obj>,
        b: &Subobject<Self::Obj>,
    ) -> Result<Subobject<Self::Obj>, FormError> {
        self.check_owner(&a.owner, &b.owner)?;
        Ok(Subobject::new(a.owner.clone(), self.meet(&a.owner, a.id, b.id)))
    }

    fn factorize(&self, f: &Self::Mor) -> Result<Factorization<Self::Mor>, FormError> {
        let e = self.projection_of(&self.dom(f), self.kernel(f))?;
        let m = self.embedding_of(&self.cod(f), self.image(f))?;
        let u = self.lift_through_embedding(&m, f)?;
        let h = self.descend_through_projection(&e, &u)?;
        Ok(Factorization { e, h, m })
    }

    /// `B` is normal relative to `A` in `x`: `B <= A`, `A` conormal, and
    /// the pullback of `B` along the embedding of `A` is normal.
    fn is_relatively_normal(&self, x: &Self::Obj, b: SubId, a: SubId) -> bool {
        if !self.leq(x, b, a) || !self.is_conormal(x, a) {
            return false;
        }
        match self.embedding_of(x, a) {
            Ok(i) => self.is_normal(&self.dom(&i), self.iimg(&i, b)),
            Err(_) => false,
        }
    }

    /// Checks the restricted modular law on one triple. Returns `None`
    /// when the triple does not qualify, otherwise whether the law holds.
    fn restricted_modular_law_check(
        &self,
        x: &Self::Obj,
        a: SubId,
        b: SubId,
        c: SubId,
    ) -> Option<bool> {
        if !self.leq(x, a, c) {
            return None;
        }
        let qualifies = (self.is_normal(x, b) && self.is_conormal(x, c))
            || (self.is_conormal(x, b) && self.is_normal(x, a));
        if !qualifies {
            return None;
        }
        let lhs = self.join(x, a, self.meet(x, b, c));
        let rhs = self.meet(x, self.join(x, a, b), c);
        Some(lhs == rhs)
    }
}

/// A form whose objects and morphisms can be enumerated.
pub trait FiniteForm: Form {
    fn objects(&self) -> Vec<Self::Obj>;
    fn morphisms(&self) -> Vec<Self::Mor>;
    /// Number of morphisms `u` with `m . u = f`.
    fn count_lifts(&self, m: &Self::Mor, f: &Self::Mor) -> usize;
    /// Number of morphisms `v` with `v . e = f`.
    fn count_descents(&self, e: &Self::Mor, f: &Self::Mor) -> usize;
}

/// The dual form: arrows reversed, images swapped, every lattice order
/// reversed. Nothing is copied; every query is answered by the wrapped
/// form.
#[derive(Debug, Clone, Copy)]
pub struct Dual<'a, F: Form>(pub &'a F);

pub fn dualize<F: Form>(form: &F) -> Dual<'_, F> {
    Dual(form)
}

impl<F: Form> Form for Dual<'_, F> {
    type Obj = F::Obj;
    type Mor = F::Mor;

    fn obj_name(&self, x: &Self::Obj) -> String {
        self.0.obj_name(x)
    }
    fn sub_count(&self, x: &Self::Obj) -> usize {
        self.0.sub_count(x)
    }
    fn sub_label(&self, x: &Self::Obj, a: SubId) -> String {
        self.0.sub_label(x, a)
    }
    fn leq(&self, x: &Self::Obj, a: SubId, b: SubId) -> bool {
        self.0.leq(x, b, a)
    }
    fn join(&self, x: &Self::Obj, a: SubId, b: SubId) -> SubId {
        self.0.meet(x, a, b)
    }
    fn meet(&self, x: &Self::Obj, a: SubId, b: SubId) -> SubId {
        self.0.join(x, a, b)
    }
    fn bottom(&self, x: &Self::Obj) -> SubId {
        self.0.top(x)
    }
    fn top(&self, x: &Self::Obj) -> SubId {
        self.0.bottom(x)
    }
    fn mor_name(&self, f: &Self::Mor) -> String {
        self.0.mor_name(f)
    }
    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        self.0.cod(f)
    }
    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        self.0.dom(f)
    }
    fn dimg(&self, f: &Self::Mor, a: SubId) -> SubId {
        self.0.iimg(f, a)
    }
    fn iimg(&self, f: &Self::Mor, b: SubId) -> SubId {
        self.0.dimg(f, b)
    }
    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        self.0.identity(x)
    }
    fn compose_unchecked(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        self.0.compose_unchecked(f, g)
    }
    fn is_normal(&self, x: &Self::Obj, s: SubId) -> bool {
        self.0.is_conormal(x, s)
    }
    fn is_conormal(&self, x: &Self::Obj, s: SubId) -> bool {
        self.0.is_normal(x, s)
    }
    fn embedding_of(&self, x: &Self::Obj, s: SubId) -> Result<Self::Mor, FormError> {
        self.0.projection_of(x, s)
    }
    fn projection_of(&self, x: &Self::Obj, s: SubId) -> Result<Self::Mor, FormError> {
        self.0.embedding_of(x, s)
    }
    fn lift_through_embedding(&self, m: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, FormError> {
        self.0.descend_through_projection(m, f)
    }
    fn descend_through_projection(
        &self,
        e: &Self::Mor,
        f: &Self::Mor,
    ) -> Result<Self::Mor, FormError> {
        self.0.lift_through_embedding(e, f)
    }
    fn mor_key(&self, f: &Self::Mor) -> Vec<usize> {
        self.0.mor_key(f)
    }
    fn same_morphism(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        self.0.same_morphism(f, g)
    }
    fn inverse(&self, f: &Self::Mor) -> Result<Self::Mor, FormError> {
        self.0.inverse(f)
    }
    fn factorize(&self, f: &Self::Mor) -> Result<Factorization<Self::Mor>, FormError> {
        let Factorization { e, h, m } = self.0.factorize(f)?;
        Ok(Factorization { e: m, h, m: e })
    }
}

impl<F: FiniteForm> FiniteForm for Dual<'_, F> {
    fn objects(&self) -> Vec<Self::Obj> {
        self.0.objects()
    }
    fn morphisms(&self) -> Vec<Self::Mor> {
        self.0.morphisms()
    }
    fn count_lifts(&self, m: &Self::Mor, f: &Self::Mor) -> usize {
        self.0.count_descents(m, f)
    }
    fn count_descents(&self, e: &Self::Mor, f: &Self::Mor) -> usize {
        self.0.count_lifts(e, f)
    }
}
