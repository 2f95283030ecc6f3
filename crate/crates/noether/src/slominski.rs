//! Finite Słomiński algebras: a carrier with a binary `p`, a binary `d`
//! and a constant `0` such that `d(x, x) = 0` and `p(d(x, y), y) = x`.
//!
//! Subsets of the carrier are `u64` bitmasks, so carriers hold at most 64
//! elements. Subalgebras, normality and quotients are computed once per
//! algebra and cached.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::form::{FiniteForm, Form, FormError, SubId};
use crate::lattice::Lattice;

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table {0} is ragged or has the wrong size")]
    Ragged(&'static str),
    #[error("entry {0} out of range for carrier of size {1}")]
    OutOfRange(usize, usize),
    #[error("carrier size {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("empty carrier")]
    Empty,
    #[error("law {law} fails at x = {x}, y = {y}")]
    Law { law: &'static str, x: usize, y: usize },
    #[error("not a group: {0}")]
    NotGroup(String),
    #[error("{0}")]
    NotSubalgebra(String),
    #[error("map {name} is not a homomorphism: {reason}")]
    NotHom { name: String, reason: String },
}

pub fn mask_elements(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn mask_label(mask: u64) -> String {
    let parts: Vec<String> = mask_elements(mask).map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0, |m, &e| m | 1 << e)
}

struct SubCache {
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
    lattice: Lattice,
    normal: Vec<bool>,
}

pub struct Algebra {
    name: String,
    n: usize,
    zero: usize,
    p: Vec<usize>,
    d: Vec<usize>,
    cache: OnceLock<SubCache>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, order {})", self.name, self.n)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.name == other.name
                && self.n == other.n
                && self.zero == other.zero
                && self.p == other.p
                && self.d == other.d)
    }
}

impl Eq for Algebra {}

impl Hash for Algebra {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
        self.n.hash(state);
        self.zero.hash(state);
    }
}

fn flatten(rows: &[Vec<usize>], n: usize, which: &'static str) -> Result<Vec<usize>, AlgebraError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::Ragged(which));
    }
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    if let Some(&bad) = flat.iter().find(|&&v| v >= n) {
        return Err(AlgebraError::OutOfRange(bad, n));
    }
    Ok(flat)
}

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        zero: usize,
        p: &[Vec<usize>],
        d: &[Vec<usize>],
    ) -> Result<Arc<Self>, AlgebraError> {
        let n = p.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if n > MAX_ORDER {
            return Err(AlgebraError::TooLarge(n));
        }
        if zero >= n {
            return Err(AlgebraError::OutOfRange(zero, n));
        }
        let p = flatten(p, n, "p")?;
        let d = flatten(d, n, "d")?;
        let alg = Algebra { name: name.into(), n, zero, p, d, cache: OnceLock::new() };
        for x in 0..n {
            if alg.d(x, x) != zero {
                return Err(AlgebraError::Law { law: "d(x,x) = 0", x, y: x });
            }
            for y in 0..n {
                if alg.p(alg.d(x, y), y) != x {
                    return Err(AlgebraError::Law { law: "p(d(x,y),y) = x", x, y });
                }
            }
        }
        Ok(Arc::new(alg))
    }

    /// The algebra of a group: `p(a, b) = ab`, `d(a, b) = ab^-1`.
    pub fn from_group(
        name: impl Into<String>,
        table: &[Vec<usize>],
        identity: usize,
    ) -> Result<Arc<Self>, AlgebraError> {
        let n = table.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let t = flatten(table, n, "table")?;
        if identity >= n {
            return Err(AlgebraError::OutOfRange(identity, n));
        }
        let mul = |a: usize, b: usize| t[a * n + b];
        for a in 0..n {
            if mul(identity, a) != a || mul(a, identity) != a {
                return Err(AlgebraError::NotGroup(format!("{identity} is not an identity for {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(AlgebraError::NotGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| AlgebraError::NotGroup(format!("{a} has no inverse")))?;
        }
        let p: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        let d: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, inv[b])).collect()).collect();
        Algebra::new(name, identity, &p, &d)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn p(&self, x: usize, y: usize) -> usize {
        self.p[x * self.n + y]
    }

    pub fn d(&self, x: usize, y: usize) -> usize {
        self.d[x * self.n + y]
    }

    pub fn p_rows(&self) -> Vec<Vec<usize>> {
        self.p.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn d_rows(&self) -> Vec<Vec<usize>> {
        self.d.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Smallest subalgebra containing `mask`.
    pub fn closure(&self, mask: u64) -> u64 {
        let mut cur = mask | 1 << self.zero;
        loop {
            let mut next = cur;
            for x in mask_elements(cur) {
                for y in mask_elements(cur) {
                    next |= 1 << self.p(x, y) | 1 << self.d(x, y);
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_subalgebra(&self, mask: u64) -> bool {
        mask & !self.full_mask() == 0 && mask >> self.zero & 1 == 1 && self.closure(mask) == mask
    }

    fn cache(&self) -> &SubCache {
        self.cache.get_or_init(|| {
            let start = self.closure(0);
            let mut masks = vec![start];
            let mut seen: HashMap<u64, usize> = HashMap::from([(start, 0)]);
            let mut i = 0;
            while i < masks.len() {
                let s = masks[i];
                for x in 0..self.n {
                    if s >> x & 1 == 0 {
                        let t = self.closure(s | 1 << x);
                        if !seen.contains_key(&t) {
                            seen.insert(t, masks.len());
                            masks.push(t);
                        }
                    }
                }
                i += 1;
            }
            masks.sort_by_key(|&m| (m.count_ones(), m));
            let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let lattice = Lattice::from_masks(&masks, |a, b| self.closure(a | b));
            let normal = masks
                .iter()
                .map(|&m| self.zero_class(m) == m)
                .collect();
            SubCache { masks, index, lattice, normal }
        })
    }

    /// All subalgebras, sorted by size and then by mask.
    pub fn subalgebras(&self) -> &[u64] {
        &self.cache().masks
    }

    pub fn sub_index(&self, mask: u64) -> Option<SubId> {
        self.cache().index.get(&mask).copied()
    }

    pub fn sub_mask(&self, id: SubId) -> u64 {
        self.cache().masks[id]
    }

    pub fn lattice(&self) -> &Lattice {
        &self.cache().lattice
    }

    /// Least congruence containing the given pairs.
    pub fn generate_congruence(&self, pairs: &[(usize, usize)]) -> Congruence {
        let mut dsu = Dsu::new(self.n);
        for &(x, y) in pairs {
            dsu.union(x, y);
        }
        loop {
            let mut changed = false;
            for x in 0..self.n {
                let r = dsu.find(x);
                if r == x {
                    continue;
                }
                for z in 0..self.n {
                    changed |= dsu.union(self.p(x, z), self.p(r, z));
                    changed |= dsu.union(self.p(z, x), self.p(z, r));
                    changed |= dsu.union(self.d(x, z), self.d(r, z));
                    changed |= dsu.union(self.d(z, x), self.d(z, r));
                }
            }
            if !changed {
                break;
            }
        }
        Congruence::from_dsu(&mut dsu, self.n)
    }

    fn zero_class(&self, mask: u64) -> u64 {
        let pairs: Vec<(usize, usize)> = mask_elements(mask).map(|b| (b, self.zero)).collect();
        let c = self.generate_congruence(&pairs);
        c.classes[c.class_of[self.zero]]
    }

    /// `B` is the zero class of the congruence it generates.
    pub fn is_normal_subalgebra(&self, mask: u64) -> bool {
        match self.sub_index(mask) {
            Some(i) => self.cache().normal[i],
            None => false,
        }
    }

    pub fn is_normal_id(&self, id: SubId) -> bool {
        self.cache().normal[id]
    }

    /// The subalgebra on `mask` as an algebra of its own, with its
    /// inclusion. Elements keep their relative order.
    pub fn subalgebra(self: &Arc<Self>, mask: u64) -> Result<(Arc<Algebra>, Hom), AlgebraError> {
        if !self.is_subalgebra(mask) {
            return Err(AlgebraError::NotSubalgebra(format!(
                "{} is not a subalgebra of {}",
                mask_label(mask),
                self.name
            )));
        }
        let elems: Vec<usize> = mask_elements(mask).collect();
        let pos = |x: usize| elems.iter().position(|&e| e == x).unwrap();
        let p: Vec<Vec<usize>> = elems
            .iter()
            .map(|&x| elems.iter().map(|&y| pos(self.p(x, y))).collect())
            .collect();
        let d: Vec<Vec<usize>> = elems
            .iter()
            .map(|&x| elems.iter().map(|&y| pos(self.d(x, y))).collect())
            .collect();
        let name = format!("{}[{}]", self.name, mask_label(mask));
        let sub = Algebra::new(name, pos(self.zero), &p, &d)?;
        let inc = Hom::new_unchecked(format!("incl_{}", sub.name), sub.clone(), self.clone(), elems);
        Ok((sub, inc))
    }

    /// Quotient by a congruence, with its projection. Classes are numbered
    /// by their least element.
    pub fn quotient_by(self: &Arc<Self>, c: &Congruence, name: String) -> (Arc<Algebra>, Hom) {
        let k = c.classes.len();
        let rep: Vec<usize> = c.classes.iter().map(|&m| m.trailing_zeros() as usize).collect();
        let p: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..k).map(|b| c.class_of[self.p(rep[a], rep[b])]).collect())
            .collect();
        let d: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..k).map(|b| c.class_of[self.d(rep[a], rep[b])]).collect())
            .collect();
        let q = Algebra::new(name, c.class_of[self.zero], &p, &d)
            .expect("quotient by a congruence satisfies the laws");
        let proj = Hom::new_unchecked(format!("proj_{}", q.name), self.clone(), q.clone(), c.class_of.clone());
        (q, proj)
    }

    /// Quotient by the congruence generated by `mask x {0}`.
    pub fn quotient(self: &Arc<Self>, mask: u64) -> (Arc<Algebra>, Hom) {
        let pairs: Vec<(usize, usize)> = mask_elements(mask).map(|b| (b, self.zero)).collect();
        let c = self.generate_congruence(&pairs);
        let zero_class = c.classes[c.class_of[self.zero]];
        self.quotient_by(&c, format!("{}/{}", self.name, mask_label(zero_class)))
    }

    /// Same tables under a new name.
    pub fn renamed(&self, name: impl Into<String>) -> Arc<Algebra> {
        Arc::new(Algebra {
            name: name.into(),
            n: self.n,
            zero: self.zero,
            p: self.p.clone(),
            d: self.d.clone(),
            cache: OnceLock::new(),
        })
    }
}

/// Equivalence classes as bitmasks, numbered by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub class_of: Vec<usize>,
    pub classes: Vec<u64>,
}

impl Congruence {
    fn from_dsu(dsu: &mut Dsu, n: usize) -> Self {
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<u64> = Vec::new();
        let mut root_class: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let r = dsu.find(x);
            let c = *root_class.entry(r).or_insert_with(|| {
                classes.push(0);
                classes.len() - 1
            });
            class_of[x] = c;
            classes[c] |= 1 << x;
        }
        Congruence { class_of, classes }
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }
}

/// Union-find with path halving.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so classes stay keyed by least element.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A homomorphism between two algebras, given elementwise.
#[derive(Clone)]
pub struct Hom {
    name: String,
    dom: Arc<Algebra>,
    cod: Arc<Algebra>,
    map: Vec<usize>,
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} {:?}", self.name, self.dom.name, self.cod.name, self.map)
    }
}

impl PartialEq for Hom {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.map == other.map
    }
}

impl Eq for Hom {}

impl Hom {
    pub fn new(
        name: impl Into<String>,
        dom: Arc<Algebra>,
        cod: Arc<Algebra>,
        map: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        let name = name.into();
        let bad = |reason: String| AlgebraError::NotHom { name: name.clone(), reason };
        if map.len() != dom.order() {
            return Err(bad(format!("expected {} images, got {}", dom.order(), map.len())));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= cod.order()) {
            return Err(bad(format!("image {v} out of range")));
        }
        if map[dom.zero()] != cod.zero() {
            return Err(bad("zero is not preserved".into()));
        }
        for x in 0..dom.order() {
            for y in 0..dom.order() {
                if map[dom.p(x, y)] != cod.p(map[x], map[y]) {
                    return Err(bad(format!("p is not preserved at ({x}, {y})")));
                }
                if map[dom.d(x, y)] != cod.d(map[x], map[y]) {
                    return Err(bad(format!("d is not preserved at ({x}, {y})")));
                }
            }
        }
        Ok(Hom { name, dom, cod, map })
    }

    pub(crate) fn new_unchecked(
        name: impl Into<String>,
        dom: Arc<Algebra>,
        cod: Arc<Algebra>,
        map: Vec<usize>,
    ) -> Self {
        Hom { name: name.into(), dom, cod, map }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dom(&self) -> &Arc<Algebra> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Algebra> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image_mask(&self, mask: u64) -> u64 {
        mask_elements(mask).fold(0, |m, x| m | 1 << self.map[x])
    }

    pub fn preimage_mask(&self, mask: u64) -> u64 {
        (0..self.map.len()).filter(|&x| mask >> self.map[x] & 1 == 1).fold(0, |m, x| m | 1 << x)
    }

    pub fn identity(a: &Arc<Algebra>) -> Self {
        Hom::new_unchecked(format!("id_{}", a.name), a.clone(), a.clone(), (0..a.order()).collect())
    }

    /// `g . self`.
    pub fn then(&self, g: &Hom) -> Hom {
        let map = self.map.iter().map(|&y| g.map[y]).collect();
        Hom::new_unchecked(format!("{}.{}", g.name, self.name), self.dom.clone(), g.cod.clone(), map)
    }

    pub fn is_injective_map(&self) -> bool {
        let mut seen = 0u64;
        for &y in &self.map {
            if seen >> y & 1 == 1 {
                return false;
            }
            seen |= 1 << y;
        }
        true
    }

    pub fn is_surjective_map(&self) -> bool {
        self.image_mask(self.dom.full_mask()) == self.cod.full_mask()
    }
}

/// All homomorphisms `a -> b`, by backtracking with propagation through
/// the operation tables.
pub fn enumerate_homs(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Vec<Hom> {
    let n = a.order();
    let mut assign = vec![usize::MAX; n];
    assign[a.zero()] = b.zero();
    let mut out = Vec::new();
    if propagate(a, b, &mut assign) {
        search(a, b, assign, &mut out);
    }
    out.sort_by(|x, y| x.map.cmp(&y.map));
    for (i, h) in out.iter_mut().enumerate() {
        h.name = format!("h{i}");
    }
    out
}

fn propagate(a: &Algebra, b: &Algebra, assign: &mut [usize]) -> bool {
    let n = a.order();
    loop {
        let mut changed = false;
        for x in 0..n {
            if assign[x] == usize::MAX {
                continue;
            }
            for y in 0..n {
                if assign[y] == usize::MAX {
                    continue;
                }
                let forced = [
                    (a.p(x, y), b.p(assign[x], assign[y])),
                    (a.d(x, y), b.d(assign[x], assign[y])),
                ];
                for (src, img) in forced {
                    if assign[src] == usize::MAX {
                        assign[src] = img;
                        changed = true;
                    } else if assign[src] != img {
                        return false;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(a: &Arc<Algebra>, b: &Arc<Algebra>, assign: Vec<usize>, out: &mut Vec<Hom>) {
    match assign.iter().position(|&v| v == usize::MAX) {
        None => out.push(Hom::new_unchecked("", a.clone(), b.clone(), assign)),
        Some(x) => {
            for y in 0..b.order() {
                let mut next = assign.clone();
                next[x] = y;
                if propagate(a, b, &mut next) {
                    search(a, b, next, out);
                }
            }
        }
    }
}

/// A form whose objects are Słomiński algebras and whose morphisms are
/// homomorphisms. Embeddings are inclusions of subalgebras and
/// projections are quotient maps; both are built on demand, so the form
/// is open. The declared algebras and homs are what the axiom suite
/// enumerates.
#[derive(Debug, Clone, Default)]
pub struct SlominskiForm {
    algebras: Vec<Arc<Algebra>>,
    homs: Vec<Hom>,
}

impl SlominskiForm {
    /// A form with nothing declared, for constructions only.
    pub fn open() -> Self {
        SlominskiForm::default()
    }

    /// Validating constructor: every hom must run between declared
    /// algebras, identities must be present and composites must be
    /// declared.
    pub fn new(algebras: Vec<Arc<Algebra>>, homs: Vec<Hom>) -> Result<Self, FormError> {
        for h in &homs {
            for end in [&h.dom, &h.cod] {
                if !algebras.contains(end) {
                    return Err(FormError::Invalid(format!(
                        "hom {} touches undeclared algebra {}",
                        h.name,
                        end.name()
                    )));
                }
            }
        }
        for a in &algebras {
            if !homs.contains(&Hom::identity(a)) {
                return Err(FormError::Invalid(format!("identity of {} is not declared", a.name())));
            }
        }
        for f in &homs {
            for g in &homs {
                if f.cod == g.dom && !homs.contains(&f.then(g)) {
                    return Err(FormError::Invalid(format!(
                        "composite {}.{} is not declared",
                        g.name, f.name
                    )));
                }
            }
        }
        Ok(SlominskiForm { algebras, homs })
    }

    /// Adds identities and composites until the hom set is closed.
    pub fn closure(algebras: Vec<Arc<Algebra>>, homs: Vec<Hom>) -> Result<Self, FormError> {
        let mut all: Vec<Hom> = Vec::new();
        let push = |h: Hom, all: &mut Vec<Hom>| {
            if !all.contains(&h) {
                all.push(h);
            }
        };
        for a in &algebras {
            push(Hom::identity(a), &mut all);
        }
        for h in homs {
            push(h, &mut all);
        }
        let mut i = 0;
        while i < all.len() {
            for j in 0..=i {
                let (f, g) = (all[i].clone(), all[j].clone());
                if f.cod == g.dom {
                    push(f.then(&g), &mut all);
                }
                if g.cod == f.dom {
                    push(g.then(&f), &mut all);
                }
            }
            i += 1;
        }
        SlominskiForm::new(algebras, all)
    }

    /// Every homomorphism between every pair of the given algebras.
    pub fn full(algebras: Vec<Arc<Algebra>>) -> Self {
        let mut homs = Vec::new();
        for a in &algebras {
            for b in &algebras {
                for h in enumerate_homs(a, b) {
                    let name = if a == b && h == Hom::identity(a) {
                        format!("id_{}", a.name())
                    } else {
                        format!("{}_{}_{}", a.name(), b.name(), h.name)
                    };
                    homs.push(h.with_name(name));
                }
            }
        }
        SlominskiForm { algebras, homs }
    }

    pub fn algebras(&self) -> &[Arc<Algebra>] {
        &self.algebras
    }

    pub fn homs(&self) -> &[Hom] {
        &self.homs
    }
}

fn lift(m: &Hom, f: &Hom) -> Result<Hom, FormError> {
    if !m.is_injective_map() {
        return Err(FormError::Unsupported(format!("{} is not injective", m.name)));
    }
    let mut back = vec![usize::MAX; m.cod.order()];
    for (x, &y) in m.map.iter().enumerate() {
        back[y] = x;
    }
    let map: Option<Vec<usize>> = f.map.iter().map(|&y| (back[y] != usize::MAX).then_some(back[y])).collect();
    let map = map.ok_or_else(|| {
        FormError::Invalid(format!("image of {} is not contained in image of {}", f.name, m.name))
    })?;
    Ok(Hom::new_unchecked(format!("lift({})", f.name), f.dom.clone(), m.dom.clone(), map))
}

fn descend(e: &Hom, f: &Hom) -> Result<Hom, FormError> {
    if !e.is_surjective_map() {
        return Err(FormError::Unsupported(format!("{} is not surjective", e.name)));
    }
    let mut map = vec![usize::MAX; e.cod.order()];
    for (x, &y) in e.map.iter().enumerate() {
        if map[y] == usize::MAX {
            map[y] = f.map[x];
        } else if map[y] != f.map[x] {
            return Err(FormError::Invalid(format!(
                "kernel of {} is not contained in kernel of {}",
                e.name, f.name
            )));
        }
    }
    Ok(Hom::new_unchecked(format!("desc({})", f.name), e.cod.clone(), f.cod.clone(), map))
}

impl Form for SlominskiForm {
    type Obj = Arc<Algebra>;
    type Mor = Hom;

    fn obj_name(&self, x: &Self::Obj) -> String {
        x.name.clone()
    }
    fn sub_count(&self, x: &Self::Obj) -> usize {
        x.subalgebras().len()
    }
    fn sub_label(&self, x: &Self::Obj, a: SubId) -> String {
        mask_label(x.sub_mask(a))
    }
    fn leq(&self, x: &Self::Obj, a: SubId, b: SubId) -> bool {
        x.lattice().leq(a, b)
    }
    fn join(&self, x: &Self::Obj, a: SubId, b: SubId) -> SubId {
        x.lattice().join(a, b)
    }
    fn meet(&self, x: &Self::Obj, a: SubId, b: SubId) -> SubId {
        x.lattice().meet(a, b)
    }
    fn bottom(&self, x: &Self::Obj) -> SubId {
        x.lattice().bottom()
    }
    fn top(&self, x: &Self::Obj) -> SubId {
        x.lattice().top()
    }
    fn mor_name(&self, f: &Self::Mor) -> String {
        f.name.clone()
    }
    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        f.dom.clone()
    }
    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        f.cod.clone()
    }
    fn dimg(&self, f: &Self::Mor, a: SubId) -> SubId {
        let m = f.image_mask(f.dom.sub_mask(a));
        f.cod.sub_index(m).expect("image of a subalgebra is a subalgebra")
    }
    fn iimg(&self, f: &Self::Mor, b: SubId) -> SubId {
        let m = f.preimage_mask(f.cod.sub_mask(b));
        f.dom.sub_index(m).expect("preimage of a subalgebra is a subalgebra")
    }
    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        Hom::identity(x)
    }
    fn compose_unchecked(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        f.then(g)
    }
    fn is_normal(&self, x: &Self::Obj, s: SubId) -> bool {
        x.is_normal_id(s)
    }
    fn is_conormal(&self, _x: &Self::Obj, _s: SubId) -> bool {
        true
    }
    fn embedding_of(&self, x: &Self::Obj, s: SubId) -> Result<Self::Mor, FormError> {
        if s == self.top(x) {
            return Ok(Hom::identity(x));
        }
        let (_, inc) = x.subalgebra(x.sub_mask(s)).map_err(|e| FormError::Invalid(e.to_string()))?;
        Ok(inc)
    }
    fn projection_of(&self, x: &Self::Obj, s: SubId) -> Result<Self::Mor, FormError> {
        if !x.is_normal_id(s) {
            return Err(FormError::NotNormal { object: x.name.clone(), sub: self.sub_label(x, s) });
        }
        if s == self.bottom(x) {
            return Ok(Hom::identity(x));
        }
        Ok(x.quotient(x.sub_mask(s)).1)
    }
    fn lift_through_embedding(&self, m: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, FormError> {
        self.check_owner(&m.cod, &f.cod)?;
        lift(m, f)
    }
    fn descend_through_projection(
        &self,
        e: &Self::Mor,
        f: &Self::Mor,
    ) -> Result<Self::Mor, FormError> {
        self.check_owner(&e.dom, &f.dom)?;
        descend(e, f)
    }
    fn mor_key(&self, f: &Self::Mor) -> Vec<usize> {
        f.map.clone()
    }
    fn same_morphism(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        f == g
    }
    fn inverse(&self, f: &Self::Mor) -> Result<Self::Mor, FormError> {
        if !(f.is_injective_map() && f.is_surjective_map()) {
            return Err(FormError::NotIsomorphism(f.name.clone()));
        }
        let mut map = vec![0; f.map.len()];
        for (x, &y) in f.map.iter().enumerate() {
            map[y] = x;
        }
        Ok(Hom::new_unchecked(format!("inv({})", f.name), f.cod.clone(), f.dom.clone(), map))
    }
}

impl FiniteForm for SlominskiForm {
    fn objects(&self) -> Vec<Self::Obj> {
        self.algebras.clone()
    }
    fn morphisms(&self) -> Vec<Self::Mor> {
        self.homs.clone()
    }
    fn count_lifts(&self, m: &Self::Mor, f: &Self::Mor) -> usize {
        if m.cod != f.cod {
            return 0;
        }
        if m.is_injective_map() {
            return usize::from(lift(m, f).is_ok());
        }
        enumerate_homs(&f.dom, &m.dom).iter().filter(|u| u.then(m) == *f).count()
    }
    fn count_descents(&self, e: &Self::Mor, f: &Self::Mor) -> usize {
        if e.dom != f.dom {
            return 0;
        }
        if e.is_surjective_map() {
            return usize::from(descend(e, f).is_ok());
        }
        enumerate_homs(&e.cod, &f.cod).iter().filter(|v| e.then(v) == *f).count()
    }
}
