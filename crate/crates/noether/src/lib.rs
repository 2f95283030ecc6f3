//! Subobject lattices, zigzags and diagram lemmas over finite
//! noetherian forms, with Słomiński algebras as the concrete model.

pub mod axioms;
pub mod form;
pub mod gen;
pub mod groups;
pub mod lattice;
pub mod lemma;
pub mod pyramid;
pub mod report;
pub mod slominski;
pub mod subquotient;
pub mod table;
pub mod text;
pub mod zigzag;

pub use form::{dualize, Dual, FiniteForm, Form, FormError, SubId, Subobject};
pub use lattice::Lattice;
pub use slominski::{enumerate_homs, Algebra, Hom, SlominskiForm};
pub use report::{Line, Report, Status};
pub use table::{TableForm, TableMor, TableObject};
