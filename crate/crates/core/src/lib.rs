//! Finite models of the three-sorted vertex/edge/face incidence theory:
//! axiom checking, canonical forms, exhaustive enumeration, a catalog of
//! known models, and exporters for first-order and SAT solvers.

pub mod axioms;
pub mod canon;
pub mod catalog;
pub mod enumerate;
pub mod export;
pub mod structure;

pub use axioms::{check_axiom, check_theory, satisfies, AxiomEntry, AxiomId, AxiomReport, TheoryId, Witness};
pub use canon::{
    are_isomorphic, automorphism_count, canonical_form, canonical_labeling, Canonical, CanonicalForm, SortedIsomorphism,
};
pub use enumerate::{
    categoricity_from_witnesses, categoricity_report, enumerate_models, smallest_model, Budget, CategoricityReport,
    CategoricityVerdict, Enumeration, EnumerationError, EnumerationTask, IsoClass, IsoClassSet, Mode, SmallestModel,
    Target,
};
pub use structure::{BitMatrix, ElementRef, IncidenceStructure, Relation, Sort, SortTriple, StructureError};
