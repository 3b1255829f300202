//! Verdicts built on Segre numbers: expansion and slicing identities,
//! integral-closure comparison, limiting tangent hyperplanes, Lê numbers,
//! families and the deformation to the tangent cone.

mod family;
mod identities;
mod le;

pub use family::{
    analyze_family, FamilyReport, FamilySample, FamilyVerdicts, SemicontinuityRow, SAMPLE_CAVEAT,
};
pub use identities::{
    expansion_check, hyperplane_from_form, limiting_hyperplane_test, rees_test, slice_check,
    ExpansionReport, IdentityRow, LimitingHyperplaneReport, ReesReport, ReesVerdict, SliceReport,
};
pub use le::{
    chi_from_display, euler_vector, homogeneous_relation_check, jacobian_ideal, le_numbers,
    tangent_cone_analysis, ChiSlice, EulerReport, HomogeneousRelationReport, LeReport,
    PolarRelation, TangentConeReport,
};
