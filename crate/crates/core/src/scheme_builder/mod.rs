//! Chart covers of Y and X and the construction of X from Y: the orbit set
//! Δ, the chart rings A_V = B_V[Δ] and the chart-wise morphism X → Y.

mod cover;
mod input;
mod model;
mod ring;

pub use cover::{
    find_duplicate, fraction_field_certificates, inclusion, same_ring, validate_cover, Chart, ChartFraction, CoverComplex, CoverReport,
    FractionCertificate, Inclusion, Overlap, Tristate,
};
pub use input::{canonical_json, parse_model_input, serialize_model_spec, ChartSpec, CoverSpec, ModelSpec, OverlapSpec};
pub use model::{
    assemble_model, build_chart_ring, build_delta, build_model, conjugate_charts, invariant_subring_probe, verify_model, Delta, InvariantProbe, ModelCheck,
    ModelX, Probe,
};
pub use ring::{evaluate_at, Ambient, FractionWitness, MemberWitness, RingPresentation};
