//! Exact construction of the genus-2 degree-3 covers of an elliptic curve in
//! Legendre form `y² = x(x − 1)(x − λ)`, parametrized by a degree-3 self-map
//! of P¹ (the Frey–Kani covering), together with exact verification of the
//! defining polynomial identities and enumeration of the moduli over 𝔽p.

pub mod cli;
pub mod field;
pub mod freykani;
pub mod moduli;
pub mod poly;
pub mod ratmap;
pub mod rng;

pub use field::{Field, FieldElement, FieldError, FieldKind, ProjPoint};
pub use poly::{BinaryForm, PolyError, Polynomial, RootSet};
pub use ratmap::{MapError, Mobius, RationalSelfMap};
pub use freykani::{
    build_cover_map, build_cover_u, build_curve, derive_params, membership, verify_diagram,
    verify_function_field, verify_identities, verify_normalization, verify_ramification, z_locus,
    CoverError, CoverParams, Genus2Cover, LegendreCurve, Membership, Sign,
};
pub use moduli::{census, enumerate, family_fiber, ExportFormat, FamilyFiber, Lambdas, ModuliError, ModuliReport};
