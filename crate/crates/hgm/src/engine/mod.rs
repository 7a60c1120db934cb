//! Computations built on the primitives: hypergeometric sums, Frobenius
//! polynomials, Jacobi motives and the various consistency checks.

pub mod hsum;

pub use hsum::{choose_f, hgm_padic, hgm_padic_streaming, HgmSum};
pub mod frob;
pub use frob::{hgm_frob, FrobData};
pub mod jacobi;
pub use jacobi::{JacobiDatum, JacobiExact};
pub mod trace;
pub use trace::{rank1_closed_form, trace_match_verify, varkappa, TraceMatchReport};
pub mod exact;
pub use exact::{exact_h, CycFrac};
pub mod tame;
pub use tame::{tame_trace, TameReport};
pub mod congr;
pub mod props;
pub mod split;
pub use congr::{congruence_at, congruence_check, CongruenceReport, PrimeCongruence};
pub use props::{properties_suite, PropsReport};
pub use split::{base_field_factor, jacobi_split_check, BaseFieldFactor, SplitReport};
