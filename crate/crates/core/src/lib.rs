//! Exact computation of Godbillon-Vey type characteristic classes of
//! homogeneous foliations on semisimple Lie groups.

pub mod chern_weil;
pub mod error;
mod exceptional;
pub mod families;
pub mod fiber;
pub mod form;
pub mod lie;
pub mod linalg;
pub mod proportionality;
pub mod roots;
pub mod scalar;
pub mod tables;
pub mod weil;

pub use chern_weil::{delta_gv, gv_representative, CharacteristicResult};
pub use error::{GvError, Result};
pub use fiber::{compute_cg, even_sl_vanishing, sphere_volume};
pub use form::MultiForm;
pub use lie::{build_family, Family, FamilySpec, LieAlgebraData};
pub use proportionality::{compact_dual, compute_rg};
pub use scalar::ExactScalar;
