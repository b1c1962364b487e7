// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in monogenic number fields.

mod dd;
pub mod field;
pub mod hnf;
pub mod ideal;
pub mod kpoly;
pub mod lll;
pub mod prime;

pub use field::{FieldElement, Irreducibility, NumberField};
pub use ideal::Ideal;
pub use kpoly::poly_disc_over_ok;
pub use lll::{is_lll_reduced, lll_reduce};
pub use prime::{dedekind_maximal_at_p, is_prime_ideal, kummer_dedekind, PrimeIdeal};
