// SPDX-License-Identifier: Apache-2.0

#![allow(clippy::needless_range_loop, clippy::wrong_self_convention, clippy::type_complexity)]

pub mod arith;
pub mod dpip;
pub mod error;
pub mod finite;
pub mod io;
pub mod linalg;
pub mod nf;
pub mod quadlab;
pub mod residue;
pub mod switchlab;

pub use error::{Error, Result};
