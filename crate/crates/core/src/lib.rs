//! Minimum rank of sign patterns through point-hyperplane configurations.
//!
//! An m x n sign pattern of minimum rank r corresponds to m points and n
//! oriented hyperplanes in R^(r-1): entry (i, j) records whether point i is
//! above, on or below hyperplane j. This crate computes minimum-rank bounds
//! with exact certificates, builds and transforms configurations over
//! Q(sqrt d), and turns floating realizations into exact rational ones when
//! every column of the condensed pattern has at most r - 1 zeros.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod fixtures;
pub mod geometry;
pub mod pattern;
pub mod realize;
pub mod sign;
pub mod svg;

pub use error::{Error, Result};
pub use exactnum::{QuadElem, QuadField, Rational};
pub use geometry::{Configuration, OrientedHyperplane, Point};
pub use pattern::SignPattern;
pub use realize::{RationalCertificate, Realization, SearchParams};
pub use sign::Sign;
