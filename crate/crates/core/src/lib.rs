//! Ehrhart quasi-polynomials of duals of Fano polygons, polygon mutation,
//! singularity content and quasi-period collapse.
//!
//! All arithmetic is exact. Polygons live in [`geometry`], Fano polygons and
//! their duals in [`fano`]; [`collapse::predict`] ties the pieces together.

pub mod collapse;
pub mod ehrhart;
pub mod error;
pub mod fano;
pub mod format;
pub mod geometry;
pub mod markov;
pub mod mutation;
pub mod random;
pub mod rational;
pub mod singularity;

pub use collapse::{predict, CollapseReport};
pub use ehrhart::{count_points, quasi_period, quasi_polynomial, QuasiPolynomial};
pub use error::{Error, Result};
pub use fano::{dual, normal_form, validate_fano, FanoPolygon};
pub use geometry::{Point2, Polygon, UnimodularMap};
pub use mutation::{mutate, MutationData};
pub use rational::Rational;
pub use singularity::{singularity_content, QuotientSingularity};
