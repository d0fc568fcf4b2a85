pub mod complex;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod homology;
pub mod io;
pub mod nerve;
pub mod number;
pub mod proximity;
pub mod svg;
pub mod triangulation;
