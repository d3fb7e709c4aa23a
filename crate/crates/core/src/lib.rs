pub mod error;
pub mod intertwine;
pub mod linalg;
pub mod opalg;
pub mod repmodel;
pub mod rootsys;
pub mod schurweyl;
pub mod spectrum;
