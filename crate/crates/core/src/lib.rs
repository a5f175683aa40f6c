pub mod algebra;
pub mod catalog;
pub mod linear;
pub mod solver;
pub mod theory;
