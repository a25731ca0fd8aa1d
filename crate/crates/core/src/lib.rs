pub mod exactmath;
pub mod multipoly;
pub mod classifier;
pub mod hopf;
pub mod triangle;
pub mod ffenum;
pub mod cli;
