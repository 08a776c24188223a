pub mod brst;
pub mod classical_w;
pub mod cli;
pub mod liesuper;
pub mod linalg;
pub mod pva;
pub mod scalar;
pub mod superpoly;
pub mod susy_pva;
pub mod susy_w;
