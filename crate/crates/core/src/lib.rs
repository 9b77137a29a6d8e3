pub mod certificate;
pub mod cli;
pub mod liealg;
pub mod linalg;
pub mod nogo;
pub mod orbit;
pub mod poisson;
pub mod rational;
