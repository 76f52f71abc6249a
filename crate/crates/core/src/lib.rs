pub mod algebra;
pub mod cli;
pub mod eigensystem;
pub mod scattering;
pub mod sweep_io;
pub mod threed;
