pub mod bath;
pub use bath::discretize_bath;
