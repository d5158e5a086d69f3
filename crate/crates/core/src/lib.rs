pub mod burau_squier;
pub mod cli;
pub mod conformal_blocks;
pub mod cyclo_exact;
pub mod json;
pub mod linalg;
pub mod pseudo_unitary;
pub mod random;
pub mod recurrences;
pub mod reproduce;
pub mod su_commutators;
