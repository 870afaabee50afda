pub mod algebra;
pub mod invariants;
pub mod reproduce;
pub mod scenarios;
pub mod surface;
pub mod toric;
pub mod zariski;
