pub mod catalog;
pub mod dsl;
pub mod duality;
pub mod exactalg;
pub mod morphisms;
pub mod operatorver;
pub mod products;
pub mod suite;
pub mod typecore;

mod error;

pub use error::Error;
