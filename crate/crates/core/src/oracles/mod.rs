pub mod brillouin;
pub mod field;
pub mod lattice;
