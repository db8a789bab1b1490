pub mod check;
pub mod extend;
pub mod newton;
pub mod resolve;
