pub mod certificates;
pub mod constants;
pub mod exact;
pub mod field_oracle;
pub mod poly;
pub mod quad;
pub mod spectral;
