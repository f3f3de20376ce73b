//! Coded caching schemes derived from linear block codes whose generator
//! matrices have the consecutive column property.

pub mod analysis;
pub mod caching;
pub mod codes;
pub mod design;
pub mod gf;
