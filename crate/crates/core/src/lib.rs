pub mod checks;
pub mod cheval;
pub mod g2chars;
pub mod report;
pub mod rootsys;
pub mod symra;
pub mod weyl;
pub mod zeta;
