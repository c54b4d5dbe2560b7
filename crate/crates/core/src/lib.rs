//! Reasoning over ALC terminologies extended with interval-valued
//! conditional probabilities between concepts.

pub mod atoms;
pub mod cli;
pub mod concept;
pub mod hierarchy;
pub mod interval;
pub mod kb;
pub mod lp;
pub mod oracle;
pub mod parser;
pub mod propagation;
pub mod rational;
pub mod report;
pub mod tableau;
pub mod terminology;
