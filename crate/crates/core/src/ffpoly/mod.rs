//! Arithmetic for F_q, R = F_q[T], residue rings R/F and truncated Laurent
//! series at the place at infinity.

pub mod fq;
pub mod laurent;
pub mod poly;
pub mod residue;
