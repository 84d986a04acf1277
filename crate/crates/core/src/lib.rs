//! Equivalence of regular languages given as DFAs, NFAs or regular
//! expressions.
//!
//! ```
//! use regeq::alphabet::Alphabet;
//! use regeq::equivalence::equiv_uf;
//! use regeq::regex::parse;
//!
//! let sigma = Alphabet::parse("ab").unwrap();
//! let l = parse("(a+b)*", &sigma).unwrap();
//! let r = parse("(a*b*)*", &sigma).unwrap();
//! assert!(equiv_uf(&l, &r, &sigma).unwrap().equivalent);
//! ```
//!
//! Modules:
//!
//! - [`regex`]: syntax, normal forms, derivatives and automaton constructions.
//! - [`automata`]: DFAs, NFAs, subset construction and the text format.
//! - [`union_find`]: disjoint sets with counters.
//! - [`equivalence`]: the deciders.
//! - [`minimize`]: Hopcroft and Brzozowski minimization.
//! - [`gen`] and [`bench`]: random instances and the timing harness.

pub mod alphabet;
pub mod automata;
pub mod bench;
pub mod equivalence;
pub mod gen;
pub mod minimize;
pub mod regex;
pub mod union_find;
