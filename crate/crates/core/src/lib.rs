pub mod axioms;
pub mod budget;
pub mod category;
pub mod ccmorphism;
pub mod cone;
pub mod cross;
pub mod dual;
pub mod export;
pub mod icc;
pub mod io;
pub mod matching;
pub mod preset;
pub mod search;
pub mod semigroup;
pub mod workbench;
