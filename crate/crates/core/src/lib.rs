//! Exact structure theory for split Leibniz superalgebras.
//!
//! The crate works over `Q` (big rationals) or a prime field `F_p`, never
//! over floats. From a table of structure constants it validates the right
//! super Leibniz identity, computes the ideal `𝔦` generated by symmetric
//! products, splits the algebra into root spaces over a given abelian
//! subalgebra `H`, follows connections between roots, and decides simplicity
//! either from connectivity hypotheses or by exhaustive search of graded
//! ideals.
//!
//! Everything is generic over [`exactlin::Field`]; the aliases below name
//! the two instantiations used in practice.
//!
//! ```
//! use sll_core::iocli::generators::{example1, example1_cartan};
//! use sll_core::exactlin::Rationals;
//! use sll_core::splitdec::{split, CartanInput};
//!
//! let alg = example1(Rationals).validated().unwrap();
//! let h = CartanInput::new(example1_cartan(&alg));
//! let d = split(&alg, &h).unwrap();
//! assert_eq!(d.roots().len(), 4);
//! ```

pub mod exactlin;
pub mod iocli;
pub mod superalg;
pub mod splitdec;
pub mod connect;
pub mod analyze;

/// Algebras over the rationals.
pub type QAlgebra = superalg::Superalgebra<exactlin::Rationals>;
/// Algebras over a prime field.
pub type FpAlgebra = superalg::Superalgebra<exactlin::PrimeField>;
/// A rational scalar.
pub type Q = <exactlin::Rationals as exactlin::Field>::Elem;
/// A root over the rationals.
pub type QRoot = splitdec::Root<Q>;
