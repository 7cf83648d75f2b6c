//! Small-matrix complex algebra for spin-1/2 and spin-1 systems: Pauli and
//! spherical tensor operators, Clebsch–Gordan coupling, Hermitian
//! eigen-solves and polynomial roots.

pub mod cg;
pub mod eigen;
pub mod matrix;
pub mod poly;
pub mod spherical;
pub mod tensor;

pub use cg::clebsch_gordan;
pub use eigen::{eig_hermitian, HermitianEigen};
pub use matrix::{c64, kron, pauli, Axis, CMatrix};
pub use poly::{poly_roots, ComplexPolynomial, PolyRoots};
pub use spherical::{rank2_product, spherical_components, SphericalVector, Vec3};
pub use tensor::{kq_index, kq_pairs, tensor_ops, Spin, TensorOperatorSet};
