//! Exact integer arithmetic: factorization, quadratic symbols, class numbers,
//! L(1, χ), and local densities for pairs of lattice points.

mod classno;
mod density;
mod factor;
mod symbols;

pub use classno::{
    class_number, gauss_count, is_fundamental, is_squarefree, l_one_chi, l_one_from_class_number,
    Discriminant, LValue,
};
pub use density::{
    a_formula_odd, f_mn, f_n, gcd_bound_check, local_density, nonsquarefree_majorant,
    squarefull_gcd_part, FmnVariant, LocalDensityInput,
};
pub use factor::{factorize, gcd, is_prime, Factorization, FACTOR_LIMIT};
pub use symbols::{kronecker, legendre};
