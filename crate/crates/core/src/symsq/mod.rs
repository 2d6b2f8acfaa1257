//! The unramified Rankin–Selberg computation for the twisted symmetric
//! square: partitions, Schur polynomials, torus values, local factors,
//! the even-partition generating function, normalizing ratios and partial
//! Euler products.
//!
//! Exponent conventions on `t_λ` (with `λ_r = 0`): `δ_B = q^{-e_B}` with
//! `e_B = Σ λ_i (r + 1 - 2i)`, `δ_{B'} = q^{-e_{B'}}` with
//! `e_{B'} = Σ_{i<r} λ_i (r - 2i)`, and `δ_Q = q^{-|λ|}` for the `(r-1, 1)`
//! parabolic `Q`. With these the toral integrand collapses to
//! `s_λ(α) (χ(ϖ) q^{-2s+1/2})^{|λ|/2}`.

pub mod euler;
pub mod factors;
pub mod partition;
pub mod poles;
pub mod satake;
pub mod schur;
pub mod torus;

pub use euler::{euler_product, euler_tail_bound, EulerRow};
pub use factors::{
    bg_identity_check, even_partition_gf, local_factors, rational_q_power, rs_factorization_check,
    tate_factor, unramified_zeta_check, unramified_zeta_closed_form, unramified_zeta_series, LocalFactor,
    LocalFactors, TateFactor, TateValue,
};
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use poles::{
    gk_arguments, gk_ratio, induction_shift, normalizer_argument_root, pole_report, s_to_l_arg, GkKind,
    GkValue, PoleReport,
};
pub use satake::{CharValue, ChiSqrt, SatakeData};
pub use schur::{complete_homogeneous, schur_jt, schur_tableau_oracle};
pub use torus::{modulus_exponent, shintani_whittaker, toral_q_values, Parabolic, QTerm};
