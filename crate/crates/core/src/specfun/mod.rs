//! Special functions of real order: modified Bessel `I_ϰ`, McDonald `K_ϰ`,
//! their derivatives, gamma and digamma.

mod bessel;
mod gamma;

pub use bessel::{
    bessel_i, bessel_i_prime, bessel_k, bessel_k_prime, bessel_k_second, BesselOrder, EvalResult, ScaledIK,
    MAX_ORDER,
};
pub use gamma::{digamma, digamma_one, gamma, ln_gamma, rgamma1p, EULER_GAMMA};

pub(crate) use bessel::scaled_i;
