//! Potential functions, saddle points and the leading-order asymptotics of the
//! top-color invariant and the Turaev–Viro invariant.

pub mod critical;
pub mod finite;
pub mod onedim;
pub mod potential;
pub mod region;
pub mod xfamily;

pub use critical::{asymptotic_j, asymptotic_j_for, c_n, growth_defect, solve_critical, solve_critical_for, tv_asymptotic, AsymptoticProfile};
pub use finite::{potential_v_n, vn_case, VnCase};
pub use onedim::{dv_dc_closed, dv_dc_numeric, theta2_of_c};
pub use potential::{potential_v, PotentialKind, PotentialParams, Sign};
pub use region::{hessian_f, hessian_f_x, region_membership, region_v, RegionMembership, RegionSpec};
pub use xfamily::{critical_x, critical_x_path, XCritical};
