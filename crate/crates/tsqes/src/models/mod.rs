//! Builders for every system the workbench studies: synthetic-spectrum
//! molecular stand-ins, the Kane-Mele ribbon, the SSH chain with Hubbard
//! interaction under Jordan-Wigner, and number-sector plumbing.

mod fermion;
mod h2;
mod kane_mele;
mod ssh_hubbard;
mod synth;

pub use fermion::{
    jordan_wigner, number_sector_basis, project_to_sector, sector_vector_to_full, FermionicTerm,
};
pub use h2::{build_h2, H2Coefficients, H2_R125_SPECTRUM};
pub use kane_mele::{build_kane_mele_ribbon, KaneMeleParams};
pub use ssh_hubbard::{build_ssh_hubbard, ssh_hubbard_terms, SSHHubbardParams};
pub use synth::synth_spectrum;
