//! Exp-preimage lattices, class modules, volumes and the identities relating them to Theta.

pub mod expmap;
pub mod frames;
pub mod taelman;
pub mod vol;

pub use expmap::ExpMap;
pub use frames::{char_frames, g_index, CharFrame, GLattice};
pub use taelman::{class_module, expinv_lattice, regulator_index, taelman_data, ClassModule, ExpInvLattice, TaelmanData, TaelmanOptions};
pub use vol::{
    brumer_stark_check, coates_sinnott_check, delta_gamma, etnf_check, vol, volume_formula_check, ArakelovObject, EtnfReport,
    FittingReport, GammaMap, Gluing, VolumeReport,
};
