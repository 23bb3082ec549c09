//! Basic matrices, block matrices, the diameter-word builder, and the
//! certified derivation builders for the area construction.

pub mod bands;
pub mod basic;
pub mod blockmat;
pub mod cfg;
pub mod diameter;

pub use bands::{band_decompose, recompose_bands, BandDecomposition};
pub use basic::{decompose_basic, normalize_pack_iteration, pack, BasicComponent, BasicMatrix, PackTrace};
pub use blockmat::{decompose_rect, express_p_as_fg, sum_blocks, BlockSpec, BlockType};
pub use cfg::MoatConfig;
pub use diameter::diameter_word;
