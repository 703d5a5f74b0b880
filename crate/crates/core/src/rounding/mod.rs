//! Rounding an LP solution to an assignment, and the objects the rounding
//! analysis is phrased in.

pub mod analysis;
pub mod cuts;
pub mod derandomized;
pub mod randomized;

pub use analysis::{
    build_stars, ceil_sqrt, heavy_light_split, vol_lp, HeavyLightSplit, StarDecomposition,
    VolumeProfile,
};
pub use cuts::{greedy_max_cut, greedy_max_dicut, CutPartition, Digraph};
pub use derandomized::{
    case1_bijections, certified_bound, derandomized_round, derandomized_round_traced,
    find_star_and_map, DerandOptions, DerandTrace, StarMap,
};
pub use randomized::{best_of_k, randomized_round, randomized_round_traced, RandomizedRun};
