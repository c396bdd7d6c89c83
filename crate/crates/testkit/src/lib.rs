//! Shared test support: fixtures, random generators, and oracles written
//! independently of the code under test.

pub mod checkdigit;
pub mod endpoint;
pub mod fixtures;
pub mod gen;
pub mod iso;
pub mod oracle;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
