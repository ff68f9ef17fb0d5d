use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded pseudo-random stream.
///
/// Identical `(seed, stream_id)` pairs always produce identical sequences;
/// different `stream_id`s under one seed are independent ChaCha streams.
/// A stream is owned by one worker at a time; parallel work partitions by
/// `stream_id` rather than sharing a stream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A uniform draw from the open interval (0, 1).
    pub fn uniform01(&mut self) -> f64 {
        self.rng.sample(Open01)
    }
}
