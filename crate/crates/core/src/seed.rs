//! Deterministic derivation of per-stage RNG seeds from one run seed.

/// Mixes a base seed with a salt (splitmix64 finalizer). Used so that, e.g.,
/// the model trained for month `t` depends only on `(seed, t)` and not on how
/// many other months were trained before it.
#[inline]
pub(crate) fn mix(base: u64, salt: u64) -> u64 {
    let mut z = base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
