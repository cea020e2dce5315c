//! Seeded randomness. Every random draw in a campaign flows from one
//! 64-bit seed through [`sub_seed`], so results do not depend on the
//! order in which independent pieces are evaluated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::liealg::AlgebraElement;
use crate::scalar::Complex64;

pub type SeededRng = ChaCha8Rng;

/// Derives an independent seed for stream `stream` of campaign `seed`
/// (splitmix64 finalizer applied to both inputs).
pub fn sub_seed(seed: u64, stream: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(seed ^ mix(stream))
}

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

pub fn gaussian_element<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AlgebraElement<Complex64> {
    AlgebraElement::new(gaussian_vector(n, rng))
}

/// Gaussian direction rescaled to coordinate norm `norm`.
pub fn gaussian_direction<R: Rng + ?Sized>(n: usize, norm: f64, rng: &mut R) -> AlgebraElement<Complex64> {
    let v = gaussian_element(n, rng);
    let len = v.norm();
    v.scale(&Complex64::new(norm / len, 0.0))
}

/// Stable 64-bit FNV-1a digest of the bit patterns of a coordinate vector.
pub fn digest(x: &AlgebraElement<Complex64>) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in x.coords() {
        for b in c.re.to_bits().to_le_bytes().into_iter().chain(c.im.to_bits().to_le_bytes()) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}
