use dfaorev::{Dfao, OutputMap, Transformation};
use rand::Rng;

/// Uniform letter actions and outputs; the result may have unreachable states.
pub fn random_dfao(rng: &mut impl Rng, max_n: usize, max_sigma: usize, max_k: usize) -> Dfao {
    let n = rng.random_range(1..=max_n);
    let sigma = rng.random_range(1..=max_sigma);
    let k = rng.random_range(1..=max_k);
    let letters = (0..sigma)
        .map(|_| Transformation::new((0..n).map(|_| rng.random_range(0..n)).collect()).unwrap())
        .collect();
    let tau = OutputMap::new((0..n).map(|_| rng.random_range(0..k)).collect(), k).unwrap();
    Dfao::new(letters, rng.random_range(0..n), tau).unwrap()
}

pub fn random_word(rng: &mut impl Rng, sigma: usize, max_len: usize) -> Vec<usize> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| rng.random_range(0..sigma)).collect()
}
