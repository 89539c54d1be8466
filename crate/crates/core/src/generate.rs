//! Random weighted outerplanar instances: a cycle plus uniformly chosen
//! pairwise non-crossing chords.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::WeightedGraph;
use crate::weight::Weight;
use crate::{Error, Result};

/// Whether two chords of a cycle cross, given as ordered position pairs.
fn crossing(a: (usize, usize), b: (usize, usize)) -> bool {
    let (p, q) = a;
    let (r, s) = b;
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

/// Builds the cycle `0-1-...-(n-1)-0` plus `chords` non-crossing chords,
/// with integer weights drawn uniformly from `0..=wmax`; equal arguments
/// produce equal graphs. Each chord is chosen uniformly among the pairs
/// still compatible with the earlier ones. At most `n - 3` pairwise
/// non-crossing chords fit (a full polygon triangulation), and any smaller
/// non-crossing set still extends, so the choice never runs dry.
pub fn random_outerplanar(n: usize, chords: usize, seed: u64, wmax: u64) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::InvalidInput(
            "outerplanar instances need at least 3 vertices".into(),
        ));
    }
    let max = n - 3;
    if chords > max {
        return Err(Error::InfeasibleChords { n, chords, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == n - 1))
        .collect();
    let mut picked: Vec<(usize, usize)> = Vec::with_capacity(chords);
    for _ in 0..chords {
        if pool.is_empty() {
            return Err(Error::InvariantViolation(
                "chord pool ran dry below the triangulation bound".into(),
            ));
        }
        let chord = pool.swap_remove(rng.gen_range(0..pool.len()));
        pool.retain(|&c| !crossing(chord, c));
        picked.push(chord);
    }
    let mut edges: Vec<(usize, usize, Weight)> = (0..n)
        .map(|i| (i, (i + 1) % n, Weight::from_integer(rng.gen_range(0..=wmax))))
        .collect();
    edges.extend(
        picked
            .into_iter()
            .map(|(i, j)| (i, j, Weight::from_integer(rng.gen_range(0..=wmax)))),
    );
    Ok(WeightedGraph::from_indexed(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::outerplanar::recognize;

    #[test]
    fn rejects_tiny_cycles_and_too_many_chords() {
        assert!(matches!(
            random_outerplanar(2, 0, 1, 5),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            random_outerplanar(4, 2, 1, 5),
            Err(Error::InfeasibleChords {
                n: 4,
                chords: 2,
                max: 1
            })
        ));
    }

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let a = random_outerplanar(8, 3, 42, 10).unwrap();
        let b = random_outerplanar(8, 3, 42, 10).unwrap();
        assert_eq!(a.m(), b.m());
        for e in a.edge_ids() {
            assert_eq!(a.endpoints(e), b.endpoints(e));
            assert_eq!(a.weight(e), b.weight(e));
        }
    }

    #[test]
    fn generated_graphs_are_outerplanar_with_the_requested_shape() {
        for n in 3..=9 {
            for chords in 0..=(n - 3) {
                for seed in 0..5u64 {
                    let g = random_outerplanar(n, chords, seed, 7).unwrap();
                    assert_eq!(g.n(), n);
                    assert_eq!(g.m(), n + chords);
                    let embedding = recognize(&g).unwrap();
                    assert_eq!(embedding.chords.len(), chords);
                    for e in g.edge_ids() {
                        assert!(*g.weight(e) <= Weight::from_integer(7));
                    }
                }
            }
        }
    }
}
