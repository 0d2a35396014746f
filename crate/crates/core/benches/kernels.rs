use binlcp::codes::EnumerationConfig;
use binlcp::constructions::reed_muller_1;
use binlcp::lcppair::{exists_permutation_oracle, OracleMode};
use binlcp::search::{best_distance, SearchConfig};
use binlcp::{BitMatrix, LinearCode, Strategy};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn random_code(n: usize, k: usize, seed: u64) -> LinearCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut m = BitMatrix::zeros(k, n);
        for r in 0..k {
            for c in 0..n {
                m.set(r, c, rng.gen());
            }
        }
        let code = LinearCode::from_generator(&m);
        if code.k() == k {
            return code;
        }
    }
}

fn subspace_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("best_distance_8_4");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        let cfg = SearchConfig::default().with_strategy(strategy);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| best_distance(black_box(8), black_box(4), &cfg).unwrap())
        });
    }
    group.finish();
}

fn permutation_oracle(c: &mut Criterion) {
    // R(1,3) against itself has no LCP permutation, so all 8! are visited.
    let rm = reed_muller_1(3);
    let mut group = c.benchmark_group("oracle_full_sweep_n8");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                exists_permutation_oracle(&rm, &rm, 0, OracleMode::Exhaustive, strategy).unwrap()
            })
        });
    }
    group.finish();
}

fn weight_distribution(c: &mut Criterion) {
    let code = random_code(48, 22, 5);
    let mut group = c.benchmark_group("weight_distribution_48_22");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        let cfg = EnumerationConfig {
            strategy,
            ..Default::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| code.weight_distribution_with(&cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    subspace_sweep,
    permutation_oracle,
    weight_distribution
);
criterion_main!(benches);
