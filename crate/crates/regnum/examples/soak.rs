use regnum::budget::Budget;
use regnum::coloring::{chi_prime_exact, color_delta_plus_one};
use regnum::families;
use regnum::partition::{reg_at_most, reg_bruteforce, Decision};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    // Constructive coloring: proper and within Δ+1 on 20k random graphs.
    let mut worst_ratio_hits = 0u64;
    for seed in 0..20_000u64 {
        let n = 3 + (seed % 14) as usize;
        let max_m = n * (n - 1) / 2;
        let m = (seed.wrapping_mul(2654435761) % (max_m as u64 + 1)) as usize;
        let g = families::random_graph(n, m, seed).unwrap();
        let coloring = color_delta_plus_one(&g);
        assert!(coloring.is_proper(&g), "seed {}: improper", seed);
        assert!(
            coloring.color_count() <= g.max_degree() + 1,
            "seed {}: {} colors for Δ={}",
            seed,
            coloring.color_count(),
            g.max_degree()
        );
        if g.edge_count() > 0 && coloring.color_count() == g.max_degree() + 1 {
            worst_ratio_hits += 1;
        }
    }
    println!(
        "vizing soak: 20000 graphs proper within Δ+1 ({} used Δ+1), {:?}",
        worst_ratio_hits,
        t0.elapsed()
    );

    // Exact chi' on denser named graphs.
    let t0 = Instant::now();
    for n in 3..=9usize {
        let g = families::complete(n).unwrap();
        let (chi, w, _) = chi_prime_exact(&g, Budget::new(50_000_000)).unwrap();
        let expected = if n % 2 == 0 { n - 1 } else { n };
        assert_eq!(chi, expected, "K_{}", n);
        assert!(w.is_proper(&g));
    }
    for (a, b) in [(2, 2), (3, 3), (4, 4), (5, 5), (3, 5), (4, 6)] {
        let g = families::complete_bipartite(a, b).unwrap();
        let (chi, _, _) = chi_prime_exact(&g, Budget::new(50_000_000)).unwrap();
        assert_eq!(chi, a.max(b), "K_{{{},{}}}", a, b);
    }
    println!("chi' soak: complete + bipartite families exact, {:?}", t0.elapsed());

    // Solver vs oracle, decision level, on 2000 fresh seeds.
    let t0 = Instant::now();
    for seed in 100_000..102_000u64 {
        let n = 4 + (seed % 4) as usize;
        let max_m = (n * (n - 1) / 2).min(11);
        let m = (seed.wrapping_mul(40503) % (max_m as u64 + 1)) as usize;
        let g = families::random_graph(n, m, seed).unwrap();
        if g.edge_count() == 0 {
            continue;
        }
        let oracle = reg_bruteforce(&g).unwrap().value;
        for t in 1..=(oracle + 1).min(g.edge_count()) {
            let (d, _) = reg_at_most(&g, t, Budget::new(50_000_000)).unwrap();
            assert_eq!(
                matches!(d, Decision::Yes(_)),
                t >= oracle,
                "seed {} t {} oracle {}",
                seed,
                t,
                oracle
            );
        }
    }
    println!("solver soak: 2000 graphs bracket the oracle, {:?}", t0.elapsed());
}
