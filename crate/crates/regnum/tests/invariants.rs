//! Cross-module properties: agreement between the specialized deciders and
//! the general solver, and the equivalences each construction is built on.

use regnum::budget::Budget;
use regnum::coloring::{chi_prime_exact, sigma_cubic};
use regnum::families;
use regnum::graph::Graph;
use regnum::partition::{decide_reg2_bivalent, reg_at_most, reg_exact, verify_partition, Decision};
use regnum::reduce::{cubic_pendant_transform, gadget_formula};
use regnum::sat::MonotoneFormula;

fn budget() -> Budget {
    Budget::new(50_000_000)
}

fn patched_triangle_formula() -> MonotoneFormula {
    let mut clauses: Vec<Vec<usize>> = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
    let mut fresh = 3;
    for var in 0..3 {
        clauses.push(vec![fresh, fresh + 1]);
        clauses.push(vec![fresh, fresh + 1]);
        clauses.push(vec![fresh, fresh + 1, var]);
        fresh += 2;
    }
    MonotoneFormula::new(fresh, clauses).unwrap()
}

/// Connected graphs whose nonzero degree set is exactly {r, 2r}: here the
/// two-part balance decision and the general solver answer the same question,
/// since any 2-part regular partition must use two r-regular parts.
fn bivalent_corpus() -> Vec<(String, Graph)> {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for n in 3..=6 {
        corpus.push((format!("path-{}", n), families::path(n).unwrap()));
    }
    // Two triangles sharing a vertex: degree set {2, 4}.
    corpus.push((
        "bowtie".into(),
        Graph::new(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap(),
    ));
    let pair = MonotoneFormula::new(2, vec![vec![0, 1]; 3]).unwrap();
    corpus.push(("gadget-pair".into(), gadget_formula(&pair).unwrap().graph));
    let tri = MonotoneFormula::new(3, vec![vec![0, 1, 2]; 3]).unwrap();
    corpus.push(("gadget-tri".into(), gadget_formula(&tri).unwrap().graph));
    corpus.push((
        "gadget-unsat".into(),
        gadget_formula(&patched_triangle_formula()).unwrap().graph,
    ));
    corpus
}

#[test]
fn bivalent_decision_agrees_with_general_solver() {
    for (name, g) in bivalent_corpus() {
        let (cert, _) = decide_reg2_bivalent(&g, budget()).unwrap();
        let (decision, _) = reg_at_most(&g, 2, budget()).unwrap();
        let general = matches!(decision, Decision::Yes(_));
        assert_eq!(
            cert.is_some(),
            general,
            "{}: balance decision and general solver disagree",
            name
        );
        if let Some(cert) = cert {
            let regs = verify_partition(&g, &cert.parts).unwrap();
            assert_eq!(regs.len(), 2);
            assert_eq!(regs[0], regs[1]);
        }
    }
}

#[test]
fn reg_is_one_exactly_when_whole_edge_set_is_regular() {
    let mut corpus: Vec<Graph> = Vec::new();
    for v in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| ((a + 1)..v).map(move |b| (a, b)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p);
            corpus.push(Graph::new(v, edges).unwrap());
        }
    }
    corpus.push(families::petersen());
    corpus.push(
        families::complete(3)
            .unwrap()
            .disjoint_union(&families::complete(3).unwrap()),
    );
    for g in corpus {
        if g.edge_count() == 0 {
            continue;
        }
        let all: Vec<usize> = (0..g.edge_count()).collect();
        let whole_regular = g.edge_induced_regularity(&all).unwrap().is_some();
        let reg = reg_exact(&g, budget()).unwrap().value;
        assert_eq!(reg == 1, whole_regular, "on {:?}", g.edges());
    }
}

fn cubic_corpus() -> Vec<(String, Graph)> {
    let prism = Graph::new(
        6,
        [
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap();
    let cube = Graph::new(
        8,
        (0..8usize).flat_map(|a| {
            (0..3usize).filter_map(move |bit| {
                let b = a ^ (1 << bit);
                (a < b).then_some((a, b))
            })
        }),
    )
    .unwrap();
    vec![
        ("k4".into(), families::complete(4).unwrap()),
        ("k33".into(), families::complete_bipartite(3, 3).unwrap()),
        ("prism".into(), prism),
        ("cube".into(), cube),
        ("petersen".into(), families::petersen()),
    ]
}

#[test]
fn sigma_zero_exactly_when_class_one() {
    for (name, g) in cubic_corpus() {
        let (report, _) = sigma_cubic(&g, budget()).unwrap();
        let (chi, _, _) = chi_prime_exact(&g, budget()).unwrap();
        assert_eq!(report.sigma == 0, chi == 3, "{}", name);
        assert!(report.coloring.is_proper(&g), "{}", name);
    }
}

#[test]
fn pendant_transform_reg_three_exactly_when_sigma_zero() {
    for (name, g) in cubic_corpus() {
        let (report, _) = sigma_cubic(&g, budget()).unwrap();
        if report.sigma == 1 {
            continue; // outside the promise
        }
        let (u, v) = g.endpoints(0);
        let transformed = cubic_pendant_transform(&g, u, v).unwrap();
        let reg = reg_exact(&transformed.graph, budget()).unwrap().value;
        assert_eq!(
            reg == 3,
            report.sigma == 0,
            "{}: reg(G') = {} with sigma = {}",
            name,
            reg,
            report.sigma
        );
    }
    // The choice of removed edge does not matter.
    let k4 = families::complete(4).unwrap();
    for e in 0..k4.edge_count() {
        let (u, v) = k4.endpoints(e);
        let transformed = cubic_pendant_transform(&k4, u, v).unwrap();
        assert_eq!(reg_exact(&transformed.graph, budget()).unwrap().value, 3);
    }
}

/// The search decision must agree with the oracle's minimum at every
/// threshold, not just at the optimum: No strictly below, Yes at and above.
#[test]
fn at_most_decisions_bracket_the_oracle_value() {
    for seed in 0..60u64 {
        let n = 4 + (seed as usize % 4);
        let max_m = (n * (n - 1) / 2).min(10);
        let m = (seed as usize * 3) % (max_m + 1);
        let g = families::random_graph(n, m, seed).unwrap();
        if g.edge_count() == 0 {
            continue;
        }
        let oracle = regnum::partition::reg_bruteforce(&g).unwrap().value;
        for t in 1..=(oracle + 1).min(g.edge_count()) {
            let (decision, _) = reg_at_most(&g, t, budget()).unwrap();
            let yes = matches!(decision, Decision::Yes(_));
            assert_eq!(yes, t >= oracle, "seed {} t {} oracle {}", seed, t, oracle);
        }
    }
}

/// The level tags of the zebra recursion certify reg(zebra(n)) <= n without
/// any search, one power-of-two-regular part per stage; at n=4 this is the
/// only desk-scale upper-bound witness.
#[test]
fn zebra_levels_certify_upper_bound() {
    for n in 1..=4usize {
        let (g, levels) = families::zebra_with_levels(n).unwrap();
        let parts: Vec<Vec<usize>> = (1..=n)
            .map(|l| (0..g.edge_count()).filter(|&e| levels[e] == l).collect())
            .collect();
        let regs = verify_partition(&g, &parts).unwrap();
        let expected: Vec<usize> = (0..n).map(|l| 1 << l).collect();
        assert_eq!(regs, expected, "zebra({}) level partition", n);
    }
}
