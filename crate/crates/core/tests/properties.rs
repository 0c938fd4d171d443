use proptest::prelude::*;
use vffcomp_core::builders::{comparator_circuit, explicit_quadratic_circuit, ComparatorLayout, QuadraticPhases, Relation};
use vffcomp_core::grid::{centered_qft, GridSpec};
use vffcomp_core::marcus::{extract_rate, PopulationTrace};
use vffcomp_core::resources::{count_gates, swap_overhead};
use vffcomp_core::sim::{circuit_unitary, Circuit, GateOp, StateVector, Unitary};
use vffcomp_core::vff::{build_d, hs_cost, lhst_dense, minimize, OptimizerConfig, VffAnsatz};
use vffcomp_core::walsh::{diagonal_circuit, inverse_walsh, truncate, walsh_transform, DiagonalSpec, Topology};
use vffcomp_core::Complex64;

fn gate(n: usize) -> impl Strategy<Value = GateOp> {
    let q = 0..n;
    (0u8..9, q.clone(), q.clone(), q, -7.0..7.0f64).prop_filter_map("distinct wires", move |(k, a, b, c, t)| {
        let distinct2 = a != b;
        let distinct3 = distinct2 && a != c && b != c;
        Some(match k {
            0 => GateOp::x(a),
            1 => GateOp::rz(a, t),
            2 => GateOp::rx(a, t),
            3 => GateOp::ry(a, t),
            4 if distinct2 => GateOp::cnot(a, b),
            5 if distinct2 => GateOp::zz(a, b, t),
            6 if distinct2 => GateOp::crz(a, b, t),
            7 if distinct3 => GateOp::toffoli(a, b, c),
            8 => GateOp::global_phase(t),
            _ => return None,
        })
    })
}

fn circuit(max_n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    (3..=max_n).prop_flat_map(move |n| prop::collection::vec(gate(n), 0..max_len).prop_map(move |ops| Circuit::from_ops(n, ops).unwrap()))
}

/// Two circuits on the same register.
fn circuit_pair(sizes: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = (Circuit, Circuit)> {
    sizes.prop_flat_map(move |n| {
        (prop::collection::vec(gate(n), 0..max_len), prop::collection::vec(gate(n), 0..max_len))
            .prop_map(move |(x, y)| (Circuit::from_ops(n, x).unwrap(), Circuit::from_ops(n, y).unwrap()))
    })
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1 << n).prop_filter_map("nonzero", |v| {
        StateVector::normalized(v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect()).ok()
    })
}

fn matrix_product(a: &Unitary, b: &Unitary) -> Unitary {
    a.mul(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_preserve_norm((g, mut s) in (3usize..=5).prop_flat_map(|n| (gate(n), state(n)))) {
        s.apply(&g).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn circuits_are_unitary(c in circuit(6, 30)) {
        prop_assert!(circuit_unitary(&c).unwrap().unitarity_error() < 1e-9);
    }

    #[test]
    fn composition_applies_second_after_first((a, b) in circuit_pair(3..=5, 15)) {
        let mut ab = a.clone();
        ab.append(&b).unwrap();
        let want = matrix_product(&circuit_unitary(&b).unwrap(), &circuit_unitary(&a).unwrap());
        prop_assert!(circuit_unitary(&ab).unwrap().max_abs_diff(&want) < 1e-9);
    }

    #[test]
    fn inverse_undoes_circuit(c in circuit(5, 25)) {
        let mut both = c.clone();
        both.append(&c.inverse()).unwrap();
        let dim = 1 << c.num_qubits();
        prop_assert!(circuit_unitary(&both).unwrap().max_abs_diff(&Unitary::identity(dim)) < 1e-10);
    }

    #[test]
    fn centred_qft_preserves_norm(s in (1usize..=7).prop_flat_map(state)) {
        prop_assert!((centered_qft(&s).unwrap().norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn walsh_round_trip_and_parseval(v in (0usize..=8).prop_flat_map(|n| prop::collection::vec(-5.0..5.0f64, 1 << n))) {
        let spec = walsh_transform(&v).unwrap();
        let back = inverse_walsh(&spec);
        for (a, b) in v.iter().zip(&back) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let lhs = v.len() as f64 * spec.terms().iter().map(|t| t.coeff * t.coeff).sum::<f64>();
        let rhs: f64 = v.iter().map(|x| x * x).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300));
    }

    #[test]
    fn quadratics_truncate_at_order_two(n in 1usize..=8, a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64) {
        let f: Vec<f64> = (0..1usize << n).map(|k| { let x = k as f64 * 0.1; a * x * x + b * x + c }).collect();
        let spec = truncate(&walsh_transform(&f).unwrap(), 2, n, Topology::Linear).unwrap();
        let back = inverse_walsh(&spec);
        for (x, y) in f.iter().zip(&back) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn walsh_term_order_does_not_matter(n in 2usize..=6, seed in any::<u64>(), coeffs in prop::collection::vec(-2.0..2.0f64, 64)) {
        let f: Vec<f64> = (0..1usize << n).map(|k| coeffs[k % 64] * (k as f64).sin()).collect();
        let spec = truncate(&walsh_transform(&f).unwrap(), 2, n, Topology::Linear).unwrap();
        let mut terms = spec.terms().to_vec();
        let mut s = seed;
        for i in (1..terms.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            terms.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = DiagonalSpec::new(n, terms).unwrap();
        let u = circuit_unitary(&diagonal_circuit(&spec, 0.7).unwrap()).unwrap();
        let v = circuit_unitary(&diagonal_circuit(&shuffled, 0.7).unwrap()).unwrap();
        prop_assert!(u.max_abs_diff(&v) < 1e-12);
    }

    #[test]
    fn explicit_quadratic_equals_oracle(n in 2usize..=6, eta in -1.0..1.0f64, x0 in -5.0..25.0f64, delta in -1.0..1.0f64, tau in 0.0..2.0f64) {
        let spacing = 20.0 / (1u64 << n) as f64;
        let ph = QuadraticPhases::new(eta, x0, delta, tau, spacing);
        for reduced in [true, false] {
            let u = circuit_unitary(&explicit_quadratic_circuit(&ph, n, reduced).unwrap()).unwrap();
            prop_assert!(u.max_off_diagonal() < 1e-12);
            let d = u.diagonal();
            for (m, z) in d.iter().enumerate() {
                let x = m as f64 * spacing;
                let want = Complex64::cis(-tau * (eta * (x - x0).powi(2) + delta));
                prop_assert!((z - want).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn comparator_then_inverse_is_identity(n in 1usize..=4, t in 0usize..16, greater in any::<bool>()) {
        let t = t % (1 << n);
        let layout = ComparatorLayout::new(n, 1);
        let relation = if greater { Relation::Greater } else { Relation::Less };
        let c = comparator_circuit(&layout, t, relation, layout.comparators[0]).unwrap();
        let mut both = c.clone();
        both.append(&c.inverse()).unwrap();
        prop_assert!(circuit_unitary(&both).unwrap().max_abs_diff(&Unitary::identity(1 << layout.num_wires)) < 1e-10);
    }

    #[test]
    fn local_cost_is_faithful_and_phase_blind(c in circuit(4, 20), phase in -3.0..3.0f64) {
        let u = circuit_unitary(&c).unwrap();
        let shifted: Vec<Complex64> = u.entries().iter().map(|z| z * Complex64::cis(phase)).collect();
        let v = Unitary::from_rows(u.dim(), shifted).unwrap();
        prop_assert!(lhst_dense(&u, &u).unwrap().c_lhst < 1e-12);
        prop_assert!(lhst_dense(&u, &v).unwrap().c_lhst < 1e-12);
    }

    #[test]
    fn local_cost_is_sandwiched((a, b) in circuit_pair(3..=4, 20)) {
        let (u, v) = (circuit_unitary(&a).unwrap(), circuit_unitary(&b).unwrap());
        let r = lhst_dense(&u, &v).unwrap();
        let hs = hs_cost(&u, &v).unwrap();
        let n = u.num_qubits() as f64;
        prop_assert!((r.c_hst - hs).abs() < 1e-12);
        prop_assert!(hs / n <= r.c_lhst + 1e-9);
        prop_assert!(r.c_lhst <= hs + 1e-9);
    }

    #[test]
    fn best_cost_never_increases(start in prop::collection::vec(-3.0..3.0f64, 1..6), lr in 0.01..0.5f64) {
        let opt = OptimizerConfig { learning_rate: lr, max_iters: 200, cost_tolerance: 0.0, ..Default::default() };
        let r = minimize(start, &opt, |p| {
            let c = p.iter().map(|x| 1.0 - x.cos()).sum::<f64>();
            Ok((c, p.iter().map(|x| x.sin()).collect()))
        }).unwrap();
        for w in r.history.windows(2) {
            prop_assert!(w[1].best_cost <= w[0].best_cost);
        }
    }

    #[test]
    fn swap_cost_falls_with_locality(n in 2usize..=10, ring in any::<bool>()) {
        let topology = if ring { Topology::Ring } else { Topology::Linear };
        let cost = |l| swap_overhead(&build_d(&VffAnsatz::zeros(n, 0, l, topology, 1.0)).unwrap(), topology);
        for l in 1..n {
            prop_assert!(cost(l + 1) >= cost(l));
        }
    }

    #[test]
    fn compressed_pair_count_formula(n in 2usize..=10, l in 1usize..=10) {
        let l = l.min(n);
        let census = count_gates(&build_d(&VffAnsatz::zeros(n, 0, l, Topology::Linear, 1.0)).unwrap(), Topology::Linear);
        let want: usize = (1..l).map(|d| n - d).sum();
        prop_assert_eq!(census.zz, want);
        prop_assert_eq!(census.rz, n);
        prop_assert!(census.max_locality <= n);
    }

    #[test]
    fn quadratic_synthetic_trace_gives_slope(k in 1e-4..1e-2f64, curv in -1e-7..1e-7f64) {
        let times: Vec<f64> = (0..=100).map(f64::from).collect();
        let p0: Vec<f64> = times.iter().map(|t| 1.0 - k * t + curv * t * t).collect();
        let trace = PopulationTrace {
            p1_values: p0.iter().map(|p| 1.0 - p).collect(),
            norm_values: vec![1.0; times.len()],
            times,
            p0_values: p0,
            max_work_population: 0.0,
            dg: 0.0,
        };
        // OLS slope of t² on 0..=100 is 100, so the bias is exactly −100·curv.
        let r = extract_rate(&trace, 100.0).unwrap();
        prop_assert!((r.k - (k - 100.0 * curv)).abs() < 1e-12);
    }
}

#[test]
fn synthetic_curvature_shifts_rate_by_under_one_percent() {
    let times: Vec<f64> = (0..=100).map(f64::from).collect();
    let p0: Vec<f64> = times.iter().map(|t| 1.0 - 0.002 * t + 1e-7 * t * t).collect();
    let trace = PopulationTrace {
        p1_values: p0.iter().map(|p| 1.0 - p).collect(),
        norm_values: vec![1.0; times.len()],
        times,
        p0_values: p0,
        max_work_population: 0.0,
        dg: 0.0,
    };
    let k = extract_rate(&trace, 100.0).unwrap().k;
    assert!((k - 0.002).abs() < 0.01 * 0.002, "{k}");
}

#[test]
fn position_grid_is_uniform() {
    let g = GridSpec::new(6, 20.0).unwrap();
    let xs: Vec<f64> = (0..g.points()).map(|k| vffcomp_core::grid::position_of_index(&g, k).unwrap()).collect();
    assert_eq!(xs[0], 0.0);
    assert!((xs[63] - (20.0 - g.delta())).abs() < 1e-12);
    assert!(xs.windows(2).all(|w| (w[1] - w[0] - g.delta()).abs() < 1e-12));
}
