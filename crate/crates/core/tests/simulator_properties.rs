use num_complex::Complex64;
use proptest::prelude::*;
use spin1_core::dense::{gate_matrix, state_vector, unitary_of};
use spin1_core::sampling::{estimate_expectation_from_shots, sample_z_measurements};
use spin1_core::{Circuit, Gate, Pauli, PauliObservable, PauliTerm, QuantumState};

fn gate_strategy(num_qubits: usize) -> impl Strategy<Value = Gate> {
    let q = 0..num_qubits;
    let angle = -10.0f64..10.0;
    let pair = (0..num_qubits, 0..num_qubits).prop_filter("distinct", |(a, b)| a != b);
    prop_oneof![
        q.clone().prop_map(Gate::H),
        q.clone().prop_map(Gate::X),
        q.clone().prop_map(Gate::Y),
        q.clone().prop_map(Gate::Z),
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::P(q, a)),
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::RX(q, a)),
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::RY(q, a)),
        (q, angle).prop_map(|(q, a)| Gate::RZ(q, a)),
        pair.clone()
            .prop_map(|(control, target)| Gate::CNOT { control, target }),
        pair.prop_map(|(a, b)| Gate::CZ(a, b)),
    ]
}

fn circuit_strategy() -> impl Strategy<Value = Circuit> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(gate_strategy(n), 0..=100).prop_map(move |gates| {
            let mut c = Circuit::new(n).unwrap();
            c.extend(gates).unwrap();
            c
        })
    })
}

fn random_state(num_qubits: usize) -> impl Strategy<Value = QuantumState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << num_qubits)
        .prop_filter("non-zero", |v| {
            v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
        })
        .prop_map(|v| {
            QuantumState::from_amplitudes(
                v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_preserved(circuit in circuit_strategy()) {
        let mut s = QuantumState::zero(circuit.num_qubits()).unwrap();
        s.apply_circuit(&circuit).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kernel_matches_dense_matrix(
        (state, gate) in (2usize..=4).prop_flat_map(|n| (random_state(n), gate_strategy(n)))
    ) {
        let n = state.num_qubits();
        let expected = gate_matrix(&gate, n).unwrap() * state_vector(&state);
        let mut s = state.clone();
        s.apply_gate(&gate).unwrap();
        let got = state_vector(&s);
        let dev = (got - expected).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(dev < 1e-12, "deviation {dev:e} for {gate}");
    }

    #[test]
    fn circuit_kernel_matches_unitary(circuit in circuit_strategy()) {
        let n = circuit.num_qubits();
        let mut s = QuantumState::zero(n).unwrap();
        s.apply_circuit(&circuit).unwrap();
        let u = unitary_of(&circuit).unwrap();
        let column = u.column(0);
        let dev = s.amplitudes().iter().zip(column.iter())
            .map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(dev < 1e-10);
    }

    #[test]
    fn expectation_is_real_and_matches_dense(
        state in random_state(3),
        coeffs in prop::collection::vec(-2.0f64..2.0, 3),
    ) {
        let obs = PauliObservable::new(vec![
            PauliTerm::new(coeffs[0], &[(0, Pauli::X), (2, Pauli::Y)]),
            PauliTerm::new(coeffs[1], &[(1, Pauli::Z)]),
            PauliTerm::new(coeffs[2], &[(0, Pauli::Y), (1, Pauli::Y), (2, Pauli::Z)]),
        ]);
        let got = state.expectation(&obs).unwrap();
        let m = spin1_core::dense::observable_matrix(&obs, 3).unwrap();
        let v = state_vector(&state);
        let expected = (v.adjoint() * &m * &v)[(0, 0)];
        prop_assert!(expected.im.abs() < 1e-10);
        prop_assert!((got - expected.re).abs() < 1e-12);
    }
}

#[test]
fn shot_estimates_converge() {
    // Sampling consistency at 2^17 shots: |estimate − exact| < 4/√shots.
    let shots = 1u64 << 17;
    let bound = 4.0 / (shots as f64).sqrt();
    let obs = PauliObservable::new(vec![
        PauliTerm::new(0.5, &[(0, Pauli::Z)]),
        PauliTerm::new(0.5, &[(1, Pauli::Z)]),
    ]);
    let zz = PauliObservable::new(vec![PauliTerm::new(1.0, &[(0, Pauli::Z), (1, Pauli::Z)])]);
    for k in 0..10u64 {
        let mut s = QuantumState::zero(2).unwrap();
        let a = 0.3 + 0.7 * k as f64;
        s.apply_gate(&Gate::RY(0, a)).unwrap();
        s.apply_gate(&Gate::RX(1, 1.3 * a)).unwrap();
        s.apply_gate(&Gate::CNOT {
            control: 0,
            target: 1,
        })
        .unwrap();
        s.apply_gate(&Gate::RY(1, -0.4 * a)).unwrap();
        let r = sample_z_measurements(&s, shots, 1000 + k).unwrap();
        for o in [&obs, &zz] {
            let exact = s.expectation(o).unwrap();
            let est = estimate_expectation_from_shots(&r, o, false).unwrap();
            assert!((est - exact).abs() < bound, "k={k}: {est} vs {exact}");
        }
    }
}
