use fcg::simulator::{load_circuit, run_circuit, SimState};

fn run(circuit: &str, initial: &SimState) -> SimState {
    run_circuit(&load_circuit(circuit).unwrap(), initial).unwrap()
}

#[test]
fn cnot_fixture_makes_bell_state() {
    let initial = SimState::from_json(include_str!("../fixtures/cnot_input.json")).unwrap();
    let out = run(include_str!("../fixtures/cnot.json"), &initial);
    let p = out.probabilities();
    assert!((p[0] - 0.5).abs() < 1e-12);
    assert!((p[3] - 0.5).abs() < 1e-12);
    assert!(p[1] < 1e-24 && p[2] < 1e-24);
}

#[test]
fn or_fixtures_agree_on_every_basis_state() {
    let gates = include_str!("../fixtures/or_gates.json");
    let fcg = include_str!("../fixtures/or_fcg.json");
    for x in 0..4 {
        for s in 0..2 {
            let initial = SimState::basis(2, 1, x, s).unwrap();
            let a = run(gates, &initial);
            let b = run(fcg, &initial);
            let expected = 2 * x + (s ^ usize::from(x != 0));
            assert_eq!(a.probabilities()[expected], 1.0);
            assert_eq!(a.amplitudes(), b.amplitudes());
        }
    }
}

#[test]
fn if_fixture_splits_branches() {
    let out = run(include_str!("../fixtures/silq_if.json"), &SimState::basis(3, 2, 0, 0).unwrap());
    let amp = 1.0 / 8f64.sqrt();
    for x in 0..8 {
        let block = &out.amplitudes()[4 * x..4 * x + 4];
        if x == 0 {
            // H*H on |00>: uniform over the block.
            for z in block {
                assert!((z.re - amp * 0.5).abs() < 1e-12 && z.im.abs() < 1e-12);
            }
        } else {
            // X*X on |00>: all mass on |11>.
            assert!((block[3].re - amp).abs() < 1e-12);
            assert!(block[..3].iter().all(|z| z.norm() < 1e-12));
        }
    }
    let total: f64 = out.probabilities().iter().sum();
    assert!((total - 1.0).abs() < 1e-12);
}
