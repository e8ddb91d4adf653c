use nuqec::circuit::{parse_circuit, write_circuit, Angle, GadgetCircuit, Gate, GateKind};
use nuqec::clifford::{conjugate_by_gate, CliffordGate, CliffordKind};
use nuqec::code::{shared_decoder, Catalog};
use nuqec::dense::{clifford_kind_matrix, pauli_matrix};
use nuqec::symplectic::rank;
use nuqec::{Letter, PauliOperator, Phase};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::I), Just(Letter::X), Just(Letter::Y), Just(Letter::Z)]
}

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (prop::collection::vec(letter(), n), 0..4i64)
        .prop_map(|(ls, k)| PauliOperator::from_letters(Phase::from_exponent(k), &ls))
}

fn pauli_pair(max_n: usize) -> impl Strategy<Value = (PauliOperator, PauliOperator)> {
    (1..=max_n).prop_flat_map(|n| (pauli(n), pauli(n)))
}

fn pauli_triple(max_n: usize) -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
    (1..=max_n).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))
}

fn code_name() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("steane"), Just("five_qubit"), Just("five_prime"), Just("rm15")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn product_matches_dense((a, b) in pauli_pair(3)) {
        let ab = a.multiply(&b).unwrap();
        let dense = pauli_matrix(&a).mul(&pauli_matrix(&b));
        prop_assert!(pauli_matrix(&ab).max_abs_diff(&dense) < TOL);
    }

    #[test]
    fn commutation_matches_dense((a, b) in pauli_pair(3)) {
        let (ma, mb) = (pauli_matrix(&a), pauli_matrix(&b));
        let dense = ma.mul(&mb).max_abs_diff(&mb.mul(&ma)) < TOL;
        prop_assert_eq!(a.commutes(&b).unwrap(), dense);
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
    }

    #[test]
    fn product_is_associative((a, b, c) in pauli_triple(4)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(a in (1..6usize).prop_flat_map(pauli)) {
        let one = a.multiply(&a.inverse()).unwrap();
        prop_assert!(one.is_identity());
    }

    #[test]
    fn text_round_trips(a in (1..9usize).prop_flat_map(pauli)) {
        let back: PauliOperator = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn single_qubit_conjugation_matches_dense(p in pauli(1), i in 0..CliffordKind::SINGLE_QUBIT.len()) {
        let kind = CliffordKind::SINGLE_QUBIT[i];
        let out = conjugate_by_gate(&p, &CliffordGate::single(kind, 0)).unwrap();
        let u = clifford_kind_matrix(kind);
        let dense = u.mul(&pauli_matrix(&p)).mul(&u.adjoint());
        prop_assert!(pauli_matrix(&out).max_abs_diff(&dense) < TOL);
    }

    #[test]
    fn two_qubit_conjugation_matches_dense(p in pauli(2), cnot in any::<bool>()) {
        let kind = if cnot { CliffordKind::Cnot } else { CliffordKind::Cz };
        let out = conjugate_by_gate(&p, &CliffordGate::new(kind, &[0, 1]).unwrap()).unwrap();
        let u = clifford_kind_matrix(kind);
        let dense = u.mul(&pauli_matrix(&p)).mul(&u.adjoint());
        prop_assert!(pauli_matrix(&out).max_abs_diff(&dense) < TOL);
    }

    #[test]
    fn angle_arithmetic(a in -16i64..16, b in 1i64..9, c in -16i64..16, d in 1i64..9) {
        let x = Angle::pi_fraction(a, b);
        let y = Angle::pi_fraction(c, d);
        prop_assert!(x.add(x.neg()).is_zero());
        let product = x.phase() * y.phase();
        prop_assert!((x.add(y).phase() - product).norm() < TOL);
        let back: Angle = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rank_ignores_products(ops in (2..6usize).prop_flat_map(|n| prop::collection::vec(pauli(n), 1..6))) {
        let n = ops[0].n();
        let r = rank(n, &ops);
        let mut more = ops.clone();
        more.push(ops[0].multiply(ops.last().unwrap()).unwrap());
        prop_assert_eq!(rank(n, &more), r);
        prop_assert!(r <= ops.len().min(2 * n));
    }

    #[test]
    fn decoder_corrections_share_the_syndrome(name in code_name(), seed in prop::collection::vec(letter(), 15)) {
        let code = Catalog::builtin().get(name).unwrap();
        let n = code.n();
        let err = PauliOperator::from_letters(Phase::ONE, &seed[..n]);
        let dec = shared_decoder(&code).unwrap();
        let syndrome = code.syndrome(&err).unwrap();
        let correction = dec.decode(&syndrome).unwrap();
        prop_assert_eq!(code.syndrome(&correction).unwrap(), syndrome);
        let residual = dec.residual(&err).unwrap();
        if err.weight() <= 1 {
            prop_assert!(correction.weight() <= 1);
            prop_assert_eq!(residual, Letter::I);
        }
    }

    #[test]
    fn circuit_text_round_trips(spec in prop::collection::vec((0..6usize, 0..4usize, 0..4usize, 0..4usize, 1i64..9), 0..12)) {
        let gates: Vec<Gate> = spec
            .into_iter()
            .filter_map(|(kind, a, b, c, den)| {
                let (kind, qs): (GateKind, Vec<usize>) = match kind {
                    0 => (GateKind::H, vec![a]),
                    1 => (GateKind::T, vec![a]),
                    2 => (GateKind::K, vec![a]),
                    3 => (GateKind::Cnot, vec![a, b]),
                    4 => (GateKind::ZTheta(Angle::pi_fraction(1, den)), vec![a]),
                    _ => (GateKind::ckz(2, Angle::pi_fraction(1, den)), vec![a, b, c]),
                };
                Gate::new(kind, &qs).ok()
            })
            .collect();
        let c = GadgetCircuit::new("random", 4, 1, gates).unwrap();
        let back = parse_circuit(&write_circuit(&c), &Catalog::builtin()).unwrap();
        prop_assert_eq!(back.gates, c.gates);
        prop_assert_eq!(back.register_size, 4);
    }
}
