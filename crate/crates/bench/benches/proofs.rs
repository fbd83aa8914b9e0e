use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use uniprove::calculus::{proof_from_json, proof_to_json_string};
use uniprove::{
    check_proof, eliminate_contractions, expand_starred, parse_sequent, prove, prove_cstar, Mode, Proof, ProofClass,
    RuleId, SearchLimits, Side,
};

fn proof(text: &str, mode: Mode) -> Proof {
    let s = parse_sequent(text).unwrap();
    prove(&s, mode, &SearchLimits::default()).unwrap().proof().unwrap().clone()
}

/// Wrap every node in a contraction on its first antecedent formula.
fn contract_everywhere(p: &Proof) -> Proof {
    let mut node = p.clone();
    node.premises = p.premises.iter().map(contract_everywhere).collect();
    node.recompute_heights();
    let Some(f) = node.conclusion.ante().first().cloned() else { return node };
    let weakened = uniprove::weaken(&node, std::slice::from_ref(&f), &[]);
    Proof::infer(RuleId::ContrL, node.conclusion.clone(), Side::Ante, &f, vec![weakened])
}

fn proofs(c: &mut Criterion) {
    let big = proof("forall x. (p(x) | q) |- (forall x. p(x)) | q", Mode::Classical);
    c.bench_function("check/classical", |b| b.iter(|| check_proof(black_box(&big), &ProofClass::C, false).unwrap()));

    let json = proof_to_json_string(&big, &ProofClass::C);
    c.bench_function("json/round_trip", |b| {
        b.iter(|| proof_from_json(&proof_to_json_string(black_box(&big), &ProofClass::C)).unwrap())
    });
    c.bench_function("json/parse", |b| b.iter(|| proof_from_json(black_box(&json)).unwrap()));

    let s = parse_sequent("p & (q | s), (p => t) & (q => t) |- t & p").unwrap();
    let starred = prove_cstar(&s, &SearchLimits::default()).unwrap().proof().unwrap().clone();
    c.bench_function("expand_starred", |b| b.iter(|| expand_starred(black_box(&starred))));

    let decorated = contract_everywhere(&starred);
    c.bench_function("eliminate_contractions", |b| b.iter(|| eliminate_contractions(black_box(&decorated)).unwrap()));
}

criterion_group!(benches, proofs);
criterion_main!(benches);
