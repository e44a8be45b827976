use prefilter_core::harness::{
    bench_table, evaluate, generate_pairs, load_pairs, EditSpec, FilterKind, GeneratorConfig,
};
use prefilter_core::magnet::run_magnet;
use prefilter_core::neighborhood::build_map;
use prefilter_core::seq_codec::{decode, validate_and_encode};

fn config(seed: u64, count: usize, len: usize, edits: EditSpec) -> GeneratorConfig {
    GeneratorConfig {
        seed,
        count,
        len,
        edits,
    }
}

#[test]
fn tsv_roundtrip_preserves_pairs() {
    let ds = generate_pairs(&config(5, 200, 77, EditSpec::Uniform { lo: 0, hi: 9 })).unwrap();
    let tsv = ds.to_tsv();
    let back = load_pairs(tsv.as_bytes(), "mem").unwrap();
    assert_eq!(back.len(), ds.len());
    assert_eq!(back.m(), 77);
    for (a, b) in ds.pairs().iter().zip(back.pairs()) {
        assert_eq!(decode(&a.text), decode(&b.text));
        assert_eq!(decode(&a.pattern), decode(&b.pattern));
    }
    assert_eq!(back.to_tsv(), tsv);
}

#[test]
fn crlf_input_is_accepted() {
    let ds = load_pairs("ACGT\tACGA\r\nTTTT\tTTTT\r\n".as_bytes(), "crlf").unwrap();
    assert_eq!(ds.len(), 2);
    assert_eq!(ds.m(), 4);
}

#[test]
fn reports_are_consistent_across_filters() {
    let ds = generate_pairs(&config(9, 2_000, 100, EditSpec::Uniform { lo: 0, hi: 6 })).unwrap();
    let oracle = evaluate(&ds, 3, FilterKind::Oracle, 2).unwrap();
    assert_eq!(oracle.falsely_accepted + oracle.falsely_rejected, 0);
    for kind in [FilterKind::Shouji { width: 4 }, FilterKind::Magnet] {
        let report = evaluate(&ds, 3, kind, 2).unwrap();
        report.check_identities().unwrap();
        assert_eq!(report.total, 2_000);
        assert_eq!(report.oracle_accepted, oracle.oracle_accepted);
    }
}

#[test]
fn magnet_extractions_stay_inside_their_bounds() {
    let ds = generate_pairs(&config(21, 300, 120, EditSpec::Uniform { lo: 0, hi: 12 })).unwrap();
    for pair in ds.pairs() {
        let run = run_magnet(&pair.pattern, &pair.text, 4).unwrap();
        assert!(run.extractions.len() <= 5);
        for x in &run.extractions {
            assert!(x.bounds.start <= x.start && x.start + x.len <= x.bounds.end);
            assert!(x.diagonal.unsigned_abs() <= 4);
        }
        let zeros = run.decision.bitvector.count_zeros();
        assert_eq!(zeros, run.extractions.iter().map(|x| x.len).sum::<usize>());
        assert_eq!(run.decision.accept, zeros + 4 >= 120);
    }
}

#[test]
fn map_of_identical_sequences_has_zero_main_diagonal() {
    let s = validate_and_encode(b"ACGTTGCAACGTAAACCCGGGTTT").unwrap();
    let map = build_map(&s, &s, 3).unwrap();
    assert_eq!(map.diagonal(0).count_ones(), 0);
}

#[test]
fn bench_rows_report_positive_throughput() {
    let small = generate_pairs(&config(2, 50, 200, EditSpec::Constant(2))).unwrap();
    let large = generate_pairs(&config(2, 50, 400, EditSpec::Constant(2))).unwrap();
    let rows = bench_table(&[(&small, 2), (&large, 2)], FilterKind::Shouji { width: 4 }, 3).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.median_secs > 0.0 && r.pairs_per_sec > 0.0));
    assert_eq!(rows[0].time_ratio, 1.0);
    assert!((rows[1].model_ratio - 2.0).abs() < 1e-9);
}
