use std::fs;
use std::path::Path;

use modal_dialectica::corpus::{self, GOLDEN_DIR};
use modal_dialectica::verify::Domain;

#[test]
fn corpus_matches_golden_files() {
    for cf in corpus::corpus() {
        let f = cf.parse().unwrap();
        let dom = corpus::file_domain(&f, &Domain::default());
        let runs = corpus::run_file(&f, Some(&dom));
        for r in &runs {
            assert!(r.as_expected(), "{}/{}:\n{r}", cf.name, r.name);
        }
        let path = Path::new(GOLDEN_DIR).join(format!("{}.txt", cf.name));
        let golden = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(corpus::golden_text(&runs), golden, "{}", cf.name);
    }
}

#[test]
fn integer_root_sample_is_the_least_root() {
    let f = corpus::corpus_file("introot").unwrap().parse().unwrap();
    let run = corpus::run_proof(&f, "introot", None).unwrap();
    let values = run.samples[0].as_ref().unwrap();
    // f y = 2y, m = 7: 2n <= 7 < 2(n + 1)
    assert_eq!(values[0].to_string(), "3");
}

#[test]
fn failing_proofs_report_their_restriction() {
    for (file, proof, want) in [
        ("s5_attempt", "s5", "BoxIntroViolation"),
        ("chainq", "chain_nocontract", "Multiplicity"),
        ("remark4", "undecidable_box", "ContractionUndecidable"),
    ] {
        let f = corpus::corpus_file(file).unwrap().parse().unwrap();
        let run = corpus::run_proof(&f, proof, None).unwrap();
        assert!(run.extraction.is_none());
        assert!(run.violations.iter().any(|v| v.restriction.name() == want), "{run}");
    }
}
