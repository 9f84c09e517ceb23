use polyternary::cli::{
    run, ExceptionsReport, HurwitzReport, LocalReport, RepresentReport, ThetaReport, WitnessesReport,
    EXIT_BAD_INPUT, EXIT_OK, EXIT_VERIFICATION_FAILED,
};
use polyternary::qseries::{rational, QSeries};
use polyternary::spinor_m14::{ProbeVerdict, SieveProbeReport, SiegelWeilReport};
use polyternary::witnesses::SurveyReport;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("polyternary").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Parses the JSON output as `T` and checks it serializes back to the same value.
fn round_trip<T: DeserializeOwned + Serialize>(args: &[&str]) -> T {
    let (code, out, err) = run_args(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    let parsed: T = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    let again: serde_json::Value = serde_json::to_value(&parsed).unwrap();
    let orig: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(again, orig, "{args:?}");
    parsed
}

#[test]
fn represent() {
    let r: RepresentReport = round_trip(&["represent", "14", "18"]);
    assert_eq!((r.count, r.exception, r.square_class_3), (0, true, true));
    let r: RepresentReport = round_trip(&["represent", "5", "18"]);
    assert!(r.count > 0 && !r.exception);
}

#[test]
fn exceptions_and_survey() {
    let r: ExceptionsReport = round_trip(&["exceptions", "8", "40"]);
    let ns: Vec<u64> = r.exceptions.iter().map(|e| e.n).collect();
    for n in [4, 12, 20, 28, 36] {
        assert!(ns.contains(&n));
    }
    let s: SurveyReport = round_trip(&["survey", "14", "3000"]);
    assert!(s.exceptions.iter().any(|e| e.n == 18 && e.square_class_3));
    let (code, csv, _) = run_args(&["--format", "csv", "survey", "14", "100"]);
    assert_eq!(code, EXIT_OK);
    assert!(csv.starts_with("n,ell,square_class_3\n"));
}

#[test]
fn theta_json_and_csv_agree() {
    let t: ThetaReport = round_trip(&["theta", "14", "600"]);
    assert_eq!((t.modulus, t.residues), (12, [5, 5, 5]));
    assert_eq!(t.series.coefficient(75).unwrap(), rational(1, 1));
    assert_eq!(t.series.coefficient(507).unwrap(), rational(0, 1));
    let (_, csv, _) = run_args(&["--format", "csv", "theta", "14", "600"]);
    assert!(csv.starts_with("exponent,numerator,denominator\n"));
    assert_eq!(QSeries::from_csv(600, &csv).unwrap(), t.series);
}

#[test]
fn siegel_weil_default_bound() {
    let r: SiegelWeilReport = round_trip(&["verify-siegel-weil"]);
    assert!(r.verified);
    assert_eq!(r.bound, 27_648);
    let r: SiegelWeilReport = round_trip(&["verify-siegel-weil", "--bound", "500"]);
    assert_eq!(r.coefficients_checked, 501);
}

#[test]
fn hurwitz() {
    let h: HurwitzReport = round_trip(&["hurwitz", "3"]);
    assert_eq!(h.value, rational(1, 3));
    let (_, out, _) = run_args(&["hurwitz", "3"]);
    assert!(out.contains("\"1/3\""));
    let (_, csv, _) = run_args(&["--format", "csv", "hurwitz", "75"]);
    assert_eq!(csv, "d,numerator,denominator\n75,7,3\n");
}

#[test]
fn witnesses() {
    let w: WitnessesReport = round_trip(&["witnesses", "14", "3"]);
    let pairs: Vec<(u64, u64)> = w.witnesses.iter().map(|w| (w.ell, w.n)).collect();
    assert_eq!(pairs, vec![(13, 18), (37, 168), (61, 462)]);
    let (code, _, _) = run_args(&["witnesses", "26", "4", "--prime-ceiling", "20"]);
    assert_eq!(code, EXIT_VERIFICATION_FAILED);
}

#[test]
fn local() {
    let r: LocalReport = round_trip(&["local", "8", "12"]);
    assert_eq!(r.mod8_obstruction, Some(4));
    assert_eq!(r.two_adic_surjective, None);
    assert_eq!(r.admissible, Some(false));
    assert_eq!(r.failing_primes, Some(vec![2]));
    let r: LocalReport = round_trip(&["local", "14"]);
    assert_eq!(r.two_adic_surjective, Some(true));
    assert_eq!(r.n, None);
    assert_eq!(r.primes.iter().map(|p| (p.p, p.k)).collect::<Vec<_>>(), vec![(2, 10), (3, 4)]);
}

#[test]
fn probe() {
    let r: SieveProbeReport = round_trip(&["probe-sieve-identity", "2000"]);
    assert_eq!(r.verdict, ProbeVerdict::NinthDilation);
    assert!(r.candidates[0].matches && !r.candidates[1].matches);
}

#[test]
fn bad_input() {
    for args in [
        &["represent", "2", "1"][..],
        &["exceptions", "14", "-3"],
        &["hurwitz", "0"],
        &["hurwitz", "6"],
        &["witnesses", "14", "0"],
        &["witnesses", "20", "1"],
        &["theta", "14", "999999999999"],
        &["--format", "xml", "hurwitz", "3"],
        &[],
    ] {
        let (code, _, err) = run_args(args);
        assert_eq!(code, EXIT_BAD_INPUT, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn output_independent_of_threads() {
    for args in [
        &["exceptions", "14", "20000"][..],
        &["theta", "26", "3000"],
        &["verify-siegel-weil", "--bound", "3000"],
        &["witnesses", "38", "5"],
        &["probe-sieve-identity", "3000"],
    ] {
        let one = run_args(&[&["--threads", "1"], args].concat());
        let four = run_args(&[&["--threads", "4"], args].concat());
        assert_eq!(one.0, EXIT_OK);
        assert_eq!(one, four, "{args:?}");
    }
}

#[test]
fn text_format() {
    let (code, out, _) = run_args(&["--format", "text", "represent", "14", "18"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("exception, square class 3"));
    let (_, out, _) = run_args(&["--format", "text", "verify-siegel-weil", "--bound", "300"]);
    assert!(out.starts_with("verified: 301 coefficients checked"));
}
