use std::path::PathBuf;

use nonperiod::io::{load_cache, load_domain, save_cache, save_domain, serialize_domain};
use nonperiod::semialg::riemann_volume;
use nonperiod::{Code, Decoder};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn fixtures_are_normalised() {
    for name in ["disc.json", "log2.json", "interval.json"] {
        let d = load_domain(&fixture(name)).unwrap();
        let text = serialize_domain(&d);
        let reparsed = nonperiod::io::parse_domain(&text).unwrap();
        assert_eq!(reparsed, d, "{name}");
        assert_eq!(serialize_domain(&reparsed), text, "{name}");
    }
}

#[test]
fn domain_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = load_domain(&fixture("disc.json")).unwrap();
    let path = dir.path().join("disc.json");
    save_domain(&path, &d).unwrap();
    let back = load_domain(&path).unwrap();
    assert_eq!(back, d);
    assert_eq!(riemann_volume(&back, 16, 6).unwrap(), riemann_volume(&d, 16, 6).unwrap());
}

#[test]
fn load_errors_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"dim\": 1,\n\"box_scale\": \"1\",\n\"polynomials\": [{\"terms\": [{\"coeff\": \"1\", \"exponents\": [1, 1]}]}]}").unwrap();
    let e = load_domain(&path).unwrap_err().to_string();
    assert!(e.contains("bad.json") && e.contains("dimension mismatch"), "{e}");
    assert!(load_domain(&dir.path().join("missing.json")).unwrap_err().to_string().contains("missing.json"));
}

#[test]
fn cache_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let d = Decoder::default();
    for e in 0..1000 {
        d.decode(Code(e));
    }
    save_cache(&path, &d).unwrap();
    let back = load_cache(&path).unwrap();
    assert_eq!(back.cached_codes(), d.cached_codes());
    for e in 0..1000 {
        let (a, b) = (back.decode(Code(e)), d.decode(Code(e)));
        assert_eq!(a, b, "code {e}");
        assert_eq!(a.render(false), b.render(false));
    }
}
