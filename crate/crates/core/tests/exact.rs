use rellich_core::exact::{parse_decimal, parse_rational, to_f64, Exact};
use rellich_core::poly::{int, rat};

#[test]
fn rational_literals() {
    assert_eq!(parse_rational("3"), Some(int(3)));
    assert_eq!(parse_rational(" -1/2 "), Some(rat(-1, 2)));
    assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
    for bad in ["", "1/0", "0.5", "a/b", "1/2/3"] {
        assert_eq!(parse_rational(bad), None, "{bad}");
    }
}

#[test]
fn decimal_literals() {
    assert_eq!(parse_decimal("0.5"), Some(rat(1, 2)));
    assert_eq!(parse_decimal("-1.25"), Some(rat(-5, 4)));
    assert_eq!(parse_decimal("+.5"), Some(rat(1, 2)));
    assert_eq!(parse_decimal("2."), Some(int(2)));
    assert_eq!(parse_decimal("1e3"), Some(int(1000)));
    assert_eq!(parse_decimal("25E-2"), Some(rat(1, 4)));
    assert_eq!(parse_decimal("0.1"), Some(rat(1, 10)));
    for bad in ["", ".", "-", "1e", "e5", "1.2.3", "1,5", "0x10", "1e99999"] {
        assert_eq!(parse_decimal(bad), None, "{bad}");
    }
}

#[test]
fn exact_serializes_both_forms() {
    let v = serde_json::to_value(Exact(rat(25, 36))).unwrap();
    assert_eq!(v["exact"], "25/36");
    assert_eq!(v["approx"].as_f64().unwrap(), 25.0 / 36.0);
    assert_eq!(to_f64(&rat(-3, 8)), -0.375);
}
