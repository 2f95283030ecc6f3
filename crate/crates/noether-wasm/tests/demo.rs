use noether_wasm::{chase_text, pyramid_text, snake_text};

const SNAKE: &str = include_str!("../../../fixtures/d8_snake.nf");

#[test]
fn chase_traces_every_node() {
    let out = chase_text(SNAKE, "", "bot", false).unwrap();
    assert_eq!(out.lines().count(), 5);
    assert!(out.ends_with("4 VB: {0}\n"));
    let back = chase_text(SNAKE, "delta", "top", true).unwrap();
    assert!(back.starts_with("0 VB: {0,1}\n"));
}

#[test]
fn pyramid_is_dot() {
    let dot = pyramid_text(SNAKE, "delta").unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("X_0_0"));
}

#[test]
fn snake_reports_orders() {
    let out = snake_text(SNAKE, "").unwrap();
    assert!(out.starts_with("ker(alpha): order 1\n"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn errors_are_text() {
    let e = chase_text("group G size 2 id 0\n", "", "bot", false).unwrap_err();
    assert!(e.starts_with("input:"), "{e}");
    assert!(chase_text(SNAKE, "nope", "bot", false).unwrap_err().contains("nope"));
}
