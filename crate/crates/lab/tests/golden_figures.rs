use std::path::Path;

use milburn_core::par::Exec;
use milburn_lab::figures::render_figure;

#[test]
fn figure_series_regenerate_byte_identically() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut checked = 0;
    for n in 1..=5 {
        for (panel, text) in render_figure(n, Exec::default()).unwrap() {
            let path = dir.join(panel.file_name());
            let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert!(text == want, "{} differs from the regenerated series", path.display());
            checked += 1;
        }
    }
    assert_eq!(checked, 17);
}

#[test]
fn sequential_and_parallel_agree() {
    let a = render_figure(4, Exec::Sequential).unwrap();
    let b = render_figure(4, Exec::Parallel).unwrap();
    for ((_, x), (_, y)) in a.iter().zip(&b) {
        assert_eq!(x, y);
    }
}
