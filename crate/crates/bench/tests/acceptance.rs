//! Full acceptance suite: one line per criterion, then a single verdict.

use moea_bench::acceptance::{run_all, Scale};

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let results = run_all(Scale::full(), dir.path(), jobs, &mut |r| println!("{r}")).unwrap();
    assert_eq!(results.len(), 8);
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
