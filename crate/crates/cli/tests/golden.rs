mod common;

#[test]
fn golden_outputs_reproduce() {
    let cases = common::cases();
    assert_eq!(cases.len(), 12);
    let failures: Vec<String> = cases.iter().filter_map(|c| common::check(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    for case in common::cases() {
        let a = langlands_cli::run(std::iter::once("langlands".to_string()).chain(case.args.clone()));
        let b = langlands_cli::run(std::iter::once("langlands".to_string()).chain(case.args.clone()));
        assert_eq!(a, b, "{}", case.name);
    }
}
