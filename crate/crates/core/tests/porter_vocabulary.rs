use fuzzysum::preprocess::porter::stem;

// Word/stem pairs produced by an independent Porter implementation running
// the reference algorithm.
const VOCABULARY: &str = include_str!("data/porter_vocabulary.txt");

#[test]
fn matches_reference_vocabulary() {
    let mut mismatches = Vec::new();
    let mut total = 0;
    for line in VOCABULARY.lines() {
        let (word, expected) = line.split_once(' ').expect("`word stem` per line");
        total += 1;
        let got = stem(word);
        if got != expected {
            mismatches.push(format!("{word}: expected {expected}, got {got}"));
        }
    }
    assert!(total > 20_000);
    assert!(
        mismatches.is_empty(),
        "{} of {total} differ, first: {:?}",
        mismatches.len(),
        &mismatches[..mismatches.len().min(20)]
    );
}
