// Reading a JSON-lines field, lifting it, and writing the result.

use symprod::field_file::FieldFile;
use symprod::selection::{continuity_report, lift_field};

const INPUT: &str = r#"{"meta": {"m": 2, "n": 3, "adjacency": [[0, 1], [1, 2], [2, 3], [3, 0]]}}
{"point": [0, 0], "tuple": [0.5, -1, 2]}
{"point": [1, 0], "tuple": [2.25, 0.25, -1]}
{"point": [1, 1], "tuple": [-0.75, 2, 0.25]}
{"point": [0, 1], "tuple": [0.5, 2, -0.5]}
"#;

pub fn run_example() -> symprod::Result<()> {
    let file = FieldFile::parse_jsonl(INPUT)?;
    let phi = file.to_sampled_field()?;
    let lifted = lift_field(&phi);
    let report = continuity_report(&lifted, &phi)?;
    let text = FieldFile::from_lifted(&lifted, file.adjacency.clone()).to_jsonl();
    print!("{text}");
    println!("max ratio {} at edge {:?}", report.max_ratio, report.worst_edge);

    // the written file lifts to itself
    let again = FieldFile::parse_jsonl(&text)?;
    let relifted = lift_field(&again.to_sampled_field()?);
    assert_eq!(FieldFile::from_lifted(&relifted, again.adjacency.clone()).to_jsonl(), text);
    Ok(())
}

fn main() {
    run_example().expect("field file example failed");
}
