// Running the diagonal-set property suite programmatically.

use symprod::lemmas::{run_suite, SuiteConfig};

pub fn run_example() -> symprod::Result<()> {
    let config = SuiteConfig::new(2, 5, 50, 42)?;
    let report = run_suite(&config)?;
    print!("{report}");
    assert!(report.all_passed());
    Ok(())
}

fn main() {
    run_example().expect("lemma suite example failed");
}
