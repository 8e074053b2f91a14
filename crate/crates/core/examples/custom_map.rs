//! Maps read from JSON, including one that fails certification.

use resource_measures::io::{measure_report_json, parse_map, parse_state};
use resource_measures::{closed_form_measure, TsallisOrder};

const STATE: &str = r#"{"re": [[0.5, 0.5], [0.5, 0.5]]}"#;

// Dephasing written out as Kraus operators.
const PROJECTIVE: &str = r#"{"type": "kraus", "dim": 2, "operators": [
    {"re": [[1, 0], [0, 0]]},
    {"re": [[0, 0], [0, 1]]}
]}"#;

// Depolarizing with p = 0.5 is a unital channel but not idempotent.
const DEPOLARIZING: &str = r#"{"type": "kraus", "dim": 2, "operators": [
    {"re": [[0.7905694150420949, 0], [0, 0.7905694150420949]]},
    {"re": [[0, 0.3535533905932738], [0.3535533905932738, 0]]},
    {"re": [[0, 0], [0, 0]], "im": [[0, -0.3535533905932738], [0.3535533905932738, 0]]},
    {"re": [[0.3535533905932738, 0], [0, -0.3535533905932738]]}
]}"#;

fn main() -> resource_measures::Result<()> {
    let rho = parse_state(STATE)?;
    let map = parse_map(PROJECTIVE)?;
    let report = closed_form_measure(&rho, &map, TsallisOrder::new(2.0)?)?;
    println!("{}", measure_report_json(&report));

    match parse_map(DEPOLARIZING) {
        Ok(_) => println!("depolarizing map unexpectedly certified"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
