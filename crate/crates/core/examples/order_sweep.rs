//! The measure as a function of the order `a`, printed as CSV.

use resource_measures::io::sweep_csv;
use resource_measures::{closed_form_measure, dephasing, random_density_matrix, TsallisOrder};

fn main() -> resource_measures::Result<()> {
    let rho = random_density_matrix(4, 2, 9)?;
    let map = dephasing(4)?;
    let rows = (1..=20)
        .map(|k| TsallisOrder::new(0.1 * k as f64).and_then(|a| closed_form_measure(&rho, &map, a)))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", sweep_csv(&rows));
    Ok(())
}
