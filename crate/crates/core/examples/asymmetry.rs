//! Asymmetry with respect to a finite group: the cyclic shifts, and a user-supplied group.

use resource_measures::linalg::real_diagonal;
use resource_measures::{closed_form_measure, cyclic_twirl, random_density_matrix, twirling_map, TsallisOrder};

fn main() -> resource_measures::Result<()> {
    let rho = random_density_matrix(3, 2, 11)?;
    let shifts = cyclic_twirl(3)?;
    for a in [0.5, 1.0, 1.5] {
        let value = closed_form_measure(&rho, &shifts, TsallisOrder::new(a)?)?.value;
        println!("{} a = {a}: {value:.12}", shifts.label());
    }

    // Z2 acting by the parity operator diag(1, -1, 1): free states are block diagonal.
    let group = [real_diagonal(&[1.0, 1.0, 1.0]), real_diagonal(&[1.0, -1.0, 1.0])];
    let parity = twirling_map(&group)?.with_label("parity");
    let report = closed_form_measure(&rho, &parity, TsallisOrder::ENTROPY)?;
    println!("parity a = 1: {:.12}", report.value);
    println!("symmetrized state |(0,1)| = {:.1e}", report.sigma_star.matrix()[(0, 1)].norm());
    Ok(())
}
