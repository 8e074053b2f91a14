//! Compares the closed form with a direct search over the free states.

use resource_measures::{
    closed_form_measure, dephasing, minimize_over_free_states, random_density_matrix, OracleConfig, TsallisOrder,
};

fn main() -> resource_measures::Result<()> {
    let rho = random_density_matrix(3, 3, 5)?;
    let map = dephasing(3)?;
    let config = OracleConfig { restarts: 5, ..OracleConfig::default() };
    for a in [0.3, 1.0, 2.0] {
        let a = TsallisOrder::new(a)?;
        let closed = closed_form_measure(&rho, &map, a)?;
        let found = minimize_over_free_states(&rho, &map, a, &config)?;
        println!(
            "a = {a}: closed form {:.12}  oracle {:.12}  gap {:+.2e}  agreeing restarts {}/{}  evaluations {}",
            closed.value,
            found.value,
            found.gap_to_closed_form,
            found.restarts_agreeing,
            config.restarts,
            found.evaluations
        );
    }
    Ok(())
}
