//! Under complete mixing the relative entropy measure is `ln d - S(ρ)`.

use resource_measures::measures::von_neumann_entropy;
use resource_measures::{closed_form_measure, mixing_map, random_density_matrix, TsallisOrder};

fn main() -> resource_measures::Result<()> {
    for d in 2..=5 {
        let map = mixing_map(d)?;
        let rho = random_density_matrix(d, d, d as u64)?;
        let value = closed_form_measure(&rho, &map, TsallisOrder::ENTROPY)?.value;
        let expected = (d as f64).ln() - von_neumann_entropy(&rho);
        println!("d = {d}: measure = {value:.12}  ln d - S = {expected:.12}  diff = {:.1e}", (value - expected).abs());
    }
    Ok(())
}
