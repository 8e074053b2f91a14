//! Coherence of `|+⟩` and of a random qutrit under full dephasing.

use resource_measures::{closed_form_measure, dephasing, random_density_matrix, DensityMatrix, TsallisOrder};

fn main() -> resource_measures::Result<()> {
    let plus = DensityMatrix::uniform_superposition(2);
    let map = dephasing(2)?;
    println!("|+> under {}", map.label());
    for a in [0.5, 1.0, 2.0] {
        let report = closed_form_measure(&plus, &map, TsallisOrder::new(a)?)?;
        println!("  a = {a:<4} value = {:.12}  N = {:.12}", report.value, report.trace_term);
    }

    let rho = random_density_matrix(3, 3, 7)?;
    let map = dephasing(3)?;
    let report = closed_form_measure(&rho, &map, TsallisOrder::new(0.5)?)?;
    println!("random qutrit, a = 0.5: value = {:.12}", report.value);
    println!("closest incoherent state (diagonal):");
    for i in 0..3 {
        println!("  {:.12}", report.sigma_star.matrix()[(i, i)].re);
    }
    println!("fixed-point residual = {:.3e}", report.fixed_point_residual);
    Ok(())
}
