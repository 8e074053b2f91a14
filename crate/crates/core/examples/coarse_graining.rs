//! Fine-grained dephasing against Lüders and modified coarse-grained measurements.

use resource_measures::{
    closed_form_measure, dephasing, lueders_map, modified_coarse_map, random_density_matrix, tsallis_relative_entropy,
    MeasurementPartition, TsallisOrder,
};

fn main() -> resource_measures::Result<()> {
    let partition = MeasurementPartition::new(4, vec![vec![0, 1], vec![2, 3]])?;
    let fine = dephasing(4)?;
    let lueders = lueders_map(&partition)?;
    let modified = modified_coarse_map(&partition)?;
    let rho = random_density_matrix(4, 4, 3)?;

    let composed = fine.channel().compose(modified.channel())?;
    println!("||Pi o Pi~ - Pi~|| = {:.1e}", composed.distance(modified.channel()));

    println!("{:>5} {:>16} {:>16} {:>16}", "a", "fine", "lueders", "modified");
    for a in [0.3, 0.5, 1.0, 1.5, 2.0] {
        let a = TsallisOrder::new(a)?;
        let row: Vec<f64> = [&fine, &lueders, &modified]
            .iter()
            .map(|map| closed_form_measure(&rho, map, a).map(|r| r.value))
            .collect::<Result<_, _>>()?;
        println!("{a:>5} {:>16.12} {:>16.12} {:>16.12}", row[0], row[1], row[2]);
    }

    let to_fine = tsallis_relative_entropy(&rho, &fine.apply(&rho)?, TsallisOrder::ENTROPY)?;
    let to_lueders = tsallis_relative_entropy(&rho, &lueders.apply(&rho)?, TsallisOrder::ENTROPY)?;
    println!("S(rho|Pi(rho)) = {to_fine:.12} >= S(rho|Pi_bar(rho)) = {to_lueders:.12}");
    Ok(())
}
