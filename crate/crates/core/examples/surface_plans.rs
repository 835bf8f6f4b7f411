//! Branching-data arithmetic: realizability checks and cover plans.

use foldcover::surface::{hurwitz_check, plan_cor1, plan_corm1, plan_very_technical, BranchingData, SurfaceSig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data: BranchingData = "base_genus=0 degree=4 cover_genus=1 (R1(1,3), R2(4), R3(4))".parse()?;
    println!("{data}: {:?}", hurwitz_check(&data)?);

    for (g, n) in [(1, 2), (0, 3), (0, 4), (2, 1)] {
        let plan = plan_cor1(&SurfaceSig::orientable(g, n))?;
        println!("cor1 on genus {g} with {n} boundaries: {}", plan.result);
    }

    let s = SurfaceSig::orientable(1, 1);
    let phi = plan_cor1(&s)?.result;
    let plan = plan_corm1(&s, &phi, 4)?;
    for stage in &plan.stages {
        println!("  {:<6} {}", stage.name, stage.data);
    }
    println!(
        "corM1 result: {} (identities hold: {})",
        plan.result,
        plan.arithmetic_ok()
    );

    let vt = plan_very_technical(&SurfaceSig::orientable(0, 3), 12)?;
    println!(
        "very technical on a pair of pants: M0 = {}, uniform plan degree {}, {} per-label plans",
        vt.m0,
        vt.theta.result.degree,
        vt.theta_i.len()
    );
    Ok(())
}
