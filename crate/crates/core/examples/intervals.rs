//! Building n-dimensional intervals and taking lattice bounds.

use ndagg::{lattice_inf, lattice_sup, NDimInterval, UnitValue};

fn main() -> ndagg::Result<()> {
    // σ sorts an arbitrary tuple of [0,1] values
    let x = NDimInterval::sigma(&[0.7, 0.2, 0.5])?;
    let y = NDimInterval::new(vec![0.1, 0.6, 0.6])?;
    println!("x = {:?}", x.components());
    println!("y = {:?}", y.components());
    println!("x <= y componentwise: {}", x.product_leq(&y)?);

    let inf = lattice_inf(&[x.clone(), y.clone()])?;
    let sup = lattice_sup(&[x, y])?;
    println!("inf = {:?}, sup = {:?}", inf.components(), sup.components());

    let half = NDimInterval::degenerate(UnitValue::new(0.5)?, 3)?;
    println!("/0.5/ = {:?}, degenerate: {}", half.components(), half.is_degenerate());

    if let Err(e) = NDimInterval::new(vec![0.4, 0.3]) {
        println!("rejected: {e}");
    }
    Ok(())
}
