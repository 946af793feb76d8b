//! Bounded addition, scalar product and the natural preorder on L_3.

use ndagg::semivector::{natural_preorder_witness, scalar_mul, vec_add};
use ndagg::{NDimInterval, UnitValue};

fn main() -> ndagg::Result<()> {
    let x = NDimInterval::new(vec![0.2, 0.5, 0.8])?;
    let y = NDimInterval::new(vec![0.3, 0.6, 0.6])?;

    let sum = vec_add(&x, &y)?;
    println!("x + y = {:?}", sum.components());
    println!("0.5 * x = {:?}", scalar_mul(UnitValue::new(0.5)?, &x).components());

    match natural_preorder_witness(&x, &sum)? {
        Some(z) => println!("x <=_L x+y, witnessed by z = {:?}", z.components()),
        None => println!("x is not below x+y"),
    }
    // (0.1, 0.9) to (0.5, 0.95) would need z = (0.4, 0.05), which is not sorted
    let a = NDimInterval::new(vec![0.1, 0.9])?;
    let b = NDimInterval::new(vec![0.5, 0.95])?;
    println!("(0.1,0.9) <=_L (0.5,0.95): {}", natural_preorder_witness(&a, &b)?.is_some());
    Ok(())
}
