//! Dimensions of the homogeneous polynomial form spaces P, H, H' and H'' and the
//! isomorphism d: H''_{k,p} -> H'_{k-1,p+1}.

use steklov_forms::harmonic::{check_d_isomorphism, dimension_table};
use steklov_forms::Result;

fn main() -> Result<()> {
    let n = 2;
    println!("n = {n}");
    println!("{:>2} {:>2} {:>6} {:>6} {:>6} {:>6}", "k", "p", "P", "H", "H'", "H''");
    for row in dimension_table(n, 3)? {
        println!(
            "{:>2} {:>2} {:>6} {:>6} {:>6} {:>6}",
            row.k, row.p, row.dim_p, row.dim_h, row.dim_h_prime, row.dim_h_double_prime
        );
    }
    for k in 1..=3 {
        for p in 0..=n {
            println!("d: H''_{{{k},{p}}} -> H'_{{{},{}}} bijective: {}", k - 1, p + 1, check_d_isomorphism(n, k, p)?);
        }
    }
    Ok(())
}
