//! Signed sums over permutations and free formal sums of symbols.

use grasslog::configspace::{alternate, permutations, FormalSum};
use num_rational::BigRational;

fn main() -> grasslog::Result<()> {
    let perms = permutations(4)?;
    println!(
        "S_4 has {} elements; the 5th is {:?} with sign {}",
        perms.len(),
        perms[4].images,
        perms[4].sign
    );

    // Alt of a constant vanishes; Alt of the sign reader gives n!
    let zero: f64 = alternate(4, |_| 1.0)?;
    let count: f64 = alternate(4, |p| if inversions(p).is_multiple_of(2) { 1.0 } else { -1.0 })?;
    println!("Alt(1) = {zero}, Alt(sgn) = {count}");

    // Vandermonde-style product sum_sigma sgn prod x_{sigma(i)}^i
    let x = [1.0f64, 2.0, 3.0, 5.0];
    let v: f64 = alternate(4, |p| p.iter().enumerate().map(|(i, &j)| x[j].powi(i as i32)).product())?;
    println!("Vandermonde = {v}");

    let mut s: FormalSum<&str> = FormalSum::symbol("{x}_3");
    s.add_term("{y}_3", BigRational::new(3.into(), 2.into()));
    let t = s.clone() - FormalSum::symbol("{x}_3");
    println!("terms: {}, coeff of {{y}}_3: {}", t.len(), t.coeff(&"{y}_3"));
    Ok(())
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}
