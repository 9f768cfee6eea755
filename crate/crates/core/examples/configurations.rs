//! Exact configurations: JSON round trip, minors, drop/project and ratios.

use grasslog::configspace::{AnyConfiguration, Configuration, GaussRat};

fn q(re: i64, im: i64) -> GaussRat {
    GaussRat::from_ints(re, 1, im, 1)
}

fn main() -> grasslog::Result<()> {
    let c = Configuration::new(
        3,
        vec![
            vec![q(1, 0), q(0, 0), q(0, 0)],
            vec![q(0, 0), q(1, 0), q(0, 0)],
            vec![q(0, 0), q(0, 0), q(1, 0)],
            vec![q(1, 0), q(1, 0), q(1, 0)],
            vec![q(1, 0), q(2, 1), q(-1, 3)],
            vec![q(2, -1), q(1, 1), q(3, 0)],
        ],
    )?;
    println!("generic: {}", c.is_generic());
    println!("Delta(3,4,5) = {}", c.delta(&[3, 4, 5])?);
    println!("triple-ratio argument = {}", c.triple_ratio_arg([0, 1, 2, 3, 4, 5])?);

    let dropped = c.drop(0)?;
    println!("drop l_0: {} covectors in dim {}", dropped.len(), dropped.dim());
    let projected = c.project(5)?;
    println!("project along l_5: {} covectors in dim {}", projected.len(), projected.dim());
    println!(
        "cross-ratio of the projection = {}",
        projected.select(&[0, 1, 2, 3])?.cross_ratio([0, 1, 2, 3])?
    );

    let json = AnyConfiguration::Exact(c.clone()).to_json().to_string();
    println!("{json}");
    let back = AnyConfiguration::from_json_str(&json)?;
    println!("round trip exact: {}", back == AnyConfiguration::Exact(c));
    Ok(())
}
