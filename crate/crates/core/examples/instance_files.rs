// Generating instances and round-tripping them through the JSON and text
// edge-list formats.

use bilingap::instances::{InstanceFamily, InstanceSpec};
use bilingap::io::{from_json, from_text, to_json, to_text};

pub fn run_example() -> bilingap::Result<()> {
    let spec = InstanceSpec {
        family: InstanceFamily::Cycle,
        n: 5,
        seed: None,
        signs: Some(vec![1.0, -1.0, 1.0, 1.0, -1.0]),
        path: None,
    };
    let g = spec.build()?;
    let text = to_text(&g);
    print!("{text}");
    println!("{}", to_json(&g));
    assert_eq!(from_text(&text)?, g);
    assert_eq!(from_json(&to_json(&g))?, g);

    let random = InstanceSpec {
        family: InstanceFamily::RandomPm1Complete,
        n: 6,
        seed: Some(42),
        signs: None,
        path: None,
    };
    let a = random.build()?;
    assert_eq!(a, random.build()?, "same seed, same instance");
    println!("K6 seed 42: {} edges, sum {}", a.num_edges(), a.gamma_weight(a.vertices())?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("instance_files example failed");
}
