//! Defining a group in TOML, closing it and checking it is Bieberbach.

use flatspec::bieberbach::{diagonal_status, is_orientable};
use flatspec::group_file::GroupDefinition;
use flatspec::spectrum::betti_numbers;

const DICOSM: &str = r#"
name = "z2_squared_3d"
dimension = 3
description = "3-dimensional flat manifold with holonomy Z_2^2"

[[generator]]
matrix = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
translation = ["1/2", "1/2", "0"]

[[generator]]
matrix = [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]
translation = ["0", "1/2", "1/2"]
"#;

fn main() -> flatspec::Result<()> {
    let def = GroupDefinition::parse(DICOSM)?;
    let g = def.build_bieberbach()?;
    println!("{}: |F| = {}, orientable {}, {:?}", def.name, g.holonomy_order(), is_orientable(&g), diagonal_status(&g));
    println!("betti numbers {:?}", betti_numbers(&g));
    print!("{}", def.emit());
    let torsion = GroupDefinition::parse("name = \"mirror\"\ndimension = 1\n[[generator]]\nmatrix = [[-1]]\ntranslation = [\"0\"]\n")?;
    println!("mirror: {}", torsion.build_bieberbach().err().map(|e| e.to_string()).unwrap_or_default());
    Ok(())
}
