//! Region counts of the classical deformations of the braid arrangement and
//! of their threshold analogues.

use gainsign::arrangement::{
    build_arrangement, chromatic_polynomials, count_regions, enumerate_cells, generate_family, Family, FamilySpec,
};
use gainsign::matroid::Budget;

fn main() {
    let budget = Budget::default();
    for family in [Family::Shi, Family::Catalan, Family::Linial, Family::ShiThreshold, Family::CatalanThreshold] {
        for n in 2..=3 {
            let u = generate_family(&FamilySpec::new(family, n)).unwrap();
            let p = chromatic_polynomials(&u, &budget).unwrap();
            let r = count_regions(&u, &budget).unwrap();
            println!("{family} n={n}: χ^b = {}, {} regions, {} bounded", p.chi_balanced, r.regions, r.bounded);
            if n == 2 {
                let cells = enumerate_cells(&build_arrangement(&u), n).unwrap();
                println!("    cell enumeration: {} regions, {} bounded", cells.regions, cells.bounded);
            }
        }
    }
    let g = generate_family(&FamilySpec::new(Family::GeneralizedThreshold, 3).window(1, 1)).unwrap();
    println!("generalized threshold [-1, 1], n=3: {} regions", count_regions(&g, &budget).unwrap().regions);
}
