// Scratch diagnostics for the bracket search.
use lozi_lab::solver::{sign_grid, GridSize, Region};

fn main() {
    for n in [64usize, 100, 128] {
        let grid = sign_grid(0.1f64, Region::new(1.0, 2.0, 0.0, 1.0), GridSize { na: n, nb: n })
            .unwrap();
        let comps = grid.sign_change_components();
        println!("grid {n}x{n}: {} components", comps.len());
        for c in &comps {
            let (ia, ib) = c[0];
            let cell = grid.cell(ia, ib);
            println!(
                "  first cell a={:.4} b={:.4} r1={:+.3e} r2={:+.3e} size={}",
                cell.a,
                cell.b,
                cell.r1,
                cell.r2,
                c.len()
            );
        }
        let valid = grid.cells.iter().filter(|c| c.computable).count();
        println!("  valid cells: {valid}/{}", grid.cells.len());
    }
}
