//! Regenerates `assets/terrain_2d.pgm` from the procedural canyon raster.
//!
//! cargo run -p relreg --example gen_terrain -- crates/core/assets/terrain_2d.pgm

use relreg::environment::canyon_raster;
use relreg::environment::TERRAIN_RASTER_SIZE;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "terrain_2d.pgm".to_owned());
    let grid = canyon_raster(TERRAIN_RASTER_SIZE)?;
    std::fs::write(&path, grid.to_pgm())?;
    println!("wrote {path} ({}x{})", grid.width(), grid.height());
    Ok(())
}
