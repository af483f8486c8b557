use cubic_pgl::projline::{cross_ratio, enumerate_pgl, s3_stabilizer};
use cubic_pgl::{FieldCtx, Moebius, ProjPoint};

fn main() -> cubic_pgl::Result<()> {
    let f7 = FieldCtx::prime(7)?;
    println!("|PGL(2,7)| = {}", enumerate_pgl(&f7).len());
    for m in s3_stabilizer(&f7) {
        println!("  stabilizer of {{0,1,∞}}: {}", m.display(&f7));
    }
    let pts = [2, 3, 5].map(|k| ProjPoint::Finite(f7.from_int(k)));
    let m = Moebius::from_three(&f7, pts[0], pts[1], pts[2])?;
    println!("0,1,∞ ↦ 2,3,5 via {}", m.display(&f7));
    let quad = [pts[0], pts[1], pts[2], ProjPoint::Infinity];
    println!("cross ratio (2,3,5,∞) = {}", f7.format_elem(cross_ratio(&f7, quad)?));
    Ok(())
}
