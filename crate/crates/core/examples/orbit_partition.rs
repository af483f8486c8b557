use cubic_pgl::oracle::orbit_partition_fst;
use cubic_pgl::FieldCtx;

fn main() -> cubic_pgl::Result<()> {
    let f13 = FieldCtx::prime(13)?;
    let part = orbit_partition_fst(&f13)?;
    println!("{} Class III orbits over F_13", part.len());
    for o in &part.orbits {
        println!("  {:<22} {} members, first {}", o.label.display(&f13), o.members.len(), o.members[0].format(&f13));
    }
    Ok(())
}
