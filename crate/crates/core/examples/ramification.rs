use cubic_pgl::ramify::{ram_points, ram_type, type_of};
use cubic_pgl::{FieldCtx, RatFun};

fn main() -> cubic_pgl::Result<()> {
    for (q, lit) in [(5, "1,2,0,1/0,4,1"), (3, "1,0,0,1/0,2,1"), (7, "0,0,0,1"), (13, "1,3,0,1/0,12,1")] {
        let ctx = FieldCtx::prime(q)?;
        let f = RatFun::parse(&ctx, lit)?;
        let pts = ram_points(&ctx, &f)?;
        println!("F_{q}: {} has {} ramification points, type {}", f.display(&ctx), pts.len(), type_of(&pts));
        assert_eq!(type_of(&pts), ram_type(&ctx, &f)?);
    }
    Ok(())
}
