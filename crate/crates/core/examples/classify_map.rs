use cubic_pgl::classify::classify;
use cubic_pgl::{FieldCtx, RatFun};

fn main() -> cubic_pgl::Result<()> {
    let f5 = FieldCtx::prime(5)?;
    for lit in ["0,0,0,1", "1,0,0,1/0,1", "2,1,0,1/0,4,1", "1,2,0,1/0,4,1", "3,1,4,2/1,0,1"] {
        let f = RatFun::parse(&f5, lit)?;
        println!("{:<32} {:?} {}", f.display(&f5), f.coarse_class(&f5)?, classify(&f5, &f)?.display(&f5));
    }
    Ok(())
}
