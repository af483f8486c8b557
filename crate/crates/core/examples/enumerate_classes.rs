use cubic_pgl::classify::{counts, representatives};
use cubic_pgl::FieldCtx;

fn main() -> cubic_pgl::Result<()> {
    let f9 = FieldCtx::new(3, 2, None)?;
    for (label, f) in representatives(&f9)? {
        println!("{:<24} {}", label.display(&f9), f.display(&f9));
    }
    println!("{}", counts(&f9));
    Ok(())
}
