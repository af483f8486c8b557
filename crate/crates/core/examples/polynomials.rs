use cubic_pgl::{FieldCtx, Poly};

fn main() -> cubic_pgl::Result<()> {
    let f5 = FieldCtx::prime(5)?;
    let f = Poly::parse(&f5, "1,0,2,0,1")?;
    println!("f = {}", f.display(&f5));
    for (g, e) in f.factor(&f5)? {
        println!("  factor {} ^ {e}", g.display(&f5));
    }
    println!("disc f = {}", f5.format_elem(f.discriminant(&f5)?));
    let g = Poly::parse(&f5, "2,1,0,1")?;
    let (ext, roots) = g.roots_in_extension(&f5, 3)?;
    println!("roots of {} in F_125: {:?}", g.display(&f5), roots.iter().map(|&r| ext.big().format_alpha(r)).collect::<Vec<_>>());
    Ok(())
}
