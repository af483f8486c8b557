use cubic_pgl::invariants::{fst_ram_type, lambda_cr, mu_squared, omega, quad_pair, subclass, theta, Subclass};
use cubic_pgl::FieldCtx;

fn main() -> cubic_pgl::Result<()> {
    let f11 = FieldCtx::prime(11)?;
    for sp in omega(&f11).into_iter().step_by(9) {
        let sub = subclass(&f11, sp);
        let mut line = format!("{:<10} {:<10} θ={:<3}", sp.format(&f11), sub.to_string(), f11.format_elem(theta(&f11, sp)));
        if sub == Subclass::IIIb {
            let m = mu_squared(&f11, &quad_pair(&f11, sp)?)?;
            line += &format!(" μ²={} λ={}", f11.format_elem(m), f11.format_elem(lambda_cr(&f11, sp)?));
        }
        println!("{line} {}", fst_ram_type(&f11, sp)?);
    }
    Ok(())
}
