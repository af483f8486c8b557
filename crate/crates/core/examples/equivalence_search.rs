use cubic_pgl::invariants::FstParams;
use cubic_pgl::oracle::{brute_equiv, equiv_witnesses};
use cubic_pgl::FieldCtx;

fn main() -> cubic_pgl::Result<()> {
    let f7 = FieldCtx::prime(7)?;
    let f = FstParams::from_ints(&f7, 2, 3)?.ratfun(&f7);
    let g = FstParams::from_ints(&f7, 2, -6)?.ratfun(&f7);
    match brute_equiv(&f7, &f, &g)? {
        Some((psi, phi)) => println!("{} = ψ∘({})∘φ with ψ = {}, φ = {}", g.display(&f7), f.display(&f7), psi.display(&f7), phi.display(&f7)),
        None => println!("not equivalent"),
    }
    println!("automorphism group order of f: {}", equiv_witnesses(&f7, &f, &f)?.len());
    Ok(())
}
