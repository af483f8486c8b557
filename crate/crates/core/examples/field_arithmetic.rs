use cubic_pgl::FieldCtx;

fn main() -> cubic_pgl::Result<()> {
    let f27 = FieldCtx::new(3, 3, Some(&[1, 2, 0, 1]))?;
    let a = f27.parse_elem("[0,1,0]")?;
    let b = f27.add(f27.powu(a, 5), f27.one());
    println!("α⁵ + 1 = {} = {}", f27.format_elem(b), f27.format_alpha(b));
    println!("(α⁵ + 1)⁻¹ = {}", f27.format_alpha(f27.inv(b).unwrap()));
    println!("is a square: {}", f27.is_square(b)?);
    let f16 = FieldCtx::new(2, 4, None)?;
    let traces: Vec<u8> = f16.elements().map(|x| f16.trace_q_over_2(x).unwrap()).collect();
    println!("absolute traces over F_16: {traces:?}");
    let f7 = FieldCtx::prime(7)?;
    println!("cube transversal of F_7*: {:?}", f7.cube_transversal().iter().map(|&x| f7.format_elem(x)).collect::<Vec<_>>());
    Ok(())
}
