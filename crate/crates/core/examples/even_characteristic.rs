use cubic_pgl::paper_tables::even_table;
use cubic_pgl::FieldCtx;

fn main() -> cubic_pgl::Result<()> {
    for n in [2, 3] {
        let ctx = FieldCtx::new(2, n, None)?;
        println!("F_{}:", ctx.q());
        for c in even_table(&ctx)? {
            println!("  ({}) {} {} -> {}", c.row, c.function, c.claim, if c.holds { "confirmed" } else { "refuted" });
        }
    }
    Ok(())
}
