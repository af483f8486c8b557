use cubic_pgl::paper_tables::check_q;

fn main() -> cubic_pgl::Result<()> {
    for q in [27, 25] {
        let (tables, reps) = check_q(q)?;
        for t in tables {
            let ok = t.rows.iter().filter(|r| r.matches).count();
            println!("{}: {ok}/{} rows reproduced", t.table, t.rows.len());
        }
        for c in reps {
            println!("  {} {}: {}", c.function, c.claim, if c.holds { "holds" } else { "fails" });
        }
    }
    Ok(())
}
