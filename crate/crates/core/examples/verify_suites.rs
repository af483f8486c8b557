use cubic_pgl::oracle::{verify_suite, VerifyOptions, SUITES};
use cubic_pgl::{Error, FieldCtx};

fn main() -> cubic_pgl::Result<()> {
    let f11 = FieldCtx::prime(11)?;
    for s in SUITES {
        match verify_suite(&f11, s, VerifyOptions::default()) {
            Ok(r) => print!("{}", r.text()),
            Err(Error::Excluded(why)) => println!("suite {s}: skipped ({why})"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
