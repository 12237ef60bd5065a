// Why does the c = 0.1 grid show no sign-change cells?
use lozi_lab::conditions::check_assumptions;
use lozi_lab::map::Params;
use lozi_lab::solver::{residual_f1, residual_f2};

fn main() {
    let a0 = 1.63537454884191587958622457986;
    let b0 = 0.276988367360779957370639853557;
    // Walk a small cross around the root and print validity/signs.
    for (da, db) in [
        (0.0, 0.0),
        (0.02, 0.0),
        (-0.02, 0.0),
        (0.0, 0.02),
        (0.0, -0.02),
        (0.05, 0.05),
        (-0.05, -0.05),
    ] {
        let params: Params<f64> = Params::from_f64(a0 + da, b0 + db, 0.1);
        let ass = check_assumptions(&params);
        let r1 = residual_f1(&params);
        let r2 = residual_f2(&params);
        println!(
            "a={:.4} b={:.4}: assumptions={} r1={:?} r2={:?}",
            params.a,
            params.b,
            ass.all_hold(),
            r1.map(|v| format!("{v:+.3e}")),
            r2.map(|v| format!("{v:+.3e}")),
        );
        if !ass.all_hold() {
            for e in &ass.entries {
                if !e.holds {
                    println!("   fails {} margin {:+.4e}", e.condition, e.margin);
                }
            }
        }
    }
}
