// Double vs double-double kneading agreement at the c = 0 and c = 0.1 roots.
use lozi_lab::map::Params;
use lozi_lab::scalar::{DoubleDouble, Real};
use lozi_lab::solver::{solve_system, Region};
use lozi_lab::symbolic::{certified_length, kneading_sequence};

fn run(c: f64) {
    let report = solve_system::<f64>(c, Region::new(1.0, 2.0, 0.0, 1.0), 1e-12).unwrap();
    let vp64 = Params::new(report.a, report.b, c).validated_relaxed().unwrap();
    let seq64 = kneading_sequence(&vp64, 1, 60).unwrap();

    // Same f64 parameter values, widened exactly.
    let params_dd: Params<DoubleDouble> = Params::from_f64(report.a, report.b, c);
    let vp_dd = params_dd.validated_relaxed().unwrap();
    let seq_dd = kneading_sequence(&vp_dd, 1, 60).unwrap();

    println!("c = {c}");
    println!("  f64 certified length: {}", certified_length::<f64>(&Params::new(report.a, report.b, c)));
    println!("  dd  certified length: {}", certified_length::<DoubleDouble>(&params_dd));
    println!("  f64: {seq64}");
    println!("  dd : {seq_dd}");
    let mut first_diff = None;
    for i in 0..60 {
        if seq64.symbols[i] != seq_dd.symbols[i] {
            first_diff = Some(i);
            break;
        }
    }
    println!("  first difference: {first_diff:?}");

    // Also solve in double-double directly to see the achievable residuals.
    let dd_report = solve_system(DoubleDouble::from_f64(c), Region::new(1.0, 2.0, 0.0, 1.0), 1e-25).unwrap();
    println!(
        "  dd solve: a = {}  b = {}  r = ({:e}, {:e})",
        dd_report.a,
        dd_report.b,
        dd_report.r1.to_f64(),
        dd_report.r2.to_f64()
    );
}

fn main() {
    run(0.0);
    run(0.1);
}
