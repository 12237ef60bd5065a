// End-to-end kneading diagnostics at both solved parameter sets.
use lozi_lab::geometry::{distinguished_points, turning_points};
use lozi_lab::map::{eval, Params, PlanePoint};
use lozi_lab::solver::{solve_system, Region};
use lozi_lab::symbolic::{compare_sequences, itinerary, kneading_sequence};

fn run(c: f64) {
    println!("=== c = {c} ===");
    let report = solve_system::<f64>(c, Region::new(1.0, 2.0, 0.0, 1.0), 1e-12).unwrap();
    println!("a = {:.16}, b = {:.16} ({} iterations)", report.a, report.b, report.iterations);
    let params: Params<f64> = Params::new(report.a, report.b, c);
    let vp = params.validated_relaxed().unwrap();

    let tps = turning_points(&vp, 6).unwrap();
    for (i, tp) in tps.iter().enumerate() {
        println!("turning[{i}] = ({:+.12}, {:+.1e})", tp.x, tp.y);
    }

    let seq = kneading_sequence(&vp, 1, 17).unwrap();
    println!("S kneading 17: {seq} (reliable {})", seq.reliable_length);

    // Distance of F^14(S) from the divider.
    let s = tps[1];
    let mut p = s;
    for _ in 0..14 {
        p = eval(&vp, p);
    }
    println!("|x(F^14(S))| = {:.6e}", p.x.abs());

    // Extreme kneading sequences.
    let fd_seq = kneading_sequence(&vp, 0, 34).unwrap();
    println!("F(D) kneading 34: {fd_seq}");

    let dp = distinguished_points(&vp).unwrap();
    let fb_seq = itinerary(&vp, dp.fb, 34, 0).unwrap();
    println!("F(B) itinerary 34: {fb_seq}");

    let longer = kneading_sequence(&vp, 1, 60).unwrap();
    println!("S kneading 60: {longer}");
}

fn main() {
    run(0.0);
    run(0.1);

    // Mismatch index between the two S prefixes.
    let r0 = solve_system::<f64>(0.0, Region::new(1.0, 2.0, 0.0, 1.0), 1e-12).unwrap();
    let r1 = solve_system::<f64>(0.1, Region::new(1.0, 2.0, 0.0, 1.0), 1e-12).unwrap();
    let vp0 = Params::new(r0.a, r0.b, 0.0).validated_relaxed().unwrap();
    let vp1 = Params::new(r1.a, r1.b, 0.1).validated_relaxed().unwrap();
    let s0 = kneading_sequence(&vp0, 1, 17).unwrap();
    let s1 = kneading_sequence(&vp1, 1, 17).unwrap();
    println!("mismatch index: {:?}", compare_sequences(&s0, &s1));
    println!("paper c=0  : +--+++-+-+-+++-++");
    println!("ours  c=0  : {s0}");
    println!("paper c=0.1: +--+++-+-+-+++++-");
    println!("ours  c=0.1: {s1}");

    // Sanity on the seed geometry at c = 0.
    let dp = distinguished_points(&vp0).unwrap();
    let fm: PlanePoint<f64> = eval(&vp0, dp.m);
    println!("F(M) = ({:+.6}, {:+.6})", fm.x, fm.y);
}
