//! Acceptance suite: seven exact checks, one PASS/FAIL line each.
//!
//! Runs with `harness = false` so the summary lines are always printed.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use legendre_covers::freykani::{sextic_form, Check, CurvePoint, RamificationPattern};
use legendre_covers::moduli::{census, enumerate, Lambdas};
use legendre_covers::rng::Lcg64;
use legendre_covers::{
    build_cover_map, derive_params, verify_function_field, verify_identities, verify_ramification,
    z_locus, CoverParams, Field, FieldElement, Membership, ProjPoint, Sign,
};

/// Checks that only the documented skips appear, and only when their
/// trigger holds.
fn identities_clean(params: &CoverParams) -> Result<(), String> {
    let report = verify_identities(params);
    let f = params.field();
    for (name, check) in &report.checks {
        match check {
            Check::Pass => {}
            Check::Fail => return Err(format!("{name} failed at λ={} p1={}", params.lambda, params.p1)),
            Check::Skipped(_) => {
                let allowed = match name.as_str() {
                    "p3_from_g_at_one" => params.g0.is_zero(),
                    "p3_closed_form" => params.p1 == f.int(2),
                    "shift_by_lambda_numerator" => params.p3.is_infinity(),
                    "u_values" | "shifted_map_values" => params.membership != Membership::InModuli,
                    _ => false,
                };
                if !allowed {
                    return Err(format!("unexpected skip of {name} at λ={} p1={}", params.lambda, params.p1));
                }
            }
        }
    }
    Ok(())
}

fn draw_lambda(rng: &mut Lcg64, draw: impl Fn(&mut Lcg64) -> FieldElement) -> FieldElement {
    loop {
        let l = draw(rng);
        if !l.is_zero() && !l.is_one() {
            return l;
        }
    }
}

fn small_rational(q: Field, rng: &mut Lcg64) -> FieldElement {
    let n = rng.range_i64(-20, 20);
    let d = rng.range_i64(1, 20);
    q.ratio(n, d).unwrap()
}

fn criterion_1() -> Result<String, String> {
    let f = Field::prime(10007).unwrap();
    let mut rng = Lcg64::new(1);
    for _ in 0..500 {
        let l = draw_lambda(&mut rng, |r| f.int(r.below(10007) as i64));
        let p1 = f.int(rng.below(10007) as i64);
        identities_clean(&derive_params(&l, &p1).map_err(|e| e.to_string())?)?;
    }
    let q = Field::rationals();
    for _ in 0..100 {
        let l = draw_lambda(&mut rng, |r| small_rational(q, r));
        let p1 = small_rational(q, &mut rng);
        identities_clean(&derive_params(&l, &p1).map_err(|e| e.to_string())?)?;
    }
    Ok("500 over F10007, 100 over Q".into())
}

/// 200 admissible samples over 𝔽1009 plus three rational fibers.
///
/// 1007 = 19·53 is composite, so the prime field is taken at the next prime.
fn samples() -> Result<Vec<CoverParams>, String> {
    if Field::prime(1007).is_ok() {
        return Err("1007 accepted as a prime".into());
    }
    let f = Field::prime(1009).unwrap();
    let mut rng = Lcg64::new(2);
    let mut out = Vec::new();
    while out.len() < 200 {
        let l = draw_lambda(&mut rng, |r| f.int(r.below(1009) as i64));
        let p1 = f.int(rng.below(1009) as i64);
        let params = derive_params(&l, &p1).map_err(|e| e.to_string())?;
        if params.membership == Membership::InModuli {
            out.push(params);
        }
    }
    let q = Field::rationals();
    for p1 in ["5", "3/2", "0"] {
        out.push(derive_params(&q.int(3), &q.parse(p1).unwrap()).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// Square roots in 𝔽p by table lookup.
fn sqrt_table(p: u64) -> Vec<Option<u64>> {
    let mut t = vec![None; p as usize];
    for y in 0..p {
        t[((y * y) % p) as usize].get_or_insert(y);
    }
    t
}

fn criterion_2() -> Result<String, String> {
    let samples = samples()?;
    let roots = sqrt_table(1009);
    let mut points = 0;
    for params in &samples {
        for sign in [Sign::Plus, Sign::Minus] {
            if !verify_function_field(params, sign).map_err(|e| e.to_string())? {
                return Err(format!("identity fails at λ={} p1={} sign {sign:?}", params.lambda, params.p1));
            }
        }
        // pointwise: images of affine points of C lie on E
        if let Some(p) = params.field().modulus() {
            let cover = build_cover_map(params, Sign::Plus).map_err(|e| e.to_string())?;
            let e = cover.curve();
            let f = params.field();
            for x in (0..p).step_by(37) {
                let x = f.int(x as i64);
                let s = cover.sextic.affine().eval(&x);
                let Some(y) = roots[s.residue_value().unwrap() as usize] else { continue };
                let y = f.int(y as i64);
                match cover.image(&x, &y) {
                    CurvePoint::Origin => {}
                    CurvePoint::Affine(ex, ey) => {
                        if !e.contains(&ex, &ey) {
                            return Err(format!("image off the curve at λ={} p1={} x={x}", params.lambda, params.p1));
                        }
                    }
                }
                points += 1;
            }
        }
    }
    Ok(format!("{} samples, {points} curve points mapped", samples.len()))
}

fn criterion_3() -> Result<String, String> {
    let samples = samples()?;
    for params in &samples {
        let r = verify_ramification(params).map_err(|e| e.to_string())?;
        if !r.report.all_passed() {
            return Err(format!("{:?} at λ={} p1={}", r.report.failures(), params.lambda, params.p1));
        }
        if r.critical.total_degree() != 4 {
            return Err("critical divisor degree".into());
        }
        let f = params.field();
        let zero = ProjPoint::affine(f.zero());
        let one = ProjPoint::affine(f.one());
        let lam = ProjPoint::affine(params.lambda.clone());
        let three_halves = f.ratio(3, 2).unwrap();
        // the fourth branch point collides with 0, 1, λ at p₁ = 0, 3, 3/2
        let (pattern, merged, at) = if params.p1.is_zero() {
            (RamificationPattern::TripleOverZero, zero.clone(), zero)
        } else if params.p1 == f.int(3) {
            (RamificationPattern::TripleOverOne, one.clone(), one)
        } else if params.p1 == three_halves {
            (RamificationPattern::TripleOverLambda, lam, ProjPoint::infinity(f))
        } else {
            if r.pattern != RamificationPattern::Simple || r.branch.len() != 4 {
                return Err(format!("expected four branch points at λ={} p1={}", params.lambda, params.p1));
            }
            continue;
        };
        if r.pattern != pattern || params.zeta != merged || r.branch.len() != 3 || r.critical.multiplicity(&at) != 2 {
            return Err(format!("collision pattern wrong at λ={} p1={}", params.lambda, params.p1));
        }
    }
    Ok(format!("{} samples", samples.len()))
}

fn criterion_4() -> Result<String, String> {
    let f = Field::prime(101).unwrap();
    for l in 2..101 {
        let lambda = f.int(l);
        let z = z_locus(&lambda).map_err(|e| e.to_string())?;
        if !z.report.all_passed() {
            return Err(format!("λ={l}: {:?}", z.report.failures()));
        }
        // closed form of the discriminant: −314928·λ²(λ − 1)²
        let expect = f.int(-314928) * lambda.pow(2) * (&lambda - &f.one()).pow(2);
        if z.discriminant != expect {
            return Err(format!("λ={l}: discriminant {}", z.discriminant));
        }
    }
    Ok("99 values of λ over F101".into())
}

fn criterion_5() -> Result<String, String> {
    let p = 101i64;
    let f = Field::prime(p as u64).unwrap();
    let mut checked = 0;
    for l in 2..p {
        for t in (0..p).filter(|&t| t != 1 && t != 2) {
            let params = derive_params(&f.int(l), &f.int(t)).map_err(|e| e.to_string())?;
            // integer evaluation of (λ − 1)(2t − 3)³ + t³(t − 2)
            let quartic_ok = ((l - 1) * (2 * t - 3).pow(3) + t.pow(3) * (t - 2)).rem_euclid(p) != 0;
            let g = params.g();
            let g_ok = g.degree() == Some(3) && g.is_squarefree().map_err(|e| e.to_string())?;
            let sextic_ok = sextic_form(&params).is_squarefree().map_err(|e| e.to_string())?;
            let member = params.membership == Membership::InModuli;
            if !(quartic_ok == g_ok && g_ok == sextic_ok && sextic_ok == member) {
                return Err(format!("λ={l} p1={t}: quartic {quartic_ok}, g {g_ok}, sextic {sextic_ok}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs, zero exceptions"))
}

fn criterion_6() -> Result<String, String> {
    let f11 = Field::prime(11).unwrap();
    let r = enumerate(&f11.int(3)).map_err(|e| e.to_string())?;
    if r.count() != 9 {
        return Err(format!("F11 λ=3 count {}", r.count()));
    }
    let mut reports = 0;
    for p in [5u64, 7, 11, 13, 101] {
        let f = Field::prime(p).unwrap();
        for r in census(f, &Lambdas::All).map_err(|e| e.to_string())? {
            let l = r.lambda.residue_value().unwrap() as i64;
            let pi = p as i64;
            // independent scan over plain integers
            let q = |t: i64| ((l - 1) * (2 * t - 3).pow(3) + t.pow(3) * (t - 2)).rem_euclid(pi);
            let z = (0..pi).filter(|&t| q(t) == 0).count();
            if q(1) != (-l).rem_euclid(pi) || q(2) != (l - 1).rem_euclid(pi) {
                return Err(format!("p={p} λ={l}: base point values"));
            }
            if r.z_roots.len() != z || r.count() != p as usize - 2 - z {
                return Err(format!("p={p} λ={l}: count {} with {} Z roots", r.count(), z));
            }
            reports += 1;
        }
    }
    Ok(format!("{reports} (p, λ) pairs"))
}

fn criterion_7() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_legendre-covers");
    let run = |args: &[&str]| Command::new(bin).args(args).output().map_err(|e| e.to_string());
    let args = ["verify", "--p", "10007", "--trials", "200", "--seed", "0"];
    let a = run(&args)?;
    let b = run(&args)?;
    if a.status.code() != Some(0) || b.status.code() != Some(0) {
        return Err(format!("verify exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr)));
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return Err("verify output differs between runs".into());
    }
    let out = run(&["params", "--field", "rational", "--lambda", "3", "--p1", "5"])?;
    if out.status.code() != Some(0) {
        return Err(format!("params exit {:?}", out.status.code()));
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    // oracle: δ = p₁(p₁ − 2)/(2p₁ − 3) = 15/7, ζ = λp₁³(p₁ − 2)/((λ − 1)(2p₁ − 3)³ + p₁³(p₁ − 2))
    //   = 3·125·3/(2·343 + 375) = 1125/1061
    let (dn, dd) = (5 * 3, 2 * 5 - 3);
    let (zn, zd) = (3 * 125 * 3, 2 * 343 + 125 * 3);
    if v["delta"] != format!("{dn}/{dd}") || v["zeta"] != format!("{zn}/{zd}") {
        return Err(format!("δ = {}, ζ = {}", v["delta"], v["zeta"]));
    }
    Ok(format!("{} bytes identical; δ = {}, ζ = {}", a.stdout.len(), v["delta"], v["zeta"]))
}

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Criterion); 7] = [
        ("identity suite", criterion_1),
        ("function-field identity", criterion_2),
        ("ramification", criterion_3),
        ("Z locus", criterion_4),
        ("membership equivalence", criterion_5),
        ("moduli count", criterion_6),
        ("CLI determinism", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
