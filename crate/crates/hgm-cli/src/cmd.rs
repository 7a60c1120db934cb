use rayon::prelude::*;
use serde_json::{json, Value};

use hgm::arith::{is_prime, mult_order};
use hgm::engine::congr::is_good;
use hgm::engine::frob::PolyDisplay;
use hgm::engine::hsum::default_k;
use hgm::engine::tame::parse_place;
use hgm::engine::{
    choose_f, congruence_at, hgm_frob, properties_suite, tame_trace, trace_match_verify,
    CongruenceReport, JacobiDatum,
};
use hgm::ffield::{count_points_euler, FqTable};
use hgm::hgdata::{congruent_mod_l, fmt_q, parse_q, PrimeClass};
use hgm::padic::PRECISION_CAP;
use hgm::recognize::recognize_rational;
use hgm::{Error, HgData, Q};

use crate::{Cli, Command, Point};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Seed,
    Threads(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.code(),
            CliError::Seed => "seed_unsupported",
            CliError::Threads(_) => "threads",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Seed => "--seed has no effect: every algorithm is deterministic".into(),
            CliError::Threads(m) => m.clone(),
        }
    }
}

pub struct Output {
    pub value: Value,
    /// plain-mode template, when it differs from `key: value` lines
    pub plain: Option<String>,
    pub exit: u8,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output {
            value,
            plain: None,
            exit: 0,
        }
    }
    fn plain(mut self, s: String) -> Self {
        self.plain = Some(s);
        self
    }
    fn status(mut self, ok: bool) -> Self {
        self.exit = if ok { 0 } else { 1 };
        self
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn data(s: &str) -> Res<HgData> {
    Ok(HgData::parse(s)?)
}

fn rational(s: &str) -> Res<Q> {
    Ok(parse_q(s)?)
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable report")
}

/// Largest `k <= 6` with `p^k` under the precision cap.
fn auto_k(p: u64) -> u32 {
    let mut k = 1;
    while k < 6 && p.saturating_pow(k + 1) <= PRECISION_CAP {
        k += 1;
    }
    k
}

fn primes_upto(pmax: u64) -> Vec<u64> {
    (3..=pmax).filter(|&p| is_prime(p)).collect()
}

pub fn run(cli: &Cli) -> Res<Output> {
    if cli.seed.is_some() {
        return Err(CliError::Seed);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    pool.install(|| dispatch(&cli.command))
}

fn dispatch(c: &Command) -> Res<Output> {
    match c {
        Command::Trace { pt, recognize } => trace(pt, *recognize),
        Command::Frob {
            pt,
            integral,
            padic,
        } => frob(pt, *integral, *padic),
        Command::Hodge {
            params,
            all_embeddings,
            j,
        } => hodge(params, *all_embeddings, *j),
        Command::Basefield { params } => basefield(params),
        Command::Classify { params, z, p } => classify(params, z, *p),
        Command::Verify {
            params,
            z,
            pmax,
            prec,
        } => verify(params, z, *pmax, *prec),
        Command::Tame { pt, at } => tame(pt, at),
        Command::Jacobi { theta, p, f, prec } => jacobi(theta, *p, *f, *prec),
        Command::Congr {
            params1,
            params2,
            l,
            z,
            pmax,
            prec,
        } => congr(params1, params2, *l, z, *pmax, *prec),
        Command::Props { pt, rho } => props(pt, rho.as_deref()),
        Command::Count { params, z, p, f } => count(params, z, *p, *f),
    }
}

fn trace(pt: &Point, recognize: bool) -> Res<Output> {
    let d = data(&pt.params)?;
    let z = rational(&pt.z)?;
    let f = pt.f.unwrap_or_else(|| choose_f(&d, pt.p));
    let q = pt.p.checked_pow(f).ok_or(Error::FieldCap(u64::MAX))?;
    let k = match pt.prec {
        Some(k) => k,
        None => default_k(&d, pt.p, q)?,
    };
    let h = hgm::engine::hgm_padic(&d, z, pt.p, Some(f), Some(k))?;
    let value = if recognize {
        fmt_q(&recognize_rational(&h)?)
    } else {
        h.to_string()
    };
    Ok(Output::ok(json!({ "value": value, "p": pt.p, "f": f, "q": q, "k": k })).plain(value))
}

fn frob(pt: &Point, integral: bool, padic: bool) -> Res<Output> {
    let d = data(&pt.params)?;
    let z = rational(&pt.z)?;
    let fd = hgm_frob(&d, z, pt.p, pt.f, pt.prec)?;
    let (text, coeffs): (String, Vec<String>) = if padic {
        let c: Vec<String> = fd.lpoly.iter().map(|x| x.to_string()).collect();
        let s = c
            .iter()
            .enumerate()
            .rev()
            .map(|(i, x)| format!("({x})*x^{i}"))
            .collect::<Vec<_>>()
            .join(" + ");
        (s, c)
    } else {
        let (c, var) = if integral {
            (fd.integral()?, "T")
        } else {
            (fd.recognized()?, "x")
        };
        let s = PolyDisplay { coeffs: &c, var }.to_string();
        (s, c.iter().map(fmt_q).collect())
    };
    let v = json!({
        "lpoly": text,
        "coeffs": coeffs,
        "normalization": if integral { "integral" } else { "motivic" },
        "p": fd.p, "f": fd.f, "q": fd.q, "k": fd.k,
        "trace1": fd.trace1.to_string(),
        "trace2": fd.trace2.to_string(),
    });
    Ok(Output::ok(v).plain(text))
}

fn hodge(params: &str, all: bool, j: Option<i64>) -> Res<Output> {
    let d = data(params)?;
    let offset = d.effective_offset()?;
    if all {
        let hs = d.hodge_all_embeddings()?;
        let polys: Vec<String> = hs.iter().map(|(_, h)| h.to_string()).collect();
        let js: Vec<u64> = hs.iter().map(|(j, _)| *j).collect();
        let list = serde_json::to_string(&polys).expect("strings");
        return Ok(
            Output::ok(json!({ "embeddings": js, "hodge": polys, "offset": offset }))
                .plain(format!("{list}\noffset: {offset}")),
        );
    }
    let j = j.unwrap_or(1);
    let h = d.zigzag_hodge(j)?;
    Ok(
        Output::ok(json!({ "j": j, "hodge": h.to_string(), "offset": offset }))
            .plain(format!("{h}\noffset: {offset}")),
    )
}

fn basefield(params: &str) -> Res<Output> {
    let d = data(params)?;
    let s = d.symmetry_group();
    Ok(Output::ok(json!({
        "N": d.n(),
        "H": s.h,
        "order": s.h.len(),
        "degree": s.base_field_degree,
        "totally_real": s.contains_minus_one,
    })))
}

fn classify(params: &str, z: &str, p: u64) -> Res<Output> {
    let d = data(params)?;
    let z = rational(z)?;
    let c = d.classify_prime(z, p, 1)?;
    let mono = if d.rank() == 2 && d.is_generic() {
        to_json(&d.monodromy_orders()?)
    } else {
        Value::Null
    };
    let mut v = json!({ "p": p, "monodromy": mono });
    match c {
        PrimeClass::Good => v["class"] = "good".into(),
        PrimeClass::Wild => v["class"] = "wild".into(),
        PrimeClass::Tame {
            place,
            valuation,
            order,
            unramified,
        } => {
            v["class"] = "tame".into();
            v["place"] = to_json(&place);
            v["valuation"] = valuation.into();
            v["order"] = to_json(&order);
            v["unramified"] = unramified.into();
        }
    }
    Ok(Output::ok(v))
}

fn verify(params: &str, z: &str, pmax: u64, prec: Option<u32>) -> Res<Output> {
    let d = data(params)?;
    let z = rational(z)?;
    let n = d.n();
    let primes: Vec<u64> = primes_upto(pmax)
        .into_iter()
        .filter(|p| (p - 1) % n == 0)
        .collect();
    let results: Vec<Option<Res<Value>>> = primes
        .par_iter()
        .map(|&p| {
            let k = prec.unwrap_or_else(|| auto_k(p).min(4));
            match trace_match_verify(&d, z, p, k) {
                Ok(r) => Some(Ok(to_json(&r))),
                Err(Error::BadPrime(_)) => None,
                Err(e) => Some(Err(e.into())),
            }
        })
        .collect();
    let mut reports = Vec::new();
    for r in results.into_iter().flatten() {
        reports.push(r?);
    }
    let ok = reports.iter().all(|r| r["ok"] == true);
    let lines: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "p={} route={} {}",
                r["p"],
                r["route"].as_str().unwrap_or(""),
                if r["ok"] == true { "ok" } else { "MISMATCH" }
            )
        })
        .collect();
    Ok(Output::ok(
        json!({ "params": d.to_string(), "xi": fmt_q(&z), "reports": reports, "all_ok": ok }),
    )
    .plain(lines.join("\n"))
    .status(ok))
}

fn tame(pt: &Point, at: &str) -> Res<Output> {
    let d = data(&pt.params)?;
    let z = rational(&pt.z)?;
    let place = parse_place(at)?;
    let k = pt.prec.unwrap_or_else(|| auto_k(pt.p));
    let r = tame_trace(&d, z, pt.p, pt.f, place, k)?;
    let mut v = to_json(&r);
    v["k"] = k.into();
    Ok(Output::ok(v))
}

fn jacobi(theta: &str, p: u64, f: Option<u32>, prec: Option<u32>) -> Res<Output> {
    let jd = JacobiDatum::parse(theta)?;
    let f = f.unwrap_or_else(|| jd.default_f(p));
    let k = prec.unwrap_or_else(|| auto_k(p));
    let value = jd.padic_value(p, f, k)?;
    let exact = match p.checked_pow(f) {
        Some(q) if q <= 1 << 20 => Some(jd.exact_value(p, f)?.to_string()),
        _ => None,
    };
    let v = json!({
        "theta": jd.to_string(),
        "p": p, "f": f, "q": p.pow(f), "k": k,
        "value": value.to_string(),
        "exact": exact,
        "hodge": to_json(&jd.hodge_info()),
    });
    Ok(Output::ok(v))
}

fn congr(p1: &str, p2: &str, l: u64, z: &str, pmax: u64, prec: Option<u32>) -> Res<Output> {
    let d1 = data(p1)?;
    let d2 = data(p2)?;
    let z = rational(z)?;
    if !is_prime(l) {
        return Err(Error::NotPrime(l).into());
    }
    if !congruent_mod_l(&d1, &d2, l) {
        return Err(Error::Precondition(format!("{d1} and {d2} are not congruent mod {l}")).into());
    }
    let (good, skipped): (Vec<u64>, Vec<u64>) = primes_upto(pmax)
        .into_iter()
        .partition(|&p| p != l && is_good(&d1, z, p) && is_good(&d2, z, p));
    let per: Vec<_> = good
        .par_iter()
        .map(|&p| congruence_at(&d1, &d2, l, z, p, prec))
        .collect::<Result<_, _>>()?;
    let report = CongruenceReport {
        params1: d1.to_string(),
        params2: d2.to_string(),
        l,
        xi: fmt_q(&z),
        all_congruent: per.iter().all(|c| c.congruent),
        primes: per,
        skipped,
    };
    let lines: Vec<String> = report
        .primes
        .iter()
        .map(|c| {
            format!(
                "p={} {} {} {}",
                c.p,
                c.trace1,
                c.trace2,
                if c.congruent {
                    "congruent"
                } else {
                    "NOT congruent"
                }
            )
        })
        .collect();
    let ok = report.all_congruent;
    Ok(Output::ok(to_json(&report))
        .plain(lines.join("\n"))
        .status(ok))
}

fn props(pt: &Point, rho: Option<&str>) -> Res<Output> {
    let d = data(&pt.params)?;
    let z = rational(&pt.z)?;
    let rho = rho.map(rational).transpose()?;
    let k = pt.prec.unwrap_or_else(|| auto_k(pt.p).min(4));
    let r = properties_suite(&d, z, pt.p, pt.f, k, rho)?;
    let lines: Vec<String> = r
        .checks
        .iter()
        .map(|c| format!("{}: {}", c.name, to_json(&c.status).as_str().unwrap_or("")))
        .collect();
    let ok = r.all_pass();
    Ok(Output::ok(to_json(&r)).plain(lines.join("\n")).status(ok))
}

fn count(params: &str, z: &str, p: u64, f: Option<u32>) -> Res<Output> {
    let d = data(params)?;
    let z = rational(z)?;
    let n = d.n();
    if n % p == 0 || !is_prime(p) {
        return Err(Error::WildPrime(p).into());
    }
    let f = f.unwrap_or_else(|| {
        if n <= 2 {
            1
        } else {
            mult_order(p % n, n) as u32
        }
    });
    let tbl = FqTable::build(p, f)?;
    let exps = d.euler_exponents()?;
    let c = count_points_euler(&exps, tbl.from_q(z)?, &tbl)?;
    let comps: Vec<Value> = c
        .components
        .iter()
        .map(|(j, s)| json!({ "j": j, "sum": s.to_string() }))
        .collect();
    Ok(Output::ok(json!({
        "q": c.q,
        "exponents": to_json(&exps),
        "affine": c.affine.to_string(),
        "components": comps,
    })))
}
