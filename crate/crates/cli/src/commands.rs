use std::path::PathBuf;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use mopw_core::analyze::{
    certify_positive, complex_roots, interlacing_check, real_zero_profile, type1_wronskian_grid_sign, uniform_grid,
    write_roots_csv, Domain, RootSet, DEFAULT_TOL,
};
use mopw_core::mop::{
    at_system_probe, construct_type1, raised_direct, raising_apply, type2_with, Method, MultiIndex, PathSpec,
    WeightFamily,
};
use mopw_core::ratcore::rational::{parse_rational, parse_rational_list};
use mopw_core::ratcore::{format_rational, Poly, Rational};
use mopw_core::wronsk::paths::sample_paths;
use mopw_core::wronsk::{
    confluent_check, hankel_wronskian_identity_check, path_independence_check, superfactorial, turan_expression,
    PolyCache, PolyReport, TuranVariant, DEFAULT_PATH_CAP,
};

use crate::config::{build_path, parse_index, resolve_family, ConfigFile};
use crate::{CliError, Common, MethodArg, Outcome, SeriesBy, VariantArg, VerifyCommand};

/// Resolved view of the shared options.
struct Ctx<'a> {
    common: &'a Common,
    cfg: ConfigFile,
}

impl<'a> Ctx<'a> {
    fn new(common: &'a Common) -> Result<Self, CliError> {
        let cfg = ConfigFile::load(common.config.as_deref())?;
        Ok(Ctx { common, cfg })
    }

    fn text(&self, flag: &Option<String>, key: &str) -> Option<String> {
        self.cfg.pick(flag, key)
    }

    fn family(&self) -> Result<WeightFamily, CliError> {
        resolve_family(
            self.text(&self.common.family, "family").as_deref(),
            self.text(&self.common.c, "c").as_deref(),
            self.text(&self.common.alpha, "alpha").as_deref(),
        )
    }

    fn n(&self) -> Result<MultiIndex, CliError> {
        let s = self
            .text(&self.common.n, "n")
            .ok_or_else(|| CliError::usage("--n is required"))?;
        parse_index(&s)
    }

    fn l(&self, default: usize) -> Result<usize, CliError> {
        Ok(self.cfg.pick_parsed(self.common.l, "l")?.unwrap_or(default))
    }

    fn dir(&self) -> Result<usize, CliError> {
        Ok(self.cfg.pick_parsed(self.common.dir, "dir")?.unwrap_or(1))
    }

    fn steps(&self) -> Option<String> {
        self.text(&self.common.steps, "steps")
    }

    fn path(&self, default_l: usize) -> Result<PathSpec, CliError> {
        build_path(self.n()?, self.l(default_l)?, self.steps().as_deref(), self.dir()?)
    }

    /// `MOPW_SEED` wins over `--seed`, which wins over the config file.
    fn seed(&self) -> Result<u64, CliError> {
        if let Ok(s) = std::env::var("MOPW_SEED") {
            return s
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("MOPW_SEED is not an integer: {s:?}")));
        }
        Ok(self.cfg.pick_parsed(self.common.seed, "seed")?.unwrap_or(0))
    }

    fn parsed<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        self.cfg.pick_parsed(flag, key)
    }

    fn choice<T: ValueEnum + Copy>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.cfg.text(key) {
            None => Ok(None),
            Some(s) => T::from_str(&s, true)
                .map(Some)
                .map_err(|_| CliError::usage(format!("config key {key}: unknown value {s:?}"))),
        }
    }

    /// The paths to certify: the explicit one, or all paths out of `n`
    /// (seeded sample beyond the cap).
    fn paths(&self, default_l: usize, cap: Option<usize>) -> Result<(Vec<PathSpec>, bool), CliError> {
        if self.steps().is_some() {
            return Ok((vec![self.path(default_l)?], true));
        }
        let l = self.l(default_l)?;
        if l == 0 {
            return Err(CliError::usage("--l must be at least 1"));
        }
        let cap = self.parsed(cap, "cap")?.unwrap_or(DEFAULT_PATH_CAP);
        Ok(sample_paths(&self.n()?, l, cap, self.seed()?))
    }
}

fn line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable output");
    s.push('\n');
    s
}

fn report(ok: bool, witness: Value, details: Value) -> Outcome {
    Outcome {
        output: line(&json!({ "ok": ok, "witness": witness, "details": details })),
        pass: ok,
    }
}

pub fn construct(common: &Common, method: Option<MethodArg>, kind: Option<u8>) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let n = ctx.n()?;
    let method = ctx.choice(method, "method")?.unwrap_or(MethodArg::Moments);
    match ctx.parsed(kind, "type")?.unwrap_or(2) {
        1 => {
            if method != MethodArg::Moments {
                return Err(CliError::usage("type I forms are built from moments only"));
            }
            let form = construct_type1(&family, &n)?;
            let polys: Vec<Vec<String>> = form.coeff_polys.iter().map(Poly::to_strings).collect();
            Ok(Outcome {
                output: line(&json!({ "n": n, "coeff_polys": polys })),
                pass: true,
            })
        }
        2 => {
            let p = match method {
                MethodArg::Moments => type2_with(&family, &n, Method::Moments)?,
                MethodArg::ClosedForm => type2_with(&family, &n, Method::ClosedForm)?,
                MethodArg::Both => {
                    let a = type2_with(&family, &n, Method::Moments)?;
                    let b = type2_with(&family, &n, Method::ClosedForm)?;
                    if a != b {
                        return Ok(Outcome {
                            output: line(&json!({ "ok": false, "moments": a, "closed_form": b })),
                            pass: false,
                        });
                    }
                    a
                }
            };
            Ok(Outcome {
                output: line(&json!({ "poly": p })),
                pass: true,
            })
        }
        other => Err(CliError::usage(format!("--type must be 1 or 2, got {other}"))),
    }
}

pub fn wronskian(common: &Common, hankel: bool, moments: bool, z: Option<String>) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let hankel = ctx.cfg.pick_bool(hankel, "hankel");
    let moments = ctx.cfg.pick_bool(moments, "moments");
    if hankel && moments {
        return Err(CliError::usage("--hankel and --moments cannot be combined"));
    }
    let mut cache = PolyCache::new(&family);
    let p = if hankel {
        cache.turanian(&ctx.n()?, ctx.dir()?, ctx.l(2)?)?
    } else {
        let path = ctx.path(1)?;
        let w = cache.wronskian(&path)?;
        if moments {
            w.scale(&superfactorial(path.len()).recip())
        } else {
            w
        }
    };
    let mut out = serde_json::to_value(PolyReport::from(&p)).expect("serializable");
    if let Some(z) = ctx.text(&z, "z") {
        let z = parse_rational(&z)?;
        out["value"] = Value::String(format_rational(&p.eval(&z)));
    }
    Ok(Outcome {
        output: line(&out),
        pass: true,
    })
}

pub fn verify(check: VerifyCommand) -> Result<Outcome, CliError> {
    match check {
        VerifyCommand::Theorem1 { common, cap } => theorem1(&common, cap),
        VerifyCommand::Theorem2 { common, cap } => theorem2(&common, cap),
        VerifyCommand::Theorem3 {
            common,
            grid,
            precision,
        } => theorem3(&common, grid, precision),
        VerifyCommand::Turan { common, variant, j, k } => turan(&common, variant, j, k),
        VerifyCommand::HankelId { common } => hankel_id(&common),
        VerifyCommand::PathFree { common, cap } => path_free(&common, cap),
        VerifyCommand::Confluent { common, z, eps } => confluent(&common, z, eps),
        VerifyCommand::AtProbe { common, trials } => at_probe(&common, trials),
        VerifyCommand::Raising { common } => raising(&common),
    }
}

fn theorem1(common: &Common, cap: Option<usize>) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let (paths, exhaustive) = ctx.paths(2, cap)?;
    let mut cache = PolyCache::new(&family);
    let mut failures = Vec::new();
    for path in &paths {
        let w = cache.wronskian(path)?;
        if let Err(r) = certify_positive(&w, Domain::Real)? {
            failures.push(json!({ "path": path.to_string(), "refutation": r }));
        }
    }
    let details = json!({
        "domain": Domain::Real,
        "l": paths[0].len(),
        "paths_checked": paths.len(),
        "exhaustive": exhaustive,
        "failures": failures,
    });
    Ok(report(
        failures.is_empty(),
        failures.first().cloned().unwrap_or(Value::Null),
        details,
    ))
}

fn theorem2(common: &Common, cap: Option<usize>) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let n = ctx.n()?;
    let (paths, exhaustive) = ctx.paths(1, cap)?;
    let mut cache = PolyCache::new(&family);
    let mut failures = Vec::new();
    let mut count = None;
    let mut pairs = 0usize;
    for path in &paths {
        let w = cache.wronskian(path)?;
        let profile = real_zero_profile(&w)?;
        count.get_or_insert(profile.count);
        if profile.count != n.size() || !profile.simple {
            failures.push(json!({
                "path": path.to_string(),
                "count": profile.count,
                "simple": profile.simple,
            }));
        }
        for dir in 1..=n.r() {
            let next = path.extended(dir).tail()?;
            let q = cache.wronskian(&next)?;
            let inter = interlacing_check(&w, &q)?;
            pairs += 1;
            if !inter.ok {
                failures.push(json!({
                    "path": path.to_string(),
                    "next": next.to_string(),
                    "interlacing": inter,
                }));
            }
        }
    }
    let details = json!({
        "count": count,
        "expected": n.size(),
        "paths_checked": paths.len(),
        "pairs_checked": pairs,
        "exhaustive": exhaustive,
        "failures": failures,
    });
    Ok(report(
        failures.is_empty(),
        failures.first().cloned().unwrap_or(Value::Null),
        details,
    ))
}

fn theorem3(common: &Common, grid: Option<String>, precision: Option<u32>) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let path = ctx.path(2)?;
    let spec = ctx.text(&grid, "grid").unwrap_or_else(|| {
        if family.on_half_line() {
            "1/10,10,50".to_string()
        } else {
            "-5,5,50".to_string()
        }
    });
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [lo, hi, count] = parts[..] else {
        return Err(CliError::usage("--grid must be lo,hi,count"));
    };
    let count: usize = count
        .parse()
        .map_err(|_| CliError::usage(format!("bad grid count {count:?}")))?;
    let points = uniform_grid(&parse_rational(lo)?, &parse_rational(hi)?, count);
    let precision = ctx.parsed(precision, "precision")?.unwrap_or(256);
    let rep = type1_wronskian_grid_sign(&family, &path, &points, precision)?;
    let trusted: Vec<_> = rep
        .sign_changes
        .iter()
        .filter(|(a, b)| !rep.unstable.contains(a) && !rep.unstable.contains(b))
        .collect();
    if trusted.len() < rep.sign_changes.len() {
        return Err(CliError::from(mopw_core::Error::Numerical(format!(
            "sign change at grid points that are unstable at {precision} bits; raise --precision"
        ))));
    }
    let witness = trusted
        .first()
        .map(|&&(a, b)| json!([format_rational(&points[a]), format_rational(&points[b])]))
        .unwrap_or(Value::Null);
    Ok(report(
        rep.constant_sign,
        witness,
        serde_json::to_value(&rep).expect("serializable"),
    ))
}

fn turan(
    common: &Common,
    variant: Option<VariantArg>,
    j: Option<usize>,
    k: Option<usize>,
) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let n = ctx.n()?;
    let variant = ctx.choice(variant, "variant")?.unwrap_or(VariantArg::Plain);
    let j = ctx.parsed(j, "j")?.unwrap_or(ctx.dir()?);
    let k = ctx.parsed(k, "k")?.unwrap_or(if n.r() >= 2 && j == 1 { 2 } else { 1 });
    let variant = match variant {
        VariantArg::Plain => TuranVariant::PlainTuran(j),
        VariantArg::HermiteDiag => TuranVariant::HermiteDiag(j),
        VariantArg::HermitePair => TuranVariant::HermitePair(j, k),
        VariantArg::Laguerre1 => TuranVariant::LaguerreFirstTwoParam(j, k),
        VariantArg::Laguerre2 => TuranVariant::LaguerreSecondTwoParam(j, k),
    };
    let p = turan_expression(&family, &n, variant)?;
    let domain = variant.domain(&family);
    let details =
        |extra: Value| json!({ "variant": variant, "domain": domain, "poly": PolyReport::from(&p), "result": extra });
    Ok(match certify_positive(&p, domain)? {
        Ok(cert) => report(true, Value::Null, details(json!(cert))),
        Err(refutation) => {
            let w = json!(refutation);
            report(false, w.clone(), details(w))
        }
    })
}

fn hankel_id(common: &Common) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let WeightFamily::Hermite { c } = ctx.family()? else {
        return Err(CliError::usage("hankel-id needs a Hermite family"));
    };
    let n = ctx.n()?;
    let (j, l) = (ctx.dir()?, ctx.l(2)?);
    if l == 0 {
        return Err(CliError::usage("--l must be at least 1"));
    }
    let ok = hankel_wronskian_identity_check(&n, &c, j, l)?;
    let factor = hankel_factor(l);
    let details = json!({ "n": n, "j": j, "l": l, "factor": factor });
    let witness = if ok { Value::Null } else { details.clone() };
    Ok(report(ok, witness, details))
}

/// `(-2)^{l(l-1)/2}`
fn hankel_factor(l: usize) -> String {
    let e = l * (l - 1) / 2;
    let v = (0..e).fold(Rational::from_integer(1.into()), |acc, _| {
        acc * Rational::from_integer((-2).into())
    });
    format_rational(&v)
}

fn path_free(common: &Common, cap: Option<usize>) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let cap = ctx.parsed(cap, "cap")?.unwrap_or(DEFAULT_PATH_CAP);
    let rep = path_independence_check(&family, &ctx.n()?, ctx.l(2)?, cap, ctx.seed()?)?;
    let witness = match &rep.witness {
        Some((a, b)) => json!([a.to_string(), b.to_string()]),
        None => Value::Null,
    };
    Ok(report(
        rep.ok,
        witness,
        serde_json::to_value(&rep).expect("serializable"),
    ))
}

/// Default `eps` decades. Near points where the first-order term is small,
/// larger steps are still dominated by the quadratic term.
const CONFLUENT_EPS: &str = "1/100000,1/1000000,1/10000000,1/100000000";

fn confluent(common: &Common, z: Option<String>, eps: Option<String>) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let path = ctx.path(2)?;
    let z = parse_rational(&ctx.text(&z, "z").unwrap_or_else(|| "1/3".into()))?;
    let eps = parse_rational_list(&ctx.text(&eps, "eps").unwrap_or_else(|| CONFLUENT_EPS.into()))?;
    let rep = confluent_check(&family, &path, &z, &eps)?;
    let ratios = rep.ratios();
    let mut witness = Value::Null;
    for (i, (w, r)) in rep.steps.windows(2).zip(&ratios).enumerate() {
        let fine = match r {
            Some(r) => *r > 5.0 && *r < 20.0,
            // the smaller eps is exact; fine unless the larger was not
            None => true,
        };
        let exact_then_not = w[0].residual == Rational::from_integer(0.into()) && r.is_some();
        if !fine || exact_then_not {
            witness = json!({ "step": i, "ratio": r });
            break;
        }
    }
    let details = json!({ "report": rep, "ratios": ratios });
    Ok(report(witness.is_null(), witness, details))
}

fn at_probe(common: &Common, trials: Option<usize>) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let trials = ctx.parsed(trials, "trials")?.unwrap_or(100);
    let rep = at_system_probe(&family, &ctx.n()?, trials, ctx.seed()?)?;
    let witness = if rep.flagged {
        json!(rep.worst_points)
    } else {
        Value::Null
    };
    Ok(report(
        !rep.flagged,
        witness,
        serde_json::to_value(&rep).expect("serializable"),
    ))
}

fn raising(common: &Common) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let n = ctx.n()?;
    let dirs: Vec<usize> = match ctx.parsed(common.dir, "dir")? {
        Some(j) => vec![j],
        None => (1..=n.r()).collect(),
    };
    let mut checked = Vec::new();
    let mut witness = Value::Null;
    for j in dirs {
        let a = raising_apply(&family, &n, j)?;
        let b = raised_direct(&family, &n, j)?;
        checked.push(j);
        if a != b && witness.is_null() {
            witness = json!({ "j": j, "from_relation": a, "direct": b });
        }
    }
    Ok(report(
        witness.is_null(),
        witness,
        json!({ "n": n, "directions": checked }),
    ))
}

fn parse_sweep_l(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad path length {t:?}")))
        })
        .collect()
}

pub fn roots(
    common: &Common,
    series_by: Option<SeriesBy>,
    ls: Option<String>,
    ns: Option<String>,
    tol: Option<f64>,
    out: Option<PathBuf>,
) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(common)?;
    let family = ctx.family()?;
    let series_by = ctx.choice(series_by, "series-by")?.unwrap_or(SeriesBy::L);
    let tol = ctx.parsed(tol, "tol")?.unwrap_or(DEFAULT_TOL);
    let dir = ctx.dir()?;
    let members: Vec<(String, PathSpec)> = match series_by {
        SeriesBy::L => {
            let n = ctx.n()?;
            match ctx.text(&ls, "ls") {
                Some(list) => parse_sweep_l(&list)?
                    .into_iter()
                    .map(|l| Ok((format!("l={l}"), build_path(n.clone(), l, None, dir)?)))
                    .collect::<Result<_, CliError>>()?,
                None => {
                    let path = ctx.path(2)?;
                    vec![(format!("l={}", path.len()), path)]
                }
            }
        }
        SeriesBy::N => {
            let l = ctx.l(2)?;
            let list = ctx
                .text(&ns, "ns")
                .or_else(|| ctx.text(&common.n, "n"))
                .ok_or_else(|| CliError::usage("--ns or --n is required"))?;
            list.split(';')
                .map(|s| {
                    let n = parse_index(s)?;
                    Ok((format!("n={n}"), build_path(n, l, None, dir)?))
                })
                .collect::<Result<_, CliError>>()?
        }
    };
    // members run concurrently; collect keeps sweep order
    let results: Vec<Result<Option<(String, RootSet)>, CliError>> = members
        .par_iter()
        .map(|(label, path)| {
            let w = PolyCache::new(&family).wronskian(path)?;
            if w.degree().unwrap_or(0) == 0 {
                return Ok(None);
            }
            Ok(Some((label.clone(), complex_roots(&w, tol)?)))
        })
        .collect();
    let mut series = Vec::new();
    for r in results {
        if let Some(s) = r? {
            series.push(s);
        }
    }
    let mut buf = Vec::new();
    write_roots_csv(&mut buf, &series)?;
    match ctx.text(&out.map(|p| p.display().to_string()), "out") {
        Some(path) => {
            std::fs::write(&path, &buf).map_err(|e| CliError::usage(format!("cannot write {path}: {e}")))?;
            Ok(Outcome {
                output: String::new(),
                pass: true,
            })
        }
        None => Ok(Outcome {
            output: String::from_utf8(buf).expect("CSV is UTF-8"),
            pass: true,
        }),
    }
}
