use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use mzv_core::{
    gzeta_positive, numeric_value, quasi_shuffle, rat, signature, stuffle_oracle, symbolic_mul, to_f64,
    z2_closed_form, zeta_nonpositive, Birkhoff, Coefficient, Composition, Direction, Error, LaurentSeries,
    LetterPair, MzvSymbol, RatFunc, Rational, Renormalizer, Signature, SymbolicValue, Window, WindowPolicy,
    Word,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{CheckArgs, EvalArgs, ExpandArgs, Suite, TableArgs};
use crate::report::{Check, Report};

/// Largest table size and check bounds accepted.
const MAX_TABLE: u32 = 8;
const MAX_CHECK_DEPTH: usize = 6;
const MAX_CHECK_WEIGHT: u64 = 16;

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Bad input or out-of-domain arguments.
    Domain(String),
    /// An internal invariant broke (a limit that should exist does not).
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PoleAtZero | Error::DeltaPrecision { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn domain<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Domain(msg.into()))
}

fn tuple(s: &[i64]) -> String {
    let parts: Vec<String> = s.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn parse_t(spec: &str) -> Outcome<f64> {
    let Some(v) = spec.strip_prefix("T=") else {
        return domain(format!("--numeric expects T=<value>, got {spec:?}"));
    };
    match v.trim().parse::<f64>() {
        Ok(t) if t.is_finite() => Ok(t),
        _ => domain(format!("--numeric value {v:?} is not a finite number")),
    }
}

pub fn eval(a: &EvalArgs, policy: WindowPolicy) -> Outcome<Report> {
    let s = a.s.clone().unwrap_or_else(|| a.args.clone());
    if s.is_empty() {
        return domain("eval needs at least one argument");
    }
    let t = a.numeric.as_deref().map(parse_t).transpose()?;
    let mut input = json!({ "s": s });
    if let Some(t) = t {
        input["numeric"] = json!({ "T": t, "tol": a.tol });
    }
    let (kind, exact, numeric) = match signature(&s)? {
        Signature::NonPositive => {
            let q = Renormalizer::new(policy).gzeta_nonpos(&s)?;
            ("exact", q.to_string(), t.map(|_| to_f64(&q)))
        }
        Signature::Positive => {
            let v = gzeta_positive(&s)?;
            let x = t.map(|t| numeric_value(&v, t, a.tol)).transpose()?;
            ("symbolic", v.to_string(), x)
        }
    };
    let mut result = json!({ "kind": kind, "value": exact });
    let text = match numeric {
        Some(x) => {
            result["numeric"] = json!(x);
            format!("{x}")
        }
        None => exact,
    };
    Ok(Report { command: "eval", input, result, checks: Vec::new(), text })
}

/// `gζ(−s₁, −s₂)` for the grid cells, in row-major order.
fn grid(rows: u32, cols: u32, policy: WindowPolicy) -> Outcome<Vec<Vec<Rational>>> {
    let cells: Vec<(i64, i64)> =
        (1..=rows as i64).flat_map(|i| (1..=cols as i64).map(move |j| (i, j))).collect();
    let values = cells
        .par_iter()
        .map_init(|| Renormalizer::new(policy), |r, &(i, j)| r.gzeta_nonpos(&[-i, -j]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(values.chunks(cols as usize).map(<[Rational]>::to_vec).collect())
}

/// Independently known table entries, keyed by `(s₁, s₂)` for `gζ(−s₁, −s₂)`.
fn table_anchors() -> Vec<((i64, i64), Rational)> {
    vec![
        ((1, 1), rat(1, 288)),
        ((1, 2), rat(-1, 240)),
        ((2, 1), rat(-1, 240)),
        ((1, 3), rat(83, 64512)),
        ((3, 1), rat(-71, 35840)),
        ((1, 4), rat(1, 504)),
        ((2, 2), rat(0, 1)),
        ((4, 4), rat(0, 1)),
        ((6, 6), rat(0, 1)),
        ((3, 3), rat(1, 28800)),
        ((5, 5), rat(1, 127008)),
        ((7, 7), rat(1, 115200)),
        ((6, 5), rat(-691, 65520)),
    ]
}

fn render_grid(entries: &[Vec<String>]) -> String {
    let cols = entries.first().map_or(0, Vec::len);
    let widths: Vec<usize> =
        (0..cols).map(|j| entries.iter().map(|row| row[j].len()).max().unwrap_or(1)).collect();
    let mut out = "s1\\s2".to_string();
    for (j, w) in widths.iter().enumerate() {
        let _ = write!(out, "  {:>w$}", j + 1);
    }
    for (i, row) in entries.iter().enumerate() {
        let _ = write!(out, "\n{:>5}", i + 1);
        for (e, w) in row.iter().zip(&widths) {
            let _ = write!(out, "  {e:>w$}");
        }
    }
    out
}

pub fn table(a: &TableArgs, policy: WindowPolicy) -> Outcome<Report> {
    if a.max_s1 == 0 || a.max_s2 == 0 || a.max_s1 > MAX_TABLE || a.max_s2 > MAX_TABLE {
        return domain(format!("table sizes must lie in 1..={MAX_TABLE}"));
    }
    let values = grid(a.max_s1, a.max_s2, policy)?;
    let entries: Vec<Vec<String>> =
        values.iter().map(|row| row.iter().map(Rational::to_string).collect()).collect();
    let mut checks = Vec::new();
    for ((i, j), expect) in table_anchors() {
        if i <= a.max_s1 as i64 && j <= a.max_s2 as i64 {
            let got = &values[i as usize - 1][j as usize - 1];
            checks.push(Check::new(format!("anchor gzeta(-{i},-{j}) = {expect}"), *got == expect));
        }
    }
    Ok(Report {
        command: "table",
        input: json!({ "max_s1": a.max_s1, "max_s2": a.max_s2 }),
        result: json!({ "rows": a.max_s1, "cols": a.max_s2, "entries": entries }),
        text: render_grid(&entries),
        checks,
    })
}

fn parse_directions(spec: &str, s: &[i64]) -> Outcome<Word> {
    if spec.trim() == "auto" {
        return Ok(Word::with_delta_directions(s));
    }
    let dirs = spec
        .split(',')
        .map(|r| r.trim().parse::<Rational>().map_err(|_| Failure::Domain(format!("bad direction {r:?}"))))
        .collect::<Outcome<Vec<_>>>()?;
    if dirs.len() != s.len() {
        return domain(format!("{} exponents but {} directions", s.len(), dirs.len()));
    }
    let letters = s
        .iter()
        .zip(dirs)
        .map(|(&x, r)| Ok(LetterPair::new(x, Direction::constant(r)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Word::new(letters))
}

fn series_json<C: Coefficient>(f: &LaurentSeries<C>, order: i64) -> Value {
    let top = order.min(f.hi());
    let coeffs: Vec<Value> = (f.lo()..=top)
        .map(|k| json!({ "k": k, "value": f.coeff_at(k).expect("inside window").to_string() }))
        .collect();
    json!({ "lo": f.lo(), "hi": f.hi(), "text": f.render(Some(order)), "coefficients": coeffs })
}

pub fn expand(a: &ExpandArgs, policy: WindowPolicy) -> Outcome<Report> {
    if a.s.is_empty() {
        return domain("expand needs at least one exponent");
    }
    if signature(&a.s)? != Signature::NonPositive {
        return domain("expand supports non-positive exponents only");
    }
    let word = parse_directions(&a.r, &a.s)?;
    // widen the top so that φ± are still known up to the requested order
    let base = policy.window_for(&word);
    let window = Window::new(base.lo, base.hi + a.order.max(0) + base.hi)?;
    let engine = Birkhoff::<RatFunc>::new();
    let z = engine.regularized().z_nonpos(&word, window)?;
    let minus = engine.phi_minus(&word, window)?;
    let plus = engine.phi_plus(&word, window)?;
    for f in [&z, &minus, &plus] {
        if f.hi() < a.order {
            return domain(format!("window too small for order {}: known up to e^{}", a.order, f.hi()));
        }
    }
    let zeta = plus.coeff_at(0)?;
    let mut result = json!({
        "window": [window.lo, window.hi],
        "z": series_json(&z, a.order),
        "phi_minus": series_json(&minus, a.order),
        "phi_plus": series_json(&plus, a.order),
        "zeta": zeta.to_string(),
    });
    let mut text = format!(
        "Z      = {}\nphi_-  = {}\nphi_+  = {}\nzeta   = {}",
        z.render(Some(a.order)),
        minus.render(Some(a.order)),
        plus.render(Some(a.order)),
        zeta
    );
    if a.r.trim() == "auto" {
        let limit = zeta.eval_at_delta_zero()?;
        result["limit"] = json!(limit.to_string());
        let _ = write!(text, "\nd -> 0 : {limit}");
    }
    Ok(Report {
        command: "expand",
        input: json!({ "s": a.s, "r": a.r, "order": a.order }),
        result,
        checks: Vec::new(),
        text,
    })
}

/// All words over `[lo, hi]` of the given depth.
fn words(depth: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..depth).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|w| (lo..=hi).map(move |x| [w.clone(), vec![x]].concat())).collect()
    })
}

fn weight(s: &[i64]) -> u64 {
    s.iter().map(|x| x.unsigned_abs()).sum()
}

/// Ordered pairs of non-empty words over `[lo, hi]` within the bounds.
fn word_pairs(lo: i64, hi: i64, max_depth: usize, max_weight: u64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut pairs = Vec::new();
    for da in 1..max_depth {
        for db in 1..=(max_depth - da) {
            for a in words(da, lo, hi) {
                for b in words(db, lo, hi) {
                    if weight(&a) + weight(&b) <= max_weight {
                        pairs.push((a.clone(), b));
                    }
                }
            }
        }
    }
    pairs
}

fn product_terms(a: &[i64], b: &[i64]) -> BTreeMap<Vec<i64>, Rational> {
    let mut out: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for (w, c) in quasi_shuffle(&Word::with_delta_directions(a), &Word::with_delta_directions(b)).terms() {
        let e = out.entry(w.exponents()).or_insert_with(|| rat(0, 1));
        *e += c;
    }
    out
}

fn oracle_check(a: &Word, b: &Word) -> Outcome<Check> {
    let same = quasi_shuffle(a, b) == stuffle_oracle(a, b)?;
    Ok(Check::new(format!("stuffle oracle {a} * {b}"), same))
}

fn suite_stuffle(a: &CheckArgs, policy: WindowPolicy) -> Outcome<Vec<Check>> {
    let w = a.max_weight as i64;
    let pairs = word_pairs(-w, 0, a.max_depth, a.max_weight);
    let mut needed = BTreeSet::new();
    for (x, y) in &pairs {
        needed.insert(x.clone());
        needed.insert(y.clone());
        needed.extend(product_terms(x, y).into_keys());
    }
    let needed: Vec<Vec<i64>> = needed.into_iter().collect();
    let values: BTreeMap<Vec<i64>, Rational> = needed
        .par_iter()
        .map_init(|| Renormalizer::new(policy), |r, s| r.gzeta_nonpos(s).map(|v| (s.clone(), v)))
        .collect::<Result<_, _>>()?;
    let mut checks = Vec::with_capacity(2 * pairs.len());
    for (x, y) in &pairs {
        let lhs = &values[x] * &values[y];
        let rhs = product_terms(x, y).iter().fold(rat(0, 1), |acc, (w, c)| acc + c * &values[w]);
        let name = format!("gzeta{} * gzeta{}", tuple(x), tuple(y));
        let check = Check::new(name, lhs == rhs);
        checks.push(if lhs == rhs { check } else { check.with_detail(format!("{lhs} != {rhs}")) });
        checks.push(oracle_check(&Word::with_delta_directions(x), &Word::with_delta_directions(y))?);
    }
    Ok(checks)
}

fn suite_table(policy: WindowPolicy) -> Outcome<Vec<Check>> {
    let values = grid(MAX_TABLE, MAX_TABLE - 1, policy)?;
    let at = |i: i64, j: i64| &values[i as usize - 1][j as usize - 1];
    let mut checks = Vec::new();
    for ((i, j), expect) in table_anchors() {
        let got = at(i, j);
        let c = Check::new(format!("anchor gzeta(-{i},-{j}) = {expect}"), *got == expect);
        checks.push(if *got == expect { c } else { c.with_detail(format!("got {got}")) });
    }
    for i in 1..=MAX_TABLE as i64 {
        for j in 1..MAX_TABLE as i64 {
            let closed = z2_closed_form(-i, -j)?;
            let c = Check::new(format!("closed form gzeta(-{i},-{j})"), *at(i, j) == closed);
            checks.push(c);
            if (i + j) % 2 == 1 {
                let expect = -zeta_nonpositive(-i - j)? / rat(2, 1);
                checks.push(Check::new(format!("parity gzeta(-{i},-{j}) = {expect}"), *at(i, j) == expect));
            }
            if i == j && i % 2 == 0 {
                checks
                    .push(Check::new(format!("even diagonal gzeta(-{i},-{j}) = 0"), at(i, j) == &rat(0, 1)));
            }
        }
    }
    Ok(checks)
}

fn suite_oracle(a: &CheckArgs) -> Outcome<Vec<Check>> {
    let w = a.max_weight as i64;
    let mut words_checked: Vec<Word> = Vec::new();
    for d in 1..=a.max_depth {
        for s in words(d, -w, 0).into_iter().filter(|s| weight(s) <= a.max_weight) {
            let dirs: Vec<i64> = s.iter().map(|x| x.abs() + 1).collect();
            words_checked.push(Word::with_directions(&s, &dirs)?);
            if d <= 2 {
                words_checked.push(Word::with_delta_directions(&s));
            }
        }
    }
    let mut checks = words_checked
        .par_iter()
        .map_init(Birkhoff::<RatFunc>::new, |engine, word| -> Outcome<Check> {
            let window = WindowPolicy::default().window_for(word);
            let same = engine.phi_plus(word, window)? == engine.phi_plus_closed(word, window)?;
            Ok(Check::new(format!("phi_plus closed form {word}"), same))
        })
        .collect::<Outcome<Vec<_>>>()?;
    for (x, y) in word_pairs(-w, 0, a.max_depth, a.max_weight) {
        let dirs = |s: &[i64]| s.iter().map(|v| v.abs() + 1).collect::<Vec<_>>();
        checks.push(oracle_check(
            &Word::with_directions(&x, &dirs(&x))?,
            &Word::with_directions(&y, &dirs(&y))?,
        )?);
    }
    Ok(checks)
}

fn symbol(parts: &[i64]) -> Outcome<SymbolicValue> {
    Ok(SymbolicValue::symbol(MzvSymbol::new(Composition::new(parts.to_vec())?)?))
}

fn suite_positive(a: &CheckArgs) -> Outcome<Vec<Check>> {
    let t = SymbolicValue::t();
    let mut checks = vec![Check::new("gzeta(1) = T", gzeta_positive(&[1])? == t)];
    let half = rat(1, 2);
    let expect = symbolic_mul(&t, &t).scale(&half).sub(&symbol(&[2])?.scale(&half));
    checks.push(Check::new("gzeta(1,1) = 1/2*T^2 - 1/2*z(2)", gzeta_positive(&[1, 1])? == expect));
    let lhs = gzeta_positive(&[1, 2])?.add(&symbol(&[2, 1])?).add(&symbol(&[3])?);
    checks.push(Check::new("gzeta(1,2) + z(2,1) + z(3) = z(2)*T", lhs == symbolic_mul(&symbol(&[2])?, &t)));

    let w = a.max_weight as i64;
    for d in 1..=a.max_depth {
        for s in words(d, 1, w) {
            if weight(&s) <= a.max_weight && s[0] >= 2 {
                let same = gzeta_positive(&s)? == symbol(&s)?;
                checks.push(Check::new(format!("gzeta{} = z{}", tuple(&s), tuple(&s)), same));
            }
        }
    }
    let pairs = word_pairs(1, w, a.max_depth, a.max_weight);
    let products = pairs
        .par_iter()
        .map(|(x, y)| -> Outcome<Check> {
            let lhs = symbolic_mul(&gzeta_positive(x)?, &gzeta_positive(y)?);
            let mut rhs = SymbolicValue::zero();
            for (word, c) in product_terms(x, y) {
                rhs = rhs.add(&gzeta_positive(&word)?.scale(&c));
            }
            Ok(Check::new(format!("gzeta{} * gzeta{}", tuple(x), tuple(y)), lhs == rhs))
        })
        .collect::<Outcome<Vec<_>>>()?;
    checks.extend(products);
    Ok(checks)
}

pub fn check(a: &CheckArgs, policy: WindowPolicy) -> Outcome<Report> {
    if a.max_depth == 0 || a.max_depth > MAX_CHECK_DEPTH || a.max_weight > MAX_CHECK_WEIGHT {
        return domain(format!(
            "check bounds must satisfy 1 <= max-depth <= {MAX_CHECK_DEPTH}, max-weight <= {MAX_CHECK_WEIGHT}"
        ));
    }
    let (name, checks) = match a.suite {
        Suite::Stuffle => ("stuffle", suite_stuffle(a, policy)?),
        Suite::Table => ("table", suite_table(policy)?),
        Suite::Oracle => ("oracle", suite_oracle(a)?),
        Suite::Positive => ("positive", suite_positive(a)?),
    };
    let passed = checks.iter().filter(|c| c.pass).count();
    Ok(Report {
        command: "check",
        input: json!({ "suite": name, "max_depth": a.max_depth, "max_weight": a.max_weight }),
        result: json!({ "instances": checks.len(), "passed": passed, "failed": checks.len() - passed }),
        text: format!("suite {name}"),
        checks,
    })
}
