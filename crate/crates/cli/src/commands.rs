use ghz_core::arith::syntax::parse_ratfunc;
use ghz_core::classifier::{
    associated_cones, candidate_colorings, coherent_validate, coloring_validate, demazure_roots_enumerate,
    enumerate_coherent, floor_condition_check, toricity_check, weight_box, CoherentFamily, Coloring,
    EnumerationBounds, ToricityVerdict,
};
use ghz_core::curve::Curve;
use ghz_core::lfihd::{
    apply_order, build_operator, kernel_in_box, toric_root_operator, verify_axioms, verify_horizontal,
    verify_stability, GradedElement, Lfihd,
};
use ghz_core::polyhedral::polyhedron::fmt_ratvec;
use ghz_core::polyhedral::LatticeVec;
use ghz_core::tvariety::{algebra_generators, graded_piece, pdiv_eval, pdiv_validate, GeneratorBounds};

use crate::report::Report;
use crate::scenario::Scenario;
use crate::{CliError, Command};

/// Per-invocation inputs beyond the scenario.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub m: Option<LatticeVec>,
    pub order: Option<usize>,
    pub coeff: Option<String>,
}

fn core(e: ghz_core::Error) -> CliError {
    CliError::Core(e.to_string())
}

fn fmt_weight(m: &[i64]) -> String {
    if m.len() == 1 {
        m[0].to_string()
    } else {
        format!("({})", m.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
}

fn fmt_coloring(c: &Coloring) -> String {
    let vs: Vec<String> = c.vertices.iter().map(|(y, v)| format!("{y} -> {}", fmt_ratvec(v))).collect();
    let inf = c.y_inf.as_ref().map(|y| format!(", y_inf = {y}")).unwrap_or_default();
    format!("y0 = {}{inf}; {}", c.y0, vs.join(", "))
}

fn fmt_family(f: &CoherentFamily) -> String {
    let lambda: Vec<String> = f.lambda.iter().map(|l| l.to_string()).collect();
    format!("{}; e = {}, s = {:?}, lambda = [{}]", fmt_coloring(&f.coloring), fmt_weight(&f.e), f.s, lambda.join(", "))
}

fn need_m(s: &Scenario, flags: &Flags) -> Result<LatticeVec, CliError> {
    let m = flags.m.clone().ok_or_else(|| CliError::Usage("this command needs --m".into()))?;
    if m.len() != s.divisor.rank() {
        return Err(CliError::Usage(format!("--m has {} entries, the rank is {}", m.len(), s.divisor.rank())));
    }
    Ok(m)
}

fn need_family(s: &Scenario) -> Result<&CoherentFamily, CliError> {
    s.family.as_ref().ok_or_else(|| CliError::Usage("the scenario has no family".into()))
}

pub fn run_command(s: &Scenario, cmd: Command, flags: &Flags, r: &mut Report) -> Result<(), CliError> {
    r.trust = s.divisor.trust_markers();
    match cmd {
        Command::Validate => validate(s, r),
        Command::Eval => {
            let m = need_m(s, flags)?;
            let e = pdiv_eval(&s.divisor, &m).map_err(core)?;
            r.detail(format!("D({}) = {e}", fmt_weight(&m)));
            r.detail(format!("floor = {}", e.floor()));
            r.positive(e.to_string());
            Ok(())
        }
        Command::Piece => {
            let m = need_m(s, flags)?;
            match graded_piece(&s.divisor, &m) {
                Ok(p) => {
                    let desc = match p.module.basis() {
                        None => format!("f_m = {} (free k[t]-module)", p.generator()),
                        Some(b) if b.is_empty() => "zero".to_string(),
                        Some(b) => format!(
                            "basis {}",
                            b.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
                        ),
                    };
                    r.positive(desc);
                }
                Err(ghz_core::Error::OutsideWeightCone(w)) => r.negative(format!("weight {w} outside the weight cone")),
                Err(e) => return Err(core(e)),
            }
            Ok(())
        }
        Command::Generators => {
            let g = algebra_generators(&s.divisor, &GeneratorBounds { radius: s.bounds.weight_box, restrict: None })
                .map_err(core)?;
            for (m, f) in &g.generators {
                r.detail(format!("({f})*chi^{}", fmt_weight(m)));
            }
            r.detail(g.certificate.clone());
            if g.stable {
                r.positive(format!("{} generators", g.generators.len()));
            } else {
                r.negative(format!("{} generators; box too small to certify", g.generators.len()));
            }
            Ok(())
        }
        Command::Colorings => {
            let cs = candidate_colorings(&s.divisor, None).map_err(core)?;
            for c in &cs {
                r.detail(fmt_coloring(c));
            }
            if cs.is_empty() {
                r.negative("no colorings");
            } else {
                r.positive(format!("{} colorings", cs.len()));
            }
            Ok(())
        }
        Command::Roots => roots(s, r),
        Command::Coherent => coherent(s, r),
        Command::Apply => apply(s, flags, r),
        Command::Verify => verify(s, flags, r),
        Command::Classify => {
            let bounds = EnumerationBounds {
                e_box: s.bounds.e_box,
                s_max: s.bounds.s_max,
                lambda_sample: s.bounds.lambda_sample.clone(),
                y0_candidates: None,
            };
            let fams = enumerate_coherent(&s.divisor, &bounds).map_err(core)?;
            for f in &fams {
                r.detail(fmt_family(f));
            }
            if fams.is_empty() {
                r.negative("no coherent families in the bounds");
            } else {
                r.positive(format!("{} coherent families", fams.len()));
            }
            Ok(())
        }
        Command::ToricCheck => {
            let t = toricity_check(&s.divisor).map_err(core)?;
            r.detail(t.detail.clone());
            match t.verdict {
                ToricityVerdict::Met => r.positive("toric"),
                ToricityVerdict::NotApplicable => r.positive("not applicable (hyperbolic)"),
                ToricityVerdict::Violated => {
                    for y in &t.fractional_support {
                        r.witness(format!("fractional part at {y}"));
                    }
                    r.negative("not toric");
                }
            }
            Ok(())
        }
        Command::Example => Err(CliError::Usage("example is dispatched before scenario commands".into())),
    }
}

fn validate(s: &Scenario, r: &mut Report) -> Result<(), CliError> {
    let v = pdiv_validate(&s.divisor);
    for w in &v.violations {
        r.witness(w.clone());
    }
    if let Some(c) = &s.coloring {
        for (clause, detail) in &coloring_validate(c).violations {
            r.witness(format!("coloring {clause}: {detail}"));
        }
    }
    if let Some(e) = &s.toric {
        if let Err(err) = toric_root_operator(s.divisor.tail(), e, s.field()) {
            r.witness(err.to_string());
        }
    }
    r.detail(format!("field {}, rank {}, tail {}", s.field(), s.divisor.rank(), s.divisor.tail()));
    if r.witnesses.is_empty() {
        r.positive("valid");
    } else {
        r.negative("invalid");
    }
    Ok(())
}

fn roots(s: &Scenario, r: &mut Report) -> Result<(), CliError> {
    let mut count = 0;
    if let Some(c) = &s.coloring {
        let a = associated_cones(c).map_err(core)?;
        r.detail(format!("tau~ = {}, distinguished ray {}", a.tau_tilde, fmt_weight(&a.distinguished_ray)));
        for root in demazure_roots_enumerate(&a.tau_tilde, &a.distinguished_ray, s.bounds.e_box, a.d).map_err(core)? {
            r.detail(fmt_ratvec(&root));
            count += 1;
        }
    } else {
        let tail = s.divisor.tail();
        for ray in tail.rays() {
            for root in demazure_roots_enumerate(tail, ray, s.bounds.e_box, 1).map_err(core)? {
                if root.iter().all(|x| x.is_integer()) {
                    r.detail(format!("ray {}: {}", fmt_weight(ray), fmt_ratvec(&root)));
                    count += 1;
                }
            }
        }
    }
    if count == 0 {
        r.negative("no roots in the box");
    } else {
        r.positive(format!("{count} roots"));
    }
    Ok(())
}

fn coherent(s: &Scenario, r: &mut Report) -> Result<(), CliError> {
    let f = need_family(s)?;
    r.detail(fmt_family(f));
    let rep = coherent_validate(f);
    for n in &rep.notes {
        r.detail(format!("note: {n}"));
    }
    for v in &rep.violations {
        r.witness(format!("{} fails {}", v.clause, v.detail));
    }
    if rep.violations.iter().all(|v| v.clause.starts_with('(')) {
        let floor = floor_condition_check(f, s.bounds.weight_box).map_err(core)?;
        for o in &floor.outcomes {
            match &o.witness {
                None => r.detail(format!("{} holds on {} cases", o.clause, o.checked)),
                Some(w) => r.witness(format!(
                    "{} fails at m = {}, y = {}: {} < {}",
                    o.clause,
                    fmt_weight(&w.m),
                    w.point,
                    w.lhs,
                    w.rhs
                )),
            }
        }
    }
    if rep.is_coherent() {
        r.positive("coherent");
    } else {
        r.negative("not coherent");
    }
    Ok(())
}

fn operator(s: &Scenario, allow_incoherent: bool) -> Result<Box<dyn Lfihd>, CliError> {
    if let Some(e) = &s.toric {
        return Ok(Box::new(toric_root_operator(s.divisor.tail(), e, s.field()).map_err(core)?));
    }
    Ok(Box::new(build_operator(need_family(s)?, allow_incoherent).map_err(core)?))
}

fn apply(s: &Scenario, flags: &Flags, r: &mut Report) -> Result<(), CliError> {
    let m = need_m(s, flags)?;
    let f = parse_ratfunc(flags.coeff.as_deref().unwrap_or("1"), s.field()).map_err(|e| CliError::Usage(e.to_string()))?;
    let x = GradedElement::monomial(m, f);
    let op = match operator(s, false) {
        Ok(op) => op,
        Err(CliError::Core(e)) => {
            r.witness(e);
            r.negative("no operator");
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let order = flags.order.unwrap_or(s.bounds.max_order);
    let res = apply_order(op.as_ref(), &x, order).map_err(core)?;
    for (i, y) in &res.values {
        if !y.is_zero() {
            r.detail(format!("d^({i})({x}) = {y}"));
        }
    }
    r.positive(if res.exact { "complete" } else { "truncated" });
    Ok(())
}

/// Test elements: certified generators over `A1`, graded-piece bases near the origin over `P1`.
fn test_elements(s: &Scenario) -> Result<Vec<GradedElement>, CliError> {
    let d = &s.divisor;
    if s.toric.is_some() {
        let cone = d.weight_cone();
        return Ok(weight_box(d.rank(), s.bounds.weight_box.min(3))
            .into_iter()
            .filter(|m| cone.contains_int(m))
            .map(|m| GradedElement::monomial(m, ghz_core::arith::RatFunc::one(s.field())))
            .collect());
    }
    if d.curve() == Curve::A1 {
        let g = algebra_generators(d, &GeneratorBounds { radius: s.bounds.weight_box, restrict: None }).map_err(core)?;
        return Ok(g.generators.into_iter().map(|(m, f)| GradedElement::monomial(m, f.expand())).collect());
    }
    let cone = d.weight_cone();
    let mut out = Vec::new();
    for m in weight_box(d.rank(), s.bounds.weight_box.min(2)).into_iter().filter(|m| cone.contains_int(m)) {
        if let Some(b) = graded_piece(d, &m).map_err(core)?.module.basis() {
            out.extend(b.into_iter().take(2).map(|f| GradedElement::monomial(m.clone(), f.expand())));
        }
    }
    Ok(out)
}

fn verify(s: &Scenario, flags: &Flags, r: &mut Report) -> Result<(), CliError> {
    let order = flags.order.unwrap_or(s.bounds.max_order);
    let tests = test_elements(s)?;
    r.detail(format!("{} test elements, order {order}", tests.len()));
    let mut coherent = true;
    if s.toric.is_none() {
        let f = need_family(s)?;
        let rep = coherent_validate(f);
        for v in &rep.violations {
            r.witness(format!("{} fails {}", v.clause, v.detail));
        }
        coherent = rep.is_coherent();
        if !coherent {
            r.detail("family is not coherent; checking the operator anyway");
        }
    }
    let (toric, dtheta) = match &s.toric {
        Some(e) => (Some(toric_root_operator(s.divisor.tail(), e, s.field())), None),
        None => (None, Some(build_operator(need_family(s)?, true))),
    };
    let op: &dyn Lfihd = match (&toric, &dtheta) {
        (Some(Ok(t)), _) => t,
        (_, Some(Ok(d))) => d,
        (Some(Err(e)), _) | (_, Some(Err(e))) => {
            r.witness(e.to_string());
            r.negative("no operator");
            return Ok(());
        }
        (None, None) => unreachable!(),
    };
    let ax = verify_axioms(op, &tests, order).map_err(core)?;
    for c in &ax.checks {
        if c.passed {
            r.detail(format!("{}: {}", c.axiom, c.detail));
        } else {
            r.witness(format!("{}: {}", c.axiom, c.detail));
        }
    }
    let mut ok = coherent && ax.passed();
    if let Some(Ok(dop)) = &dtheta {
        let st = verify_stability(op, &s.divisor, &tests, order).map_err(core)?;
        match &st.witness {
            None => r.detail(format!("stability: {} terms in A", st.checked)),
            Some(w) => {
                ok = false;
                r.witness(format!(
                    "stability: d^({})({}) has term ({})*chi^{} outside A",
                    w.order,
                    tests[w.generator],
                    w.coeff,
                    fmt_weight(&w.weight)
                ));
            }
        }
        match verify_horizontal(op, dop.horizontality_bound()).map_err(core)? {
            Some(j) => r.detail(format!("horizontal: d^({j})(t) != 0")),
            None => {
                ok = false;
                r.witness("not horizontal");
            }
        }
        if s.divisor.curve() == Curve::A1 {
            let radius = s.bounds.weight_box.min(10);
            let k = kernel_in_box(dop, &s.divisor, radius, 2).map_err(core)?;
            let ws: Vec<String> = k.weights.iter().map(|w| fmt_weight(w)).collect();
            r.detail(format!("kernel weights in box {radius}: {}", ws.join(" ")));
            for p in k.pieces.iter().filter(|p| p.dim == 1) {
                if let Some(phi) = &p.phi {
                    r.detail(format!("kernel: ({phi})*chi^{}", fmt_weight(&p.weight)));
                }
            }
            if !k.passed() {
                ok = false;
                r.witness("kernel is not a semigroup algebra of the expected shape in the box");
            }
        }
    }
    if ok {
        r.positive("pass");
    } else {
        r.negative("fail");
    }
    Ok(())
}
