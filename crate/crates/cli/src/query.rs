use std::path::PathBuf;
use std::time::Instant;

use clap::Subcommand;
use hypgrp_core::creduction::CReductionOutcome;
use hypgrp_core::decisions::{
    CentralizerResult, CosetTransversal, Decider, ElementClass, FamilyVerdict, MalnormalityVerdict,
};
use hypgrp_core::geometry::{build_ball, estimate_delta_lower_bound};
use hypgrp_core::{Error, ErrorClass, HyperbolicContext, Result, Word};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::report::{Certificate, ErrorInfo, QueryResult};

/// One decision query. Words use the presentation's syntax; `""` is the
/// empty word.
#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Query {
    /// Order of W, or a C-reduction certifying infinite order.
    Order { word: String },
    /// Representatives of the conjugacy classes of torsion elements.
    TorsionClasses,
    /// All n with W conjugate to H^n.
    ConjInto {
        #[arg(long)]
        h: String,
        word: String,
    },
    /// The n with W = H^n, if any.
    Member {
        #[arg(long)]
        h: String,
        word: String,
    },
    /// Membership in the union of the cosets R_i·⟨H⟩.
    MemberVz {
        #[arg(long)]
        h: String,
        /// Comma-separated coset representatives; must include the empty word.
        #[arg(long, value_delimiter = ',', required = true)]
        reps: Vec<String>,
        word: String,
    },
    /// (n1, n2) with U = H1^n1·V·H2^n2, if any.
    DoubleCoset { u: String, v: String, h1: String, h2: String },
    /// Nonzero (n1, n2) with H1^n1 conjugate to H2^n2, if any.
    Commensurate { h1: String, h2: String },
    /// Malnormality of ⟨H⟩, or of the family ⟨H⟩, ⟨H2⟩, ….
    Malnormal {
        #[arg(required = true)]
        hs: Vec<String>,
    },
    /// Coset representatives of ⟨H⟩ in its centralizer.
    Centralizer { h: String },
    /// Coset representatives of ⟨H⟩ in its normalizer.
    Normalizer { h: String },
    /// All roots of H, including (H, 1).
    Roots { h: String },
    /// Whether ⟨H⟩ contains every root of H.
    Maximal { h: String },
    /// Centralizer of the subgroup generated by G1, G2, ….
    CentralizerFg {
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(long, default_value_t = 4)]
        search_len: usize,
    },
    /// Center of the group.
    Center {
        #[arg(long, default_value_t = 4)]
        search_len: usize,
    },
    /// Tripod lower bound for δ over the ball of the given radius.
    DeltaEstimate {
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Builds the Cayley ball, optionally exporting its adjacency list.
    Ball {
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

/// Runs a query, verifying every certificate before it is reported.
pub fn execute(ctx: &HyperbolicContext, query: &Query) -> QueryResult {
    let mut inputs = serde_json::to_value(query).expect("serializable query");
    let command = inputs
        .as_object_mut()
        .and_then(|m| m.remove("command"))
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    let decider = Decider::new(ctx);
    let start = Instant::now();
    let mut run = Run { ctx, certificates: Vec::new() };
    let outcome = run.dispatch(&decider, query);
    let timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    let bounds_used = bounds_json(&decider);
    let mut result = QueryResult {
        command,
        inputs,
        verdict: Value::Null,
        certificates: Vec::new(),
        bounds_used,
        timing_ms,
        error: None,
        summary: String::new(),
    };
    match outcome {
        Ok((verdict, summary)) => {
            if let Some(bad) = run.certificates.iter().find(|c| !c.verified) {
                result.error = Some(ErrorInfo::new(
                    ErrorClass::Internal,
                    format!("certificate failed verification: {}", bad.equation),
                ));
            }
            result.verdict = verdict;
            result.summary = summary;
            result.certificates = run.certificates;
        }
        Err(e) => result.error = Some(ErrorInfo::from_core(&e)),
    }
    result
}

fn bounds_json(decider: &Decider) -> Map<String, Value> {
    decider
        .bounds()
        .entries()
        .into_iter()
        .map(|(k, v)| {
            let value = v.parse::<u64>().map(Value::from).unwrap_or(Value::String(v));
            (k.to_string(), value)
        })
        .collect()
}

struct Run<'c> {
    ctx: &'c HyperbolicContext,
    certificates: Vec<Certificate>,
}

impl Run<'_> {
    fn parse(&self, s: &str) -> Result<Word> {
        self.ctx.parse(s)
    }

    fn parse_all(&self, items: &[String]) -> Result<Vec<Word>> {
        items.iter().map(|s| self.parse(s)).collect()
    }

    /// Plain word text for JSON.
    fn text(&self, w: &Word) -> String {
        self.ctx.presentation().alphabet().format(w)
    }

    /// Word text for summaries and equations.
    fn show(&self, w: &Word) -> String {
        self.ctx.format(w)
    }

    fn power(&self, w: &Word, n: i64) -> String {
        match n {
            1 => format!("({})", self.show(w)),
            _ => format!("({})^{n}", self.show(w)),
        }
    }

    /// Records the equation `lhs_text = rhs_text` after checking `lhs = rhs`.
    fn certify(&mut self, lhs_text: String, lhs: &Word, rhs_text: String, rhs: &Word) {
        let verified = self.ctx.are_equal(lhs, rhs);
        self.certificates.push(Certificate { equation: format!("{lhs_text} = {rhs_text}"), verified });
    }

    fn certify_conjugation(&mut self, g: &Word, x_text: String, x: &Word, y_text: String, y: &Word) {
        let lhs = format!("{}·{}·{}⁻¹", self.show(g), x_text, self.show(g));
        self.certify(lhs, &x.conjugate_by(g), y_text, y);
    }

    fn dispatch(&mut self, d: &Decider, query: &Query) -> Result<(Value, String)> {
        match query {
            Query::Order { word } => self.order(d, &self.parse(word)?),
            Query::TorsionClasses => {
                let reps = d.torsion_class_representatives()?;
                for r in &reps {
                    if let ElementClass::Finite { order } = d.classify_element(r)? {
                        let text = self.power(r, order as i64);
                        self.certify(text, &r.pow(order as i64), "1".into(), &Word::empty());
                    }
                }
                let shown: Vec<String> = reps.iter().map(|r| self.show(r)).collect();
                Ok((json!({ "representatives": self.texts(&reps) }), format!("[{}]", shown.join(", "))))
            }
            Query::ConjInto { h, word } => {
                let (h, w) = (self.parse(h)?, self.parse(word)?);
                let exps = d.conjugate_into_cyclic(&w, &h)?;
                for &n in &exps {
                    if let Some(c) = hypgrp_core::kernel::are_conjugate(self.ctx, &w, &h.pow(n)) {
                        let (wt, ht) = (self.power(&w, 1), self.power(&h, n));
                        self.certify_conjugation(&c.conjugator, wt, &w, ht, &h.pow(n));
                    }
                }
                let shown: Vec<String> = exps.iter().map(|n| n.to_string()).collect();
                Ok((json!({ "exponents": exps }), format!("{{{}}}", shown.join(", "))))
            }
            Query::Member { h, word } => {
                let (h, w) = (self.parse(h)?, self.parse(word)?);
                let n = d.member_of_cyclic(&w, &h)?;
                if let Some(n) = n {
                    let (wt, ht) = (self.show(&w), self.power(&h, n));
                    self.certify(wt, &w, ht, &h.pow(n));
                }
                let summary = n.map_or("none".to_string(), |n| format!("n={n}"));
                Ok((json!({ "exponent": n }), summary))
            }
            Query::MemberVz { h, reps, word } => {
                let (h, w, reps) = (self.parse(h)?, self.parse(word)?, self.parse_all(reps)?);
                let found = d.virtually_z_witness(&w, &reps, &h)?;
                if let Some((i, n)) = found {
                    let rhs = format!("{}·{}", self.show(&reps[i]), self.power(&h, n));
                    let wt = self.show(&w);
                    self.certify(wt, &w, rhs, &reps[i].concat(&h.pow(n)));
                }
                let verdict = match found {
                    Some((i, n)) => json!({ "member": true, "rep": self.text(&reps[i]), "exponent": n }),
                    None => json!({ "member": false }),
                };
                Ok((verdict, found.is_some().to_string()))
            }
            Query::DoubleCoset { u, v, h1, h2 } => {
                let (u, v, h1, h2) = (self.parse(u)?, self.parse(v)?, self.parse(h1)?, self.parse(h2)?);
                let pair = d.double_coset_decide(&u, &v, &h1, &h2)?;
                if let Some((n1, n2)) = pair {
                    let rhs = format!("{}·{}·{}", self.power(&h1, n1), self.show(&v), self.power(&h2, n2));
                    let ut = self.show(&u);
                    self.certify(ut, &u, rhs, &Word::product([&h1.pow(n1), &v, &h2.pow(n2)]));
                }
                let summary = pair.map_or("none".to_string(), |(a, b)| format!("({a}, {b})"));
                Ok((json!({ "pair": pair.map(|(a, b)| [a, b]) }), summary))
            }
            Query::Commensurate { h1, h2 } => {
                let (h1, h2) = (self.parse(h1)?, self.parse(h2)?);
                match d.commensurate_cyclic(&h1, &h2)? {
                    Some(c) => {
                        let g = c.witness.conjugator;
                        let (xt, yt) = (self.power(&h1, c.n1), self.power(&h2, c.n2));
                        self.certify_conjugation(&g, xt, &h1.pow(c.n1), yt, &h2.pow(c.n2));
                        let summary = format!("({}, {}) with g={}", c.n1, c.n2, self.show(&g));
                        Ok((json!({ "n1": c.n1, "n2": c.n2, "conjugator": self.text(&g) }), summary))
                    }
                    None => Ok((json!(null), "none".into())),
                }
            }
            Query::Malnormal { hs } => {
                let hs = self.parse_all(hs)?;
                if hs.len() == 1 {
                    self.malnormal(d, &hs[0])
                } else {
                    self.family(d, &hs)
                }
            }
            Query::Centralizer { h } => {
                let h = self.parse(h)?;
                let t = d.centralizer_cyclic(&h)?;
                self.transversal(&t, |run, r| run.commutes(r, &h));
                Ok((self.transversal_json(&t), self.transversal_summary(&t)))
            }
            Query::Normalizer { h } => {
                let h = self.parse(h)?;
                let t = d.normalizer_cyclic(&h)?;
                self.transversal(&t, |run, r| {
                    let c = h.conjugate_by(r);
                    let e = if run.ctx.are_equal(&c, &h) { 1 } else { -1 };
                    let target = h.pow(e);
                    let (lt, rt) = (run.power(&h, 1), run.power(&h, e));
                    run.certify_conjugation(r, lt, &h, rt, &target);
                });
                Ok((self.transversal_json(&t), self.transversal_summary(&t)))
            }
            Query::Roots { h } => {
                let h = self.parse(h)?;
                let roots = d.roots(&h)?;
                self.certify_roots(&h, &roots);
                let shown: Vec<String> = roots.iter().map(|(r, e)| format!("({}, {e})", self.show(r))).collect();
                let list: Vec<Value> =
                    roots.iter().map(|(r, e)| json!({ "root": self.text(r), "exponent": e })).collect();
                Ok((json!({ "roots": list }), format!("{{{}}}", shown.join(", "))))
            }
            Query::Maximal { h } => {
                let h = self.parse(h)?;
                let maximal = d.maximal_cyclic(&h)?;
                let roots = d.roots(&h)?;
                self.certify_roots(&h, &roots);
                Ok((json!({ "maximal": maximal }), maximal.to_string()))
            }
            Query::CentralizerFg { gens, search_len } => {
                let gens = self.parse_all(gens)?;
                let result = d.centralizer_fg(&gens, *search_len)?;
                Ok(self.centralizer_result(&gens, &result))
            }
            Query::Center { search_len } => {
                let result = d.center(*search_len)?;
                let gens: Vec<Word> =
                    (0..self.ctx.rank()).map(|i| Word::letter(hypgrp_core::Letter::generator(i))).collect();
                Ok(self.centralizer_result(&gens, &result))
            }
            Query::DeltaEstimate { radius } => {
                let delta = estimate_delta_lower_bound(self.ctx, *radius)?;
                Ok((json!({ "delta": delta.to_string(), "radius": radius }), format!("δ >= {delta}")))
            }
            Query::Ball { radius, export } => {
                let ball = build_ball(self.ctx, *radius)?;
                let alphabet = self.ctx.presentation().alphabet();
                if let Some(path) = export {
                    let body = ball.export(|w| alphabet.display(w), |l| alphabet.format(&Word::letter(l)));
                    std::fs::write(path, body)
                        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
                }
                let layers = ball.layer_sizes();
                let summary = format!("{} vertices, layers {:?}", ball.vertex_count(), layers);
                Ok((json!({ "vertices": ball.vertex_count(), "layers": layers }), summary))
            }
        }
    }

    fn texts(&self, words: &[Word]) -> Vec<String> {
        words.iter().map(|w| self.text(w)).collect()
    }

    fn commutes(&mut self, r: &Word, h: &Word) {
        let (lt, rt) = (self.power(h, 1), self.power(h, 1));
        self.certify_conjugation(r, lt, h, rt, h);
    }

    fn order(&mut self, d: &Decider, w: &Word) -> Result<(Value, String)> {
        match d.classify_element(w)? {
            ElementClass::Finite { order } => {
                let text = self.power(w, order as i64);
                self.certify(text, &w.pow(order as i64), "1".into(), &Word::empty());
                Ok((json!({ "kind": "Finite", "order": order }), format!("Finite{{{order}}}")))
            }
            ElementClass::InfiniteOrder { certificate } => {
                let CReductionOutcome::CReduced { h1, u, n } = certificate else {
                    return Err(Error::Internal("infinite order without a C-reduction".into()));
                };
                let rhs = format!("{}·{}·{}⁻¹", self.show(&u), self.power(w, n as i64), self.show(&u));
                let h1t = self.show(&h1);
                self.certify(h1t, &h1, rhs, &w.pow(n as i64).conjugate_by(&u));
                let verdict = json!({ "kind": "InfiniteOrder", "h1": self.text(&h1), "u": self.text(&u), "n": n });
                Ok((
                    verdict,
                    format!("InfiniteOrder (C-reduced {} = u·w^{n}·u⁻¹, u = {})", self.show(&h1), self.show(&u)),
                ))
            }
        }
    }

    fn malnormal(&mut self, d: &Decider, h: &Word) -> Result<(Value, String)> {
        match d.malnormal_cyclic(h)? {
            MalnormalityVerdict::Malnormal => Ok((json!({ "kind": "Malnormal" }), "Malnormal".into())),
            MalnormalityVerdict::Witness { g, p, q } => {
                let (xt, yt) = (self.power(h, p), self.power(h, q));
                self.certify_conjugation(&g, xt, &h.pow(p), yt, &h.pow(q));
                let verdict = json!({ "kind": "Witness", "g": self.text(&g), "p": p, "q": q });
                Ok((verdict, format!("Witness{{g={}, p={p}, q={q}}}", self.show(&g))))
            }
        }
    }

    fn family(&mut self, d: &Decider, hs: &[Word]) -> Result<(Value, String)> {
        match d.malnormal_family(hs)? {
            FamilyVerdict::Malnormal => Ok((json!({ "kind": "Malnormal" }), "Malnormal".into())),
            FamilyVerdict::CrossWitness { i, j, g, p, q } => {
                let (xt, yt) = (self.power(&hs[i], p), self.power(&hs[j], q));
                self.certify_conjugation(&g, xt, &hs[i].pow(p), yt, &hs[j].pow(q));
                let verdict = json!({ "kind": "CrossWitness", "i": i, "j": j, "g": self.text(&g), "p": p, "q": q });
                Ok((verdict, format!("CrossWitness{{i={i}, j={j}, g={}, p={p}, q={q}}}", self.show(&g))))
            }
        }
    }

    fn transversal(&mut self, t: &CosetTransversal, mut check: impl FnMut(&mut Self, &Word)) {
        for r in &t.representatives {
            check(self, r);
        }
    }

    fn transversal_json(&self, t: &CosetTransversal) -> Value {
        json!({
            "base": self.text(&t.base),
            "modulus_note": t.modulus_note,
            "representatives": self.texts(&t.representatives),
        })
    }

    fn transversal_summary(&self, t: &CosetTransversal) -> String {
        let shown: Vec<String> = t.representatives.iter().map(|r| self.show(r)).collect();
        format!("[{}] over ⟨{}⟩", shown.join(", "), self.show(&t.base))
    }

    fn certify_roots(&mut self, h: &Word, roots: &[(Word, u64)]) {
        for (r, e) in roots {
            let (lt, rt) = (self.power(r, *e as i64), self.show(h));
            self.certify(lt, &r.pow(*e as i64), rt, h);
        }
    }

    fn centralizer_result(&mut self, gens: &[Word], result: &CentralizerResult) -> (Value, String) {
        let elements: &[Word] = match result {
            CentralizerResult::Finite { elements } => elements,
            CentralizerResult::VirtuallyZ { transversal } => &transversal.representatives,
        };
        let mut checked: Vec<Word> = elements.to_vec();
        if let CentralizerResult::VirtuallyZ { transversal } = result {
            checked.push(transversal.base.clone());
        }
        for x in &checked {
            for g in gens {
                let (lt, rt) =
                    (format!("{}·{}", self.show(x), self.show(g)), format!("{}·{}", self.show(g), self.show(x)));
                self.certify(lt, &x.concat(g), rt, &g.concat(x));
            }
        }
        match result {
            CentralizerResult::Finite { elements } => {
                let shown: Vec<String> = elements.iter().map(|e| self.show(e)).collect();
                (
                    json!({ "kind": "Finite", "elements": self.texts(elements) }),
                    format!("Finite{{[{}]}}", shown.join(", ")),
                )
            }
            CentralizerResult::VirtuallyZ { transversal } => {
                let mut v = self.transversal_json(transversal);
                v["kind"] = json!("VirtuallyZ");
                (v, format!("VirtuallyZ {}", self.transversal_summary(transversal)))
            }
        }
    }
}
