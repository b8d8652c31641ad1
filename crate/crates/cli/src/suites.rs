use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use soergel::bimodule::BSWord;
use soergel::complex::{find_homotopy_equivalence, gaussian_eliminate, Complex, SearchOptions};
use soergel::prebraid::{generator_cone_homology, hexagon_check, hloc_compatibility, naturality_check};
use soergel::rouquier::{atomic_slide, rouquier, SlideConfig};
use soergel::{BraidWord, HeckeElement};

use crate::config::Config;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    R2,
    R3,
    Farcomm,
    Slides,
    Hexagons,
    Hloc,
    Decat,
    Prebraid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }

    fn of(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

type Job = Box<dyn Fn() -> soergel::Result<(Verdict, Value)> + Send + Sync>;

fn job(f: impl Fn() -> soergel::Result<(Verdict, Value)> + Send + Sync + 'static) -> Job {
    Box::new(f)
}

/// Runs jobs on a small worker pool and returns results in job order.
fn execute(jobs: Vec<(String, Job)>, threads: usize, timings: bool) -> Vec<Check> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Check>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..threads.max(1).min(jobs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some((name, f)) = jobs.get(i) else {
                    break;
                };
                let start = Instant::now();
                let (verdict, details) = match f() {
                    Ok(r) => r,
                    Err(e) => (Verdict::Fail, json!({ "reason": e.code(), "message": e.to_string() })),
                };
                let seconds = timings.then(|| start.elapsed().as_secs_f64());
                *slots[i].lock().unwrap() = Some(Check { name: name.clone(), verdict, details, seconds });
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().expect("every job ran")).collect()
}

fn equivalence_verdict(c: Complex, d: Complex, opts: &SearchOptions) -> soergel::Result<(Verdict, Value)> {
    let (c, d) = (Arc::new(c), Arc::new(d));
    let res = find_homotopy_equivalence(&c, &d, opts)?;
    let verdict = match &res.equivalence {
        Some(e) => Verdict::of(e.verify().is_ok()),
        None => Verdict::Inconclusive,
    };
    Ok((
        verdict,
        json!({
            "source": c.to_string(),
            "target": d.to_string(),
            "method": res.method,
            "class_dimension": res.class_dimension,
            "witness_sizes": res.equivalence.as_ref().map(|e| e.sizes()),
            "lattice": res.lattice,
        }),
    ))
}

fn word(n: usize, letters: &[(usize, bool)]) -> soergel::Result<Complex> {
    rouquier(&BraidWord::new(n, letters.to_vec())?)
}

fn sign(p: bool) -> &'static str {
    if p {
        ""
    } else {
        "'"
    }
}

fn jobs(suite: Suite, cfg: &Config) -> Vec<(String, Job)> {
    let opts = cfg.search();
    let window = cfg.window;
    let mut out: Vec<(String, Job)> = Vec::new();
    match suite {
        Suite::R2 => {
            let n = cfg.strands.unwrap_or(2);
            for i in 1..n {
                for first in [true, false] {
                    let opts = opts.clone();
                    let name = format!("s{}{} s{}{} ≃ R on {} strands", i, sign(first), i, sign(!first), n);
                    out.push((
                        name,
                        job(move || {
                            let c = word(n, &[(i, first), (i, !first)])?;
                            let (reduced, _) = gaussian_eliminate(&Arc::new(c.clone()), true)?;
                            let (v, mut details) = equivalence_verdict(c, Complex::unit(n), &opts)?;
                            let reduced_ok = reduced.to_string() == "R @ 0";
                            details["reduced"] = json!(reduced.to_string());
                            Ok((if reduced_ok { v } else { Verdict::Fail }, details))
                        }),
                    ));
                }
            }
        }
        Suite::R3 => {
            let n = cfg.strands.unwrap_or(3);
            for i in 1..n.saturating_sub(1) {
                let opts = opts.clone();
                out.push((
                    format!("s{0} s{1} s{0} ≃ s{1} s{0} s{1}", i, i + 1),
                    job(move || {
                        let a = word(n, &[(i, true), (i + 1, true), (i, true)])?;
                        let b = word(n, &[(i + 1, true), (i, true), (i + 1, true)])?;
                        equivalence_verdict(a, b, &opts)
                    }),
                ));
            }
        }
        Suite::Farcomm => {
            let n = cfg.strands.unwrap_or(4);
            for i in 1..n {
                for j in i + 2..n {
                    for (p, q) in [(true, true), (true, false), (false, true), (false, false)] {
                        let opts = opts.clone();
                        out.push((
                            format!("s{}{} s{}{} ≅ s{}{} s{}{}", i, sign(p), j, sign(q), j, sign(q), i, sign(p)),
                            job(move || {
                                let a = word(n, &[(i, p), (j, q)])?;
                                let b = word(n, &[(j, q), (i, p)])?;
                                let (v, details) = equivalence_verdict(a, b, &opts)?;
                                let relabel = details["method"].get("Relabel").is_some();
                                Ok((if relabel { v } else { Verdict::Fail }, details))
                            }),
                        ));
                    }
                }
            }
        }
        Suite::Slides | Suite::Prebraid => {
            for config in [SlideConfig::OneTwo, SlideConfig::TwoOne] {
                for positive in [true, false] {
                    let opts = opts.clone();
                    out.push((
                        format!("atomic slide {:?}{}", config, sign(positive)),
                        job(move || {
                            let s = atomic_slide(config, positive, &opts)?;
                            let ok = s.equivalence.verify().is_ok();
                            Ok((Verdict::of(ok), json!({
                                "class_dimension": s.class_dimension,
                                "method": s.method,
                                "witness_sizes": s.equivalence.sizes(),
                            })))
                        }),
                    ));
                }
            }
            let b1 = BSWord::new(2, vec![1], 0).expect("valid word");
            let cases = [(b1.clone(), BSWord::empty(1, 0)), (BSWord::empty(1, 0), b1.clone()), (b1.clone(), b1)];
            for (y1, y2) in cases {
                let opts = opts.clone();
                out.push((
                    format!("slide {} ⊠ {}", y1, y2),
                    job(move || {
                        let r = naturality_check(&y1, &y2, true, &opts)?;
                        Ok((Verdict::of(r.passed()), serde_json::to_value(&r).expect("serializable")))
                    }),
                ));
            }
            if matches!(suite, Suite::Prebraid) {
                out.extend(jobs(Suite::Hexagons, cfg));
                out.extend(jobs(Suite::Hloc, cfg));
            }
        }
        Suite::Hexagons => {
            let limit = cfg.strands.unwrap_or(4);
            for [a, b, c] in [[0, 1, 1], [1, 1, 1], [2, 1, 1], [1, 2, 1], [1, 1, 2]] {
                if a + b + c > limit {
                    continue;
                }
                let opts = opts.clone();
                out.push((
                    format!("hexagons ({},{},{})", a, b, c),
                    job(move || {
                        let e = |n| BSWord::empty(n, 0);
                        let r = hexagon_check(&e(a), &e(b), &e(c), &opts)?;
                        let v = if r.passed() { Verdict::Pass } else { Verdict::Inconclusive };
                        Ok((v, serde_json::to_value(&r).expect("serializable")))
                    }),
                ));
            }
        }
        Suite::Hloc => {
            out.push((
                "cone of R_s<1> -> F(s1) is exact".into(),
                job(move || {
                    let r = generator_cone_homology(2, 1, true, -window..=window)?;
                    Ok((Verdict::of(r.passed()), serde_json::to_value(&r).expect("serializable")))
                }),
            ));
            out.push((
                "cone of F(s1') -> R_s<-1> is exact".into(),
                job(move || {
                    let r = generator_cone_homology(2, 1, false, -window..=window)?;
                    Ok((Verdict::of(r.passed()), serde_json::to_value(&r).expect("serializable")))
                }),
            ));
            let limit = cfg.strands.unwrap_or(3).min(3);
            for (m, n) in [(0, 2), (1, 1), (2, 1), (1, 2)] {
                if m + n > limit {
                    continue;
                }
                out.push((
                    format!("hloc ({},{})", m, n),
                    job(move || {
                        let r = hloc_compatibility(m, n, -window..=window)?;
                        Ok((Verdict::of(r.passed()), serde_json::to_value(&r).expect("serializable")))
                    }),
                ));
            }
        }
        Suite::Decat => {
            let n = cfg.strands.unwrap_or(3);
            for len in 0..=cfg.max_len {
                out.push((
                    format!("euler characteristic of words of length {} on {} strands", len, n),
                    job(move || {
                        let words = BraidWord::all_of_length(n, len);
                        for w in &words {
                            let image = HeckeElement::braid_image(w);
                            let euler = rouquier(w)?.euler_characteristic()?;
                            let inverse = HeckeElement::braid_image(&w.inverse());
                            if euler != image || !image.mul(&inverse).sub(&HeckeElement::one(n)).is_zero() {
                                return Ok((Verdict::Fail, json!({ "word": w.to_string(), "euler": euler, "image": image })));
                            }
                        }
                        Ok((Verdict::Pass, json!({ "words": words.len() })))
                    }),
                ));
            }
        }
    }
    out
}

pub fn run(suite: Suite, cfg: &Config, timings: bool) -> Report {
    let checks = execute(jobs(suite, cfg), cfg.threads, timings);
    let verdict = checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Pass);
    let name = suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Report { schema: "soergel.report/1", suite: name, verdict, checks }
}
