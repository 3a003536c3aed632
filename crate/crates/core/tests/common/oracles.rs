//! Independent reference computations. None of these call into the library
//! code they are compared against.

use kbcat::Rational;

// ---------------------------------------------------------------- search

/// A record whose text fields are already lowercase, space-separated words.
#[derive(Debug, Clone)]
pub struct PlainRecord {
    pub title: String,
    pub contents: String,
    pub categories: Vec<String>,
    pub types: Vec<String>,
    pub page_rank: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OField {
    Contents,
    Title,
    Categories,
    Types,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OOccur {
    Should,
    Must,
    MustNot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OBody {
    Term(OField, String),
    Rank(u32, u32),
}

fn field_words(r: &PlainRecord, f: OField) -> Vec<String> {
    match f {
        OField::Contents => r.contents.split_whitespace().map(str::to_string).collect(),
        OField::Title => r.title.split_whitespace().map(str::to_string).collect(),
        OField::Categories => r.categories.iter().flat_map(|c| c.split_whitespace().map(str::to_string)).collect(),
        OField::Types => r.types.clone(),
    }
}

fn is_scored(f: OField) -> bool {
    matches!(f, OField::Contents | OField::Title)
}

/// Exhaustive scoring of every record; returns (title, score) best first,
/// ties by title, truncated to `n`.
pub fn brute_force_search(records: &[PlainRecord], clauses: &[(OOccur, OBody)], n: usize) -> Vec<(String, f64)> {
    let total = clauses.iter().filter(|(o, _)| *o != OOccur::MustNot).count();
    let mut out = Vec::new();
    if total == 0 {
        return out;
    }
    let n_records = records.len() as f64;
    'records: for r in records {
        let mut matched = 0usize;
        let mut term_hit = false;
        let mut sum = 0.0f64;
        for (occur, body) in clauses {
            let (hit, add) = match body {
                OBody::Rank(lo, hi) => (*lo <= r.page_rank && r.page_rank <= *hi, 0.0),
                OBody::Term(f, t) => {
                    let ws = field_words(r, *f);
                    let tf = ws.iter().filter(|w| *w == t).count();
                    if tf == 0 {
                        (false, 0.0)
                    } else if is_scored(*f) {
                        let df = records.iter().filter(|o| field_words(o, *f).contains(t)).count() as f64;
                        let idf = 1.0 + (n_records / (df + 1.0)).ln();
                        let norm = 1.0 / (ws.len() as f64).sqrt();
                        (true, (tf as f64).sqrt() * idf * idf * norm)
                    } else {
                        (true, 0.0)
                    }
                }
            };
            match occur {
                OOccur::MustNot if hit => continue 'records,
                OOccur::MustNot => {}
                OOccur::Must if !hit => continue 'records,
                _ => {
                    if hit {
                        matched += 1;
                        sum += add;
                        term_hit |= matches!(body, OBody::Term(..));
                    }
                }
            }
        }
        if term_hit {
            out.push((r.title.clone(), matched as f64 / total as f64 * sum));
        }
    }
    out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    out.truncate(n);
    out
}

// --------------------------------------------------------------- metrics

/// Micro and macro F by direct enumeration over bit patterns:
/// bit `d * cats + c` set means document `d` has category `c`.
pub fn enumerate_f(gold: u32, pred: u32, docs: usize, cats: usize) -> (Rational, Rational) {
    let zero = Rational::from_integer(0);
    let f = |tp: i64, fp: i64, fnn: i64| -> Rational {
        let p = if tp + fp == 0 { zero } else { Rational::new(tp, tp + fp) };
        let r = if tp + fnn == 0 { zero } else { Rational::new(tp, tp + fnn) };
        if p + r == zero {
            zero
        } else {
            Rational::from_integer(2) * p * r / (p + r)
        }
    };
    let (mut stp, mut sfp, mut sfn) = (0, 0, 0);
    let mut macro_sum = zero;
    for c in 0..cats {
        let (mut tp, mut fp, mut fnn) = (0, 0, 0);
        for d in 0..docs {
            let bit = 1u32 << (d * cats + c);
            match (gold & bit != 0, pred & bit != 0) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fnn += 1,
                _ => {}
            }
        }
        stp += tp;
        sfp += fp;
        sfn += fnn;
        macro_sum += f(tp, fp, fnn);
    }
    (f(stp, sfp, sfn), macro_sum / Rational::from_integer(cats as i64))
}

// ------------------------------------------------------------------- svm

pub struct SvmOracle {
    pub w: Vec<f64>,
    pub b: f64,
    pub primal: f64,
    pub dual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn primal(w: &[f64], b: f64, x: &[Vec<f64>], y: &[f64], c: f64) -> f64 {
    let hinge: f64 = x.iter().zip(y).map(|(xi, yi)| (1.0 - yi * (dot(w, xi) + b)).max(0.0)).sum();
    0.5 * dot(w, w) + c * hinge
}

/// Euclidean projection onto {0 ≤ α ≤ C, yᵀα = 0} by bisection on the
/// multiplier of the equality constraint.
fn project(v: &[f64], y: &[f64], c: f64) -> Vec<f64> {
    let at = |lam: f64| -> Vec<f64> { v.iter().zip(y).map(|(vi, yi)| (vi - lam * yi).clamp(0.0, c)).collect() };
    let bound = v.iter().fold(0.0f64, |m, x| m.max(x.abs())) + c + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let s: f64 = at(mid).iter().zip(y).map(|(a, yi)| a * yi).sum();
        if s > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// Accelerated projected gradient on the dual, then the bias that minimises
/// the primal for the resulting `w`, found by evaluating every breakpoint.
pub fn svm_oracle(x: &[Vec<f64>], y: &[f64], c: f64) -> SvmOracle {
    let n = x.len();
    let dim = x[0].len();
    let q: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| y[i] * y[j] * dot(&x[i], &x[j])).collect()).collect();
    let lip: f64 = (0..n).map(|i| q[i][i]).sum::<f64>().max(1e-12);
    let mut alpha = vec![0.0; n];
    let mut z = alpha.clone();
    let mut t = 1.0f64;
    let w_of = |a: &[f64]| -> Vec<f64> {
        let mut w = vec![0.0; dim];
        for i in 0..n {
            for k in 0..dim {
                w[k] += a[i] * y[i] * x[i][k];
            }
        }
        w
    };
    let best_b = |w: &[f64]| -> f64 {
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..n {
            let b = y[i] - dot(w, &x[i]);
            let p = primal(w, b, x, y, c);
            if p < best.0 {
                best = (p, b);
            }
        }
        best.1
    };
    for it in 0..200_000 {
        let g: Vec<f64> = (0..n).map(|i| dot(&q[i], &z) - 1.0).collect();
        let step: Vec<f64> = z.iter().zip(&g).map(|(zi, gi)| zi - gi / lip).collect();
        let next = project(&step, y, c);
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        z = next.iter().zip(&alpha).map(|(a, p)| a + (t - 1.0) / t_next * (a - p)).collect();
        alpha = next;
        t = t_next;
        if it % 500 == 499 {
            let w = w_of(&alpha);
            let d = alpha.iter().sum::<f64>() - 0.5 * dot(&w, &w);
            let p = primal(&w, best_b(&w), x, y, c);
            if p - d <= 1e-9 * p.abs().max(1e-12) {
                break;
            }
        }
    }
    let w = w_of(&alpha);
    let b = best_b(&w);
    SvmOracle {
        dual: alpha.iter().sum::<f64>() - 0.5 * dot(&w, &w),
        primal: primal(&w, b, x, y, c),
        w,
        b,
    }
}
