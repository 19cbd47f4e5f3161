#![allow(dead_code)]

use std::sync::OnceLock;

use hypgrp_core::{load_presentation, BuildOptions, HyperbolicContext, Word};

fn load(name: &str) -> HyperbolicContext {
    load_with(name, BuildOptions::default())
}

pub fn load_with(name: &str, options: BuildOptions) -> HyperbolicContext {
    let path = format!("{}/../../groups/{name}.grp", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let p = load_presentation(&text).unwrap();
    HyperbolicContext::build(p, options).unwrap()
}

macro_rules! cached {
    ($name:ident, $file:literal) => {
        pub fn $name() -> &'static HyperbolicContext {
            static CELL: OnceLock<HyperbolicContext> = OnceLock::new();
            CELL.get_or_init(|| load($file))
        }
    };
}

cached!(f2, "f2");
cached!(dinf, "dinf");
cached!(sigma2, "sigma2");
cached!(z3, "z3");
cached!(z, "z");

pub fn w(ctx: &HyperbolicContext, s: &str) -> Word {
    ctx.parse(s).unwrap()
}

/// Every word of length at most `n` over the context's alphabet, shortlex.
pub fn all_words(ctx: &HyperbolicContext, n: usize) -> Vec<Word> {
    let letters: Vec<_> = hypgrp_core::words::all_letters(ctx.rank()).collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for u in &layer {
            for &s in &letters {
                next.push(u.concat(&Word::letter(s)));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
