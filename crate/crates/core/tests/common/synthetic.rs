//! A small labelled corpus and a knowledge base whose records line up with
//! the labels.
//!
//! Each category owns a large pool of rare words; a document uses only three
//! of them, so many test words never occur in training. Twenty knowledge
//! records (five per category, page rank above 5) cover two thirds of each
//! pool and carry the category's name among their categories, which lets
//! enrichment bridge unseen words.
//!
//! The other thirty records are noise: low page rank, titles that are
//! lowercase echoes of a category's concepts or carry a year, lowercase
//! category names, and contents drawn from the *other* categories' words.
//! Anything that lets them through attaches a wrong category's vocabulary
//! to a document.

use std::collections::BTreeSet;

use kbcat::corpus::RawDocument;
use kbcat::kbindex::KnowledgeRecord;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CATEGORIES: [&str; 4] = ["astronomy", "cuisine", "finance", "sailing"];
const DISPLAY: [&str; 4] = ["Astronomy", "Cuisine", "Finance", "Sailing"];

const POOL: usize = 300;
const COVERED: usize = 200;
const RECORDS_PER_CATEGORY: usize = 5;
const DOCS_PER_CATEGORY: usize = 50;
const TOPIC_WORDS_PER_DOC: usize = 3;
const FILLERS: usize = 100;
const FILLER_WORDS_PER_DOC: usize = 10;
const NOISE_RECORDS: usize = 30;
const NOISE_FILLERS: usize = 4;
const NOISE_FOREIGN: usize = 10;

pub struct Synthetic {
    pub docs: Vec<RawDocument>,
    pub records: Vec<KnowledgeRecord>,
    pub categories: Vec<String>,
}

fn pseudo_words(rng: &mut ChaCha8Rng, n: usize, taken: &mut BTreeSet<String>) -> Vec<String> {
    const C: &[u8] = b"bdfgklmnprstvz";
    const V: &[u8] = b"aeiou";
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let w: String = (0..3)
            .flat_map(|_| [C[rng.gen_range(0..C.len())] as char, V[rng.gen_range(0..V.len())] as char])
            .collect();
        if taken.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

fn capitalise(w: &str) -> String {
    let mut c = w.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}

pub fn synthetic(seed: u64) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taken = BTreeSet::new();
    let pools: Vec<Vec<String>> = (0..CATEGORIES.len()).map(|_| pseudo_words(&mut rng, POOL, &mut taken)).collect();
    let fillers = pseudo_words(&mut rng, FILLERS, &mut taken);
    let names = pseudo_words(&mut rng, CATEGORIES.len() * (2 * RECORDS_PER_CATEGORY + 6), &mut taken);
    let mut names = names.into_iter().map(|n| capitalise(&n));

    let mut records = Vec::new();
    let per_record = COVERED / RECORDS_PER_CATEGORY;
    for (c, pool) in pools.iter().enumerate() {
        let linked: Vec<String> = (0..6).map(|_| names.next().unwrap()).collect();
        for r in 0..RECORDS_PER_CATEGORY {
            let title = format!("{} {}", names.next().unwrap(), names.next().unwrap());
            let contents = pool[r * per_record..(r + 1) * per_record].join(" ");
            let mut rec = KnowledgeRecord::new(title, contents);
            rec.page_rank = rng.gen_range(6..=20);
            rec.categories = vec![DISPLAY[c].to_string(), format!("{} concepts", DISPLAY[c])];
            rec.linked_concepts = linked.choose_multiple(&mut rng, 3).cloned().collect();
            records.push(rec);
        }
    }
    for i in 0..NOISE_RECORDS {
        let c = i % CATEGORIES.len();
        // a lowercase echo of one of the category's own concepts, or a dated list
        let title = if i < CATEGORIES.len() * RECORDS_PER_CATEGORY {
            records[c * RECORDS_PER_CATEGORY + (i / CATEGORIES.len()) % RECORDS_PER_CATEGORY]
                .title
                .to_lowercase()
        } else {
            format!("{} in {}", CATEGORIES[c], 1980 + i)
        };
        let mut contents: Vec<&str> = fillers.choose_multiple(&mut rng, NOISE_FILLERS).map(String::as_str).collect();
        for (_, pool) in pools.iter().enumerate().filter(|(o, _)| *o != c) {
            contents.extend(pool.choose_multiple(&mut rng, NOISE_FOREIGN).map(String::as_str));
        }
        let mut rec = KnowledgeRecord::new(title, contents.join(" "));
        rec.page_rank = rng.gen_range(1..=5);
        rec.categories = vec![CATEGORIES[c].to_string(), format!("{} concepts", CATEGORIES[c])];
        records.push(rec);
    }

    let mut docs = Vec::new();
    for (c, pool) in pools.iter().enumerate() {
        for d in 0..DOCS_PER_CATEGORY {
            let mut ws: Vec<&str> = pool.choose_multiple(&mut rng, TOPIC_WORDS_PER_DOC).map(String::as_str).collect();
            ws.extend(fillers.choose_multiple(&mut rng, FILLER_WORDS_PER_DOC).map(String::as_str));
            ws.shuffle(&mut rng);
            let id = format!("{}-{d:03}", CATEGORIES[c]);
            docs.push(RawDocument::new(id, ws.join(" ")).with_labels([CATEGORIES[c]]));
        }
    }
    Synthetic {
        docs,
        records,
        categories: CATEGORIES.iter().map(|s| s.to_string()).collect(),
    }
}
