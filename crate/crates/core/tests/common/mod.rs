#![allow(dead_code)]

pub mod oracles;
pub mod search_gen;
pub mod synthetic;

use std::collections::BTreeSet;
use std::sync::Arc;

use kbcat::corpus::RawDocument;
use kbcat::kbindex::KnowledgeRecord;
use kbcat::textproc::{EntityTag, Gazetteer, NounLexicon, Representation, Resources, StopList, TaggedDocument, Token};

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The two concepts of the worked enrichment example, with contents written
/// for these tests.
pub fn table1_records() -> Vec<KnowledgeRecord> {
    let mut health = KnowledgeRecord::new(
        "Health insurance in the United States",
        "health insurance in the united states is provided by private insurers employers \
         and public programs such as medicare and medicaid; premiums coverage and reform \
         of the insurance market are long running political questions",
    );
    health.page_rank = 9;
    health.redirects = strings(&["Health insurance in US", "Health insurance reform"]);
    health.categories = strings(&[
        "Health insurance in the United States",
        "Health insurance",
        "Medicare and Medicaid (United States)",
        "Healthcare in the United States",
    ]);
    health.linked_concepts = strings(&[
        "American Enterprise Institute",
        "Congressional Budget Office",
        "Newborns' and Mothers' Health Protection Act",
        "American College of Physicians",
        "United States Census Bureau",
        "TRICARE",
        "Medicare (United States)",
    ]);

    let mut kaiser = KnowledgeRecord::new(
        "Kaiser Permanente",
        "kaiser permanente is an integrated managed care consortium of hospitals physicians \
         and a health maintenance organization based in oakland california",
    );
    kaiser.page_rank = 8;
    kaiser.redirects = strings(&[
        "Kaiser Foundation Research Institute",
        "Kaiser Permanente Hospital",
        "Kaiser Permanente entities",
        "Kaiser Permanente hospital",
    ]);
    kaiser.entity_types = strings(&["Freebase: organization"]);
    kaiser.categories = strings(&[
        "Health care companies of the United States",
        "Hospital networks",
        "Non-profit organizations based in the United States",
        "Health maintenance organizations",
        "Medical and health organizations based in the United States",
        "Companies based in Oakland, California",
    ]);
    kaiser.linked_concepts = strings(&[
        "AFL-CIO",
        "Elk City, Oklahoma",
        "Ohio",
        "Georgia (U.S. state)",
        "Preventive medicine",
        "Los Angeles Times",
        "Henry J. Kaiser",
        "Centers for Disease Control and Prevention",
    ]);
    vec![health, kaiser]
}

/// The newsgroup post used for the representation examples.
pub const RENO_POST: &str = "Why? He, Reno, and the FBI got what they wanted -- a reminder of who is the boss \
in America -- the thugs who work for the government.-- Clayton E. Cramer \
{uunet,pyramid}!optilink!cramer My opinions, all mine!";

/// Stop words consistent with the example's T1 output, noun entries and a
/// gazetteer consistent with its T2..T4 outputs.
pub fn reno_resources() -> Resources {
    let stoplist: StopList = [
        "why", "he", "and", "the", "what", "they", "a", "is", "in", "for", "e", "my", "all", "mine",
    ]
    .into_iter()
    .collect();
    let mut nouns = NounLexicon::new();
    for w in ["of", "who", "boss", "thugs", "uunet", "opinions"] {
        nouns.insert(w, true);
    }
    for w in ["got", "wanted", "work", "pyramid", "optilink"] {
        nouns.insert(w, false);
    }
    let mut gaz = Gazetteer::new();
    gaz.insert("reno", EntityTag::Person).unwrap();
    gaz.insert("fbi", EntityTag::Organization).unwrap();
    gaz.insert("america", EntityTag::Location).unwrap();
    gaz.insert("clayton e. cramer", EntityTag::Person).unwrap();
    gaz.insert("clayton cramer", EntityTag::Person).unwrap();
    Resources {
        stoplist: Some(stoplist),
        tagger: Some(Arc::new(gaz)),
        nouns: Some(Arc::new(nouns)),
    }
}

pub fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

/// A T1 document whose tokens are exactly `surfaces`.
pub fn t1_doc(id: &str, surfaces: &[&str]) -> TaggedDocument {
    TaggedDocument {
        id: id.into(),
        tokens: surfaces
            .iter()
            .enumerate()
            .map(|(i, s)| (Token::new(*s, i), EntityTag::None))
            .collect(),
        labels: BTreeSet::new(),
        representation: Representation::T1,
    }
}

pub fn raw(id: &str, text: &str, labels: &[&str]) -> RawDocument {
    RawDocument::new(id, text).with_labels(labels.iter().copied())
}

/// The E2 example: document tokens and the query printed for them.
pub const STERLING_POST: &str = "sterling drug said submitted new drug application food drug administration \
permission market oral form corotrope (milrinone) drug treating chronic congestive heart failure. \
sterling said application includes series studies 952 patients results multicenter studies involving \
571 patients demonstrate efficacy safety drug alternative digitalis.";

pub const STERLING_QUERY: &str = "wikiTitle:usa contents:sterling \
contents:drug contents:said contents:submitted \
contents:new contents:drug contents:application \
contents:food contents:drug contents:administration \
contents:permission contents:market contents:oral \
contents:form contents:corotrope contents:(milrinone) \
contents:drug contents:treating contents:chronic \
contents:congestive contents:heart contents:failure. \
contents:sterling contents:said contents:application \
contents:includes contents:series contents:studies \
contents:952 contents:patients contents:results \
contents:multicenter contents:studies contents:involving \
contents:571 contents:patients contents:demonstrate \
contents:efficacy contents:safety contents:drug \
contents:alternative contents:digitalis. -pageRank:[1 TO 5]";

pub struct SvmFixture {
    pub name: String,
    pub x: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub c: f64,
}

/// Ten small problems: separable and overlapping clouds in one to three
/// dimensions across a range of C.
pub fn svm_fixtures() -> Vec<SvmFixture> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20_240_601);
    let specs: [(usize, usize, f64, f64); 10] = [
        // (points, dims, C, class separation)
        (8, 1, 1.0, 3.0),
        (12, 1, 0.1, 0.5),
        (20, 2, 1000.0, 4.0),
        (20, 2, 1.0, 1.0),
        (25, 2, 10.0, 0.3),
        (15, 3, 0.5, 2.0),
        (25, 3, 1000.0, 5.0),
        (25, 3, 2.0, 0.8),
        (10, 2, 100.0, 0.0),
        (18, 1, 5.0, 1.5),
    ];
    specs
        .iter()
        .enumerate()
        .map(|(k, &(n, dims, c, sep))| {
            let mut x = Vec::with_capacity(n);
            let mut y = Vec::with_capacity(n);
            for i in 0..n {
                let label = if i % 2 == 0 { 1.0 } else { -1.0 };
                let p: Vec<f64> = (0..dims)
                    .map(|d| rng.gen_range(-1.0..1.0) + if d == 0 { label * sep / 2.0 } else { 0.0 })
                    .collect();
                x.push(p);
                y.push(label);
            }
            SvmFixture {
                name: format!("fixture{k}(n={n},d={dims},C={c})"),
                x,
                y,
                c,
            }
        })
        .collect()
}
