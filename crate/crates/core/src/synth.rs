//! Seeded generators for synthetic Java corpora, used by tests, the
//! acceptance suite and the benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::source_model::SourceFile;

const VISIBILITY: [&str; 4] = ["public ", "protected ", "", "private "];
const EXTERNAL: [&str; 4] = ["String", "Object", "Thread", "Integer"];

fn class_name(i: usize) -> String {
    format!("C{i:03}")
}

/// A corpus of `classes` classes, one per file, with random fields,
/// methods, bodies and supertypes referencing each other, external types
/// and occasionally themselves.
pub fn random_corpus(classes: usize, seed: u64) -> Vec<SourceFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..classes).map(class_name).collect();
    let interfaces: Vec<bool> = (0..classes).map(|_| rng.gen_bool(0.15)).collect();

    let mut files = Vec::with_capacity(classes);
    for i in 0..classes {
        let pick = |rng: &mut ChaCha8Rng| -> String {
            match rng.gen_range(0..10) {
                0 => EXTERNAL.choose(rng).unwrap().to_string(),
                1 => names[i].clone(),
                _ => names.choose(rng).unwrap().clone(),
            }
        };
        let ty = |rng: &mut ChaCha8Rng| -> String {
            let base = pick(rng);
            match rng.gen_range(0..6) {
                0 => format!("java.util.List<{base}>"),
                1 => format!("{base}[]"),
                2 => format!("Map<{}, {base}>", pick(rng)),
                _ => base,
            }
        };

        let mut src = String::from("// generated\n");
        if interfaces[i] {
            src.push_str(&format!("public interface {} ", names[i]));
            if rng.gen_bool(0.3) {
                src.push_str(&format!("extends {} ", pick(&mut rng)));
            }
            src.push_str("{\n");
            for m in 0..rng.gen_range(0..4) {
                src.push_str(&format!(
                    "    {} op{m}({} a);\n",
                    ty(&mut rng),
                    ty(&mut rng)
                ));
            }
            src.push_str("}\n");
        } else {
            src.push_str(&format!("public class {} ", names[i]));
            if rng.gen_bool(0.3) {
                src.push_str(&format!("extends {} ", pick(&mut rng)));
            }
            if rng.gen_bool(0.2) {
                src.push_str(&format!(
                    "implements {}, {} ",
                    pick(&mut rng),
                    pick(&mut rng)
                ));
            }
            src.push_str("{\n");
            for f in 0..rng.gen_range(0..5) {
                let vis = VISIBILITY.choose(&mut rng).unwrap();
                let t = ty(&mut rng);
                if rng.gen_bool(0.4) {
                    src.push_str(&format!("    {vis}{t} f{f} = new {}();\n", pick(&mut rng)));
                } else {
                    src.push_str(&format!("    {vis}{t} f{f};\n"));
                }
            }
            if rng.gen_bool(0.3) {
                src.push_str(&format!(
                    "    /* decoy: {} x = new {}(); */\n",
                    pick(&mut rng),
                    pick(&mut rng)
                ));
            }
            for m in 0..rng.gen_range(0..5) {
                let vis = VISIBILITY.choose(&mut rng).unwrap();
                let ret = if rng.gen_bool(0.4) {
                    "void".to_string()
                } else {
                    ty(&mut rng)
                };
                let params: Vec<String> = (0..rng.gen_range(0..3))
                    .map(|p| format!("{} p{p}", ty(&mut rng)))
                    .collect();
                src.push_str(&format!("    {vis}{ret} m{m}({}) {{\n", params.join(", ")));
                for l in 0..rng.gen_range(0..3) {
                    match rng.gen_range(0..3) {
                        0 => src.push_str(&format!(
                            "        {} v{l} = new {}();\n",
                            pick(&mut rng),
                            pick(&mut rng)
                        )),
                        1 => src.push_str(&format!("        {} v{l};\n", ty(&mut rng))),
                        _ => src.push_str(&format!(
                            "        helper(new {}(), \"new {}()\");\n",
                            pick(&mut rng),
                            pick(&mut rng)
                        )),
                    }
                }
                if ret != "void" {
                    src.push_str("        return null;\n");
                }
                src.push_str("    }\n");
            }
            if rng.gen_bool(0.3) {
                src.push_str(&format!("    {}({} seed) {{}}\n", names[i], ty(&mut rng)));
            }
            src.push_str("}\n");
        }
        files.push((format!("gen/{}.java", names[i]), src));
    }
    files
}

/// One hub `Hub` and `leaves` classes `Leaf00..`, each holding a `Hub` field.
pub fn star_corpus(leaves: usize) -> Vec<SourceFile> {
    let mut files = vec![(
        "star/Hub.java".to_string(),
        "public class Hub {\n    public void ping() {}\n}\n".to_string(),
    )];
    for i in 0..leaves {
        files.push((
            format!("star/Leaf{i:02}.java"),
            format!("public class Leaf{i:02} {{\n    private Hub hub = new Hub();\n    public void run() {{}}\n}}\n"),
        ));
    }
    files
}
