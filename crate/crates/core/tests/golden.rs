use std::fs;
use std::path::PathBuf;

use callan_core::bijections::{
    phi, phi_inverse, psi_b, psi_b_inverse, psi_r, psi_r_inverse, PsiIntermediate,
};
use callan_core::combinat::MBarredCallanSequence;
use callan_core::numbers::{c_table, genocchi_list};

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn input(name: &str) -> MBarredCallanSequence {
    MBarredCallanSequence::from_json(&golden(&format!("{name}.in.json"))).unwrap()
}

fn map_line(image: &MBarredCallanSequence, case: Option<&str>) -> String {
    let case = case.map_or("null".to_string(), |c| format!("\"{c}\""));
    format!("{{\"image\":{},\"case\":{case}}}\n", image.to_json())
}

// Hand-written notation of each example, input and output.
const PHI: [(&str, &str, &str, &str); 4] = [
    (
        "phi_a1",
        "(5,35) r1 (47,247) b1 r0 (23,68) (6*,9*)",
        "(58,35) r1 (47,247) b1 r0 (23,68) (6*,*)",
        "A1",
    ),
    (
        "phi_a2",
        "(5,35) r1 (47,2) b1 r0 (23,68) (6*,479*)",
        "(8,47) (5,35) r1 (47,2) b1 r0 (23,68) (6*,*)",
        "A2",
    ),
    (
        "phi_b1",
        "(5,358) r1 (47,24) b1 r0 (23,9) (6*,67*)",
        "b1 r0 (23,67) (5,358) r1 (47,24) (68*,*)",
        "B1",
    ),
    (
        "phi_b2",
        "(5,38) r1 (47,4) b1 r0 (23,259) (6*,67*)",
        "b1 r0 (23,67) (5,38) r1 (47,4) (8,25) (6*,*)",
        "B2",
    ),
];

#[test]
fn phi_worked_examples() {
    for (name, before, after, case) in PHI {
        let s = input(name);
        assert_eq!(s.to_string(), before);
        let (t, got) = phi(&s).unwrap();
        assert_eq!(t.to_string(), after, "{name}");
        assert_eq!(got.as_str(), case);
        assert_eq!(
            map_line(&t, Some(case)),
            golden(&format!("{name}.out.json"))
        );
        assert_eq!(phi_inverse(&t).unwrap().0, s);
    }
}

#[test]
fn psi_b_worked_example() {
    let s = input("psi_b");
    assert_eq!(
        s.to_string(),
        "(4,9) (58,25) r1 (2,347) b1 r0 (37,68) (6*,*)"
    );
    let x = psi_b(&s).unwrap();
    assert_eq!(
        x.0.to_string(),
        "(4,9) (58,25) b1 r0 b2 r1 (37,68) (6*,347*)"
    );
    assert_eq!(map_line(&x.0, None), golden("psi_b.out.json"));
    assert_eq!(psi_b_inverse(&x).unwrap(), s);
}

#[test]
fn psi_r_worked_examples() {
    let cases = [
        (
            "psi_r_extra",
            "(358,46) (29,35) b1 r0 (47,2) r1 (6*,7*)",
            "extra",
        ),
        (
            "psi_r_ordinary",
            "r1 (358,27) (29,35) b1 r0 (47,46) (6*,*)",
            "ordinary",
        ),
    ];
    for (name, after, case) in cases {
        let x = PsiIntermediate(input(name));
        let (t, got) = psi_r(&x).unwrap();
        assert_eq!(t.to_string(), after);
        assert_eq!(got.as_str(), case);
        assert_eq!(
            map_line(&t, Some(case)),
            golden(&format!("{name}.out.json"))
        );
        assert_eq!(psi_r_inverse(&t).unwrap().0, x);
    }
}

#[test]
fn table_matches_csv() {
    let text = golden("c_table.csv");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n\\k,0,1,2,3,4,5"));
    let table = c_table(5, 5).unwrap();
    for (n, line) in lines.enumerate() {
        let row: Vec<String> = table[n].iter().map(ToString::to_string).collect();
        assert_eq!(line, format!("{n},{}", row.join(",")));
    }
}

#[test]
fn genocchi_matches_list() {
    let values = genocchi_list(20).unwrap();
    for (n, line) in golden("genocchi.txt").lines().enumerate() {
        assert_eq!(line, format!("{n} {}", values[n]));
    }
}
