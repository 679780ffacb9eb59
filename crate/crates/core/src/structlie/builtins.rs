//! Built-in algebras with their published basis labels.

use super::{Parity, StructAlgebra};
use crate::error::{Error, Result};
use crate::exact::LaurentPoly;

pub fn sl2() -> StructAlgebra {
    let mut a = StructAlgebra::new("sl2", &["h", "e", "f"]);
    a.set_int("h", "e", &[(2, "e")]).expect("labels");
    a.set_int("h", "f", &[(-2, "f")]).expect("labels");
    a.set_int("e", "f", &[(1, "h")]).expect("labels");
    a.set_grading(vec![0, 1, -1]).expect("length");
    a
}

const E8: [&str; 8] = ["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"];

fn split_parity(dim: usize, even: usize) -> Vec<Parity> {
    (0..dim).map(|i| if i < even { Parity::Even } else { Parity::Odd }).collect()
}

/// The 8-dimensional algebra of c-projective symmetries of the submaximal
/// pseudo-Kähler model, with isotropy ⟨e1..e4⟩.
pub fn s_algebra() -> StructAlgebra {
    let mut a = StructAlgebra::new("s", &E8);
    let rel: [(&str, &str, i64, &str); 14] = [
        ("e1", "e3", 1, "e3"),
        ("e1", "e4", 1, "e4"),
        ("e1", "e5", 2, "e5"),
        ("e1", "e6", 3, "e6"),
        ("e1", "e7", -1, "e7"),
        ("e2", "e5", 1, "e5"),
        ("e2", "e6", 1, "e6"),
        ("e2", "e7", -1, "e7"),
        ("e2", "e8", -1, "e8"),
        ("e3", "e5", 1, "e6"),
        ("e3", "e7", 1, "e8"),
        ("e4", "e5", 1, "e6"),
        ("e4", "e7", -1, "e8"),
        ("e5", "e7", 1, "e3"),
    ];
    for (x, y, c, z) in rel {
        a.set_int(x, y, &[(c, z)]).expect("labels");
    }
    a.set_parity(split_parity(8, 4)).expect("length");
    a
}

/// The 6-dimensional algebra of holomorphic isometries of the same model.
pub fn s_prime() -> StructAlgebra {
    let mut a = StructAlgebra::new("s-prime", &E8[..6]);
    let rel: [(&str, &str, i64, &str); 7] = [
        ("e1", "e3", -1, "e3"),
        ("e1", "e4", 1, "e4"),
        ("e1", "e5", -1, "e5"),
        ("e1", "e6", 1, "e6"),
        ("e2", "e5", 1, "e3"),
        ("e2", "e6", 1, "e4"),
        ("e5", "e6", 1, "e2"),
    ];
    for (x, y, c, z) in rel {
        a.set_int(x, y, &[(c, z)]).expect("labels");
    }
    a.set_parity(split_parity(6, 2)).expect("length");
    a
}

/// The isometry algebra sl(2,R) ⋉ r5. The action of e1 on r5 is the one
/// induced by e1 = [e2, e3].
pub fn s_double_prime() -> StructAlgebra {
    let mut a = StructAlgebra::new("s-double-prime", &E8);
    let rel: [(&str, &str, i64, &str); 14] = [
        ("e1", "e2", -2, "e2"),
        ("e1", "e3", 2, "e3"),
        ("e2", "e3", 1, "e1"),
        ("e4", "e5", 1, "e7"),
        ("e4", "e6", 1, "e8"),
        ("e5", "e6", 1, "e4"),
        ("e2", "e5", 1, "e6"),
        ("e2", "e7", 1, "e8"),
        ("e3", "e6", -1, "e5"),
        ("e3", "e8", -1, "e7"),
        ("e1", "e5", 1, "e5"),
        ("e1", "e6", -1, "e6"),
        ("e1", "e7", 1, "e7"),
        ("e1", "e8", -1, "e8"),
    ];
    for (x, y, c, z) in rel {
        a.set_int(x, y, &[(c, z)]).expect("labels");
    }
    a.set_parity(split_parity(8, 4)).expect("length");
    a
}

/// The filtered deformation with parameter `lambda` realizing the 8
/// symmetries of the type III model in complex dimension 2.
pub fn lambda_family() -> StructAlgebra {
    let labels = ["a_1", "a_2", "b_1", "b_2", "v'_1", "v''_1", "v'_2", "v''_2"];
    let mut a = StructAlgebra::with_params("lambda-family", &labels, &["lambda"]);
    let ring = a.params().clone();
    let p = |s: &str| LaurentPoly::parse(&ring, s).expect("coefficient");
    type Relation<'a> = (&'a str, &'a str, Vec<(&'a str, &'a str)>);
    let rel: Vec<Relation> = vec![
        ("a_1", "b_1", vec![("-3", "b_1")]),
        ("a_1", "b_2", vec![("-3", "b_2")]),
        ("a_2", "b_1", vec![("9", "b_2")]),
        ("a_2", "b_2", vec![("-9", "b_1")]),
        ("a_1", "v'_2", vec![("-3", "v'_2")]),
        ("a_1", "v''_2", vec![("-3", "v''_2")]),
        ("a_2", "v'_1", vec![("-6", "v''_1")]),
        ("a_2", "v''_1", vec![("6", "v'_1")]),
        ("a_2", "v'_2", vec![("3", "v''_2")]),
        ("a_2", "v''_2", vec![("-3", "v'_2")]),
        ("b_1", "v'_1", vec![("1", "v'_2")]),
        ("b_1", "v''_1", vec![("1", "v''_2")]),
        ("b_2", "v'_1", vec![("1", "v''_2")]),
        ("b_2", "v''_1", vec![("-1", "v'_2")]),
        ("v'_1", "v''_1", vec![("6*lambda^2", "a_2")]),
        ("v'_1", "v'_2", vec![("6*lambda", "v'_2"), ("-27*lambda^2", "b_1")]),
        ("v'_1", "v''_2", vec![("-6*lambda", "v''_2"), ("-27*lambda^2", "b_2")]),
        ("v''_1", "v'_2", vec![("-6*lambda", "v''_2"), ("27*lambda^2", "b_2")]),
        ("v''_1", "v''_2", vec![("-6*lambda", "v'_2"), ("-27*lambda^2", "b_1")]),
    ];
    for (x, y, value) in rel {
        let i = a.index(x).expect("label");
        let j = a.index(y).expect("label");
        let v = value.iter().map(|(c, l)| (a.index(l).expect("label"), p(c))).collect();
        a.set_bracket(i, j, v).expect("bracket");
    }
    a.set_grading(vec![0, 0, 0, 0, -1, -1, -1, -1]).expect("length");
    a
}

pub fn builtin_names() -> &'static [&'static str] {
    &["s", "s-prime", "s-double-prime", "lambda-family", "sl2"]
}

pub fn builtin(name: &str) -> Result<StructAlgebra> {
    match name {
        "s" => Ok(s_algebra()),
        "s-prime" => Ok(s_prime()),
        "s-double-prime" => Ok(s_double_prime()),
        "lambda-family" => Ok(lambda_family()),
        "sl2" => Ok(sl2()),
        _ => Err(Error::UnknownAlgebra(name.to_string())),
    }
}
