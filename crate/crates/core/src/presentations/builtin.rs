//! The built-in presentations, structure maps and action.
//!
//! Hopf-algebra relations are written with `{P}` and `{Q}` placeholders so the
//! parameter-swapped registry can be generated from the same text. Everything
//! outside the Hopf factor uses `p` and `q` directly.

use super::{Presentation, Registry};
use crate::error::{Error, Result};

const GL2_RELATIONS: &str = "
        a*b = {Q}*b*a,
        a*c = {P}*c*a,
        b*d = {P}*d*b,
        c*d = {Q}*d*c,
        b*c = {P}/{Q}*c*b,
        a*d = d*a + ({Q} - {P}^-1)*b*c,
        (a*d - {Q}*b*c)*Dinv = 1,
        Dinv*(a*d - {Q}*b*c) = 1,
        a*Dinv = Dinv*a,
        d*Dinv = Dinv*d,
        b*Dinv = {Q}*{P}^-1*Dinv*b,
        c*Dinv = {Q}^-1*{P}*Dinv*c";

const PRELUDE: &str = "
algebra field {
    generators: ;
    relations: ;
}

algebra quantum_plane (p) {
    generators: x, y;
    relations: x*y = p*y*x;
}

algebra gl2 (p, q) {
    generators: a, b, c, Dinv, d;
    relations:{GL2};
}

algebra gl2pq (p, q) {
    generators: a, b, c, Dinv, d;
    relations:{GL2SWAP};
}

# The smash product of the quantum plane with gl2; plane letters rank lowest so
# normal words read (x, y block)(a, b, c, Dinv, d block).
algebra frame_bundle (p, q) {
    generators: a, b, c, Dinv, d, x, y;
    relations:{GL2},
        x*y = p*y*x,
        x*a = p*q*a*x,
        x*b = p*q*b*x,
        x*c = (p*q - 1)*a*y + p*c*x,
        x*d = (p*q - 1)*b*y + p*d*x,
        y*a = q*a*y,
        y*b = q*b*y,
        y*c = p*q*c*y,
        y*d = p*q*d*y,
        x*Dinv = p^-2*q^-1*Dinv*x,
        y*Dinv = p^-1*q^-2*Dinv*y;
}

# First order calculus, right-normal: elements read (xi, eta)-first.
algebra cotangent_calculus (p, q) {
    generators: x, y, xi, eta;
    grade: xi = 1, eta = 1;
    relations: {CALC};
}

# Same relations, left-normal: coefficients first.
algebra cotangent_calculus_left (p, q) {
    generators: eta, xi, x, y;
    grade: eta = 1, xi = 1;
    relations: {CALC};
}

algebra tangent_calculus (p, q) {
    generators: x, y, dx, dy;
    grade: dx = 1, dy = 1;
    relations: {TAN};
}

algebra tangent_calculus_left (p, q) {
    generators: dy, dx, x, y;
    grade: dy = 1, dx = 1;
    relations: {TAN};
}
";

const CALC: &str = "
        x*y = p*y*x,
        x*xi = p*q*xi*x,
        x*eta = (p*q - 1)*xi*y + p*eta*x,
        y*xi = q*xi*y,
        y*eta = p*q*eta*y";

const TAN: &str = "
        x*y = p*y*x,
        x*dx = (q^-1*p^-1 - 1)*dy*y + p^-1*q^-1*dx*x,
        x*dy = p^-1*dy*x,
        y*dx = q^-1*dx*y,
        y*dy = p^-1*q^-1*dy*y";

const MAPS: &str = "
morphism coproduct : gl2 -> gl2_tensor_square {
    a |-> a_1*a_2 + b_1*c_2;
    b |-> a_1*b_2 + b_1*d_2;
    c |-> c_1*a_2 + d_1*c_2;
    d |-> c_1*b_2 + d_1*d_2;
    Dinv |-> Dinv_1*Dinv_2;
}

morphism counit : gl2 -> field {
    a |-> 1;
    b |-> 0;
    c |-> 0;
    d |-> 1;
    Dinv |-> 1;
}

morphism antipode : gl2 -> gl2 anti {
    a |-> d*Dinv;
    b |-> -{Q}^-1*b*Dinv;
    c |-> -{Q}*c*Dinv;
    d |-> a*Dinv;
    Dinv |-> a*d - {Q}*b*c;
}

morphism left_coaction : quantum_plane -> gl2_tensor_quantum_plane {
    x |-> a_1*x_2 + b_1*y_2;
    y |-> c_1*x_2 + d_1*y_2;
}

morphism right_coaction : quantum_plane -> quantum_plane_tensor_gl2pq {
    x |-> x_1*a_2 + y_1*c_2;
    y |-> x_1*b_2 + y_1*d_2;
}

morphism frame_coaction : frame_bundle -> frame_tensor_H {
    x |-> x_1;
    y |-> y_1;
    a |-> a_1*a_2 + b_1*c_2;
    b |-> a_1*b_2 + b_1*d_2;
    c |-> c_1*a_2 + d_1*c_2;
    d |-> c_1*b_2 + d_1*d_2;
    Dinv |-> Dinv_1*Dinv_2;
}

morphism cotangent_coaction : cotangent_calculus -> gl2_tensor_cotangent {
    x |-> a_1*x_2 + b_1*y_2;
    y |-> c_1*x_2 + d_1*y_2;
    xi |-> a_1*xi_2 + b_1*eta_2;
    eta |-> c_1*xi_2 + d_1*eta_2;
}

morphism plane_embedding : quantum_plane -> frame_bundle {
    x |-> x;
    y |-> y;
}

morphism cleaving_map : gl2 -> frame_bundle {
    a |-> a;
    b |-> b;
    c |-> c;
    d |-> d;
    Dinv |-> Dinv;
}

action frame_action : gl2 on quantum_plane {
    a |> x = (p*q)^-1*x;
    b |> x = 0;
    c |> x = ((p*q)^-1 - 1)*y;
    d |> x = p^-1*x;
    Dinv |> x = p^2*q*x;
    a |> y = q^-1*y;
    b |> y = 0;
    c |> y = 0;
    d |> y = (p*q)^-1*y;
    Dinv |> y = p*q^2*y;
}
";

/// Tensor products: name and factors.
const TENSORS: &[(&str, &[&str])] = &[
    ("gl2_tensor_square", &["gl2", "gl2"]),
    ("gl2_tensor_cube", &["gl2", "gl2", "gl2"]),
    ("frame_tensor_H", &["frame_bundle", "gl2"]),
    ("frame_tensor_H2", &["frame_bundle", "gl2", "gl2"]),
    ("gl2_tensor_quantum_plane", &["gl2", "quantum_plane"]),
    ("gl2_tensor_square_quantum_plane", &["gl2", "gl2", "quantum_plane"]),
    ("quantum_plane_tensor_gl2", &["quantum_plane", "gl2"]),
    ("quantum_plane_tensor_gl2pq", &["quantum_plane", "gl2pq"]),
    ("gl2_tensor_cotangent", &["gl2", "cotangent_calculus"]),
];

fn fill(template: &str, swap: bool) -> String {
    let (pp, qq) = if swap { ("q", "p") } else { ("p", "q") };
    let gl = GL2_RELATIONS.replace("{P}", pp).replace("{Q}", qq);
    let gl_swapped = GL2_RELATIONS.replace("{P}", qq).replace("{Q}", pp);
    template
        .replace("{GL2}", &gl)
        .replace("{GL2SWAP}", &gl_swapped)
        .replace("{CALC}", CALC)
        .replace("{TAN}", TAN)
        .replace("{P}", pp)
        .replace("{Q}", qq)
}

/// The full DSL source of the built-in registry.
pub fn prelude(swap: bool) -> String {
    fill(PRELUDE, swap)
}

pub(crate) fn registry(swap: bool) -> Result<Registry> {
    let mut reg = Registry::empty();
    reg.swapped = swap;
    reg.load(&prelude(swap))?;
    for (name, factors) in TENSORS {
        reg.insert_tensor(name, factors)?;
    }
    reg.load(&fill(MAPS, swap))?;
    Ok(reg)
}

/// A built-in presentation; `swap_params` exchanges `p` and `q` in the Hopf factor.
pub fn builtin(name: &str, swap_params: bool) -> Result<Presentation> {
    let reg = if swap_params { Registry::swapped() } else { Registry::standard() };
    reg.presentation(name).map(|p| (*p).clone()).map_err(|_| Error::UnknownAlgebra(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_presentation;

    #[test]
    fn every_builtin_round_trips() {
        for swap in [false, true] {
            let reg = registry(swap).unwrap();
            for name in reg.algebra_names() {
                let p = reg.presentation(name).unwrap();
                let text = p.to_dsl();
                assert_eq!(parse_presentation(&text).unwrap(), *p, "{name}");
            }
        }
    }

    #[test]
    fn frame_bundle_has_seven_generators() {
        let p = builtin("frame_bundle", false).unwrap();
        assert_eq!(p.alphabet.precedence(), vec!["a", "b", "c", "Dinv", "d", "x", "y"]);
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(builtin("nope", false), Err(Error::UnknownAlgebra(_))));
    }

    #[test]
    fn swap_touches_only_the_hopf_factor() {
        let std = builtin("frame_bundle", false).unwrap();
        let sw = builtin("frame_bundle", true).unwrap();
        let n = std.relations.len();
        assert_eq!(sw.relations.len(), n);
        // The last eleven relations are the plane and cross relations.
        assert_eq!(std.relations[n - 11..], sw.relations[n - 11..]);
        assert_ne!(std.relations[0], sw.relations[0]);
    }
}
