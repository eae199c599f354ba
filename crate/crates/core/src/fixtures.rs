//! Built-in diagrams in PD text form. Crossing lines list arcs
//! counterclockwise from the incoming under-strand; the C lines give each
//! component's arc cycle in orientation order.

/// Zero-crossing unknot.
pub const UNKNOT: &str = "L unknot components=1\nC 0: 1\n";

/// Two-component zero-crossing unlink.
pub const UNLINK2: &str = "L unlink2 components=2\nC 0: 1\nC 1: 2\n";

/// Right-handed trefoil, 3 crossings, all positive.
pub const TREFOIL: &str = "\
L trefoil components=1
X 1 4 2 5
X 3 6 4 1
X 5 2 6 3
C 0: 1 2 3 4 5 6
";

/// Figure-eight knot, 4 crossings, writhe 0.
pub const FIGURE_EIGHT: &str = "\
L figure8 components=1
X 4 2 5 1
X 8 6 1 5
X 6 3 7 4
X 2 7 3 8
C 0: 1 2 3 4 5 6 7 8
";

/// The 5_2 twist knot, 5 crossings.
pub const FIVE_TWO: &str = "\
L five_2 components=1
X 1 4 2 5
X 3 8 4 9
X 5 10 6 1
X 9 6 10 7
X 7 2 8 3
C 0: 1 2 3 4 5 6 7 8 9 10
";

/// Positive Hopf link, linking number +1.
pub const HOPF: &str = "\
L hopf components=2
X 4 1 3 2
X 2 3 1 4
C 0: 1 2
C 1: 3 4
";

/// Look up a built-in diagram text by name.
pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "unknot" => Some(UNKNOT),
        "unlink2" => Some(UNLINK2),
        "trefoil" => Some(TREFOIL),
        "figure8" | "figure-eight" | "4_1" => Some(FIGURE_EIGHT),
        "5_2" | "five_2" => Some(FIVE_TWO),
        "hopf" => Some(HOPF),
        _ => None,
    }
}
