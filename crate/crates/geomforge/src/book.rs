//! Compiles every code sample in the guide (`book/`) as a doctest, so the
//! prose can never drift from the library. Built only under `cfg(doctest)`.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        mod $name {}
    };
}

chapter!(introduction, "../../../book/src/introduction.md");
chapter!(fields, "../../../book/src/fields.md");
chapter!(subspaces, "../../../book/src/subspaces.md");
chapter!(polar_spaces, "../../../book/src/polar-spaces.md");
chapter!(incidence, "../../../book/src/incidence.md");
chapter!(hexagon, "../../../book/src/hexagon.md");
chapter!(groups, "../../../book/src/groups.md");
chapter!(constraints, "../../../book/src/constraints.md");
chapter!(showcase, "../../../book/src/showcase.md");
chapter!(cli, "../../../book/src/cli.md");
