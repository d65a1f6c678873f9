#pragma once
// Plain-text fixture files describing character tuples, and the built-in
// character sets the verification suites run on.
//
// Grammar (line based, '#' comments, strict unknown-key rejection):
//   p = <prime>
//   f = <residue degree>
//   level = <model precision M>
//   [tuple <name>]
//   n = <length>                       (optional; inferred from chi keys)
//   chi<i> = unif <cyclo> ; unit <c> [: <log>, <log>, ...] ; alg <e, ..., e>
//
// <cyclo> is a rational `a/b`, optionally times a root of unity `z<N>^<k>`.
// The unit part lists the Q/Z logs taken by the character on the chain
// generators of (O/varpi^c)^x, in the order of unit_group_structure; the
// `alg` list gives the f algebraic exponents.

#include "psv/criterion.hpp"

#include <memory>

namespace psv {

struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NamedTuple {
  std::string name;
  CharTuple tuple;
};

struct FixtureFile {
  std::shared_ptr<PadicContext> ctx;
  std::vector<NamedTuple> tuples;
};

// throws FixtureError with line/field diagnostics
FixtureFile parse_fixture(const std::string& text);
FixtureFile load_fixture(const std::string& path);

// parse a <cyclo> literal
Cyclo parse_cyclo(const std::string& text);

// the unit character with the given generator logs; throws when no character
// of (O/varpi^c)^x realizes them
UnitChar unit_char_from_logs(const ResidueRing& r,
                             const std::vector<Rational>& gen_logs);

}  // namespace psv
