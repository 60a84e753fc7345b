#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nthcoeff/bipoly.hpp"

namespace nth {

enum class Method { naive, mahler, diagonal, diagonal_fast, auto_pick };

// Throws InvalidInput on an unknown name.
Method parse_method(const std::string& name);

// auto resolves to diagonal-fast above p = 64 and to diagonal otherwise
// (measured crossover of the two precomputations); explicit choices pass
// through, including mahler, which is never picked automatically.
Method resolve_auto(Method m, const PrimeField& F);

// Canonical text form: terms in ascending degree (ascending y-degree first
// for bivariate), coefficients as residues in [0, p), joined by " + ".
// The output reparses to the same polynomial.
std::string poly_to_string(const UniPoly& f);
std::string bipoly_to_string(const BiPoly& f);

// Command driver behind the executable.  args excludes the program name;
// payload goes to out (or the --out file), diagnostics to err.  Returns the
// process exit code: 0 success, 2 rejected input, 3 failed internal
// certificate or selfcheck disagreement.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nth
