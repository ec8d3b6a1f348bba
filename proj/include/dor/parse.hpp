#pragma once

#include "dor/chain.hpp"
#include "dor/mb_model.hpp"

#include <stdexcept>
#include <string>

namespace dor {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Polynomial over the chain's generators, e.g. "2*x1 + 1" or "x2^2 - 3/2".
/// Variable names are resolved against the state's generator list.
QPoly parse_chain_poly(const std::string& text, const ChainState& st);

/// Polynomial over Q(lambda) in indeterminates "x" (or "x1", "x2", ...).
/// Field coefficients are power-basis brackets: "[0,1]*x^2 + 5".
NFPoly parse_nf_poly(const std::string& text, const FieldPtr& field, size_t indeterminates);

/// Series literal "[(e1,c1),(e2,c2),...]": exponent-coefficient pairs,
/// both rational.
PuiseuxSeries<Rational> parse_rat_series(const std::string& text);

/// "[a, b, ...]" or "a,b,..." with rational entries.
std::vector<Rational> parse_rational_list(const std::string& text);

}  // namespace dor
