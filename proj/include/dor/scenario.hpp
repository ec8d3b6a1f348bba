#pragma once

#include "dor/axioms.hpp"
#include "dor/chain.hpp"
#include "dor/mb_model.hpp"

#include <string>

namespace dor {

/// Canonical text form, leading term first. Chain polynomials print with the
/// state's generator names; field polynomials with x / x1..xn and bracketed
/// power-basis coefficients.
std::string qpoly_str(const QPoly& p, const ChainState& st);
std::string nfpoly_str(const NFPoly& p, size_t indeterminates);

/// Series literal "[(e,c),...]" in descending exponents.
std::string series_literal(const PuiseuxSeries<Rational>& s);
std::string series_literal(const PuiseuxSeries<FieldElement>& s);

struct ScenarioResult {
    std::string report_json;
    int exit_code;  // 0 ok, 1 expectation failure, 2 parse/validation, 3 invariant breach
};

ScenarioResult run_scenario_text(const std::string& text);
ScenarioResult run_scenario_file(const std::string& path);

}  // namespace dor
