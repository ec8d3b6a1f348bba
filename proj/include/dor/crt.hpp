#pragma once

#include "dor/rational.hpp"

#include <optional>
#include <vector>

namespace dor {

/// residue mod modulus, 0 <= residue < modulus.
struct ResiduePair {
    Integer residue;
    Integer modulus;

    friend bool operator==(const ResiduePair& a, const ResiduePair& b) = default;
};

struct CrtIncompatible {
    ResiduePair left;
    ResiduePair right;
};

struct CrtResult {
    std::optional<ResiduePair> combined;       // set on success
    std::optional<CrtIncompatible> conflict;   // set on failure
    bool ok() const { return combined.has_value(); }
};

/// Combines two residues into one modulo lcm of the moduli; the residues
/// must agree modulo gcd of the moduli.
CrtResult crt_combine(const ResiduePair& a, const ResiduePair& b);

/// Folds crt_combine over a nonempty list.
CrtResult crt_combine(const std::vector<ResiduePair>& pairs);

/// Extended Euclid: returns (g, s, t) with a*s + b*t = g = gcd(a, b), g >= 0.
std::tuple<Integer, Integer, Integer> ext_gcd(const Integer& a, const Integer& b);

}  // namespace dor
