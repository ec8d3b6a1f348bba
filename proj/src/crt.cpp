#include "dor/crt.hpp"

#include <stdexcept>

namespace dor {

std::tuple<Integer, Integer, Integer> ext_gcd(const Integer& a, const Integer& b) {
    Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        r0 -= q * r1; std::swap(r0, r1);
        s0 -= q * s1; std::swap(s0, s1);
        t0 -= q * t1; std::swap(t0, t1);
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    return {r0, s0, t0};
}

CrtResult crt_combine(const ResiduePair& a, const ResiduePair& b) {
    if (a.modulus <= 0 || b.modulus <= 0)
        throw std::invalid_argument("crt_combine: moduli must be positive");
    auto [g, s, t] = ext_gcd(a.modulus, b.modulus);
    Integer diff = b.residue - a.residue;
    if (diff % g != 0) return {std::nullopt, CrtIncompatible{a, b}};
    Integer l = a.modulus / g * b.modulus;
    // x = a.residue + a.modulus * s * (diff / g) solves both congruences.
    Integer x = a.residue + a.modulus * (s % (b.modulus / g)) * (diff / g);
    return {ResiduePair{mod_floor(x, l), l}, std::nullopt};
}

CrtResult crt_combine(const std::vector<ResiduePair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("crt_combine: empty input");
    CrtResult acc{pairs.front(), std::nullopt};
    for (size_t i = 1; i < pairs.size(); ++i) {
        acc = crt_combine(*acc.combined, pairs[i]);
        if (!acc.ok()) return acc;
    }
    return acc;
}

}  // namespace dor
