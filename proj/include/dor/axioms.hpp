#pragma once

#include "dor/chain.hpp"
#include "dor/mb_model.hpp"
#include "dor/puiseux.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dor {

// --- Euclidean division with remainder by a standard integer ------------

/// Verdict for n | (g - r) in the polynomial model: either an exact witness
/// g = n*q + r with 0 <= r < n, or a certificate naming the coefficient
/// that cannot be divided inside the coefficient ring.
struct MBDivision {
    std::optional<MBElement> quotient;
    Integer remainder{0};
    struct Refutation {
        Monomial monomial;
        FieldElement coefficient;
        std::optional<Integer> offending_prime;  // prime factor of n outside S
        std::string reason;
    };
    std::optional<Refutation> refutation;
    bool witness() const { return quotient.has_value(); }
};

/// Complete decision procedure: a quotient exists iff every non-constant
/// coefficient of g divides by n inside the coefficient ring; the integer
/// constant term absorbs the remainder.
MBDivision zr_divide(const MBConfig& cfg, const MBElement& g, const Integer& n);

/// Division in the chain model, answered through the residue table. The
/// verdict is relative to the engine's residue choices; refutation fires
/// when n has a prime factor outside S. The witnessing quotient (g - r)/n
/// is adjoined, so a stepped state is returned alongside it.
struct ChainDivision {
    std::optional<ChainState> state;
    std::optional<ChainElement> quotient;
    Integer remainder{0};
    std::string refutation;  // nonempty when refuted
    bool witness() const { return quotient.has_value(); }
};

ChainDivision zr_divide(const ChainState& st, const QPoly& g, const Integer& n);

// --- Normality (integral closedness) instances ---------------------------

enum class NormalityOutcome { member, nonmember, premise_failure };

/// Instance check for the scheme "(u/v) integral of degree s implies u/v in
/// the ring": the premise is the monic equation with coefficients zs.
struct NormalityVerdict {
    NormalityOutcome outcome;
    std::optional<MBElement> quotient;
    std::string reason;
};

NormalityVerdict normality_check(const MBConfig& cfg, const MBElement& u, const MBElement& v,
                                 const std::vector<MBElement>& zs);

// --- gcd in Q(lambda)[x] --------------------------------------------------

/// Dense univariate polynomial over Q(lambda), constant coefficient first,
/// no zero leading coefficient; the zero polynomial is the empty vector.
using FieldPoly = std::vector<FieldElement>;

FieldPoly fp_trim(FieldPoly p);
FieldPoly fp_mul(const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_sub(const FieldPoly& a, const FieldPoly& b);
/// Remainder of a mod b (b nonzero).
FieldPoly fp_rem(FieldPoly a, const FieldPoly& b);

/// Monic gcd by the Euclidean algorithm; not both zero.
FieldPoly polyfield_gcd(FieldPoly a, FieldPoly b);

// --- Bezout witnesses over the chain --------------------------------------

/// Factorization certificate over the current registry: elem = unit *
/// product of prime^exp. Constant primes may be supplied without prior
/// registration (trial division re-checks them); everything else must be
/// registered.
struct FactorCert {
    int unit = 1;  // +1 or -1
    std::vector<std::pair<QPoly, unsigned>> factors;
};

struct BezoutResult {
    // witness: d = a*z + b*t, d divides both
    std::optional<QPoly> z, t, d;
    // pending: the first prime pair lacking its F-stage
    std::optional<std::pair<QPoly, QPoly>> pending;
    std::string error;  // bad certificate / unregistered factor
    bool witness() const { return d.has_value(); }
};

BezoutResult bezout_witness(const ChainState& st, const QPoly& a, const FactorCert& ca,
                            const QPoly& b, const FactorCert& cb);

// --- Open-induction obstruction (degree p+1 over the series model) --------

enum class ObstructionConclusion { obstructed, not_obstructed, undetermined };

struct ObstructionReport {
    struct Root {
        IsolatingInterval interval;
        bool is_rational = false;
        std::optional<bool> in_rcp;  // configuration flag; rational roots forced true
    };
    std::vector<Root> roots;
    ObstructionConclusion conclusion = ObstructionConclusion::undetermined;
    bool sanity_bracket_ok = false;  // Q(0) < 0 < Q(N*a) in the series model
    std::string note;
};

/// P monic with integer coefficients, P(0) < 0, degree at most p+1. Any integer-part
/// counterexample to the induction instance forces a root of P in RC_p(Q),
/// so the instance is obstructed exactly when every real root is certified
/// outside RC_p(Q). Flags are per root, in increasing root order.
ObstructionReport oi_obstruction(const RatPoly& P, unsigned p,
                                 const std::vector<std::optional<bool>>& certs);

}  // namespace dor
