#pragma once

#include "dor/multipoly.hpp"
#include "dor/numberfield.hpp"
#include "dor/puiseux.hpp"

#include <optional>
#include <string>

namespace dor {

using NFPoly = MultiPoly<FieldElement>;

/// Which coefficient constraint the model uses: the localized ring of
/// integers A<S> (single indeterminate), or all of Q(lambda) with several
/// indeterminates.
enum class MBVariant { localized, full_field };

/// Configuration of the model Z[rx; r in A<S>] and its multi-indeterminate
/// variant: the number field Q(lambda), the prime set S, the excluded prime
/// q, and the indeterminate count.
struct MBConfig {
    FieldPtr field;
    PrimeSet s;
    Integer q;
    size_t indeterminates = 1;
    MBVariant variant = MBVariant::localized;

    static MBConfig make(FieldPtr field, PrimeSet s, Integer q, size_t indeterminates = 1,
                         MBVariant variant = MBVariant::localized);
};

/// Admissible element: integer constant coefficient; in the localized
/// variant every non-constant coefficient is S-integral.
struct MBElement {
    NFPoly poly;
};

struct MBRejection {
    std::string reason;
    Monomial monomial;                       // the violating coefficient's monomial
    std::optional<FieldElement> coefficient;
    std::optional<Integer> offending_prime;
};

struct MBAdmitResult {
    std::optional<MBElement> element;
    std::optional<MBRejection> rejection;
    bool accepted() const { return element.has_value(); }
};

MBAdmitResult mb_admit(const NFPoly& raw, const MBConfig& cfg);

/// Sign when every indeterminate is infinitely large (later ones larger):
/// sign of the dominating coefficient.
int mb_sign(const NFPoly& p);
Ordering mb_compare(const MBElement& a, const MBElement& b);

enum class RingOp { add, sub, mul };

/// Ring operation; the result is re-admitted (closure holds by construction
/// and is asserted).
MBElement mb_arith(const MBElement& a, const MBElement& b, RingOp op, const MBConfig& cfg);

/// Element of the Shepherdson-style integer part: exact Puiseux series with
/// nonnegative exponents, real-algebraic coefficients (field elements carry
/// their isolating-interval certificate), integer constant term.
struct ShepElement {
    PuiseuxSeries<FieldElement> series;
};

struct ShepAdmitResult {
    std::optional<ShepElement> element;
    std::optional<std::string> rejection;
    bool accepted() const { return element.has_value(); }
};

ShepAdmitResult shep_admit(const PuiseuxSeries<FieldElement>& series);

}  // namespace dor
