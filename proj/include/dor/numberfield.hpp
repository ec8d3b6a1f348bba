#pragma once

#include "dor/polynomial.hpp"
#include "dor/sturm.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace dor {

/// Finite set of distinct rational primes (the set S). <S> is the
/// multiplicative monoid they generate, represented by factorization tests.
class PrimeSet {
public:
    static PrimeSet make(std::vector<Integer> primes);

    const std::vector<Integer>& primes() const { return primes_; }
    bool empty() const { return primes_.empty(); }
    bool contains(const Integer& p) const;
    /// n in <S>, n >= 1.
    bool generates(const Integer& n) const;
    /// Factors n over S; on success returns exponents per prime of S,
    /// otherwise the smallest prime factor of n outside S.
    struct Factorization {
        std::map<Integer, unsigned> exponents;
        std::optional<Integer> offending_prime;
        bool ok() const { return !offending_prime.has_value(); }
    };
    Factorization factor(Integer n) const;

private:
    std::vector<Integer> primes_;
};

bool is_prime(const Integer& n);
/// Smallest prime factor of n >= 2.
Integer smallest_prime_factor(Integer n);

using Matrix = std::vector<std::vector<Rational>>;

/// Exact inverse by Gaussian elimination; nullopt when singular.
std::optional<Matrix> matrix_inverse(const Matrix& m);

/// Real algebraic number field Q(lambda): minimal polynomial, a real
/// embedding picked by an isolating interval, and a basis of the ring of
/// integers A given over the power basis 1, lambda, ..., lambda^{d-1}.
///
/// Irreducibility of the minimal polynomial is a configuration certificate;
/// construction only spot-checks it (no rational root, no monic quadratic
/// integer factor).
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static std::shared_ptr<const NumberField> create(RatPoly min_poly,
                                                     Rational embed_lo, Rational embed_hi,
                                                     Matrix integral_basis);
    /// Integral basis defaults to the power basis.
    static std::shared_ptr<const NumberField> create(RatPoly min_poly,
                                                     Rational embed_lo, Rational embed_hi);
    /// Q(sqrt 2), basis {1, sqrt 2}.
    static std::shared_ptr<const NumberField> sqrt2();
    /// Q(2^{1/3}), basis {1, 2^{1/3}, 2^{2/3}}.
    static std::shared_ptr<const NumberField> cbrt2();

    size_t degree() const { return static_cast<size_t>(min_poly_.degree()); }
    const RatPoly& min_poly() const { return min_poly_; }
    const IsolatingInterval& embedding() const { return embedding_; }
    const Matrix& integral_basis() const { return integral_basis_; }

    /// Interval certain to contain lambda with width <= bound.
    IsolatingInterval refined_embedding(const Rational& width_bound) const;
    /// Coordinates over the integral basis.
    std::vector<Rational> to_integral_coords(const std::vector<Rational>& power_coords) const;

private:
    NumberField(RatPoly mp, IsolatingInterval emb, Matrix basis, Matrix basis_inv)
        : min_poly_(std::move(mp)), embedding_(std::move(emb)),
          integral_basis_(std::move(basis)), basis_inverse_t_(std::move(basis_inv)) {}

    RatPoly min_poly_;
    IsolatingInterval embedding_;
    Matrix integral_basis_;
    Matrix basis_inverse_t_;  // inverse of the transposed basis matrix
};

using FieldPtr = std::shared_ptr<const NumberField>;

enum class Ordering { less, equal, greater };

/// Element of Q(lambda) as coordinates over the power basis. Immutable.
class FieldElement {
public:
    FieldElement(FieldPtr field, std::vector<Rational> coords);
    static FieldElement from_rational(FieldPtr field, Rational r);
    static FieldElement generator(FieldPtr field);  // lambda itself

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;   // coords beyond index 0 all zero
    /// Valid only when is_rational().
    const Rational& rational_value() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;
    FieldElement inverse() const;
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    /// Sign under the chosen real embedding; exact-zero short-circuits,
    /// otherwise the embedding interval is refined until certified.
    int sign() const;
    /// Largest rational integer <= this under the embedding.
    Integer floor() const;

    std::string str() const;

private:
    FieldPtr field_;
    std::vector<Rational> coords_;
};

Ordering nf_compare(const FieldElement& a, const FieldElement& b);

/// S-integrality: member iff the integral-basis coordinates have a common
/// denominator factoring over S.
struct SIntegrality {
    bool member = false;
    PrimeSet::Factorization denominator_factorization;
    Integer common_denominator;
};
SIntegrality s_integrality_check(const FieldElement& a, const PrimeSet& s);

/// Monic minimal polynomial of a over Q, by the linear-algebra kernel over
/// the powers of a. Degree divides [Q(lambda):Q].
RatPoly element_min_poly(const FieldElement& a);

}  // namespace dor
