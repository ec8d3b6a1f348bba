#pragma once

#include "dor/crt.hpp"
#include "dor/multipoly.hpp"
#include "dor/numberfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dor {

using QPoly = MultiPoly<Rational>;

/// Rational function in the x-generators; the normal form used for ordering
/// and identity checks. Not kept reduced; equality is by cross product.
struct RatFunc {
    QPoly num;
    QPoly den;

    static RatFunc of(QPoly p) { return {std::move(p), QPoly::constant(Rational(1))}; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num * b.den == b.num * a.den;
    }
    /// Sign when each later generator is infinitely larger than anything
    /// built from the earlier ones.
    int sign() const;
};

struct ChainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element of the current chain stage: polynomial in the generators with
/// Z<S>-coefficients, plus where it came from.
struct ChainElement {
    QPoly expr;
    std::string provenance;
};

struct Generator {
    std::string name;   // "x1", "x2", "y2", ...
    size_t stage;       // birth stage
    bool is_y = false;
};

/// y * w = 1 - x * v, created by one F-stage.
struct ChainRelation {
    size_t x_var;
    std::optional<size_t> y_var;  // absent for the degenerate first stage
    QPoly v, w;
    size_t stage;
};

struct AdjoinedFraction {
    QPoly numerator;
    Integer n;
    size_t stage;
};

struct PrimeCert {
    QPoly elem;
    std::string name;
    bool standard;        // a rational prime of Z
    size_t birth_stage;
    std::string certificate;  // how irreducibility-at-birth was established
};

struct FStepResult;
struct ZhatStepResult;

/// Finite-stage presentation of the F / Z_S-construction chain. Steps
/// consume a state and produce a new one; no observable mutation.
class ChainState {
public:
    static ChainState init(PrimeSet s, Integer nmax);

    const PrimeSet& prime_set() const { return s_; }
    const Integer& nmax() const { return nmax_; }
    size_t stage() const { return stage_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<ChainRelation>& relations() const { return relations_; }
    const std::vector<AdjoinedFraction>& adjoined() const { return adjoined_; }
    const std::vector<PrimeCert>& registry() const { return registry_; }
    const std::vector<std::string>& kill_log() const { return kill_log_; }

    /// All n in <S> with 2 <= n <= nmax, increasing.
    std::vector<Integer> tracked_moduli() const;
    /// Largest power of p (in S) not exceeding nmax.
    Integer max_power(const Integer& p) const;

    /// Residue of a generator modulo a tracked n (derived from the stored
    /// per-prime residues at maximal power).
    Integer generator_residue(size_t var, const Integer& n) const;

    /// Residue of an element modulo n in <S>. Coefficient denominators k
    /// force a detour through k*n; reports out-of-range when the needed
    /// prime powers are untracked.
    struct ResidueResult {
        std::optional<Integer> residue;
        std::string error;  // set when residue is absent
        bool ok() const { return residue.has_value(); }
    };
    ResidueResult residue_mod(const QPoly& e, const Integer& n) const;

    /// Normal form as rational function in the x-generators, substituting
    /// every y via its relation.
    RatFunc normal_form(const QPoly& e) const;

    /// Coefficient denominators all in <S>.
    bool coefficients_admissible(const QPoly& e) const;

    /// Registers an irreducibility certificate. Standard integers get trial
    /// division; nonstandard candidates must be linear in the generators
    /// (irreducible at birth) unless an external certificate note is given,
    /// and must have unit residue at every tracked modulus.
    ChainState register_prime(const QPoly& elem, const std::string& name,
                              const std::string& external_certificate = "") const;

    std::optional<size_t> find_registered(const QPoly& elem) const;
    /// Relation created for the prime pair (v, w), either order.
    std::optional<size_t> find_relation(const QPoly& v, const QPoly& w) const;

    /// Degenerate first step: adjoins x1 alone (no nonstandard prime yet).
    FStepResult f_step_degenerate() const;
    /// F-construction M[x, (1-xv)/w] for registered primes v, w (w
    /// nonstandard). Chooses unit residues for x (smallest admissible per
    /// prime power) and solves the relation for y's residues.
    FStepResult f_step(const QPoly& v, const QPoly& w) const;

    /// Z_S-construction: adjoins a/n when n | a under the residue map;
    /// throws ChainError with the nonzero residue otherwise.
    ZhatStepResult zhat_step(const QPoly& a, const Integer& n) const;

    /// Audit: relations hold at every tracked modulus, residue tables are
    /// CRT-coherent, registered primes still have unit residues (violations
    /// land in the kill log).
    struct Audit {
        bool ok = true;
        std::vector<std::string> issues;
        std::vector<std::string> parsimony;  // per generator: tracked n with residue 0
    };
    Audit audit() const;

    /// Deterministic JSON presentation (audit + replay).
    std::string to_json() const;
    static ChainState from_json(const std::string& text);

private:
    ChainState() = default;

    PrimeSet s_;
    Integer nmax_;
    size_t stage_ = 0;
    std::vector<Generator> gens_;
    std::vector<ChainRelation> relations_;
    std::vector<AdjoinedFraction> adjoined_;
    std::vector<PrimeCert> registry_;
    // per generator: residue mod max_power(p) for each p in S (same order
    // as s_.primes())
    std::vector<std::vector<Integer>> residues_;
    std::vector<std::string> kill_log_;
};

struct FStepResult {
    ChainState state;
    size_t x_var;
    std::optional<size_t> y_var;
};

struct ZhatStepResult {
    ChainState state;
    ChainElement element;
};

/// Smallest unit residue xi mod pk (pk a power of prime p) such that
/// eta * w_res = 1 - xi * v_res (mod pk) is solvable, plus the smallest
/// eta. Throws ChainError when no unit works.
std::pair<Integer, Integer> chain_residue_extend_at(const Integer& pk, const Integer& p,
                                                    const Integer& v_res, const Integer& w_res);

}  // namespace dor
