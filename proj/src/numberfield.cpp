#include "dor/numberfield.hpp"

#include <algorithm>
#include <stdexcept>

namespace dor {

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (Integer d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Integer smallest_prime_factor(Integer n) {
    if (n < 2) throw std::invalid_argument("smallest_prime_factor: n must be >= 2");
    for (Integer d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

PrimeSet PrimeSet::make(std::vector<Integer> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const auto& p : primes)
        if (!is_prime(p))
            throw std::invalid_argument("PrimeSet: " + p.str() + " is not prime");
    PrimeSet s;
    s.primes_ = std::move(primes);
    return s;
}

bool PrimeSet::contains(const Integer& p) const {
    return std::find(primes_.begin(), primes_.end(), p) != primes_.end();
}

bool PrimeSet::generates(const Integer& n) const { return factor(n).ok(); }

PrimeSet::Factorization PrimeSet::factor(Integer n) const {
    if (n < 1) throw std::invalid_argument("PrimeSet::factor: n must be >= 1");
    Factorization f;
    for (const auto& p : primes_) {
        while (n % p == 0) {
            n /= p;
            ++f.exponents[p];
        }
    }
    if (n != 1) f.offending_prime = smallest_prime_factor(n);
    return f;
}

std::optional<Matrix> matrix_inverse(const Matrix& m) {
    size_t n = m.size();
    Matrix a = m;
    Matrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("matrix_inverse: not square");
        inv[i][i] = Rational(1);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational f = a[col][col].inverse();
        for (size_t j = 0; j < n; ++j) { a[col][j] *= f; inv[col][j] *= f; }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            Rational g = a[row][col];
            for (size_t j = 0; j < n; ++j) {
                a[row][j] -= g * a[col][j];
                inv[row][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

namespace {

Matrix transpose(const Matrix& m) {
    size_t n = m.size();
    Matrix t(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) t[j][i] = m[i][j];
    return t;
}

// Cheap spot-check of the irreducibility certificate: rational-root theorem
// plus a bounded search for monic quadratic integer factors.
bool passes_irreducibility_spot_check(const RatPoly& p) {
    int deg = p.degree();
    if (deg < 1) return false;
    if (deg == 1) return true;
    RatPoly z = p.primitive_integer();
    const Integer c0 = z.coeff(0).num();
    const Integer cl = z.lead().num();
    if (c0 == 0) return false;  // root at 0
    // rational roots p/q with p | c0, q | lead
    for (Integer a = 1; a * a <= (c0 < 0 ? -c0 : c0) || a == 1; ++a) {
        if (c0 % a != 0) continue;
        Integer comp = c0 / a;
        if (comp < 0) comp = -comp;
        for (const Integer& num : {a, comp}) {
            for (Integer b = 1; b <= cl; ++b) {
                if (cl % b != 0) continue;
                for (int sgn : {1, -1}) {
                    Rational cand(sgn * num, b);
                    if (z.eval(cand).is_zero()) return false;
                }
            }
        }
    }
    if (deg >= 4 && cl == 1) {
        // monic quadratic factor t^2 + a t + b: b divides the constant term
        Integer amax = 0;
        for (const auto& c : z.coeffs()) {
            Integer v = c.num() < 0 ? -c.num() : c.num();
            if (v > amax) amax = v;
        }
        ++amax;
        Integer c0abs = c0 < 0 ? -c0 : c0;
        for (Integer b = 1; b <= c0abs; ++b) {
            if (c0abs % b != 0) continue;
            for (int bs : {1, -1}) {
                for (Integer a = -amax; a <= amax; ++a) {
                    RatPoly f({Rational(bs * b), Rational(a), Rational(1)});
                    if (RatPoly::divmod(z, f).second.is_zero()) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

std::shared_ptr<const NumberField> NumberField::create(RatPoly min_poly,
                                                       Rational embed_lo, Rational embed_hi,
                                                       Matrix integral_basis) {
    if (min_poly.degree() < 1 || !(min_poly.lead() == Rational(1)))
        throw std::invalid_argument("NumberField: minimal polynomial must be monic of degree >= 1");
    if (!passes_irreducibility_spot_check(min_poly))
        throw std::invalid_argument("NumberField: minimal polynomial fails the irreducibility spot check");
    if (!(embed_lo < embed_hi))
        throw std::invalid_argument("NumberField: bad embedding interval");
    if (min_poly.eval(embed_lo).is_zero())
        throw std::invalid_argument("NumberField: embedding interval is open at lo");
    bool root_at_hi = min_poly.eval(embed_hi).is_zero();
    int inner = count_roots_in(min_poly, embed_lo, embed_hi).endpoint_is_root
                    ? 0
                    : count_roots_in(min_poly, embed_lo, embed_hi).count;
    if (root_at_hi ? inner != 0 : inner != 1)
        throw std::invalid_argument("NumberField: embedding interval must isolate exactly one root");

    size_t d = static_cast<size_t>(min_poly.degree());
    if (integral_basis.size() != d)
        throw std::invalid_argument("NumberField: integral basis has wrong dimension");
    auto inv = matrix_inverse(transpose(integral_basis));
    if (!inv) throw std::invalid_argument("NumberField: integral basis is singular");

    IsolatingInterval emb{std::move(embed_lo), std::move(embed_hi), min_poly};
    return std::shared_ptr<const NumberField>(
        new NumberField(std::move(min_poly), std::move(emb), std::move(integral_basis), std::move(*inv)));
}

std::shared_ptr<const NumberField> NumberField::create(RatPoly min_poly,
                                                       Rational embed_lo, Rational embed_hi) {
    size_t d = static_cast<size_t>(min_poly.degree());
    Matrix id(d, std::vector<Rational>(d, Rational(0)));
    for (size_t i = 0; i < d; ++i) id[i][i] = Rational(1);
    return create(std::move(min_poly), std::move(embed_lo), std::move(embed_hi), std::move(id));
}

std::shared_ptr<const NumberField> NumberField::sqrt2() {
    return create(RatPoly({Rational(-2), Rational(0), Rational(1)}), Rational(1), Rational(2));
}

std::shared_ptr<const NumberField> NumberField::cbrt2() {
    return create(RatPoly({Rational(-2), Rational(0), Rational(0), Rational(1)}), Rational(1), Rational(2));
}

IsolatingInterval NumberField::refined_embedding(const Rational& width_bound) const {
    return refine_interval(embedding_, width_bound);
}

std::vector<Rational> NumberField::to_integral_coords(const std::vector<Rational>& power_coords) const {
    size_t d = degree();
    std::vector<Rational> y(d, Rational(0));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) y[i] += basis_inverse_t_[i][j] * power_coords[j];
    return y;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (coords_.size() != field_->degree())
        throw std::invalid_argument("FieldElement: coordinate count must equal the field degree");
}

FieldElement FieldElement::from_rational(FieldPtr field, Rational r) {
    std::vector<Rational> c(field->degree(), Rational(0));
    c[0] = std::move(r);
    return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::generator(FieldPtr field) {
    std::vector<Rational> c(field->degree(), Rational(0));
    if (c.size() < 2) throw std::invalid_argument("FieldElement: degree-1 field has no generator beyond Q");
    c[1] = Rational(1);
    return FieldElement(std::move(field), std::move(c));
}

bool FieldElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.is_zero(); });
}

bool FieldElement::is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c.is_zero(); });
}

const Rational& FieldElement::rational_value() const {
    if (!is_rational()) throw std::domain_error("FieldElement: not rational");
    return coords_[0];
}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field())
        throw std::invalid_argument("FieldElement: operands from different fields");
}

RatPoly to_poly(const FieldElement& a) { return RatPoly(a.coords()); }

FieldElement from_poly(const FieldPtr& f, const RatPoly& p) {
    RatPoly r = RatPoly::divmod(p, f->min_poly()).second;
    std::vector<Rational> c(f->degree(), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = r.coeff(i);
    return FieldElement(f, std::move(c));
}

struct IvQ {
    Rational lo, hi;
    IvQ operator+(const IvQ& o) const { return {lo + o.lo, hi + o.hi}; }
    IvQ operator*(const IvQ& o) const {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min({a, b, c, d}), std::max({a, b, c, d})};
    }
};

IvQ eval_over(const RatPoly& p, const IvQ& x) {
    IvQ acc{Rational(0), Rational(0)};
    const auto& cs = p.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it)
        acc = acc * x + IvQ{*it, *it};
    return acc;
}

// Value interval certified to contain a, narrowed until pred is satisfied.
template <class Pred>
IvQ narrow_value_interval(const FieldElement& a, Pred pred) {
    RatPoly p = to_poly(a);
    Rational width = a.field()->embedding().width();
    for (int k = 1;; k *= 2) {
        for (int i = 0; i < k; ++i) width = width * Rational(1, 2);
        IsolatingInterval iv = a.field()->refined_embedding(width);
        IvQ v = eval_over(p, IvQ{iv.lo, iv.hi});
        if (pred(v)) return v;
    }
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    std::vector<Rational> c(a.coords());
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
    return FieldElement(a.field(), std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement FieldElement::operator-() const {
    std::vector<Rational> c(coords_);
    for (auto& x : c) x = -x;
    return FieldElement(field_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return from_poly(a.field(), to_poly(a) * to_poly(b));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("FieldElement: division by zero");
    // extended Euclid in Q[t]: s*a + t*minpoly = 1, so s = a^{-1}
    RatPoly r0 = field_->min_poly(), r1 = to_poly(*this);
    RatPoly s0, s1 = RatPoly::constant(Rational(1));
    while (!r1.is_zero() && r1.degree() > 0) {
        auto [q, r] = RatPoly::divmod(r0, r1);
        RatPoly s2 = s0 - q * s1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    if (r1.is_zero())
        throw std::domain_error("FieldElement: minimal polynomial is reducible (inverse failed)");
    return from_poly(field_, s1 * r1.lead().inverse());
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return a * b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field() == b.field() && a.coords() == b.coords();
}

int FieldElement::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return coords_[0].sign();
    IvQ v = narrow_value_interval(*this, [](const IvQ& v) {
        return v.lo.sign() == v.hi.sign() && v.lo.sign() != 0;
    });
    return v.lo.sign();
}

Integer FieldElement::floor() const {
    if (is_rational()) return coords_[0].floor();
    IvQ v = narrow_value_interval(*this, [](const IvQ& v) {
        return v.lo.floor() == v.hi.floor();
    });
    return v.lo.floor();
}

std::string FieldElement::str() const {
    std::string out = "[";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ", ";
        out += coords_[i].str();
    }
    return out + "]";
}

Ordering nf_compare(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    int s = (a - b).sign();
    return s < 0 ? Ordering::less : s > 0 ? Ordering::greater : Ordering::equal;
}

SIntegrality s_integrality_check(const FieldElement& a, const PrimeSet& s) {
    auto y = a.field()->to_integral_coords(a.coords());
    Integer den(1);
    for (const auto& c : y) den = lcm(den, c.den());
    SIntegrality out;
    out.common_denominator = den;
    out.denominator_factorization = s.factor(den);
    out.member = out.denominator_factorization.ok();
    return out;
}

RatPoly element_min_poly(const FieldElement& a) {
    size_t d = a.field()->degree();
    // columns: coords of a^0, a^1, ...
    std::vector<std::vector<Rational>> powers;
    FieldElement pw = FieldElement::from_rational(a.field(), Rational(1));
    powers.push_back(pw.coords());
    for (size_t k = 1; k <= d; ++k) {
        pw = pw * a;
        powers.push_back(pw.coords());
        // try to solve sum_{j<k} c_j a^j = a^k by elimination
        size_t rows = d, cols = k;
        Matrix m(rows, std::vector<Rational>(cols + 1, Rational(0)));
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < cols; ++j) m[i][j] = powers[j][i];
            m[i][cols] = powers[k][i];
        }
        // forward elimination
        size_t rank = 0;
        std::vector<size_t> pivot_col;
        for (size_t col = 0; col < cols && rank < rows; ++col) {
            size_t piv = rank;
            while (piv < rows && m[piv][col].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(m[piv], m[rank]);
            Rational f = m[rank][col].inverse();
            for (auto& x : m[rank]) x *= f;
            for (size_t r2 = 0; r2 < rows; ++r2) {
                if (r2 == rank || m[r2][col].is_zero()) continue;
                Rational g = m[r2][col];
                for (size_t j = 0; j <= cols; ++j) m[r2][j] -= g * m[rank][j];
            }
            pivot_col.push_back(col);
            ++rank;
        }
        bool consistent = true;
        for (size_t r2 = rank; r2 < rows; ++r2)
            if (!m[r2][cols].is_zero()) { consistent = false; break; }
        if (!consistent) continue;
        std::vector<Rational> c(cols, Rational(0));
        for (size_t r2 = 0; r2 < rank; ++r2) c[pivot_col[r2]] = m[r2][cols];
        // monic min poly t^k - sum c_j t^j
        std::vector<Rational> coeffs(k + 1, Rational(0));
        for (size_t j = 0; j < k; ++j) coeffs[j] = -c[j];
        coeffs[k] = Rational(1);
        return RatPoly(std::move(coeffs));
    }
    throw std::logic_error("element_min_poly: no dependency up to the field degree");
}

}  // namespace dor
