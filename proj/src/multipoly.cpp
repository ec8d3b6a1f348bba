#include "dor/multipoly.hpp"

#include <algorithm>

namespace dor {

void mono_trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(std::max(a.size(), b.size()), 0u);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
    if (b.size() > a.size()) {
        for (size_t i = a.size(); i < b.size(); ++i)
            if (b[i] != 0) return std::nullopt;
    }
    Monomial r = a;
    for (size_t i = 0; i < b.size() && i < a.size(); ++i) {
        if (b[i] > a[i]) return std::nullopt;
        r[i] -= b[i];
    }
    mono_trim(r);
    return r;
}

bool MonoLess::operator()(const Monomial& a, const Monomial& b) const {
    size_t n = std::max(a.size(), b.size());
    for (size_t i = n; i-- > 0;) {
        unsigned ea = i < a.size() ? a[i] : 0u;
        unsigned eb = i < b.size() ? b[i] : 0u;
        if (ea != eb) return ea < eb;
    }
    return false;
}

}  // namespace dor
