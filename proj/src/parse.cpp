#include "dor/parse.hpp"

#include <cctype>

namespace dor {

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i;
        return true;
    }
    void expect(char c) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(i) +
                             " in \"" + s + "\"");
    }
};

Rational parse_number(Cursor& cur) {
    cur.skip_ws();
    size_t start = cur.i;
    if (cur.i < cur.s.size() && (cur.s[cur.i] == '-' || cur.s[cur.i] == '+')) ++cur.i;
    size_t digits = cur.i;
    while (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) ++cur.i;
    if (cur.i == digits) throw ParseError("expected a number at position " + std::to_string(start));
    if (cur.i < cur.s.size() && cur.s[cur.i] == '/') {
        ++cur.i;
        size_t dstart = cur.i;
        while (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) ++cur.i;
        if (cur.i == dstart) throw ParseError("expected a denominator at position " + std::to_string(dstart));
    }
    return Rational::parse(cur.s.substr(start, cur.i - start));
}

unsigned parse_exponent(Cursor& cur) {
    Rational e = parse_number(cur);
    if (!e.is_integer() || e.sign() < 0 || e.num() > 64)
        throw ParseError("exponent must be a small nonnegative integer");
    return static_cast<unsigned>(e.num());
}

std::string parse_name(Cursor& cur) {
    cur.skip_ws();
    size_t start = cur.i;
    while (cur.i < cur.s.size() && (std::isalnum(static_cast<unsigned char>(cur.s[cur.i])) ||
                                    cur.s[cur.i] == '_'))
        ++cur.i;
    return cur.s.substr(start, cur.i - start);
}

std::vector<Rational> parse_bracket_list(Cursor& cur) {
    cur.expect('[');
    std::vector<Rational> out;
    if (!cur.eat(']')) {
        out.push_back(parse_number(cur));
        while (cur.eat(',')) out.push_back(parse_number(cur));
        cur.expect(']');
    }
    return out;
}

/// Recursive-descent parser over MultiPoly<C>. Ctx supplies the coefficient
/// constructors and variable lookup.
template <class C, class Ctx>
struct PolyParser {
    Cursor cur;
    const Ctx& ctx;

    using P = MultiPoly<C>;

    P parse() {
        P p = expr();
        if (!cur.done()) throw ParseError("trailing input at position " + std::to_string(cur.i));
        return p;
    }

    P expr() {
        P acc = cur.eat('-') ? -term() : term();
        for (;;) {
            if (cur.eat('+')) acc = acc + term();
            else if (cur.eat('-')) acc = acc - term();
            else return acc;
        }
    }

    P term() {
        P acc = factor();
        for (;;) {
            char c = cur.peek();
            if (c == '*') {
                cur.eat('*');
                acc = acc * factor();
            } else if (c == '(' || c == '[' || std::isalpha(static_cast<unsigned char>(c))) {
                acc = acc * factor();  // juxtaposition, e.g. "2x"
            } else {
                return acc;
            }
        }
    }

    P factor() {
        P base = atom();
        if (cur.eat('^')) {
            unsigned e = parse_exponent(cur);
            P r = P::constant(ctx.one());
            for (unsigned i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    P atom() {
        char c = cur.peek();
        if (c == '(') {
            cur.eat('(');
            P p = expr();
            cur.expect(')');
            return p;
        }
        if (c == '[') return P::constant(ctx.from_coords(parse_bracket_list(cur)));
        if (c == '-') {
            cur.eat('-');
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return P::constant(ctx.from_rational(parse_number(cur)));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = parse_name(cur);
            return P::variable(ctx.one(), ctx.variable(name));
        }
        throw ParseError("unexpected character at position " + std::to_string(cur.i));
    }
};

struct ChainCtx {
    const ChainState& st;

    Rational one() const { return Rational(1); }
    Rational from_rational(Rational r) const { return r; }
    Rational from_coords(const std::vector<Rational>&) const {
        throw ParseError("bracket coefficients are not valid in chain expressions");
    }
    size_t variable(const std::string& name) const {
        const auto& gens = st.generators();
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name) return i;
        throw ParseError("unknown generator \"" + name + "\"");
    }
};

struct NFCtx {
    FieldPtr field;
    size_t indeterminates;

    FieldElement one() const { return FieldElement::from_rational(field, Rational(1)); }
    FieldElement from_rational(Rational r) const {
        return FieldElement::from_rational(field, std::move(r));
    }
    FieldElement from_coords(std::vector<Rational> coords) const {
        if (coords.size() > field->degree())
            throw ParseError("coefficient bracket longer than the field degree");
        coords.resize(field->degree(), Rational(0));
        return FieldElement(field, std::move(coords));
    }
    size_t variable(const std::string& name) const {
        if (name == "x" || name == "lambda") {
            if (name == "lambda") throw ParseError("write lambda as a bracket, e.g. [0,1]");
            return 0;
        }
        if (name.size() > 1 && name[0] == 'x') {
            size_t idx = 0;
            for (size_t i = 1; i < name.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(name[i])))
                    throw ParseError("unknown indeterminate \"" + name + "\"");
                idx = idx * 10 + static_cast<size_t>(name[i] - '0');
            }
            if (idx < 1 || idx > indeterminates)
                throw ParseError("indeterminate \"" + name + "\" out of range");
            return idx - 1;
        }
        throw ParseError("unknown indeterminate \"" + name + "\"");
    }
};

}  // namespace

QPoly parse_chain_poly(const std::string& text, const ChainState& st) {
    ChainCtx ctx{st};
    PolyParser<Rational, ChainCtx> p{Cursor{text}, ctx};
    return p.parse();
}

NFPoly parse_nf_poly(const std::string& text, const FieldPtr& field, size_t indeterminates) {
    NFCtx ctx{field, indeterminates};
    PolyParser<FieldElement, NFCtx> p{Cursor{text}, ctx};
    return p.parse();
}

PuiseuxSeries<Rational> parse_rat_series(const std::string& text) {
    Cursor cur{text};
    cur.expect('[');
    PuiseuxSeries<Rational> s;
    if (!cur.eat(']')) {
        do {
            cur.expect('(');
            Rational e = parse_number(cur);
            cur.expect(',');
            Rational c = parse_number(cur);
            cur.expect(')');
            s = s + PuiseuxSeries<Rational>::monomial(std::move(c), std::move(e));
        } while (cur.eat(','));
        cur.expect(']');
    }
    if (!cur.done()) throw ParseError("trailing input after series literal");
    return s;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    Cursor cur{text};
    std::vector<Rational> out;
    if (cur.peek() == '[') {
        out = parse_bracket_list(cur);
    } else {
        out.push_back(parse_number(cur));
        while (cur.eat(',')) out.push_back(parse_number(cur));
    }
    if (!cur.done()) throw ParseError("trailing input after list");
    return out;
}

}  // namespace dor
