#include "qht/hexpr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace qht {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

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
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression parse error at position " + std::to_string(i) + ": " + what);
    }
};

bool starts_number(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

double parse_number(Cursor& c) {
    c.skip_ws();
    const char* begin = c.s.c_str() + c.i;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) c.fail("expected a number");
    c.i += static_cast<size_t>(end - begin);
    return v;
}

TrigFactor parse_factor(Cursor& c, int n) {
    c.skip_ws();
    TrigFactor f;
    if (c.s.compare(c.i, 4, "sin(") == 0) {
        f.is_sin = true;
        c.i += 4;
    } else if (c.s.compare(c.i, 4, "cos(") == 0) {
        f.is_sin = false;
        c.i += 4;
    } else {
        c.fail("expected sin( or cos(");
    }
    c.skip_ws();
    if (!c.eat('x')) c.fail("expected coordinate name xP_R");
    if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        c.fail("expected component index after 'x'");
    f.p = c.s[c.i] - '0';
    ++c.i;
    if (f.p > 3) c.fail("component index must be 0..3");
    if (!c.eat('_')) c.fail("expected '_' in coordinate name");
    if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        c.fail("expected coordinate index after '_'");
    int r = 0;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        r = r * 10 + (c.s[c.i] - '0');
        ++c.i;
    }
    if (r < 1 || r > n) c.fail("coordinate index out of range 1.." + std::to_string(n));
    f.r = r - 1;
    if (!c.eat(')')) c.fail("expected ')'");
    return f;
}

TrigTerm parse_term(Cursor& c, int n) {
    TrigTerm t;
    t.coeff = 1.0;
    bool saw_anything = false;
    if (starts_number(c.peek())) {
        t.coeff = parse_number(c);
        saw_anything = true;
        if (!c.eat('*')) return t; // bare constant
    }
    t.factors.push_back(parse_factor(c, n));
    saw_anything = true;
    while (c.eat('*')) t.factors.push_back(parse_factor(c, n));
    if (!saw_anything) c.fail("empty term");
    return t;
}

} // namespace

TrigExpr TrigExpr::parse(const std::string& text, int n) {
    if (n < 1) throw ParseError("expression needs n >= 1");
    TrigExpr e;
    e.n_ = n;
    Cursor c{text};
    if (c.done()) throw ParseError("empty expression");
    double sign = 1.0;
    if (c.eat('-')) sign = -1.0;
    else c.eat('+');
    for (;;) {
        TrigTerm t = parse_term(c, n);
        t.coeff *= sign;
        e.terms_.push_back(std::move(t));
        if (c.done()) break;
        if (c.eat('+')) sign = 1.0;
        else if (c.eat('-')) sign = -1.0;
        else c.fail("expected '+' or '-' between terms");
    }
    return e;
}

double TrigExpr::eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const TrigTerm& t : terms_) {
        double prod = t.coeff;
        for (const TrigFactor& f : t.factors) {
            const double xv = x[static_cast<size_t>(f.p * n_ + f.r)];
            prod *= f.is_sin ? std::sin(xv) : std::cos(xv);
        }
        acc += prod;
    }
    return acc;
}

ScalarField TrigExpr::realize(const TorusGrid& g) const {
    if (g.n() != n_) throw DomainError("expression was parsed for a different n");
    return field_from_function(g, [this](const std::vector<double>& x) { return eval(x); });
}

std::string TrigExpr::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const TrigTerm& t : terms_) {
        double c = t.coeff;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            c = std::abs(c);
        }
        first = false;
        os << c;
        for (const TrigFactor& f : t.factors)
            os << "*" << (f.is_sin ? "sin" : "cos") << "(x" << f.p << "_" << (f.r + 1) << ")";
    }
    return os.str();
}

} // namespace qht
