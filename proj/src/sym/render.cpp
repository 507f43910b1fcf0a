#include <sstream>

#include "internal.hpp"

namespace hidsym::sym {

using namespace detail;

namespace {

std::string kernel_name(Kernel k) {
    switch (k) {
        case Kernel::Sin:
            return "sin";
        case Kernel::Cos:
            return "cos";
        case Kernel::Sinh:
            return "sinh";
        case Kernel::Cosh:
            return "cosh";
        case Kernel::Ln:
            return "ln";
    }
    return "?";
}

std::string exponent_suffix(Frac e) {
    if (e == Frac(1)) return "";
    if (e.is_integer() && e.positive()) return "^" + e.str();
    return "^(" + e.str() + ")";
}

std::string render_factor(const Factor& f) {
    Atom a = f.atom;
    switch (a->kind) {
        case AtomKind::Symbol:
            return a->name + exponent_suffix(f.exp);
        case AtomKind::Func:
            return kernel_name(a->kernel) + "(" + render(a->payload) + ")" + exponent_suffix(f.exp);
        case AtomKind::Exp:
            return "exp(" + render(Expr(to_mpq(f.exp)) * a->payload) + ")";
        case AtomKind::Power: {
            const Expr& b = a->payload;
            std::string base = render(b);
            if (!(b.is_constant() && *b.constant_value() > 0)) base = "(" + base + ")";
            return base + exponent_suffix(f.exp);
        }
    }
    return "?";
}

std::string render_term(const Term& t) {
    std::string mono;
    for (const auto& f : t.mono) {
        if (!mono.empty()) mono += "*";
        mono += render_factor(f);
    }
    if (mono.empty()) return t.coef.get_str();
    if (t.coef == 1) return mono;
    if (t.coef == -1) return "-" + mono;
    return t.coef.get_str() + "*" + mono;
}

bool is_simple_factor(const Poly& p) {
    // A single factor with unit coefficient renders without parentheses after '/'.
    return p.size() == 1 && p.leading().coef == 1 && p.leading().mono.size() == 1;
}

}  // namespace

std::string render(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        std::string s = render_term(t);
        if (first) {
            out = s;
            first = false;
        } else if (s[0] == '-') {
            out += " - " + s.substr(1);
        } else {
            out += " + " + s;
        }
    }
    return out;
}

std::string render(const Expr& e) {
    if (e.den().is_one()) return render(e.num());
    std::string n = render(e.num());
    if (e.num().size() > 1) n = "(" + n + ")";
    std::string d = render(e.den());
    if (!is_simple_factor(e.den())) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace hidsym::sym
