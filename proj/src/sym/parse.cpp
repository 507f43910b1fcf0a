#include "hidsym/sym/parse.hpp"

#include <cctype>

namespace hidsym::sym {

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::set<std::string>* known) : text_(text), known_(known) {}

    Expr run() {
        Expr e = expression();
        skip_space();
        if (pos_ != text_.size()) fail("syntax error: unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("syntax error: expected '") + c + "' before end of input");
            fail(std::string("syntax error: expected '") + c + "'");
        }
    }

    Expr expression() {
        Expr e = term();
        while (true) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = unary();
        while (true) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = unary();
                if (d.is_zero()) fail_at("division by zero", at);
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        std::size_t start = pos_;
        Expr base = primary();
        if (!accept('^')) return base;
        Frac e = exponent();
        if (base.is_zero() && e.negative()) fail_at("zero raised to a negative power", start);
        return pow(base, e);
    }

    mpz_class integer_literal() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("syntax error: expected integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Frac exponent() {
        skip_space();
        std::size_t start = pos_;
        auto to_frac = [&](const mpz_class& n, const mpz_class& d) {
            if (d == 0) fail_at("zero denominator in exponent", start);
            if (!n.fits_slong_p() || !d.fits_slong_p()) fail_at("exponent too large", start);
            return Frac(n.get_si(), d.get_si());
        };
        bool neg = accept('-');
        skip_space();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            mpz_class n = integer_literal();
            return to_frac(neg ? mpz_class(-n) : n, 1);
        }
        if (!neg && accept('(')) {
            bool inner_neg = accept('-');
            skip_space();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                mpz_class n = integer_literal();
                mpz_class d = 1;
                if (accept('/')) {
                    skip_space();
                    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                        fail_at("non-rational exponent", start);
                    d = integer_literal();
                }
                if (accept(')')) return to_frac(inner_neg ? mpz_class(-n) : n, d);
            }
        }
        fail_at("non-rational exponent", start);
    }

    Expr number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        mpz_class whole(std::string(text_.substr(start, pos_ - start)));
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (fs == pos_) fail("syntax error: malformed number");
            std::string frac(text_.substr(fs, pos_ - fs));
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            mpq_class v(whole * scale + mpz_class(frac), scale);
            v.canonicalize();
            return Expr(v);
        }
        return Expr(mpq_class(whole));
    }

    Expr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("syntax error: unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (accept('(')) {
                Expr arg = expression();
                expect(')');
                if (name == "ln" && arg.is_zero()) fail_at("logarithm of zero", start);
                auto r = apply_function(name, arg);
                if (!r) fail_at("unknown kernel '" + name + "'", start);
                return *r;
            }
            static const std::set<std::string> kernels = {"exp", "ln", "sin", "cos", "tan",
                                                          "sinh", "cosh", "tanh", "sqrt"};
            if (kernels.count(name)) fail_at("kernel '" + name + "' needs an argument", start);
            if (known_ && !known_->count(name)) fail_at("undefined name '" + name + "'", start);
            return Expr::symbol(name);
        }
        fail("syntax error: unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const std::set<std::string>* known_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const std::set<std::string>* known) {
    Parser p(text, known);
    try {
        return p.run();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

}  // namespace hidsym::sym
